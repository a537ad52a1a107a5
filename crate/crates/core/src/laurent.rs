//! Laurent polynomials in one variable with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A Laurent polynomial `Σ c_k t^k`, stored sparsely by exponent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial `{input}`: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub reason: String,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(q(1), 0)
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    /// `t^k`.
    pub fn t_pow(k: i32) -> Self {
        Self::monomial(q(1), k)
    }

    pub fn monomial(c: Q, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// Builds `Σ coeffs[i] t^(low + i)`.
    pub fn from_coeffs(low: i32, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i32, q(c));
        }
        p
    }

    pub fn add_term(&mut self, k: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term `c t^k` is a unit of the Laurent ring.
    pub fn as_unit(&self) -> Option<(i32, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn shift(&self, by: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// `p(t) -> p(t^-1)`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    pub fn eval(&self, t: &Q) -> Q {
        let mut acc = Q::zero();
        for (k, c) in &self.terms {
            acc += c * pow_q(t, *k);
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the unit `±t^k` making the lowest exponent zero and the
    /// lowest coefficient positive. Two polynomials agree up to units of
    /// `Z[t, t^-1]` exactly when these forms agree.
    pub fn unit_normalized(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.coeff(0).is_negative() {
            -p
        } else {
            p
        }
    }

    /// Like [`unit_normalized`](Self::unit_normalized) but also divides by
    /// the lowest coefficient: normal form up to units of `Q[t, t^-1]`.
    pub fn monic_normalized(&self) -> Self {
        let Some(lo) = self.min_exp() else {
            return Self::zero();
        };
        let c = self.coeff(lo);
        self.shift(-lo).scale(&(Q::one() / c))
    }

    pub fn eq_up_to_units(&self, other: &Self) -> bool {
        self.unit_normalized() == other.unit_normalized()
    }

    /// The symmetric representative with `p(1) = 1`, when one exists.
    pub fn symmetric_normalized(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (lo + hi) % 2 != 0 {
            return None;
        }
        let p = self.shift(-(lo + hi) / 2);
        let v = p.eval(&q(1));
        if v == q(1) {
            Some(p)
        } else if v == q(-1) {
            Some(-p)
        } else {
            None
        }
    }

    /// Euclidean division of ordinary polynomials (all exponents `>= 0`).
    fn div_rem_poly(a: &Self, b: &Self) -> (Self, Self) {
        let bdeg = b.max_exp().expect("division by zero polynomial");
        let blead = b.coeff(bdeg);
        let mut quot = Self::zero();
        let mut rem = a.clone();
        while let Some(rdeg) = rem.max_exp() {
            if rdeg < bdeg {
                break;
            }
            let c = rem.coeff(rdeg) / &blead;
            let term = Self::monomial(c, rdeg - bdeg);
            rem = &rem - &(&term * b);
            quot = &quot + &term;
        }
        (quot, rem)
    }

    /// Exact division in the Laurent ring; `None` if `other` does not divide.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, lb) = (self.min_exp().unwrap(), other.min_exp().unwrap());
        let (a, b) = (self.shift(-la), other.shift(-lb));
        let (quot, rem) = Self::div_rem_poly(&a, &b);
        if rem.is_zero() {
            Some(quot.shift(la - lb))
        } else {
            None
        }
    }

    /// Greatest common divisor in `Q[t, t^-1]`, monic-normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic_normalized();
        }
        if other.is_zero() {
            return self.monic_normalized();
        }
        let mut a = self.monic_normalized();
        let mut b = other.monic_normalized();
        while !b.is_zero() {
            let (_, r) = Self::div_rem_poly(&a, &b);
            a = b;
            b = r.monic_normalized();
        }
        a.monic_normalized()
    }

    /// Clears denominators, returning the primitive integer multiple with
    /// positive lowest coefficient.
    pub fn primitive_integral(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = num_integer::gcd(g, i.clone());
        }
        let scale = Q::new(lcm, g);
        let p = self.scale(&scale);
        let lo = p.min_exp().unwrap();
        if p.coeff(lo).is_negative() {
            -p
        } else {
            p
        }
    }
}

pub(crate) fn pow_q(t: &Q, k: i32) -> Q {
    let base = if k < 0 { Q::one() / t } else { t.clone() };
    let mut acc = Q::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Formats with variable name `t`, ascending exponents: `1 - t + t^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_univariate(self, "t"))
    }
}

pub fn format_univariate(p: &LaurentPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

/// Parses forms like `1 - 3t + t^2`, `2*t^-1 - 1/2`, `t^(-2)`.
impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        parse_univariate(input, 't')
    }
}

pub fn parse_univariate(input: &str, var: char) -> Result<LaurentPoly, ParsePolyError> {
    let err = |reason: &str| ParsePolyError {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: String = input
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
        .collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut out = LaurentPoly::zero();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != '+' && !(bytes[i] == '-' && i > start && bytes[i - 1] != '^') {
            i += 1;
        }
        let term: String = bytes[start..i].iter().collect();
        if term.is_empty() {
            return Err(err("dangling sign"));
        }
        let (coef_str, mono_str) = match term.find(var) {
            Some(pos) => (term[..pos].trim_end_matches('*'), &term[pos..]),
            None => (term.as_str(), ""),
        };
        let coef = if coef_str.is_empty() {
            q(1)
        } else {
            parse_rational(coef_str).ok_or_else(|| err(&format!("bad coefficient `{coef_str}`")))?
        };
        let exp = if mono_str.is_empty() {
            0
        } else {
            let rest = &mono_str[var.len_utf8()..];
            if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<i32>().map_err(|_| err(&format!("bad exponent `{e}`")))?
            } else {
                return Err(err(&format!("unexpected `{rest}`")));
            }
        };
        out.add_term(exp, coef * q(sign));
    }
    Ok(out)
}

pub(crate) fn parse_rational(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["1 - t + t^2", "-1 + 3*t^-1", "1/2 - 2*t^3", "t", "0"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s}");
        }
        assert_eq!(p("1-3t+t^2"), LaurentPoly::from_coeffs(0, &[1, -3, 1]));
        assert_eq!(p("t^-1 - 1 + t"), LaurentPoly::from_coeffs(-1, &[1, -1, 1]));
    }

    #[test]
    fn normal_forms() {
        let tref = p("t^-1 - 1 + t");
        assert_eq!(tref.unit_normalized(), p("1 - t + t^2"));
        assert_eq!((-tref.shift(5)).symmetric_normalized(), Some(tref.clone()));
        assert!(p("2 + t").symmetric_normalized().is_none());
    }

    #[test]
    fn gcd_of_products() {
        let a = p("1 - t + t^2");
        let b = p("1 - 3t + t^2");
        let ab = &a * &b;
        let aa = &a * &a;
        assert_eq!(ab.gcd(&aa), a.monic_normalized());
        assert_eq!(a.gcd(&b), LaurentPoly::one());
        assert_eq!(ab.div_exact(&b.shift(-3)), Some(a.shift(3)));
        assert_eq!(a.div_exact(&b), None);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i32..3, prop::collection::vec(-4i64..5, 0..5)).prop_map(|(lo, c)| LaurentPoly::from_coeffs(lo, &c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), n in 1i64..5) {
            let t = q(n);
            prop_assert_eq!((&a * &b).eval(&t), a.eval(&t) * b.eval(&t));
        }
    }
}
