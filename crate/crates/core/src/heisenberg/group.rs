//! Symbolic elements of the extended Heisenberg group
//!
//! ```text
//! ( a  b  d )
//! ( 0  1  c )      a = t^k
//! ( 0  0  a )
//! ```
//!
//! with `b, c, d` polynomials in arc unknowns over `Q[t, t^-1]`.

use std::collections::BTreeMap;

use crate::laurent::{LaurentPoly, Q};

/// A polynomial in `nvars` unknowns with Laurent coefficients in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, LaurentPoly>,
}

impl ArcPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: LaurentPoly) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, LaurentPoly::one());
        p
    }

    pub fn add_term(&mut self, m: Vec<u32>, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    /// Multiplies every coefficient by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(k))).collect() }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Substitutes `value` for unknown `i`.
    pub fn substitute(&self, i: usize, value: &ArcPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        let mut powers = vec![ArcPoly::constant(self.nvars, LaurentPoly::one())];
        for (m, c) in &self.terms {
            let e = m[i] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[i] = 0;
            let mut mono = ArcPoly::zero(self.nvars);
            mono.add_term(rest, c.clone());
            out = &out + &(&mono * &powers[e]);
        }
        out
    }

    /// Evaluates unknowns and `t` at rationals.
    pub fn eval(&self, point: &[Q], t: &Q) -> Q {
        let mut acc = Q::from_integer(0.into());
        for (m, c) in &self.terms {
            let mut v = c.eval(t);
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += v;
        }
        acc
    }
}

impl std::ops::Add<&ArcPoly> for &ArcPoly {
    type Output = ArcPoly;
    fn add(self, rhs: &ArcPoly) -> ArcPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&ArcPoly> for &ArcPoly {
    type Output = ArcPoly;
    fn sub(self, rhs: &ArcPoly) -> ArcPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Neg for &ArcPoly {
    type Output = ArcPoly;
    fn neg(self) -> ArcPoly {
        ArcPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl std::ops::Mul<&ArcPoly> for &ArcPoly {
    type Output = ArcPoly;
    fn mul(self, rhs: &ArcPoly) -> ArcPoly {
        let mut out = ArcPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymGroupElem {
    /// `a = t^k`.
    pub k: i32,
    pub b: ArcPoly,
    pub c: ArcPoly,
    pub d: ArcPoly,
}

impl SymGroupElem {
    pub fn identity(nvars: usize) -> Self {
        let z = ArcPoly::zero(nvars);
        Self { k: 0, b: z.clone(), c: z.clone(), d: z }
    }

    /// `μ^n`, the diagonal matrix `(t^n, 1, t^n)`.
    pub fn mu_pow(nvars: usize, n: i32) -> Self {
        Self { k: n, ..Self::identity(nvars) }
    }

    /// `λ` with corner entry given by unknown `s`.
    pub fn lambda(nvars: usize, s: usize) -> Self {
        Self { d: ArcPoly::var(nvars, s), ..Self::identity(nvars) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (a b d; 0 1 c; 0 0 a)(a' b' d'; 0 1 c'; 0 0 a')
        Self {
            k: self.k + o.k,
            b: &o.b.shift(self.k) + &self.b,
            c: &o.c + &self.c.shift(o.k),
            d: &(&o.d.shift(self.k) + &(&self.b * &o.c)) + &self.d.shift(o.k),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            k: -self.k,
            b: (-&self.b).shift(-self.k),
            c: (-&self.c).shift(-self.k),
            d: (&(&self.b * &self.c) - &self.d).shift(-2 * self.k),
        }
    }

    /// `g μ^sign g⁻¹`.
    pub fn conjugate_mu(&self, sign: i32) -> Self {
        let nvars = self.b.nvars();
        self.mul(&Self::mu_pow(nvars, sign)).mul(&self.inverse())
    }
}
