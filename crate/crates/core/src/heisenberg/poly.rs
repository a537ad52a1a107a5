//! Sparse multivariate polynomials over `Q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::Q;

pub type Monomial = Vec<u32>;

/// Orders on monomials. Variable 0 is the largest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Consecutive blocks of the given sizes, compared in turn, graded
    /// reverse lexicographic inside each block.
    Block(Vec<usize>),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u64, u64) = (a.iter().map(|&x| x as u64).sum(), b.iter().map(|&x| x as u64).sum());
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block(sizes) => {
                let mut start = 0;
                for &len in sizes {
                    let end = (start + len).min(a.len());
                    let o = grevlex(&a[start..end], &b[start..end]);
                    if o != Ordering::Equal {
                        return o;
                    }
                    start = end;
                }
                grevlex(&a[start..], &b[start..])
            }
        }
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Q::one())
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += v;
        }
        acc
    }

    /// Renders with the given variable names, terms in `order`, largest first.
    pub fn format(&self, names: &[&str], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in ts.into_iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { names[j].to_string() } else { format!("{}^{e}", names[j]) })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl std::ops::Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.format(&refs, &MonomialOrder::GrevLex))
    }
}
