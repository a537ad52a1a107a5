//! Knot group presentations read off a long knot diagram.
//!
//! Walking the strand upward from its open end splits it into arcs
//! `a_0, ..., a_n` at the undercrossings `c_1, ..., c_n`. Crossing `c_i` is
//! passed over by arc `a_{κ(i)}` and has sign `ε_i`. A homomorphism from the
//! knot group sending the bottom meridian to `μ` is the same thing as a
//! sequence `g_0 = 1, g_i = g_{κ(i)} μ^{ε_i} g_{κ(i)}⁻¹ g_{i-1}`, and the
//! longitude goes to `g_n`.

use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, MorseWord, Tangle};
use crate::exec::Execution;
use crate::laurent::LaurentPoly;
use crate::setcat::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerData {
    /// Overpassing arc of the `i`-th undercrossing (zero-based `i`).
    pub kappa: Vec<usize>,
    pub signs: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotGroupError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("crossing at slice {0} is not passed once over and once under")]
    Malformed(usize),
    #[error("degenerate presentation: {0}")]
    Degenerate(String),
}

impl WirtingerData {
    pub fn n(&self) -> usize {
        self.kappa.len()
    }

    /// Reads the data off any long-knot tangle. For the knot invariant,
    /// pass the corrected word (see [`WirtingerData::of_knot`]).
    pub fn from_tangle(t: &Tangle) -> Result<Self, KnotGroupError> {
        let trace = t.trace()?;
        let mut over_arc = vec![None; t.len()];
        let mut unders = Vec::new();
        let mut arc = 0;
        for p in &trace.passages {
            if p.over {
                if over_arc[p.step].replace(arc).is_some() {
                    return Err(KnotGroupError::Malformed(p.step + 1));
                }
            } else {
                unders.push(p.step);
                arc += 1;
            }
        }
        let mut kappa = Vec::with_capacity(unders.len());
        let mut signs = Vec::with_capacity(unders.len());
        let crossings: std::collections::HashMap<usize, i32> = t.crossings().map(|(i, c)| (i, c.sign())).collect();
        if unders.len() != crossings.len() {
            return Err(KnotGroupError::Malformed(0));
        }
        for s in unders {
            kappa.push(over_arc[s].ok_or(KnotGroupError::Malformed(s + 1))?);
            signs.push(crossings[&s]);
        }
        Ok(Self { kappa, signs })
    }

    pub fn of_knot(d: &MorseWord) -> Result<Self, KnotGroupError> {
        Self::from_tangle(d.corrected()?.tangle())
    }
}

/// Per-`λ` homomorphism counts, indexed by group element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCount {
    pub per_lambda: Vec<u64>,
    pub total: u64,
    /// Up to `witness_limit` solutions `(g_0, ..., g_n)`.
    pub witnesses: Vec<Vec<usize>>,
}

impl HomCount {
    pub fn for_lambda(&self, lambda: usize) -> u64 {
        self.per_lambda[lambda]
    }
}

struct Search<'a> {
    w: &'a WirtingerData,
    g: &'a FiniteGroup,
    mu: usize,
    class: Vec<usize>,
    witness_limit: usize,
}

#[derive(Clone)]
struct Partial {
    vals: Vec<usize>,
    /// Conjugates `g_k μ g_k⁻¹` guessed before `g_k` is known.
    guessed: Vec<Option<usize>>,
}

#[derive(Default)]
struct Tally {
    per_lambda: Vec<u64>,
    witnesses: Vec<Vec<usize>>,
}

impl Tally {
    fn merge(mut self, other: Tally, limit: usize) -> Tally {
        if self.per_lambda.is_empty() {
            return other;
        }
        for (a, b) in self.per_lambda.iter_mut().zip(&other.per_lambda) {
            *a += b;
        }
        for w in other.witnesses {
            if self.witnesses.len() < limit {
                self.witnesses.push(w);
            }
        }
        self
    }
}

impl Search<'_> {
    fn run(&self, mut st: Partial, i: usize, exec: Execution) -> Tally {
        let n = self.w.n();
        let mut i = i;
        while i <= n {
            if i > 0 {
                let k = self.w.kappa[i - 1];
                let conj = if k < i { Some(self.g.conj(st.vals[k], self.mu)) } else { st.guessed[k] };
                let Some(x) = conj else {
                    // Branch over the conjugacy class of μ.
                    let branches: Vec<Partial> = self
                        .class
                        .iter()
                        .map(|&c| {
                            let mut s = st.clone();
                            s.guessed[k] = Some(c);
                            s
                        })
                        .collect();
                    let results = exec.map(&branches, |s| self.run(s.clone(), i, Execution::Sequential));
                    return results.into_iter().fold(Tally::default(), |a, b| a.merge(b, self.witness_limit));
                };
                let e = self.g.pow(x, self.w.signs[i - 1]);
                st.vals[i] = self.g.mul(e, st.vals[i - 1]);
            }
            if let Some(c) = st.guessed[i] {
                if self.g.conj(st.vals[i], self.mu) != c {
                    return Tally { per_lambda: vec![0; self.g.order()], witnesses: vec![] };
                }
            }
            i += 1;
        }
        let mut per_lambda = vec![0; self.g.order()];
        per_lambda[st.vals[n]] = 1;
        let witnesses = if self.witness_limit > 0 { vec![st.vals] } else { vec![] };
        Tally { per_lambda, witnesses }
    }
}

/// Counts homomorphisms `h` with `h(m) = μ`, split by `λ = h(ℓ)`.
pub fn count_homs(w: &WirtingerData, g: &FiniteGroup, mu: usize, witness_limit: usize, exec: Execution) -> HomCount {
    let n = w.n();
    let search = Search { w, g, mu, class: g.conjugacy_class(mu), witness_limit };
    let mut vals = vec![0; n + 1];
    vals[0] = g.identity();
    let st = Partial { vals, guessed: vec![None; n + 1] };
    let t = search.run(st, 0, exec);
    let per_lambda = if t.per_lambda.is_empty() { vec![0; g.order()] } else { t.per_lambda };
    HomCount { total: per_lambda.iter().sum(), per_lambda, witnesses: t.witnesses }
}

/// Enumerates `g`-sequences by brute force over the whole group.
fn e_solutions(w: &WirtingerData, g: &FiniteGroup, mu: usize) -> Vec<Vec<usize>> {
    fn go(w: &WirtingerData, g: &FiniteGroup, mu: usize, vals: &mut Vec<Option<usize>>, i: usize, out: &mut Vec<Vec<usize>>) {
        let n = w.n();
        if i > n {
            out.push(vals.iter().map(|v| v.unwrap()).collect());
            return;
        }
        if i == 0 {
            let prev = vals[0];
            if prev.is_some_and(|v| v != g.identity()) {
                return;
            }
            vals[0] = Some(g.identity());
            go(w, g, mu, vals, 1, out);
            vals[0] = prev;
            return;
        }
        let k = w.kappa[i - 1];
        let Some(gk) = vals[k] else {
            for cand in 0..g.order() {
                vals[k] = Some(cand);
                go(w, g, mu, vals, i, out);
            }
            vals[k] = None;
            return;
        };
        let gi = g.mul(g.mul(g.mul(gk, g.pow(mu, w.signs[i - 1])), g.inv(gk)), vals[i - 1].unwrap());
        let prev = vals[i];
        if prev.is_some_and(|v| v != gi) {
            return;
        }
        vals[i] = Some(gi);
        go(w, g, mu, vals, i + 1, out);
        vals[i] = prev;
    }
    let mut out = Vec::new();
    go(w, g, mu, &mut vec![None; w.n() + 1], 0, &mut out);
    out
}

/// Enumerates assignments of arcs to group elements satisfying the
/// Wirtinger relations `x_i = x_κ^ε x_{i-1} x_κ^-ε`, with `x_0 = μ`.
fn w_solutions(w: &WirtingerData, g: &FiniteGroup, mu: usize) -> Vec<Vec<usize>> {
    fn go(w: &WirtingerData, g: &FiniteGroup, vals: &mut Vec<Option<usize>>, i: usize, out: &mut Vec<Vec<usize>>) {
        let n = w.n();
        if i > n {
            out.push(vals.iter().map(|v| v.unwrap()).collect());
            return;
        }
        let k = w.kappa[i - 1];
        let Some(xk) = vals[k] else {
            for cand in 0..g.order() {
                vals[k] = Some(cand);
                go(w, g, vals, i, out);
            }
            vals[k] = None;
            return;
        };
        let e = g.pow(xk, w.signs[i - 1]);
        let xi = g.mul(g.mul(e, vals[i - 1].unwrap()), g.inv(e));
        let prev = vals[i];
        if prev.is_some_and(|v| v != xi) {
            return;
        }
        vals[i] = Some(xi);
        go(w, g, vals, i + 1, out);
        vals[i] = prev;
    }
    let mut vals = vec![None; w.n() + 1];
    vals[0] = Some(mu);
    let mut out = Vec::new();
    go(w, g, &mut vals, 1, &mut out);
    out
}

/// Checks on enumerated homomorphisms that the two presentations agree:
/// arcs map to `g_i μ g_i⁻¹` and back through the longitude products.
pub fn e_presentation_check(w: &WirtingerData, g: &FiniteGroup, mu: usize) -> bool {
    use std::collections::HashSet;
    let es: HashSet<Vec<usize>> = e_solutions(w, g, mu).into_iter().collect();
    let ws: HashSet<Vec<usize>> = w_solutions(w, g, mu).into_iter().collect();
    let u = |e: &Vec<usize>| e.iter().map(|&x| g.conj(x, mu)).collect::<Vec<_>>();
    let v = |x: &Vec<usize>| {
        let mut out = vec![g.identity(); x.len()];
        for i in 1..x.len() {
            out[i] = g.mul(g.pow(x[w.kappa[i - 1]], w.signs[i - 1]), out[i - 1]);
        }
        out
    };
    es.len() == ws.len()
        && es.iter().all(|e| ws.contains(&u(e)) && v(&u(e)) == *e)
        && ws.iter().all(|x| es.contains(&v(x)) && u(&v(x)) == *x)
}

/// Fox-calculus determinant, up to units `±t^k`. The Jacobian of the
/// relations `g_i⁻¹ w_κ^ε g_{i-1}` in the arc generators, with the column of
/// the bottom arc deleted.
pub fn alexander_raw(w: &WirtingerData) -> LaurentPoly {
    let n = w.n();
    if n == 0 {
        return LaurentPoly::one();
    }
    // Rows with ε = -1 are multiplied by t to stay polynomial.
    let mut m: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::zero(); n + 1]; n];
    let one = LaurentPoly::one();
    let t = LaurentPoly::t_pow(1);
    for i in 1..=n {
        let (k, e) = (w.kappa[i - 1], w.signs[i - 1]);
        let row = &mut m[i - 1];
        if e == 1 {
            row[i - 1] = &row[i - 1] + &t;
            row[i] = &row[i] - &one;
            row[k] = &row[k] + &(&one - &t);
        } else {
            row[i - 1] = &row[i - 1] + &one;
            row[i] = &row[i] - &t;
            row[k] = &row[k] + &(&t - &one);
        }
    }
    let a: Vec<Vec<LaurentPoly>> = m.into_iter().map(|r| r[1..].to_vec()).collect();
    bareiss_det(a)
}

/// Fraction-free determinant over `Q[t, t^-1]`.
pub(crate) fn bareiss_det(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// The Alexander polynomial, symmetric with `Δ(1) = 1`.
pub fn alexander(w: &WirtingerData) -> Result<LaurentPoly, KnotGroupError> {
    let raw = alexander_raw(w);
    raw.symmetric_normalized()
        .ok_or_else(|| KnotGroupError::Degenerate(format!("Fox determinant {raw} does not normalize")))
}


#[cfg(test)]
mod span_tests {
    use super::*;
    use crate::rt::{derive_tildes, invariant, SpanCategory};
    use crate::setcat::{fiber_count, rack_from_pointed_group, rmatrix_from_rack, PointedGroup};

    fn check(word: &[i32], n: usize, group: &str, mu: &str) {
        let pg = PointedGroup::new(FiniteGroup::parse_spec(group).unwrap(), mu).unwrap();
        let rack = rack_from_pointed_group(&pg);
        let cat = SpanCategory::default();
        let datum = derive_tildes(&cat, &rmatrix_from_rack::<u64>(&rack).unwrap()).unwrap();
        let d = MorseWord::from_braid(word, n).unwrap();
        let j = invariant(&cat, &datum, &d).unwrap();
        let w = WirtingerData::of_knot(&d).unwrap();
        let c = count_homs(&w, &pg.group, pg.mu, 0, Execution::Parallel);
        let e = pg.group.identity();
        let from_span: Vec<u64> = (0..pg.group.order()).map(|l| fiber_count(&j, e, l).unwrap()).collect();
        assert_eq!(from_span, c.per_lambda, "{word:?} over {group}");
    }

    #[test]
    fn fibers_count_homomorphisms() {
        check(&[1, 1, 1], 2, "S3", "(1 2)");
        check(&[1, -2, 1, -2], 3, "S3", "(1 2)");
        check(&[1, 1, 1, 1, 1], 2, "D5", "s");
        check(&[1, -2, 1, -2], 3, "S4", "(1 2)");
    }
}
