//! The ideal invariant from the extended Heisenberg group.
//!
//! Homomorphisms of the knot group sending the meridian to `μ = (t, 1, t)`
//! and the longitude to `λ` (corner entry `s`) form an affine variety over
//! `Q[t, t^-1, s]`. Eliminating the arc unknowns leaves an ideal `I_D` of
//! `Q[t, t^-1, s]`, which is computed here exactly.

mod group;
mod groebner;
mod poly;

pub use group::{ArcPoly, SymGroupElem};
pub use groebner::{groebner, normal_form, GroebnerError};
pub use poly::{Monomial, MonomialOrder, MultiPoly};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::knotgroup::WirtingerData;
use crate::laurent::{format_univariate, LaurentPoly, Q};

pub const DEFAULT_STEP_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeisenbergError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("total writhe {0} is not zero; pass a corrected diagram")]
    NonzeroWrithe(i32),
}

/// The representation-variety equations. Unknowns are `b_j, c_j` for each
/// arc `j` referenced before it is reached, followed by `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSystem {
    pub names: Vec<String>,
    pub equations: Vec<ArcPoly>,
}

impl RepSystem {
    pub fn s_index(&self) -> usize {
        self.names.len() - 1
    }
}

/// Propagates `e_i = e_κ μ^ε e_κ⁻¹ e_{i-1}` symbolically and records
/// `e_n = λ`. The corner entry of an arc never enters a conjugate, so
/// arcs used before they are reached only need unknowns for `b` and `c`.
pub fn rep_variety_ideal(w: &WirtingerData) -> Result<RepSystem, HeisenbergError> {
    let n = w.n();
    let writhe: i32 = w.signs.iter().sum();
    if writhe != 0 {
        return Err(HeisenbergError::NonzeroWrithe(writhe));
    }
    let mut k = vec![0i32; n + 1];
    for i in 1..=n {
        k[i] = k[i - 1] + w.signs[i - 1];
    }
    let mut fresh: Vec<Option<usize>> = vec![None; n + 1];
    let mut names = Vec::new();
    for i in 1..=n {
        let j = w.kappa[i - 1];
        if j >= i && fresh[j].is_none() {
            fresh[j] = Some(names.len());
            names.push(format!("b{j}"));
            names.push(format!("c{j}"));
        }
    }
    names.push("s".into());
    let nv = names.len();
    let placeholder = |j: usize| {
        let v = fresh[j].expect("fresh arc");
        SymGroupElem { k: k[j], b: ArcPoly::var(nv, v), c: ArcPoly::var(nv, v + 1), d: ArcPoly::zero(nv) }
    };
    let mut g: Vec<SymGroupElem> = Vec::with_capacity(n + 1);
    g.push(SymGroupElem::identity(nv));
    let mut equations = Vec::new();
    for i in 1..=n {
        let j = w.kappa[i - 1];
        let x = if j < i { g[j].clone() } else { placeholder(j) };
        let mut gi = x.conjugate_mu(w.signs[i - 1]).mul(&g[i - 1]);
        if fresh[i].is_some() {
            let p = placeholder(i);
            equations.push(&gi.b - &p.b);
            equations.push(&gi.c - &p.c);
            gi.b = p.b;
            gi.c = p.c;
        }
        g.push(gi);
    }
    let last = &g[n];
    equations.push(last.b.clone());
    equations.push(last.c.clone());
    equations.push(&last.d - &ArcPoly::var(nv, nv - 1));
    equations.retain(|e| !e.is_zero());
    Ok(RepSystem { names, equations })
}

fn unit_inverse(u: &LaurentPoly) -> Option<LaurentPoly> {
    let (k, c) = u.as_unit()?;
    Some(LaurentPoly::monomial(Q::one() / c, -k))
}

/// Repeatedly solves an equation `u x + r = 0` for an unknown `x` with unit
/// coefficient `u` not occurring in `r`, and substitutes. The ideal of the
/// remaining unknowns is unchanged up to this change of coordinates.
pub fn eliminate_unit_pivots(sys: &RepSystem) -> RepSystem {
    let s = sys.s_index();
    let mut eqs = sys.equations.clone();
    loop {
        let mut best: Option<(usize, usize, LaurentPoly)> = None;
        for (ei, e) in eqs.iter().enumerate() {
            if best.as_ref().is_some_and(|(bi, _, _)| eqs[*bi].len() <= e.len()) {
                continue;
            }
            for v in 0..s {
                let mut lin = None;
                let mut ok = true;
                for (m, c) in e.terms() {
                    if m[v] == 0 {
                        continue;
                    }
                    let pure = m[v] == 1 && m.iter().enumerate().all(|(i, &x)| i == v || x == 0);
                    if pure && lin.is_none() {
                        lin = unit_inverse(c);
                        ok = lin.is_some();
                    } else {
                        ok = false;
                    }
                    if !ok {
                        break;
                    }
                }
                if let (true, Some(inv)) = (ok, lin) {
                    best = Some((ei, v, inv));
                    break;
                }
            }
        }
        let Some((ei, v, inv)) = best else { break };
        let e = eqs.swap_remove(ei);
        let x = ArcPoly::var(e.nvars(), v);
        let u = LaurentPoly::one().div_exact(&inv).expect("unit");
        let rest = &e - &x.scale(&u);
        let value = rest.scale(&-&inv);
        eqs = eqs.iter().map(|q| q.substitute(v, &value)).filter(|q| !q.is_zero()).collect();
    }
    RepSystem { names: sys.names.clone(), equations: eqs }
}

/// A polynomial `Σ p_k s^k` with Laurent coefficients.
pub type SPoly = Vec<(u32, LaurentPoly)>;

const IDEAL_ORDER: MonomialOrder = MonomialOrder::GrevLex;

/// `c t^e s^k` becomes `c t^e s^k` or `c T^-e s^k` in `Q[T, t, s]`.
fn push_laurent(p: &mut MultiPoly, head: &[u32], coeff: &LaurentPoly, s_deg: u32) {
    for (e, c) in coeff.terms() {
        let mut m = head.to_vec();
        if e >= 0 {
            m.extend([0, e as u32, s_deg]);
        } else {
            m.extend([(-e) as u32, 0, s_deg]);
        }
        p.add_term(m, c.clone());
    }
}

fn t_inverse_relation(nvars: usize) -> MultiPoly {
    let mut m = vec![0; nvars];
    m[nvars - 3] = 1;
    m[nvars - 2] = 1;
    &MultiPoly::monomial(m, Q::one()) - &MultiPoly::one(nvars)
}

/// An ideal of `Q[t, t^-1, s]`, stored as the reduced Gröbner basis of its
/// preimage in `Q[T, t, s]` (graded reverse lex, `T > t > s`); the basis
/// always contains `tT - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentIdeal {
    basis: Vec<MultiPoly>,
}

impl LaurentIdeal {
    pub fn from_generators(gens: &[SPoly], step_cap: usize) -> Result<Self, GroebnerError> {
        let polys = gens
            .iter()
            .map(|g| {
                let mut p = MultiPoly::zero(3);
                for (k, c) in g {
                    push_laurent(&mut p, &[], c, *k);
                }
                p
            })
            .collect();
        Self::from_polys(polys, step_cap)
    }

    /// From polynomials in `Q[T, t, s]`.
    pub fn from_polys(mut polys: Vec<MultiPoly>, step_cap: usize) -> Result<Self, GroebnerError> {
        polys.push(t_inverse_relation(3));
        Ok(Self { basis: groebner(&polys, &IDEAL_ORDER, step_cap)? })
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|b| b.total_degree() == Some(0))
    }

    pub fn contains(&self, p: &SPoly) -> bool {
        let mut m = MultiPoly::zero(3);
        for (k, c) in p {
            push_laurent(&mut m, &[], c, *k);
        }
        normal_form(&m, &self.basis, &IDEAL_ORDER).is_zero()
    }

    /// For ideals homogeneous in `s`: the chain `p_k` with
    /// `I = ⊕ (p_k) s^k`, listed at the degrees where it changes. Each `p_k`
    /// is integral, primitive, with lowest exponent zero and positive
    /// constant term.
    pub fn graded_generators(&self) -> Option<Vec<(u32, LaurentPoly)>> {
        let mut parts: Vec<(u32, LaurentPoly)> = Vec::new();
        for b in &self.basis {
            let mut deg = None;
            let mut coeff = LaurentPoly::zero();
            for (m, c) in b.terms() {
                if *deg.get_or_insert(m[2]) != m[2] {
                    return None;
                }
                coeff.add_term(m[1] as i32 - m[0] as i32, c.clone());
            }
            if !coeff.is_zero() {
                parts.push((deg.unwrap(), coeff));
            }
        }
        let top = parts.iter().map(|p| p.0).max()?;
        let mut out = Vec::new();
        let mut current = LaurentPoly::zero();
        for k in 0..=top {
            let mut next = current.clone();
            for (d, c) in &parts {
                if *d == k {
                    next = next.gcd(c);
                }
            }
            if next != current {
                current = next;
                out.push((k, current.primitive_integral().unit_normalized()));
            }
        }
        Some(out)
    }

    /// Generators `p_k s^k` as strings, e.g. `(1 - t + t^2)*s` or `s^2`.
    pub fn canonical_strings(&self) -> Vec<String> {
        match self.graded_generators() {
            Some(g) => g.iter().map(|(k, p)| format_generator(*k, p)).collect(),
            None => {
                self.basis.iter().filter(|b| **b != t_inverse_relation(3)).map(|b| b.format(&["T", "t", "s"], &IDEAL_ORDER)).collect()
            }
        }
    }

    pub fn is_principal(&self) -> bool {
        self.graded_generators().is_some_and(|g| g.len() == 1)
    }
}

pub fn format_generator(k: u32, p: &LaurentPoly) -> String {
    let s = match k {
        0 => String::new(),
        1 => "s".into(),
        _ => format!("s^{k}"),
    };
    if *p == LaurentPoly::one() {
        return if s.is_empty() { "1".into() } else { s };
    }
    let body = format_univariate(p, "t");
    let body = if p.len() > 1 { format!("({body})") } else { body };
    if s.is_empty() {
        body
    } else {
        format!("{body}*{s}")
    }
}

/// Mutual reduction of the two bases.
pub fn ideal_equal(a: &LaurentIdeal, b: &LaurentIdeal) -> bool {
    let inside = |x: &LaurentIdeal, y: &LaurentIdeal| x.basis.iter().all(|p| normal_form(p, &y.basis, &IDEAL_ORDER).is_zero());
    inside(a, b) && inside(b, a)
}

/// Elimination of the arc unknowns under a block order, arcs first.
pub fn eliminate(sys: &RepSystem, step_cap: usize) -> Result<LaurentIdeal, HeisenbergError> {
    let s = sys.s_index();
    let live: Vec<usize> = (0..s).filter(|&v| sys.equations.iter().any(|e| e.involves(v))).collect();
    let m = live.len();
    let nv = m + 3;
    let mut polys = Vec::with_capacity(sys.equations.len() + 1);
    for e in &sys.equations {
        let mut p = MultiPoly::zero(nv);
        for (mono, c) in e.terms() {
            let head: Vec<u32> = live.iter().map(|&v| mono[v]).collect();
            push_laurent(&mut p, &head, c, mono[s]);
        }
        polys.push(p);
    }
    polys.push(t_inverse_relation(nv));
    let basis = groebner(&polys, &MonomialOrder::Block(vec![m, 3]), step_cap)?;
    let projected: Vec<MultiPoly> = basis
        .iter()
        .filter(|b| (0..m).all(|v| !b.involves(v)))
        .map(|b| {
            let mut p = MultiPoly::zero(3);
            for (mono, c) in b.terms() {
                p.add_term(mono[m..].to_vec(), c.clone());
            }
            p
        })
        .collect();
    Ok(LaurentIdeal::from_polys(projected, step_cap)?)
}

/// `I_D` for the Wirtinger data of a corrected diagram.
pub fn ideal_invariant(w: &WirtingerData, step_cap: usize) -> Result<LaurentIdeal, HeisenbergError> {
    let sys = eliminate_unit_pivots(&rep_variety_ideal(w)?);
    eliminate(&sys, step_cap)
}

/// A row of the reference table of ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub knot: String,
    /// The Alexander column, as a product of named factors.
    pub alexander_label: String,
    pub ideal_label: String,
    #[serde(skip)]
    pub alexander: LaurentPoly,
    #[serde(skip)]
    pub generators: Vec<(u32, LaurentPoly)>,
}

impl Table1Row {
    pub fn ideal(&self, step_cap: usize) -> Result<LaurentIdeal, GroebnerError> {
        let gens: Vec<SPoly> = self.generators.iter().map(|(k, p)| vec![(*k, p.clone())]).collect();
        LaurentIdeal::from_generators(&gens, step_cap)
    }

    /// Whether a computed ideal matches this row, both as ideals and
    /// generator by generator up to units.
    pub fn matches(&self, ideal: &LaurentIdeal, step_cap: usize) -> Result<bool, GroebnerError> {
        let same_gens = ideal.graded_generators().is_some_and(|g| {
            g.len() == self.generators.len()
                && g.iter().zip(&self.generators).all(|((k1, p1), (k2, p2))| k1 == k2 && p1.eq_up_to_units(p2))
        });
        Ok(same_gens && ideal_equal(ideal, &self.ideal(step_cap)?))
    }
}

pub fn delta_3_1() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &[1, -1, 1])
}

pub fn delta_4_1() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &[1, -3, 1])
}

pub fn delta_6_2() -> LaurentPoly {
    LaurentPoly::from_coeffs(0, &[1, -3, 3, -3, 1])
}

pub fn table1() -> Vec<Table1Row> {
    let (d3, d4, d6) = (delta_3_1(), delta_4_1(), delta_6_2());
    let one = LaurentPoly::one();
    let row = |knot: &str, al: &str, alex: LaurentPoly, il: &str, gens: Vec<(u32, LaurentPoly)>| Table1Row {
        knot: knot.into(),
        alexander_label: al.into(),
        ideal_label: il.into(),
        alexander: alex,
        generators: gens,
    };
    let d43 = &d4 * &d3;
    vec![
        row("3_1", "1-t+t^2", d3.clone(), "(D31 s)", vec![(1, d3.clone())]),
        row("4_1", "1-3t+t^2", d4.clone(), "(D41 s)", vec![(1, d4.clone())]),
        row("6_2", "1-3t+3t^2-3t^3+t^4", d6.clone(), "(D62 s)", vec![(1, d6.clone())]),
        row("8_10", "D31^3", d3.pow(3), "(D31 s, s^2)", vec![(1, d3.clone()), (2, one.clone())]),
        row("8_18", "D41 D31^2", &d4 * &d3.pow(2), "(D41 D31 s)", vec![(1, d43.clone())]),
        row("8_20", "D31^2", d3.pow(2), "(D31 s, s^2)", vec![(1, d3.clone()), (2, one.clone())]),
        row("9_24", "D41 D31^2", &d4 * &d3.pow(2), "(D41 D31 s, D41 s^2)", vec![(1, d43), (2, d4.clone())]),
        row("10_99", "D31^4", d3.pow(4), "(D31 s, s^2)", vec![(1, d3.clone()), (2, one.clone())]),
        row("10_123", "D62^2", d6.pow(2), "(D62 s)", vec![(1, d6)]),
        row("10_137", "D41^2", d4.pow(2), "(D41 s, s^2)", vec![(1, d4.clone()), (2, one.clone())]),
        row("11a_5", "D41^3", d4.pow(3), "(D41 s, s^2)", vec![(1, d4), (2, one)]),
    ]
}

/// Whether `t` acts invertibly: `t x ∈ I` iff `x ∈ I`.
pub fn saturated_at_t(ideal: &LaurentIdeal, x: &SPoly) -> bool {
    let tx: SPoly = x.iter().map(|(k, p)| (*k, p.shift(1))).collect();
    ideal.contains(&tx) == ideal.contains(x)
}
