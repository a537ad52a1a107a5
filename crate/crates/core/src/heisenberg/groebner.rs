//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::{divides, lcm, Monomial, MonomialOrder, MultiPoly};
use crate::laurent::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("Gröbner computation exceeded the cap of {cap} reduction steps")]
    ResourceLimit { cap: usize },
    #[error("generators live in different rings")]
    RingMismatch,
}

/// Terms sorted from the largest monomial down.
#[derive(Debug, Clone)]
struct Poly {
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    fn from_multi(p: &MultiPoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Q)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self { terms }
    }

    fn to_multi(&self, nvars: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = Q::one() / c;
                for (_, v) in &mut self.terms {
                    *v *= &inv;
                }
            }
        }
    }

    /// `self - c * x^shift * other`, merged in order.
    fn sub_scaled(&self, c: &Q, shift: &[u32], other: &Poly, order: &MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(m, v)| (m.iter().zip(shift).map(|(x, y)| x + y).collect::<Monomial>(), v)).peekable();
        loop {
            let o = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match o {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (m, v) = b.next().unwrap();
                    out.push((m, -(c * v)));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let v = x - c * y;
                    if !v.is_zero() {
                        out.push((m.clone(), v));
                    }
                }
            }
        }
        Poly { terms: out }
    }
}

struct Steps {
    used: usize,
    cap: usize,
}

impl Steps {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.cap {
            Err(GroebnerError::ResourceLimit { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Full reduction of `p` modulo the listed basis elements.
fn reduce(p: Poly, basis: &[&Poly], order: &MonomialOrder, steps: &mut Steps) -> Result<Poly, GroebnerError> {
    let mut rest = p;
    let mut done: Vec<(Monomial, Q)> = Vec::new();
    'outer: while !rest.terms.is_empty() {
        let (m, c) = &rest.terms[0];
        for g in basis {
            if divides(g.lm(), m) {
                let shift: Monomial = m.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                let c = c.clone() / &g.terms[0].1;
                rest = rest.sub_scaled(&c, &shift, g, order);
                steps.tick()?;
                continue 'outer;
            }
        }
        done.push(rest.terms.remove(0));
    }
    Ok(Poly { terms: done })
}

fn s_poly(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let l = lcm(f.lm(), g.lm());
    let sf: Monomial = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let sg: Monomial = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let cf = f.terms[0].1.clone();
    let cg = g.terms[0].1.clone();
    let zero = Poly { terms: vec![] };
    let a = zero.sub_scaled(&(-(Q::one() / cf)), &sf, f, order);
    a.sub_scaled(&(Q::one() / cg), &sg, g, order)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Gröbner basis, monic, sorted by leading monomial (largest first).
/// `step_cap` bounds the total number of reduction steps.
pub fn groebner(gens: &[MultiPoly], order: &MonomialOrder, step_cap: usize) -> Result<Vec<MultiPoly>, GroebnerError> {
    let Some(nvars) = gens.first().map(|g| g.nvars()) else {
        return Ok(vec![]);
    };
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(GroebnerError::RingMismatch);
    }
    let mut steps = Steps { used: 0, cap: step_cap };
    let mut polys: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();

    // Interreduce the input first so every generator enters reduced.
    let mut input: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| Poly::from_multi(g, order)).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for p in input {
        let basis: Vec<&Poly> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let mut h = reduce(p, &basis, order, &mut steps)?;
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        update(&mut polys, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len()).min_by(|&a, &b| order.cmp(&pairs[a].2, &pairs[b].2)).unwrap();
        let (i, j, _) = pairs.swap_remove(best);
        let sp = s_poly(&polys[i], &polys[j], order);
        steps.tick()?;
        let basis: Vec<&Poly> = polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let mut h = reduce(sp, &basis, order, &mut steps)?;
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        update(&mut polys, &mut active, &mut pairs, h);
    }

    // Minimize and interreduce.
    let mut min: Vec<Poly> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        if !active[k] {
            continue;
        }
        let redundant = polys.iter().enumerate().any(|(l, q)| {
            active[l] && l != k && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || l < k)
        });
        if !redundant {
            min.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<&Poly> = min.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p).collect();
        let lead = (min[k].terms[0].0.clone(), min[k].terms[0].1.clone());
        let tail = Poly { terms: min[k].terms[1..].to_vec() };
        let mut red = reduce(tail, &others, order, &mut steps)?;
        red.terms.insert(0, lead);
        red.make_monic();
        out.push(red);
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(out.iter().map(|p| p.to_multi(nvars)).collect())
}

/// The Gebauer–Möller update for a new basis element `h`.
fn update(polys: &mut Vec<Poly>, active: &mut Vec<bool>, pairs: &mut Vec<(usize, usize, Monomial)>, h: Poly) {
    let hi = polys.len();
    let lh = h.lm().clone();
    let olds: Vec<usize> = (0..hi).filter(|&k| active[k]).collect();
    let cand: Vec<(usize, Monomial)> = olds.iter().map(|&g| (g, lcm(polys[g].lm(), &lh))).collect();

    // Chain criterion among the new pairs.
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in cand.iter().enumerate() {
        let is_coprime = coprime(polys[*g].lm(), &lh);
        let dominated = cand.iter().enumerate().any(|(jdx, (_, l2))| {
            jdx != idx && divides(l2, l) && (l2 != l || jdx < idx)
        });
        if is_coprime || !dominated {
            kept.push((*g, l.clone()));
        }
    }
    // Product criterion.
    kept.retain(|(g, _)| !coprime(polys[*g].lm(), &lh));

    // Old pairs made redundant by h.
    pairs.retain(|(a, b, l)| {
        !(divides(&lh, l) && lcm(polys[*a].lm(), &lh) != *l && lcm(polys[*b].lm(), &lh) != *l)
    });
    for (g, l) in kept {
        pairs.push((g, hi, l));
    }
    for &g in &olds {
        if divides(&lh, polys[g].lm()) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Normal form of `p` modulo a Gröbner basis.
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let polys: Vec<Poly> = basis.iter().filter(|b| !b.is_zero()).map(|b| Poly::from_multi(b, order)).collect();
    let refs: Vec<&Poly> = polys.iter().collect();
    let mut steps = Steps { used: 0, cap: usize::MAX };
    reduce(Poly::from_multi(p, order), &refs, order, &mut steps).expect("uncapped").to_multi(p.nvars())
}
