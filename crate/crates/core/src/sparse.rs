//! Sparse matrices between tensor products of finite sets, with entries in
//! a commutative semiring.
//!
//! Booleans give relations, counts give spans up to isomorphism and
//! rationals give linear maps. A basis element of `X_1 ⊗ ... ⊗ X_k` is a
//! tuple, numbered lexicographically with the first factor most significant.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exec::Execution;
use crate::laurent::Q;

pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;

    /// Two-sided inverse, if one exists.
    fn invert(m: &SparseMorphism<Self>) -> Option<SparseMorphism<Self>> {
        m.invert_permutation()
    }
}

impl Coefficient for bool {
    const NAME: &'static str = "rel";
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn is_zero(&self) -> bool {
        !*self
    }
    fn add_assign(&mut self, other: &Self) {
        *self |= *other;
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
}

impl Coefficient for u64 {
    const NAME: &'static str = "span";
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_assign(&mut self, other: &Self) {
        *self = self.checked_add(*other).expect("span count overflow");
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("span count overflow")
    }
}

impl Coefficient for Q {
    const NAME: &'static str = "matrix";
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn invert(m: &SparseMorphism<Self>) -> Option<SparseMorphism<Self>> {
        m.invert_permutation().or_else(|| invert_rational(m))
    }
}

/// Factor sizes of a tensor product. The empty product is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorObject(pub Vec<usize>);

impl TensorObject {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn atom(n: usize) -> Self {
        Self(vec![n])
    }

    pub fn size(&self) -> usize {
        self.0.iter().product()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.0.len());
        tuple.iter().zip(&self.0).fold(0, |acc, (&x, &n)| acc * n + x)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.0.len()];
        for (slot, &n) in t.iter_mut().zip(&self.0).rev() {
            *slot = index % n;
            index /= n;
        }
        t
    }
}

type Row<C> = Vec<(usize, C)>;

#[derive(Clone, PartialEq)]
pub struct SparseMorphism<C> {
    src: TensorObject,
    dst: TensorObject,
    rows: Vec<Row<C>>,
}

fn normalize_row<C: Coefficient>(mut acc: HashMap<usize, C>) -> Row<C> {
    let mut row: Row<C> = acc.drain().filter(|(_, c)| !c.is_zero()).collect();
    row.sort_unstable_by_key(|(j, _)| *j);
    row
}

impl<C: Coefficient> SparseMorphism<C> {
    /// Builds a morphism row by row; `f(i)` lists the targets of source `i`.
    pub fn from_rows<F>(src: TensorObject, dst: TensorObject, f: F) -> Self
    where
        F: Fn(usize) -> Vec<(usize, C)>,
    {
        let n = dst.size();
        let rows = (0..src.size())
            .map(|i| {
                let mut acc: HashMap<usize, C> = HashMap::new();
                for (j, c) in f(i) {
                    assert!(j < n, "target index {j} out of range {n}");
                    acc.entry(j).or_insert_with(C::zero).add_assign(&c);
                }
                normalize_row(acc)
            })
            .collect();
        Self { src, dst, rows }
    }

    /// The graph of a function between tuples.
    pub fn from_map<F>(src: TensorObject, dst: TensorObject, f: F) -> Self
    where
        F: Fn(&[usize]) -> Vec<usize>,
    {
        let (s, d) = (src.clone(), dst.clone());
        Self::from_rows(src, dst, move |i| vec![(d.encode(&f(&s.decode(i))), C::one())])
    }

    /// The graph of a relation between tuples.
    pub fn from_relation<F>(src: TensorObject, dst: TensorObject, f: F) -> Self
    where
        F: Fn(&[usize]) -> Vec<Vec<usize>>,
    {
        let (s, d) = (src.clone(), dst.clone());
        Self::from_rows(src, dst, move |i| f(&s.decode(i)).iter().map(|t| (d.encode(t), C::one())).collect())
    }

    pub fn identity(obj: &TensorObject) -> Self {
        Self::from_rows(obj.clone(), obj.clone(), |i| vec![(i, C::one())])
    }

    /// The symmetry `A ⊗ B -> B ⊗ A`.
    pub fn swap(a: &TensorObject, b: &TensorObject) -> Self {
        let (na, nb) = (a.size(), b.size());
        Self::from_rows(a.tensor(b), b.tensor(a), move |i| vec![((i % nb) * na + i / nb, C::one())])
    }

    pub fn src(&self) -> &TensorObject {
        &self.src
    }

    pub fn dst(&self) -> &TensorObject {
        &self.dst
    }

    pub fn row(&self, i: usize) -> &[(usize, C)] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> C {
        match self.rows[i].binary_search_by_key(&j, |(k, _)| *k) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Relabels source and target factors without touching entries.
    pub fn with_objects(mut self, src: TensorObject, dst: TensorObject) -> Self {
        assert_eq!(src.size(), self.src.size());
        assert_eq!(dst.size(), self.dst.size());
        self.src = src;
        self.dst = dst;
        self
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &Self) -> Self {
        assert_eq!(inner.dst.size(), self.src.size(), "composition size mismatch");
        let rows = inner
            .rows
            .iter()
            .map(|row| {
                let mut acc: HashMap<usize, C> = HashMap::new();
                for (k, c) in row {
                    for (j, d) in &self.rows[*k] {
                        acc.entry(*j).or_insert_with(C::zero).add_assign(&c.mul(d));
                    }
                }
                normalize_row(acc)
            })
            .collect();
        Self { src: inner.src.clone(), dst: self.dst.clone(), rows }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let m = other.dst.size();
        let mut rows = Vec::with_capacity(self.rows.len() * other.rows.len());
        for r1 in &self.rows {
            for r2 in &other.rows {
                let mut row = Vec::with_capacity(r1.len() * r2.len());
                for (j1, c1) in r1 {
                    for (j2, c2) in r2 {
                        let c = c1.mul(c2);
                        if !c.is_zero() {
                            row.push((j1 * m + j2, c));
                        }
                    }
                }
                rows.push(row);
            }
        }
        Self { src: self.src.tensor(&other.src), dst: self.dst.tensor(&other.dst), rows }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Row<C>> = vec![Vec::new(); self.dst.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                rows[*j].push((i, c.clone()));
            }
        }
        Self { src: self.dst.clone(), dst: self.src.clone(), rows }
    }

    /// Inverse of a permutation matrix, `None` for anything else.
    pub fn invert_permutation(&self) -> Option<Self> {
        if self.src.size() != self.dst.size() {
            return None;
        }
        let mut hit = vec![false; self.dst.size()];
        for row in &self.rows {
            match row.as_slice() {
                [(j, c)] if *c == C::one() && !hit[*j] => hit[*j] = true,
                _ => return None,
            }
        }
        Some(self.transpose())
    }

    pub fn invert(&self) -> Option<Self> {
        C::invert(self)
    }

    /// Given `state: X -> L ⊗ M ⊗ R`, returns `(id_L ⊗ local ⊗ id_R) ∘ state`.
    pub fn apply_local(&self, left_obj: &TensorObject, local: &Self, right_obj: &TensorObject, exec: Execution) -> Self {
        let (left, right) = (left_obj.size(), right_obj.size());
        let (m, m2) = (local.src.size(), local.dst.size());
        assert_eq!(left * m * right, self.dst.size(), "apply_local size mismatch");
        let map_row = |row: &Row<C>| {
            let mut acc: HashMap<usize, C> = HashMap::with_capacity(row.len());
            for (col, c) in row {
                let (l, rest) = (col / (m * right), col % (m * right));
                let (mid, r) = (rest / right, rest % right);
                for (mid2, d) in &local.rows[mid] {
                    let j = (l * m2 + mid2) * right + r;
                    acc.entry(j).or_insert_with(C::zero).add_assign(&c.mul(d));
                }
            }
            normalize_row(acc)
        };
        let rows = exec.map(&self.rows, map_row);
        Self { src: self.src.clone(), dst: left_obj.tensor(&local.dst).tensor(right_obj), rows }
    }
}

impl<C: Coefficient> fmt::Debug for SparseMorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMorphism<{}> {:?} -> {:?}", C::NAME, self.src.0, self.dst.0)?;
        for (i, row) in self.rows.iter().enumerate().take(32) {
            writeln!(f, "  {i}: {row:?}")?;
        }
        if self.rows.len() > 32 {
            writeln!(f, "  ... {} more rows", self.rows.len() - 32)?;
        }
        Ok(())
    }
}

/// Inverts a rational matrix block by block: the connected components of
/// its support graph are inverted separately by Gauss-Jordan elimination.
fn invert_rational(m: &SparseMorphism<Q>) -> Option<SparseMorphism<Q>> {
    let n = m.src.size();
    if n != m.dst.size() {
        return None;
    }
    // Union-find over rows (0..n) and columns (n..2n).
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, row) in m.rows.iter().enumerate() {
        for (j, _) in row {
            let (a, b) = (find(&mut parent, i), find(&mut parent, n + j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut blocks: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().0.push(i);
        let r = find(&mut parent, n + i);
        blocks.entry(r).or_default().1.push(i);
    }
    let mut inv_rows: Vec<Row<Q>> = vec![Vec::new(); n];
    for (rows, cols) in blocks.values() {
        if rows.len() != cols.len() {
            return None;
        }
        let k = rows.len();
        let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        // Augmented [A | I] with A indexed (row, col-in-block).
        let mut a: Vec<Vec<Q>> = rows
            .iter()
            .enumerate()
            .map(|(ri, &r)| {
                let mut v = vec![<Q as Zero>::zero(); 2 * k];
                for (j, c) in &m.rows[r] {
                    v[col_pos[j]] = c.clone();
                }
                v[k + ri] = <Q as One>::one();
                v
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&r| !Zero::is_zero(&a[r][col]))?;
            a.swap(col, piv);
            let inv = <Q as One>::one() / &a[col][col];
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !Zero::is_zero(&row[col]) {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        if !Zero::is_zero(p) {
                            *x -= &f * p;
                        }
                    }
                }
            }
        }
        // A x = y; the inverse sends basis column c to the combination of rows.
        // Row a of [I | A^-1] expresses block column a in terms of block rows.
        for (ci, &c) in cols.iter().enumerate() {
            let row: Row<Q> = (0..k)
                .filter(|&ri| !Zero::is_zero(&a[ci][k + ri]))
                .map(|ri| (rows[ri], a[ci][k + ri].clone()))
                .collect();
            inv_rows[c] = row;
        }
    }
    for row in inv_rows.iter_mut() {
        row.sort_unstable_by_key(|(j, _)| *j);
    }
    Some(SparseMorphism { src: m.dst.clone(), dst: m.src.clone(), rows: inv_rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::q;
    use proptest::prelude::*;

    fn obj(v: &[usize]) -> TensorObject {
        TensorObject(v.to_vec())
    }

    #[test]
    fn encode_decode() {
        let o = obj(&[2, 3, 4]);
        for i in 0..o.size() {
            assert_eq!(o.encode(&o.decode(i)), i);
        }
        assert_eq!(o.encode(&[1, 0, 0]), 12);
    }

    #[test]
    fn swap_is_involutive() {
        let (a, b) = (obj(&[2]), obj(&[3]));
        let s: SparseMorphism<u64> = SparseMorphism::swap(&a, &b);
        let t: SparseMorphism<u64> = SparseMorphism::swap(&b, &a);
        assert_eq!(t.after(&s), SparseMorphism::identity(&a.tensor(&b)));
        assert_eq!(s.entry(obj(&[2, 3]).encode(&[1, 2]), obj(&[3, 2]).encode(&[2, 1])), 1);
    }

    fn arb_rational(n: usize) -> impl Strategy<Value = SparseMorphism<Q>> {
        prop::collection::vec(prop::collection::vec(-2i64..3, n), n).prop_map(move |m| {
            SparseMorphism::from_rows(obj(&[n]), obj(&[n]), |i| m[i].iter().enumerate().map(|(j, &c)| (j, q(c))).collect())
        })
    }

    proptest! {
        #[test]
        fn rational_inverse(m in arb_rational(4)) {
            let id = SparseMorphism::identity(&obj(&[4]));
            if let Some(inv) = m.invert() {
                prop_assert_eq!(inv.after(&m), id.clone());
                prop_assert_eq!(m.after(&inv), id);
            }
        }

        #[test]
        fn interchange_law(a in arb_rational(2), b in arb_rational(3), c in arb_rational(2), d in arb_rational(3)) {
            // (a ⊗ b)(c ⊗ d) = ac ⊗ bd
            prop_assert_eq!(a.tensor(&b).after(&c.tensor(&d)), a.after(&c).tensor(&b.after(&d)));
        }

        #[test]
        fn apply_local_matches_tensor(s in arb_rational(12), f in arb_rational(3)) {
            let s = s.with_objects(obj(&[12]), obj(&[2, 3, 2]));
            let full = SparseMorphism::identity(&obj(&[2])).tensor(&f).tensor(&SparseMorphism::identity(&obj(&[2])));
            let want = full.after(&s);
            let got = s.apply_local(&obj(&[2]), &f, &obj(&[2]), Execution::Sequential);
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn permutation_inverse_for_counts() {
        let o = obj(&[3]);
        let p: SparseMorphism<u64> = SparseMorphism::from_map(o.clone(), o.clone(), |t| vec![(t[0] + 1) % 3]);
        assert_eq!(p.invert().unwrap().after(&p), SparseMorphism::identity(&o));
        let two: SparseMorphism<u64> = SparseMorphism::from_rows(o.clone(), o.clone(), |i| vec![(i, 2)]);
        assert!(two.invert().is_none());
    }
}
