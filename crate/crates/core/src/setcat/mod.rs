//! Racks in the categories of relations and spans over finite sets.
//!
//! Spans are kept up to isomorphism as matrices of fiber cardinalities, so
//! composition is the matrix product over the naturals and the boolean
//! shadow `ϖ` sends a span to the relation it supports.

mod group;

pub use group::{FiniteGroup, GroupTableFile};

use crate::rt::{sparse_base, BaseDatum, SparseCategory};
use crate::sparse::{Coefficient, SparseMorphism, TensorObject};

pub type SpanMatrix = SparseMorphism<u64>;
pub type Relation = SparseMorphism<bool>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetCatError {
    #[error("invalid group {name}: {reason}")]
    InvalidGroup { name: String, reason: String },
    #[error("unknown group `{0}`; expected Sn, Zn, Dn or a table file")]
    UnknownGroup(String),
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("rack axiom violated: {0}")]
    RackAxiomViolation(String),
    #[error("index ({x}, {y}) out of range for a {rows}x{cols} span")]
    IndexOutOfRange { x: usize, y: usize, rows: usize, cols: usize },
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedGroup {
    pub group: FiniteGroup,
    pub mu: usize,
}

impl PointedGroup {
    pub fn new(group: FiniteGroup, mu_label: &str) -> Result<Self, SetCatError> {
        let mu = group.element(mu_label)?;
        Ok(Self { group, mu })
    }

    pub fn mu_label(&self) -> &str {
        self.group.label(self.mu)
    }
}

/// A finite left rack: `x·(y·z) = (x·y)·(x·z)` and `x∗(x·y) = y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RackTable {
    pub size: usize,
    pub dot: Vec<Vec<usize>>,
    pub star: Vec<Vec<usize>>,
}

impl RackTable {
    pub fn verify(&self) -> Result<(), SetCatError> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                if self.star[x][self.dot[x][y]] != y {
                    return Err(SetCatError::RackAxiomViolation(format!("x∗(x·y) ≠ y at x={x}, y={y}")));
                }
                for z in 0..n {
                    if self.dot[x][self.dot[y][z]] != self.dot[self.dot[x][y]][self.dot[x][z]] {
                        return Err(SetCatError::RackAxiomViolation(format!(
                            "self-distributivity fails at x={x}, y={y}, z={z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `s′(x, y) = (y, y∗x)`, the inverse of `r`.
    pub fn s_prime(&self, x: usize, y: usize) -> (usize, usize) {
        (y, self.star[y][x])
    }

    /// `s(x, y) = (x∗y, x)`.
    pub fn s(&self, x: usize, y: usize) -> (usize, usize) {
        (self.star[x][y], x)
    }

    /// `r(x, y) = (x·y, x)`.
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.dot[x][y], x)
    }

    /// `r′(x, y) = (y, y·x)`.
    pub fn r_prime(&self, x: usize, y: usize) -> (usize, usize) {
        (y, self.dot[y][x])
    }

    /// The graph of a map `X × X -> X × X` as a morphism.
    pub fn graph<C: Coefficient>(&self, f: impl Fn(usize, usize) -> (usize, usize)) -> SparseMorphism<C> {
        let x = TensorObject::atom(self.size);
        let xx = x.tensor(&x);
        SparseMorphism::from_map(xx.clone(), xx, |t| {
            let (a, b) = f(t[0], t[1]);
            vec![a, b]
        })
    }
}

/// `g·h = gμg⁻¹h`, `g∗h = gμ⁻¹g⁻¹h`.
pub fn rack_from_pointed_group(pg: &PointedGroup) -> RackTable {
    let g = &pg.group;
    let n = g.order();
    let mu_inv = g.inv(pg.mu);
    let dot = (0..n).map(|a| (0..n).map(|b| g.mul(g.conj(a, pg.mu), b)).collect()).collect();
    let star = (0..n).map(|a| (0..n).map(|b| g.mul(g.conj(a, mu_inv), b)).collect()).collect();
    RackTable { size: n, dot, star }
}

/// `r(x, y) = (x·y, x)` with its inverse `s′`, over the diagonal adjunction.
pub fn rmatrix_from_rack<C: Coefficient>(rack: &RackTable) -> Result<BaseDatum<SparseCategory<C>>, SetCatError> {
    rack.verify()?;
    let r = rack.graph::<C>(|x, y| rack.r(x, y));
    let r_inv = rack.graph::<C>(|x, y| rack.s_prime(x, y));
    Ok(sparse_base(rack.size, r, Some(r_inv)))
}

/// Boolean shadow of a span: `ϖ`.
pub fn varpi(z: &SpanMatrix) -> Relation {
    SparseMorphism::from_rows(z.src().clone(), z.dst().clone(), |i| z.row(i).iter().map(|(j, _)| (*j, true)).collect())
}

/// The cardinality of the fiber of `J` over `(x, y)`.
pub fn fiber_count(j: &SpanMatrix, x: usize, y: usize) -> Result<u64, SetCatError> {
    let (rows, cols) = (j.src().size(), j.dst().size());
    if x >= rows || y >= cols {
        return Err(SetCatError::IndexOutOfRange { x, y, rows, cols });
    }
    Ok(j.entry(x, y))
}
