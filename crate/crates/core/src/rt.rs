//! From a rigid R-matrix to a functor on normalized Morse words.
//!
//! A base datum is an adjunction `ε: F ⊗ G -> I`, `η: I -> G ⊗ F` with an
//! invertible `r: G ⊗ G -> G ⊗ G`. Rigidity asks that the tilde morphisms
//! built from `r` and `r⁻¹` by bending legs are invertible as well. Upward
//! strands evaluate to `G`, downward strands to `F`, and every oriented
//! crossing of a normal word to one of eight morphisms derived from `r`.

use crate::diagram::{Crossing, DiagramError, Event, MorseWord, Orientation, Step, Tangle};
use crate::exec::Execution;
use crate::sparse::{Coefficient, SparseMorphism, TensorObject};

/// A strict monoidal category in which words can be evaluated.
pub trait Backend: Sync {
    type Object: Clone + PartialEq + std::fmt::Debug;
    type Morphism: Clone + std::fmt::Debug;

    fn unit(&self) -> Self::Object;
    fn tensor_objects(&self, a: &Self::Object, b: &Self::Object) -> Self::Object;
    fn identity(&self, x: &Self::Object) -> Self::Morphism;
    /// `outer ∘ inner`.
    fn compose(&self, outer: &Self::Morphism, inner: &Self::Morphism) -> Self::Morphism;
    fn tensor(&self, f: &Self::Morphism, g: &Self::Morphism) -> Self::Morphism;
    fn equal(&self, f: &Self::Morphism, g: &Self::Morphism) -> bool;
    fn invert(&self, f: &Self::Morphism) -> Option<Self::Morphism>;

    /// `(id_left ⊗ local ⊗ id_right) ∘ state`. Backends may override this
    /// with something cheaper than building the full tensor product.
    fn apply_local(
        &self,
        state: &Self::Morphism,
        left: &Self::Object,
        local: &Self::Morphism,
        right: &Self::Object,
    ) -> Self::Morphism {
        let full = self.tensor(&self.tensor(&self.identity(left), local), &self.identity(right));
        self.compose(&full, state)
    }
}

/// Sparse matrices over a semiring: relations (`bool`), spans counted up to
/// isomorphism (`u64`) or rational linear maps.
#[derive(Debug, Clone, Copy, Default)]
pub struct SparseCategory<C> {
    pub exec: Execution,
    _marker: std::marker::PhantomData<C>,
}

impl<C> SparseCategory<C> {
    pub fn new(exec: Execution) -> Self {
        Self { exec, _marker: std::marker::PhantomData }
    }
}

pub type RelCategory = SparseCategory<bool>;
pub type SpanCategory = SparseCategory<u64>;
pub type VectCategory = SparseCategory<crate::laurent::Q>;

impl<C: Coefficient> Backend for SparseCategory<C> {
    type Object = TensorObject;
    type Morphism = SparseMorphism<C>;

    fn unit(&self) -> TensorObject {
        TensorObject::unit()
    }

    fn tensor_objects(&self, a: &TensorObject, b: &TensorObject) -> TensorObject {
        a.tensor(b)
    }

    fn identity(&self, x: &TensorObject) -> SparseMorphism<C> {
        SparseMorphism::identity(x)
    }

    fn compose(&self, outer: &SparseMorphism<C>, inner: &SparseMorphism<C>) -> SparseMorphism<C> {
        outer.after(inner)
    }

    fn tensor(&self, f: &SparseMorphism<C>, g: &SparseMorphism<C>) -> SparseMorphism<C> {
        f.tensor(g)
    }

    fn equal(&self, f: &SparseMorphism<C>, g: &SparseMorphism<C>) -> bool {
        f.src().size() == g.src().size()
            && f.dst().size() == g.dst().size()
            && (0..f.src().size()).all(|i| f.row(i) == g.row(i))
    }

    fn invert(&self, f: &SparseMorphism<C>) -> Option<SparseMorphism<C>> {
        f.invert()
    }

    fn apply_local(
        &self,
        state: &SparseMorphism<C>,
        left: &TensorObject,
        local: &SparseMorphism<C>,
        right: &TensorObject,
    ) -> SparseMorphism<C> {
        state.apply_local(left, local, right, self.exec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RtError {
    #[error("slice {slice} holds {event}; evaluation needs a normalized word")]
    NotNormal { slice: usize, event: String },
    #[error("zig-zag identity fails for {0}")]
    AdjunctionFailure(&'static str),
    #[error("{0} is not invertible")]
    NotInvertible(&'static str),
    #[error("R-matrix is not rigid: {0} is not invertible")]
    NotRigid(&'static str),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Adjunction plus an invertible R-matrix on `G`.
#[derive(Debug, Clone)]
pub struct BaseDatum<B: Backend> {
    pub g: B::Object,
    pub f: B::Object,
    /// `F ⊗ G -> I`.
    pub eps: B::Morphism,
    /// `I -> G ⊗ F`.
    pub eta: B::Morphism,
    pub r: B::Morphism,
    /// Derived by inversion when absent.
    pub r_inv: Option<B::Morphism>,
}

/// The eight crossing morphisms of a rigid R-matrix.
#[derive(Debug, Clone)]
pub struct RMatrixDatum<B: Backend> {
    pub g: B::Object,
    pub f: B::Object,
    pub eps: B::Morphism,
    pub eta: B::Morphism,
    pub r: B::Morphism,
    pub r_inv: B::Morphism,
    /// `r̃ : F ⊗ G -> G ⊗ F`.
    pub r_t: B::Morphism,
    /// Tilde of `r⁻¹`.
    pub r_inv_t: B::Morphism,
    /// `r̃̃ : F ⊗ F -> F ⊗ F`.
    pub r_tt: B::Morphism,
    /// Double tilde of `r⁻¹`.
    pub r_inv_tt: B::Morphism,
    /// `(r̃)⁻¹ : G ⊗ F -> F ⊗ G`.
    pub r_t_inv: B::Morphism,
    /// Inverse of the tilde of `r⁻¹`.
    pub r_inv_t_inv: B::Morphism,
}

/// Which derived morphism a crossing evaluates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingMorphism {
    R,
    RInv,
    RT,
    RInvT,
    RTT,
    RInvTT,
    RTInv,
    RInvTInv,
}

/// Lookup by the orientations of the slash and backslash strands and which
/// of them is on top.
pub fn crossing_morphism(c: &Crossing) -> CrossingMorphism {
    use CrossingMorphism::*;
    use Orientation::{Down as D, Up as U};
    match (c.slash, c.back, c.over_slash) {
        (U, U, true) => R,
        (U, U, false) => RInv,
        (D, U, false) => RT,
        (D, U, true) => RInvT,
        (D, D, true) => RTT,
        (D, D, false) => RInvTT,
        (U, D, false) => RInvTInv,
        (U, D, true) => RTInv,
    }
}

/// Bends the legs of `x: Y ⊗ G -> G ⊗ Z` into `F ⊗ Y -> Z ⊗ F`.
pub fn tilde<B: Backend>(
    b: &B,
    f: &B::Object,
    eps: &B::Morphism,
    eta: &B::Morphism,
    x: &B::Morphism,
    y: &B::Object,
    z: &B::Object,
) -> B::Morphism {
    let idf = b.identity(f);
    let s1 = b.tensor(&b.tensor(&idf, &b.identity(y)), eta);
    let s2 = b.tensor(&b.tensor(&idf, x), &idf);
    let s3 = b.tensor(&b.tensor(eps, &b.identity(z)), &idf);
    b.compose(&s3, &b.compose(&s2, &s1))
}

/// Checks the zig-zag identities and derives every crossing morphism.
pub fn derive_tildes<B: Backend>(b: &B, base: &BaseDatum<B>) -> Result<RMatrixDatum<B>, RtError> {
    let (g, f) = (&base.g, &base.f);
    let (idg, idf) = (b.identity(g), b.identity(f));
    // (ε ⊗ id_F)(id_F ⊗ η) = id_F and (id_G ⊗ ε)(η ⊗ id_G) = id_G.
    let zf = b.compose(&b.tensor(&base.eps, &idf), &b.tensor(&idf, &base.eta));
    if !b.equal(&zf, &idf) {
        return Err(RtError::AdjunctionFailure("F"));
    }
    let zg = b.compose(&b.tensor(&idg, &base.eps), &b.tensor(&base.eta, &idg));
    if !b.equal(&zg, &idg) {
        return Err(RtError::AdjunctionFailure("G"));
    }
    let r_inv = match &base.r_inv {
        Some(ri) => {
            let gg = b.tensor_objects(g, g);
            if !b.equal(&b.compose(ri, &base.r), &b.identity(&gg)) || !b.equal(&b.compose(&base.r, ri), &b.identity(&gg)) {
                return Err(RtError::NotInvertible("r"));
            }
            ri.clone()
        }
        None => b.invert(&base.r).ok_or(RtError::NotInvertible("r"))?,
    };
    let r_t = tilde(b, f, &base.eps, &base.eta, &base.r, g, g);
    let r_inv_t = tilde(b, f, &base.eps, &base.eta, &r_inv, g, g);
    let r_tt = tilde(b, f, &base.eps, &base.eta, &r_t, f, f);
    let r_inv_tt = tilde(b, f, &base.eps, &base.eta, &r_inv_t, f, f);
    let r_t_inv = b.invert(&r_t).ok_or(RtError::NotRigid("r̃"))?;
    let r_inv_t_inv = b.invert(&r_inv_t).ok_or(RtError::NotRigid("tilde of r⁻¹"))?;
    Ok(RMatrixDatum {
        g: g.clone(),
        f: f.clone(),
        eps: base.eps.clone(),
        eta: base.eta.clone(),
        r: base.r.clone(),
        r_inv,
        r_t,
        r_inv_t,
        r_tt,
        r_inv_tt,
        r_t_inv,
        r_inv_t_inv,
    })
}

impl<B: Backend> RMatrixDatum<B> {
    pub fn crossing(&self, c: &Crossing) -> &B::Morphism {
        match crossing_morphism(c) {
            CrossingMorphism::R => &self.r,
            CrossingMorphism::RInv => &self.r_inv,
            CrossingMorphism::RT => &self.r_t,
            CrossingMorphism::RInvT => &self.r_inv_t,
            CrossingMorphism::RTT => &self.r_tt,
            CrossingMorphism::RInvTT => &self.r_inv_tt,
            CrossingMorphism::RTInv => &self.r_t_inv,
            CrossingMorphism::RInvTInv => &self.r_inv_t_inv,
        }
    }

    pub fn object(&self, b: &B, sig: &[Orientation]) -> B::Object {
        sig.iter().fold(b.unit(), |acc, o| {
            b.tensor_objects(&acc, if *o == Orientation::Up { &self.g } else { &self.f })
        })
    }

    /// Cancellation identities between the derived morphisms: the double
    /// tilde of `r⁻¹` inverts the double tilde of `r`, and each pair of
    /// crossings related by an RII move composes to an identity.
    pub fn identity_checks(&self, b: &B) -> Vec<(&'static str, bool)> {
        let gf = b.tensor_objects(&self.g, &self.f);
        let fg = b.tensor_objects(&self.f, &self.g);
        let ff = b.tensor_objects(&self.f, &self.f);
        let gg = b.tensor_objects(&self.g, &self.g);
        let is_id = |m: B::Morphism, o: &B::Object| b.equal(&m, &b.identity(o));
        vec![
            ("r⁻¹ ∘ r = id", is_id(b.compose(&self.r_inv, &self.r), &gg)),
            ("r̃ ∘ (r̃)⁻¹ = id", is_id(b.compose(&self.r_t, &self.r_t_inv), &gf)),
            ("(r̃)⁻¹ ∘ r̃ = id", is_id(b.compose(&self.r_t_inv, &self.r_t), &fg)),
            ("(tilde r⁻¹)⁻¹ ∘ tilde r⁻¹ = id", is_id(b.compose(&self.r_inv_t_inv, &self.r_inv_t), &fg)),
            ("tilde r⁻¹ ∘ (tilde r⁻¹)⁻¹ = id", is_id(b.compose(&self.r_inv_t, &self.r_inv_t_inv), &gf)),
            ("r̃̃⁻¹ ∘ r̃̃ = id", is_id(b.compose(&self.r_inv_tt, &self.r_tt), &ff)),
            ("r̃̃ ∘ r̃̃⁻¹ = id", is_id(b.compose(&self.r_tt, &self.r_inv_tt), &ff)),
        ]
    }

    fn event_morphism(&self, step: &Step, slice: usize) -> Result<&B::Morphism, RtError> {
        match &step.event {
            Event::CapRL => Ok(&self.eps),
            Event::CupRL => Ok(&self.eta),
            Event::Cross(c) => Ok(self.crossing(c)),
            other => Err(RtError::NotNormal { slice, event: other.token() }),
        }
    }

    /// The morphism of one full slice, strands included.
    pub fn slice_morphism(&self, b: &B, sig: &[Orientation], step: &Step) -> Result<B::Morphism, RtError> {
        let local = self.event_morphism(step, 0)?;
        let left = b.identity(&self.object(b, &sig[..step.pos]));
        let right = b.identity(&self.object(b, &sig[step.pos + step.event.in_arity()..]));
        Ok(b.tensor(&b.tensor(&left, local), &right))
    }
}

/// Evaluates a normalized tangle by pushing a state through its slices.
pub fn evaluate<B: Backend>(b: &B, datum: &RMatrixDatum<B>, t: &Tangle) -> Result<B::Morphism, RtError> {
    let sigs = t.signatures()?;
    let mut state = b.identity(&datum.object(b, t.bottom()));
    for (i, step) in t.steps().iter().enumerate() {
        let local = datum.event_morphism(step, i + 1)?;
        let sig = &sigs[i];
        let left = datum.object(b, &sig[..step.pos]);
        let right = datum.object(b, &sig[step.pos + step.event.in_arity()..]);
        state = b.apply_local(&state, &left, local, &right);
    }
    Ok(state)
}

/// Evaluates by composing full slice morphisms; slower, used as a cross-check.
pub fn evaluate_by_slices<B: Backend>(b: &B, datum: &RMatrixDatum<B>, t: &Tangle) -> Result<B::Morphism, RtError> {
    let sigs = t.signatures()?;
    let mut acc = b.identity(&datum.object(b, t.bottom()));
    for (i, step) in t.steps().iter().enumerate() {
        if !matches!(step.event, Event::CapRL | Event::CupRL | Event::Cross(_)) {
            return Err(RtError::NotNormal { slice: i + 1, event: step.event.token() });
        }
        acc = b.compose(&datum.slice_morphism(b, &sigs[i], step)?, &acc);
    }
    Ok(acc)
}

/// The invariant `J_D`: evaluation of the writhe-corrected normalization.
pub fn invariant<B: Backend>(b: &B, datum: &RMatrixDatum<B>, d: &MorseWord) -> Result<B::Morphism, RtError> {
    let c = d.corrected()?;
    evaluate(b, datum, c.tangle())
}

/// Diagonal adjunction on an `n`-element atom, shared by every sparse backend.
pub fn diagonal_adjunction<C: Coefficient>(n: usize) -> (SparseMorphism<C>, SparseMorphism<C>) {
    let a = TensorObject::atom(n);
    let aa = a.tensor(&a);
    let eps = SparseMorphism::from_rows(aa.clone(), TensorObject::unit(), |i| {
        if i / n == i % n {
            vec![(0, C::one())]
        } else {
            vec![]
        }
    });
    let eta = SparseMorphism::from_rows(TensorObject::unit(), aa, |_| (0..n).map(|i| (i * n + i, C::one())).collect());
    (eps, eta)
}

/// Base datum on an atom of size `n` with the diagonal adjunction.
pub fn sparse_base<C: Coefficient>(n: usize, r: SparseMorphism<C>, r_inv: Option<SparseMorphism<C>>) -> BaseDatum<SparseCategory<C>> {
    let (eps, eta) = diagonal_adjunction(n);
    BaseDatum { g: TensorObject::atom(n), f: TensorObject::atom(n), eps, eta, r, r_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{random_move_sequence, Crossing};
    use crate::laurent::{q, Q};
    use Orientation::{Down, Up};

    fn flip_datum(n: usize) -> RMatrixDatum<VectCategory> {
        let b = VectCategory::default();
        let a = TensorObject::atom(n);
        let base = sparse_base::<Q>(n, SparseMorphism::swap(&a, &a), None);
        derive_tildes(&b, &base).unwrap()
    }

    #[test]
    fn lookup_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for s in [Up, Down] {
            for bk in [Up, Down] {
                for o in [true, false] {
                    seen.insert(crossing_morphism(&Crossing::new(s, bk, o)));
                }
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn flip_gives_identity_on_knots() {
        let b = VectCategory::default();
        let d = flip_datum(3);
        let k = MorseWord::from_braid(&[1, -2, 1, -2], 3).unwrap();
        let j = invariant(&b, &d, &k).unwrap();
        assert!(b.equal(&j, &b.identity(&TensorObject::atom(3))));
    }

    #[test]
    fn identity_is_not_rigid() {
        let b = VectCategory::default();
        let a = TensorObject::atom(2);
        let base = sparse_base::<Q>(2, SparseMorphism::identity(&a.tensor(&a)), None);
        assert_eq!(derive_tildes(&b, &base).unwrap_err(), RtError::NotRigid("r̃"));
    }

    #[test]
    fn broken_adjunction_is_reported() {
        let b = VectCategory::default();
        let a = TensorObject::atom(2);
        let mut base = sparse_base::<Q>(2, SparseMorphism::swap(&a, &a), None);
        base.eps = SparseMorphism::from_rows(a.tensor(&a), TensorObject::unit(), |i| vec![(0, q(i as i64))]);
        assert!(matches!(derive_tildes(&b, &base), Err(RtError::AdjunctionFailure(_))));
    }

    #[test]
    fn unnormalized_word_is_rejected() {
        let b = VectCategory::default();
        let d = flip_datum(2);
        let k = MorseWord::from_braid(&[1, 1, 1], 2).unwrap();
        assert!(matches!(evaluate(&b, &d, &k), Err(RtError::NotNormal { .. })));
    }

    #[test]
    fn structural_identities_for_a_twisted_swap() {
        let b = VectCategory::default();
        // Swap composed with a unipotent twist: not symmetric, still rigid.
        let n = 2;
        let a = TensorObject::atom(n);
        let aa = a.tensor(&a);
        let twist = SparseMorphism::from_rows(aa.clone(), aa.clone(), |i| {
            let mut v = vec![(i, q(1))];
            if i == 0 {
                v.push((3, q(1)));
            }
            v
        });
        let r = SparseMorphism::swap(&a, &a).after(&twist);
        let d = derive_tildes(&b, &sparse_base::<Q>(n, r, None)).unwrap();
        for (name, ok) in d.identity_checks(&b) {
            assert!(ok, "{name}");
        }
        let x = evaluate_by_slices(&b, &d, &MorseWord::xi(-1).into_tangle()).unwrap();
        let y = evaluate(&b, &d, &MorseWord::xi(-1).into_tangle()).unwrap();
        assert!(b.equal(&x, &y));
    }

    #[test]
    fn state_and_slice_evaluation_agree() {
        let b = SpanCategory::default();
        let n = 3;
        let a = TensorObject::atom(n);
        // r(x, y) = (y + 1, x) mod 3 is a rack-free but rigid bijection.
        let r = SparseMorphism::from_map(a.tensor(&a), a.tensor(&a), |t| vec![(t[1] + 1) % 3, t[0]]);
        let d = derive_tildes(&b, &sparse_base::<u64>(n, r, None)).unwrap();
        let k = random_move_sequence(&MorseWord::from_braid(&[1, 1, 1], 2).unwrap(), 3, 8).corrected().unwrap();
        let x = evaluate(&b, &d, &k).unwrap();
        let y = evaluate_by_slices(&b, &d, &k).unwrap();
        assert!(b.equal(&x, &y));
    }
}
