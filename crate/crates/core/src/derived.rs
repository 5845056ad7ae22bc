//! Derived functors and the roof calculus.
//!
//! `RHom` and the derived tensor replace both arguments by free resolutions
//! and totalize; `Ext` and `Tor` are their cohomologies. Morphisms in the
//! derived category between bounded free complexes are represented as roofs
//! `(s, a)` with `s` a quasi-isomorphism, composed and compared through the
//! lifting solver. All outputs are explicit free complexes or finitely
//! presented modules; identity in the derived category is always decided by
//! quasi-isomorphism or homotopy, never by structural equality.

use crate::complex::{hom_complex, tensor_complex, ChainMap, FreeComplex};
use crate::fpcomplex::FpComplex;
use crate::fpmod::FpModule;
use crate::resolve::{free_resolution, lift_through_qis, LiftError};
use crate::ring::EuclideanDomain;
use crate::Degree;

/// `RHom(M, N)` as an explicit bounded free complex: the Hom totalization of
/// free resolutions of both arguments. Well-defined in the derived category
/// up to quasi-isomorphism.
pub fn rhom<R: EuclideanDomain>(m: &FpComplex<R>, n: &FpComplex<R>) -> FreeComplex<R> {
    let p = free_resolution(m).complex;
    let q = free_resolution(n).complex;
    hom_complex(&p, &q)
}

/// `M ⊗^L N` as an explicit bounded free complex.
pub fn derived_tensor<R: EuclideanDomain>(m: &FpComplex<R>, n: &FpComplex<R>) -> FreeComplex<R> {
    let p = free_resolution(m).complex;
    let q = free_resolution(n).complex;
    tensor_complex(&p, &q)
}

/// `Ext^i(M, N) = H^i(RHom(M, N))`.
pub fn ext<R: EuclideanDomain>(m: &FpComplex<R>, n: &FpComplex<R>, i: Degree) -> FpModule<R> {
    rhom(m, n).cohomology(i)
}

/// `Tor_i(M, N) = H^{-i}(M ⊗^L N)`.
pub fn tor<R: EuclideanDomain>(m: &FpComplex<R>, n: &FpComplex<R>, i: Degree) -> FpModule<R> {
    derived_tensor(m, n).cohomology(-i)
}

/// `Hom_{D}(M, N[i])`: chain maps from the resolution of `M` to the shifted
/// resolution of `N`, modulo homotopy — computed as `H^0` of the Hom complex.
/// Agrees with [`ext`] degree by degree.
pub fn derived_hom_group<R: EuclideanDomain>(
    m: &FpComplex<R>,
    n: &FpComplex<R>,
    i: Degree,
) -> FpModule<R> {
    let p = free_resolution(m).complex;
    let q = free_resolution(n).complex.shift(i);
    hom_complex(&p, &q).cohomology(0)
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum RoofError<R: EuclideanDomain> {
    #[error("roof legs must share the apex as source")]
    ApexMismatch,
    #[error("roof denominator is not a quasi-isomorphism")]
    DenominatorNotQuasiIso,
    #[error("roof endpoints do not match")]
    EndpointMismatch,
    #[error(transparent)]
    Lift(LiftError<R>),
}

/// A morphism in the derived category presented as a left fraction: a pair
/// `(s, a)` of chain maps out of a common bounded free apex, with `s` a
/// quasi-isomorphism. The roof represents `a ∘ s^{-1}` from the target of
/// `s` to the target of `a`.
#[derive(Debug, Clone)]
pub struct Roof<R: EuclideanDomain> {
    apex: FreeComplex<R>,
    s: ChainMap<R>,
    a: ChainMap<R>,
}

impl<R: EuclideanDomain> Roof<R> {
    pub fn new(s: ChainMap<R>, a: ChainMap<R>) -> Result<Self, RoofError<R>> {
        if s.source() != a.source() {
            return Err(RoofError::ApexMismatch);
        }
        if !s.is_quasi_iso() {
            return Err(RoofError::DenominatorNotQuasiIso);
        }
        Ok(Roof {
            apex: s.source().clone(),
            s,
            a,
        })
    }

    /// The image of an ordinary chain map: the roof `(1, a)`.
    pub fn plain(a: ChainMap<R>) -> Self {
        Roof {
            apex: a.source().clone(),
            s: ChainMap::identity(a.source()),
            a,
        }
    }

    /// The formal inverse of a quasi-isomorphism `s : X -> Y`: the roof
    /// `(s, 1)` from `Y` to `X`.
    pub fn inverse_of(s: ChainMap<R>) -> Result<Self, RoofError<R>> {
        if !s.is_quasi_iso() {
            return Err(RoofError::DenominatorNotQuasiIso);
        }
        Ok(Roof {
            apex: s.source().clone(),
            a: ChainMap::identity(s.source()),
            s,
        })
    }

    pub fn identity(x: &FreeComplex<R>) -> Self {
        Roof::plain(ChainMap::identity(x))
    }

    pub fn apex(&self) -> &FreeComplex<R> {
        &self.apex
    }

    pub fn denominator(&self) -> &ChainMap<R> {
        &self.s
    }

    pub fn numerator(&self) -> &ChainMap<R> {
        &self.a
    }

    /// Domain of the represented morphism.
    pub fn from_object(&self) -> &FreeComplex<R> {
        self.s.target()
    }

    /// Codomain of the represented morphism.
    pub fn to_object(&self) -> &FreeComplex<R> {
        self.a.target()
    }

    /// Composite `second ∘ first`: lift the numerator of `first` through the
    /// denominator of `second` (the Ore square, supplied constructively by
    /// the lifting solver).
    pub fn compose(second: &Roof<R>, first: &Roof<R>) -> Result<Roof<R>, RoofError<R>> {
        if first.to_object() != second.from_object() {
            return Err(RoofError::EndpointMismatch);
        }
        let (g, _) = lift_through_qis(&first.a, &second.s).map_err(RoofError::Lift)?;
        Ok(Roof {
            apex: first.apex.clone(),
            s: first.s.clone(),
            a: second.a.compose(&g),
        })
    }

    /// Normalized numerator over the source object itself: a chain map
    /// `n : X -> Y` with `Q(n) = Q(a) ∘ Q(s)^{-1}`, produced by lifting the
    /// identity of the source through the denominator. Bounded free sources
    /// are K-projective, so homotopy classes of such maps are exactly the
    /// derived category morphisms.
    pub fn normalized_numerator(&self) -> Result<ChainMap<R>, RoofError<R>> {
        let one = ChainMap::identity(self.from_object());
        let (u, _) = lift_through_qis(&one, &self.s).map_err(RoofError::Lift)?;
        Ok(self.a.compose(&u))
    }

    /// Equality of roofs with the same endpoints, decided by bringing both
    /// to the common denominator `1` over the source and testing the
    /// difference of numerators for null-homotopy.
    pub fn equals(&self, other: &Roof<R>) -> Result<bool, RoofError<R>> {
        if self.from_object() != other.from_object() || self.to_object() != other.to_object() {
            return Err(RoofError::EndpointMismatch);
        }
        let n1 = self.normalized_numerator()?;
        let n2 = other.normalized_numerator()?;
        Ok(n1.sub(&n2).null_homotopy().is_some())
    }
}
