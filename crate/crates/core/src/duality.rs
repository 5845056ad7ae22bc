//! Dualizing complexes over Euclidean domains.
//!
//! A candidate is any bounded complex of finitely presented modules; it is
//! resolved once and verified through its endomorphism complex: the candidate
//! is dualizing exactly when `H^0(Hom(R, R))` is free of rank one generated
//! by the class of the identity and all other cohomology vanishes. Duality is
//! computed on the K-projective side throughout (`Hom(P, R)` for a free
//! resolution `P`), and biduality is the signed evaluation pairing
//! `θ(m)(φ) = (-1)^{kl} φ(m)`.

use alloc::collections::BTreeMap;

use crate::complex::{
    chain_map_to_cocycle, hom_complex, ChainMap, FreeComplex, HomLayout,
};
use crate::fpcomplex::FpComplex;
use crate::fpmod::{FpModule, InvariantFactors, ModuleMap};
use crate::matrix::Matrix;
use crate::resolve::{free_resolution, Resolution};
use crate::ring::EuclideanDomain;
use crate::Degree;

/// Outcome of checking the dualizing conditions on a candidate.
#[derive(Debug, Clone)]
pub struct DualizingReport<R: EuclideanDomain> {
    pub is_dualizing: bool,
    /// Cohomology of the endomorphism complex `Hom(R, R)`, degree by degree.
    pub endo_cohomology: BTreeMap<Degree, InvariantFactors<R>>,
    /// Whether the class of the identity generates `H^0`.
    pub identity_class_generates: bool,
}

/// Check the dualizing conditions: `H^0(Hom(R,R))` free of rank one on the
/// identity class, all other cohomology zero. Over the supported rings
/// (regular, global dimension at most one) the finite injective dimension
/// condition holds for every bounded complex with finitely generated
/// cohomology, so this is the whole test.
pub fn verify_dualizing<R: EuclideanDomain>(candidate: &FpComplex<R>) -> DualizingReport<R> {
    let resolved = free_resolution(candidate).complex;
    verify_dualizing_resolved(&resolved)
}

fn verify_dualizing_resolved<R: EuclideanDomain>(r: &FreeComplex<R>) -> DualizingReport<R> {
    let endo = hom_complex(r, r);
    let mut endo_cohomology = BTreeMap::new();
    let mut away_from_zero_vanishes = true;
    if let (Some(lo), Some(hi)) = (endo.min_degree(), endo.max_degree()) {
        for i in lo..=hi {
            let h = endo.cohomology(i).normal_form();
            if i != 0 && !h.is_zero() {
                away_from_zero_vanishes = false;
            }
            endo_cohomology.insert(i, h);
        }
    }
    let h0 = endo.cohomology_data(0);
    let identity_cocycle = chain_map_to_cocycle(&ChainMap::identity(r));
    let identity_class_generates = match h0.express(&identity_cocycle) {
        Some(coords) => ModuleMap::new(FpModule::free(1), h0.module.clone(), coords)
            .map(|unit_map| unit_map.is_iso())
            .unwrap_or(false),
        None => false,
    };
    DualizingReport {
        is_dualizing: away_from_zero_vanishes && identity_class_generates,
        endo_cohomology,
        identity_class_generates,
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DualityError<R: EuclideanDomain> {
    #[error("candidate is not a dualizing complex")]
    NotDualizing(DualizingReport<R>),
    #[error("second candidate is not a dualizing complex")]
    SecondNotDualizing(DualizingReport<R>),
    #[error("Hom complex of the two candidates is not a shifted line; classification failed")]
    NotConcentrated,
}

/// A verified dualizing complex, held in resolved (bounded free) form.
#[derive(Debug, Clone)]
pub struct Dualizer<R: EuclideanDomain> {
    r: FreeComplex<R>,
}

impl<R: EuclideanDomain> Dualizer<R> {
    /// Verify the candidate and keep its free resolution; rejection carries
    /// the full report.
    pub fn new(candidate: &FpComplex<R>) -> Result<Self, DualityError<R>> {
        let r = free_resolution(candidate).complex;
        let report = verify_dualizing_resolved(&r);
        if !report.is_dualizing {
            return Err(DualityError::NotDualizing(report));
        }
        Ok(Dualizer { r })
    }

    /// Wrap a complex that is already known to be free and dualizing.
    pub fn from_free(r: FreeComplex<R>) -> Result<Self, DualityError<R>> {
        let report = verify_dualizing_resolved(&r);
        if !report.is_dualizing {
            return Err(DualityError::NotDualizing(report));
        }
        Ok(Dualizer { r })
    }

    pub fn complex(&self) -> &FreeComplex<R> {
        &self.r
    }

    /// `D_R(M) = RHom(M, R)`, computed as `Hom(P, R)` for a free resolution
    /// `P` of `M`.
    pub fn dual(&self, m: &FpComplex<R>) -> FreeComplex<R> {
        hom_complex(&free_resolution(m).complex, &self.r)
    }

    /// The dual of a complex already in free form.
    pub fn dual_of_free(&self, p: &FreeComplex<R>) -> FreeComplex<R> {
        hom_complex(p, &self.r)
    }

    /// The biduality comparison for `M`: the signed evaluation chain map
    /// `θ : P -> Hom(Hom(P, R), R)` with `θ(m)(φ) = (-1)^{k+l} φ(m)`.
    pub fn biduality(&self, m: &FpComplex<R>) -> Biduality<R> {
        let resolution = free_resolution(m);
        let p = resolution.complex.clone();
        let dual = hom_complex(&p, &self.r);
        let double_dual = hom_complex(&dual, &self.r);

        let mut comps: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (k, p_k) in p.support() {
            let dd_layout = HomLayout::new(&dual, &self.r, k);
            let mut theta_k = Matrix::zero(dd_layout.total, p_k);
            for &(l, _d_l, r_lk, dd_offset) in &dd_layout.blocks {
                let d_layout = HomLayout::new(&p, &self.r, l);
                let Some(&(_, _, r_kl, d_offset)) = d_layout
                    .blocks
                    .iter()
                    .find(|&&(j, _, _, _)| j == k)
                else {
                    continue;
                };
                debug_assert_eq!(r_kl, r_lk);
                // the evaluation pairing sign forced by the Hom differential
                // d(φ) = d∘φ - (-1)^i φ∘d is (-1)^{k·l}
                let sign = R::from_i64(if (k * l).rem_euclid(2) == 0 { 1 } else { -1 });
                for a0 in 0..p_k {
                    for b in 0..r_kl {
                        let c = d_offset + a0 * r_kl + b;
                        let row = dd_offset + c * r_lk + b;
                        theta_k.set(row, a0, sign.clone());
                    }
                }
            }
            comps.insert(k, theta_k);
        }
        let theta = ChainMap::try_new(p, double_dual.clone(), comps)
            .expect("the signed evaluation pairing is a chain map");
        let is_quasi_iso = theta.is_quasi_iso();
        let is_chain_iso = theta.is_degreewise_iso();
        Biduality {
            resolution,
            dual,
            double_dual,
            theta,
            is_quasi_iso,
            is_chain_iso,
        }
    }
}

/// The data produced by a biduality comparison.
#[derive(Debug, Clone)]
pub struct Biduality<R: EuclideanDomain> {
    pub resolution: Resolution<R>,
    pub dual: FreeComplex<R>,
    pub double_dual: FreeComplex<R>,
    pub theta: ChainMap<R>,
    /// Always true over the supported rings (biduality); computed, not
    /// assumed.
    pub is_quasi_iso: bool,
    /// Whether `θ` happens to be an isomorphism of complexes on the nose.
    pub is_chain_iso: bool,
}

/// Compare two dualizing candidates: over a principal ideal domain the Picard
/// group is trivial, so a second dualizing complex differs from the first by
/// a shift only. Returns `n` with `R' ≃ R[n]`.
pub fn classify_dualizing<R: EuclideanDomain>(
    first: &FpComplex<R>,
    second: &FpComplex<R>,
) -> Result<Degree, DualityError<R>> {
    let r1 = free_resolution(first).complex;
    let report1 = verify_dualizing_resolved(&r1);
    if !report1.is_dualizing {
        return Err(DualityError::NotDualizing(report1));
    }
    let r2 = free_resolution(second).complex;
    let report2 = verify_dualizing_resolved(&r2);
    if !report2.is_dualizing {
        return Err(DualityError::SecondNotDualizing(report2));
    }
    let m = hom_complex(&r1, &r2);
    let (Some(lo), Some(hi)) = (m.min_degree(), m.max_degree()) else {
        return Err(DualityError::NotConcentrated);
    };
    let mut concentrated: Option<Degree> = None;
    for i in lo..=hi {
        let h = m.cohomology(i).normal_form();
        if h.is_zero() {
            continue;
        }
        if h.free_rank != 1 || !h.torsion.is_empty() || concentrated.is_some() {
            return Err(DualityError::NotConcentrated);
        }
        concentrated = Some(i);
    }
    match concentrated {
        Some(deg) => Ok(-deg),
        None => Err(DualityError::NotConcentrated),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use crate::ring::{Integer, RatPoly};

    type MZ = Matrix<Integer>;

    fn unit_complex(degree: Degree) -> FpComplex<Integer> {
        FpComplex::single(degree, FpModule::free(1))
    }

    fn z_mod(n: i64) -> FpComplex<Integer> {
        FpComplex::single(0, FpModule::cyclic(Integer::from_i64(n)))
    }

    fn nf(m: &FpModule<Integer>) -> (usize, Vec<i64>) {
        let f = m.normal_form();
        (
            f.free_rank,
            f.torsion
                .iter()
                .map(|t| alloc::format!("{}", t).parse().unwrap())
                .collect(),
        )
    }

    #[test]
    fn the_ring_is_dualizing() {
        let report = verify_dualizing(&unit_complex(0));
        assert!(report.is_dualizing);
        assert!(report.identity_class_generates);
        assert_eq!(report.endo_cohomology.get(&0).unwrap().render(), "Z");
    }

    #[test]
    fn shifted_rings_are_dualizing() {
        for n in -3..=3 {
            assert!(verify_dualizing(&unit_complex(n)).is_dualizing, "degree {}", n);
        }
    }

    #[test]
    fn torsion_is_not_dualizing() {
        let report = verify_dualizing(&z_mod(2));
        assert!(!report.is_dualizing);
        // End_D(Z/2) ≅ Z/2 sits in H^0
        assert_eq!(report.endo_cohomology.get(&0).unwrap().render(), "Z/2");
    }

    #[test]
    fn dual_of_free_and_torsion_modules() {
        let d = Dualizer::new(&unit_complex(0)).unwrap();
        // dual(Z^3[0]) has H^0 ≅ Z^3 and nothing else
        let free3 = FpComplex::single(0, FpModule::<Integer>::free(3));
        let dual = d.dual(&free3);
        assert_eq!(nf(&dual.cohomology(0)), (3, alloc::vec![]));
        assert!(dual.cohomology(1).is_zero_module());

        // dual(Z/6[0]) has H^1 ≅ Z/6 and nothing else
        let dual = d.dual(&z_mod(6));
        assert!(dual.cohomology(0).is_zero_module());
        assert_eq!(nf(&dual.cohomology(1)), (0, alloc::vec![6]));

        // dual of the zero complex is zero
        assert!(d.dual(&FpComplex::zero()).is_zero_complex());
    }

    #[test]
    fn biduality_on_the_unit_is_the_identity_matrix() {
        let d = Dualizer::new(&unit_complex(0)).unwrap();
        let b = d.biduality(&unit_complex(0));
        assert!(b.is_quasi_iso);
        assert!(b.is_chain_iso);
        assert_eq!(b.theta.comp(0), MZ::from_i64(1, 1, &[1]));
    }

    #[test]
    fn biduality_on_a_mixed_module() {
        let d = Dualizer::new(&unit_complex(0)).unwrap();
        let m = FpComplex::single(
            0,
            FpModule::free(1).direct_sum(&FpModule::cyclic(Integer::from_i64(6))),
        );
        let b = d.biduality(&m);
        assert!(b.is_quasi_iso);
        assert_eq!(nf(&b.dual.cohomology(0)), (1, alloc::vec![]));
        assert_eq!(nf(&b.dual.cohomology(1)), (0, alloc::vec![6]));
        assert_eq!(nf(&b.double_dual.cohomology(0)), (1, alloc::vec![6]));
        assert!(b.double_dual.cohomology(1).is_zero_module());
    }

    #[test]
    fn classification_by_shift() {
        // Z[0] against Z[3]: Z[3] sits in degree -3
        assert_eq!(classify_dualizing(&unit_complex(0), &unit_complex(-3)).unwrap(), 3);
        assert_eq!(classify_dualizing(&unit_complex(0), &unit_complex(0)).unwrap(), 0);

        // over Qt, with a shift in the other direction
        let b = FpComplex::single(0, FpModule::<RatPoly>::free(1));
        let b_shift = FpComplex::single(2, FpModule::<RatPoly>::free(1));
        assert_eq!(classify_dualizing(&b, &b_shift).unwrap(), -2);

        // a torsion candidate is rejected with a report
        match classify_dualizing(&unit_complex(0), &z_mod(2)) {
            Err(DualityError::SecondNotDualizing(report)) => assert!(!report.is_dualizing),
            other => panic!("expected a rejection, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn polynomial_point_module_against_shifted_line() {
        // B1 = Qt with dualizing complex B1[1]; C = Qt/(t). The dual of C is
        // concentrated in degree 0 with value C.
        let r = FpComplex::single(-1, FpModule::<RatPoly>::free(1));
        let d = Dualizer::new(&r).unwrap();
        let t = RatPoly::var();
        let c = FpComplex::single(0, FpModule::cyclic(t.clone()));
        let dual = d.dual(&c);
        let h0 = dual.cohomology(0).normal_form();
        assert_eq!(h0.free_rank, 0);
        assert_eq!(h0.torsion, alloc::vec![t]);
        for i in [-2, -1, 1, 2] {
            assert!(dual.cohomology(i).is_zero_module(), "degree {}", i);
        }
    }
}
