//! Mechanical checks of the triangulated-structure facts, shared by the test
//! suites and the `axioms-check` command: contractibility of the cone of an
//! identity, exactness of the long cohomology sequence of a standard
//! triangle, the triangle turning certificates, and the correspondence
//! between zero cocycles of the Hom complex and chain maps.

use alloc::vec::Vec;

use crate::complex::{
    chain_map_to_cocycle, cocycle_to_chain_map, hom_complex, turn_triangle, ChainMap, FreeComplex,
};
use crate::fpmod::ModuleMap;
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;
use crate::snf::{kernel_basis, solve};

/// The cone of the identity is null-homotopic (hence acyclic), with the
/// homotopy produced by the solver and verified degreewise.
pub fn cone_of_identity_contracts<R: EuclideanDomain>(x: &FreeComplex<R>) -> bool {
    let cone = ChainMap::identity(x).cone();
    if !cone.complex.is_acyclic() {
        return false;
    }
    let id = ChainMap::identity(&cone.complex);
    match id.null_homotopy() {
        Some(theta) => theta.witnesses(&id),
        None => false,
    }
}

/// Exactness of `incoming` then `outgoing` at the middle object: the
/// composite vanishes and the kernel of `outgoing` factors through the image
/// of `incoming`.
fn exact_at<R: EuclideanDomain>(incoming: &ModuleMap<R>, outgoing: &ModuleMap<R>) -> bool {
    if !outgoing.compose(incoming).is_zero_map() {
        return false;
    }
    let (_, kernel_incl) = outgoing.kernel();
    incoming.factors_image(kernel_incl.matrix())
}

/// The long cohomology sequence of the standard triangle of `α` is exact at
/// every position in every degree.
pub fn long_exact_sequence_holds<R: EuclideanDomain>(alpha: &ChainMap<R>) -> bool {
    let cone = alpha.cone();
    let shifted_alpha = alpha.shift(1);
    let lo = [
        alpha.source().min_degree(),
        alpha.target().min_degree(),
        cone.complex.min_degree(),
    ]
    .into_iter()
    .flatten()
    .min();
    let hi = [
        alpha.source().max_degree(),
        alpha.target().max_degree(),
        cone.complex.max_degree(),
    ]
    .into_iter()
    .flatten()
    .max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return true;
    };
    for i in lo - 1..=hi + 1 {
        let a = alpha.induced_cohomology_map(i);
        let b = cone.incl.induced_cohomology_map(i);
        let c = cone.proj.induced_cohomology_map(i);
        let a_next = shifted_alpha.induced_cohomology_map(i);
        if !exact_at(&a, &b) || !exact_at(&b, &c) || !exact_at(&c, &a_next) {
            return false;
        }
    }
    true
}

/// The turning certificates of the standard triangle of `α` hold exactly.
pub fn turning_certificates_hold<R: EuclideanDomain>(alpha: &ChainMap<R>) -> bool {
    turn_triangle(alpha).verify()
}

/// Zero cocycles of the Hom complex are exactly the chain maps: every basis
/// cocycle reassembles into a valid chain map and round-trips, a sampled
/// combination round-trips, and a non-cocycle vector is rejected whenever one
/// exists.
pub fn cocycle_chain_map_correspondence<R: EuclideanDomain>(
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
) -> bool {
    let hom = hom_complex(m, n);
    let basis = kernel_basis(&hom.diff(0));
    let mut combo = Matrix::zero(hom.rank(0), 1);
    for j in 0..basis.cols() {
        let col = Matrix::from_columns(basis.rows(), &[basis.column(j)]);
        let Ok(map) = cocycle_to_chain_map(m, n, &col) else {
            return false;
        };
        if chain_map_to_cocycle(&map) != col {
            return false;
        }
        combo = &combo + &col;
    }
    if basis.cols() > 0 {
        let Ok(map) = cocycle_to_chain_map(m, n, &combo) else {
            return false;
        };
        if solve(&basis, &chain_map_to_cocycle(&map)).is_none() {
            return false;
        }
    }
    // a standard basis vector outside the cocycle lattice must be rejected
    for j in 0..hom.rank(0) {
        let mut v = Matrix::zero(hom.rank(0), 1);
        v.set(j, 0, R::one());
        if solve(&basis, &v).is_none() {
            return cocycle_to_chain_map(m, n, &v).is_err();
        }
    }
    true
}

/// All four suites on one input pair.
pub fn all_axiom_checks<R: EuclideanDomain>(
    alpha: &ChainMap<R>,
    hom_pair: (&FreeComplex<R>, &FreeComplex<R>),
) -> Vec<(&'static str, bool)> {
    alloc::vec![
        ("cone-of-identity", cone_of_identity_contracts(alpha.source())),
        ("long-exact-sequence", long_exact_sequence_holds(alpha)),
        ("turning", turning_certificates_hold(alpha)),
        (
            "cocycle-bijection",
            cocycle_chain_map_correspondence(hom_pair.0, hom_pair.1),
        ),
    ]
}
