//! Bounded complexes of finitely presented modules.
//!
//! Differentials are generator matrices, certified well-defined at
//! construction, with composites vanishing modulo relations. These complexes
//! are the inputs to free resolution; cohomology and induced maps are
//! computed directly on presentations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::FreeComplex;
use crate::fpmod::{FpModule, ModuleMap};
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;
use crate::snf::{preimage_kernel_basis, solve, solve_mod};
use crate::Degree;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FpComplexError {
    #[error("differential at degree {degree} has the wrong shape")]
    ShapeMismatch { degree: Degree },
    #[error("differential at degree {degree} does not preserve relations")]
    IllDefined { degree: Degree },
    #[error("d∘d ≠ 0 modulo relations at degree {degree}")]
    CompositeNonzero { degree: Degree },
    #[error("chain map component at degree {degree} does not preserve relations")]
    MapIllDefined { degree: Degree },
    #[error("chain map square at degree {degree} does not commute modulo relations")]
    NotChainMap { degree: Degree },
}

/// A bounded cochain complex of finitely presented modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpComplex<R: EuclideanDomain> {
    terms: BTreeMap<Degree, FpModule<R>>,
    diffs: BTreeMap<Degree, Matrix<R>>,
}

impl<R: EuclideanDomain> FpComplex<R> {
    pub fn try_new(
        terms: BTreeMap<Degree, FpModule<R>>,
        diffs: BTreeMap<Degree, Matrix<R>>,
    ) -> Result<Self, FpComplexError> {
        let terms: BTreeMap<Degree, FpModule<R>> = terms
            .into_iter()
            .filter(|(_, m)| m.gens() > 0)
            .collect();
        let term_of = |i: Degree| -> FpModule<R> {
            terms.get(&i).cloned().unwrap_or_else(FpModule::zero)
        };
        let mut kept: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (i, d) in diffs {
            let (src, tgt) = (term_of(i), term_of(i + 1));
            if d.rows() != tgt.gens() || d.cols() != src.gens() {
                if d.is_zero() && (tgt.gens() == 0 || src.gens() == 0) {
                    continue;
                }
                return Err(FpComplexError::ShapeMismatch { degree: i });
            }
            if src.gens() > 0 && tgt.gens() > 0 {
                kept.insert(i, d);
            }
        }
        for (&i, m) in &terms {
            if m.gens() > 0 && term_of(i + 1).gens() > 0 && !kept.contains_key(&i) {
                kept.insert(i, Matrix::zero(term_of(i + 1).gens(), m.gens()));
            }
        }
        let c = FpComplex { terms, diffs: kept };
        for &i in c.terms.keys() {
            let src = c.term(i);
            let tgt = c.term(i + 1);
            if ModuleMap::new(src, tgt, c.diff(i)).is_err() {
                return Err(FpComplexError::IllDefined { degree: i });
            }
            let composite = &c.diff(i + 1) * &c.diff(i);
            if solve(c.term(i + 2).relations(), &composite).is_none() {
                return Err(FpComplexError::CompositeNonzero { degree: i });
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        FpComplex {
            terms: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// One module concentrated in a single degree.
    pub fn single(degree: Degree, m: FpModule<R>) -> Self {
        let mut terms = BTreeMap::new();
        if m.gens() > 0 {
            terms.insert(degree, m);
        }
        FpComplex {
            terms,
            diffs: BTreeMap::new(),
        }
    }

    pub fn from_free(x: &FreeComplex<R>) -> Self {
        let terms = x.support().map(|(i, r)| (i, FpModule::free(r))).collect();
        let mut diffs = BTreeMap::new();
        for (i, _) in x.support() {
            if x.rank(i) > 0 && x.rank(i + 1) > 0 {
                diffs.insert(i, x.diff(i));
            }
        }
        FpComplex { terms, diffs }
    }

    pub fn term(&self, i: Degree) -> FpModule<R> {
        self.terms.get(&i).cloned().unwrap_or_else(FpModule::zero)
    }

    pub fn diff(&self, i: Degree) -> Matrix<R> {
        match self.diffs.get(&i) {
            Some(d) => d.clone(),
            None => Matrix::zero(self.term(i + 1).gens(), self.term(i).gens()),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = Degree> + '_ {
        self.terms.keys().copied()
    }

    pub fn min_degree(&self) -> Option<Degree> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn shift(&self, k: Degree) -> Self {
        let terms = self.terms.iter().map(|(&i, m)| (i - k, m.clone())).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| {
                let m = if k.rem_euclid(2) == 1 { d.neg_matrix() } else { d.clone() };
                (i - k, m)
            })
            .collect();
        FpComplex { terms, diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let degrees: Vec<Degree> = self.support().chain(other.support()).collect();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &i in &degrees {
            terms.insert(i, self.term(i).direct_sum(&other.term(i)));
        }
        for &i in &degrees {
            let d = Matrix::from_blocks(
                &[self.term(i + 1).gens(), other.term(i + 1).gens()],
                &[self.term(i).gens(), other.term(i).gens()],
                &[(0, 0, &self.diff(i)), (1, 1, &other.diff(i))],
            );
            diffs.insert(i, d);
        }
        Self::try_new(terms, diffs).expect("direct sum of complexes is a complex")
    }

    /// Cocycle and boundary data at degree `i`.
    pub fn cohomology_data(&self, i: Degree) -> FpCohomologyData<R> {
        let term = self.term(i);
        // generators of {x : d x ∈ im(relations of the next term)}
        let cocycle_gens = preimage_kernel_basis(&self.diff(i), self.term(i + 1).relations());
        // boundaries and relations of the ambient term both die
        let killers = Matrix::hconcat(&[&self.diff(i - 1), term.relations()]);
        let rels = preimage_kernel_basis(&cocycle_gens, &killers);
        FpCohomologyData {
            module: FpModule::new(cocycle_gens.cols(), rels),
            cocycle_gens,
            killers,
        }
    }

    /// `H^i` as a finitely presented module.
    pub fn cohomology(&self, i: Degree) -> FpModule<R> {
        self.cohomology_data(i).module
    }

    pub fn cohomology_all(&self) -> BTreeMap<Degree, FpModule<R>> {
        let mut out = BTreeMap::new();
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return out;
        };
        for i in lo..=hi {
            out.insert(i, self.cohomology(i));
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.min_degree(), self.max_degree()) else {
            return true;
        };
        (lo..=hi).all(|i| self.cohomology(i).is_zero_module())
    }
}

/// Cocycle generators and the "killer" columns (boundaries and ambient
/// relations) presenting one cohomology module of an [`FpComplex`].
#[derive(Debug, Clone)]
pub struct FpCohomologyData<R: EuclideanDomain> {
    pub cocycle_gens: Matrix<R>,
    pub killers: Matrix<R>,
    pub module: FpModule<R>,
}

/// A degreewise map of complexes of finitely presented modules: each
/// component preserves relations and the squares commute modulo relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpChainMap<R: EuclideanDomain> {
    source: FpComplex<R>,
    target: FpComplex<R>,
    comps: BTreeMap<Degree, Matrix<R>>,
}

impl<R: EuclideanDomain> FpChainMap<R> {
    pub fn try_new(
        source: FpComplex<R>,
        target: FpComplex<R>,
        comps: BTreeMap<Degree, Matrix<R>>,
    ) -> Result<Self, FpComplexError> {
        let mut kept: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (i, m) in comps {
            let (want_rows, want_cols) = (target.term(i).gens(), source.term(i).gens());
            if m.rows() != want_rows || m.cols() != want_cols {
                if m.is_zero() && (want_rows == 0 || want_cols == 0) {
                    continue;
                }
                return Err(FpComplexError::ShapeMismatch { degree: i });
            }
            if want_rows > 0 && want_cols > 0 {
                kept.insert(i, m);
            }
        }
        for i in source.support() {
            if source.term(i).gens() > 0
                && target.term(i).gens() > 0
                && !kept.contains_key(&i)
            {
                kept.insert(
                    i,
                    Matrix::zero(target.term(i).gens(), source.term(i).gens()),
                );
            }
        }
        let map = FpChainMap {
            source,
            target,
            comps: kept,
        };
        let lo = map.source.min_degree().into_iter().chain(map.target.min_degree()).min();
        let hi = map.source.max_degree().into_iter().chain(map.target.max_degree()).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            for i in lo..=hi {
                if ModuleMap::new(map.source.term(i), map.target.term(i), map.comp(i)).is_err() {
                    return Err(FpComplexError::MapIllDefined { degree: i });
                }
                let square = &(&map.target.diff(i) * &map.comp(i))
                    - &(&map.comp(i + 1) * &map.source.diff(i));
                if solve(map.target.term(i + 1).relations(), &square).is_none() {
                    return Err(FpComplexError::NotChainMap { degree: i });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: &FpComplex<R>) -> Self {
        let comps = x
            .support()
            .map(|i| (i, Matrix::identity(x.term(i).gens())))
            .collect();
        FpChainMap {
            source: x.clone(),
            target: x.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &FpComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &FpComplex<R> {
        &self.target
    }

    pub fn comp(&self, i: Degree) -> Matrix<R> {
        match self.comps.get(&i) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.target.term(i).gens(), self.source.term(i).gens()),
        }
    }

    /// The map induced on `H^i`.
    pub fn induced_cohomology_map(&self, i: Degree) -> ModuleMap<R> {
        let src = self.source.cohomology_data(i);
        let tgt = self.target.cohomology_data(i);
        let image = &self.comp(i) * &src.cocycle_gens;
        let w = solve_mod(&tgt.cocycle_gens, &tgt.killers, &image)
            .expect("cocycles map to cocycles modulo boundaries and relations");
        ModuleMap::new(src.module, tgt.module, w)
            .expect("induced map on cohomology is well-defined")
    }

    /// Quasi-isomorphism test by degreewise isomorphism on cohomology.
    pub fn is_quasi_iso(&self) -> bool {
        let lo = self.source.min_degree().into_iter().chain(self.target.min_degree()).min();
        let hi = self.source.max_degree().into_iter().chain(self.target.max_degree()).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return true;
        };
        (lo..=hi).all(|i| self.induced_cohomology_map(i).is_iso())
    }
}

/// Smart truncation `smt^{>=i}` of a free complex: degree `i` becomes
/// `Y^i = coker(d^{i-1})` presented on the same generators, lower degrees are
/// dropped, and the projection from the original complex is returned. The
/// projection induces isomorphisms on `H^j` for `j >= i`.
pub fn smart_truncate_ge<R: EuclideanDomain>(
    x: &FreeComplex<R>,
    i: Degree,
) -> (FpComplex<R>, FpChainMap<R>) {
    let mut terms: BTreeMap<Degree, FpModule<R>> = BTreeMap::new();
    let mut diffs: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
    if x.rank(i) > 0 {
        terms.insert(i, FpModule::new(x.rank(i), x.diff(i - 1)));
    }
    for (j, r) in x.support() {
        if j > i {
            terms.insert(j, FpModule::free(r));
        }
        if j >= i {
            diffs.insert(j, x.diff(j));
        }
    }
    let truncated = FpComplex::try_new(terms, diffs).expect("smart truncation is a complex");
    let mut comps = BTreeMap::new();
    for (j, r) in x.support() {
        if j >= i {
            comps.insert(j, Matrix::identity(r));
        }
    }
    let proj = FpChainMap::try_new(FpComplex::from_free(x), truncated.clone(), comps)
        .expect("smart truncation projection is a chain map");
    (truncated, proj)
}
