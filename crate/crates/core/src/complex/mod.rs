//! Bounded cochain complexes of finite rank free modules.
//!
//! A complex stores its nonzero ranks and the differentials `d^i : X^i ->
//! X^{i+1}` as matrices; `d^{i+1} * d^i = 0` is enforced at construction.
//! Degrees outside the stored support are rank zero. Sign conventions are
//! fixed once and for all:
//!
//! * shift: `X[k]^i = X^{i+k}` with differential `(-1)^k d`;
//! * cone of `α : L -> M`: degree `i` is `L^{i+1} ⊕ M^i` with differential
//!   `[-d_L, 0; α, d_M]`;
//! * Hom complex: `d(φ) = d_N ∘ φ - (-1)^i φ ∘ d_M` for `φ` of degree `i`;
//! * tensor complex: `d(x ⊗ y) = d x ⊗ y + (-1)^p x ⊗ d y` for `x` of
//!   degree `p`.

mod total;

pub use total::{
    chain_map_to_cocycle, cocycle_to_chain_map, hom_complex, hom_element_components,
    hom_components_to_element, homotopy_from_element, tensor_associativity_iso, tensor_complex,
    tensor_layout, HomLayout,
};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::fpmod::FpModule;
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;
use crate::snf::{kernel_basis, solve};
use crate::Degree;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential at degree {degree} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        degree: Degree,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("d∘d ≠ 0 at degree {degree}")]
    CompositeNonzero { degree: Degree },
    #[error("chain map component at degree {degree} does not commute with the differentials")]
    NotChainMap { degree: Degree },
}

/// A bounded cochain complex of finite rank free modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex<R: EuclideanDomain> {
    ranks: BTreeMap<Degree, usize>,
    diffs: BTreeMap<Degree, Matrix<R>>,
}

impl<R: EuclideanDomain> FreeComplex<R> {
    /// Validate shapes and `d∘d = 0`, then normalize: zero ranks are dropped
    /// and a differential is stored exactly when both adjacent ranks are
    /// nonzero.
    pub fn try_new(
        ranks: BTreeMap<Degree, usize>,
        diffs: BTreeMap<Degree, Matrix<R>>,
    ) -> Result<Self, ComplexError> {
        let ranks: BTreeMap<Degree, usize> =
            ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank_of = |i: Degree| ranks.get(&i).copied().unwrap_or(0);
        let mut kept: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (i, d) in diffs {
            let (want_rows, want_cols) = (rank_of(i + 1), rank_of(i));
            if d.rows() != want_rows || d.cols() != want_cols {
                // tolerate a zero matrix of the wrong (degenerate) shape
                if d.is_zero() && (want_rows == 0 || want_cols == 0) {
                    continue;
                }
                return Err(ComplexError::ShapeMismatch {
                    degree: i,
                    got_rows: d.rows(),
                    got_cols: d.cols(),
                    want_rows,
                    want_cols,
                });
            }
            if want_rows > 0 && want_cols > 0 {
                kept.insert(i, d);
            }
        }
        for &i in ranks.keys() {
            if rank_of(i) > 0 && rank_of(i + 1) > 0 && !kept.contains_key(&i) {
                kept.insert(i, Matrix::zero(rank_of(i + 1), rank_of(i)));
            }
        }
        let c = FreeComplex { ranks, diffs: kept };
        for &i in c.ranks.keys() {
            let dd = &c.diff(i + 1) * &c.diff(i);
            if !dd.is_zero() {
                return Err(ComplexError::CompositeNonzero { degree: i });
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        FreeComplex {
            ranks: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// Free module of the given rank concentrated in one degree.
    pub fn single(degree: Degree, rank: usize) -> Self {
        let mut ranks = BTreeMap::new();
        if rank > 0 {
            ranks.insert(degree, rank);
        }
        FreeComplex {
            ranks,
            diffs: BTreeMap::new(),
        }
    }

    /// Two term complex `[R^a -f-> R^b]` in degrees `(degree, degree + 1)`.
    pub fn two_term(degree: Degree, f: Matrix<R>) -> Self {
        let mut ranks = BTreeMap::new();
        ranks.insert(degree, f.cols());
        ranks.insert(degree + 1, f.rows());
        let mut diffs = BTreeMap::new();
        diffs.insert(degree, f);
        Self::try_new(ranks, diffs).expect("a single map is a complex")
    }

    pub fn rank(&self, i: Degree) -> usize {
        self.ranks.get(&i).copied().unwrap_or(0)
    }

    /// The differential leaving degree `i`, materialized with the right shape.
    pub fn diff(&self, i: Degree) -> Matrix<R> {
        match self.diffs.get(&i) {
            Some(d) => d.clone(),
            None => Matrix::zero(self.rank(i + 1), self.rank(i)),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (Degree, usize)> + '_ {
        self.ranks.iter().map(|(&i, &r)| (i, r))
    }

    pub fn min_degree(&self) -> Option<Degree> {
        self.ranks.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.ranks.keys().next_back().copied()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// `X[k]`: degree `i` of the shift is `X^{i+k}`, differential `(-1)^k d`.
    pub fn shift(&self, k: Degree) -> Self {
        let ranks = self.ranks.iter().map(|(&i, &r)| (i - k, r)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&i, d)| {
                let m = if k.rem_euclid(2) == 1 { d.neg_matrix() } else { d.clone() };
                (i - k, m)
            })
            .collect();
        FreeComplex { ranks, diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut ranks = BTreeMap::new();
        let lo = match (self.min_degree(), other.min_degree()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Self::zero(),
        };
        let hi = self.max_degree().unwrap_or(lo).max(other.max_degree().unwrap_or(lo));
        let mut diffs = BTreeMap::new();
        for i in lo..=hi {
            let r = self.rank(i) + other.rank(i);
            if r > 0 {
                ranks.insert(i, r);
            }
            let d = Matrix::from_blocks(
                &[self.rank(i + 1), other.rank(i + 1)],
                &[self.rank(i), other.rank(i)],
                &[(0, 0, &self.diff(i)), (1, 1, &other.diff(i))],
            );
            diffs.insert(i, d);
        }
        Self::try_new(ranks, diffs).expect("direct sum of complexes is a complex")
    }

    /// Brutal truncation to the window `lo..=hi`; no exactness claims.
    pub fn stupid_truncate(&self, lo: Degree, hi: Degree) -> Self {
        let ranks = self
            .ranks
            .iter()
            .filter(|(&i, _)| lo <= i && i <= hi)
            .map(|(&i, &r)| (i, r))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .filter(|(&i, _)| lo <= i && i < hi)
            .map(|(&i, d)| (i, d.clone()))
            .collect();
        Self::try_new(ranks, diffs).expect("stupid truncation is a complex")
    }

    /// Smart truncation `smt^{<=i}`: replace degree `i` by the cocycles
    /// `Z^i = ker(d^i)` (free, with basis from the Smith normal form) and drop
    /// everything above. Returns the truncated complex and the inclusion into
    /// `self`, which is a quasi-isomorphism in degrees `<= i` whenever the
    /// dropped degrees were acyclic.
    pub fn smart_truncate_le(&self, i: Degree) -> (Self, ChainMap<R>) {
        let z = kernel_basis(&self.diff(i));
        let mut ranks: BTreeMap<Degree, usize> = self
            .ranks
            .iter()
            .filter(|(&j, _)| j < i)
            .map(|(&j, &r)| (j, r))
            .collect();
        if z.cols() > 0 {
            ranks.insert(i, z.cols());
        }
        let mut diffs: BTreeMap<Degree, Matrix<R>> = self
            .diffs
            .iter()
            .filter(|(&j, _)| j + 1 < i)
            .map(|(&j, d)| (j, d.clone()))
            .collect();
        let into_z = solve(&z, &self.diff(i - 1))
            .expect("image of the previous differential lies in the cocycles");
        diffs.insert(i - 1, into_z);
        let truncated = Self::try_new(ranks, diffs).expect("smart truncation is a complex");
        let mut comps: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (&j, &r) in &truncated.ranks {
            if j < i {
                comps.insert(j, Matrix::identity(r));
            }
        }
        comps.insert(i, z);
        let incl = ChainMap::try_new(truncated.clone(), self.clone(), comps)
            .expect("smart truncation inclusion is a chain map");
        (truncated, incl)
    }

    /// Cocycle basis, cohomology presentation, and the expression of the
    /// coboundaries in that basis at degree `i`.
    pub fn cohomology_data(&self, i: Degree) -> CohomologyData<R> {
        let cocycles = kernel_basis(&self.diff(i));
        let boundaries_in_basis = solve(&cocycles, &self.diff(i - 1))
            .expect("coboundaries are cocycles since d∘d = 0");
        CohomologyData {
            module: FpModule::new(cocycles.cols(), boundaries_in_basis.clone()),
            cocycles,
            boundaries_in_basis,
        }
    }

    /// `H^i = Z^i / B^i` as a finitely presented module.
    pub fn cohomology(&self, i: Degree) -> FpModule<R> {
        self.cohomology_data(i).module
    }

    /// All cohomology modules over the support range.
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

/// Cocycle basis and boundary data underlying one cohomology module.
#[derive(Debug, Clone)]
pub struct CohomologyData<R: EuclideanDomain> {
    /// Columns form a basis of `Z^i` inside `X^i`.
    pub cocycles: Matrix<R>,
    /// The columns of `d^{i-1}` expressed in the cocycle basis.
    pub boundaries_in_basis: Matrix<R>,
    /// `Z^i / B^i` presented on the cocycle basis.
    pub module: FpModule<R>,
}

impl<R: EuclideanDomain> CohomologyData<R> {
    /// Coordinates of a cocycle in the basis; `None` when `x` is not a
    /// cocycle.
    pub fn express(&self, x: &Matrix<R>) -> Option<Matrix<R>> {
        solve(&self.cocycles, x)
    }
}

/// A degreewise map of free complexes commuting with the differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap<R: EuclideanDomain> {
    source: FreeComplex<R>,
    target: FreeComplex<R>,
    comps: BTreeMap<Degree, Matrix<R>>,
}

impl<R: EuclideanDomain> ChainMap<R> {
    pub fn try_new(
        source: FreeComplex<R>,
        target: FreeComplex<R>,
        comps: BTreeMap<Degree, Matrix<R>>,
    ) -> Result<Self, ComplexError> {
        let mut kept: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (i, m) in comps {
            let (want_rows, want_cols) = (target.rank(i), source.rank(i));
            if m.rows() != want_rows || m.cols() != want_cols {
                if m.is_zero() && (want_rows == 0 || want_cols == 0) {
                    continue;
                }
                return Err(ComplexError::ShapeMismatch {
                    degree: i,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
            if want_rows > 0 && want_cols > 0 {
                kept.insert(i, m);
            }
        }
        for (&i, &r) in &source.ranks {
            if r > 0 && target.rank(i) > 0 && !kept.contains_key(&i) {
                kept.insert(i, Matrix::zero(target.rank(i), r));
            }
        }
        let map = ChainMap {
            source,
            target,
            comps: kept,
        };
        let lo = map.source.min_degree().into_iter().chain(map.target.min_degree()).min();
        let hi = map.source.max_degree().into_iter().chain(map.target.max_degree()).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            for i in lo..=hi {
                let lhs = &map.target.diff(i) * &map.comp(i);
                let rhs = &map.comp(i + 1) * &map.source.diff(i);
                if lhs != rhs {
                    return Err(ComplexError::NotChainMap { degree: i });
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: &FreeComplex<R>) -> Self {
        let comps = x.ranks.iter().map(|(&i, &r)| (i, Matrix::identity(r))).collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            comps,
        }
    }

    pub fn zero(source: &FreeComplex<R>, target: &FreeComplex<R>) -> Self {
        ChainMap::try_new(source.clone(), target.clone(), BTreeMap::new())
            .expect("zero map is a chain map")
    }

    pub fn source(&self) -> &FreeComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex<R> {
        &self.target
    }

    pub fn comp(&self, i: Degree) -> Matrix<R> {
        match self.comps.get(&i) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.target.rank(i), self.source.rank(i)),
        }
    }

    pub fn components(&self) -> &BTreeMap<Degree, Matrix<R>> {
        &self.comps
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.source, other.target, "chain map composition endpoint mismatch");
        let mut comps = BTreeMap::new();
        for &i in other.source.ranks.keys() {
            comps.insert(i, &self.comp(i) * &other.comp(i));
        }
        ChainMap::try_new(other.source.clone(), self.target.clone(), comps)
            .expect("composition of chain maps is a chain map")
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let mut comps = BTreeMap::new();
        for &i in self.source.ranks.keys() {
            comps.insert(i, &self.comp(i) + &other.comp(i));
        }
        ChainMap::try_new(self.source.clone(), self.target.clone(), comps)
            .expect("sum of chain maps is a chain map")
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let mut comps = BTreeMap::new();
        for &i in self.source.ranks.keys() {
            comps.insert(i, &self.comp(i) - &other.comp(i));
        }
        ChainMap::try_new(self.source.clone(), self.target.clone(), comps)
            .expect("difference of chain maps is a chain map")
    }

    pub fn negate(&self) -> Self {
        let comps = self.comps.iter().map(|(&i, m)| (i, m.neg_matrix())).collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn shift(&self, k: Degree) -> Self {
        let comps = self.comps.iter().map(|(&i, m)| (i - k, m.clone())).collect();
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps,
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.values().all(Matrix::is_zero)
    }

    /// The mapping cone with its standard triangle maps.
    pub fn cone(&self) -> Cone<R> {
        let l = &self.source;
        let m = &self.target;
        let lo = match (l.min_degree(), m.min_degree()) {
            (Some(a), Some(b)) => (a - 1).min(b),
            (Some(a), None) => a - 1,
            (None, Some(b)) => b,
            (None, None) => {
                let zero = FreeComplex::zero();
                return Cone {
                    complex: zero.clone(),
                    incl: ChainMap::zero(&zero, &zero),
                    proj: ChainMap::zero(&zero, &zero),
                };
            }
        };
        let hi = l.max_degree().map(|d| d - 1).unwrap_or(lo).max(m.max_degree().unwrap_or(lo));
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for i in lo..=hi {
            let r = l.rank(i + 1) + m.rank(i);
            if r > 0 {
                ranks.insert(i, r);
            }
            let d = Matrix::from_blocks(
                &[l.rank(i + 2), m.rank(i + 1)],
                &[l.rank(i + 1), m.rank(i)],
                &[
                    (0, 0, &l.diff(i + 1).neg_matrix()),
                    (1, 0, &self.comp(i + 1)),
                    (1, 1, &m.diff(i)),
                ],
            );
            diffs.insert(i, d);
        }
        let complex = FreeComplex::try_new(ranks, diffs).expect("mapping cone is a complex");

        let mut incl_comps = BTreeMap::new();
        let mut proj_comps = BTreeMap::new();
        for i in lo..=hi {
            let incl_i = Matrix::from_blocks(
                &[l.rank(i + 1), m.rank(i)],
                &[m.rank(i)],
                &[(1, 0, &Matrix::identity(m.rank(i)))],
            );
            incl_comps.insert(i, incl_i);
            let proj_i = Matrix::from_blocks(
                &[l.rank(i + 1)],
                &[l.rank(i + 1), m.rank(i)],
                &[(0, 0, &Matrix::identity(l.rank(i + 1)))],
            );
            proj_comps.insert(i, proj_i);
        }
        let incl = ChainMap::try_new(m.clone(), complex.clone(), incl_comps)
            .expect("cone inclusion is a chain map");
        let proj = ChainMap::try_new(complex.clone(), l.shift(1), proj_comps)
            .expect("cone projection is a chain map");
        Cone {
            complex,
            incl,
            proj,
        }
    }

    /// Search for a homotopy `θ` with `φ = d_N ∘ θ + θ ∘ d_M`, as one linear
    /// system over the ring.
    pub fn null_homotopy(&self) -> Option<Homotopy<R>> {
        let s = &self.source;
        let t = &self.target;

        // Unknown blocks θ^i : M^i -> N^{i-1}, flattened column by column.
        let mut unknowns: Vec<(Degree, usize)> = Vec::new();
        for (&i, &r) in &s.ranks {
            let size = r * t.rank(i - 1);
            if size > 0 {
                unknowns.push((i, size));
            }
        }
        // Equation blocks at every degree where both ends are nonzero.
        let mut equations: Vec<(Degree, usize)> = Vec::new();
        for (&i, &r) in &s.ranks {
            let size = r * t.rank(i);
            if size > 0 {
                equations.push((i, size));
            }
        }
        if equations.is_empty() {
            return Some(Homotopy {
                comps: BTreeMap::new(),
            });
        }

        let row_sizes: Vec<usize> = equations.iter().map(|&(_, s)| s).collect();
        let col_sizes: Vec<usize> = unknowns.iter().map(|&(_, s)| s).collect();
        let col_index: BTreeMap<Degree, usize> = unknowns
            .iter()
            .enumerate()
            .map(|(idx, &(i, _))| (i, idx))
            .collect();

        let mut blocks: Vec<(usize, usize, Matrix<R>)> = Vec::new();
        let mut rhs_parts: Vec<Matrix<R>> = Vec::new();
        for (row_idx, &(i, _)) in equations.iter().enumerate() {
            rhs_parts.push(self.comp(i).vectorize_columns());
            if let Some(&c) = col_index.get(&i) {
                // d_N^{i-1} ∘ θ^i
                blocks.push((
                    row_idx,
                    c,
                    Matrix::identity(s.rank(i)).kronecker(&t.diff(i - 1)),
                ));
            }
            if let Some(&c) = col_index.get(&(i + 1)) {
                // θ^{i+1} ∘ d_M^i
                blocks.push((
                    row_idx,
                    c,
                    s.diff(i).transpose().kronecker(&Matrix::identity(t.rank(i))),
                ));
            }
        }
        let refs: Vec<(usize, usize, &Matrix<R>)> =
            blocks.iter().map(|&(r, c, ref m)| (r, c, m)).collect();
        let system = Matrix::from_blocks(&row_sizes, &col_sizes, &refs);
        let rhs_refs: Vec<&Matrix<R>> = rhs_parts.iter().collect();
        let rhs = Matrix::vconcat(&rhs_refs);

        let sol = solve(&system, &rhs)?;
        let mut comps = BTreeMap::new();
        let mut off = 0;
        for &(i, size) in &unknowns {
            let seg = sol.row_slice(off, off + size);
            off += size;
            comps.insert(i, Matrix::from_column_vector(t.rank(i - 1), s.rank(i), &seg));
        }
        Some(Homotopy { comps })
    }

    /// Quasi-isomorphism test via acyclicity of the mapping cone.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().complex.is_acyclic()
    }

    /// The map induced on `H^i`.
    pub fn induced_cohomology_map(&self, i: Degree) -> crate::fpmod::ModuleMap<R> {
        let src = self.source.cohomology_data(i);
        let tgt = self.target.cohomology_data(i);
        let image = &self.comp(i) * &src.cocycles;
        let w = solve(&tgt.cocycles, &image)
            .expect("a chain map sends cocycles to cocycles");
        crate::fpmod::ModuleMap::new(src.module, tgt.module, w)
            .expect("induced map on cohomology is well-defined")
    }

    /// Degreewise isomorphism of complexes (not merely a quasi-isomorphism).
    pub fn is_degreewise_iso(&self) -> bool {
        let degrees: Vec<Degree> = self
            .source
            .ranks
            .keys()
            .chain(self.target.ranks.keys())
            .copied()
            .collect();
        degrees
            .into_iter()
            .all(|i| crate::snf::is_unimodular(&self.comp(i)))
    }
}

/// Mapping cone of `α : L -> M` together with the other two maps of the
/// standard triangle `L -> M -> cone -> L[1]`.
#[derive(Debug, Clone)]
pub struct Cone<R: EuclideanDomain> {
    pub complex: FreeComplex<R>,
    /// `M -> cone`, the block inclusion `[0; 1]`.
    pub incl: ChainMap<R>,
    /// `cone -> L[1]`, the block projection `[1, 0]`.
    pub proj: ChainMap<R>,
}

/// A degree `-1` family of maps `θ^i : X^i -> Y^{i-1}`.
#[derive(Debug, Clone)]
pub struct Homotopy<R: EuclideanDomain> {
    comps: BTreeMap<Degree, Matrix<R>>,
}

impl<R: EuclideanDomain> Homotopy<R> {
    pub fn new(comps: BTreeMap<Degree, Matrix<R>>) -> Self {
        Homotopy { comps }
    }

    pub fn zero() -> Self {
        Homotopy {
            comps: BTreeMap::new(),
        }
    }

    pub fn comp(&self, i: Degree, source: &FreeComplex<R>, target: &FreeComplex<R>) -> Matrix<R> {
        match self.comps.get(&i) {
            Some(m) => m.clone(),
            None => Matrix::zero(target.rank(i - 1), source.rank(i)),
        }
    }

    pub fn components(&self) -> &BTreeMap<Degree, Matrix<R>> {
        &self.comps
    }

    /// Does `φ = d_Y ∘ θ + θ ∘ d_X` hold in every degree?
    pub fn witnesses(&self, map: &ChainMap<R>) -> bool {
        let x = map.source();
        let y = map.target();
        let lo = x.min_degree().into_iter().chain(y.min_degree()).min();
        let hi = x.max_degree().into_iter().chain(y.max_degree()).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return true;
        };
        for i in lo..=hi {
            let dh = &y.diff(i - 1) * &self.comp(i, x, y);
            let hd = &self.comp(i + 1, x, y) * &x.diff(i);
            if &dh + &hd != map.comp(i) {
                return false;
            }
        }
        true
    }
}

/// Triangle turning data: the standard triangle of `β = cone-inclusion(α)`
/// compared against `L[1]`, with the explicit inverse pair `(ρ, χ)` and the
/// homotopy witnessing `ρ ∘ χ ≃ 1`.
#[derive(Debug, Clone)]
pub struct Turn<R: EuclideanDomain> {
    pub alpha: ChainMap<R>,
    pub cone_alpha: Cone<R>,
    pub cone_beta: Cone<R>,
    /// `L[1] -> P`, components `[-α; 1; 0]`.
    pub rho: ChainMap<R>,
    /// `P -> L[1]`, components `[0, 1, 0]`.
    pub chi: ChainMap<R>,
    /// Homotopy with `1_P - ρ∘χ = d∘θ + θ∘d`.
    pub homotopy: Homotopy<R>,
}

/// Turn the standard triangle of `α : L -> M`: exhibit `P = cone(β)` as
/// homotopy equivalent to `L[1]` via explicit one-sided-inverse data.
pub fn turn_triangle<R: EuclideanDomain>(alpha: &ChainMap<R>) -> Turn<R> {
    let l = alpha.source().clone();
    let m = alpha.target().clone();
    let cone_alpha = alpha.cone();
    let cone_beta = cone_alpha.incl.cone();
    let p = &cone_beta.complex;
    let l1 = l.shift(1);

    // P^i = M^{i+1} ⊕ L^{i+1} ⊕ M^i
    let mut rho_comps = BTreeMap::new();
    let mut chi_comps = BTreeMap::new();
    let mut theta_comps = BTreeMap::new();
    let degrees: Vec<Degree> = p
        .support()
        .map(|(i, _)| i)
        .chain(l1.support().map(|(i, _)| i))
        .collect();
    for &i in &degrees {
        let parts = [m.rank(i + 1), l.rank(i + 1), m.rank(i)];
        let rho_i = Matrix::from_blocks(
            &parts,
            &[l.rank(i + 1)],
            &[
                (0, 0, &alpha.comp(i + 1).neg_matrix()),
                (1, 0, &Matrix::identity(l.rank(i + 1))),
            ],
        );
        rho_comps.insert(i, rho_i);
        let chi_i = Matrix::from_blocks(
            &[l.rank(i + 1)],
            &parts,
            &[(0, 1, &Matrix::identity(l.rank(i + 1)))],
        );
        chi_comps.insert(i, chi_i);
        // θ^i : P^i -> P^{i-1} hits the M^i summands
        let prev_parts = [m.rank(i), l.rank(i), m.rank(i - 1)];
        let theta_i = Matrix::from_blocks(
            &prev_parts,
            &parts,
            &[(0, 2, &Matrix::identity(m.rank(i)))],
        );
        theta_comps.insert(i, theta_i);
    }
    let rho = ChainMap::try_new(l1.clone(), p.clone(), rho_comps)
        .expect("turning map into the double cone is a chain map");
    let chi = ChainMap::try_new(p.clone(), l1, chi_comps)
        .expect("turning map out of the double cone is a chain map");
    Turn {
        alpha: alpha.clone(),
        cone_alpha,
        cone_beta,
        rho,
        chi,
        homotopy: Homotopy::new(theta_comps),
    }
}

impl<R: EuclideanDomain> Turn<R> {
    /// Check the four turning certificates exactly:
    /// `χ∘ρ = 1`, `1 - ρ∘χ = dθ + θd`, `χ∘φ = γ`, and `ψ∘ρ = -α[1]`.
    pub fn verify(&self) -> bool {
        let l1 = self.rho.source();
        let chi_rho = self.chi.compose(&self.rho);
        if chi_rho != ChainMap::identity(l1) {
            return false;
        }
        let p = &self.cone_beta.complex;
        let defect = ChainMap::identity(p).sub(&self.rho.compose(&self.chi));
        if !self.homotopy.witnesses(&defect) {
            return false;
        }
        // χ ∘ φ = γ, where φ is the inclusion N -> P
        if self.chi.compose(&self.cone_beta.incl) != self.cone_alpha.proj {
            return false;
        }
        // ψ ∘ ρ = -α[1], where ψ is the projection P -> M[1]
        if self.cone_beta.proj.compose(&self.rho) != self.alpha.shift(1).negate() {
            return false;
        }
        true
    }
}

#[cfg(test)]
mod tests;
