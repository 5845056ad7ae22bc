//! Finitely presented modules over a Euclidean domain.
//!
//! A module is given by a generator count and a relation matrix whose
//! *columns* are the relations: the module is `R^gens / im(rels)`. Elements
//! are column vectors of ring elements in the generators, and a map of
//! modules is a matrix acting on those columns. All reasoning is matrix
//! level, so infinite modules are handled the same way as finite ones.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;
use crate::snf::{self, preimage_kernel_basis, snf, solve, solve_mod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpModule<R: EuclideanDomain> {
    gens: usize,
    rels: Matrix<R>, // gens x nrels, columns are relations
}

/// Canonical invariant factor form: free rank plus a divisibility chain of
/// unit-normalized non-unit torsion factors. Two finitely presented modules
/// are isomorphic exactly when these agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors<R: EuclideanDomain> {
    pub free_rank: usize,
    pub torsion: Vec<R>,
}

impl<R: EuclideanDomain> InvariantFactors<R> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        InvariantFactors {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Canonical rendering, e.g. `Z^2 + Z/2 + Z/4`, `Qt/(t^2 + 1)`, `0`.
    pub fn render(&self) -> String {
        let sym = R::KIND.symbol();
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(String::from(sym)),
            r => parts.push(format!("{}^{}", sym, r)),
        }
        for t in &self.torsion {
            match R::KIND {
                crate::ring::RingKind::RationalPolynomials => {
                    parts.push(format!("{}/({})", sym, t))
                }
                _ => parts.push(format!("{}/{}", sym, t)),
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

impl<R: EuclideanDomain> fmt::Display for InvariantFactors<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<R: EuclideanDomain> FpModule<R> {
    /// Module `R^gens / im(rels)`; relations are the columns of `rels`.
    pub fn new(gens: usize, rels: Matrix<R>) -> Self {
        assert_eq!(rels.rows(), gens, "relation matrix must have one row per generator");
        FpModule { gens, rels }
    }

    /// Module presented with relations given as rows, one relation per row.
    pub fn from_relation_rows(gens: usize, rows: Matrix<R>) -> Self {
        assert_eq!(rows.cols(), gens, "relation rows must have one entry per generator");
        FpModule {
            gens,
            rels: rows.transpose(),
        }
    }

    pub fn free(gens: usize) -> Self {
        FpModule {
            gens,
            rels: Matrix::zero(gens, 0),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Cyclic module `R/(a)`.
    pub fn cyclic(a: R) -> Self {
        FpModule {
            gens: 1,
            rels: Matrix::new(1, 1, alloc::vec![a]),
        }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &Matrix<R> {
        &self.rels
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let rels = Matrix::from_blocks(
            &[self.gens, other.gens],
            &[self.rels.cols(), other.rels.cols()],
            &[(0, 0, &self.rels), (1, 1, &other.rels)],
        );
        FpModule {
            gens: self.gens + other.gens,
            rels,
        }
    }

    pub fn normal_form(&self) -> InvariantFactors<R> {
        let dec = snf(&self.rels);
        let torsion: Vec<R> = dec
            .factors()
            .into_iter()
            .filter(|d| !d.is_unit())
            .collect();
        InvariantFactors {
            free_rank: self.gens - dec.rank,
            torsion,
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.normal_form().is_zero()
    }

    /// Does the column vector `x` lie in the relation submodule?
    pub fn element_is_zero(&self, x: &Matrix<R>) -> bool {
        assert_eq!(x.rows(), self.gens);
        solve(&self.rels, x).is_some()
    }

    /// Rewrite this module on a minimal generating set. Returns the
    /// minimally presented module together with the isomorphism onto `self`.
    ///
    /// The generating set is the one exposed by the Smith normal form of the
    /// presentation, so the result is deterministic.
    pub fn minimal_presentation(&self) -> (FpModule<R>, ModuleMap<R>) {
        let dec = snf(&self.rels);
        // In the coordinates y = U x the relations become the diagonal D.
        // Coordinates with unit diagonal entries are identically zero and are
        // dropped; torsion coordinates keep their diagonal relation.
        let mut surviving: Vec<usize> = Vec::new();
        let mut torsion: Vec<R> = Vec::new();
        for i in 0..self.gens {
            if i < dec.rank {
                let d = dec.d.at(i, i);
                if d.is_unit() {
                    continue;
                }
                torsion.push(d.clone());
                surviving.push(i);
            } else {
                surviving.push(i);
            }
        }
        let g = surviving.len();
        let mut rels = Matrix::zero(g, torsion.len());
        for (j, t) in torsion.iter().enumerate() {
            rels.set(j, j, t.clone());
        }
        let minimal = FpModule::new(g, rels);
        let mat = dec.u_inv.select_columns(&surviving);
        let map = ModuleMap::new(minimal.clone(), self.clone(), mat)
            .expect("minimal presentation map is well-defined");
        (minimal, map)
    }
}

/// Failure to certify a map as well-defined on presentations.
#[derive(Debug, Clone, thiserror::Error)]
#[error("matrix does not map source relations into target relations")]
pub struct IllDefinedMap;

/// A map of finitely presented modules, certified well-defined at
/// construction: the matrix must send every source relation into the target
/// relation submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap<R: EuclideanDomain> {
    source: FpModule<R>,
    target: FpModule<R>,
    mat: Matrix<R>, // target.gens x source.gens
}

impl<R: EuclideanDomain> ModuleMap<R> {
    pub fn new(
        source: FpModule<R>,
        target: FpModule<R>,
        mat: Matrix<R>,
    ) -> Result<Self, IllDefinedMap> {
        assert_eq!(mat.rows(), target.gens, "map matrix rows must match target generators");
        assert_eq!(mat.cols(), source.gens, "map matrix cols must match source generators");
        let image_of_rels = &mat * &source.rels;
        if solve(&target.rels, &image_of_rels).is_none() {
            return Err(IllDefinedMap);
        }
        Ok(ModuleMap { source, target, mat })
    }

    pub fn identity(m: &FpModule<R>) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            mat: Matrix::identity(m.gens),
        }
    }

    pub fn zero(source: &FpModule<R>, target: &FpModule<R>) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            mat: Matrix::zero(target.gens, source.gens),
        }
    }

    pub fn source(&self) -> &FpModule<R> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<R> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.mat
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.source, other.target, "composition endpoint mismatch");
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            mat: &self.mat * &other.mat,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            mat: &self.mat - &other.mat,
        }
    }

    /// Is this the zero map (every generator image lies in the relations)?
    pub fn is_zero_map(&self) -> bool {
        solve(&self.target.rels, &self.mat).is_some()
    }

    /// Kernel submodule with its inclusion into the source.
    pub fn kernel(&self) -> (FpModule<R>, ModuleMap<R>) {
        // Solutions of f(x) ≡ 0 mod target relations, as a submodule of the
        // free cover of the source. This contains im(source.rels) because the
        // map is well-defined.
        let gens = preimage_kernel_basis(&self.mat, &self.target.rels);
        let rels = preimage_kernel_basis(&gens, &self.source.rels);
        let kernel = FpModule::new(gens.cols(), rels);
        let incl = ModuleMap::new(kernel.clone(), self.source.clone(), gens)
            .expect("kernel inclusion is well-defined");
        (kernel, incl)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (FpModule<R>, ModuleMap<R>) {
        let rels = Matrix::hconcat(&[&self.target.rels, &self.mat]);
        let coker = FpModule::new(self.target.gens, rels);
        let proj = ModuleMap::new(self.target.clone(), coker.clone(), Matrix::identity(self.target.gens))
            .expect("cokernel projection is well-defined");
        (coker, proj)
    }

    /// Isomorphism test via vanishing of kernel and cokernel, so the map
    /// itself is checked rather than just the isomorphism classes.
    pub fn is_iso(&self) -> bool {
        self.cokernel().0.is_zero_module() && self.kernel().0.is_zero_module()
    }

    /// Does every column of `g` factor through this map (mod target
    /// relations)?
    pub fn factors_image(&self, g: &Matrix<R>) -> bool {
        solve_mod(&self.mat, &self.target.rels, g).is_some()
    }
}

/// `Hom(M, N)` as a finitely presented module, together with the generator
/// maps realizing its generators as actual matrices `N.gens x M.gens`.
pub fn hom_module_with_generators<R: EuclideanDomain>(
    m: &FpModule<R>,
    n: &FpModule<R>,
) -> (FpModule<R>, Vec<Matrix<R>>) {
    let p = m.gens;
    let q = n.gens;
    let k = m.rels.cols();

    // A matrix Φ (q x p), flattened column by column, is a homomorphism when
    // Φ·r ∈ im(N.rels) for every relation column r of M.
    let constraint = if k == 0 {
        Matrix::zero(0, q * p)
    } else {
        let blocks: Vec<Matrix<R>> = (0..k)
            .map(|j| {
                let r = Matrix::from_columns(p, &[m.rels.column(j)]);
                r.transpose().kronecker(&Matrix::identity(q))
            })
            .collect();
        let refs: Vec<&Matrix<R>> = blocks.iter().collect();
        Matrix::vconcat(&refs)
    };
    let constraint_rels = Matrix::identity(k).kronecker(&n.rels);
    let gens = preimage_kernel_basis(&constraint, &constraint_rels);

    // Maps landing in im(N.rels) are zero in Hom.
    let trivial = Matrix::identity(p).kronecker(&n.rels);
    let rels = preimage_kernel_basis(&gens, &trivial);
    let hom = FpModule::new(gens.cols(), rels);

    let generators = (0..gens.cols())
        .map(|j| {
            let col = Matrix::from_columns(q * p, &[gens.column(j)]);
            Matrix::from_column_vector(q, p, &col)
        })
        .collect();
    (hom, generators)
}

/// `Hom(M, N)` as a finitely presented module.
pub fn hom_module<R: EuclideanDomain>(m: &FpModule<R>, n: &FpModule<R>) -> FpModule<R> {
    hom_module_with_generators(m, n).0
}

/// `M ⊗ N`: generators are pairs `(i, j)` ordered by `i * N.gens + j`,
/// relations are the relations of each factor tensored with the generators of
/// the other.
pub fn tensor_module<R: EuclideanDomain>(m: &FpModule<R>, n: &FpModule<R>) -> FpModule<R> {
    let left = m.rels.kronecker(&Matrix::identity(n.gens));
    let right = Matrix::identity(m.gens).kronecker(&n.rels);
    FpModule::new(m.gens * n.gens, Matrix::hconcat(&[&left, &right]))
}

/// Express a map as a combination of Hom-module generators; used by tests to
/// cross and check the Hom presentation.
pub fn hom_coordinates<R: EuclideanDomain>(
    m: &FpModule<R>,
    n: &FpModule<R>,
    map: &ModuleMap<R>,
) -> Option<Matrix<R>> {
    let (_, gens) = hom_module_with_generators(m, n);
    if gens.is_empty() {
        return map.is_zero_map().then(|| Matrix::zero(0, 1));
    }
    let cols: Vec<Matrix<R>> = gens.iter().map(Matrix::vectorize_columns).collect();
    let refs: Vec<&Matrix<R>> = cols.iter().collect();
    let basis = Matrix::hconcat(&refs);
    let trivial = Matrix::identity(m.gens()).kronecker(n.relations());
    snf::solve_mod(&basis, &trivial, &map.matrix().vectorize_columns())
}
