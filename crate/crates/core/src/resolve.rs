//! Free resolutions of bounded complexes and lifting through
//! quasi-isomorphisms.
//!
//! The resolution is built by descending induction. At degree `i`, with the
//! strictly higher part of `P` and the comparison maps `ζ` already in hand,
//! form the pullback module
//!
//! ```text
//! N = Ker( (d_M, -ζ) : M^i ⊕ Z^{i+1}(P) -> M^{i+1} )
//! ```
//!
//! and cover it by a free module on the minimal generating set exposed by its
//! Smith normal form. The two projections of the cover give `ζ^i` and
//! `d_P^i`. Over a Euclidean domain the descent stops one step below the
//! input support, where the remaining syzygies form a free submodule of a
//! free module and the cover can be chosen to be an isomorphism. The result
//! is a bounded free complex with a quasi-isomorphism onto the input, at most
//! one degree longer than the input span.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::{ChainMap, FreeComplex, Homotopy};
use crate::fpcomplex::{FpChainMap, FpComplex};
use crate::fpmod::{FpModule, InvariantFactors, ModuleMap};
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;
use crate::snf::{kernel_basis, preimage_kernel_basis, solve};
use crate::Degree;

/// A bounded free complex quasi-isomorphic to a given complex of finitely
/// presented modules, with the comparison map.
#[derive(Debug, Clone)]
pub struct Resolution<R: EuclideanDomain> {
    pub complex: FreeComplex<R>,
    /// Chain map from `complex` (viewed degreewise as free modules) onto the
    /// resolved complex; always a quasi-isomorphism.
    pub augmentation: FpChainMap<R>,
}

/// Compute a free resolution of a bounded complex of finitely presented
/// modules.
pub fn free_resolution<R: EuclideanDomain>(m: &FpComplex<R>) -> Resolution<R> {
    let (Some(lo), Some(hi)) = (m.min_degree(), m.max_degree()) else {
        let zero = FreeComplex::zero();
        let augmentation = FpChainMap::try_new(FpComplex::zero(), m.clone(), BTreeMap::new())
            .expect("empty chain map");
        return Resolution {
            complex: zero,
            augmentation,
        };
    };

    let mut p_ranks: BTreeMap<Degree, usize> = BTreeMap::new();
    let mut p_diffs: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
    let mut zeta: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
    let rank_of = |ranks: &BTreeMap<Degree, usize>, i: Degree| ranks.get(&i).copied().unwrap_or(0);

    for i in (lo..=hi).rev() {
        let term = m.term(i);
        let next_rank = rank_of(&p_ranks, i + 1);
        let d_next = p_diffs
            .get(&(i + 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(rank_of(&p_ranks, i + 2), next_rank));
        let zeta_next = zeta
            .get(&(i + 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zero(m.term(i + 1).gens(), next_rank));

        // cocycles of P in degree i + 1
        let z_basis = kernel_basis(&d_next);

        // N = Ker( (d_M, -ζ∘incl) : M^i ⊕ Z^{i+1}(P) -> M^{i+1} )
        let product = term.direct_sum(&FpModule::free(z_basis.cols()));
        let zeta_on_z = &zeta_next * &z_basis;
        let f_mat = Matrix::hconcat(&[&m.diff(i), &zeta_on_z.neg_matrix()]);
        let f = ModuleMap::new(product.clone(), m.term(i + 1), f_mat)
            .expect("the pullback constraint map is well-defined");
        let (n_module, incl) = f.kernel();

        // free cover on the minimal generating set
        let (minimal, iso) = n_module.minimal_presentation();
        let cover = incl.matrix() * iso.matrix();
        let g = minimal.gens();
        if g > 0 {
            p_ranks.insert(i, g);
        }
        // split the cover into the comparison and differential parts
        let zeta_i = cover.row_slice(0, term.gens());
        let coords_in_z = cover.row_slice(term.gens(), cover.rows());
        let d_i = &z_basis * &coords_in_z;
        zeta.insert(i, zeta_i);
        p_diffs.insert(i, d_i);
    }

    // Final step: the syzygies {p in P^lo : d p = 0 and ζ p ≡ 0} form a free
    // module; adjoin it as the bottom term to make the comparison a
    // quasi-isomorphism at the bottom degree.
    let bottom_rank = rank_of(&p_ranks, lo);
    if bottom_rank > 0 {
        let d_lo = p_diffs
            .get(&lo)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(rank_of(&p_ranks, lo + 1), bottom_rank));
        let zeta_lo = zeta
            .get(&lo)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(m.term(lo).gens(), bottom_rank));
        let stacked = Matrix::vconcat(&[&d_lo, &zeta_lo]);
        let bottom_term = m.term(lo);
        let rels = bottom_term.relations();
        let allowed = Matrix::from_blocks(
            &[d_lo.rows(), zeta_lo.rows()],
            &[rels.cols()],
            &[(1, 0, rels)],
        );
        let syzygies = preimage_kernel_basis(&stacked, &allowed);
        if syzygies.cols() > 0 {
            p_ranks.insert(lo - 1, syzygies.cols());
            p_diffs.insert(lo - 1, syzygies);
        }
    }

    let complex = FreeComplex::try_new(p_ranks, p_diffs)
        .expect("the resolution construction yields a complex");
    let comps: BTreeMap<Degree, Matrix<R>> = zeta
        .into_iter()
        .filter(|(i, z)| complex.rank(*i) > 0 && z.rows() > 0)
        .collect();
    let augmentation = FpChainMap::try_new(FpComplex::from_free(&complex), m.clone(), comps)
        .expect("the augmentation is a chain map");
    Resolution {
        complex,
        augmentation,
    }
}

/// Resolution of a single module placed in degree zero.
pub fn resolve_module<R: EuclideanDomain>(m: &FpModule<R>) -> Resolution<R> {
    free_resolution(&FpComplex::single(0, m.clone()))
}

/// A bounded free complex is its own resolution.
pub fn resolve_free<R: EuclideanDomain>(x: &FreeComplex<R>) -> Resolution<R> {
    let fp = FpComplex::from_free(x);
    let augmentation = FpChainMap::identity(&fp);
    Resolution {
        complex: x.clone(),
        augmentation,
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum LiftError<R: EuclideanDomain> {
    /// The map to lift through is not a quasi-isomorphism; the witness is the
    /// first nonvanishing cone cohomology.
    #[error("map is not a quasi-isomorphism: cone has cohomology {witness} in degree {degree}")]
    NotQuasiIso {
        degree: Degree,
        witness: InvariantFactors<R>,
    },
    /// The joint linear system was insoluble. For bounded free sources this
    /// cannot happen; it indicates an internal convention bug, not bad input.
    #[error("internal error: lifting system insoluble for a bounded free source")]
    SolverFailed,
}

/// Lift `f : P -> N` through the quasi-isomorphism `s : M -> N`: find
/// `g : P -> M` and a homotopy `h` with `s∘g - f = d∘h + h∘d`. `P` must be
/// bounded free (it is, by the type); solubility is guaranteed by
/// K-projectivity of bounded complexes of free modules.
pub fn lift_through_qis<R: EuclideanDomain>(
    f: &ChainMap<R>,
    s: &ChainMap<R>,
) -> Result<(ChainMap<R>, Homotopy<R>), LiftError<R>> {
    assert_eq!(f.target(), s.target(), "lift endpoints mismatch");
    let cone = s.cone();
    if let (Some(lo), Some(hi)) = (cone.complex.min_degree(), cone.complex.max_degree()) {
        for i in lo..=hi {
            let h = cone.complex.cohomology(i).normal_form();
            if !h.is_zero() {
                return Err(LiftError::NotQuasiIso {
                    degree: i,
                    witness: h,
                });
            }
        }
    }

    let p = f.source();
    let m = s.source();
    let n = f.target();

    // Unknowns: g^i : P^i -> M^i and h^i : P^i -> N^{i-1}, flattened column
    // by column. Equations: the chain condition for g and the homotopy
    // identity for (g, h).
    #[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy)]
    enum Block {
        G(Degree),
        H(Degree),
    }

    let mut unknowns: Vec<(Block, usize)> = Vec::new();
    for (i, r) in p.support() {
        if m.rank(i) > 0 {
            unknowns.push((Block::G(i), r * m.rank(i)));
        }
        if n.rank(i - 1) > 0 {
            unknowns.push((Block::H(i), r * n.rank(i - 1)));
        }
    }
    let col_index: BTreeMap<Block, usize> = unknowns
        .iter()
        .enumerate()
        .map(|(idx, &(b, _))| (b, idx))
        .collect();
    let col_sizes: Vec<usize> = unknowns.iter().map(|&(_, s)| s).collect();

    let mut row_sizes: Vec<usize> = Vec::new();
    let mut blocks: Vec<(usize, usize, Matrix<R>)> = Vec::new();
    let mut rhs_parts: Vec<Matrix<R>> = Vec::new();

    for (i, r) in p.support() {
        // chain condition: d_M^i ∘ g^i - g^{i+1} ∘ d_P^i = 0
        if m.rank(i + 1) > 0 {
            let row = row_sizes.len();
            row_sizes.push(r * m.rank(i + 1));
            rhs_parts.push(Matrix::zero(r * m.rank(i + 1), 1));
            if let Some(&c) = col_index.get(&Block::G(i)) {
                blocks.push((row, c, Matrix::identity(r).kronecker(&m.diff(i))));
            }
            if let Some(&c) = col_index.get(&Block::G(i + 1)) {
                blocks.push((
                    row,
                    c,
                    p.diff(i)
                        .transpose()
                        .kronecker(&Matrix::identity(m.rank(i + 1)))
                        .neg_matrix(),
                ));
            }
        }
        // homotopy identity: s^i ∘ g^i - d_N^{i-1} ∘ h^i - h^{i+1} ∘ d_P^i = f^i
        if n.rank(i) > 0 {
            let row = row_sizes.len();
            row_sizes.push(r * n.rank(i));
            rhs_parts.push(f.comp(i).vectorize_columns());
            if let Some(&c) = col_index.get(&Block::G(i)) {
                blocks.push((row, c, Matrix::identity(r).kronecker(&s.comp(i))));
            }
            if let Some(&c) = col_index.get(&Block::H(i)) {
                blocks.push((
                    row,
                    c,
                    Matrix::identity(r).kronecker(&n.diff(i - 1)).neg_matrix(),
                ));
            }
            if let Some(&c) = col_index.get(&Block::H(i + 1)) {
                blocks.push((
                    row,
                    c,
                    p.diff(i)
                        .transpose()
                        .kronecker(&Matrix::identity(n.rank(i)))
                        .neg_matrix(),
                ));
            }
        }
    }

    if row_sizes.is_empty() {
        return Ok((ChainMap::zero(p, m), Homotopy::zero()));
    }

    let refs: Vec<(usize, usize, &Matrix<R>)> =
        blocks.iter().map(|&(r, c, ref mat)| (r, c, mat)).collect();
    let system = Matrix::from_blocks(&row_sizes, &col_sizes, &refs);
    let rhs_refs: Vec<&Matrix<R>> = rhs_parts.iter().collect();
    let rhs = Matrix::vconcat(&rhs_refs);
    let sol = solve(&system, &rhs).ok_or(LiftError::SolverFailed)?;

    let mut g_comps = BTreeMap::new();
    let mut h_comps = BTreeMap::new();
    let mut off = 0;
    for &(b, size) in &unknowns {
        let seg = sol.row_slice(off, off + size);
        off += size;
        match b {
            Block::G(i) => {
                g_comps.insert(i, Matrix::from_column_vector(m.rank(i), p.rank(i), &seg));
            }
            Block::H(i) => {
                h_comps.insert(i, Matrix::from_column_vector(n.rank(i - 1), p.rank(i), &seg));
            }
        }
    }
    let g = ChainMap::try_new(p.clone(), m.clone(), g_comps)
        .map_err(|_| LiftError::SolverFailed)?;
    Ok((g, Homotopy::new(h_comps)))
}
