//! Hom and tensor totalizations of pairs of complexes.
//!
//! Degree `i` of `Hom(M, N)` is `⊕_j Hom(M^j, N^{j+i})`; degree `i` of
//! `L ⊗ M` is `⊕_{p+q=i} L^p ⊗ M^q`. For both, the basis ordering is fixed:
//! blocks by ascending first-factor degree, then within a block
//! lexicographically by (source index, target index) — an elementary map
//! `e_a ↦ e_b` (resp. the tensor `e_a ⊗ e_b`) sits at block offset
//! `a * target_rank + b`. Matrices of maps are flattened column by column,
//! matching [`Matrix::vectorize_columns`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{ChainMap, ComplexError, FreeComplex, Homotopy};
use crate::matrix::Matrix;
use crate::ring::EuclideanDomain;
use crate::Degree;

/// Layout of one degree of a Hom complex.
#[derive(Debug, Clone)]
pub struct HomLayout {
    pub degree: Degree,
    /// `(source_degree j, source_rank m_j, target_rank n_{j+i}, offset)`.
    pub blocks: Vec<(Degree, usize, usize, usize)>,
    pub total: usize,
}

impl HomLayout {
    pub fn new<R: EuclideanDomain>(
        m: &FreeComplex<R>,
        n: &FreeComplex<R>,
        degree: Degree,
    ) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (j, mj) in m.support() {
            let nj = n.rank(j + degree);
            if nj == 0 {
                continue;
            }
            blocks.push((j, mj, nj, offset));
            offset += mj * nj;
        }
        HomLayout {
            degree,
            blocks,
            total: offset,
        }
    }

    /// Index of the elementary map `e_a ↦ e_b` in the block of source degree
    /// `j`.
    pub fn index(&self, j: Degree, a: usize, b: usize) -> usize {
        let &(_, _, tgt, offset) = self
            .blocks
            .iter()
            .find(|&&(jj, _, _, _)| jj == j)
            .expect("degree has a block in the layout");
        offset + a * tgt + b
    }
}

/// The Hom complex `Hom(M, N)` with differential
/// `d(φ) = d_N ∘ φ - (-1)^i φ ∘ d_M`.
pub fn hom_complex<R: EuclideanDomain>(
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
) -> FreeComplex<R> {
    let (Some(m_lo), Some(m_hi), Some(n_lo), Some(n_hi)) =
        (m.min_degree(), m.max_degree(), n.min_degree(), n.max_degree())
    else {
        return FreeComplex::zero();
    };
    let lo = n_lo - m_hi;
    let hi = n_hi - m_lo;
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for i in lo..=hi {
        let cur = HomLayout::new(m, n, i);
        let next = HomLayout::new(m, n, i + 1);
        if cur.total > 0 {
            ranks.insert(i, cur.total);
        }
        let row_sizes: Vec<usize> = next.blocks.iter().map(|&(_, mj, nj, _)| mj * nj).collect();
        let col_sizes: Vec<usize> = cur.blocks.iter().map(|&(_, mj, nj, _)| mj * nj).collect();
        let sign = R::from_i64(if i.rem_euclid(2) == 0 { -1 } else { 1 });
        let mut blocks: Vec<(usize, usize, Matrix<R>)> = Vec::new();
        for (row_idx, &(j, mj, _, _)) in next.blocks.iter().enumerate() {
            // post-composition with d_N on the block of source degree j
            if let Some(col_idx) = cur.blocks.iter().position(|&(jj, _, _, _)| jj == j) {
                blocks.push((
                    row_idx,
                    col_idx,
                    Matrix::identity(mj).kronecker(&n.diff(j + i)),
                ));
            }
            // pre-composition with d_M from the block of source degree j + 1
            if let Some(col_idx) = cur.blocks.iter().position(|&(jj, _, _, _)| jj == j + 1) {
                blocks.push((
                    row_idx,
                    col_idx,
                    m.diff(j)
                        .transpose()
                        .kronecker(&Matrix::identity(n.rank(j + i + 1)))
                        .scale(&sign),
                ));
            }
        }
        let refs: Vec<(usize, usize, &Matrix<R>)> =
            blocks.iter().map(|&(r, c, ref mat)| (r, c, mat)).collect();
        diffs.insert(i, Matrix::from_blocks(&row_sizes, &col_sizes, &refs));
    }
    FreeComplex::try_new(ranks, diffs).expect("Hom totalization is a complex")
}

/// Layout of one degree of a tensor complex: blocks
/// `(first_degree p, first_rank, second_rank, offset)` by ascending `p`; the
/// basis tensor `e_a ⊗ e_b` sits at `offset + a * second_rank + b`.
pub fn tensor_layout<R: EuclideanDomain>(
    l: &FreeComplex<R>,
    m: &FreeComplex<R>,
    i: Degree,
) -> Vec<(Degree, usize, usize, usize)> {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (p, lp) in l.support() {
        let mq = m.rank(i - p);
        if mq == 0 {
            continue;
        }
        blocks.push((p, lp, mq, offset));
        offset += lp * mq;
    }
    blocks
}

/// The tensor complex `L ⊗ M` with differential
/// `d(x ⊗ y) = d x ⊗ y + (-1)^p x ⊗ d y`.
pub fn tensor_complex<R: EuclideanDomain>(
    l: &FreeComplex<R>,
    m: &FreeComplex<R>,
) -> FreeComplex<R> {
    let (Some(l_lo), Some(l_hi), Some(m_lo), Some(m_hi)) =
        (l.min_degree(), l.max_degree(), m.min_degree(), m.max_degree())
    else {
        return FreeComplex::zero();
    };
    let lo = l_lo + m_lo;
    let hi = l_hi + m_hi;
    let layout = |i: Degree| tensor_layout(l, m, i);
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for i in lo..=hi {
        let cur = layout(i);
        let next = layout(i + 1);
        let total: usize = cur.iter().map(|&(_, a, b, _)| a * b).sum();
        if total > 0 {
            ranks.insert(i, total);
        }
        let row_sizes: Vec<usize> = next.iter().map(|&(_, a, b, _)| a * b).collect();
        let col_sizes: Vec<usize> = cur.iter().map(|&(_, a, b, _)| a * b).collect();
        let mut blocks: Vec<(usize, usize, Matrix<R>)> = Vec::new();
        for (col_idx, &(p, lp, mq, _)) in cur.iter().enumerate() {
            let q = i - p;
            // d_L ⊗ 1 lands in the block of first degree p + 1
            if let Some(row_idx) = next.iter().position(|&(pp, _, _, _)| pp == p + 1) {
                blocks.push((row_idx, col_idx, l.diff(p).kronecker(&Matrix::identity(mq))));
            }
            // (-1)^p 1 ⊗ d_M stays in the block of first degree p
            if let Some(row_idx) = next.iter().position(|&(pp, _, _, _)| pp == p) {
                let sign = R::from_i64(if p.rem_euclid(2) == 0 { 1 } else { -1 });
                blocks.push((
                    row_idx,
                    col_idx,
                    Matrix::identity(lp).kronecker(&m.diff(q)).scale(&sign),
                ));
            }
        }
        let refs: Vec<(usize, usize, &Matrix<R>)> =
            blocks.iter().map(|&(r, c, ref mat)| (r, c, mat)).collect();
        diffs.insert(i, Matrix::from_blocks(&row_sizes, &col_sizes, &refs));
    }
    FreeComplex::try_new(ranks, diffs).expect("tensor totalization is a complex")
}

/// The reassociation isomorphism `(L ⊗ M) ⊗ N -> L ⊗ (M ⊗ N)`: a degreewise
/// permutation of basis tensors, sign-free under the fixed Koszul
/// conventions. Construction validates the chain condition, so this doubles
/// as a mechanical associativity check.
pub fn tensor_associativity_iso<R: EuclideanDomain>(
    l: &FreeComplex<R>,
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
) -> ChainMap<R> {
    let lm = tensor_complex(l, m);
    let mn = tensor_complex(m, n);
    let left = tensor_complex(&lm, n);
    let right = tensor_complex(l, &mn);
    let mut comps = BTreeMap::new();
    let (Some(lo), Some(hi)) = (left.min_degree(), left.max_degree()) else {
        return ChainMap::zero(&left, &right);
    };
    for i in lo..=hi {
        let mut perm = Matrix::zero(right.rank(i), left.rank(i));
        for &(s, _, nr, left_off) in &tensor_layout(&lm, n, i) {
            let _r = i - s;
            for &(p, lp, mq, inner_left_off) in &tensor_layout(l, m, s) {
                let q = s - p;
                let t = i - p;
                // offset of the (p, -) block of L ⊗ (M ⊗ N) in degree i
                let &(_, _, mn_rank, right_off) = tensor_layout(l, &mn, i)
                    .iter()
                    .find(|&&(pp, _, _, _)| pp == p)
                    .expect("matching block on the right");
                // offset of the (q, r) block inside (M ⊗ N)^t
                let &(_, _, _, inner_right_off) = tensor_layout(m, n, t)
                    .iter()
                    .find(|&&(qq, _, _, _)| qq == q)
                    .expect("matching inner block on the right");
                for a in 0..lp {
                    for b in 0..mq {
                        for e in 0..nr {
                            let from = left_off + (inner_left_off + a * mq + b) * nr + e;
                            let to = right_off + a * mn_rank + inner_right_off + b * nr + e;
                            perm.set(to, from, R::one());
                        }
                    }
                }
            }
        }
        comps.insert(i, perm);
    }
    ChainMap::try_new(left, right, comps)
        .expect("reassociation of tensor factors is a chain map")
}

/// Split a degree `i` element of `Hom(M, N)` into its components
/// `φ^j : M^j -> N^{j+i}`.
pub fn hom_element_components<R: EuclideanDomain>(
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
    degree: Degree,
    v: &Matrix<R>,
) -> BTreeMap<Degree, Matrix<R>> {
    let layout = HomLayout::new(m, n, degree);
    assert_eq!(v.rows(), layout.total, "element length must match the layout");
    assert_eq!(v.cols(), 1);
    let mut out = BTreeMap::new();
    for &(j, mj, nj, offset) in &layout.blocks {
        let seg = v.row_slice(offset, offset + mj * nj);
        out.insert(j, Matrix::from_column_vector(nj, mj, &seg));
    }
    out
}

/// Reassemble components `φ^j : M^j -> N^{j+i}` into a degree `i` element of
/// `Hom(M, N)`. Missing components are zero.
pub fn hom_components_to_element<R: EuclideanDomain>(
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
    degree: Degree,
    comps: &BTreeMap<Degree, Matrix<R>>,
) -> Matrix<R> {
    let layout = HomLayout::new(m, n, degree);
    let mut v = Matrix::zero(layout.total, 1);
    for &(j, mj, nj, offset) in &layout.blocks {
        let comp = match comps.get(&j) {
            Some(c) => c.clone(),
            None => Matrix::zero(nj, mj),
        };
        assert_eq!((comp.rows(), comp.cols()), (nj, mj), "component shape mismatch");
        let flat = comp.vectorize_columns();
        for r in 0..mj * nj {
            v.set(offset + r, 0, flat.at(r, 0).clone());
        }
    }
    v
}

/// Interpret a `0`-cocycle of `Hom(M, N)` as a chain map `M -> N`.
pub fn cocycle_to_chain_map<R: EuclideanDomain>(
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
    v: &Matrix<R>,
) -> Result<ChainMap<R>, ComplexError> {
    let comps = hom_element_components(m, n, 0, v);
    ChainMap::try_new(m.clone(), n.clone(), comps)
}

/// The element of `Hom(M, N)^0` carried by a chain map.
pub fn chain_map_to_cocycle<R: EuclideanDomain>(map: &ChainMap<R>) -> Matrix<R> {
    hom_components_to_element(map.source(), map.target(), 0, map.components())
}

/// Interpret a degree `-1` element of `Hom(M, N)` as a homotopy family
/// `θ^j : M^j -> N^{j-1}`.
pub fn homotopy_from_element<R: EuclideanDomain>(
    m: &FreeComplex<R>,
    n: &FreeComplex<R>,
    v: &Matrix<R>,
) -> Homotopy<R> {
    Homotopy::new(hom_element_components(m, n, -1, v))
}
