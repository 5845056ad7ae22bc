//! Deterministic random generation of test objects.
//!
//! Everything is driven by a SplitMix64 stream, so a seed pins the whole
//! corpus across platforms and versions. Complexes are generated as direct
//! sums of elementary pieces conjugated by random unimodular basis changes;
//! chain maps are sampled from the actual cocycle lattice of the Hom complex,
//! so they are valid by construction rather than by rejection.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::{cocycle_to_chain_map, hom_complex, ChainMap, FreeComplex};
use crate::fpcomplex::{FpChainMap, FpComplex};
use crate::fpmod::FpModule;
use crate::matrix::Matrix;
use crate::resolve::Resolution;
use crate::ring::{EuclideanDomain, Integer, RatPoly, Rational};
use crate::snf::kernel_basis;
use crate::Degree;

/// SplitMix64: tiny, fast, and stable across releases.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Rings that know how to sample a small element for corpus generation.
pub trait SampleElement: EuclideanDomain {
    /// A random element with entries bounded by `size`.
    fn sample(rng: &mut Rng, size: i64) -> Self;

    /// A random nonzero non-unit, for torsion factors; `None` for fields.
    fn sample_torsion(rng: &mut Rng, size: i64) -> Option<Self>;
}

impl SampleElement for Integer {
    fn sample(rng: &mut Rng, size: i64) -> Self {
        Integer::from_i64(rng.int_in(-size, size))
    }

    fn sample_torsion(rng: &mut Rng, size: i64) -> Option<Self> {
        Some(Integer::from_i64(rng.int_in(2, size.max(2))))
    }
}

impl SampleElement for Rational {
    fn sample(rng: &mut Rng, size: i64) -> Self {
        let numer = rng.int_in(-size, size);
        let denom = rng.int_in(1, 2);
        Rational::new(numer, denom)
    }

    fn sample_torsion(_rng: &mut Rng, _size: i64) -> Option<Self> {
        None
    }
}

impl SampleElement for RatPoly {
    fn sample(rng: &mut Rng, size: i64) -> Self {
        let degree = rng.below(3) as usize;
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.int_in(-size, size)).collect();
        RatPoly::from_int_coeffs(&coeffs)
    }

    fn sample_torsion(rng: &mut Rng, size: i64) -> Option<Self> {
        // a monic polynomial of degree 1 or 2
        let degree = 1 + rng.below(2) as usize;
        let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.int_in(-size, size)).collect();
        coeffs.push(1);
        Some(RatPoly::from_int_coeffs(&coeffs))
    }
}

/// A random unimodular matrix together with its inverse, built from integer
/// elementary row operations (valid over every coefficient ring).
pub fn random_unimodular<R: SampleElement>(
    rng: &mut Rng,
    n: usize,
    steps: usize,
    bound: i64,
) -> (Matrix<R>, Matrix<R>) {
    let mut u = Matrix::<R>::identity(n);
    let mut u_inv = Matrix::<R>::identity(n);
    if n == 0 {
        return (u, u_inv);
    }
    for _ in 0..steps {
        match rng.below(3) {
            0 => {
                let i = rng.below(n as u64) as usize;
                let j = rng.below(n as u64) as usize;
                u.swap_rows(i, j);
                u_inv.swap_cols(i, j);
            }
            1 => {
                let i = rng.below(n as u64) as usize;
                let j = rng.below(n as u64) as usize;
                if i != j {
                    let c = R::from_i64(rng.int_in(-bound, bound));
                    u.add_row_multiple(i, j, &c);
                    u_inv.add_col_multiple(j, i, &c.neg());
                }
            }
            _ => {
                let i = rng.below(n as u64) as usize;
                let minus_one = R::from_i64(-1);
                u.scale_row(i, &minus_one);
                for k in 0..n {
                    let v = u_inv.at(k, i).neg();
                    u_inv.set(k, i, v);
                }
            }
        }
    }
    (u, u_inv)
}

/// A random bounded free complex supported in `lo..=hi`: a direct sum of
/// elementary pieces (free summands and two-term multiplication complexes)
/// conjugated degreewise by random unimodular changes of basis.
pub fn random_free_complex<R: SampleElement>(
    rng: &mut Rng,
    lo: Degree,
    hi: Degree,
    max_rank: usize,
    bound: i64,
) -> FreeComplex<R> {
    let max_rank = max_rank.max(1);
    let mut sum = FreeComplex::zero();
    let pieces = 1 + rng.below(3);
    for _ in 0..pieces {
        let piece = if rng.below(3) == 0 || hi == lo {
            let d = rng.int_in(lo, hi);
            FreeComplex::single(d, 1 + rng.below(max_rank as u64) as usize)
        } else {
            let d = rng.int_in(lo, hi - 1);
            let c = R::sample(rng, bound);
            FreeComplex::two_term(d, Matrix::new(1, 1, alloc::vec![c]))
        };
        // keep every degree within the rank budget
        if piece.support().any(|(d, r)| sum.rank(d) + r > max_rank) {
            continue;
        }
        sum = sum.direct_sum(&piece);
    }
    // conjugate by degreewise basis changes
    let (Some(a), Some(b)) = (sum.min_degree(), sum.max_degree()) else {
        return sum;
    };
    let mut transforms: BTreeMap<Degree, (Matrix<R>, Matrix<R>)> = BTreeMap::new();
    for i in a..=b + 1 {
        transforms.insert(i, random_unimodular(rng, sum.rank(i), 4, 1));
    }
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (i, r) in sum.support() {
        ranks.insert(i, r);
    }
    for i in a..=b {
        let s_next = &transforms.get(&(i + 1)).expect("transform exists").0;
        let s_inv = &transforms.get(&i).expect("transform exists").1;
        diffs.insert(i, &(s_next * &sum.diff(i)) * s_inv);
    }
    FreeComplex::try_new(ranks, diffs).expect("conjugated complex is a complex")
}

/// A random chain map `L -> M`, sampled as an integer combination of a basis
/// of the cocycle lattice `Z^0(Hom(L, M))`.
pub fn random_chain_map<R: SampleElement>(
    rng: &mut Rng,
    l: &FreeComplex<R>,
    m: &FreeComplex<R>,
    bound: i64,
) -> ChainMap<R> {
    let hom = hom_complex(l, m);
    if hom.rank(0) == 0 {
        return ChainMap::zero(l, m);
    }
    let basis = kernel_basis(&hom.diff(0));
    if basis.cols() == 0 {
        return ChainMap::zero(l, m);
    }
    let coeffs = Matrix::from_fn(basis.cols(), 1, |_, _| R::from_i64(rng.int_in(-bound, bound)));
    let vec = &basis * &coeffs;
    cocycle_to_chain_map(l, m, &vec).expect("combinations of cocycles are chain maps")
}

/// A random degreewise unimodular chain isomorphism out of `x` onto a copy
/// conjugated by random basis changes, together with its inverse. Both maps
/// are quasi-isomorphisms.
pub fn random_conjugation_pair<R: SampleElement>(
    rng: &mut Rng,
    x: &FreeComplex<R>,
) -> (ChainMap<R>, ChainMap<R>) {
    let (Some(lo), Some(hi)) = (x.min_degree(), x.max_degree()) else {
        return (ChainMap::identity(x), ChainMap::identity(x));
    };
    let mut transforms: BTreeMap<Degree, (Matrix<R>, Matrix<R>)> = BTreeMap::new();
    for i in lo..=hi + 1 {
        transforms.insert(i, random_unimodular(rng, x.rank(i), 4, 1));
    }
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let mut comps = BTreeMap::new();
    let mut inv_comps = BTreeMap::new();
    for (i, r) in x.support() {
        ranks.insert(i, r);
        let (s, s_inv) = transforms.get(&i).expect("transform exists");
        comps.insert(i, s.clone());
        inv_comps.insert(i, s_inv.clone());
    }
    for i in lo..=hi {
        let s_next = &transforms.get(&(i + 1)).expect("transform exists").0;
        let s_inv = &transforms.get(&i).expect("transform exists").1;
        diffs.insert(i, &(s_next * &x.diff(i)) * s_inv);
    }
    let y = FreeComplex::try_new(ranks, diffs).expect("conjugated complex is a complex");
    let fwd = ChainMap::try_new(x.clone(), y.clone(), comps).expect("basis change is a chain map");
    let bwd = ChainMap::try_new(y, x.clone(), inv_comps).expect("inverse basis change is a chain map");
    (fwd, bwd)
}

/// Forward half of [`random_conjugation_pair`].
pub fn random_conjugation_iso<R: SampleElement>(
    rng: &mut Rng,
    x: &FreeComplex<R>,
) -> ChainMap<R> {
    random_conjugation_pair(rng, x).0
}

/// A random finitely presented module: a diagonal of sampled torsion factors
/// and free generators, with the presentation scrambled by unimodular row
/// mixing and a redundant relation.
pub fn random_fp_module<R: SampleElement>(
    rng: &mut Rng,
    max_gens: usize,
    bound: i64,
) -> FpModule<R> {
    let gens = rng.below(max_gens.max(1) as u64 + 1) as usize;
    let mut diag: Vec<R> = Vec::new();
    for _ in 0..gens {
        if rng.below(2) == 0 {
            if let Some(t) = R::sample_torsion(rng, bound.max(2)) {
                diag.push(t);
                continue;
            }
        }
        diag.push(R::zero());
    }
    let torsion_count = diag.iter().filter(|d| !d.is_zero()).count();
    let mut rels = Matrix::zero(gens, torsion_count);
    let mut col = 0;
    for (i, d) in diag.iter().enumerate() {
        if !d.is_zero() {
            rels.set(i, col, d.clone());
            col += 1;
        }
    }
    let (u, _) = random_unimodular::<R>(rng, gens, 4, 1);
    let mut rels = &u * &rels;
    // a redundant relation keeps presentations honest without changing the module
    if rels.cols() > 0 && rng.below(2) == 0 {
        let combo = Matrix::from_fn(rels.cols(), 1, |_, _| R::from_i64(rng.int_in(-1, 1)));
        let extra = &rels * &combo;
        rels = Matrix::hconcat(&[&rels, &extra]);
    }
    FpModule::new(gens, rels)
}

/// A finitely generated abelian group `Z^r ⊕ Z/n_1 ⊕ ... ⊕ Z/n_k` with the
/// invariant data returned alongside (possibly unsorted `n_i`).
pub fn random_abelian_group(
    rng: &mut Rng,
    max_rank: usize,
    max_torsion: usize,
    torsion_bound: i64,
) -> (FpModule<Integer>, usize, Vec<i64>) {
    let rank = rng.below(max_rank as u64 + 1) as usize;
    let torsion_count = rng.below(max_torsion as u64 + 1) as usize;
    let torsion: Vec<i64> = (0..torsion_count).map(|_| rng.int_in(2, torsion_bound)).collect();
    let mut m = FpModule::free(rank);
    for &n in &torsion {
        m = m.direct_sum(&FpModule::cyclic(Integer::from_i64(n)));
    }
    let (u, _) = random_unimodular::<Integer>(rng, m.gens(), 5, 1);
    let rels = &u * m.relations();
    (FpModule::new(m.gens(), rels), rank, torsion)
}

/// A random bounded complex of finitely presented modules, realized as the
/// degreewise cokernel of a random chain map of free complexes (so the
/// differentials are well-defined with vanishing composites by construction).
pub fn random_fp_complex<R: SampleElement>(
    rng: &mut Rng,
    lo: Degree,
    hi: Degree,
    max_rank: usize,
    bound: i64,
) -> FpComplex<R> {
    let x = random_free_complex(rng, lo, hi, max_rank, bound);
    let y = random_free_complex(rng, lo, hi, max_rank, bound);
    let u = random_chain_map(rng, &y, &x, 1);
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (i, r) in x.support() {
        terms.insert(i, FpModule::new(r, u.comp(i)));
        diffs.insert(i, x.diff(i));
    }
    FpComplex::try_new(terms, diffs).expect("cokernel of a chain map is a complex")
}

/// Disguise a resolution without changing what it resolves: conjugate the
/// complex by degreewise basis changes and pad it with a shifted contractible
/// two-term piece. The result is a different but equally valid resolution of
/// the same complex.
pub fn perturb_resolution<R: SampleElement>(
    rng: &mut Rng,
    res: &Resolution<R>,
) -> Resolution<R> {
    let p = &res.complex;
    let target = res.augmentation.target().clone();
    let lo = p.min_degree().unwrap_or(0);
    let hi = p.max_degree().unwrap_or(0);

    // contractible padding [R =1= R]
    let pad_degree = rng.int_in(lo - 1, hi);
    let pad = FreeComplex::two_term(pad_degree, Matrix::identity(1));
    let padded = p.direct_sum(&pad);

    let mut transforms: BTreeMap<Degree, (Matrix<R>, Matrix<R>)> = BTreeMap::new();
    for i in lo - 1..=hi + 1 {
        transforms.insert(i, random_unimodular(rng, padded.rank(i), 4, 1));
    }
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (i, r) in padded.support() {
        ranks.insert(i, r);
    }
    for i in lo - 1..=hi {
        let s_next = &transforms.get(&(i + 1)).expect("transform exists").0;
        let s_inv = &transforms.get(&i).expect("transform exists").1;
        diffs.insert(i, &(s_next * &padded.diff(i)) * s_inv);
    }
    let complex = FreeComplex::try_new(ranks, diffs).expect("perturbed resolution is a complex");

    let mut aug = BTreeMap::new();
    for i in lo..=hi {
        // original augmentation extended by zero on the padding, then
        // precomposed with the inverse basis change
        let z = res.augmentation.comp(i);
        let extended = Matrix::from_blocks(
            &[z.rows()],
            &[z.cols(), pad.rank(i)],
            &[(0, 0, &z)],
        );
        let s_inv = &transforms.get(&i).expect("transform exists").1;
        aug.insert(i, &extended * s_inv);
    }
    let augmentation = FpChainMap::try_new(FpComplex::from_free(&complex), target, aug)
        .expect("perturbed augmentation is a chain map");
    Resolution {
        complex,
        augmentation,
    }
}
