//! Randomized coherence suites for the derived functors, the roof calculus,
//! and duality.

use homolog_core::complex::{hom_complex, tensor_complex, FreeComplex};
use homolog_core::corpus::{
    perturb_resolution, random_abelian_group, random_chain_map, random_conjugation_iso,
    random_conjugation_pair, random_fp_complex, random_free_complex, Rng, SampleElement,
};
use homolog_core::derived::{derived_hom_group, derived_tensor, ext, rhom, tor, Roof};
use homolog_core::duality::{classify_dualizing, verify_dualizing, Dualizer};
use homolog_core::fpcomplex::FpComplex;
use homolog_core::fpmod::{tensor_module, FpModule};
use homolog_core::resolve::{free_resolution, lift_through_qis};
use homolog_core::ring::{EuclideanDomain, Integer, RatPoly};
use homolog_core::Degree;

fn resolution_invariants<R: SampleElement>(seed: u64, lo: Degree, hi: Degree) {
    let mut rng = Rng::new(seed);
    for _ in 0..8 {
        let m = random_fp_complex::<R>(&mut rng, lo, hi, 2, 4);
        let res = free_resolution(&m);
        assert!(res.augmentation.is_quasi_iso());
        if let (Some(a), Some(b)) = (res.complex.min_degree(), res.complex.max_degree()) {
            let (Some(mlo), Some(mhi)) = (m.min_degree(), m.max_degree()) else {
                panic!("nonzero resolution of a zero complex");
            };
            assert!(a >= mlo - 1 && b <= mhi, "length bound violated");
            for i in a - 1..=b + 1 {
                assert_eq!(
                    res.complex.cohomology(i).normal_form(),
                    m.cohomology(i).normal_form(),
                    "cohomology mismatch at degree {}",
                    i
                );
            }
        }
    }
}

#[test]
fn resolutions_are_quasi_isomorphic_and_bounded() {
    resolution_invariants::<Integer>(201, -1, 1);
    resolution_invariants::<RatPoly>(202, 0, 2);
}

#[test]
fn lifting_always_succeeds_through_quasi_isomorphisms() {
    let mut rng = Rng::new(210);
    for _ in 0..8 {
        let x = random_free_complex::<Integer>(&mut rng, -1, 1, 2, 4);
        let s = random_conjugation_iso(&mut rng, &x);
        let p = random_free_complex::<Integer>(&mut rng, -1, 1, 2, 4);
        let f = random_chain_map(&mut rng, &p, s.target(), 2);
        let (g, h) = lift_through_qis(&f, &s).expect("bounded free sources always lift");
        let defect = s.compose(&g).sub(&f);
        assert!(h.witnesses(&defect));
    }
}

#[test]
fn ext_and_tor_do_not_depend_on_the_resolution() {
    let mut rng = Rng::new(211);
    for _ in 0..5 {
        let m = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        let n = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        let res_m = free_resolution(&m);
        let res_n = free_resolution(&n);
        let alt_m = perturb_resolution(&mut rng, &res_m);
        let alt_n = perturb_resolution(&mut rng, &res_n);
        let canonical_hom = hom_complex(&res_m.complex, &res_n.complex);
        let alt_hom = hom_complex(&alt_m.complex, &alt_n.complex);
        let canonical_tensor = tensor_complex(&res_m.complex, &res_n.complex);
        let alt_tensor = tensor_complex(&alt_m.complex, &alt_n.complex);
        for i in -3..=3 {
            assert_eq!(
                canonical_hom.cohomology(i).normal_form(),
                alt_hom.cohomology(i).normal_form(),
                "Ext mismatch at {}",
                i
            );
            assert_eq!(
                canonical_tensor.cohomology(i).normal_form(),
                alt_tensor.cohomology(i).normal_form(),
                "Tor mismatch at {}",
                i
            );
        }
    }
}

#[test]
fn ext_equals_derived_hom_groups() {
    let mut rng = Rng::new(212);
    for _ in 0..5 {
        let m = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        let n = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        for i in -2..=2 {
            assert_eq!(
                ext(&m, &n, i).normal_form(),
                derived_hom_group(&m, &n, i).normal_form(),
                "degree {}",
                i
            );
        }
    }
}

#[test]
fn tor_vanishes_above_the_projective_dimension() {
    let mut rng = Rng::new(213);
    for _ in 0..5 {
        let m = random_fp_complex::<Integer>(&mut rng, 0, 0, 2, 5);
        let n = random_fp_complex::<Integer>(&mut rng, 0, 0, 2, 5);
        for i in 2..=4 {
            assert!(tor(&m, &n, i).is_zero_module(), "Tor_{} nonzero", i);
        }
    }
}

#[test]
fn kunneth_top_degree() {
    let mut rng = Rng::new(214);
    for _ in 0..6 {
        let m = random_fp_complex::<Integer>(&mut rng, -1, 1, 2, 4);
        let n = random_fp_complex::<Integer>(&mut rng, -1, 1, 2, 4);
        let top = |c: &FpComplex<Integer>| -> Option<Degree> {
            let (lo, hi) = (c.min_degree()?, c.max_degree()?);
            (lo..=hi).rev().find(|&i| !c.cohomology(i).is_zero_module())
        };
        let (Some(k), Some(kp)) = (top(&m), top(&n)) else {
            continue;
        };
        let product = derived_tensor(&m, &n);
        let expected = tensor_module(&m.cohomology(k), &n.cohomology(kp));
        assert_eq!(
            product.cohomology(k + kp).normal_form(),
            expected.normal_form()
        );
        for l in k + kp + 1..=k + kp + 3 {
            assert!(product.cohomology(l).is_zero_module());
        }
    }
}

#[test]
fn adjunction_for_derived_functors_single_ring() {
    let mut rng = Rng::new(215);
    for _ in 0..3 {
        let m = random_fp_complex::<Integer>(&mut rng, 0, 0, 2, 4);
        let p = random_fp_complex::<Integer>(&mut rng, 0, 0, 2, 4);
        let l = random_fp_complex::<Integer>(&mut rng, 0, 0, 2, 4);
        let lhs = rhom(&FpComplex::from_free(&derived_tensor(&m, &p)), &l);
        let rhs = rhom(&p, &FpComplex::from_free(&rhom(&m, &l)));
        for i in -2..=3 {
            assert_eq!(
                lhs.cohomology(i).normal_form(),
                rhs.cohomology(i).normal_form(),
                "degree {}",
                i
            );
        }
    }
}

#[test]
fn derived_functors_are_quasi_isomorphism_invariant() {
    let mut rng = Rng::new(216);
    for _ in 0..4 {
        let m = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        let n = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        // replace m by its free resolution, a quasi-isomorphic complex
        let m_replaced = FpComplex::from_free(&free_resolution(&m).complex);
        for i in -2..=2 {
            assert_eq!(
                ext(&m, &n, i).normal_form(),
                ext(&m_replaced, &n, i).normal_form()
            );
            assert_eq!(
                tor(&m, &n, i).normal_form(),
                tor(&m_replaced, &n, i).normal_form()
            );
        }
    }
}

#[test]
fn roof_equality_is_an_equivalence_relation() {
    let mut rng = Rng::new(217);
    for _ in 0..5 {
        let x = random_free_complex::<Integer>(&mut rng, -1, 1, 2, 4);
        let y = random_free_complex::<Integer>(&mut rng, -1, 1, 2, 4);
        let a = random_chain_map(&mut rng, &x, &y, 2);
        let r1 = Roof::plain(a.clone());

        // r2, r3: the same morphism written over different apexes by
        // precomposing both legs with a quasi-isomorphism w : apex' -> x
        let (_, w2) = random_conjugation_pair(&mut rng, &x);
        let r2 = Roof::new(w2.clone(), a.compose(&w2)).unwrap();
        let (_, w3) = random_conjugation_pair(&mut rng, &x);
        let r3 = Roof::new(w3.clone(), a.compose(&w3)).unwrap();

        // reflexive
        assert!(r1.equals(&r1).unwrap());
        // r2 and r3 both equal r1 (same derived morphism)
        assert!(r1.equals(&r2).unwrap());
        assert!(r2.equals(&r1).unwrap(), "symmetry");
        assert!(r3.equals(&r1).unwrap());
        // transitivity across the chain r2 ~ r1 ~ r3
        assert!(r2.equals(&r3).unwrap());
    }
}

#[test]
fn roof_composition_is_associative_up_to_equality() {
    let mut rng = Rng::new(218);
    for _ in 0..5 {
        let x = random_free_complex::<Integer>(&mut rng, -1, 1, 2, 3);
        let f = random_chain_map(&mut rng, &x, &x, 2);
        let g = random_chain_map(&mut rng, &x, &x, 2);
        let h = random_chain_map(&mut rng, &x, &x, 2);
        let (rf, rg, rh) = (Roof::plain(f), Roof::plain(g), Roof::plain(h));
        let left = Roof::compose(&rh, &Roof::compose(&rg, &rf).unwrap()).unwrap();
        let right = Roof::compose(&Roof::compose(&rh, &rg).unwrap(), &rf).unwrap();
        assert!(left.equals(&right).unwrap());
    }
}

#[test]
fn tensor_inverse_pairs_are_shifted_lines() {
    let mut rng = Rng::new(219);
    for _ in 0..6 {
        let k = rng.int_in(-2, 2);
        // conjugated shifted lines with inverse shifts
        let m = random_conjugation_iso(&mut rng, &FreeComplex::<Integer>::single(k, 1))
            .target()
            .clone();
        let mp = random_conjugation_iso(&mut rng, &FreeComplex::<Integer>::single(-k, 1))
            .target()
            .clone();
        let product = tensor_complex(&m, &mp);
        // hypothesis: the product is the unit object up to quasi-isomorphism
        assert_eq!(product.cohomology(0).normal_form().render(), "Z");
        assert!(product.cohomology(1).is_zero_module());
        assert!(product.cohomology(-1).is_zero_module());
        // conclusion: each factor has one-degree cohomology of rank one
        for c in [&m, &mp] {
            let nonzero: Vec<Degree> = (-3..=3)
                .filter(|&i| !c.cohomology(i).is_zero_module())
                .collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(c.cohomology(nonzero[0]).normal_form().render(), "Z");
        }
    }
}

#[test]
fn duality_exchanges_the_classical_duals() {
    let mut rng = Rng::new(220);
    let dualizer = Dualizer::new(&FpComplex::single(0, FpModule::<Integer>::free(1))).unwrap();
    for _ in 0..8 {
        let (m, rank, torsion) = random_abelian_group(&mut rng, 4, 3, 60);
        let complex = FpComplex::single(0, m.clone());
        let dual = dualizer.dual(&complex);
        // H^0 is the dual of the free part
        let h0 = dual.cohomology(0).normal_form();
        assert_eq!(h0.free_rank, rank);
        assert!(h0.torsion.is_empty());
        // H^1 has the invariant factors of the torsion part
        let h1 = dual.cohomology(1).normal_form();
        assert_eq!(h1.free_rank, 0);
        let mut torsion_module = FpModule::<Integer>::zero();
        for &n in &torsion {
            torsion_module = torsion_module.direct_sum(&FpModule::cyclic(Integer::from_i64(n)));
        }
        assert_eq!(h1, torsion_module.normal_form());
        // biduality
        let b = dualizer.biduality(&complex);
        assert!(b.is_quasi_iso);
        assert_eq!(b.double_dual.cohomology(0).normal_form(), m.normal_form());
    }
}

#[test]
fn biduality_over_polynomials_on_random_complexes() {
    let mut rng = Rng::new(221);
    let dualizer = Dualizer::new(&FpComplex::single(0, FpModule::<RatPoly>::free(1))).unwrap();
    for _ in 0..4 {
        let m = random_fp_complex::<RatPoly>(&mut rng, 0, 1, 2, 2);
        let b = dualizer.biduality(&m);
        assert!(b.is_quasi_iso);
    }
}

#[test]
fn duality_is_shift_equivariant() {
    let mut rng = Rng::new(222);
    let dualizer = Dualizer::new(&FpComplex::single(0, FpModule::<Integer>::free(1))).unwrap();
    for _ in 0..5 {
        let m = random_fp_complex::<Integer>(&mut rng, 0, 1, 2, 4);
        let k = rng.int_in(-2, 2);
        let dual_of_shift = dualizer.dual(&m.shift(k));
        let shift_of_dual = dualizer.dual(&m).shift(-k);
        for i in -3..=3 {
            assert_eq!(
                dual_of_shift.cohomology(i).normal_form(),
                shift_of_dual.cohomology(i).normal_form(),
                "degree {}",
                i
            );
        }
    }
}

#[test]
fn field_case_runs_through_the_generic_path() {
    use homolog_core::ring::Rational;
    // over a field every module is free; Ext and Tor vanish away from zero
    let v = FpComplex::single(0, FpModule::<Rational>::free(3));
    let w = FpComplex::single(0, FpModule::<Rational>::free(2));
    assert_eq!(ext(&v, &w, 0).normal_form().free_rank, 6);
    assert!(ext(&v, &w, 1).is_zero_module());
    assert_eq!(tor(&v, &w, 0).normal_form().free_rank, 6);
    assert!(tor(&v, &w, 1).is_zero_module());

    // shifted lines are dualizing and classified by their shift
    let unit = FpComplex::single(0, FpModule::<Rational>::free(1));
    for n in -2..=2 {
        let shifted = FpComplex::single(-n, FpModule::<Rational>::free(1));
        assert!(verify_dualizing(&shifted).is_dualizing);
        assert_eq!(classify_dualizing(&unit, &shifted).unwrap(), n);
    }
    let d = Dualizer::new(&unit).unwrap();
    let b = d.biduality(&v);
    assert!(b.is_quasi_iso && b.is_chain_iso);
    assert_eq!(b.dual.cohomology(0).normal_form().render(), "Q^3");
}

#[test]
fn classification_is_reflexively_zero() {
    for n in -2..=2 {
        let r = FpComplex::single(n, FpModule::<Integer>::free(1));
        assert_eq!(classify_dualizing(&r, &r).unwrap(), 0);
    }
    // and shifted torsion candidates are reported, not classified
    let r = FpComplex::single(0, FpModule::<Integer>::free(1));
    let bad = FpComplex::single(1, FpModule::cyclic(Integer::from_i64(4)));
    assert!(classify_dualizing(&r, &bad).is_err());
    assert!(!verify_dualizing(&bad).is_dualizing);
}
