//! Exact homological algebra over Euclidean domains.
//!
//! Everything in this crate is computed with exact arithmetic: arbitrary
//! precision integers, rationals, or univariate polynomials with rational
//! coefficients. There is no floating point anywhere.
//!
//! The layers, bottom up:
//!
//! * [`ring`] — the [`ring::EuclideanDomain`] trait and its three
//!   implementations ([`ring::Integer`], [`ring::RatPoly`], [`ring::Rational`]).
//! * [`matrix`] / [`snf`] — dense matrices and Smith normal form with
//!   tracked unimodular transforms; kernels, images and exact linear solving.
//! * [`fpmod`] — finitely presented modules, maps between them, kernels,
//!   cokernels, Hom and tensor, invariant-factor normal forms.
//! * [`complex`] — bounded cochain complexes of free modules: shift, cone,
//!   truncations, Hom/tensor totalizations, cohomology, homotopy solving.
//! * [`fpcomplex`] — bounded complexes of finitely presented modules.
//! * [`resolve`] — free resolutions and lifting through quasi-isomorphisms.
//! * [`derived`] — RHom, derived tensor, Ext, Tor, and the roof calculus for
//!   morphisms in the derived category.
//! * [`duality`] — dualizing complexes, the duality functor, biduality and
//!   classification up to shift.
//!
//! The crate is `no_std` compatible (with `alloc`); the default `std` feature
//! is only needed by downstream tooling.
//!
//! ```
//! use homolog_core::{ext, FpComplex, FpModule, Integer};
//!
//! let m = FpComplex::single(0, FpModule::cyclic(Integer::new(6)));
//! let n = FpComplex::single(0, FpModule::<Integer>::free(1));
//! assert_eq!(ext(&m, &n, 1).normal_form().render(), "Z/6");
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod checks;
pub mod complex;
pub mod corpus;
pub mod derived;
pub mod duality;
pub mod fpcomplex;
pub mod fpmod;
pub mod limits;
pub mod matrix;
pub mod resolve;
pub mod ring;
pub mod snf;

pub use complex::{ChainMap, Cone, FreeComplex, Homotopy, Turn};
pub use derived::{derived_hom_group, derived_tensor, ext, rhom, tor, Roof};
pub use duality::{classify_dualizing, verify_dualizing, Biduality, Dualizer, DualizingReport};
pub use fpcomplex::{FpChainMap, FpComplex};
pub use fpmod::{hom_module, tensor_module, FpModule, InvariantFactors, ModuleMap};
pub use matrix::Matrix;
pub use resolve::{free_resolution, lift_through_qis, Resolution};
pub use ring::{EuclideanDomain, Integer, RatPoly, Rational, RingKind};
pub use snf::SmithDecomposition;

/// Cohomological degree.
pub type Degree = i64;
