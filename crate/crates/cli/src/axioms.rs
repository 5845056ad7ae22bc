//! The seeded axiom property suites behind `axioms-check`: contractibility of
//! identity cones, long exact sequences of standard triangles, the turning
//! certificates, and the cocycle/chain-map correspondence. One seed pins the
//! whole run; trials are generated and reported in index order.

use homolog_core::checks::{
    cocycle_chain_map_correspondence, cone_of_identity_contracts, long_exact_sequence_holds,
    turning_certificates_hold,
};
use homolog_core::corpus::{random_chain_map, random_free_complex, Rng};
use serde_json::{json, Value};

use crate::entry::JsonRing;

pub const SUITES: &[&str] = &[
    "cone-of-identity",
    "long-exact-sequence",
    "turning",
    "cocycle-bijection",
];

pub struct Outcome {
    pub seed: u64,
    pub trials: u32,
    pub passed: [u32; 4],
    pub failures: Vec<(u32, &'static str)>,
    pub all_passed: bool,
}

pub fn run_suites<R: JsonRing>(seed: u64, trials: u32) -> Outcome {
    let mut rng = Rng::new(seed);
    let mut passed = [0u32; 4];
    let mut failures = Vec::new();
    for trial in 0..trials {
        // bounded complexes over four degrees, ranks at most 3, entries in [-5, 5]
        let l = random_free_complex::<R>(&mut rng, -2, 1, 3, 5);
        let m = random_free_complex::<R>(&mut rng, -2, 1, 3, 5);
        let alpha = random_chain_map(&mut rng, &l, &m, 2);
        let results = [
            cone_of_identity_contracts(&l),
            long_exact_sequence_holds(&alpha),
            turning_certificates_hold(&alpha),
            cocycle_chain_map_correspondence(&l, &m),
        ];
        for (k, ok) in results.into_iter().enumerate() {
            if ok {
                passed[k] += 1;
            } else {
                failures.push((trial, SUITES[k]));
            }
        }
    }
    Outcome {
        seed,
        trials,
        passed,
        all_passed: failures.is_empty(),
        failures,
    }
}

impl Outcome {
    pub fn to_value(&self) -> Value {
        let suites: Vec<Value> = SUITES
            .iter()
            .enumerate()
            .map(|(k, name)| {
                json!({"suite": name, "passed": self.passed[k], "trials": self.trials})
            })
            .collect();
        json!({
            "seed": self.seed,
            "trials": self.trials,
            "suites": suites,
            "all_passed": self.all_passed,
        })
    }

    pub fn pretty_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("seed: {}, trials: {}", self.seed, self.trials)];
        for (k, name) in SUITES.iter().enumerate() {
            lines.push(format!("{name}: {}/{} passed", self.passed[k], self.trials));
        }
        lines.push(format!("all passed: {}", self.all_passed));
        lines
    }

    pub fn summary(&self) -> String {
        self.failures
            .iter()
            .map(|(trial, suite)| format!("trial {trial}: {suite}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}
