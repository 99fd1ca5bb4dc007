//! Shared fixtures for the integration tests.

#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeSet;

use cubic_selmer::curve_local::CurveModel;
use cubic_selmer::exact_arith::is_squarefree;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SIZE: usize = 200;
pub const CORPUS_SEED: u64 = 0x5e1_3e7;
pub const COEFF_BOUND: i64 = 20;

/// Distinct monic irreducible cubics `x^3 + a2 x^2 + a1 x + a0` with
/// `|a_i| ≤ 20` and squarefree discriminant, drawn from a fixed seed.
pub fn corpus() -> Vec<CurveModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    while out.len() < CORPUS_SIZE {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND));
        if !seen.insert(c) {
            continue;
        }
        let e = CurveModel::from_coeffs(c[0], c[1], c[2]).expect("monic cubic");
        let disc = e.disc_f();
        if e.rational_two_torsion().is_some() || disc.is_zero() {
            continue;
        }
        if is_squarefree(&disc).expect("small discriminant") {
            out.push(e);
        }
    }
    out
}

pub fn curve(a2: i64, a1: i64, a0: i64) -> CurveModel {
    CurveModel::from_coeffs(a2, a1, a0).expect("monic cubic")
}
