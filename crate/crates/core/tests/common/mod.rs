#![allow(dead_code)]

use nqs_core::numerics::{c, CMatrix, CVector, DensityMatrix, PureState};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// ρ = GG†/Tr from a dense complex G (full rank almost surely).
pub fn state_from(entries: &[f64], d: usize) -> DensityMatrix {
    let g = CMatrix::from_fn(d, d, |i, j| {
        let k = 2 * (i * d + j);
        c(entries[k], entries[k + 1])
    });
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr).unwrap()
}

pub fn arb_state(d: usize) -> impl Strategy<Value = DensityMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * d * d)
        .prop_filter("degenerate", |v| v.iter().any(|x| x.abs() > 1e-3))
        .prop_map(move |v| state_from(&v, d))
}

pub fn arb_pure(d: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec(-1.0f64..1.0, 2 * d)
        .prop_filter("zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(move |v| {
            PureState::normalized(CVector::from_fn(d, |i, _| c(v[2 * i], v[2 * i + 1]))).unwrap()
        })
}

pub fn random_state(rng: &mut ChaCha8Rng, d: usize) -> DensityMatrix {
    let v: Vec<f64> = (0..2 * d * d)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    state_from(&v, d)
}

pub fn random_pure(rng: &mut ChaCha8Rng, d: usize) -> PureState {
    let v = CVector::from_fn(d, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    PureState::normalized(v).unwrap()
}
