mod common;

use common::{arb_state, random_state};
use nqs_core::numerics::{identity, max_abs_diff, r, trace, DensityMatrix};
use nqs_core::phase_space::{
    dwf, mana, phase_point_operator, reconstruct, wigner_negativity, QuantumNet,
};
use nqs_core::states::decompose_two_qubit;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// W_ij = (expression)/16 in terms of the Pauli coefficients of ρ,
/// row-major over the 4×4 grid.
const CLOSED_FORMS: [&str; 16] = [
    "1 - a1 - a2 + a3 - s1 + s2 + s3 + t11 - t12 - t13 + t21 - t22 - t23 - t31 + t32 + t33",
    "1 - a1 - a2 + a3 - s1 - s2 - s3 + t11 + t12 + t13 + t21 + t22 + t23 - t31 - t32 - t33",
    "1 - a1 + a2 - a3 - s1 + s2 + s3 + t11 - t12 - t13 - t21 + t22 + t23 + t31 - t32 - t33",
    "1 - a1 + a2 - a3 - s1 - s2 - s3 + t11 + t12 + t13 - t21 - t22 - t23 + t31 + t32 + t33",
    "1 - a1 - a2 + a3 + s1 - s2 + s3 - t11 + t12 - t13 - t21 + t22 - t23 + t31 - t32 + t33",
    "1 - a1 - a2 + a3 + s1 + s2 - s3 - t11 - t12 + t13 - t21 - t22 + t23 + t31 + t32 - t33",
    "1 - a1 + a2 - a3 + s1 - s2 + s3 - t11 + t12 - t13 + t21 - t22 + t23 - t31 + t32 - t33",
    "1 - a1 + a2 - a3 + s1 + s2 - s3 - t11 - t12 + t13 + t21 + t22 - t23 - t31 - t32 + t33",
    "1 + a1 + a2 + a3 - s1 + s2 + s3 - t11 + t12 + t13 - t21 + t22 + t23 - t31 + t32 + t33",
    "1 + a1 + a2 + a3 - s1 - s2 - s3 - t11 - t12 - t13 - t21 - t22 - t23 - t31 - t32 - t33",
    "1 + a1 - a2 - a3 - s1 + s2 + s3 - t11 + t12 + t13 + t21 - t22 - t23 + t31 - t32 - t33",
    "1 + a1 - a2 - a3 - s1 - s2 - s3 - t11 - t12 - t13 + t21 + t22 + t23 + t31 + t32 + t33",
    "1 + a1 + a2 + a3 + s1 - s2 + s3 + t11 - t12 + t13 + t21 - t22 + t23 + t31 - t32 + t33",
    "1 + a1 + a2 + a3 + s1 + s2 - s3 + t11 + t12 - t13 + t21 + t22 - t23 + t31 + t32 - t33",
    "1 + a1 - a2 - a3 + s1 - s2 + s3 + t11 - t12 + t13 - t21 + t22 - t23 - t31 + t32 - t33",
    "1 + a1 - a2 - a3 + s1 + s2 - s3 + t11 + t12 - t13 - t21 - t22 + t23 - t31 - t32 + t33",
];

const NAMES: [&str; 15] = [
    "a1", "a2", "a3", "s1", "s2", "s3", "t11", "t12", "t13", "t21", "t22", "t23", "t31", "t32",
    "t33",
];

fn closed_form(k: usize, x: &[f64; 15]) -> f64 {
    let toks: Vec<&str> = CLOSED_FORMS[k].split_whitespace().collect();
    assert_eq!(toks[0], "1");
    let mut s = 1.0;
    let mut seen = 0;
    for pair in toks[1..].chunks(2) {
        let sign = if pair[0] == "+" { 1.0 } else { -1.0 };
        let i = NAMES.iter().position(|n| *n == pair[1]).unwrap();
        s += sign * x[i];
        seen += 1;
    }
    assert_eq!(seen, 15);
    s / 16.0
}

fn coefficients(rho: &DensityMatrix) -> [f64; 15] {
    let d = decompose_two_qubit(rho).unwrap();
    let mut x = [0.0; 15];
    x[..3].copy_from_slice(&d.a);
    x[3..6].copy_from_slice(&d.s);
    for i in 0..3 {
        x[6 + 3 * i..9 + 3 * i].copy_from_slice(&d.t[i]);
    }
    x
}

#[test]
fn two_qubit_closed_forms() {
    let net = QuantumNet::canonical(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let rho = random_state(&mut rng, 4);
        let g = dwf(&rho, &net).unwrap();
        let x = coefficients(&rho);
        for (k, &w) in g.values.iter().enumerate() {
            assert!((w - closed_form(k, &x)).abs() < 1e-10, "cell {k}");
        }
        assert!((g.sum() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn qubit_and_qutrit_normalization() {
    for n in [2, 3, 4] {
        let net = QuantumNet::canonical(n).unwrap();
        let mut sum = nqs_core::numerics::CMatrix::zeros(n, n);
        for a in net.points() {
            let m = net.operator_matrix(a);
            assert!((trace(m) - r(1.0)).norm() < 1e-12);
            sum += m;
            for b in net.points() {
                let g = trace(&(m * net.operator_matrix(b))).re;
                let want = if a == b { n as f64 } else { 0.0 };
                assert!((g - want).abs() < 1e-10);
            }
        }
        assert!(max_abs_diff(&sum, &(identity(n) * r(n as f64))) < 1e-10);
    }
}

#[test]
fn ns1_net_spectra() {
    let net = QuantumNet::two_qubit_ns1().unwrap();
    let op = phase_point_operator(&net, (0, 0)).unwrap();
    let want = [1.7601, 0.2787, -0.1420, -0.8968];
    for (a, b) in op.eigenvalues.iter().zip(want) {
        assert!((a - b).abs() < 1e-3);
    }
}

#[test]
fn maximally_mixed_is_flat_and_free() {
    for n in [2, 3, 4] {
        let net = QuantumNet::canonical(n).unwrap();
        let rho = DensityMatrix::maximally_mixed(n);
        let g = dwf(&rho, &net).unwrap();
        for &w in &g.values {
            assert!((w - 1.0 / (n * n) as f64).abs() < 1e-14);
        }
        assert_eq!(mana(&rho, &net).unwrap(), 0.0);
        assert_eq!(wigner_negativity(&rho, &net).unwrap(), 0.0);
    }
}

#[test]
fn net_labels() {
    assert!(QuantumNet::by_label(4, "ns1").is_ok());
    let err = QuantumNet::by_label(3, "ns1").unwrap_err().to_string();
    assert!(err.contains("canonical"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dwf_round_trip_qubit(rho in arb_state(2)) {
        let net = QuantumNet::canonical(2).unwrap();
        let back = reconstruct(&dwf(&rho, &net).unwrap(), &net).unwrap();
        prop_assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-10);
    }

    #[test]
    fn dwf_round_trip_qutrit(rho in arb_state(3)) {
        let net = QuantumNet::canonical(3).unwrap();
        let back = reconstruct(&dwf(&rho, &net).unwrap(), &net).unwrap();
        prop_assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-10);
    }

    #[test]
    fn dwf_round_trip_two_qubit(rho in arb_state(4), ns1 in any::<bool>()) {
        let net = if ns1 { QuantumNet::two_qubit_ns1() } else { QuantumNet::canonical(4) }.unwrap();
        let g = dwf(&rho, &net).unwrap();
        prop_assert!((g.sum() - 1.0).abs() < 1e-10);
        let back = reconstruct(&g, &net).unwrap();
        prop_assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-10);
    }

    /// Every line sum is a probability: ⟨ψ|ρ|ψ⟩ for the line's basis vector.
    #[test]
    fn line_sums_are_probabilities(rho in arb_state(4)) {
        let net = QuantumNet::canonical(4).unwrap();
        let g = dwf(&rho, &net).unwrap();
        for s in 0..5 {
            let mut tot = 0.0;
            for l in 0..4 {
                let v = g.line_sum(net.line(s, l));
                let want = trace(&(net.projector(s, l) * rho.matrix())).re;
                prop_assert!((v - want).abs() < 1e-10);
                tot += v;
            }
            prop_assert!((tot - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn mana_vanishes_iff_nonnegative(rho in arb_state(3)) {
        let net = QuantumNet::canonical(3).unwrap();
        let g = dwf(&rho, &net).unwrap();
        let m = mana(&rho, &net).unwrap();
        prop_assert!(m >= 0.0);
        prop_assert_eq!(m == 0.0, g.min() >= 0.0);
    }
}
