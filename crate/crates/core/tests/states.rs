mod common;

use common::arb_state;
use nqs_core::numerics::max_abs_diff;
use nqs_core::phase_space::{
    depolarizing_robustness, mana, phase_point_operator, wigner_negativity, QuantumNet,
};
use nqs_core::states::{
    decompose_two_qubit, ns_from_operator, qubit_negative_exact, qutrit_negative,
    two_qubit_negative, QutritNs, StateLabel, TwoQubitNs,
};
use proptest::prelude::*;

#[test]
fn tabulated_ns1_is_the_most_negative_eigenvector() {
    let net = QuantumNet::two_qubit_ns1().unwrap();
    let op = phase_point_operator(&net, (0, 0)).unwrap();
    let exact = ns_from_operator(&op, 1).unwrap();
    let table = two_qubit_negative(TwoQubitNs::Ns1);
    let overlap = exact.amplitudes().dotc(table.amplitudes()).norm();
    assert!(overlap > 0.999, "{overlap}");
    let e = (exact.amplitudes().adjoint() * &op.matrix * exact.amplitudes())[(0, 0)].re;
    assert!((e + 0.8968).abs() < 1e-3);
}

#[test]
fn rank_beyond_negatives_is_rejected() {
    let net = QuantumNet::two_qubit_ns1().unwrap();
    let op = phase_point_operator(&net, (0, 0)).unwrap();
    assert!(ns_from_operator(&op, 3).is_err());
}

#[test]
fn qubit_resources() {
    let net = QuantumNet::canonical(2).unwrap();
    let rho = qubit_negative_exact().density();
    let neg = wigner_negativity(&rho, &net).unwrap();
    assert!((neg - (3f64.sqrt() - 1.0) / 2.0).abs() < 1e-9);
    let exact = (3f64.sqrt() - 1.0) / 2.0;
    let want = 1.0 - 1.0 / (4.0 * exact + 1.0);
    assert!((depolarizing_robustness(&rho, &net).unwrap() - want).abs() < 1e-9);
}

#[test]
fn qutrit_mana_ordering() {
    let net = QuantumNet::canonical(3).unwrap();
    let m1 = mana(&qutrit_negative(QutritNs::Ns1).density(), &net).unwrap();
    let m2 = mana(&qutrit_negative(QutritNs::Ns2).density(), &net).unwrap();
    assert!(m1 > m2 && m2 > 0.0, "{m1} {m2}");
}

#[test]
fn labels_round_trip() {
    for s in StateLabel::ALL {
        let l: StateLabel = s.parse().unwrap();
        assert_eq!(l.to_string(), s);
        let rho = l.density();
        assert_eq!(rho.dim(), l.dim());
    }
    let err = "bogus".parse::<StateLabel>().unwrap_err().to_string();
    assert!(err.contains("ns3pp") && err.contains("phi+"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_reassembles(rho in arb_state(4)) {
        let d = decompose_two_qubit(&rho).unwrap();
        prop_assert!(max_abs_diff(&d.reassemble(), rho.matrix()) < 1e-12);
    }

    #[test]
    fn product_states_decompose_as_products(a in arb_state(2), b in arb_state(2)) {
        let rho = a.tensor(&b);
        let d = decompose_two_qubit(&rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((d.t[i][j] - d.a[i] * d.s[j]).abs() < 1e-12);
            }
        }
    }
}
