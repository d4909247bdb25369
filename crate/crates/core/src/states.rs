//! State constructors: Bell states, Bloch-form negative states, the
//! two-qubit negative states, and the local/correlation decomposition.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{
    c, herm_eigen, identity, pauli_x, pauli_y, pauli_z, paulis, r, tensor, trace, CMatrix,
    DensityMatrix, PureState, C64,
};
use crate::phase_space::{PhasePointOperator, QuantumNet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell(which: BellState) -> PureState {
    let h = 0.5f64.sqrt();
    let (o, l) = (r(0.0), r(h));
    let amps = match which {
        BellState::PhiPlus => [l, o, o, l],
        BellState::PhiMinus => [l, o, o, -l],
        BellState::PsiPlus => [o, l, l, o],
        BellState::PsiMinus => [o, l, -l, o],
    };
    PureState::from_slice(&amps).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoQubitNs {
    Ns1,
    Ns2,
    Ns3,
    /// NS3′
    Ns3p,
    /// NS3″
    Ns3pp,
}

/// The rounded amplitude vectors of the five two-qubit negative states,
/// renormalized. Exact versions come from [`ns_from_operator`].
pub fn two_qubit_negative(which: TwoQubitNs) -> PureState {
    let i = c(0.0, 1.0);
    let amps: [C64; 4] = match which {
        TwoQubitNs::Ns1 => [
            r(-0.743),
            (r(1.0) - i) * -0.357,
            (r(1.0) + i) * 0.102,
            r(-0.414),
        ],
        TwoQubitNs::Ns2 => [
            r(0.788),
            (r(1.0) - i) * -0.288,
            (r(1.0) + i) * -0.288,
            r(-0.211),
        ],
        TwoQubitNs::Ns3 => {
            let l = 0.0508;
            [r(-l), c(0.631, -0.228), c(-0.279, -0.682), r(l)]
        }
        TwoQubitNs::Ns3p => {
            let x = 0.575;
            [r(-x), c(-0.346, 0.310), c(-0.265, -0.229), r(x)]
        }
        TwoQubitNs::Ns3pp => {
            let k = 0.5f64.sqrt();
            [r(0.0), i * k, r(k), r(0.0)]
        }
    };
    PureState::from_slice(&amps).unwrap()
}

/// Eigenvector of the `rank`-th most negative eigenvalue (rank starts at 1),
/// phase-canonicalized.
pub fn ns_from_operator(a: &PhasePointOperator, rank: usize) -> Result<PureState> {
    let e = herm_eigen(&a.matrix)?;
    let negatives: Vec<usize> = (0..e.values.len())
        .rev()
        .filter(|&k| e.values[k] < -1e-12)
        .collect();
    if rank == 0 || rank > negatives.len() {
        return Err(Error::InsufficientNegatives {
            requested: rank,
            available: negatives.len(),
        });
    }
    PureState::normalized(e.vector(negatives[rank - 1]))
}

/// Projector onto the eigenspace of `a` belonging to eigenvalue `value`.
pub fn eigenspace_projector(a: &PhasePointOperator, value: f64, tol: f64) -> Result<CMatrix> {
    let e = herm_eigen(&a.matrix)?;
    let n = a.matrix.nrows();
    let mut p = CMatrix::zeros(n, n);
    for (k, &l) in e.values.iter().enumerate() {
        if (l - value).abs() <= tol {
            let v = e.vectors.column(k);
            p += &v * v.adjoint();
        }
    }
    Ok(p)
}

/// ρ = ½(I + a·σ).
pub fn bloch_qubit(a: [f64; 3]) -> Result<DensityMatrix> {
    let n2: f64 = a.iter().map(|x| x * x).sum();
    if n2 > 1.0 + 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "Bloch vector length² {n2} exceeds 1"
        )));
    }
    let m =
        (identity(2) + pauli_x() * r(a[0]) + pauli_y() * r(a[1]) + pauli_z() * r(a[2])) * r(0.5);
    DensityMatrix::new(m)
}

/// Qubit state with the rounded Bloch components (0.50, 0.56, −0.66).
pub fn negative_qubit() -> DensityMatrix {
    bloch_qubit([0.50, 0.56, -0.66]).unwrap()
}

/// Gell-Mann matrices λ₁ … λ₈.
pub fn gell_mann() -> [CMatrix; 8] {
    let z = || CMatrix::zeros(3, 3);
    let i = c(0.0, 1.0);
    let mut l: [CMatrix; 8] = std::array::from_fn(|_| z());
    l[0][(0, 1)] = r(1.0);
    l[0][(1, 0)] = r(1.0);
    l[1][(0, 1)] = -i;
    l[1][(1, 0)] = i;
    l[2][(0, 0)] = r(1.0);
    l[2][(1, 1)] = r(-1.0);
    l[3][(0, 2)] = r(1.0);
    l[3][(2, 0)] = r(1.0);
    l[4][(0, 2)] = -i;
    l[4][(2, 0)] = i;
    l[5][(1, 2)] = r(1.0);
    l[5][(2, 1)] = r(1.0);
    l[6][(1, 2)] = -i;
    l[6][(2, 1)] = i;
    let s = 1.0 / 3f64.sqrt();
    l[7][(0, 0)] = r(s);
    l[7][(1, 1)] = r(s);
    l[7][(2, 2)] = r(-2.0 * s);
    l
}

/// (1/3)(I + √3 n·λ). Hermitian with unit trace; not necessarily PSD.
pub fn qutrit_from_gell_mann(n: [f64; 8]) -> CMatrix {
    let l = gell_mann();
    let mut m = identity(3);
    for k in 0..8 {
        m += &l[k] * r(3f64.sqrt() * n[k]);
    }
    m / r(3.0)
}

/// Gell-Mann coefficients of a qutrit matrix, n_k = Tr(ρ λ_k)·√3/2.
pub fn gell_mann_components(rho: &CMatrix) -> [f64; 8] {
    let l = gell_mann();
    std::array::from_fn(|k| trace(&(rho * &l[k])).re * 3f64.sqrt() / 2.0)
}

pub const NEGATIVE_QUTRIT_N: [f64; 8] = [0.0, 0.0, -0.5, 0.0, 0.0, 0.4, 0.7, -0.3];

/// Qutrit negative state from the rounded Gell-Mann vector. The rounding
/// leaves one eigenvalue near −0.055, so the matrix is projected onto the
/// nearest density matrix (negative eigenvalues clipped, trace restored).
pub fn negative_qutrit() -> DensityMatrix {
    let raw = qutrit_from_gell_mann(NEGATIVE_QUTRIT_N);
    let clipped = crate::numerics::herm_map(&raw, |x| x.max(0.0)).unwrap();
    DensityMatrix::from_unnormalized(clipped).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QutritNs {
    Ns1,
    Ns2,
}

/// Exact qutrit negative states of the canonical qutrit net: NS1 is the
/// eigenvector of −1 at the origin, NS2 the eigenvector of (1−√5)/2 at (0, 1).
pub fn qutrit_negative(which: QutritNs) -> PureState {
    let net = QuantumNet::canonical(3).unwrap();
    let alpha = match which {
        QutritNs::Ns1 => (0, 0),
        QutritNs::Ns2 => (0, 1),
    };
    let op = crate::phase_space::phase_point_operator(&net, alpha).unwrap();
    ns_from_operator(&op, 1).unwrap()
}

/// Exact qubit negative state: eigenvector of (1−√3)/2 at the origin of the
/// canonical qubit net.
pub fn qubit_negative_exact() -> PureState {
    let net = QuantumNet::canonical(2).unwrap();
    let op = crate::phase_space::phase_point_operator(&net, (0, 0)).unwrap();
    ns_from_operator(&op, 1).unwrap()
}

/// ρ = ¼(I⊗I + a·σ⊗I + I⊗s·σ + Σ t_ij σ_i⊗σ_j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDecomposition {
    pub a: [f64; 3],
    pub s: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl TwoQubitDecomposition {
    pub fn reassemble(&self) -> CMatrix {
        let p = paulis();
        let i2 = identity(2);
        let mut m = identity(4);
        for k in 0..3 {
            m += tensor(&p[k], &i2) * r(self.a[k]);
            m += tensor(&i2, &p[k]) * r(self.s[k]);
            for j in 0..3 {
                m += tensor(&p[k], &p[j]) * r(self.t[k][j]);
            }
        }
        m * r(0.25)
    }
}

pub fn decompose_matrix(m: &CMatrix) -> Result<TwoQubitDecomposition> {
    if m.nrows() != 4 || m.ncols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: m.nrows(),
        });
    }
    let p = paulis();
    let i2 = identity(2);
    let tr = |o: CMatrix| trace(&(m * o)).re;
    Ok(TwoQubitDecomposition {
        a: std::array::from_fn(|k| tr(tensor(&p[k], &i2))),
        s: std::array::from_fn(|k| tr(tensor(&i2, &p[k]))),
        t: std::array::from_fn(|k| std::array::from_fn(|j| tr(tensor(&p[k], &p[j])))),
    })
}

pub fn decompose_two_qubit(rho: &DensityMatrix) -> Result<TwoQubitDecomposition> {
    decompose_matrix(rho.matrix())
}

/// Labels accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateLabel {
    TwoQubit(TwoQubitNs),
    Bell(BellState),
    QubitNs1,
    QutritNs1,
    QutritNs2,
    Mixed(usize),
}

impl StateLabel {
    pub const ALL: [&'static str; 15] = [
        "ns1",
        "ns2",
        "ns3",
        "ns3p",
        "ns3pp",
        "phi+",
        "phi-",
        "psi+",
        "psi-",
        "qubit-ns1",
        "qutrit-ns1",
        "qutrit-ns2",
        "mixed2",
        "mixed3",
        "mixed4",
    ];

    pub fn density(&self) -> DensityMatrix {
        match *self {
            StateLabel::TwoQubit(w) => two_qubit_negative(w).density(),
            StateLabel::Bell(b) => bell(b).density(),
            StateLabel::QubitNs1 => negative_qubit(),
            StateLabel::QutritNs1 => qutrit_negative(QutritNs::Ns1).density(),
            StateLabel::QutritNs2 => qutrit_negative(QutritNs::Ns2).density(),
            StateLabel::Mixed(d) => DensityMatrix::maximally_mixed(d),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            StateLabel::QubitNs1 | StateLabel::Mixed(2) => 2,
            StateLabel::QutritNs1 | StateLabel::QutritNs2 | StateLabel::Mixed(3) => 3,
            _ => 4,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dim() == 4
    }

    /// Filter strengths (p, q) at which each two-qubit state is evaluated
    /// when protection is on.
    pub fn reference_pq(&self) -> Option<(f64, f64)> {
        match *self {
            StateLabel::TwoQubit(TwoQubitNs::Ns1) => Some((0.17, 0.54)),
            StateLabel::TwoQubit(TwoQubitNs::Ns2) => Some((0.05, 0.74)),
            StateLabel::TwoQubit(TwoQubitNs::Ns3 | TwoQubitNs::Ns3p) => Some((0.05, 0.05)),
            StateLabel::Bell(_) => Some((0.01, 0.01)),
            _ => None,
        }
    }
}

impl FromStr for StateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "ns1" => StateLabel::TwoQubit(TwoQubitNs::Ns1),
            "ns2" => StateLabel::TwoQubit(TwoQubitNs::Ns2),
            "ns3" => StateLabel::TwoQubit(TwoQubitNs::Ns3),
            "ns3p" => StateLabel::TwoQubit(TwoQubitNs::Ns3p),
            "ns3pp" => StateLabel::TwoQubit(TwoQubitNs::Ns3pp),
            "phi+" => StateLabel::Bell(BellState::PhiPlus),
            "phi-" => StateLabel::Bell(BellState::PhiMinus),
            "psi+" => StateLabel::Bell(BellState::PsiPlus),
            "psi-" => StateLabel::Bell(BellState::PsiMinus),
            "qubit-ns1" => StateLabel::QubitNs1,
            "qutrit-ns1" => StateLabel::QutritNs1,
            "qutrit-ns2" => StateLabel::QutritNs2,
            "mixed2" => StateLabel::Mixed(2),
            "mixed3" => StateLabel::Mixed(3),
            "mixed4" => StateLabel::Mixed(4),
            _ => {
                return Err(Error::UnknownLabel {
                    kind: "state",
                    label: s.to_string(),
                    valid: Self::ALL.join(", "),
                })
            }
        })
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match *self {
            StateLabel::TwoQubit(TwoQubitNs::Ns1) => "ns1",
            StateLabel::TwoQubit(TwoQubitNs::Ns2) => "ns2",
            StateLabel::TwoQubit(TwoQubitNs::Ns3) => "ns3",
            StateLabel::TwoQubit(TwoQubitNs::Ns3p) => "ns3p",
            StateLabel::TwoQubit(TwoQubitNs::Ns3pp) => "ns3pp",
            StateLabel::Bell(BellState::PhiPlus) => "phi+",
            StateLabel::Bell(BellState::PhiMinus) => "phi-",
            StateLabel::Bell(BellState::PsiPlus) => "psi+",
            StateLabel::Bell(BellState::PsiMinus) => "psi-",
            StateLabel::QubitNs1 => "qubit-ns1",
            StateLabel::QutritNs1 => "qutrit-ns1",
            StateLabel::QutritNs2 => "qutrit-ns2",
            StateLabel::Mixed(2) => "mixed2",
            StateLabel::Mixed(3) => "mixed3",
            StateLabel::Mixed(_) => "mixed4",
        };
        f.write_str(s)
    }
}

/// CSV with header `re,im`, one amplitude per row.
pub fn state_to_csv(psi: &PureState) -> String {
    let mut s = String::from("re,im\n");
    for z in psi.amplitudes().iter() {
        s.push_str(&format!("{},{}\n", z.re, z.im));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_vectors() {
        let h = 0.5f64.sqrt();
        let phi = bell(BellState::PhiPlus);
        assert!((phi.amplitudes()[3] - r(h)).norm() < 1e-15);
        let psi = bell(BellState::PsiMinus);
        assert!((psi.amplitudes()[2] - r(-h)).norm() < 1e-15);
    }

    #[test]
    fn labels_round_trip() {
        for s in StateLabel::ALL {
            assert_eq!(s.parse::<StateLabel>().unwrap().to_string(), s);
        }
        let err = "ns9".parse::<StateLabel>().unwrap_err().to_string();
        assert!(err.contains("ns3pp"));
    }

    #[test]
    fn ns3pp_exact() {
        let k = 0.5f64.sqrt();
        let v = two_qubit_negative(TwoQubitNs::Ns3pp);
        assert!((v.amplitudes()[1] - c(0.0, k)).norm() < 1e-15);
        assert!((v.amplitudes()[2] - r(k)).norm() < 1e-15);
    }

    #[test]
    fn qubit_bloch_norm() {
        let n = (0.5f64 * 0.5 + 0.56 * 0.56 + 0.66 * 0.66).sqrt();
        assert!((n - 1.0).abs() < 2e-2);
        assert!((trace(negative_qubit().matrix()).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_long_bloch_vector() {
        assert!(bloch_qubit([1.0, 1.0, 0.0]).is_err());
    }
}
