//! Quantum nets: assignment of MUB projectors to phase-space lines, and the
//! resulting phase-point operators.

use super::field::GaloisField;
use super::geometry::{build_striations, PhaseSpaceLine, Point};
use super::mub::mub_tables;
use crate::error::{Error, Result};
use crate::numerics::{herm_eigen, identity, projector, CMatrix, CVector};

#[derive(Debug, Clone)]
pub struct QuantumNet {
    pub n: usize,
    pub label: String,
    pub field: GaloisField,
    pub striations: Vec<Vec<PhaseSpaceLine>>,
    /// MUB table basis assigned to each striation.
    pub bases: Vec<usize>,
    /// `vectors[i][j]`: vector of basis `bases[i]` assigned to line j of striation i.
    pub vectors: Vec<Vec<usize>>,
    projectors: Vec<Vec<CMatrix>>,
    ops: Vec<CMatrix>,
}

#[derive(Debug, Clone)]
pub struct PhasePointOperator {
    pub alpha: Point,
    pub matrix: CMatrix,
    /// Descending.
    pub eigenvalues: Vec<f64>,
}

impl QuantumNet {
    pub fn from_assignment(
        n: usize,
        label: &str,
        bases: Vec<usize>,
        vectors: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let field = GaloisField::new(n)?;
        let tables = mub_tables(n)?;
        let bad = |msg: &str| Error::InvalidParameter(format!("net '{label}': {msg}"));
        if bases.len() != n + 1 || vectors.len() != n + 1 {
            return Err(bad("need one entry per striation"));
        }
        let mut sorted = bases.clone();
        sorted.sort_unstable();
        if sorted != (0..=n).collect::<Vec<_>>() {
            return Err(bad("each striation needs a distinct basis"));
        }
        for v in &vectors {
            let mut s = v.clone();
            s.sort_unstable();
            if s != (0..n).collect::<Vec<_>>() {
                return Err(bad("vectors within a striation must be a permutation"));
            }
        }
        let striations = build_striations(&field);
        let projectors: Vec<Vec<CMatrix>> = (0..=n)
            .map(|i| {
                (0..n)
                    .map(|j| projector(&tables[bases[i]][vectors[i][j]]))
                    .collect()
            })
            .collect();
        let mut net = Self {
            n,
            label: label.to_string(),
            field,
            striations,
            bases,
            vectors,
            projectors,
            ops: Vec::new(),
        };
        net.ops = (0..n * n)
            .map(|k| net.build_operator((k / n, k % n)))
            .collect();
        Ok(net)
    }

    /// The default net for each dimension. For N = 4 its DWF reproduces the
    /// standard sixteen two-qubit closed forms; for N = 2, 3 likewise for the
    /// Bloch/Gell-Mann closed forms.
    pub fn canonical(n: usize) -> Result<Self> {
        let (bases, vectors) = match n {
            2 => (vec![1, 0, 2], vec![vec![1, 0], vec![1, 0], vec![1, 0]]),
            3 => (
                vec![1, 0, 2, 3],
                vec![vec![2, 1, 0], vec![0, 1, 2], vec![2, 0, 1], vec![2, 1, 0]],
            ),
            4 => (
                vec![1, 0, 2, 4, 3],
                vec![
                    vec![3, 2, 1, 0],
                    vec![0, 1, 2, 3],
                    vec![3, 2, 1, 0],
                    vec![3, 0, 2, 1],
                    vec![3, 1, 0, 2],
                ],
            ),
            _ => return Err(Error::UnsupportedDimension(n)),
        };
        Self::from_assignment(n, "canonical", bases, vectors)
    }

    /// Two-qubit net whose origin operator has the most negative spectrum
    /// (−0.8968, −0.1420, 0.2787, 1.7601). Obtained from the canonical net by
    /// relabeling vectors inside each basis.
    pub fn two_qubit_ns1() -> Result<Self> {
        let canon = Self::canonical(4)?;
        let swap = |v: usize, a: usize, b: usize| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        };
        let vectors = canon
            .vectors
            .iter()
            .zip(&canon.bases)
            .map(|(row, &basis)| {
                row.iter()
                    .map(|&v| {
                        if basis == 0 {
                            swap(v, 0, 2)
                        } else {
                            swap(v, 1, 3)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_assignment(4, "ns1", canon.bases.clone(), vectors)
    }

    pub fn by_label(n: usize, label: &str) -> Result<Self> {
        match (n, label) {
            (_, "canonical") => Self::canonical(n),
            (4, "ns1") => Self::two_qubit_ns1(),
            _ => Err(Error::UnknownLabel {
                kind: "net",
                label: label.to_string(),
                valid: if n == 4 {
                    "canonical, ns1"
                } else {
                    "canonical"
                }
                .to_string(),
            }),
        }
    }

    pub fn projector(&self, striation: usize, line: usize) -> &CMatrix {
        &self.projectors[striation][line]
    }

    pub fn line(&self, striation: usize, line: usize) -> &PhaseSpaceLine {
        &self.striations[striation][line]
    }

    pub fn lines_through(&self, alpha: Point) -> impl Iterator<Item = &PhaseSpaceLine> {
        self.striations
            .iter()
            .map(move |s| s.iter().find(|l| l.contains(alpha)).unwrap())
    }

    fn build_operator(&self, alpha: Point) -> CMatrix {
        let mut a = -identity(self.n);
        for l in self.lines_through(alpha) {
            a += &self.projectors[l.striation][l.index];
        }
        // exact Hermitian symmetrization removes rounding asymmetry
        (&a + a.adjoint()) * crate::numerics::r(0.5)
    }

    /// Operator matrix at grid point (q, p).
    pub fn operator_matrix(&self, alpha: Point) -> &CMatrix {
        &self.ops[alpha.0 * self.n + alpha.1]
    }

    /// All grid points in row-major (q, p) order.
    pub fn points(&self) -> Vec<Point> {
        (0..self.n)
            .flat_map(|q| (0..self.n).map(move |p| (q, p)))
            .collect()
    }

    pub fn basis_vector(&self, striation: usize, line: usize) -> CVector {
        mub_tables(self.n).unwrap()[self.bases[striation]][self.vectors[striation][line]].clone()
    }
}

pub fn phase_point_operator(net: &QuantumNet, alpha: Point) -> Result<PhasePointOperator> {
    if alpha.0 >= net.n || alpha.1 >= net.n {
        return Err(Error::InvalidParameter(format!(
            "point {alpha:?} outside the {0}×{0} grid",
            net.n
        )));
    }
    let matrix = net.operator_matrix(alpha).clone();
    let eigenvalues = herm_eigen(&matrix)?.values;
    Ok(PhasePointOperator {
        alpha,
        matrix,
        eigenvalues,
    })
}
