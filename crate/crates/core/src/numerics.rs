//! Small dense complex linear algebra: Kronecker products, partial traces,
//! Hermitian eigensystems and PSD square roots.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Clamp threshold for tiny negative eigenvalues in PSD checks.
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues below this are a hard PSD violation.
pub const PSD_HARD: f64 = 1e-8;

pub const HERMITIAN_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn diag(d: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(d))
}

pub fn diag_real(d: &[f64]) -> CMatrix {
    CMatrix::from_fn(
        d.len(),
        d.len(),
        |i, j| if i == j { r(d[i]) } else { r(0.0) },
    )
}

/// Build a matrix from row-major entries.
pub fn from_rows(n: usize, m: usize, entries: &[C64]) -> CMatrix {
    assert_eq!(entries.len(), n * m);
    CMatrix::from_row_slice(n, m, entries)
}

pub fn pauli_x() -> CMatrix {
    from_rows(2, 2, &[r(0.0), r(1.0), r(1.0), r(0.0)])
}

pub fn pauli_y() -> CMatrix {
    from_rows(2, 2, &[r(0.0), c(0.0, -1.0), c(0.0, 1.0), r(0.0)])
}

pub fn pauli_z() -> CMatrix {
    diag_real(&[1.0, -1.0])
}

/// σ₁, σ₂, σ₃ in that order.
pub fn paulis() -> [CMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().sum()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Kronecker product.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn tensor_all(ms: &[CMatrix]) -> CMatrix {
    ms.iter()
        .skip(1)
        .fold(ms[0].clone(), |acc, m| acc.kronecker(m))
}

pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// Partial trace of a square matrix over the factors not listed in `keep`.
/// Kept factors stay in their original order.
pub fn partial_trace_matrix(m: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<CMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.nrows() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: m.nrows(),
        });
    }
    let k = dims.len();
    if keep.iter().any(|&i| i >= k) {
        return Err(Error::InvalidParameter(format!(
            "keep index out of range for {k} subsystems"
        )));
    }
    let kept: Vec<usize> = (0..k).filter(|i| keep.contains(i)).collect();
    let traced: Vec<usize> = (0..k).filter(|i| !keep.contains(i)).collect();
    let dk: usize = kept.iter().map(|&i| dims[i]).product();
    let dt: usize = traced.iter().map(|&i| dims[i]).product();

    // strides of each factor in the full index
    let mut stride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    let split = |mut idx: usize, set: &[usize]| -> usize {
        // maps a combined index over `set` to the full-space offset
        let mut off = 0;
        for &f in set.iter().rev() {
            off += (idx % dims[f]) * stride[f];
            idx /= dims[f];
        }
        off
    };

    let mut out = CMatrix::zeros(dk, dk);
    for a in 0..dk {
        let oa = split(a, &kept);
        for b in 0..dk {
            let ob = split(b, &kept);
            let mut s = r(0.0);
            for t in 0..dt {
                let ot = split(t, &traced);
                s += m[(oa + ot, ob + ot)];
            }
            out[(a, b)] = s;
        }
    }
    Ok(out)
}

/// Eigensystem of a Hermitian matrix, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct HermEigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: CMatrix,
}

impl HermEigen {
    pub fn vector(&self, i: usize) -> CVector {
        self.vectors.column(i).into_owned()
    }
}

/// Rotate the global phase so the largest-magnitude component is real and positive.
pub fn canonical_phase(v: &CVector) -> CVector {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (i, z) in v.iter().enumerate() {
        // first index wins among near-equal magnitudes
        if z.norm() > best_abs + 1e-12 {
            best = i;
            best_abs = z.norm();
        }
    }
    if best_abs <= 0.0 {
        return v.clone();
    }
    let ph = v[best].conj() / v[best].norm();
    v * ph
}

pub fn herm_eigen(h: &CMatrix) -> Result<HermEigen> {
    if !is_finite(h) {
        return Err(Error::NonFinite);
    }
    let dev = hermitian_deviation(h);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = h.nrows();
    // symmetrize so that tiny anti-Hermitian noise does not leak into the solver
    let hs = (h + h.adjoint()) * r(0.5);
    let eig = SymmetricEigen::new(hs);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let v = canonical_phase(&eig.eigenvectors.column(i).into_owned());
        vectors.set_column(col, &v);
    }
    Ok(HermEigen { values, vectors })
}

/// Apply a real function to the spectrum of a Hermitian matrix.
pub fn herm_map(h: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    let e = herm_eigen(h)?;
    let n = h.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &l) in e.values.iter().enumerate() {
        let v = e.vectors.column(i);
        out += (&v * v.adjoint()) * r(f(l));
    }
    Ok(out)
}

pub fn matrix_sqrt_psd(m: &CMatrix) -> Result<CMatrix> {
    let e = herm_eigen(m)?;
    if let Some(&min) = e.values.last() {
        if min < -PSD_HARD {
            return Err(Error::NotPositive(min));
        }
    }
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (i, &l) in e.values.iter().enumerate() {
        if l <= PSD_CLAMP {
            continue;
        }
        let v = e.vectors.column(i);
        out += (&v * v.adjoint()) * r(l.sqrt());
    }
    Ok(out)
}

/// Shannon entropy (nats) of a probability-like spectrum; 0·ln 0 := 0.
pub fn shannon_nats(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 1e-15).map(|&x| -x * x.ln()).sum()
}

/// Von Neumann entropy in nats.
pub fn von_neumann(rho: &CMatrix) -> Result<f64> {
    Ok(shannon_nats(&herm_eigen(rho)?.values))
}

/// Eigenvalues of a 2×2 Hermitian matrix, closed form (descending).
pub fn eig2_hermitian(m: &CMatrix) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean + rad, mean - rad]
}

/// A validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    pub const HERM_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-10;

    /// Validate Hermiticity, unit trace and positivity (down to −1e-10).
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_psd_tolerance(m, PSD_CLAMP)
    }

    /// Like [`DensityMatrix::new`] but with a caller-chosen PSD floor.
    pub fn with_psd_tolerance(m: CMatrix, psd_tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if !is_finite(&m) {
            return Err(Error::NonFinite);
        }
        let dev = hermitian_deviation(&m);
        if dev > Self::HERM_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = trace(&m).re;
        if (tr - 1.0).abs() > Self::TRACE_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
        let min = herm_eigen(&m)?.values.last().copied().unwrap_or(0.0);
        if min < -psd_tol {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { m })
    }

    /// Hermitize and rescale to unit trace before validating. Used after
    /// Kraus pipelines where rounding breaks exact Hermiticity.
    pub fn from_unnormalized(m: CMatrix) -> Result<Self> {
        let h = (&m + m.adjoint()) * r(0.5);
        let tr = trace(&h).re;
        if !(tr.abs() > 0.0) {
            return Err(Error::NotUnitTrace(tr));
        }
        Self::with_psd_tolerance(h / r(tr), 1e-9)
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let m = projector(psi.amplitudes());
        Self {
            m: (&m + m.adjoint()) * r(0.5),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            m: identity(dim) / r(dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eigen(&self.m).map(|e| e.values).unwrap_or_default()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            m: tensor(&self.m, &other.m),
        }
    }
}

pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let m = partial_trace_matrix(rho.matrix(), dims, keep)?;
    DensityMatrix::from_unnormalized(m)
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: CVector,
}

impl PureState {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(amps: CVector) -> Result<Self> {
        let n2 = amps.norm_squared();
        if (n2 - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amps })
    }

    /// Rescale an arbitrary nonzero vector to unit norm.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let n = amps.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Ok(Self { amps: amps / r(n) })
    }

    pub fn from_slice(amps: &[C64]) -> Result<Self> {
        Self::normalized(CVector::from_column_slice(amps))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}
