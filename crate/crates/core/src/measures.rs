//! Correlation and teleportation measures for two-qubit states.

use nalgebra::Matrix3;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{
    c, eig2_hermitian, herm_eigen, matrix_sqrt_psd, partial_trace_matrix, pauli_y, paulis, r,
    shannon_nats, tensor, trace, CMatrix, DensityMatrix,
};
use crate::phase_space::{DwfGrid, QuantumNet};
use crate::states::decompose_two_qubit;

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Wootters concurrence from the spectrum of √(√ρ ρ̃ √ρ).
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let yy = tensor(&pauli_y(), &pauli_y());
    let m = rho.matrix();
    let tilde = &yy * m.conjugate() * &yy;
    let s = matrix_sqrt_psd(m)?;
    let inner = &s * tilde * &s;
    let inner = (&inner + inner.adjoint()) * r(0.5);
    let l = herm_eigen(&matrix_sqrt_psd(&inner)?)?.values;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Σ_{i≠j} |ρ_ij|.
pub fn coherence_l1(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordOptions {
    pub grid_n: usize,
    pub refine_tol: f64,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self {
            grid_n: 64,
            refine_tol: 1e-8,
        }
    }
}

/// Σ_i p_i S(ρ_A|i) for the projective measurement on qubit B along
/// |l⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ and its orthogonal complement
/// |m⟩ = sin(θ/2)|0⟩ − e^{iφ} cos(θ/2)|1⟩.
pub fn measured_conditional_entropy(rho: &CMatrix, theta: f64, phi: f64) -> f64 {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = c(phi.cos(), phi.sin());
    let l = [r(ct), e * st];
    let m = [r(st), -e * ct];
    let mut total = 0.0;
    for v in [l, m] {
        // ⟨v|_B ρ |v⟩_B, a 2×2 block over A
        let mut blk = CMatrix::zeros(2, 2);
        for a in 0..2 {
            for a2 in 0..2 {
                let mut s = r(0.0);
                for b in 0..2 {
                    for b2 in 0..2 {
                        s += v[b].conj() * rho[(2 * a + b, 2 * a2 + b2)] * v[b2];
                    }
                }
                blk[(a, a2)] = s;
            }
        }
        let p = (blk[(0, 0)] + blk[(1, 1)]).re;
        if p <= 1e-15 {
            continue;
        }
        let ev = eig2_hermitian(&(blk / r(p)));
        total += p * shannon_nats(&ev);
    }
    total
}

/// Best coarse-grid point: (value, θ, φ).
pub fn discord_grid_min(rho: &CMatrix, grid_n: usize) -> (f64, f64, f64) {
    let n = grid_n.max(2);
    let step_t = std::f64::consts::PI / (n - 1) as f64;
    let step_p = 2.0 * std::f64::consts::PI / (n - 1) as f64;
    let rows: Vec<(f64, f64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let th = i as f64 * step_t;
            let mut best = (f64::INFINITY, th, 0.0);
            for j in 0..n {
                let ph = j as f64 * step_p;
                let v = measured_conditional_entropy(rho, th, ph);
                if v < best.0 {
                    best = (v, th, ph);
                }
            }
            best
        })
        .collect();
    rows.into_iter().fold(
        (f64::INFINITY, 0.0, 0.0),
        |b, x| if x.0 < b.0 { x } else { b },
    )
}

/// 2-D Nelder–Mead on (θ, φ); returns (value, θ, φ).
fn nelder_mead(
    f: impl Fn(f64, f64) -> f64,
    x0: (f64, f64),
    scale: f64,
    tol: f64,
) -> (f64, f64, f64) {
    let mut s = [(x0.0, x0.1), (x0.0 + scale, x0.1), (x0.0, x0.1 + scale)];
    let mut fv = s.map(|p| f(p.0, p.1));
    for _ in 0..2000 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| fv[a].total_cmp(&fv[b]));
        s = idx.map(|i| s[i]);
        fv = idx.map(|i| fv[i]);
        if (fv[2] - fv[0]).abs() <= tol {
            break;
        }
        let cx = ((s[0].0 + s[1].0) / 2.0, (s[0].1 + s[1].1) / 2.0);
        let at = |k: f64| (cx.0 + k * (s[2].0 - cx.0), cx.1 + k * (s[2].1 - cx.1));
        let xr = at(-1.0);
        let fr = f(xr.0, xr.1);
        if fr < fv[0] {
            let xe = at(-2.0);
            let fe = f(xe.0, xe.1);
            if fe < fr {
                s[2] = xe;
                fv[2] = fe;
            } else {
                s[2] = xr;
                fv[2] = fr;
            }
        } else if fr < fv[1] {
            s[2] = xr;
            fv[2] = fr;
        } else {
            let xc = if fr < fv[2] { at(-0.5) } else { at(0.5) };
            let fc = f(xc.0, xc.1);
            if fc < fv[2].min(fr) {
                s[2] = xc;
                fv[2] = fc;
            } else {
                for k in 1..3 {
                    s[k] = ((s[0].0 + s[k].0) / 2.0, (s[0].1 + s[k].1) / 2.0);
                    fv[k] = f(s[k].0, s[k].1);
                }
            }
        }
    }
    let k = (0..3).min_by(|&a, &b| fv[a].total_cmp(&fv[b])).unwrap();
    (fv[k], s[k].0, s[k].1)
}

/// Minimal Σ p_i S(ρ_A|i) over projective measurements on B: coarse grid,
/// then local refinement. Never above the coarse minimum.
pub fn min_conditional_entropy(rho: &DensityMatrix, opts: DiscordOptions) -> Result<f64> {
    require_two_qubit(rho)?;
    let m = rho.matrix();
    let (g, th, ph) = discord_grid_min(m, opts.grid_n);
    let scale = std::f64::consts::PI / opts.grid_n.max(2) as f64;
    let (v, _, _) = nelder_mead(
        |a, b| measured_conditional_entropy(m, a, b),
        (th, ph),
        scale,
        opts.refine_tol,
    );
    Ok(g.min(v))
}

/// d(A:B) = S(B) − S(AB) + min Σ p_i S(ρ_A|i), in nats, measuring qubit B.
pub fn discord(rho: &DensityMatrix, opts: DiscordOptions) -> Result<f64> {
    require_two_qubit(rho)?;
    let rb = partial_trace_matrix(rho.matrix(), &[2, 2], &[1])?;
    let sb = shannon_nats(&eig2_hermitian(&rb));
    let sab = shannon_nats(&herm_eigen(rho.matrix())?.values);
    Ok(sb - sab + min_conditional_entropy(rho, opts)?)
}

pub type Real3 = [[f64; 3]; 3];

pub fn correlation_matrix(rho: &DensityMatrix) -> Result<Real3> {
    require_two_qubit(rho)?;
    Ok(decompose_two_qubit(rho)?.t)
}

/// |e_i| (singular values of T, descending) and det T.
pub fn t_spectrum(t: &Real3) -> ([f64; 3], f64) {
    let m = Matrix3::from_fn(|i, j| t[i][j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    ([sv[0], sv[1], sv[2]], m.determinant())
}

/// S_n = max{0, (Ω_n − 1)/(√n − 1)}, Ω₃ = c, Ω₂ = √(c² − c_min²).
pub fn steering(rho: &DensityMatrix, n: usize) -> Result<f64> {
    let (e, _) = t_spectrum(&correlation_matrix(rho)?);
    let c2: f64 = e.iter().map(|x| x * x).sum();
    let omega = match n {
        3 => c2.sqrt(),
        2 => (c2 - e[2] * e[2]).max(0.0).sqrt(),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "steering needs n in {{2, 3}}, got {n}"
            )))
        }
    };
    Ok(((omega - 1.0) / ((n as f64).sqrt() - 1.0)).max(0.0))
}

fn in_domain(rho: &DensityMatrix) -> Result<[f64; 3]> {
    let (e, det) = t_spectrum(&correlation_matrix(rho)?);
    if !(det < 0.0) {
        return Err(Error::OutOfDomain { det });
    }
    Ok(e)
}

/// F = ½(1 + Σ|e_i|/3); defined for det T < 0.
pub fn maximal_fidelity(rho: &DensityMatrix) -> Result<f64> {
    let e = in_domain(rho)?;
    Ok(0.5 * (1.0 + e.iter().sum::<f64>() / 3.0))
}

/// Δ = √(Σ_{i<j}(|e_i| − |e_j|)²) / (3√10); defined for det T < 0.
pub fn fidelity_deviation(rho: &DensityMatrix) -> Result<f64> {
    let e = in_domain(rho)?;
    let s = (e[0] - e[1]).powi(2) + (e[0] - e[2]).powi(2) + (e[1] - e[2]).powi(2);
    Ok(s.sqrt() / (3.0 * 10f64.sqrt()))
}

/// F = ½(1 + Tr√(TᵀT)/3).
pub fn teleportation_fidelity(rho: &DensityMatrix) -> Result<f64> {
    let (e, _) = t_spectrum(&correlation_matrix(rho)?);
    Ok(0.5 * (1.0 + e.iter().sum::<f64>() / 3.0))
}

/// 2√(u₁ + u₂), u the two largest eigenvalues of TᵀT.
pub fn chsh_smax(rho: &DensityMatrix) -> Result<f64> {
    let (e, _) = t_spectrum(&correlation_matrix(rho)?);
    Ok(2.0 * (e[0] * e[0] + e[1] * e[1]).sqrt())
}

/// Sign pattern c_α = Tr[A_α (σ_i⊗σ_j)] of a two-qubit net; every entry is ±1.
pub fn correlation_signs(net: &QuantumNet) -> Result<Vec<[[i8; 3]; 3]>> {
    if net.n != 4 {
        return Err(Error::UnsupportedDimension(net.n));
    }
    let p = paulis();
    net.points()
        .into_iter()
        .map(|a| {
            let op = net.operator_matrix(a);
            let mut out = [[0i8; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let v = trace(&(op * tensor(&p[i], &p[j]))).re;
                    if (v.abs() - 1.0).abs() > 1e-10 {
                        return Err(Error::InvalidParameter(format!(
                            "net '{}' has non-±1 correlation weight {v}",
                            net.label
                        )));
                    }
                    out[i][j] = if v > 0.0 { 1 } else { -1 };
                }
            }
            Ok(out)
        })
        .collect()
}

/// t_ij = 1 − 2·Σ W_α over the points where the net gives σ_i⊗σ_j weight −1.
pub fn correlation_matrix_from_dwf(grid: &DwfGrid, net: &QuantumNet) -> Result<Real3> {
    if grid.n != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: grid.n,
        });
    }
    let signs = correlation_signs(net)?;
    let mut t = [[0.0; 3]; 3];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, tij) in row.iter_mut().enumerate() {
            let neg: f64 = grid
                .values
                .iter()
                .zip(&signs)
                .filter(|(_, s)| s[i][j] < 0)
                .map(|(w, _)| *w)
                .sum();
            *tij = 1.0 - 2.0 * neg;
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UqtVerdict {
    pub det_t: f64,
    pub eigen_abs: [f64; 3],
    pub useful_qt: bool,
    pub universal: bool,
}

pub const UQT_TOL: f64 = 1e-3;

pub fn uqt_check(rho: &DensityMatrix, tol: f64) -> Result<UqtVerdict> {
    let (e, det) = t_spectrum(&correlation_matrix(rho)?);
    let f = maximal_fidelity(rho).ok();
    let useful = f.is_some_and(|f| f > 2.0 / 3.0);
    let gap = e[0] - e[2];
    Ok(UqtVerdict {
        det_t: det,
        eigen_abs: e,
        useful_qt: useful,
        universal: det < 0.0 && gap <= tol && e[2] > 1.0 / 3.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub coherence_l1: f64,
    pub discord: f64,
    pub steering_2: f64,
    pub steering_3: f64,
    pub max_fidelity: Option<f64>,
    pub fidelity_deviation: Option<f64>,
    pub tele_fidelity: f64,
    pub s_max: f64,
    pub p_succ: f64,
}

impl CorrelationReport {
    pub const COLUMNS: [&'static str; 10] = [
        "concurrence",
        "coherence_l1",
        "discord",
        "steering_2",
        "steering_3",
        "max_fidelity",
        "fidelity_deviation",
        "tele_fidelity",
        "s_max",
        "p_succ",
    ];

    /// Field values in [`Self::COLUMNS`] order; absent values are empty.
    pub fn csv_fields(&self) -> Vec<String> {
        let f = |x: f64| format!("{x}");
        let o = |x: Option<f64>| x.map(f).unwrap_or_default();
        vec![
            f(self.concurrence),
            f(self.coherence_l1),
            f(self.discord),
            f(self.steering_2),
            f(self.steering_3),
            o(self.max_fidelity),
            o(self.fidelity_deviation),
            f(self.tele_fidelity),
            f(self.s_max),
            f(self.p_succ),
        ]
    }

    pub fn get(&self, column: &str) -> Option<f64> {
        match column {
            "concurrence" => Some(self.concurrence),
            "coherence_l1" => Some(self.coherence_l1),
            "discord" => Some(self.discord),
            "steering_2" => Some(self.steering_2),
            "steering_3" => Some(self.steering_3),
            "max_fidelity" => self.max_fidelity,
            "fidelity_deviation" => self.fidelity_deviation,
            "tele_fidelity" => Some(self.tele_fidelity),
            "s_max" => Some(self.s_max),
            "p_succ" => Some(self.p_succ),
            _ => None,
        }
    }
}

pub fn report(rho: &DensityMatrix, p_succ: f64) -> Result<CorrelationReport> {
    report_with(rho, p_succ, DiscordOptions::default())
}

pub fn report_with(
    rho: &DensityMatrix,
    p_succ: f64,
    opts: DiscordOptions,
) -> Result<CorrelationReport> {
    Ok(CorrelationReport {
        concurrence: concurrence(rho)?,
        coherence_l1: coherence_l1(rho),
        discord: discord(rho, opts)?,
        steering_2: steering(rho, 2)?,
        steering_3: steering(rho, 3)?,
        max_fidelity: maximal_fidelity(rho).ok(),
        fidelity_deviation: fidelity_deviation(rho).ok(),
        tele_fidelity: teleportation_fidelity(rho)?,
        s_max: chsh_smax(rho)?,
        p_succ,
    })
}
