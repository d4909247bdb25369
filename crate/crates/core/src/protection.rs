//! Weak measurement → channel → measurement reversal.

use rayon::prelude::*;

use crate::channels::{apply_kraus, kraus_set, ChannelSpec, Locality};
use crate::error::{Error, Result};
use crate::measures::{concurrence, maximal_fidelity};
use crate::numerics::{diag_real, tensor, trace, CMatrix, DensityMatrix};

/// Below this the filtered state is treated as annihilated.
pub const MIN_SUCCESS: f64 = 1e-12;

/// Equal strengths on both qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterStrengths {
    pub p: f64,
    pub q: f64,
}

impl FilterStrengths {
    pub const OFF: FilterStrengths = FilterStrengths { p: 0.0, q: 0.0 };

    pub fn new(p: f64, q: f64) -> Result<Self> {
        check_strength("p", p)?;
        check_strength("q", q)?;
        Ok(Self { p, q })
    }
}

fn check_strength(name: &str, x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("{name}={x} outside [0,1)")));
    }
    Ok(())
}

/// diag(1, √(1−p)) ⊗ diag(1, √(1−p)).
pub fn wm_operator(p: f64) -> Result<CMatrix> {
    check_strength("p", p)?;
    let f = diag_real(&[1.0, (1.0 - p).sqrt()]);
    Ok(tensor(&f, &f))
}

/// diag(√(1−q), 1) ⊗ diag(√(1−q), 1).
pub fn qmr_operator(q: f64) -> Result<CMatrix> {
    check_strength("q", q)?;
    let f = diag_real(&[(1.0 - q).sqrt(), 1.0]);
    Ok(tensor(&f, &f))
}

#[derive(Debug, Clone)]
pub struct ProtectedOutcome {
    pub state: DensityMatrix,
    pub success_probability: f64,
}

/// Unnormalized M_QMR · E(M_WM ρ M_WM†) · M_QMR†.
pub fn pipeline_matrix(
    rho0: &DensityMatrix,
    channel: &ChannelSpec,
    t: f64,
    s: FilterStrengths,
) -> Result<CMatrix> {
    if rho0.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho0.dim(),
        });
    }
    let wm = wm_operator(s.p)?;
    let qmr = qmr_operator(s.q)?;
    let ks = kraus_set(channel, t, 2)?;
    let filtered = &wm * rho0.matrix() * wm.adjoint();
    let evolved = apply_kraus(&filtered, &ks, Locality::TwoLocal)?;
    Ok(&qmr * evolved * qmr.adjoint())
}

pub fn protect_evolve(
    rho0: &DensityMatrix,
    channel: &ChannelSpec,
    t: f64,
    s: FilterStrengths,
) -> Result<ProtectedOutcome> {
    let m = pipeline_matrix(rho0, channel, t, s)?;
    let ps = trace(&m).re;
    if !(ps >= MIN_SUCCESS) {
        return Err(Error::NullOutcome(ps));
    }
    Ok(ProtectedOutcome {
        state: DensityMatrix::from_unnormalized(m)?,
        success_probability: ps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Concurrence,
    MaximalFidelity,
}

impl Objective {
    fn eval(&self, rho: &DensityMatrix) -> Result<f64> {
        match self {
            Objective::Concurrence => concurrence(rho),
            // outside det T < 0 the quantity is undefined; never select it
            Objective::MaximalFidelity => Ok(maximal_fidelity(rho).unwrap_or(f64::NEG_INFINITY)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqOptimum {
    pub strengths: FilterStrengths,
    pub objective: f64,
    pub success_probability: f64,
}

/// Grid values {0, step, …} below 1.
pub fn strength_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::InvalidParameter(format!(
            "step={step} outside (0, 0.1]"
        )));
    }
    Ok(grid_values(step))
}

fn grid_values(step: f64) -> Vec<f64> {
    // round away binary noise so that e.g. 17·0.01 prints as 0.17
    (0..)
        .map(|k| ((k as f64 * step) * 1e12).round() / 1e12)
        .take_while(|&x| x < 1.0 - 1e-12)
        .collect()
}

const TIE: f64 = 1e-12;

/// Grid-search maximizer of the objective at time `t`. Ties go to larger
/// success probability, then smaller p, then smaller q.
pub fn optimize_pq(
    rho0: &DensityMatrix,
    channel: &ChannelSpec,
    t: f64,
    step: f64,
    objective: Objective,
) -> Result<PqOptimum> {
    let grid = strength_grid(step)?;
    let cells: Vec<(f64, f64)> = grid
        .iter()
        .flat_map(|&p| grid.iter().map(move |&q| (p, q)))
        .collect();
    let evaluated: Vec<Option<PqOptimum>> = cells
        .par_iter()
        .map(|&(p, q)| {
            let s = FilterStrengths { p, q };
            let out = protect_evolve(rho0, channel, t, s).ok()?;
            let v = objective.eval(&out.state).ok()?;
            Some(PqOptimum {
                strengths: s,
                objective: v,
                success_probability: out.success_probability,
            })
        })
        .collect();
    // sequential reduction in (p, q) order keeps the result scheduling-independent
    let mut best: Option<PqOptimum> = None;
    for cand in evaluated.into_iter().flatten() {
        best = match best {
            None => Some(cand),
            Some(b) => {
                let better = cand.objective > b.objective + TIE
                    || ((cand.objective - b.objective).abs() <= TIE
                        && cand.success_probability > b.success_probability + TIE);
                Some(if better { cand } else { b })
            }
        };
    }
    best.ok_or_else(|| Error::InvalidParameter("no admissible (p, q) cell".into()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceCell {
    pub p: f64,
    pub q: f64,
    pub success_probability: f64,
}

pub fn success_surface(
    rho0: &DensityMatrix,
    channel: &ChannelSpec,
    t: f64,
    step: f64,
) -> Result<Vec<SurfaceCell>> {
    if !(step > 0.0 && step < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "step={step} outside (0, 1)"
        )));
    }
    let grid = grid_values(step);
    let cells: Vec<(f64, f64)> = grid
        .iter()
        .flat_map(|&p| grid.iter().map(move |&q| (p, q)))
        .collect();
    cells
        .par_iter()
        .map(|&(p, q)| {
            let m = pipeline_matrix(rho0, channel, t, FilterStrengths { p, q })?;
            Ok(SurfaceCell {
                p,
                q,
                success_probability: trace(&m).re,
            })
        })
        .collect()
}
