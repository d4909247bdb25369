//! Kraus channels: depolarizing, (non-)Markovian amplitude damping and
//! random telegraph noise, for qubits, qutrits and local two-qubit action.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    diag_real, identity, max_abs_diff, pauli_x, pauli_y, pauli_z, r, tensor, CMatrix, DensityMatrix,
};

/// Tolerance on ‖Σ K†K − I‖_max.
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdParams {
    /// Reservoir line width (1/τ_r).
    pub g: f64,
    /// Coupling strength (1/τ_s).
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RtnParams {
    pub b: f64,
    pub gamma: f64,
}

impl AdParams {
    pub fn new(g: f64, gamma: f64) -> Result<Self> {
        if !(g > 0.0 && gamma > 0.0) || !g.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "AD needs g > 0 and gamma > 0 (got g={g}, gamma={gamma})"
            )));
        }
        Ok(Self { g, gamma })
    }
}

impl RtnParams {
    pub fn new(b: f64, gamma: f64) -> Result<Self> {
        if !(b > 0.0 && gamma > 0.0) || !b.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "RTN needs b > 0 and gamma > 0 (got b={b}, gamma={gamma})"
            )));
        }
        Ok(Self { b, gamma })
    }
}

/// Channel family with its parameters; time is supplied separately.
/// Serialized as e.g. `{"type":"ad","g":0.01,"gamma":5.0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ChannelSpec {
    Identity,
    #[serde(alias = "depol")]
    Depolarizing {
        p: f64,
    },
    Ad {
        g: f64,
        gamma: f64,
    },
    Rtn {
        b: f64,
        #[serde(alias = "gamma_rtn")]
        gamma: f64,
    },
}

impl ChannelSpec {
    /// Non-Markovian AD used for the protection studies.
    pub const NM_AD: ChannelSpec = ChannelSpec::Ad {
        g: 0.01,
        gamma: 5.0,
    };
    pub const NM_RTN: ChannelSpec = ChannelSpec::Rtn {
        b: 0.05,
        gamma: 0.001,
    };

    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelSpec::Identity => Ok(()),
            ChannelSpec::Depolarizing { p } => {
                if (0.0..=1.0).contains(&p) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "depolarizing p={p} outside [0,1]"
                    )))
                }
            }
            ChannelSpec::Ad { g, gamma } => AdParams::new(g, gamma).map(|_| ()),
            ChannelSpec::Rtn { b, gamma } => RtnParams::new(b, gamma).map(|_| ()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelSpec::Identity => "identity",
            ChannelSpec::Depolarizing { .. } => "depolarizing",
            ChannelSpec::Ad { .. } => "ad",
            ChannelSpec::Rtn { .. } => "rtn",
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || !t.is_finite() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

/// λ(t) = 1 − e^{−gt}((g/l)·sinh(lt/2) + cosh(lt/2))², l = √(g(g − 2γ)).
/// For imaginary l the equivalent trigonometric form is used.
pub fn ad_lambda(params: AdParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let AdParams { g, gamma } = params;
    let l2 = g * (g - 2.0 * gamma);
    let f = if l2 > 0.0 {
        let l = l2.sqrt();
        (g / l) * (l * t / 2.0).sinh() + (l * t / 2.0).cosh()
    } else if l2 < 0.0 {
        let m = (-l2).sqrt();
        (g / m) * (m * t / 2.0).sin() + (m * t / 2.0).cos()
    } else {
        g * t / 2.0 + 1.0
    };
    let v = 1.0 - (-g * t).exp() * f * f;
    Ok(v.clamp(0.0, 1.0))
}

/// Λ(t) = e^{−γt}[cos(ζγt) + sin(ζγt)/ζ], ζ = √((2b/γ)² − 1); hyperbolic
/// form for imaginary ζ and e^{−γt}(1 + γt) at ζ = 0.
pub fn rtn_kernel(params: RtnParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let RtnParams { b, gamma } = params;
    let z2 = (2.0 * b / gamma).powi(2) - 1.0;
    let x = gamma * t;
    let osc = if z2 > 0.0 {
        let z = z2.sqrt();
        (z * x).cos() + (z * x).sin() / z
    } else if z2 < 0.0 {
        let m = (-z2).sqrt();
        (m * x).cosh() + (m * x).sinh() / m
    } else {
        1.0 + x
    };
    Ok(((-x).exp() * osc).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Markovian,
    NonMarkovian,
}

pub fn regime(spec: &ChannelSpec) -> Regime {
    let nm = match *spec {
        ChannelSpec::Ad { g, gamma } => 2.0 * gamma > g,
        ChannelSpec::Rtn { b, gamma } => (2.0 * b / gamma).powi(2) > 1.0,
        _ => false,
    };
    if nm {
        Regime::NonMarkovian
    } else {
        Regime::Markovian
    }
}

#[derive(Debug, Clone)]
pub struct KrausSet {
    pub dim: usize,
    pub operators: Vec<CMatrix>,
    pub completeness_residual: f64,
}

impl KrausSet {
    pub fn new(dim: usize, operators: Vec<CMatrix>) -> Result<Self> {
        if operators
            .iter()
            .any(|k| k.nrows() != dim || k.ncols() != dim)
        {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: operators
                    .iter()
                    .map(|k| k.nrows())
                    .find(|&n| n != dim)
                    .unwrap_or(0),
            });
        }
        let residual = completeness_residual(dim, &operators);
        if residual > COMPLETENESS_TOL {
            return Err(Error::InvalidParameter(format!(
                "Kraus completeness residual {residual:e}"
            )));
        }
        Ok(Self {
            dim,
            operators,
            completeness_residual: residual,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            operators: vec![identity(dim)],
            completeness_residual: 0.0,
        }
    }

    /// ‖Σ K K† − I‖_max; zero for unital channels.
    pub fn unitality_residual(&self) -> f64 {
        let s = self
            .operators
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, k| {
                acc + k * k.adjoint()
            });
        max_abs_diff(&s, &identity(self.dim))
    }
}

pub fn completeness_residual(dim: usize, ops: &[CMatrix]) -> f64 {
    let s = ops
        .iter()
        .fold(CMatrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k);
    max_abs_diff(&s, &identity(dim))
}

fn spin1() -> [CMatrix; 3] {
    let h = 0.5f64.sqrt();
    let i = crate::numerics::c(0.0, 1.0);
    let o = r(0.0);
    let sx = crate::numerics::from_rows(3, 3, &[o, r(h), o, r(h), o, r(h), o, r(h), o]);
    let sy = crate::numerics::from_rows(3, 3, &[o, -i * h, o, i * h, o, -i * h, o, i * h, o]);
    let sz = diag_real(&[1.0, 0.0, -1.0]);
    [sx, sy, sz]
}

pub fn ad_kraus(lambda: f64, dim: usize) -> Result<Vec<CMatrix>> {
    let s = (1.0 - lambda).sqrt();
    let a = lambda.sqrt();
    match dim {
        2 => {
            let mut k1 = CMatrix::zeros(2, 2);
            k1[(0, 1)] = r(a);
            Ok(vec![diag_real(&[1.0, s]), k1])
        }
        3 => {
            let mut k1 = CMatrix::zeros(3, 3);
            k1[(0, 1)] = r(a);
            let mut k2 = CMatrix::zeros(3, 3);
            k2[(0, 2)] = r(a);
            Ok(vec![diag_real(&[1.0, s, s]), k1, k2])
        }
        _ => Err(Error::UnsupportedDimension(dim)),
    }
}

pub fn rtn_kraus(kernel: f64, dim: usize) -> Result<Vec<CMatrix>> {
    let c0 = r(((1.0 + kernel) / 2.0).max(0.0).sqrt());
    let c1 = r(((1.0 - kernel) / 2.0).max(0.0).sqrt());
    match dim {
        2 => Ok(vec![identity(2) * c0, pauli_z() * c1]),
        3 => {
            let [sx, sy, sz] = spin1();
            let s = (&sx * &sx + &sy * &sy - &sz * &sz) * r(0.5);
            Ok(vec![identity(3) * c0, sz * c1, s * c1])
        }
        _ => Err(Error::UnsupportedDimension(dim)),
    }
}

pub fn depolarizing_kraus(p: f64, dim: usize) -> Result<Vec<CMatrix>> {
    if dim != 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    let a = r((1.0 - p).sqrt());
    let b = r((p / 3.0).sqrt());
    Ok(vec![
        identity(2) * a,
        pauli_x() * b,
        pauli_y() * b,
        pauli_z() * b,
    ])
}

/// Kraus set of `spec` at time `t` acting on a single `dim`-level system.
pub fn kraus_set(spec: &ChannelSpec, t: f64, dim: usize) -> Result<KrausSet> {
    spec.validate()?;
    check_time(t)?;
    let ops = match *spec {
        ChannelSpec::Identity => {
            if dim != 2 && dim != 3 {
                return Err(Error::UnsupportedDimension(dim));
            }
            vec![identity(dim)]
        }
        ChannelSpec::Depolarizing { p } => depolarizing_kraus(p, dim)?,
        ChannelSpec::Ad { g, gamma } => ad_kraus(ad_lambda(AdParams { g, gamma }, t)?, dim)?,
        ChannelSpec::Rtn { b, gamma } => rtn_kraus(rtn_kernel(RtnParams { b, gamma }, t)?, dim)?,
    };
    KrausSet::new(dim, ops)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locality {
    /// Kraus operators act on the whole state.
    Single,
    /// Same channel on each of two subsystems: Σ_ij (K_i⊗K_j) ρ (K_i⊗K_j)†.
    TwoLocal,
}

pub fn apply_kraus(rho: &CMatrix, ks: &KrausSet, locality: Locality) -> Result<CMatrix> {
    let d = rho.nrows();
    let expected = match locality {
        Locality::Single => ks.dim,
        Locality::TwoLocal => ks.dim * ks.dim,
    };
    if d != expected {
        return Err(Error::DimensionMismatch { expected, found: d });
    }
    let mut out = CMatrix::zeros(d, d);
    match locality {
        Locality::Single => {
            for k in &ks.operators {
                out += k * rho * k.adjoint();
            }
        }
        Locality::TwoLocal => {
            for ki in &ks.operators {
                for kj in &ks.operators {
                    let k = tensor(ki, kj);
                    out += &k * rho * k.adjoint();
                }
            }
        }
    }
    Ok(out)
}

pub fn apply_channel(
    rho: &DensityMatrix,
    ks: &KrausSet,
    locality: Locality,
) -> Result<DensityMatrix> {
    DensityMatrix::from_unnormalized(apply_kraus(rho.matrix(), ks, locality)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time_is_identity() {
        let ad = AdParams::new(0.01, 5.0).unwrap();
        let rtn = RtnParams::new(0.05, 0.001).unwrap();
        assert_eq!(ad_lambda(ad, 0.0).unwrap(), 0.0);
        assert_eq!(rtn_kernel(rtn, 0.0).unwrap(), 1.0);
        for spec in [ChannelSpec::NM_AD, ChannelSpec::NM_RTN] {
            let ks = kraus_set(&spec, 0.0, 2).unwrap();
            assert_eq!(max_abs_diff(&ks.operators[0], &identity(2)), 0.0);
            assert!(ks.operators[1].iter().all(|z| z.norm() == 0.0));
        }
        let dp = kraus_set(&ChannelSpec::Depolarizing { p: 0.0 }, 0.0, 2).unwrap();
        assert_eq!(dp.operators.len(), 4);
        assert!(dp.operators[1..]
            .iter()
            .all(|k| k.iter().all(|z| z.norm() == 0.0)));
    }

    #[test]
    fn operator_counts() {
        let n = |s: ChannelSpec, d| kraus_set(&s, 1.0, d).unwrap().operators.len();
        assert_eq!(n(ChannelSpec::NM_AD, 2), 2);
        assert_eq!(n(ChannelSpec::NM_AD, 3), 3);
        assert_eq!(n(ChannelSpec::NM_RTN, 2), 2);
        assert_eq!(n(ChannelSpec::NM_RTN, 3), 3);
        assert_eq!(n(ChannelSpec::Depolarizing { p: 0.2 }, 2), 4);
        assert!(kraus_set(&ChannelSpec::Depolarizing { p: 0.2 }, 1.0, 3).is_err());
        assert!(kraus_set(&ChannelSpec::NM_AD, 1.0, 4).is_err());
    }

    #[test]
    fn negative_time_rejected() {
        let ad = AdParams::new(0.01, 5.0).unwrap();
        assert_eq!(ad_lambda(ad, -1.0), Err(Error::NegativeTime(-1.0)));
        assert!(rtn_kernel(RtnParams::new(1.0, 1.0).unwrap(), -0.5).is_err());
    }

    #[test]
    fn rtn_critical_limit() {
        // (2b/γ)² = 1 exactly
        let p = RtnParams::new(0.5, 1.0).unwrap();
        let t: f64 = 1.7;
        assert!((rtn_kernel(p, t).unwrap() - (-t).exp() * (1.0 + t)).abs() < 1e-15);
    }

    #[test]
    fn regimes() {
        assert_eq!(regime(&ChannelSpec::NM_AD), Regime::NonMarkovian);
        assert_eq!(regime(&ChannelSpec::NM_RTN), Regime::NonMarkovian);
        assert_eq!(
            regime(&ChannelSpec::Ad {
                g: 1.0,
                gamma: 0.01
            }),
            Regime::Markovian
        );
        assert_eq!(
            regime(&ChannelSpec::Rtn {
                b: 0.07,
                gamma: 1.0
            }),
            Regime::Markovian
        );
    }
}
