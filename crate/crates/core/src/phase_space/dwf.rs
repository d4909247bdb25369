//! Discrete Wigner functions and the negativity-based resource measures.

use super::geometry::{PhaseSpaceLine, Point};
use super::net::QuantumNet;
use crate::error::{Error, Result};
use crate::numerics::{r, trace, CMatrix, DensityMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct DwfGrid {
    pub n: usize,
    /// Row-major over (q, p).
    pub values: Vec<f64>,
    pub net: String,
}

impl DwfGrid {
    pub fn get(&self, alpha: Point) -> f64 {
        self.values[alpha.0 * self.n + alpha.1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn line_sum(&self, line: &PhaseSpaceLine) -> f64 {
        line.points.iter().map(|&a| self.get(a)).sum()
    }

    /// Sum of |W| over the negative entries.
    pub fn negative_mass(&self) -> f64 {
        self.values.iter().filter(|&&w| w < 0.0).map(|w| -w).sum()
    }

    /// CSV with header `q,p,w`; coordinates are grid indices.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("q,p,w\n");
        for q in 0..self.n {
            for p in 0..self.n {
                s.push_str(&format!("{q},{p},{}\n", self.get((q, p))));
            }
        }
        s
    }
}

fn check_dim(rho: &CMatrix, net: &QuantumNet) -> Result<()> {
    if rho.nrows() != net.n {
        return Err(Error::DimensionMismatch {
            expected: net.n,
            found: rho.nrows(),
        });
    }
    Ok(())
}

/// Tr[A_α ρ] for every grid point, row-major.
pub fn operator_expectations(rho: &DensityMatrix, net: &QuantumNet) -> Result<Vec<f64>> {
    check_dim(rho.matrix(), net)?;
    Ok(net
        .points()
        .into_iter()
        .map(|a| trace(&(net.operator_matrix(a) * rho.matrix())).re)
        .collect())
}

/// W_α = Tr[A_α ρ] / N.
pub fn dwf(rho: &DensityMatrix, net: &QuantumNet) -> Result<DwfGrid> {
    let n = net.n as f64;
    Ok(DwfGrid {
        n: net.n,
        values: operator_expectations(rho, net)?
            .into_iter()
            .map(|x| x / n)
            .collect(),
        net: net.label.clone(),
    })
}

/// ρ = Σ_α W_α A_α.
pub fn reconstruct_matrix(grid: &DwfGrid, net: &QuantumNet) -> Result<CMatrix> {
    if grid.n != net.n {
        return Err(Error::DimensionMismatch {
            expected: net.n,
            found: grid.n,
        });
    }
    let mut m = CMatrix::zeros(net.n, net.n);
    for a in net.points() {
        m += net.operator_matrix(a) * r(grid.get(a));
    }
    Ok(m)
}

pub fn reconstruct(grid: &DwfGrid, net: &QuantumNet) -> Result<DensityMatrix> {
    DensityMatrix::from_unnormalized(reconstruct_matrix(grid, net)?)
}

/// |min_α Tr[A_α ρ]| when negative, else 0.
pub fn wigner_negativity(rho: &DensityMatrix, net: &QuantumNet) -> Result<f64> {
    let min = operator_expectations(rho, net)?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(if min < 0.0 { -min } else { 0.0 })
}

/// a* = 1 − 1/(D²|N_G| + 1); prime dimensions only.
pub fn depolarizing_robustness(rho: &DensityMatrix, net: &QuantumNet) -> Result<f64> {
    if net.n != 2 && net.n != 3 {
        return Err(Error::UnsupportedDimension(net.n));
    }
    let d = net.n as f64;
    let ng = wigner_negativity(rho, net)?;
    Ok(1.0 - 1.0 / (d * d * ng + 1.0))
}

/// M = ln Σ|W_α| = ln(1 + 2·Σ_{W<0}|W|).
pub fn mana(rho: &DensityMatrix, net: &QuantumNet) -> Result<f64> {
    Ok((1.0 + 2.0 * dwf(rho, net)?.negative_mass()).ln())
}
