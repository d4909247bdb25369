//! Lines and striations of the N×N phase space over GF(N).

use super::field::GaloisField;

/// A point (q, p) with field-element coordinates, which double as grid indices.
pub type Point = (usize, usize);

/// Line `λ_{i,j}`. Striation 0 holds the vertical lines `q = j`; striation
/// `s + 1` holds `p = s·q + j`. In `a·q + b·p = c` form these are
/// `(1, 0, j)` and `(−s, 1, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpaceLine {
    pub striation: usize,
    pub index: usize,
    pub points: Vec<Point>,
}

impl PhaseSpaceLine {
    pub fn contains(&self, pt: Point) -> bool {
        self.points.contains(&pt)
    }

    /// Coefficients (a, b, c) of `a·q + b·p = c`.
    pub fn coefficients(&self, f: &GaloisField) -> (usize, usize, usize) {
        if self.striation == 0 {
            (1, 0, self.index)
        } else {
            (f.neg(self.striation - 1), 1, self.index)
        }
    }
}

pub fn build_striations(f: &GaloisField) -> Vec<Vec<PhaseSpaceLine>> {
    let n = f.n;
    let mut out = Vec::with_capacity(n + 1);
    out.push(
        (0..n)
            .map(|c| PhaseSpaceLine {
                striation: 0,
                index: c,
                points: (0..n).map(|p| (c, p)).collect(),
            })
            .collect(),
    );
    for s in 0..n {
        out.push(
            (0..n)
                .map(|c| PhaseSpaceLine {
                    striation: s + 1,
                    index: c,
                    points: (0..n).map(|q| (q, f.add(f.mul(s, q), c))).collect(),
                })
                .collect(),
        );
    }
    out
}
