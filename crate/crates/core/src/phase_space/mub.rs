//! Tabulated mutually unbiased bases for N = 2, 3, 4.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{c, r, CVector, C64};

fn vec_scaled(v: &[C64], s: f64) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(|z| z * s))
}

/// N+1 orthonormal bases; `tables[b][k]` is vector k of basis b.
pub fn mub_tables(n: usize) -> Result<Vec<Vec<CVector>>> {
    let i = c(0.0, 1.0);
    let o = r(0.0);
    let l = r(1.0);
    match n {
        2 => {
            let h = 0.5f64.sqrt();
            Ok(vec![
                vec![vec_scaled(&[o, l], 1.0), vec_scaled(&[l, o], 1.0)],
                vec![vec_scaled(&[l, l], h), vec_scaled(&[l, -l], h)],
                vec![vec_scaled(&[l, i], h), vec_scaled(&[l, -i], h)],
            ])
        }
        3 => {
            let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
            let w2 = w * w;
            let s = 1.0 / 3f64.sqrt();
            let comp = (0..3)
                .map(|k| CVector::from_fn(3, |j, _| if j == k { l } else { o }))
                .collect();
            Ok(vec![
                comp,
                vec![
                    vec_scaled(&[l, l, l], s),
                    vec_scaled(&[l, w, w2], s),
                    vec_scaled(&[l, w2, w], s),
                ],
                vec![
                    vec_scaled(&[l, w2, w2], s),
                    vec_scaled(&[l, l, w], s),
                    vec_scaled(&[l, w, l], s),
                ],
                vec![
                    vec_scaled(&[l, w, w], s),
                    vec_scaled(&[l, w2, l], s),
                    vec_scaled(&[l, l, w2], s),
                ],
            ])
        }
        4 => {
            let comp = (0..4)
                .map(|k| CVector::from_fn(4, |j, _| if j == k { l } else { o }))
                .collect();
            let t = |v: [C64; 4]| vec_scaled(&v, 0.5);
            Ok(vec![
                comp,
                vec![
                    t([l, l, l, l]),
                    t([l, -l, l, -l]),
                    t([l, l, -l, -l]),
                    t([l, -l, -l, l]),
                ],
                vec![
                    t([l, -i, i, l]),
                    t([l, i, i, -l]),
                    t([l, -i, -i, -l]),
                    t([l, i, -i, l]),
                ],
                vec![
                    t([l, l, i, -i]),
                    t([l, -l, i, i]),
                    t([l, l, -i, i]),
                    t([l, -l, -i, -i]),
                ],
                // third vector is fixed by orthogonality to the other three
                vec![
                    t([l, -i, l, i]),
                    t([l, i, l, -i]),
                    t([l, -i, -l, -i]),
                    t([l, i, -l, i]),
                ],
            ])
        }
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// Largest deviation from orthonormality within bases and from |⟨u|v⟩|² = 1/N across bases.
pub fn unbiasedness_residual(tables: &[Vec<CVector>]) -> f64 {
    let n = tables[0].len() as f64;
    let mut worst: f64 = 0.0;
    for (a, ba) in tables.iter().enumerate() {
        for (b, bb) in tables.iter().enumerate() {
            for (i, u) in ba.iter().enumerate() {
                for (j, v) in bb.iter().enumerate() {
                    let ov = u.dotc(v).norm_sqr();
                    let want = if a != b {
                        1.0 / n
                    } else if i == j {
                        1.0
                    } else {
                        0.0
                    };
                    worst = worst.max((ov - want).abs());
                }
            }
        }
    }
    worst
}
