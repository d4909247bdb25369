//! Finite fields of order 2, 3 and 4.

use crate::error::{Error, Result};

/// Field of order `n = p^m`. Elements are encoded as `0..n`; for GF(4) the
/// code is the bit pattern of the polynomial in ω, so 0, 1, 2, 3 stand for
/// 0, 1, ω, ω+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    pub p: usize,
    pub m: usize,
    pub n: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl GaloisField {
    pub fn new(n: usize) -> Result<Self> {
        let (p, m) = match n {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            _ => return Err(Error::UnsupportedDimension(n)),
        };
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                if m == 1 {
                    add[a][b] = (a + b) % p;
                    mul[a][b] = (a * b) % p;
                } else {
                    add[a][b] = a ^ b;
                    mul[a][b] = gf4_mul(a, b);
                }
            }
        }
        Ok(Self { p, m, n, add, mul })
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (1..self.n).find(|&b| self.mul(a, b) == 1)
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn label(&self, a: usize) -> String {
        if self.n == 4 {
            ["0", "1", "ω", "ω+1"][a].to_string()
        } else {
            a.to_string()
        }
    }

    /// Tr(x) = x + x^p + … + x^{p^{m−1}}, an element of the prime subfield.
    pub fn trace(&self, x: usize) -> usize {
        let mut acc = 0;
        let mut term = x;
        for _ in 0..self.m {
            acc = self.add(acc, term);
            term = self.pow(term, self.p);
        }
        acc
    }
}

// multiply as polynomials over GF(2) and reduce by ω² = ω + 1
fn gf4_mul(a: usize, b: usize) -> usize {
    let mut r = 0;
    for i in 0..2 {
        if (b >> i) & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 0b100 != 0 {
        r ^= 0b111;
    }
    r
}

pub fn build_field(n: usize) -> Result<GaloisField> {
    GaloisField::new(n)
}

pub fn field_trace(field: &GaloisField, x: usize) -> usize {
    field.trace(x)
}
