//! Dense Gaussian-integer matrices, used as an independent oracle for the
//! monomial arithmetic. Quadratic storage; meant for dimensions up to 64.

use num_complex::Complex;

use crate::error::{Error, Result};

pub type Gaussian = Complex<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Gaussian>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> DenseMatrix {
        DenseMatrix {
            dim,
            data: vec![Complex::new(0, 0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex::new(1, 0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Gaussian {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Gaussian) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.get(i, l);
                if a == Complex::new(0, 0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.get(l, j);
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (p, q) = (self.dim, other.dim);
        let mut out = DenseMatrix::zeros(p * q);
        for a in 0..p {
            for b in 0..p {
                let x = self.get(a, b);
                for c in 0..q {
                    for d in 0..q {
                        out.set(a * q + c, b * q + d, x * other.get(c, d));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Gaussian) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }
}
