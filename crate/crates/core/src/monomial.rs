//! Monomial matrices over the fourth roots of unity.
//!
//! A [`MonomialMatrix`] of dimension `d` has exactly one nonzero entry in each
//! row and column. It is stored column-wise: column `j` holds the value
//! `coeff[j]` in row `shape(j)`. With this convention the action on a column
//! vector is `out[shape(j)] = coeff[j] * x[j]`, and the shape is the
//! permutation matrix that sends basis vector `j` to basis vector `shape(j)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::unit::Unit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryType {
    Real,
    Imaginary,
}

impl fmt::Display for EntryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryType::Real => "real",
            EntryType::Imaginary => "imaginary",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    shape: Permutation,
    coeffs: Vec<Unit>,
}

impl MonomialMatrix {
    pub fn new(shape: Permutation, coeffs: Vec<Unit>) -> Result<MonomialMatrix> {
        if shape.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                left: shape.len(),
                right: coeffs.len(),
            });
        }
        if !shape.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(shape.len()));
        }
        Ok(MonomialMatrix { shape, coeffs })
    }

    pub fn identity(dim: usize) -> MonomialMatrix {
        assert!(
            dim.is_power_of_two(),
            "dimension {dim} is not a power of two"
        );
        MonomialMatrix {
            shape: Permutation::identity(dim),
            coeffs: vec![Unit::ONE; dim],
        }
    }

    fn two_by_two(swap: bool, c0: Unit, c1: Unit) -> MonomialMatrix {
        let image = if swap { vec![1, 0] } else { vec![0, 1] };
        MonomialMatrix {
            shape: Permutation::from_images_unchecked(image),
            coeffs: vec![c0, c1],
        }
    }

    /// `[[i, 0], [0, -i]]`
    pub fn e1() -> MonomialMatrix {
        Self::two_by_two(false, Unit::I, Unit::NEG_I)
    }

    /// `[[0, i], [i, 0]]`
    pub fn e2() -> MonomialMatrix {
        Self::two_by_two(true, Unit::I, Unit::I)
    }

    /// `[[0, -1], [1, 0]]`, the product `E1 E2`.
    pub fn e12() -> MonomialMatrix {
        Self::two_by_two(true, Unit::ONE, Unit::NEG_ONE)
    }

    /// `[[0, -i], [i, 0]] = i E12`
    pub fn b() -> MonomialMatrix {
        Self::two_by_two(true, Unit::I, Unit::NEG_I)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn shape(&self) -> &Permutation {
        &self.shape
    }

    pub fn coeffs(&self) -> &[Unit] {
        &self.coeffs
    }

    /// Row holding the nonzero entry of column `col`, and its value.
    #[inline]
    pub fn column(&self, col: usize) -> (usize, Unit) {
        (self.shape.apply(col), self.coeffs[col])
    }

    /// The full entry at `(row, col)`, `None` when zero.
    pub fn entry(&self, row: usize, col: usize) -> Option<Unit> {
        (self.shape.apply(col) == row).then(|| self.coeffs[col])
    }

    pub fn scaled(&self, u: Unit) -> MonomialMatrix {
        MonomialMatrix {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * u).collect(),
        }
    }

    pub fn negated(&self) -> MonomialMatrix {
        self.scaled(Unit::NEG_ONE)
    }

    /// Replaces the coefficient of one column. Used to build deliberately
    /// broken representations in negative tests.
    pub fn with_coeff(&self, col: usize, u: Unit) -> MonomialMatrix {
        let mut out = self.clone();
        out.coeffs[col] = u;
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        to_dense(self)
    }
}

/// Exact product `m * n`.
pub fn mono_matmul(m: &MonomialMatrix, n: &MonomialMatrix) -> Result<MonomialMatrix> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: n.dim(),
        });
    }
    // column j of n lands in row r = n(j), then m carries row r to m(r)
    let mut image = Vec::with_capacity(n.dim());
    let mut coeffs = Vec::with_capacity(n.dim());
    for j in 0..n.dim() {
        let (mid, u) = n.column(j);
        let (row, v) = m.column(mid);
        image.push(row as u32);
        coeffs.push(v * u);
    }
    Ok(MonomialMatrix {
        shape: Permutation::from_images_unchecked(image),
        coeffs,
    })
}

/// Kronecker product `m ⊗ n`, with `m` indexing the outer blocks.
pub fn mono_kron(m: &MonomialMatrix, n: &MonomialMatrix) -> MonomialMatrix {
    let shape = m.shape.kron(&n.shape);
    let mut coeffs = Vec::with_capacity(m.dim() * n.dim());
    for &a in &m.coeffs {
        for &c in &n.coeffs {
            coeffs.push(a * c);
        }
    }
    MonomialMatrix { shape, coeffs }
}

pub fn shape_of(m: &MonomialMatrix) -> Permutation {
    m.shape.clone()
}

pub fn type_of(m: &MonomialMatrix) -> Result<EntryType> {
    let first = m.coeffs[0].is_real();
    if m.coeffs.iter().any(|c| c.is_real() != first) {
        return Err(Error::MixedType);
    }
    Ok(if first {
        EntryType::Real
    } else {
        EntryType::Imaginary
    })
}

pub fn to_dense(m: &MonomialMatrix) -> DenseMatrix {
    let mut d = DenseMatrix::zeros(m.dim());
    for j in 0..m.dim() {
        let (row, u) = m.column(j);
        let (re, im) = u.to_pair();
        d.set(row, j, num_complex::Complex::new(re, im));
    }
    d
}

impl std::ops::Mul for &MonomialMatrix {
    type Output = MonomialMatrix;
    /// Panics on dimension mismatch; use [`mono_matmul`] for the checked form.
    fn mul(self, rhs: &MonomialMatrix) -> MonomialMatrix {
        mono_matmul(self, rhs).expect("dimension mismatch")
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        for row in 0..d {
            f.write_str("[")?;
            for col in 0..d {
                let cell = match self.entry(row, col) {
                    Some(u) => u.to_string(),
                    None => "0".to_string(),
                };
                write!(f, "{cell:>3}")?;
            }
            f.write_str(" ]")?;
            if row + 1 < d {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
