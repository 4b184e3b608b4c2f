//! Permutations of `{0, .., len-1}` stored as image arrays.
//!
//! Internally everything is 0-based. [`fmt::Display`] and [`Permutation::parse_cycles`]
//! use 1-based disjoint-cycle notation, e.g. `(1 3)(2 4)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(len: usize) -> Permutation {
        Permutation {
            image: (0..len as u32).collect(),
        }
    }

    /// Validates that `image` is a bijection on `0..image.len()`.
    pub fn from_images(image: Vec<u32>) -> Result<Permutation> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidPermutation(format!("image {x} out of range")))?;
            if *slot {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_images_unchecked(image: Vec<u32>) -> Permutation {
        debug_assert!(Permutation::from_images(image.clone()).is_ok());
        Permutation { image }
    }

    /// Builds a permutation from 0-based cycles; unlisted points are fixed.
    pub fn from_cycles(len: usize, cycles: &[Vec<u32>]) -> Result<Permutation> {
        let mut image: Vec<u32> = (0..len as u32).collect();
        let mut touched = vec![false; len];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                let x_us = x as usize;
                if x_us >= len {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} outside 1..={len}",
                        x + 1
                    )));
                }
                if touched[x_us] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice",
                        x + 1
                    )));
                }
                touched[x_us] = true;
                image[x_us] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    /// Parses 1-based cycle notation on `{1, .., len}`.
    ///
    /// Inside a cycle, points are separated by whitespace or commas. A cycle
    /// without separators, such as `(17)`, is read one digit per point.
    pub fn parse_cycles(len: usize, text: &str) -> Result<Permutation> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
            let body = &body_start[..close];
            rest = body_start[close + 1..].trim_start();

            let separated = body.contains(|c: char| c.is_whitespace() || c == ',');
            let tokens: Vec<&str> = if separated {
                body.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .collect()
            } else {
                body.char_indices()
                    .map(|(i, c)| &body[i..i + c.len_utf8()])
                    .collect()
            };
            let mut cycle = Vec::with_capacity(tokens.len());
            for tok in tokens {
                let x: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?}")))?;
                if x == 0 {
                    return Err(Error::Parse("points are 1-based".into()));
                }
                cycle.push(x - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Permutation::from_cycles(len, &cycles)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            image: other
                .image
                .iter()
                .map(|&x| self.image[x as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u32;
        }
        Permutation { image }
    }

    /// Kronecker product of permutation matrices: `(a, c) ↦ (self(a), other(c))`
    /// on the index `a * other.len() + c`.
    pub fn kron(&self, other: &Permutation) -> Permutation {
        let m = other.len() as u32;
        let mut image = Vec::with_capacity(self.len() * other.len());
        for &a in &self.image {
            for &c in &other.image {
                image.push(a * m + c);
            }
        }
        Permutation { image }
    }

    /// All cycles, trivial ones included, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.image[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        (self.len() - self.cycles().len()).is_multiple_of(2)
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &x)| self.image[x as usize] as usize == i)
    }

    /// Fixed-point-free product of disjoint transpositions.
    pub fn is_transposition_derangement(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize != i && self.image[x as usize] as usize == i)
    }

    pub fn one_line(&self) -> Vec<u32> {
        self.image.iter().map(|x| x + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("(1)")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(one_line: Vec<u32>) -> Result<Permutation> {
        let image = one_line
            .into_iter()
            .map(|x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::Parse("points are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(image)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.one_line()
    }
}
