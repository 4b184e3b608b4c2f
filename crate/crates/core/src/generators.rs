//! Matrix representations of the Clifford generators `e_μ` of `Cl(C^{2k})`.
//!
//! Vector generators are Kronecker words in `I2, E1, E2, B`:
//! `e_{2j-1} ↦ I2^{⊗(k-j)} ⊗ E1 ⊗ B^{⊗(j-1)}` and
//! `e_{2j}   ↦ I2^{⊗(k-j)} ⊗ E2 ⊗ B^{⊗(j-1)}`.
//! A general generator is the product of its vector generators in increasing
//! index order. The recursive lifting formulas from level `k` to `k + 1` are
//! implemented separately ([`four_case_rep`], [`Lift`]) and only used to
//! cross-check the direct construction.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{mono_kron, mono_matmul, type_of, EntryType, MonomialMatrix};
use crate::report::Report;

/// Default ceiling on `k` for exhaustive sweeps (dimension 64).
pub const DEFAULT_MAX_K: u32 = 6;

/// Hard ceiling imposed by the 32-bit index mask.
pub const MAX_K: u32 = 16;

/// An element `±e_μ` of the multiplicative group of generators at level `k`.
///
/// Bit `i - 1` of `mask` is set when `e_i` occurs in `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub k: u32,
    pub mask: u32,
    pub negative: bool,
}

fn check_level(k: u32, max: u32) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::LevelOutOfRange { k, max });
    }
    Ok(())
}

impl GeneratorIndex {
    pub fn new(k: u32, mask: u32, negative: bool) -> Result<GeneratorIndex> {
        check_level(k, MAX_K)?;
        if u64::from(mask) >> (2 * k) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 32 - mask.leading_zeros(),
                max: 2 * k,
            });
        }
        Ok(GeneratorIndex { k, mask, negative })
    }

    pub fn identity(k: u32) -> GeneratorIndex {
        GeneratorIndex {
            k,
            mask: 0,
            negative: false,
        }
    }

    /// From 1-based indices, in any order.
    pub fn from_indices(k: u32, indices: &[u32], negative: bool) -> Result<GeneratorIndex> {
        check_level(k, MAX_K)?;
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > 2 * k {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: 2 * k,
                });
            }
            if mask & (1 << (i - 1)) != 0 {
                return Err(Error::Parse(format!("index {i} repeated")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(GeneratorIndex { k, mask, negative })
    }

    /// Increasing 1-based indices of `μ`.
    pub fn indices(&self) -> Vec<u32> {
        (0..2 * self.k)
            .filter(|b| self.mask & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn unsigned(&self) -> GeneratorIndex {
        GeneratorIndex {
            negative: false,
            ..*self
        }
    }

    pub fn negated(&self) -> GeneratorIndex {
        GeneratorIndex {
            negative: !self.negative,
            ..*self
        }
    }

    /// Label such as `e14`, `-e3` or `e0` for the identity. Once any index
    /// exceeds 9 the indices are braced and comma-separated: `e{1,10}`.
    pub fn label(&self) -> String {
        let idx = self.indices();
        let sign = if self.negative { "-" } else { "" };
        if idx.is_empty() {
            return format!("{sign}e0");
        }
        let body: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        if idx.iter().any(|&i| i > 9) {
            format!("{sign}e{{{}}}", body.join(","))
        } else {
            format!("{sign}e{}", body.concat())
        }
    }

    /// Inverse of [`GeneratorIndex::label`]; also accepts `e`, `e_` and `e1,10`.
    pub fn parse(k: u32, text: &str) -> Result<GeneratorIndex> {
        let text = text.trim();
        let (negative, rest) = match text.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let body = rest.strip_prefix('e').ok_or_else(|| {
            Error::Parse(format!("generator label must start with 'e': {text:?}"))
        })?;
        let body = body.strip_prefix('_').unwrap_or(body);
        let (braced, body) = match body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            Some(inner) => (true, inner),
            None => (false, body),
        };
        if body.is_empty() || body == "0" {
            return GeneratorIndex::from_indices(k, &[], negative);
        }
        let indices: Vec<u32> = if braced || body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad generator label {text:?}")))?
        } else {
            body.chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::Parse(format!("bad generator label {text:?}")))?
        };
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("indices must increase: {text:?}")));
        }
        GeneratorIndex::from_indices(k, &indices, negative)
    }

    /// Graded order used for canonical class representatives: shorter `μ`
    /// first, then lexicographic on the increasing index sequence.
    pub fn canonical_cmp(&self, other: &GeneratorIndex) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(&other.indices()))
            .then_with(|| self.negative.cmp(&other.negative))
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn kron_power(m: &MonomialMatrix, times: u32) -> MonomialMatrix {
    let mut out = MonomialMatrix::identity(1);
    for _ in 0..times {
        out = mono_kron(&out, m);
    }
    out
}

/// `ρ(e_i)` at level `k`, for `1 <= i <= 2k`.
pub fn vector_generator_rep(k: u32, i: u32) -> Result<MonomialMatrix> {
    check_level(k, MAX_K)?;
    if i == 0 || i > 2 * k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: 2 * k,
        });
    }
    let j = i.div_ceil(2);
    let core = if i % 2 == 1 {
        MonomialMatrix::e1()
    } else {
        MonomialMatrix::e2()
    };
    let left = MonomialMatrix::identity(1 << (k - j));
    let right = kron_power(&MonomialMatrix::b(), j - 1);
    Ok(mono_kron(&mono_kron(&left, &core), &right))
}

/// Precomputed vector generator representations for one level.
///
/// Everything downstream takes its matrices from a table, so a single entry
/// can be overridden to check that the verification sweeps catch a broken
/// representation.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    k: u32,
    vectors: Vec<MonomialMatrix>,
}

impl GeneratorTable {
    pub fn new(k: u32) -> Result<GeneratorTable> {
        check_level(k, MAX_K)?;
        let vectors = (1..=2 * k)
            .map(|i| vector_generator_rep(k, i))
            .collect::<Result<_>>()?;
        Ok(GeneratorTable { k, vectors })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        1 << self.k
    }

    pub fn vector(&self, i: u32) -> &MonomialMatrix {
        &self.vectors[(i - 1) as usize]
    }

    /// Replaces `ρ(e_i)`.
    pub fn with_override(mut self, i: u32, m: MonomialMatrix) -> Result<GeneratorTable> {
        if i == 0 || i > 2 * self.k {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: 2 * self.k,
            });
        }
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: m.dim(),
                right: self.dim(),
            });
        }
        self.vectors[(i - 1) as usize] = m;
        Ok(self)
    }

    pub fn rep(&self, g: &GeneratorIndex) -> MonomialMatrix {
        assert_eq!(g.k, self.k, "generator level does not match table");
        let mut out = MonomialMatrix::identity(self.dim());
        for i in g.indices() {
            out = mono_matmul(&out, self.vector(i)).expect("table dimensions agree");
        }
        if g.negative {
            out.negated()
        } else {
            out
        }
    }
}

/// `ρ(±e_μ)`: the ordered product of vector generators, negated if needed.
pub fn generator_rep(g: &GeneratorIndex) -> MonomialMatrix {
    GeneratorTable::new(g.k)
        .expect("GeneratorIndex carries a valid level")
        .rep(g)
}

/// Squares and anticommutators of all vector generators at level `k`.
pub fn clifford_relations_check(k: u32) -> Result<Report> {
    check_level(k, DEFAULT_MAX_K)?;
    Ok(clifford_relations_check_table(&GeneratorTable::new(k)?))
}

pub fn clifford_relations_check_table(table: &GeneratorTable) -> Report {
    let k = table.k();
    let mut report = Report::new(format!("clifford-relations k={k}"));
    let neg_id = MonomialMatrix::identity(table.dim()).negated();
    let mut bad_squares = Vec::new();
    let mut bad_pairs = Vec::new();
    for i in 1..=2 * k {
        let ei = table.vector(i);
        if (ei * ei) != neg_id {
            bad_squares.push(format!("e{i}^2 != -I"));
        }
        for j in (i + 1)..=2 * k {
            let ej = table.vector(j);
            if (ei * ej) != (ej * ei).negated() {
                bad_pairs.push(format!("e{i} e{j} != -e{j} e{i}"));
            }
        }
    }
    report.check(
        "squares equal -I",
        bad_squares.is_empty(),
        if bad_squares.is_empty() {
            format!("{} vector generators", 2 * k)
        } else {
            bad_squares.join("; ")
        },
    );
    report.check(
        "distinct generators anticommute",
        bad_pairs.is_empty(),
        if bad_pairs.is_empty() {
            format!("{} pairs", k * (2 * k - 1))
        } else {
            bad_pairs.join("; ")
        },
    );
    let mixed: Vec<String> = (1..=2 * k)
        .filter(|&i| type_of(table.vector(i)).is_err())
        .map(|i| format!("e{i}"))
        .collect();
    report.check(
        "vector generators have a single entry type",
        mixed.is_empty(),
        mixed.join(", "),
    );
    report
}

/// The four generators at level `k + 1` obtained from an unsigned `e_μ`
/// by shifting `μ` up by two and prefixing `∅`, `1`, `2`, `12`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub generators: [GeneratorIndex; 4],
    /// Whether `ρ(e_{μ+2}) = ρ(e_μ) ⊗ I2` (|μ| even) or `⊗ B` (|μ| odd).
    pub shift_matches_kron: bool,
}

pub fn lift_generator(g: &GeneratorIndex) -> Result<Lift> {
    if g.negative {
        return Err(Error::SignedGenerator);
    }
    check_level(g.k + 1, MAX_K)?;
    let k1 = g.k + 1;
    let shifted = g.mask << 2;
    let generators = [0u32, 0b01, 0b10, 0b11].map(|prefix| GeneratorIndex {
        k: k1,
        mask: shifted | prefix,
        negative: false,
    });
    let tail = if g.len().is_multiple_of(2) {
        MonomialMatrix::identity(2)
    } else {
        MonomialMatrix::b()
    };
    let shift_matches_kron = generator_rep(&generators[0]) == mono_kron(&generator_rep(g), &tail);
    Ok(Lift {
        generators,
        shift_matches_kron,
    })
}

/// `ρ(e_μ)` at level `k + 1` assembled from level `k` by the four-case
/// recursion on whether `1` and `2` occur in `μ`. `g.k` must be at least 2.
pub fn four_case_rep(g: &GeneratorIndex) -> MonomialMatrix {
    assert!(g.k >= 2, "four-case recursion needs a level above 1");
    let k = g.k - 1;
    let lower = GeneratorIndex {
        k,
        mask: g.mask >> 2,
        negative: false,
    };
    let lower_rep = generator_rep(&lower);
    let has1 = g.mask & 1 != 0;
    let has2 = g.mask & 2 != 0;
    let even = g.len().is_multiple_of(2);
    let i2 = MonomialMatrix::identity(2);
    let b = MonomialMatrix::b();
    let (prefix, tail) = match (has1, has2) {
        (false, false) => (None, if even { &i2 } else { &b }),
        (true, false) => (Some(0b01), if even { &b } else { &i2 }),
        (false, true) => (Some(0b10), if even { &b } else { &i2 }),
        (true, true) => (Some(0b11), if even { &i2 } else { &b }),
    };
    let body = mono_kron(&lower_rep, tail);
    let out = match prefix {
        None => body,
        Some(mask) => {
            let p = generator_rep(&GeneratorIndex {
                k: g.k,
                mask,
                negative: false,
            });
            &p * &body
        }
    };
    if g.negative {
        out.negated()
    } else {
        out
    }
}

/// All `2^{2k+1}` elements `±e_μ`, ordered by mask and then sign.
pub fn enumerate_gamma_hat(k: u32) -> Result<impl Iterator<Item = GeneratorIndex>> {
    enumerate_gamma_hat_with_cap(k, DEFAULT_MAX_K)
}

pub fn enumerate_gamma_hat_with_cap(
    k: u32,
    max_k: u32,
) -> Result<impl Iterator<Item = GeneratorIndex>> {
    check_level(k, max_k.min(MAX_K))?;
    Ok((0..1u32 << (2 * k))
        .flat_map(move |mask| [false, true].map(|negative| GeneratorIndex { k, mask, negative })))
}

/// The `4^k` unsigned generators, ordered by mask.
pub fn enumerate_unsigned(k: u32) -> Result<impl Iterator<Item = GeneratorIndex>> {
    check_level(k, DEFAULT_MAX_K)?;
    Ok((0..1u32 << (2 * k)).map(move |mask| GeneratorIndex {
        k,
        mask,
        negative: false,
    }))
}

/// Entry type of a generator; representations never mix types.
pub fn generator_type(g: &GeneratorIndex) -> EntryType {
    type_of(&generator_rep(g)).expect("generator representations have a single entry type")
}
