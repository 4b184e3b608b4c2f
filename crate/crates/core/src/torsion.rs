//! n-torsion points of the spinor torus `C^{2^k} / (Z^{2^k} ⊕ iZ^{2^k})`.
//!
//! A point is kept in matrix form: a `2^k × 2` array of residues mod `n`,
//! flattened row-wise, so entry `2l` is the real numerator and `2l + 1` the
//! imaginary numerator of component `l` (0-based). Component `l` is the
//! torus element `a_l / n + (b_l / n) i`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::MAX_K;
use crate::monomial::MonomialMatrix;
use crate::unit::Unit;

/// Default enumeration cap, in points.
pub const DEFAULT_CAP: u64 = 1 << 24;

pub const MAX_ORDER: u32 = 1 << 16;

/// A 2-torsion value of the one-dimensional torus: `v0 = 0`, `v1 = 1/2`,
/// `v2 = i/2`, `v3 = (1+i)/2`. Bit 0 is the real numerator, bit 1 the
/// imaginary one, so addition is XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarterPoint(u8);

impl QuarterPoint {
    pub fn new(label: u8) -> Option<QuarterPoint> {
        (label < 4).then_some(QuarterPoint(label))
    }

    pub fn label(self) -> u8 {
        self.0
    }

    pub fn from_pair(a: u16, b: u16) -> QuarterPoint {
        QuarterPoint(((a & 1) | ((b & 1) << 1)) as u8)
    }

    pub fn pair(self) -> (u16, u16) {
        (u16::from(self.0 & 1), u16::from(self.0 >> 1))
    }
}

impl std::ops::Add for QuarterPoint {
    type Output = QuarterPoint;
    // coordinates mod 2 add bitwise
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: QuarterPoint) -> QuarterPoint {
        QuarterPoint(self.0 ^ rhs.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    k: u32,
    n: u32,
    entries: Vec<u16>,
}

pub(crate) fn check_order(n: u32) -> Result<()> {
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(Error::TorsionOrder(n));
    }
    Ok(())
}

pub(crate) fn check_torsion_level(k: u32) -> Result<()> {
    if k == 0 || k > MAX_K {
        return Err(Error::LevelOutOfRange { k, max: MAX_K });
    }
    Ok(())
}

impl TorsionPoint {
    /// `entries` is the flattened matrix form; each must be below `n`.
    pub fn new(k: u32, n: u32, entries: Vec<u16>) -> Result<TorsionPoint> {
        check_torsion_level(k)?;
        check_order(n)?;
        let want = 2usize << k;
        if entries.len() != want {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: want,
            });
        }
        if let Some(&bad) = entries.iter().find(|&&x| u32::from(x) >= n) {
            return Err(Error::Parse(format!("residue {bad} not below n = {n}")));
        }
        Ok(TorsionPoint { k, n, entries })
    }

    pub(crate) fn from_parts_unchecked(k: u32, n: u32, entries: Vec<u16>) -> TorsionPoint {
        TorsionPoint { k, n, entries }
    }

    pub fn zero(k: u32, n: u32) -> Result<TorsionPoint> {
        TorsionPoint::new(k, n, vec![0; 2usize << k])
    }

    /// Every component equal to `(a, b)`.
    pub fn constant(k: u32, n: u32, a: u16, b: u16) -> Result<TorsionPoint> {
        let mut entries = Vec::with_capacity(2usize << k);
        for _ in 0..1usize << k {
            entries.extend([a, b]);
        }
        TorsionPoint::new(k, n, entries)
    }

    /// 2-torsion point from quarter-point labels, one per component.
    pub fn from_quarters(labels: &[u8]) -> Result<TorsionPoint> {
        if !labels.len().is_power_of_two() || labels.len() < 2 {
            return Err(Error::NotPowerOfTwo(labels.len()));
        }
        let k = labels.len().trailing_zeros();
        let mut entries = Vec::with_capacity(labels.len() * 2);
        for &l in labels {
            let q = QuarterPoint::new(l)
                .ok_or_else(|| Error::Parse(format!("quarter-point label {l} not in 0..4")))?;
            let (a, b) = q.pair();
            entries.extend([a, b]);
        }
        TorsionPoint::new(k, 2, entries)
    }

    /// Parses `v0321`, `v_0321` or `v_{0321}`.
    pub fn parse_quarters(text: &str) -> Result<TorsionPoint> {
        let t = text.trim();
        let body = t
            .strip_prefix('v')
            .ok_or_else(|| Error::Parse(format!("expected 'v' prefix: {t:?}")))?;
        let body = body.strip_prefix('_').unwrap_or(body);
        let body = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .unwrap_or(body);
        let labels = body
            .chars()
            .map(|c| c.to_digit(10).filter(|&d| d < 4).map(|d| d as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::Parse(format!("bad quarter-point word {t:?}")))?;
        TorsionPoint::from_quarters(&labels)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of vector components, `2^k`.
    pub fn components(&self) -> usize {
        1 << self.k
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn component(&self, l: usize) -> (u16, u16) {
        (self.entries[2 * l], self.entries[2 * l + 1])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Quarter-point labels; only meaningful for `n = 2`.
    pub fn quarters(&self) -> Option<Vec<u8>> {
        (self.n == 2).then(|| {
            (0..self.components())
                .map(|l| {
                    let (a, b) = self.component(l);
                    QuarterPoint::from_pair(a, b).label()
                })
                .collect()
        })
    }

    /// `v0321`-style word for `n = 2`.
    pub fn quarter_word(&self) -> Option<String> {
        self.quarters().map(|q| {
            let digits: String = q.iter().map(|d| char::from(b'0' + d)).collect();
            format!("v{digits}")
        })
    }

    fn same_space(&self, other: &TorsionPoint) -> Result<()> {
        if self.k != other.k || self.n != other.n {
            return Err(Error::PointMismatch {
                k1: self.k,
                n1: self.n,
                k2: other.k,
                n2: other.n,
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> TorsionPoint {
        let n = self.n;
        TorsionPoint {
            entries: self.entries.iter().map(|&x| neg_mod(x, n)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &TorsionPoint) -> Result<TorsionPoint> {
        add_points(self, &other.neg())
    }
}

#[inline]
fn neg_mod(x: u16, n: u32) -> u16 {
    if x == 0 {
        0
    } else {
        (n - u32::from(x)) as u16
    }
}

#[inline]
pub(crate) fn add_mod(x: u16, y: u16, n: u32) -> u16 {
    ((u32::from(x) + u32::from(y)) % n) as u16
}

#[inline]
pub(crate) fn sub_mod(x: u16, y: u16, n: u32) -> u16 {
    add_mod(x, neg_mod(y, n), n)
}

/// Multiplication of one component `(a, b)` by `u`, mod `n`.
#[inline]
pub fn scale_component(u: Unit, (a, b): (u16, u16), n: u32) -> (u16, u16) {
    match u.exponent() {
        0 => (a, b),
        1 => (neg_mod(b, n), a),
        2 => (neg_mod(a, n), neg_mod(b, n)),
        _ => (b, neg_mod(a, n)),
    }
}

pub fn add_points(v: &TorsionPoint, w: &TorsionPoint) -> Result<TorsionPoint> {
    v.same_space(w)?;
    let n = v.n;
    Ok(TorsionPoint {
        k: v.k,
        n,
        entries: v
            .entries
            .iter()
            .zip(&w.entries)
            .map(|(&x, &y)| add_mod(x, y, n))
            .collect(),
    })
}

/// Scalar multiplication of every component by `u`.
pub fn unit_scale(u: Unit, v: &TorsionPoint) -> TorsionPoint {
    let mut entries = Vec::with_capacity(v.entries.len());
    for l in 0..v.components() {
        let (a, b) = scale_component(u, v.component(l), v.n);
        entries.extend([a, b]);
    }
    TorsionPoint {
        entries,
        ..v.clone()
    }
}

/// Writes `m · src` into `dst`, both flattened matrix forms.
#[inline]
pub fn monomial_act_slice(m: &MonomialMatrix, src: &[u16], dst: &mut [u16], n: u32) {
    for j in 0..m.dim() {
        let (row, u) = m.column(j);
        let (a, b) = scale_component(u, (src[2 * j], src[2 * j + 1]), n);
        dst[2 * row] = a;
        dst[2 * row + 1] = b;
    }
}

/// Matrix-vector action of a monomial matrix, reduced mod the lattice.
pub fn monomial_act(m: &MonomialMatrix, v: &TorsionPoint) -> Result<TorsionPoint> {
    if m.dim() != v.components() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: v.components(),
        });
    }
    let mut entries = vec![0; v.entries.len()];
    monomial_act_slice(m, &v.entries, &mut entries, v.n);
    Ok(TorsionPoint {
        entries,
        ..v.clone()
    })
}

/// The finite group `J_n` at level `k`, with points indexed in lexicographic
/// order of their matrix forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionSpace {
    k: u32,
    n: u32,
}

impl TorsionSpace {
    pub fn new(k: u32, n: u32) -> Result<TorsionSpace> {
        check_torsion_level(k)?;
        check_order(n)?;
        Ok(TorsionSpace { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of matrix-form entries, `2^{k+1}`.
    pub fn entry_count(&self) -> usize {
        2 << self.k
    }

    /// `n^{2^{k+1}}`, or `None` past 128 bits.
    pub fn size(&self) -> Option<u128> {
        u128::from(self.n).checked_pow(self.entry_count() as u32)
    }

    /// Size if enumerable under `cap`.
    pub fn enumerable_size(&self, cap: u64) -> Result<u64> {
        match self.size() {
            Some(s) if s <= u128::from(cap) => Ok(s as u64),
            Some(s) => Err(Error::CapExceeded {
                count: s.to_string(),
                cap,
            }),
            None => Err(Error::CapExceeded {
                count: format!("{}^{}", self.n, self.entry_count()),
                cap,
            }),
        }
    }

    pub fn contains(&self, v: &TorsionPoint) -> bool {
        v.k == self.k && v.n == self.n
    }

    /// Decodes `index` into `buf` (most significant digit first).
    #[inline]
    pub fn point_into(&self, mut index: u64, buf: &mut [u16]) {
        let n = u64::from(self.n);
        for slot in buf.iter_mut().rev() {
            *slot = (index % n) as u16;
            index /= n;
        }
    }

    pub fn point(&self, index: u64) -> TorsionPoint {
        let mut entries = vec![0; self.entry_count()];
        self.point_into(index, &mut entries);
        TorsionPoint::from_parts_unchecked(self.k, self.n, entries)
    }

    /// Inverse of [`TorsionSpace::point_into`]; meaningful under the cap.
    #[inline]
    pub fn index_of_entries(&self, entries: &[u16]) -> u64 {
        let n = u64::from(self.n);
        entries.iter().fold(0u64, |acc, &x| acc * n + u64::from(x))
    }

    pub fn index_of(&self, v: &TorsionPoint) -> u64 {
        self.index_of_entries(&v.entries)
    }
}

/// Every point of `J_n` at level `k`, in lexicographic order.
pub fn enumerate_torsion(
    k: u32,
    n: u32,
    cap: u64,
) -> Result<impl Iterator<Item = TorsionPoint> + Clone> {
    let space = TorsionSpace::new(k, n)?;
    let size = space.enumerable_size(cap)?;
    Ok((0..size).map(move |i| space.point(i)))
}

/// `count` reproducible pseudo-random points.
pub fn sample_torsion(k: u32, n: u32, count: usize, seed: u64) -> Result<Vec<TorsionPoint>> {
    let space = TorsionSpace::new(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = space.entry_count();
    Ok((0..count)
        .map(|_| {
            let entries = (0..len).map(|_| rng.gen_range(0..n) as u16).collect();
            TorsionPoint::from_parts_unchecked(k, n, entries)
        })
        .collect())
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(word) = self.quarter_word() {
            return f.write_str(&word);
        }
        f.write_str("[")?;
        for l in 0..self.components() {
            if l > 0 {
                f.write_str("; ")?;
            }
            let (a, b) = self.component(l);
            write!(f, "{a} {b}")?;
        }
        write!(f, "] mod {}", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    k: u32,
    n: u32,
    matrix: Vec<[u16; 2]>,
}

impl Serialize for TorsionPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointJson {
            k: self.k,
            n: self.n,
            matrix: (0..self.components())
                .map(|l| {
                    let (a, b) = self.component(l);
                    [a, b]
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorsionPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PointJson::deserialize(d)?;
        let entries = raw
            .matrix
            .iter()
            .flat_map(|row| row.iter().copied())
            .collect();
        TorsionPoint::new(raw.k, raw.n, entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generator_rep, vector_generator_rep, GeneratorIndex};

    fn quarters(word: &str) -> TorsionPoint {
        TorsionPoint::parse_quarters(word).unwrap()
    }

    #[test]
    fn klein_four_relations() {
        let v: Vec<QuarterPoint> = (0..4).map(|a| QuarterPoint::new(a).unwrap()).collect();
        assert_eq!(v[1] + v[2], v[3]);
        assert_eq!(v[1] + v[3], v[2]);
        assert_eq!(v[2] + v[3], v[1]);
        for &x in &v {
            assert_eq!(x + x, v[0]);
            assert_eq!(x + v[0], x);
        }
        assert_eq!(v[1].pair(), (1, 0));
        assert_eq!(v[2].pair(), (0, 1));
        assert_eq!(v[3].pair(), (1, 1));
    }

    #[test]
    fn addition_examples() {
        let sum = add_points(&quarters("v11"), &quarters("v22")).unwrap();
        assert_eq!(sum, quarters("v33"));
        let x = quarters("v0123");
        assert_eq!(
            add_points(&x, &TorsionPoint::zero(2, 2).unwrap()).unwrap(),
            x
        );
        let a = TorsionPoint::new(1, 4, vec![1, 0, 0, 0]).unwrap();
        let b = TorsionPoint::new(1, 4, vec![2, 3, 0, 0]).unwrap();
        assert_eq!(add_points(&a, &b).unwrap().component(0), (3, 3));
        assert!(matches!(
            add_points(&a, &quarters("v00")),
            Err(Error::PointMismatch { .. })
        ));
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(unit_scale(Unit::I, &quarters("v11")), quarters("v22"));
        let x = quarters("v0123");
        assert_eq!(unit_scale(Unit::NEG_ONE, &x), x);
        let p = TorsionPoint::new(1, 4, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(unit_scale(Unit::I, &p).component(0), (3, 1));
        assert_eq!(unit_scale(Unit::I, &x), quarters("v0213"));
    }

    #[test]
    fn i_squared_is_negation() {
        for n in 2..=5 {
            for v in enumerate_torsion(1, n, DEFAULT_CAP).unwrap() {
                let twice = unit_scale(Unit::I, &unit_scale(Unit::I, &v));
                assert_eq!(twice, unit_scale(Unit::NEG_ONE, &v));
                if n == 2 {
                    assert_eq!(twice, v);
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let v = quarters("v0312");
        assert_eq!(monomial_act(&MonomialMatrix::identity(4), &v).unwrap(), v);

        // e2 at k = 1 is i followed by swapping the two components
        let e2 = vector_generator_rep(1, 2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let t = TorsionPoint::from_quarters(&[a, b]).unwrap();
                let swapped = TorsionPoint::from_quarters(&[b, a]).unwrap();
                assert_eq!(
                    monomial_act(&e2, &t).unwrap(),
                    unit_scale(Unit::I, &swapped)
                );
            }
        }

        for n in [3, 4, 7] {
            for k in 1..=3 {
                let w = TorsionPoint::constant(k, n, 1, 1).unwrap();
                let e1 = vector_generator_rep(k, 1).unwrap();
                let out = monomial_act(&e1, &w).unwrap();
                for l in 0..out.components() {
                    let want = if l % 2 == 0 {
                        (n as u16 - 1, 1)
                    } else {
                        (1, n as u16 - 1)
                    };
                    assert_eq!(out.component(l), want);
                }
            }
        }
        assert!(monomial_act(&MonomialMatrix::identity(2), &v).is_err());
    }

    #[test]
    fn enumeration_sizes_and_cap() {
        assert_eq!(enumerate_torsion(1, 2, DEFAULT_CAP).unwrap().count(), 16);
        assert_eq!(enumerate_torsion(2, 2, DEFAULT_CAP).unwrap().count(), 256);
        assert_eq!(enumerate_torsion(1, 3, DEFAULT_CAP).unwrap().count(), 81);
        let all: std::collections::HashSet<_> =
            enumerate_torsion(1, 3, DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len(), 81);
        assert!(matches!(
            enumerate_torsion(4, 2, DEFAULT_CAP),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            enumerate_torsion(6, 3, DEFAULT_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let pts: Vec<_> = enumerate_torsion(1, 3, DEFAULT_CAP).unwrap().collect();
        assert!(pts.windows(2).all(|w| w[0].entries() < w[1].entries()));
        let space = TorsionSpace::new(1, 3).unwrap();
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(space.index_of(p), i as u64);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_torsion(4, 2, 10_000, 7).unwrap();
        let b = sample_torsion(4, 2, 10_000, 7).unwrap();
        assert_eq!(a.len(), 10_000);
        assert_eq!(a, b);
        assert_ne!(a, sample_torsion(4, 2, 10_000, 8).unwrap());
        let c = sample_torsion(1, 2, 3, 0).unwrap();
        assert_eq!(c.len(), 3);
        for p in sample_torsion(2, 5, 100, 1).unwrap() {
            assert!(p.entries().iter().all(|&x| x < 5));
        }
    }

    #[test]
    fn group_axioms_on_small_spaces() {
        for (k, n) in [(1, 2), (1, 3), (1, 4)] {
            let pts: Vec<_> = enumerate_torsion(k, n, DEFAULT_CAP).unwrap().collect();
            let zero = TorsionPoint::zero(k, n).unwrap();
            for x in &pts {
                assert_eq!(add_points(x, &x.neg()).unwrap(), zero);
                // n x = 0
                let mut acc = zero.clone();
                for _ in 0..n {
                    acc = add_points(&acc, x).unwrap();
                }
                assert_eq!(acc, zero);
                for y in pts.iter().step_by(7) {
                    assert_eq!(add_points(x, y).unwrap(), add_points(y, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn signs_vanish_on_two_torsion() {
        for k in 1..=2 {
            let pts: Vec<_> = enumerate_torsion(k, 2, DEFAULT_CAP).unwrap().collect();
            for mask in 0..1u32 << (2 * k) {
                let g = GeneratorIndex::new(k, mask, false).unwrap();
                let m = generator_rep(&g);
                for col in 0..m.dim() {
                    let flipped = m.with_coeff(col, -m.coeffs()[col]);
                    for v in &pts {
                        assert_eq!(
                            monomial_act(&m, v).unwrap(),
                            monomial_act(&flipped, v).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quarter_words_and_json() {
        let p = quarters("v_{0321}");
        assert_eq!(p.quarter_word().unwrap(), "v0321");
        assert_eq!(p.to_string(), "v0321");
        assert!(TorsionPoint::parse_quarters("v04").is_err());
        assert!(TorsionPoint::parse_quarters("v012").is_err());
        assert!(TorsionPoint::parse_quarters("w01").is_err());

        let q = TorsionPoint::new(1, 5, vec![1, 4, 0, 2]).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"k":1,"n":5,"matrix":[[1,4],[0,2]]}"#);
        let back: TorsionPoint = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(
            serde_json::from_str::<TorsionPoint>(r#"{"k":1,"n":5,"matrix":[[5,0],[0,0]]}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<TorsionPoint>(r#"{"k":1,"n":5,"matrix":[[1,0]]}"#).is_err());
    }

    #[test]
    fn matrix_form_numbering_matches_example() {
        // rows [0 1],[1 1],[0 0],[1 0] are the components v2, v3, v0, v1
        let p = TorsionPoint::new(2, 2, vec![0, 1, 1, 1, 0, 0, 1, 0]).unwrap();
        assert_eq!(p.quarters().unwrap(), vec![2, 3, 0, 1]);
    }
}
