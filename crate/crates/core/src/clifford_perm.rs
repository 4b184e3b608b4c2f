//! Permutations of `J_2` induced by generators.
//!
//! Every generator shape is `x ↦ x XOR s` for a switch mask `s`, so the
//! induced action on a 2-torsion point permutes components by XOR and, for
//! imaginary generators, multiplies each component by `i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{enumerate_gamma_hat, GeneratorIndex, GeneratorTable, DEFAULT_MAX_K};
use crate::monomial::{mono_matmul, type_of, EntryType, MonomialMatrix};
use crate::perm::Permutation;
use crate::report::Report;
use crate::torsion::{unit_scale, TorsionPoint};
use crate::unit::Unit;

/// `A_{2^j}` on `2^k` rows: swaps adjacent blocks of size `2^j`.
pub fn switch_permutation(k: u32, j: u32) -> Result<Permutation> {
    if j >= k {
        return Err(Error::SwitchOutOfRange { j, k });
    }
    let n = 1u32 << k;
    Ok(Permutation::from_images_unchecked(
        (0..n).map(|x| x ^ (1 << j)).collect(),
    ))
}

/// The permutation with image `x XOR bits` on `2^k` rows.
pub fn xor_permutation(k: u32, bits: u32) -> Permutation {
    Permutation::from_images_unchecked((0..1u32 << k).map(|x| x ^ bits).collect())
}

/// The permutation induced on `J_2` at level `k`: the composition of the
/// switches selected by `switch_bits`, followed by `i` when `imaginary`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CliffordPermutation {
    pub k: u32,
    pub switch_bits: u32,
    pub imaginary: bool,
}

impl CliffordPermutation {
    pub fn new(k: u32, switch_bits: u32, imaginary: bool) -> Result<CliffordPermutation> {
        if switch_bits >> k != 0 {
            return Err(Error::SwitchOutOfRange {
                j: 31 - switch_bits.leading_zeros(),
                k,
            });
        }
        Ok(CliffordPermutation {
            k,
            switch_bits,
            imaginary,
        })
    }

    pub fn identity(k: u32) -> CliffordPermutation {
        CliffordPermutation {
            k,
            switch_bits: 0,
            imaginary: false,
        }
    }

    pub fn realized_permutation(&self) -> Permutation {
        xor_permutation(self.k, self.switch_bits)
    }

    pub fn entry_type(&self) -> EntryType {
        if self.imaginary {
            EntryType::Imaginary
        } else {
            EntryType::Real
        }
    }

    /// Labels like `i·A4∘A1`; the identity is `(1)`.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = (0..self.k)
            .rev()
            .filter(|j| self.switch_bits >> j & 1 == 1)
            .map(|j| format!("A{}", 1u32 << j))
            .collect();
        if parts.is_empty() {
            parts.push("(1)".into());
        }
        let body = parts.join("∘");
        if self.imaginary {
            format!("i·{body}")
        } else {
            body
        }
    }

    /// Parses labels such as `A4∘(1)∘A1`, `i·(1)` or `i*A2*A1`. Factors may
    /// repeat; they compose by XOR.
    pub fn parse_label(k: u32, text: &str) -> Result<CliffordPermutation> {
        let bad = || Error::Parse(format!("bad permutation label {text:?}"));
        let mut rest = text.trim();
        let mut imaginary = false;
        for prefix in ["i·", "i*", "i."] {
            if let Some(r) = rest.strip_prefix(prefix) {
                imaginary = true;
                rest = r;
                break;
            }
        }
        if !imaginary && rest == "i" {
            return CliffordPermutation::new(k, 0, true);
        }
        if rest.is_empty() {
            return Err(bad());
        }
        let mut bits = 0u32;
        for factor in rest.split(['∘', '*']) {
            let factor = factor.trim();
            if factor == "(1)" || factor == "1" {
                continue;
            }
            let size: u32 = factor
                .strip_prefix('A')
                .and_then(|s| s.parse().ok())
                .filter(|s: &u32| s.is_power_of_two())
                .ok_or_else(bad)?;
            let j = size.trailing_zeros();
            if j >= k {
                return Err(Error::SwitchOutOfRange { j, k });
            }
            bits ^= 1 << j;
        }
        CliffordPermutation::new(k, bits, imaginary)
    }
}

impl fmt::Display for CliffordPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Reads off the induced permutation of a generator representation.
pub fn induced_from_matrix(m: &MonomialMatrix) -> Result<CliffordPermutation> {
    let dim = m.dim();
    let k = dim.trailing_zeros();
    let s = m.shape().apply(0);
    if (0..dim).any(|j| m.shape().apply(j) != j ^ s) {
        return Err(Error::ShapeNotBlockStructured);
    }
    Ok(CliffordPermutation {
        k,
        switch_bits: s as u32,
        imaginary: type_of(m)? == EntryType::Imaginary,
    })
}

pub fn induced_permutation(g: &GeneratorIndex) -> Result<CliffordPermutation> {
    induced_from_matrix(&GeneratorTable::new(g.k)?.rep(g))
}

/// Applies `p` to a 2-torsion point.
pub fn clifford_perm_act(p: &CliffordPermutation, v: &TorsionPoint) -> Result<TorsionPoint> {
    if v.k() != p.k || v.n() != 2 {
        return Err(Error::PointMismatch {
            k1: p.k,
            n1: 2,
            k2: v.k(),
            n2: v.n(),
        });
    }
    let len = v.components();
    let mut out = vec![0u16; 2 * len];
    for x in 0..len {
        let (a, b) = v.component(x ^ p.switch_bits as usize);
        out[2 * x] = a;
        out[2 * x + 1] = b;
    }
    let moved = TorsionPoint::from_parts_unchecked(p.k, 2, out);
    Ok(if p.imaginary {
        unit_scale(Unit::I, &moved)
    } else {
        moved
    })
}

/// `p∘q`. Switch masks and imaginary flags both combine by XOR.
pub fn compose_clifford(
    p: &CliffordPermutation,
    q: &CliffordPermutation,
) -> Result<CliffordPermutation> {
    if p.k != q.k {
        return Err(Error::DimensionMismatch {
            left: 1 << p.k,
            right: 1 << q.k,
        });
    }
    Ok(CliffordPermutation {
        k: p.k,
        switch_bits: p.switch_bits ^ q.switch_bits,
        imaginary: p.imaginary ^ q.imaginary,
    })
}

/// All distinct induced permutations at level `k`, keyed by the canonical
/// generator that realizes them.
pub fn induced_permutations(k: u32) -> Result<BTreeMap<CliffordPermutation, GeneratorIndex>> {
    let table = GeneratorTable::new(k)?;
    let mut out: BTreeMap<CliffordPermutation, GeneratorIndex> = BTreeMap::new();
    for g in enumerate_gamma_hat(k)? {
        let p = induced_from_matrix(&table.rep(&g))?;
        out.entry(p)
            .and_modify(|h| {
                if g.canonical_cmp(h).is_lt() {
                    *h = g;
                }
            })
            .or_insert(g);
    }
    Ok(out)
}

/// Checks the group structure of the induced permutations at level `k`.
pub fn verify_group_structure(k: u32) -> Result<Report> {
    if !(1..=DEFAULT_MAX_K).contains(&k) {
        return Err(Error::LevelOutOfRange {
            k,
            max: DEFAULT_MAX_K,
        });
    }
    let table = GeneratorTable::new(k)?;
    verify_group_structure_table(&table)
}

pub fn verify_group_structure_table(table: &GeneratorTable) -> Result<Report> {
    let k = table.k();
    let mut r = Report::new(format!("clifford-permutations k={k}"));

    let mut shapes = Vec::new();
    let mut induced: BTreeMap<CliffordPermutation, GeneratorIndex> = BTreeMap::new();
    let mut bad_shape = Vec::new();
    for g in enumerate_gamma_hat(k)? {
        let m = table.rep(&g);
        shapes.push(m.shape().clone());
        match induced_from_matrix(&m) {
            Ok(p) => {
                induced.entry(p).or_insert(g);
            }
            Err(_) => bad_shape.push(g.label()),
        }
    }
    r.check(
        "every shape is an XOR of switches",
        bad_shape.is_empty(),
        bad_shape.join(", "),
    );

    let perms: BTreeSet<Permutation> = shapes.into_iter().collect();
    let identity = Permutation::identity(1 << k);
    let closed = perms
        .iter()
        .all(|a| perms.iter().all(|b| perms.contains(&a.compose(b).unwrap())));
    let abelian = perms.iter().all(|a| {
        perms
            .iter()
            .all(|b| a.compose(b).unwrap() == b.compose(a).unwrap())
    });
    r.check(
        "shapes form an abelian group of order 2^k",
        perms.len() == 1 << k && perms.contains(&identity) && closed && abelian,
        format!("{} shapes", perms.len()),
    );

    let non_identity: Vec<&Permutation> = perms.iter().filter(|p| !p.is_identity()).collect();
    if k >= 2 {
        let odd: Vec<String> = non_identity
            .iter()
            .filter(|p| !p.is_even())
            .map(|p| p.to_string())
            .collect();
        r.check(
            "shapes lie in the alternating group",
            odd.is_empty(),
            odd.join(" "),
        );
    }
    let bad_inv: Vec<String> = non_identity
        .iter()
        .filter(|p| !p.is_involution() || !p.is_transposition_derangement())
        .map(|p| p.to_string())
        .collect();
    r.check(
        "non-identity shapes are fixed-point-free products of 2^(k-1) transpositions",
        bad_inv.is_empty(),
        bad_inv.join(" "),
    );

    let switches: Vec<Permutation> = (0..k)
        .map(|j| switch_permutation(k, j))
        .collect::<Result<_>>()?;
    let commute = switches.iter().all(|a| {
        switches
            .iter()
            .all(|b| a.compose(b).unwrap() == b.compose(a).unwrap())
    });
    let generated: BTreeSet<Permutation> = (0..1u32 << k)
        .map(|bits| {
            switches
                .iter()
                .enumerate()
                .filter(|(j, _)| bits >> j & 1 == 1)
                .fold(identity.clone(), |acc, (_, s)| acc.compose(s).unwrap())
        })
        .collect();
    r.check(
        "switches commute and generate exactly the shapes",
        commute && generated == perms,
        format!("{} generated", generated.len()),
    );

    r.check(
        "2^(k+1) induced permutations",
        induced.len() == 2 << k,
        format!("{}", induced.len()),
    );

    if k <= 4 {
        // product of generators must induce the XOR composition
        let reps: Vec<(CliffordPermutation, MonomialMatrix)> =
            induced.iter().map(|(p, g)| (*p, table.rep(g))).collect();
        let mut table_errors = Vec::new();
        for (p, a) in &reps {
            for (q, b) in &reps {
                let prod = mono_matmul(a, b)?;
                let expect = compose_clifford(p, q)?;
                match induced_from_matrix(&prod) {
                    Ok(got) if got == expect => {}
                    _ => table_errors.push(format!("{p} * {q}")),
                }
            }
        }
        r.check(
            "Cayley table matches Z2 x (Z2)^k",
            table_errors.is_empty(),
            if table_errors.is_empty() {
                format!("{} products", reps.len() * reps.len())
            } else {
                table_errors.join("; ")
            },
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: u32, s: &str) -> GeneratorIndex {
        GeneratorIndex::parse(k, s).unwrap()
    }

    #[test]
    fn switch_examples() {
        assert_eq!(
            switch_permutation(3, 0).unwrap().to_string(),
            "(1 2)(3 4)(5 6)(7 8)"
        );
        assert_eq!(
            switch_permutation(3, 1).unwrap().to_string(),
            "(1 3)(2 4)(5 7)(6 8)"
        );
        assert_eq!(
            switch_permutation(3, 2).unwrap().to_string(),
            "(1 5)(2 6)(3 7)(4 8)"
        );
        assert!(switch_permutation(3, 3).is_err());
    }

    #[test]
    fn worked_example() {
        let p = CliffordPermutation::new(3, 0b101, false).unwrap();
        assert_eq!(p.realized_permutation().to_string(), "(1 6)(2 5)(3 8)(4 7)");
        assert_eq!(p.label(), "A4∘A1");
    }

    #[test]
    fn labels_round_trip() {
        for k in 1..=4 {
            for bits in 0..1u32 << k {
                for imaginary in [false, true] {
                    let p = CliffordPermutation::new(k, bits, imaginary).unwrap();
                    assert_eq!(CliffordPermutation::parse_label(k, &p.label()).unwrap(), p);
                }
            }
        }
        let p = CliffordPermutation::parse_label(3, "A4∘(1)∘A1").unwrap();
        assert_eq!(p.switch_bits, 0b101);
        assert!(
            CliffordPermutation::parse_label(3, "i*A2")
                .unwrap()
                .imaginary
        );
        assert!(CliffordPermutation::parse_label(2, "A4").is_err());
        assert!(CliffordPermutation::parse_label(2, "A3").is_err());
        assert!(CliffordPermutation::parse_label(2, "").is_err());
    }

    #[test]
    fn composition_xor() {
        let a = CliffordPermutation::new(3, 0b101, true).unwrap();
        let b = CliffordPermutation::new(3, 0b011, true).unwrap();
        let c = compose_clifford(&a, &b).unwrap();
        assert_eq!((c.switch_bits, c.imaginary), (0b110, false));
    }

    #[test]
    fn induced_level_two() {
        assert_eq!(induced_permutation(&g(2, "e1")).unwrap().label(), "i·(1)");
        assert_eq!(induced_permutation(&g(2, "e3")).unwrap().label(), "A1");
        assert_eq!(
            induced_permutation(&g(2, "e14")).unwrap().label(),
            "i·A2∘A1"
        );
        assert_eq!(induced_permutation(&g(2, "e34")).unwrap().label(), "A2");
    }

    #[test]
    fn induced_act_matches_monomial_action() {
        use crate::torsion::{enumerate_torsion, monomial_act};
        let table = GeneratorTable::new(2).unwrap();
        for h in enumerate_gamma_hat(2).unwrap() {
            let m = table.rep(&h);
            let p = induced_from_matrix(&m).unwrap();
            for v in enumerate_torsion(2, 2, 1 << 20).unwrap() {
                assert_eq!(
                    clifford_perm_act(&p, &v).unwrap(),
                    monomial_act(&m, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn group_structure() {
        for k in 1..=4 {
            let r = verify_group_structure(k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn rejects_non_block_shapes() {
        let m = MonomialMatrix::new(
            Permutation::from_images(vec![1, 2, 0, 3]).unwrap(),
            vec![Unit::ONE; 4],
        )
        .unwrap();
        assert!(matches!(
            induced_from_matrix(&m),
            Err(Error::ShapeNotBlockStructured)
        ));
    }
}
