//! Equivalence of generators by their action on 2-torsion points.
//!
//! Two generators are equivalent when they act identically on every point of
//! `J_2`. The complete invariant is the pair (shape, entry type) of the
//! representation; [`classify`] keys on it. [`classify_by_action`] is the
//! brute-force route that compares actions point by point and is used to
//! validate the keyed classification at small `k`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{
    enumerate_gamma_hat, enumerate_unsigned, lift_generator, GeneratorIndex, GeneratorTable,
    DEFAULT_MAX_K,
};
use crate::monomial::{type_of, EntryType, MonomialMatrix};
use crate::perm::Permutation;
use crate::report::Report;
use crate::torsion::{monomial_act_slice, sample_torsion, TorsionSpace};

/// Largest level at which `J_2` is enumerated exhaustively (65 536 points).
pub const EXHAUSTIVE_MAX_K: u32 = 3;

/// Points sampled per comparison above [`EXHAUSTIVE_MAX_K`].
pub const SAMPLE_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionKey {
    pub shape: Permutation,
    pub entry_type: EntryType,
}

impl ActionKey {
    pub fn of(m: &MonomialMatrix) -> Result<ActionKey> {
        Ok(ActionKey {
            shape: m.shape().clone(),
            entry_type: type_of(m)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionClass {
    pub k: u32,
    pub shape: Permutation,
    pub entry_type: EntryType,
    /// Unsigned members in canonical order; every negation is also a member.
    pub members: Vec<GeneratorIndex>,
}

impl ActionClass {
    pub fn canonical(&self) -> GeneratorIndex {
        self.members[0]
    }

    pub fn key(&self) -> ActionKey {
        ActionKey {
            shape: self.shape.clone(),
            entry_type: self.entry_type,
        }
    }

    pub fn even_count(&self) -> usize {
        self.members.iter().filter(|g| g.len() % 2 == 0).count()
    }

    pub fn odd_count(&self) -> usize {
        self.members.len() - self.even_count()
    }

    pub fn contains(&self, g: &GeneratorIndex) -> bool {
        self.members.contains(&g.unsigned())
    }
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    canonical: String,
    #[serde(rename = "type")]
    entry_type: EntryType,
    shape: Permutation,
    members: Vec<String>,
    even_count: usize,
    odd_count: usize,
}

impl Serialize for ActionClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassJson {
            canonical: self.canonical().label(),
            entry_type: self.entry_type,
            shape: self.shape.clone(),
            members: self.members.iter().map(|g| g.label()).collect(),
            even_count: self.even_count(),
            odd_count: self.odd_count(),
        }
        .serialize(s)
    }
}

/// `{k, classes: [...]}` registry as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRegistry {
    pub k: u32,
    pub classes: Vec<ActionClass>,
}

impl ClassRegistry {
    pub fn build(k: u32) -> Result<ClassRegistry> {
        Ok(ClassRegistry {
            k,
            classes: classify(k)?,
        })
    }

    pub fn class_of(&self, g: &GeneratorIndex) -> Option<&ActionClass> {
        self.classes.iter().find(|c| c.contains(g))
    }

    /// Looks up a class by any member label, e.g. `e14` or `-e234`.
    pub fn by_label(&self, label: &str) -> Result<&ActionClass> {
        let g = GeneratorIndex::parse(self.k, label)?;
        self.class_of(&g)
            .ok_or_else(|| Error::Parse(format!("no class contains {label}")))
    }
}

fn classify_with(table: &GeneratorTable) -> Result<Vec<ActionClass>> {
    let k = table.k();
    let mut groups: BTreeMap<ActionKey, Vec<GeneratorIndex>> = BTreeMap::new();
    for g in enumerate_gamma_hat(k)? {
        let key = ActionKey::of(&table.rep(&g))?;
        groups.entry(key).or_default().push(g);
    }
    let mut classes: Vec<ActionClass> = groups
        .into_iter()
        .map(|(key, signed)| {
            let mut members: Vec<GeneratorIndex> =
                signed.into_iter().filter(|g| !g.negative).collect();
            members.sort_by(|a, b| a.canonical_cmp(b));
            ActionClass {
                k,
                shape: key.shape,
                entry_type: key.entry_type,
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.canonical().canonical_cmp(&b.canonical()));
    Ok(classes)
}

/// Partitions the generators at level `k` into action classes keyed by
/// (shape, type). Signs always land in the same class.
pub fn classify(k: u32) -> Result<Vec<ActionClass>> {
    classify_with(&GeneratorTable::new(k)?)
}

fn fingerprint(m: &MonomialMatrix, space: &TorsionSpace) -> u64 {
    let size = space.enumerable_size(u64::MAX).expect("enumerable");
    let len = space.entry_count();
    let mut src = vec![0u16; len];
    let mut dst = vec![0u16; len];
    let mut hasher = DefaultHasher::new();
    for idx in 0..size {
        space.point_into(idx, &mut src);
        monomial_act_slice(m, &src, &mut dst, space.n());
        space.index_of_entries(&dst).hash(&mut hasher);
    }
    hasher.finish()
}

fn same_action_exhaustive(a: &MonomialMatrix, b: &MonomialMatrix, space: &TorsionSpace) -> bool {
    let size = space.enumerable_size(u64::MAX).expect("enumerable");
    let len = space.entry_count();
    let mut src = vec![0u16; len];
    let mut da = vec![0u16; len];
    let mut db = vec![0u16; len];
    (0..size).all(|idx| {
        space.point_into(idx, &mut src);
        monomial_act_slice(a, &src, &mut da, 2);
        monomial_act_slice(b, &src, &mut db, 2);
        da == db
    })
}

fn same_action_sampled(a: &MonomialMatrix, b: &MonomialMatrix, k: u32, seed: u64) -> bool {
    let pts = sample_torsion(k, 2, SAMPLE_POINTS, seed).expect("valid level");
    let len = 2usize << k;
    let mut da = vec![0u16; len];
    let mut db = vec![0u16; len];
    pts.iter().all(|p| {
        monomial_act_slice(a, p.entries(), &mut da, 2);
        monomial_act_slice(b, p.entries(), &mut db, 2);
        da == db
    })
}

/// Whether `g` and `h` act identically on `J_2`. Exhaustive up to
/// [`EXHAUSTIVE_MAX_K`]; above it uses the (shape, type) criterion.
pub fn actions_equivalent(g: &GeneratorIndex, h: &GeneratorIndex) -> Result<bool> {
    if g.k != h.k {
        return Err(Error::DimensionMismatch {
            left: 1 << g.k,
            right: 1 << h.k,
        });
    }
    let table = GeneratorTable::new(g.k)?;
    let (a, b) = (table.rep(g), table.rep(h));
    if g.k <= EXHAUSTIVE_MAX_K {
        Ok(same_action_exhaustive(&a, &b, &TorsionSpace::new(g.k, 2)?))
    } else {
        Ok(ActionKey::of(&a)? == ActionKey::of(&b)?)
    }
}

/// Sampled action comparison on [`SAMPLE_POINTS`] seeded points.
pub fn actions_agree_on_sample(g: &GeneratorIndex, h: &GeneratorIndex, seed: u64) -> Result<bool> {
    let table = GeneratorTable::new(g.k)?;
    Ok(same_action_sampled(&table.rep(g), &table.rep(h), g.k, seed))
}

/// Brute-force partition of all signed generators by their action on every
/// point of `J_2`. Actions are grouped by a hash of the full image and each
/// group is then confirmed point by point against its first member.
pub fn classify_by_action(k: u32) -> Result<Vec<Vec<GeneratorIndex>>> {
    if k == 0 || k > EXHAUSTIVE_MAX_K {
        return Err(Error::LevelOutOfRange {
            k,
            max: EXHAUSTIVE_MAX_K,
        });
    }
    let table = GeneratorTable::new(k)?;
    let space = TorsionSpace::new(k, 2)?;
    let gens: Vec<GeneratorIndex> = enumerate_gamma_hat(k)?.collect();
    let reps: Vec<MonomialMatrix> = gens.iter().map(|g| table.rep(g)).collect();
    let prints: Vec<u64> = reps.par_iter().map(|m| fingerprint(m, &space)).collect();

    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, fp) in prints.iter().enumerate() {
        buckets.entry(*fp).or_default().push(i);
    }
    let mut classes = Vec::new();
    for members in buckets.into_values() {
        // a hash collision would split a bucket into several true classes
        let mut remaining = members;
        while let Some(&head) = remaining.first() {
            let (same, rest): (Vec<usize>, Vec<usize>) = remaining
                .into_iter()
                .partition(|&i| same_action_exhaustive(&reps[head], &reps[i], &space));
            classes.push(same.into_iter().map(|i| gens[i]).collect::<Vec<_>>());
            remaining = rest;
        }
    }
    for c in &mut classes {
        c.sort_by(|a, b| a.canonical_cmp(b));
    }
    classes.sort_by(|a, b| a[0].canonical_cmp(&b[0]));
    Ok(classes)
}

/// Checks the four counting statements about the classes at level `k`.
pub fn verify_structure_theorem(k: u32) -> Result<Report> {
    if k == 0 || k > 5 {
        return Err(Error::LevelOutOfRange { k, max: 5 });
    }
    Ok(structure_report(k, &classify(k)?))
}

pub fn verify_structure_theorem_table(table: &GeneratorTable) -> Result<Report> {
    Ok(structure_report(table.k(), &classify_with(table)?))
}

fn structure_report(k: u32, classes: &[ActionClass]) -> Report {
    let mut r = Report::new(format!("structure-theorem k={k}"));
    let size = 1usize << (k - 1);
    let bad_sizes: Vec<String> = classes
        .iter()
        .filter(|c| c.members.len() != size)
        .map(|c| format!("[{}] has {}", c.canonical(), c.members.len()))
        .collect();
    r.check(
        "(1) every class has 2^(k-1) unsigned members",
        bad_sizes.is_empty(),
        if bad_sizes.is_empty() {
            format!("size {size}")
        } else {
            bad_sizes.join("; ")
        },
    );

    let real = classes
        .iter()
        .filter(|c| c.entry_type == EntryType::Real)
        .count();
    let imag = classes.len() - real;
    r.check(
        "(2) 2^(k+1) classes, half real and half imaginary",
        classes.len() == 2 << k && real == 1 << k && imag == 1 << k,
        format!("{} classes, {real} real, {imag} imaginary", classes.len()),
    );

    let mut by_shape: BTreeMap<&Permutation, Vec<EntryType>> = BTreeMap::new();
    for c in classes {
        by_shape.entry(&c.shape).or_default().push(c.entry_type);
    }
    let shapes_ok = by_shape.len() == 1 << k
        && by_shape.values().all(|types| {
            let mut t = types.clone();
            t.sort();
            t == [EntryType::Real, EntryType::Imaginary]
        });
    r.check(
        "(3) 2^k shapes, each once real and once imaginary",
        shapes_ok,
        format!("{} shapes", by_shape.len()),
    );

    let unbalanced: Vec<String> = classes
        .iter()
        .filter(|c| c.even_count() != c.odd_count())
        .map(|c| {
            format!(
                "[{}] even {} odd {}",
                c.canonical(),
                c.even_count(),
                c.odd_count()
            )
        })
        .collect();
    r.check(
        "(4) even and odd |mu| equinumerous in every class",
        unbalanced.is_empty(),
        unbalanced.join("; "),
    );
    r
}

/// For all pairs of unsigned generators at level `k`: the classes of their
/// four lifts coincide when the shapes agree and are disjoint otherwise.
pub fn verify_lift_classes(k: u32) -> Result<Report> {
    if k == 0 || k > 4 {
        return Err(Error::LevelOutOfRange { k, max: 4 });
    }
    let lower = GeneratorTable::new(k)?;
    let upper = GeneratorTable::new(k + 1)?;
    let gens: Vec<GeneratorIndex> = enumerate_unsigned(k)?.collect();
    let mut lifted: Vec<(Permutation, BTreeSet<ActionKey>)> = Vec::with_capacity(gens.len());
    let mut kron_failures = Vec::new();
    for g in &gens {
        let lift = lift_generator(g)?;
        if !lift.shift_matches_kron {
            kron_failures.push(g.label());
        }
        let keys = lift
            .generators
            .iter()
            .map(|x| ActionKey::of(&upper.rep(x)))
            .collect::<Result<BTreeSet<_>>>()?;
        lifted.push((lower.rep(g).shape().clone(), keys));
    }

    let mut r = Report::new(format!("lift-classes k={k}"));
    r.check(
        "shifted generator equals Kronecker lift",
        kron_failures.is_empty(),
        kron_failures.join(", "),
    );
    let four: Vec<String> = gens
        .iter()
        .zip(&lifted)
        .filter(|(_, (_, keys))| keys.len() != 4)
        .map(|(g, _)| g.label())
        .collect();
    r.check(
        "each generator lifts into four distinct classes",
        four.is_empty(),
        four.join(", "),
    );

    let results: Vec<(usize, usize, Option<String>)> = (0..gens.len())
        .into_par_iter()
        .map(|i| {
            let mut same = 0usize;
            let mut diff = 0usize;
            let mut bad = None;
            for j in 0..gens.len() {
                let (si, ki) = &lifted[i];
                let (sj, kj) = &lifted[j];
                let ok = if si == sj {
                    same += 1;
                    ki == kj
                } else {
                    diff += 1;
                    ki.is_disjoint(kj)
                };
                if !ok && bad.is_none() {
                    bad = Some(format!("{} vs {}", gens[i], gens[j]));
                }
            }
            (same, diff, bad)
        })
        .collect();
    let same: usize = results.iter().map(|r| r.0).sum();
    let diff: usize = results.iter().map(|r| r.1).sum();
    let bad: Vec<String> = results.into_iter().filter_map(|r| r.2).collect();
    r.check(
        "equal shapes give equal lifted classes, unequal shapes disjoint ones",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{same} same-shape and {diff} different-shape ordered pairs")
        } else {
            bad.join("; ")
        },
    );
    Ok(r)
}

/// Compares [`classify`] with [`classify_by_action`] at level `k`.
pub fn cross_validate_classification(k: u32) -> Result<Report> {
    let keyed = classify(k)?;
    let brute = classify_by_action(k)?;
    let mut r = Report::new(format!("classification cross-check k={k}"));
    let keyed_sets: BTreeSet<Vec<(u32, bool)>> = keyed
        .iter()
        .map(|c| {
            let mut v: Vec<(u32, bool)> = c
                .members
                .iter()
                .flat_map(|g| [(g.mask, false), (g.mask, true)])
                .collect();
            v.sort();
            v
        })
        .collect();
    let brute_sets: BTreeSet<Vec<(u32, bool)>> = brute
        .iter()
        .map(|c| {
            let mut v: Vec<(u32, bool)> = c.iter().map(|g| (g.mask, g.negative)).collect();
            v.sort();
            v
        })
        .collect();
    r.check(
        "keyed classes equal exhaustive action classes",
        keyed_sets == brute_sets,
        format!("{} keyed, {} by action", keyed.len(), brute.len()),
    );
    Ok(r)
}

/// Sampled cross-check above the exhaustive range: every pair of generators
/// is compared on [`SAMPLE_POINTS`] seeded points against the keyed verdict.
pub fn cross_validate_sampled(k: u32, seed: u64) -> Result<Report> {
    if k > DEFAULT_MAX_K {
        return Err(Error::LevelOutOfRange {
            k,
            max: DEFAULT_MAX_K,
        });
    }
    let table = GeneratorTable::new(k)?;
    let classes = classify_with(&table)?;
    let pts = sample_torsion(k, 2, SAMPLE_POINTS, seed)?;
    let len = 2usize << k;
    // images of the sample under each class representative
    let images: Vec<Vec<u16>> = classes
        .par_iter()
        .map(|c| {
            let m = table.rep(&c.canonical());
            let mut out = Vec::with_capacity(pts.len() * len);
            let mut buf = vec![0u16; len];
            for p in &pts {
                monomial_act_slice(&m, p.entries(), &mut buf, 2);
                out.extend_from_slice(&buf);
            }
            out
        })
        .collect();
    let distinct: BTreeSet<&Vec<u16>> = images.iter().collect();
    let mut r = Report::new(format!("classification sampled cross-check k={k}"));
    r.check(
        "class representatives act differently on the sample",
        distinct.len() == classes.len(),
        format!(
            "{} distinct images for {} classes",
            distinct.len(),
            classes.len()
        ),
    );
    let mismatched: Vec<String> = classes
        .par_iter()
        .zip(&images)
        .flat_map_iter(|(c, image)| {
            let table = &table;
            let pts = &pts;
            c.members.iter().filter_map(move |g| {
                let m = table.rep(&g.negated());
                let mut buf = vec![0u16; len];
                let agree = pts.iter().enumerate().all(|(i, p)| {
                    monomial_act_slice(&m, p.entries(), &mut buf, 2);
                    buf[..] == image[i * len..(i + 1) * len]
                });
                (!agree).then(|| g.label())
            })
        })
        .collect();
    r.check(
        "every member and its negation matches its representative on the sample",
        mismatched.is_empty(),
        mismatched.join(", "),
    );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: u32, s: &str) -> GeneratorIndex {
        GeneratorIndex::parse(k, s).unwrap()
    }

    #[test]
    fn equivalence_examples_at_level_one() {
        // i·I2 ~ E1 and E2 ~ B, via e1 ~ -e1... checked on generators directly
        assert!(actions_equivalent(&g(1, "e1"), &g(1, "-e1")).unwrap());
        assert!(!actions_equivalent(&g(1, "e1"), &g(1, "e2")).unwrap());
        assert!(!actions_equivalent(&g(1, "e0"), &g(1, "e12")).unwrap());
    }

    #[test]
    fn class_counts() {
        assert_eq!(classify(1).unwrap().len(), 4);
        assert_eq!(classify(2).unwrap().len(), 8);
        assert_eq!(classify(3).unwrap().len(), 16);
    }

    #[test]
    fn canonical_labels_at_level_two() {
        let labels: Vec<String> = classify(2)
            .unwrap()
            .iter()
            .map(|c| c.canonical().label())
            .collect();
        assert_eq!(labels, ["e0", "e1", "e2", "e3", "e4", "e14", "e24", "e34"]);
    }

    #[test]
    fn level_two_partners() {
        let reg = ClassRegistry::build(2).unwrap();
        let partner = |label: &str| {
            let c = reg.by_label(label).unwrap();
            c.members.iter().map(|m| m.label()).collect::<Vec<_>>()
        };
        assert_eq!(partner("e0"), ["e0", "e123"]);
        assert_eq!(partner("e3"), ["e3", "e12"]);
        assert_eq!(partner("e34"), ["e34", "e124"]);
        assert_eq!(partner("-e234"), ["e14", "e234"]);
    }

    #[test]
    fn keyed_matches_exhaustive() {
        for k in 1..=2 {
            let r = cross_validate_classification(k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn structure_theorem_from_level_two() {
        for k in 2..=4 {
            let r = verify_structure_theorem(k).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn level_one_classes_are_singletons() {
        let r = verify_structure_theorem(1).unwrap();
        let items: Vec<bool> = r.checks.iter().map(|c| c.passed).collect();
        // (1)-(3) hold; a class with one member cannot be parity balanced
        assert_eq!(items, [true, true, true, false]);
    }

    #[test]
    fn lift_theorem_small() {
        for k in 1..=2 {
            let r = verify_lift_classes(k).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(verify_lift_classes(5).is_err());
    }

    #[test]
    fn structure_catches_a_corrupted_table() {
        use crate::unit::Unit;
        let table = GeneratorTable::new(2).unwrap();
        let bad = table.vector(3).with_coeff(0, Unit::I);
        let table = table.with_override(3, bad).unwrap();
        assert!(verify_structure_theorem_table(&table).is_err());
    }

    #[test]
    fn registry_json_shape() {
        let reg = ClassRegistry::build(1).unwrap();
        let v = serde_json::to_value(&reg).unwrap();
        assert_eq!(v["k"], 1);
        let c = &v["classes"][2];
        assert_eq!(c["canonical"], "e2");
        assert_eq!(c["type"], "imaginary");
        assert_eq!(c["shape"], serde_json::json!([2, 1]));
        assert_eq!(c["members"], serde_json::json!(["e2"]));
        assert_eq!(c["even_count"], 0);
        assert_eq!(c["odd_count"], 1);
    }
}
