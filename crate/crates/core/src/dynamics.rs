//! Fixed points, translation constants and responsibility sets of maps on
//! `J_n` that permute matrix-form entries.
//!
//! For a map `A` the translation constant of `w` is `A·w − w`; the
//! responsibility set of `v` is every `w` with that constant equal to `v`.
//! Responsibility sets partition `J_n`, and the fixed points are the set of
//! the zero constant.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classification::classify;
use crate::clifford_perm::{induced_from_matrix, CliffordPermutation};
use crate::error::{Error, Result};
use crate::generators::{vector_generator_rep, GeneratorTable};
use crate::monomial::MonomialMatrix;
use crate::perm::Permutation;
use crate::report::Report;
use crate::torsion::{
    add_mod, check_order, check_torsion_level, monomial_act_slice, sample_torsion, sub_mod,
    TorsionPoint, TorsionSpace,
};

/// Points checked when a count is taken from its formula instead of by
/// enumeration.
pub const CONSISTENCY_SAMPLES: usize = 10_000;

/// A permutation of the `2^{k+1}` matrix-form entry indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntryPermutation {
    k: u32,
    sigma: Permutation,
}

impl EntryPermutation {
    pub fn new(k: u32, sigma: Permutation) -> Result<EntryPermutation> {
        check_torsion_level(k)?;
        if sigma.len() != 2 << k {
            return Err(Error::DimensionMismatch {
                left: sigma.len(),
                right: 2 << k,
            });
        }
        Ok(EntryPermutation { k, sigma })
    }

    pub fn identity(k: u32) -> Result<EntryPermutation> {
        EntryPermutation::new(k, Permutation::identity(2 << k))
    }

    /// Parses 1-based cycle notation such as `(17)(28)` or `(1 3)(2 4)`.
    pub fn parse(k: u32, text: &str) -> Result<EntryPermutation> {
        check_torsion_level(k)?;
        EntryPermutation::new(k, Permutation::parse_cycles(2 << k, text)?)
    }

    /// Swaps real and imaginary part in every row: `(1 2)(3 4)…`.
    pub fn column_swap(k: u32) -> Result<EntryPermutation> {
        check_torsion_level(k)?;
        let image = (0..2u32 << k).map(|i| i ^ 1).collect();
        EntryPermutation::new(k, Permutation::from_images(image)?)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        self.sigma.cycles()
    }

    /// Number of cycles of length at least two.
    pub fn p(&self) -> usize {
        self.cycles().iter().filter(|c| c.len() > 1).count()
    }

    /// Number of fixed indices.
    pub fn q(&self) -> usize {
        self.cycles().iter().filter(|c| c.len() == 1).count()
    }
}

impl fmt::Display for EntryPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sigma)
    }
}

/// Disjoint cycles (0-based, every cycle listed) with the nontrivial and
/// trivial counts.
pub fn cycle_decomposition(sigma: &Permutation) -> (Vec<Vec<u32>>, usize, usize) {
    let cycles = sigma.cycles();
    let p = cycles.iter().filter(|c| c.len() > 1).count();
    let q = cycles.len() - p;
    (cycles, p, q)
}

/// The entry permutation realizing `P` on matrix forms: rows move by the
/// switch mask, and imaginary `P` also swaps the two entries of each row.
pub fn eta_of(p: &CliffordPermutation) -> EntryPermutation {
    let flip = p.imaginary as u32;
    let image = (0..2u32 << p.k)
        .map(|i| {
            let (row, col) = (i >> 1, i & 1);
            2 * (row ^ p.switch_bits) + (col ^ flip)
        })
        .collect();
    EntryPermutation {
        k: p.k,
        sigma: Permutation::from_images_unchecked(image),
    }
}

fn act_slice(sigma: &Permutation, src: &[u16], dst: &mut [u16]) {
    for (i, &x) in src.iter().enumerate() {
        dst[sigma.apply(i)] = x;
    }
}

/// `(A·w)[σ(i)] = w[i]`.
pub fn entry_act(sigma: &EntryPermutation, w: &TorsionPoint) -> Result<TorsionPoint> {
    if w.k() != sigma.k {
        return Err(Error::PointMismatch {
            k1: sigma.k,
            n1: w.n(),
            k2: w.k(),
            n2: w.n(),
        });
    }
    let mut out = vec![0u16; w.entries().len()];
    act_slice(&sigma.sigma, w.entries(), &mut out);
    Ok(TorsionPoint::from_parts_unchecked(w.k(), w.n(), out))
}

/// `A·w − w`.
pub fn translation_constant(sigma: &EntryPermutation, w: &TorsionPoint) -> Result<TorsionPoint> {
    entry_act(sigma, w)?.sub(w)
}

/// `n^e` as an exact count.
fn pow_count(n: u32, e: usize) -> Result<u128> {
    (n as u128)
        .checked_pow(u32::try_from(e).map_err(|_| Error::CountOverflow)?)
        .ok_or(Error::CountOverflow)
}

/// `n^{p+q}`.
pub fn fixed_point_count(sigma: &EntryPermutation, n: u32) -> Result<u128> {
    check_order(n)?;
    pow_count(n, sigma.cycles().len())
}

/// `n^{2^{k+1}} / n^{p+q}`.
pub fn translation_constant_count(sigma: &EntryPermutation, n: u32) -> Result<u128> {
    check_order(n)?;
    let total = pow_count(n, 2 << sigma.k)?;
    Ok(total / fixed_point_count(sigma, n)?)
}

/// Whether `v` arises as a translation constant: its entries sum to zero
/// around every cycle.
pub fn is_translation_constant(sigma: &EntryPermutation, v: &TorsionPoint) -> bool {
    v.k() == sigma.k
        && sigma.cycles().iter().all(|c| {
            c.iter()
                .fold(0u16, |acc, &i| add_mod(acc, v.entries()[i as usize], v.n()))
                == 0
        })
}

/// Every point of `r_A(v)`, built by choosing one free value per cycle and
/// propagating `w[σ(i)] = w[i] − v[σ(i)]` around it. Ordered
/// lexicographically.
pub fn responsibility_set(
    sigma: &EntryPermutation,
    v: &TorsionPoint,
    cap: u64,
) -> Result<Vec<TorsionPoint>> {
    if v.k() != sigma.k {
        return Err(Error::PointMismatch {
            k1: sigma.k,
            n1: v.n(),
            k2: v.k(),
            n2: v.n(),
        });
    }
    if !is_translation_constant(sigma, v) {
        return Err(Error::NotATranslationConstant);
    }
    let n = v.n();
    let count = fixed_point_count(sigma, n)?;
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            count: count.to_string(),
            cap,
        });
    }
    let cycles = sigma.cycles();
    let len = v.entries().len();
    let mut out = Vec::with_capacity(count as usize);
    let mut free = vec![0u16; cycles.len()];
    loop {
        let mut w = vec![0u16; len];
        for (c, &start) in cycles.iter().zip(&free) {
            let mut value = start;
            w[c[0] as usize] = value;
            for &i in &c[1..] {
                value = sub_mod(value, v.entries()[i as usize], n);
                w[i as usize] = value;
            }
        }
        out.push(TorsionPoint::from_parts_unchecked(sigma.k, n, w));
        // odometer over the free values
        let mut pos = free.len();
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            free[pos] += 1;
            if u32::from(free[pos]) < n {
                break;
            }
            free[pos] = 0;
        }
    }
}

/// `FP(A) = r_A(0)`, constructed.
pub fn fixed_points(sigma: &EntryPermutation, n: u32, cap: u64) -> Result<Vec<TorsionPoint>> {
    responsibility_set(sigma, &TorsionPoint::zero(sigma.k, n)?, cap)
}

fn chunk_ranges(size: u64) -> Vec<(u64, u64)> {
    let chunk = (size / 256).max(4096);
    (0..size)
        .step_by(chunk as usize)
        .map(|s| (s, (s + chunk).min(size)))
        .collect()
}

/// `A·w` on raw entries, for any action on `J_n`.
pub trait EntryMap: Sync {
    fn apply(&self, src: &[u16], dst: &mut [u16], n: u32);
}

impl EntryMap for EntryPermutation {
    fn apply(&self, src: &[u16], dst: &mut [u16], _n: u32) {
        act_slice(&self.sigma, src, dst);
    }
}

impl EntryMap for MonomialMatrix {
    fn apply(&self, src: &[u16], dst: &mut [u16], n: u32) {
        monomial_act_slice(self, src, dst, n);
    }
}

/// Translation-constant index of every point of `space`, in index order.
fn translation_indices<A: EntryMap + ?Sized>(a: &A, space: &TorsionSpace, size: u64) -> Vec<u64> {
    let len = space.entry_count();
    let n = space.n();
    chunk_ranges(size)
        .into_par_iter()
        .flat_map_iter(|(lo, hi)| {
            let mut w = vec![0u16; len];
            let mut aw = vec![0u16; len];
            (lo..hi).map(move |idx| {
                space.point_into(idx, &mut w);
                a.apply(&w, &mut aw, n);
                for (x, &y) in aw.iter_mut().zip(&w) {
                    *x = sub_mod(*x, y, n);
                }
                space.index_of_entries(&aw)
            })
        })
        .collect()
}

/// Fixed points and translation constants of `A`, by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub fixed_points: BTreeSet<u64>,
    pub translation_constants: BTreeSet<u64>,
    /// Size of every responsibility set, keyed by constant.
    pub responsibility_sizes: HashMap<u64, u64>,
    pub total: u64,
}

pub fn enumerate_dynamics<A: EntryMap + ?Sized>(
    a: &A,
    k: u32,
    n: u32,
    cap: u64,
) -> Result<Enumerated> {
    let space = TorsionSpace::new(k, n)?;
    let size = space.enumerable_size(cap)?;
    let tcs = translation_indices(a, &space, size);
    let mut sizes: HashMap<u64, u64> = HashMap::new();
    let mut fixed = BTreeSet::new();
    for (idx, &tc) in tcs.iter().enumerate() {
        *sizes.entry(tc).or_default() += 1;
        if tc == 0 {
            fixed.insert(idx as u64);
        }
    }
    Ok(Enumerated {
        fixed_points: fixed,
        translation_constants: sizes.keys().copied().collect(),
        responsibility_sizes: sizes,
        total: size,
    })
}

/// The set `TC(A)`, enumerated when `J_n` fits under `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationConstants {
    pub count: u128,
    /// Present only when enumerated; lexicographically ordered.
    pub points: Option<Vec<TorsionPoint>>,
    pub formula_derived: bool,
    /// Result of the sampled check backing a formula-derived count.
    pub sample_consistent: Option<bool>,
}

/// `TC(A)`. Above `cap` the count comes from `n^{2^{k+1}} / n^{p+q}` backed by
/// a [`CONSISTENCY_SAMPLES`]-point check, unless `allow_formula` is false.
pub fn translation_constants(
    sigma: &EntryPermutation,
    n: u32,
    cap: u64,
    allow_formula: bool,
    seed: u64,
) -> Result<TranslationConstants> {
    let space = TorsionSpace::new(sigma.k, n)?;
    match space.enumerable_size(cap) {
        Ok(_) => {
            let e = enumerate_dynamics(sigma, sigma.k, n, cap)?;
            let points: Vec<TorsionPoint> = e
                .translation_constants
                .iter()
                .map(|&i| space.point(i))
                .collect();
            Ok(TranslationConstants {
                count: points.len() as u128,
                points: Some(points),
                formula_derived: false,
                sample_consistent: None,
            })
        }
        Err(err @ Error::CapExceeded { .. }) if !allow_formula => Err(err),
        Err(Error::CapExceeded { .. }) => Ok(TranslationConstants {
            count: translation_constant_count(sigma, n)?,
            points: None,
            formula_derived: true,
            sample_consistent: Some(sampled_consistency(sigma, n, seed)?),
        }),
        Err(err) => Err(err),
    }
}

/// For seeded random `w`: its constant passes the cycle-sum test, and `w` is
/// recovered from that constant by the cycle propagation rule.
pub fn sampled_consistency(sigma: &EntryPermutation, n: u32, seed: u64) -> Result<bool> {
    let cycles = sigma.cycles();
    let pts = sample_torsion(sigma.k, n, CONSISTENCY_SAMPLES, seed)?;
    Ok(pts.par_iter().all(|w| {
        let v = translation_constant(sigma, w).expect("levels agree");
        is_translation_constant(sigma, &v)
            && cycles.iter().all(|c| {
                c.windows(2).all(|pair| {
                    let (i, j) = (pair[0] as usize, pair[1] as usize);
                    w.entries()[j] == sub_mod(w.entries()[i], v.entries()[j], n)
                })
            })
    }))
}

/// Summary of the counting laws for one `(σ, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsReport {
    pub sigma_cycles: String,
    pub n: u32,
    pub k: u32,
    pub p: usize,
    pub q: usize,
    pub fp_count: u128,
    pub tc_count: u128,
    pub product: u128,
    pub partition_ok: bool,
    pub fp_equals_tc: Option<bool>,
    pub formula_derived: bool,
}

/// Builds the summary, enumerating when `J_n` fits under `cap`.
pub fn dynamics_report(
    sigma: &EntryPermutation,
    n: u32,
    cap: u64,
    seed: u64,
) -> Result<DynamicsReport> {
    let (_, p, q) = cycle_decomposition(&sigma.sigma);
    let space = TorsionSpace::new(sigma.k, n)?;
    let base = DynamicsReport {
        sigma_cycles: sigma.to_string(),
        n,
        k: sigma.k,
        p,
        q,
        fp_count: 0,
        tc_count: 0,
        product: 0,
        partition_ok: false,
        fp_equals_tc: None,
        formula_derived: false,
    };
    match space.enumerable_size(cap) {
        Ok(_) => {
            let e = enumerate_dynamics(sigma, sigma.k, n, cap)?;
            let fp = e.fixed_points.len() as u128;
            let tc = e.translation_constants.len() as u128;
            Ok(DynamicsReport {
                fp_count: fp,
                tc_count: tc,
                product: fp * tc,
                partition_ok: partition_by_construction(sigma, &space, &e, cap)?,
                fp_equals_tc: Some(e.fixed_points == e.translation_constants),
                ..base
            })
        }
        Err(Error::CapExceeded { .. }) => {
            let fp = fixed_point_count(sigma, n)?;
            let tc = translation_constant_count(sigma, n)?;
            Ok(DynamicsReport {
                fp_count: fp,
                tc_count: tc,
                product: fp * tc,
                partition_ok: sampled_consistency(sigma, n, seed)?,
                formula_derived: true,
                ..base
            })
        }
        Err(err) => Err(err),
    }
}

/// Builds every responsibility set from its constant and checks that they
/// cover `J_n` exactly once, each member mapping to its own constant.
fn partition_by_construction(
    sigma: &EntryPermutation,
    space: &TorsionSpace,
    e: &Enumerated,
    cap: u64,
) -> Result<bool> {
    let mut seen = vec![0u64; (e.total as usize).div_ceil(64)];
    let mut covered = 0u64;
    for &tc in &e.translation_constants {
        let v = space.point(tc);
        for w in responsibility_set(sigma, &v, cap)? {
            let idx = space.index_of(&w);
            let (word, bit) = ((idx / 64) as usize, idx % 64);
            if seen[word] >> bit & 1 == 1 || translation_constant(sigma, &w)? != v {
                return Ok(false);
            }
            seen[word] |= 1 << bit;
            covered += 1;
        }
    }
    Ok(covered == e.total)
}

/// Checks every counting law for `(σ, n)` by exhaustive enumeration.
pub fn verify_counting_laws(sigma: &EntryPermutation, n: u32, cap: u64) -> Result<Report> {
    let space = TorsionSpace::new(sigma.k, n)?;
    let e = enumerate_dynamics(sigma, sigma.k, n, cap)?;
    let expected_fp = fixed_point_count(sigma, n)?;
    let total = pow_count(n, 2 << sigma.k)?;
    let fp = e.fixed_points.len() as u128;
    let tc = e.translation_constants.len() as u128;

    let mut r = Report::new(format!("counting-laws {sigma} n={n} k={}", sigma.k));
    r.check(
        "|FP| = n^(p+q)",
        fp == expected_fp,
        format!("{fp} vs {expected_fp}"),
    );
    let unequal = e
        .responsibility_sizes
        .values()
        .filter(|&&s| s as u128 != expected_fp)
        .count();
    r.check(
        "every responsibility set has n^(p+q) members",
        unequal == 0,
        format!("{unequal} of {tc} differ"),
    );
    r.check(
        "responsibility sets are disjoint and cover J_n",
        partition_by_construction(sigma, &space, &e, cap)?,
        "",
    );
    r.check(
        "|TC|·|FP| = n^(2^(k+1))",
        tc * fp == total,
        format!("{tc}·{fp} vs {total}"),
    );
    let characterized = e
        .translation_constants
        .iter()
        .all(|&i| is_translation_constant(sigma, &space.point(i)));
    let tc_formula = translation_constant_count(sigma, n)?;
    r.check(
        "TC is exactly the cycle-sum-zero points",
        characterized && tc == tc_formula,
        format!("{tc} vs {tc_formula}"),
    );
    Ok(r)
}

/// A uniformly random entry permutation at level `k`.
pub fn random_entry_permutation(k: u32, rng: &mut ChaCha8Rng) -> Result<EntryPermutation> {
    check_torsion_level(k)?;
    let mut image: Vec<u32> = (0..2u32 << k).collect();
    image.shuffle(rng);
    EntryPermutation::new(k, Permutation::from_images_unchecked(image))
}

/// The counting laws for `count` seeded random permutations per `(n, k)`.
pub fn counting_law_sweep(
    ns: &[u32],
    ks: &[u32],
    count: usize,
    seed: u64,
    cap: u64,
) -> Result<Report> {
    let mut r = Report::new(format!("counting-law sweep seed={seed}"));
    for &n in ns {
        for &k in ks {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(n) << 32) ^ u64::from(k));
            let sigmas: Vec<EntryPermutation> = (0..count)
                .map(|_| random_entry_permutation(k, &mut rng))
                .collect::<Result<_>>()?;
            let reports: Vec<Report> = sigmas
                .iter()
                .map(|s| verify_counting_laws(s, n, cap))
                .collect::<Result<_>>()?;
            let failed: Vec<String> = reports
                .iter()
                .filter(|x| !x.passed())
                .map(|x| x.name.clone())
                .collect();
            r.check(
                format!("n={n} k={k}"),
                failed.is_empty(),
                if failed.is_empty() {
                    format!("{count} permutations")
                } else {
                    failed.join("; ")
                },
            );
        }
    }
    Ok(r)
}

/// `FP = TC` for one `(σ, n)`; used by the witness search.
pub fn fp_equals_tc(sigma: &EntryPermutation, n: u32, cap: u64) -> Result<bool> {
    let e = enumerate_dynamics(sigma, sigma.k, n, cap)?;
    Ok(e.fixed_points == e.translation_constants)
}

/// Fixed points of each nonidentity action class on `J_2`, as quarter words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointRow {
    pub class: String,
    pub fixed_points: Vec<String>,
}

/// One row per nonidentity class at level `k` (k ≤ 3), computed from the
/// monomial action over all of `J_2`.
pub fn fixed_point_table(k: u32) -> Result<Vec<FixedPointRow>> {
    if k == 0 || k > 3 {
        return Err(Error::LevelOutOfRange { k, max: 3 });
    }
    let table = GeneratorTable::new(k)?;
    let space = TorsionSpace::new(k, 2)?;
    classify(k)?
        .into_iter()
        .filter(|c| !c.canonical().is_empty())
        .map(|c| {
            let m = table.rep(&c.canonical());
            let e = enumerate_dynamics(&m, k, 2, u64::MAX)?;
            let mut words: Vec<String> = e
                .fixed_points
                .iter()
                .map(|&i| space.point(i).quarter_word().expect("2-torsion"))
                .collect();
            words.sort();
            Ok(FixedPointRow {
                class: c.canonical().label(),
                fixed_points: words,
            })
        })
        .collect()
}

/// FP = TC and `|FP| = 2^{2^k}` for every nonidentity class on `J_2`, plus
/// the entry-permutation view of each class. Exhaustive for k ≤ 3; at
/// k = 4 the counts come from the cycle structure of `η`.
pub fn verify_clifford_dynamics(k: u32) -> Result<Report> {
    if k == 0 || k > 4 {
        return Err(Error::LevelOutOfRange { k, max: 4 });
    }
    let table = GeneratorTable::new(k)?;
    let classes = classify(k)?;
    let space = TorsionSpace::new(k, 2)?;
    let expected = 1u128 << (1u32 << k);
    let mut r = Report::new(format!("clifford-dynamics k={k}"));
    let mut common: Option<BTreeSet<u64>> = None;
    for c in classes.iter().filter(|c| !c.canonical().is_empty()) {
        let m = table.rep(&c.canonical());
        let p = induced_from_matrix(&m)?;
        let eta = eta_of(&p);
        let (_, np, nq) = cycle_decomposition(eta.sigma());
        r.check(
            format!(
                "[{}] η is a derangement by disjoint transpositions",
                c.canonical()
            ),
            eta.sigma().is_transposition_derangement() && np == 1 << k && nq == 0,
            format!("p={np} q={nq}"),
        );
        r.check(
            format!("[{}] |FP| = 2^(2^k) from cycle counts", c.canonical()),
            fixed_point_count(&eta, 2)? == expected,
            "",
        );
        if k <= 3 {
            let e = enumerate_dynamics(&m, k, 2, u64::MAX)?;
            r.check(
                format!("[{}] |FP| = 2^(2^k)", c.canonical()),
                e.fixed_points.len() as u128 == expected,
                format!("{}", e.fixed_points.len()),
            );
            r.check(
                format!("[{}] FP = TC", c.canonical()),
                e.fixed_points == e.translation_constants,
                format!("|TC| = {}", e.translation_constants.len()),
            );
            let agree = (0..e.total).into_par_iter().all(|idx| {
                let w = space.point(idx);
                let mut a = vec![0u16; w.entries().len()];
                let mut b = vec![0u16; w.entries().len()];
                monomial_act_slice(&m, w.entries(), &mut a, 2);
                act_slice(eta.sigma(), w.entries(), &mut b);
                a == b
            });
            r.check(
                format!("[{}] η reproduces the action on J_2", c.canonical()),
                agree,
                "",
            );
            common = Some(match common {
                None => e.fixed_points,
                Some(acc) => acc.intersection(&e.fixed_points).copied().collect(),
            });
        }
    }
    if let Some(common) = common {
        let words: Vec<String> = common
            .iter()
            .map(|&i| space.point(i).quarter_word().expect("2-torsion"))
            .collect();
        let zero = TorsionPoint::zero(k, 2)?;
        let three = TorsionPoint::constant(k, 2, 1, 1)?;
        let want: BTreeSet<u64> = [space.index_of(&zero), space.index_of(&three)].into();
        r.check(
            "only the constant points v0…0 and v3…3 are fixed by every class",
            common == want,
            words.join(" "),
        );
    }
    Ok(r)
}

/// Shows that `ρ(e_1)` does not permute entries on `J_n` for `n > 2`: on the
/// all-`(1,1)` point its image has a different entry multiset, and an
/// exhaustive search over every σ (k ≤ 2) finds none reproducing it.
pub fn negative_witness(k: u32, n: u32) -> Result<Report> {
    check_torsion_level(k)?;
    check_order(n)?;
    let e1 = vector_generator_rep(k, 1)?;
    let w = TorsionPoint::constant(k, n, 1, 1)?;
    let mut image = vec![0u16; w.entries().len()];
    monomial_act_slice(&e1, w.entries(), &mut image, n);

    let mut r = Report::new(format!("negative-witness k={k} n={n}"));
    let nm1 = (n - 1) as u16;
    let expected: Vec<u16> = (0..w.components())
        .flat_map(|row| if row % 2 == 0 { [nm1, 1] } else { [1, nm1] })
        .collect();
    r.check(
        "image rows alternate (n-1, 1) and (1, n-1)",
        image == expected,
        format!("{image:?}"),
    );
    let mut before = w.entries().to_vec();
    let mut after = image.clone();
    before.sort_unstable();
    after.sort_unstable();
    r.check(
        "entry multisets differ",
        before != after,
        format!("{before:?} vs {after:?}"),
    );
    if k <= 2 {
        let len = w.entries().len();
        let mut idx: Vec<u32> = (0..len as u32).collect();
        let mut found = false;
        let mut buf = vec![0u16; len];
        permutations_each(&mut idx, 0, &mut |perm| {
            let sigma = Permutation::from_images_unchecked(perm.to_vec());
            act_slice(&sigma, w.entries(), &mut buf);
            if buf == image {
                found = true;
            }
        });
        r.check("no entry permutation reproduces the image", !found, "");
    }
    Ok(r)
}

fn permutations_each(v: &mut [u32], start: usize, f: &mut impl FnMut(&[u32])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations_each(v, start + 1, f);
        v.swap(start, i);
    }
}
