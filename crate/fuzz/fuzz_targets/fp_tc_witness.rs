#![no_main]

//! Looks for entry permutations with FP = TC that are not derangements by
//! disjoint transpositions. Reports them and asserts nothing.

use libfuzzer_sys::fuzz_target;
use spinor_torsion::dynamics::{fp_equals_tc, EntryPermutation};
use spinor_torsion::perm::Permutation;

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let k = u32::from(data[0] % 2) + 1;
    let n = u32::from(data[1] % 4) + 2;
    let len = 2usize << k;
    // Fisher-Yates driven by the remaining bytes
    let mut image: Vec<u32> = (0..len as u32).collect();
    for (i, &b) in data[2..].iter().take(len - 1).enumerate() {
        let j = i + usize::from(b) % (len - i);
        image.swap(i, j);
    }
    let sigma = EntryPermutation::new(k, Permutation::from_images(image).unwrap()).unwrap();
    if sigma.sigma().is_transposition_derangement() {
        return;
    }
    if let Ok(true) = fp_equals_tc(&sigma, n, 1 << 20) {
        eprintln!("FP = TC witness: k={k} n={n} sigma={sigma}");
    }
});
