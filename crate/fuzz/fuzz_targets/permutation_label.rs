#![no_main]

use libfuzzer_sys::fuzz_target;
use spinor_torsion::clifford_perm::CliffordPermutation;

fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else {
        return;
    };
    let k = u32::from(k % 8) + 1;
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(p) = CliffordPermutation::parse_label(k, text) {
            assert_eq!(CliffordPermutation::parse_label(k, &p.label()).unwrap(), p);
        }
    }
});
