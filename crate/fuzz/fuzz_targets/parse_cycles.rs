#![no_main]

use libfuzzer_sys::fuzz_target;
use spinor_torsion::perm::Permutation;

// first byte picks the length, the rest is cycle notation
fuzz_target!(|data: &[u8]| {
    let Some((&len, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let len = usize::from(len % 64) + 1;
    if let Ok(p) = Permutation::parse_cycles(len, text) {
        let again = Permutation::parse_cycles(len, &p.to_string()).expect("display parses");
        assert_eq!(again, p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }
});
