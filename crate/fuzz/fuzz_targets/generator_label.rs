#![no_main]

use libfuzzer_sys::fuzz_target;
use spinor_torsion::generators::GeneratorIndex;

fuzz_target!(|data: &[u8]| {
    let Some((&k, rest)) = data.split_first() else {
        return;
    };
    let k = u32::from(k % 16) + 1;
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(g) = GeneratorIndex::parse(k, text) {
            assert_eq!(GeneratorIndex::parse(k, &g.label()).unwrap(), g);
        }
    }
});
