#![no_main]

use libfuzzer_sys::fuzz_target;
use spinor_torsion::torsion::TorsionPoint;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = TorsionPoint::parse_quarters(text) {
            let word = p.quarter_word().expect("2-torsion");
            assert_eq!(TorsionPoint::parse_quarters(&word).unwrap(), p);
        }
    }
});
