use std::collections::BTreeSet;

use spinor_torsion::dynamics::fixed_point_table;

/// Computed fixed points of the nonidentity classes at k = 2, with the
/// published words that differ from them.
type Row = (
    &'static str,
    &'static str,
    &'static [(&'static str, &'static str)],
);

const ROWS: [Row; 7] = [
    (
        "e1",
        "0000 0003 0030 0033 0300 0303 0330 0333 3000 3003 3030 3033 3300 3303 3330 3333",
        &[],
    ),
    (
        "e2",
        "0000 0012 0021 0033 1200 1212 1221 1233 2100 2112 2121 2133 3300 3312 3321 3333",
        &[("0033", "0321")],
    ),
    (
        "e3",
        "0000 0011 0022 0033 1100 1111 1122 1133 2200 2211 2222 2233 3300 3311 3322 3333",
        &[],
    ),
    (
        "e4",
        "0000 0110 0220 0330 1001 1111 1221 1331 2002 2112 2222 2332 3003 3113 3223 3333",
        &[("1001", "0011"), ("3223", "0210")],
    ),
    (
        "e14",
        "0000 0120 0210 0330 1002 1122 1212 1332 2001 2121 2211 2331 3003 3123 3213 3333",
        &[("0330", "3030")],
    ),
    (
        "e24",
        "0000 0102 0201 0303 1020 1122 1221 1323 2010 2112 2211 2313 3030 3132 3231 3333",
        &[],
    ),
    (
        "e34",
        "0000 0101 0202 0303 1010 1111 1212 1313 2020 2121 2222 2323 3030 3131 3232 3333",
        &[],
    ),
];

#[test]
fn computed_rows_are_pinned() {
    let computed = fixed_point_table(2).unwrap();
    assert_eq!(computed.len(), 7);
    for ((class, words, _), row) in ROWS.iter().zip(&computed) {
        assert_eq!(row.class, *class);
        let want: Vec<String> = words.split(' ').map(|w| format!("v{w}")).collect();
        assert_eq!(row.fixed_points, want, "[{class}]");
    }
}

#[test]
fn published_discrepancies_are_not_fixed() {
    use spinor_torsion::generators::{generator_rep, GeneratorIndex};
    use spinor_torsion::torsion::{monomial_act, TorsionPoint};
    for (class, words, diffs) in ROWS {
        let m = generator_rep(&GeneratorIndex::parse(2, class).unwrap());
        let row: BTreeSet<&str> = words.split(' ').collect();
        for (ours, published) in diffs {
            assert!(row.contains(ours));
            let p = TorsionPoint::parse_quarters(&format!("v{published}")).unwrap();
            assert_ne!(
                monomial_act(&m, &p).unwrap(),
                p,
                "{published} under [{class}]"
            );
            let q = TorsionPoint::parse_quarters(&format!("v{ours}")).unwrap();
            assert_eq!(monomial_act(&m, &q).unwrap(), q);
        }
    }
}

#[test]
fn constant_points_are_the_common_fixed_points() {
    let computed = fixed_point_table(2).unwrap();
    let mut common: BTreeSet<String> = computed[0].fixed_points.iter().cloned().collect();
    for row in &computed[1..] {
        let here: BTreeSet<String> = row.fixed_points.iter().cloned().collect();
        common = common.intersection(&here).cloned().collect();
    }
    assert_eq!(
        common,
        BTreeSet::from(["v0000".to_string(), "v3333".to_string()])
    );
}
