//! Shoelace diagrams: points on the left, their images on the right.

use std::fmt::Write;

use spinor_torsion::clifford_perm::CliffordPermutation;
use spinor_torsion::dynamics::eta_of;

const ROW: f64 = 28.0;
const TOP: f64 = 48.0;
const LEFT: f64 = 60.0;
const GAP: f64 = 220.0;
const CELL: f64 = 34.0;

/// Arrows of the diagram as (source, target) pairs, 0-based. Real
/// permutations act on the `2^k` rows; imaginary ones on the `2^{k+1}`
/// matrix-form entries.
pub fn arrows(p: &CliffordPermutation) -> Vec<(usize, usize)> {
    if p.imaginary {
        let eta = eta_of(p);
        (0..2usize << p.k)
            .map(|i| (i, eta.sigma().apply(i)))
            .collect()
    } else {
        let rows = p.realized_permutation();
        (0..1usize << p.k).map(|i| (i, rows.apply(i))).collect()
    }
}

fn entry_name(i: usize) -> String {
    let part = if i.is_multiple_of(2) { "re" } else { "im" };
    format!("{}{}", i / 2 + 1, part)
}

pub fn text(title: &str, p: &CliffordPermutation) -> String {
    let mut out = format!("{title}  {}  ({})\n", p.label(), p.entry_type());
    let pairs = arrows(p);
    let width = pairs.len().to_string().len() + 2;
    for (from, to) in pairs {
        let (a, b) = if p.imaginary {
            (entry_name(from), entry_name(to))
        } else {
            ((from + 1).to_string(), (to + 1).to_string())
        };
        let mark = if from == to {
            "────"
        } else {
            "──>"
        };
        let _ = writeln!(out, "  {a:>width$} {mark} {b}");
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn svg(title: &str, p: &CliffordPermutation) -> String {
    let rows = 1usize << p.k;
    let cols = if p.imaginary { 2 } else { 1 };
    let height = TOP + ROW * rows as f64 + 24.0;
    let width = 2.0 * LEFT + GAP + 2.0 * CELL * cols as f64;
    let right = LEFT + CELL * cols as f64 + GAP;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="13">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="20">{} {} ({})</text>"#,
        escape(title),
        escape(&p.label()),
        p.entry_type()
    );
    let position = |side_x: f64, index: usize| -> (f64, f64) {
        let (row, col) = if p.imaginary {
            (index / 2, index % 2)
        } else {
            (index, 0)
        };
        (
            side_x + CELL * col as f64 + CELL / 2.0,
            TOP + ROW * row as f64,
        )
    };
    if p.imaginary {
        // imaginary column shaded on both sides
        for x in [LEFT + CELL, right + CELL] {
            let _ = writeln!(
                s,
                r##"<rect x="{x}" y="{}" width="{CELL}" height="{}" fill="#dddddd"/>"##,
                TOP - ROW / 2.0,
                ROW * rows as f64
            );
        }
    }
    for (from, to) in arrows(p) {
        let (x1, y1) = position(LEFT, from);
        let (x2, y2) = position(right, to);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y1}" x2="{}" y2="{y2}" stroke="black" marker-end="url(#head)"/>"#,
            x1 + 8.0,
            x2 - 10.0
        );
    }
    let count = if p.imaginary { 2 * rows } else { rows };
    for side in [LEFT, right] {
        for i in 0..count {
            let (x, y) = position(side, i);
            let label = if p.imaginary {
                entry_name(i)
            } else {
                (i + 1).to_string()
            };
            let _ = writeln!(
                s,
                r#"<circle cx="{x}" cy="{y}" r="3"/><text x="{}" y="{}" text-anchor="middle" font-size="10">{label}</text>"#,
                x,
                y - 6.0
            );
        }
    }
    s.push_str(
        r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z"/></marker></defs>"#,
    );
    s.push_str("\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_arrows() {
        let p = CliffordPermutation::parse_label(3, "A4∘(1)∘A1").unwrap();
        let got: Vec<(usize, usize)> = arrows(&p).into_iter().take(4).collect();
        assert_eq!(got, [(0, 5), (1, 4), (2, 7), (3, 6)]);
    }

    #[test]
    fn identity_is_parallel() {
        let p = CliffordPermutation::identity(2);
        assert!(arrows(&p).iter().all(|(a, b)| a == b));
    }

    #[test]
    fn imaginary_identity_crosses_columns() {
        let p = CliffordPermutation::parse_label(3, "i·(1)").unwrap();
        let a = arrows(&p);
        assert_eq!(a.len(), 16);
        assert!(a.iter().all(|&(x, y)| x / 2 == y / 2 && x != y));
        let svg = svg("[e1]", &p);
        assert!(svg.contains("#dddddd"));
        assert_eq!(svg.matches("<line").count(), 16);
    }
}
