//! Arch diagrams in the style of the printed figures: every block is a
//! rectangular arch whose height grows with the arches nested beneath it.

use std::fmt::Write as _;

use super::{Letter, PairPartition};

const STEP: usize = 32;
const LEVEL: usize = 16;
const MARGIN: usize = 24;
const LABEL_GAP: usize = 18;

/// SVG document for `pi`, with the letter of each position written under it.
pub fn render_svg(pi: &PairPartition, word: &[Letter]) -> String {
    let n = pi.size();
    let heights = pi.heights();
    let tallest = heights.values().copied().max().unwrap_or(0);
    let width = 2 * MARGIN + STEP * n.saturating_sub(1);
    let baseline = MARGIN + LEVEL * tallest;
    let height = baseline + LABEL_GAP + MARGIN;
    let x = |pos: usize| MARGIN + STEP * pos;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, "  <title>{pi}</title>");
    let _ = writeln!(
        svg,
        r#"  <g fill="none" stroke="black" stroke-width="1.5" stroke-linejoin="miter">"#
    );
    for (&a, &h) in &heights {
        let b = pi.partner(a);
        let top = baseline - LEVEL * h;
        let _ = writeln!(
            svg,
            r#"    <path d="M {} {baseline} V {top} H {} V {baseline}"/>"#,
            x(a),
            x(b)
        );
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, r#"  <g fill="black">"#);
    for pos in 0..n {
        let _ = writeln!(
            svg,
            r#"    <circle cx="{}" cy="{baseline}" r="2.5"/>"#,
            x(pos)
        );
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(
        svg,
        r#"  <g font-family="serif" font-size="13" text-anchor="middle">"#
    );
    for (pos, letter) in word.iter().enumerate().take(n) {
        let _ = writeln!(
            svg,
            r#"    <text x="{}" y="{}">{letter}</text>"#,
            x(pos),
            baseline + LABEL_GAP
        );
    }
    let _ = writeln!(svg, "  </g>");
    svg.push_str("</svg>\n");
    svg
}
