//! Text and SVG pictures of diagrams. Points are numbered from the bottom.

use std::fmt::Write;

use crate::diagram::Diagram;

/// One line per position pair, top line first. `=>R3` is a larc from the
/// left point to right point 3, `-)` a left sarc, `(-` a right sarc.
pub fn render_text(d: &Diagram) -> String {
    let (m, n) = (d.left_count(), d.right_count());
    let larcs: Vec<(usize, usize)> = d.larcs().collect();
    let mut out = String::new();
    for i in (1..=m.max(n)).rev() {
        let left = if i > m {
            String::new()
        } else if let Some((_, r)) = larcs.iter().find(|(l, _)| *l == i) {
            format!("=>R{r}")
        } else {
            "-)".to_string()
        };
        let right = if i > n {
            String::new()
        } else if let Some((l, _)) = larcs.iter().find(|(_, r)| *r == i) {
            format!("L{l}=>")
        } else {
            "(-".to_string()
        };
        let lnum = if i <= m { i.to_string() } else { String::new() };
        let rnum = if i <= n { i.to_string() } else { String::new() };
        writeln!(out, "{lnum:>3} {left:<6}|{right:>6} {rnum}").expect("write to string");
    }
    if m == 0 && n == 0 {
        out.push_str("  (empty)\n");
    }
    out
}

const STEP: f64 = 30.0;
const WIDTH: f64 = 120.0;

/// Larcs are drawn as monotone cubic curves, sarcs as half-arcs ending in
/// a dot inside the strip.
pub fn render_svg(d: &Diagram) -> String {
    let (m, n) = (d.left_count(), d.right_count());
    let rows = m.max(n).max(1);
    let height = STEP * (rows as f64 + 1.0);
    let y = |i: usize| height - STEP * i as f64;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    )
    .expect("write to string");
    writeln!(s, r#"  <line x1="0" y1="0" x2="0" y2="{height}" stroke="black"/>"#).expect("write to string");
    writeln!(s, r#"  <line x1="{WIDTH}" y1="0" x2="{WIDTH}" y2="{height}" stroke="black"/>"#).expect("write to string");
    let larcs: Vec<(usize, usize)> = d.larcs().collect();
    for &(l, r) in &larcs {
        let (y0, y1) = (y(l), y(r));
        writeln!(
            s,
            r#"  <path d="M 0 {y0} C {c} {y0}, {c} {y1}, {WIDTH} {y1}" fill="none" stroke="black"/>"#,
            c = WIDTH / 2.0
        )
        .expect("write to string");
    }
    let sarc = |s: &mut String, x: f64, yy: f64, dir: f64| {
        let r = STEP / 3.0;
        let (x1, y1) = (x + dir * r, yy - r);
        let sweep = if dir > 0.0 { 0 } else { 1 };
        writeln!(
            s,
            r#"  <path d="M {x} {yy} A {r} {r} 0 0 {sweep} {x1} {y1}" fill="none" stroke="black"/>"#
        )
        .expect("write to string");
        writeln!(s, r#"  <circle cx="{x1}" cy="{y1}" r="2"/>"#).expect("write to string");
    };
    for i in d.left_sarcs() {
        sarc(&mut s, 0.0, y(i), 1.0);
    }
    for i in d.right_sarcs() {
        sarc(&mut s, WIDTH, y(i), -1.0);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lines() {
        let d = Diagram::validate(2, 1, &[2], &[1]).unwrap();
        let t = render_text(&d);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("=>R1"));
        assert!(lines[1].contains("-)") && lines[1].contains("L2=>"));
    }

    #[test]
    fn svg_structure() {
        let d = Diagram::validate(2, 2, &[1], &[2]).unwrap();
        let s = render_svg(&d);
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<circle").count(), 2);
        assert_eq!(s.matches(" C ").count(), 1);
    }
}
