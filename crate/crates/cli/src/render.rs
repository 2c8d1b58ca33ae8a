//! Linear representation of a diagram: vertices on a line, annihilators as
//! empty circles, creators as filled circles, edges as arcs above the line and
//! 1-based labels below.

use std::fmt::Write as _;

use qwick::{FeynmanDiagram, LetterType, Word};

pub const ASCII_SCALE: usize = 4;
pub const SVG_SCALE: usize = 40;

/// Row (1 = lowest) for each edge such that edges on one row never overlap.
fn levels(edges: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| (edges[e].1 - edges[e].0, edges[e].0));
    let mut level = vec![0; edges.len()];
    for &e in &order {
        let (i, j) = edges[e];
        let mut l = 1;
        while order.iter().any(|&o| {
            level[o] == l && {
                let (a, b) = edges[o];
                a <= j && i <= b
            }
        }) {
            l += 1;
        }
        level[e] = l;
    }
    level
}

/// ASCII art; `o` is an annihilator, `@` a creator.
pub fn ascii(w: &Word, g: &FeynmanDiagram, scale: usize) -> String {
    let scale = scale.max(3);
    let edges = g.edges();
    let lv = levels(edges);
    let top = lv.iter().copied().max().unwrap_or(0);
    let width = w.len().saturating_sub(1) * scale + 1;
    let col = |pos: usize| (pos - 1) * scale;

    // rows[0] is the top arc row; rows[top] holds the connectors above the vertices
    let mut rows = vec![vec![' '; width]; top + 1];
    for (e, &(i, j)) in edges.iter().enumerate() {
        let r = top - lv[e];
        rows[r][col(i)..=col(j)].fill('-');
        rows[r][col(i)] = '.';
        rows[r][col(j)] = '.';
    }
    for (e, &(i, j)) in edges.iter().enumerate() {
        for row in rows.iter_mut().skip(top - lv[e] + 1) {
            row[col(i)] = '|';
            row[col(j)] = '|';
        }
    }

    let mut vertices = vec![' '; width];
    for (k, letter) in w.letters().iter().enumerate() {
        vertices[k * scale] = match letter {
            LetterType::Annihilator => 'o',
            LetterType::Creator => '@',
        };
    }
    let mut labels = String::new();
    for pos in 1..=w.len() {
        let label = pos.to_string();
        while labels.len() < col(pos) {
            labels.push(' ');
        }
        labels.push_str(&label);
    }

    let mut out = String::new();
    if !edges.is_empty() {
        for row in &rows {
            let line: String = row.iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    let line: String = vertices.iter().collect();
    out.push_str(line.trim_end());
    out.push('\n');
    out.push_str(&labels);
    out.push('\n');
    out
}

/// SVG with quadratic arcs; coordinates are integers so the output is byte-stable.
pub fn svg(w: &Word, g: &FeynmanDiagram, scale: usize) -> String {
    let scale = scale.max(10);
    let radius = scale / 5;
    let font = scale * 2 / 5;
    let x = |pos: usize| pos * scale;
    // a quadratic curve peaks at half its control-point height
    let control = |span: usize| span * scale * 3 / 5;
    let max_span = g.edges().iter().map(|&(i, j)| j - i).max().unwrap_or(0);
    let baseline = control(max_span) / 2 + radius + scale / 2;
    let width = (w.len() + 1) * scale;
    let height = baseline + radius + font + scale / 2;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for &(i, j) in g.edges() {
        let (x1, x2) = (x(i), x(j));
        let _ = writeln!(
            out,
            r#"  <path d="M {x1} {baseline} Q {} {} {x2} {baseline}" fill="none" stroke="black" stroke-width="2"/>"#,
            (x1 + x2) / 2,
            baseline.saturating_sub(control(j - i)),
        );
    }
    for (k, letter) in w.letters().iter().enumerate() {
        let fill = match letter {
            LetterType::Annihilator => "white",
            LetterType::Creator => "black",
        };
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{baseline}" r="{radius}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            x(k + 1)
        );
    }
    let label_y = baseline + radius + font;
    for pos in 1..=w.len() {
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{label_y}" font-size="{font}" text-anchor="middle">{pos}</text>"#,
            x(pos)
        );
    }
    out.push_str("</svg>\n");
    out
}
