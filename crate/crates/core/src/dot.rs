//! Graphviz export.
//!
//! Color `c` is drawn with `PALETTE[c % 8]` and `STYLES[(c / 8) % 3]`, so
//! the first eight colors are solid lines in distinct hues. Each edge is also
//! labelled with its color number.

use std::fmt::Write;

use crate::genus::CyclicPermutation;
use crate::graph::ColoredGraph;

pub const PALETTE: [&str; 8] = [
    "black",
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "deeppink",
];

pub const STYLES: [&str; 3] = ["solid", "dashed", "dotted"];

/// Drawing attributes for color `c`.
pub fn color_style(c: usize) -> (&'static str, &'static str) {
    (PALETTE[c % PALETTE.len()], STYLES[(c / PALETTE.len()) % STYLES.len()])
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Node order following the `{ε_0, ε_1}`-cycles, each walked from its least
/// vertex, so that a layout engine sees the faces of the embedding next to
/// each other.
fn cycle_order(g: &ColoredGraph, eps: &CyclicPermutation) -> Vec<usize> {
    let (a, b) = (eps.as_slice()[0], eps.as_slice()[1 % eps.len()]);
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    for start in 0..g.vertex_count() {
        let mut cur = Some(start);
        let mut step = 0;
        while let Some(v) = cur.filter(|&v| !seen[v]) {
            seen[v] = true;
            order.push(v);
            cur = g.neighbor(v, if step % 2 == 0 { a } else { b });
            step += 1;
        }
    }
    order
}

pub fn export_dot(g: &ColoredGraph, eps: Option<&CyclicPermutation>) -> String {
    let mut out = String::from("graph gem {\n  node [shape=circle, fontsize=10];\n");
    let order: Vec<usize> = match eps {
        Some(eps) if eps.len() == g.color_count() => {
            writeln!(out, "  // node order follows the {{{},{}}}-cycles of {eps}", eps.as_slice()[0], eps.as_slice()[1])
                .unwrap();
            cycle_order(g, eps)
        }
        _ => (0..g.vertex_count()).collect(),
    };
    for v in order {
        writeln!(out, "  {};", quote(g.name(v))).unwrap();
    }
    for (u, v, c) in g.edges() {
        let (color, style) = color_style(c);
        writeln!(
            out,
            "  {} -- {} [color={color}, style={style}, label=\"{c}\"];",
            quote(g.name(u)),
            quote(g.name(v))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
