//! DOT, TikZ and JSON renderings.
//!
//! Gadget vertices are coloured by the level that added them: vertices
//! inherited from `L_0` share one colour, join vertices cycle through three.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::gadget::{GadgetVertex, PathGadget};
use crate::graph::{Coloring, WitnessedGraph};
use crate::lc::LevelQuotient;

const TIKZ_STYLES: [&str; 4] = ["copycolor", "joinone", "jointwo", "jointhree"];
const TIKZ_FILLS: [&str; 4] = ["blue!18", "green!28", "orange!35", "red!30"];
/// The TikZ fills mixed with white, as hex.
const DOT_FILLS: [&str; 4] = ["#D1D1FF", "#B8FFB8", "#FFD2A6", "#FFB3B3"];

fn colour_index(birth_level: usize) -> usize {
    match birth_level {
        0 => 0,
        m => 1 + (m - 1) % 3,
    }
}

fn birth(g: &PathGadget, v: &GadgetVertex) -> usize {
    v.birth_level(g.level()).expect("gadget vertex")
}

fn header(g: &PathGadget, comment: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{comment} path gadget L_{} for c = {}", g.level(), g.prefix());
    let _ = writeln!(out, "{comment} {} vertices, {} edges", g.vertex_count(), g.edge_count());
    let _ = writeln!(out, "{comment} vertex count follows V(n+1) = 2 V(n) + c(n) + 1 from a single vertex");
    out
}

pub fn gadget_dot(g: &PathGadget) -> String {
    let mut out = header(g, "//");
    out.push_str("graph gadget {\n  node [shape=circle, style=filled, fontsize=9];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let fill = DOT_FILLS[colour_index(birth(g, v))];
        let _ = writeln!(out, "  n{i} [label=\"{v}\", fillcolor=\"{fill}\"];");
    }
    for i in 0..g.edge_count() {
        let _ = writeln!(out, "  n{i} -- n{};", i + 1);
    }
    out.push_str("}\n");
    out
}

/// A boustrophedon layout, ten vertices per row.
pub fn gadget_tikz(g: &PathGadget) -> String {
    const ROW: usize = 10;
    let mut out = header(g, "%");
    out.push_str("\\begin{tikzpicture}[\n");
    for (style, fill) in TIKZ_STYLES.iter().zip(TIKZ_FILLS) {
        let _ = writeln!(out, "  {style}/.style={{fill={fill}, draw=black!70}},");
    }
    out.push_str("  nd/.style={circle, minimum size=5.5pt, inner sep=0pt},\n]\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let (row, col) = (i / ROW, i % ROW);
        let col = if row % 2 == 0 { col } else { ROW - 1 - col };
        let style = TIKZ_STYLES[colour_index(birth(g, v))];
        let _ = writeln!(
            out,
            "  \\node[nd, {style}] (v{i}) at ({:.2},{:.2}) {{}};\n  \\node[above=1pt, font=\\tiny] at (v{i}) {{${v}$}};",
            col as f64 * 1.2,
            -(row as f64) * 1.2
        );
    }
    for i in 0..g.edge_count() {
        let _ = writeln!(out, "  \\draw[thick, black!40] (v{i}) -- (v{});", i + 1);
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

pub fn gadget_json(g: &PathGadget) -> Value {
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|v| json!({ "label": v.to_string(), "birthLevel": birth(g, v), "fill": TIKZ_FILLS[colour_index(birth(g, v))] }))
        .collect();
    let edges: Vec<Value> =
        (0..g.edge_count()).map(|i| json!([g.vertex_at(i).to_string(), g.vertex_at(i + 1).to_string()])).collect();
    json!({
        "prefix": g.prefix().values(),
        "level": g.level(),
        "vertexCount": g.vertex_count(),
        "edgeCount": g.edge_count(),
        "vertices": vertices,
        "edges": edges,
    })
}

pub fn quotient_dot(q: &LevelQuotient) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "// level quotient of the limit graph for c = {}", q.prefix);
    let _ = writeln!(out, "// {} classes, {} edges", q.classes.len(), q.edges.len());
    out.push_str("graph quotient {\n  node [shape=box, style=filled, fontsize=9];\n");
    for (i, v) in q.classes.iter().enumerate() {
        let _ = writeln!(out, "  q{i} [label=\"{v}\", fillcolor=\"{}\"];", DOT_FILLS[colour_index(v.m)]);
    }
    for &(i, j) in &q.edges {
        let _ = writeln!(out, "  q{i} -- q{j};");
    }
    out.push_str("}\n");
    out
}

/// Witnesses become edges labelled by name; a colouring, when given, picks fills.
pub fn graph_dot(g: &WitnessedGraph, coloring: Option<&Coloring>) -> String {
    const PALETTE: [&str; 6] = ["#8DD3C7", "#FFFFB3", "#BEBADA", "#FB8072", "#80B1D3", "#FDB462"];
    let mut out = String::from("graph G {\n  node [shape=circle, style=filled, fillcolor=white];\n");
    for v in g.vertices() {
        match coloring.and_then(|c| c.get(v)) {
            Some(c) => {
                let _ = writeln!(out, "  v{} [label=\"{}\", fillcolor=\"{}\"];", v.0, g.vertex_name(v), PALETTE[c as usize % 6]);
            }
            None => {
                let _ = writeln!(out, "  v{} [label=\"{}\"];", v.0, g.vertex_name(v));
            }
        }
    }
    for w in g.witnesses() {
        let (a, b) = g.ends(w);
        let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", a.0, b.0, g.witness_name(w));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::ParamPrefix;

    #[test]
    fn gadget_dot_counts() {
        let g = PathGadget::build(&ParamPrefix::new(vec![1, 3, 5]).unwrap());
        let dot = gadget_dot(&g);
        assert_eq!(dot.matches("fillcolor").count(), 30);
        assert_eq!(dot.matches(" -- ").count(), 29);
        assert!(dot.starts_with("// path gadget L_3 for c = (1,3,5)"));
        assert!(dot.contains("// 30 vertices, 29 edges"));
    }

    #[test]
    fn tikz_and_json() {
        let g = PathGadget::build(&ParamPrefix::new(vec![1]).unwrap());
        let tikz = gadget_tikz(&g);
        assert_eq!(tikz.matches("\\node[nd").count(), 4);
        assert!(tikz.contains("joinone"));
        let single = gadget_json(&PathGadget::build(&ParamPrefix::empty()));
        assert_eq!(single["vertexCount"], 1);
        assert_eq!(single["vertices"][0]["label"], "p0");
    }

    #[test]
    fn graph_dot_lists_witnesses() {
        let dot = graph_dot(&WitnessedGraph::complete(3), None);
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
