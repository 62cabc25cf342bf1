//! Graphviz export. Lines are drawn as arrows with `dir=none` so that both
//! kinds of edge fit in one `digraph`.

use udag_core::{Udag, Ug};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn udag_to_dot(g: &Udag) -> String {
    let mut out = String::from("digraph udag {\n");
    for v in g.nodes().iter() {
        out.push_str(&format!("  {};\n", quote(g.name(v))));
    }
    for (a, b) in g.directed_edges() {
        out.push_str(&format!("  {} -> {};\n", quote(g.name(a)), quote(g.name(b))));
    }
    for (a, b) in g.undirected_edges() {
        out.push_str(&format!("  {} -> {} [dir=none];\n", quote(g.name(a)), quote(g.name(b))));
    }
    out.push_str("}\n");
    out
}

pub fn ug_to_dot(h: &Ug) -> String {
    let names = h.names();
    let mut out = String::from("graph ug {\n");
    for v in h.nodes().iter() {
        out.push_str(&format!("  {};\n", quote(&names[v])));
    }
    for (a, b) in h.edges() {
        out.push_str(&format!("  {} -- {};\n", quote(&names[a]), quote(&names[b])));
    }
    out.push_str("}\n");
    out
}
