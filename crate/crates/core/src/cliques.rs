//! Maximal cliques of an undirected graph (Bron–Kerbosch with pivoting).

use alloc::vec::Vec;

use crate::graph::Ug;
use crate::nodeset::NodeSet;

/// All maximal complete sets of `h`, each once, sorted lexicographically.
/// Isolated nodes come back as singleton cliques.
pub fn cliques(h: &Ug) -> Vec<NodeSet> {
    let mut out = Vec::new();
    if h.nodes().is_empty() {
        return out;
    }
    expand(h, NodeSet::EMPTY, h.nodes(), NodeSet::EMPTY, &mut out);
    out.sort_by(|a, b| a.cmp_lex(*b));
    out
}

fn expand(h: &Ug, r: NodeSet, mut p: NodeSet, mut x: NodeSet, out: &mut Vec<NodeSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    // Pivot on the vertex of P ∪ X with the most neighbours in P.
    let pivot = (p | x)
        .iter()
        .max_by_key(|&u| (h.neighbors_of(u) & p).len())
        .expect("P is non-empty");
    for v in (p - h.neighbors_of(pivot)).iter() {
        let nv = h.neighbors_of(v);
        expand(h, r.with(v), p & nv, x & nv, out);
        p.remove(v);
        x.insert(v);
    }
}
