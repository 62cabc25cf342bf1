//! Ordering a UDAG into components by its minimal ancestral sets.
//!
//! The minimal ancestral sets are the distinct closures `an({A})`. Sorted by
//! size and then lexicographically, each set only follows its subsets. The
//! component `C_i` is what `W_i` adds to the earlier sets, `bd(C_i)` is the
//! parent boundary of `C_i`, and the star graph is the moral graph of
//! `G[C_i ∪ bd(C_i)]` with the boundary completed.

use alloc::vec::Vec;

use crate::graph::{Udag, Ug};
use crate::nodeset::NodeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub minimal_ancestral_sets: Vec<NodeSet>,
    pub components: Vec<NodeSet>,
    pub boundaries: Vec<NodeSet>,
    pub star_graphs: Vec<Ug>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of the component holding `v`.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(v))
    }
}

/// Distinct ancestral closures of single nodes, ordered by size then lexicographically.
pub fn minimal_ancestral_sets(g: &Udag) -> Vec<NodeSet> {
    let mut sets: Vec<NodeSet> = g.nodes().iter().map(|v| g.an(NodeSet::singleton(v))).collect();
    sets.sort();
    sets.dedup();
    sets
}

/// The star graph `(G[C ∪ bd])^*` for a component and its boundary.
pub fn star_graph(g: &Udag, component: NodeSet, boundary: NodeSet) -> Ug {
    let mut star = g.induced_subgraph(component | boundary).moral_graph();
    star.complete(boundary);
    star
}

pub fn decompose(g: &Udag) -> Decomposition {
    let ws = minimal_ancestral_sets(g);
    let mut covered = NodeSet::EMPTY;
    let mut components = Vec::with_capacity(ws.len());
    let mut boundaries = Vec::with_capacity(ws.len());
    let mut star_graphs = Vec::with_capacity(ws.len());
    for &w in &ws {
        let c = w - covered;
        covered |= w;
        let bd = g.pa(c) - c;
        star_graphs.push(star_graph(g, c, bd));
        components.push(c);
        boundaries.push(bd);
    }
    Decomposition {
        minimal_ancestral_sets: ws,
        components,
        boundaries,
        star_graphs,
    }
}
