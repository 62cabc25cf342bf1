//! Separation in UDAGs.
//!
//! Two equivalent criteria are implemented. The moral criterion checks
//! whether `Z` blocks every path between `X` and `Y` in the moral graph of
//! `G[an(X ∪ Y ∪ Z)]`. The route criterion grows three node sets from `X`
//! with seven closure rules and reports whether any node of `Y` was reached
//! by a `Z`-active route.

use alloc::vec::Vec;

use crate::graph::Udag;
use crate::nodeset::{NodeId, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeparationError {
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("graphs are over different node sets")]
    NodeMismatch,
}

/// `X ⊥ Y | Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationQuery {
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
}

impl SeparationQuery {
    pub fn new(x: NodeSet, y: NodeSet, z: NodeSet) -> Self {
        SeparationQuery { x, y, z }
    }

    pub fn elementary(a: NodeId, b: NodeId, z: NodeSet) -> Self {
        SeparationQuery {
            x: NodeSet::singleton(a),
            y: NodeSet::singleton(b),
            z,
        }
    }

    pub fn validate(&self, g: &Udag) -> Result<(), SeparationError> {
        if self.x.is_empty() || self.y.is_empty() {
            return Err(SeparationError::InvalidQuery("X and Y must be non-empty"));
        }
        if self.x.intersects(self.y) || self.x.intersects(self.z) || self.y.intersects(self.z) {
            return Err(SeparationError::InvalidQuery("X, Y and Z must be pairwise disjoint"));
        }
        if !(self.x | self.y | self.z).is_subset(g.nodes()) {
            return Err(SeparationError::InvalidQuery(
                "query references nodes outside the graph",
            ));
        }
        Ok(())
    }
}

/// Final state of the route-based closure.
///
/// `u1` holds nodes reached by a `Z`-active route ending in an arrowhead
/// followed by a (possibly empty) run of lines, `u2` nodes reached by any
/// other `Z`-active route, and `u3` the nodes of undirected sections entered
/// through an arrowhead that contain a node of `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReachState {
    pub u1: NodeSet,
    pub u2: NodeSet,
    pub u3: NodeSet,
}

impl ReachState {
    pub fn reached(&self) -> NodeSet {
        self.u1 | self.u2
    }
}

/// Moral criterion without query validation.
pub(crate) fn moral_separated(g: &Udag, x: NodeSet, y: NodeSet, z: NodeSet) -> bool {
    let w = g.an(x | y | z);
    let adj = g.moral_adjacency(w);
    let allowed = w - z;
    let mut seen = x;
    let mut frontier = x;
    while !frontier.is_empty() {
        let mut next = NodeSet::EMPTY;
        for v in frontier.iter() {
            next |= adj[v];
        }
        next &= allowed;
        if next.intersects(y) {
            return false;
        }
        frontier = next - seen;
        seen |= next;
    }
    !seen.intersects(y)
}

/// Runs the seven closure rules in the fixed order 1..7 until nothing changes.
pub(crate) fn reach_closure(g: &Udag, x: NodeSet, z: NodeSet) -> ReachState {
    let mut s = ReachState {
        u1: NodeSet::EMPTY,
        u2: x,
        u3: NodeSet::EMPTY,
    };
    loop {
        let before = s;
        // 1. C ∈ U2, D -> C or D - C, D ∉ Z  =>  D ∈ U2
        s.u2 |= (g.pa(s.u2) | g.ne(s.u2)) - z;
        // 2. C ∈ U1 ∪ U2, C -> D, D ∉ Z  =>  D ∈ U1
        let ch = g.ch(s.u1 | s.u2);
        s.u1 |= ch - z;
        // 3. C ∈ U1, C - D, D ∉ Z  =>  D ∈ U1
        s.u1 |= g.ne(s.u1) - z;
        // 4. C ∈ U1 ∪ U2, C -> D, D ∈ Z  =>  D ∈ U3
        s.u3 |= g.ch(s.u1 | s.u2) & z;
        // 5. C ∈ U1, C - D, D ∈ Z  =>  D ∈ U3
        s.u3 |= g.ne(s.u1) & z;
        // 6. C ∈ U3, C - D  =>  D ∈ U3
        s.u3 |= g.ne(s.u3);
        // 7. C ∈ U3, D -> C, D ∉ Z  =>  D ∈ U2
        s.u2 |= g.pa(s.u3) - z;
        if s == before {
            return s;
        }
    }
}

/// `X ⊥ Y | Z` by the moral-graph criterion.
pub fn separated_moral(g: &Udag, q: &SeparationQuery) -> Result<bool, SeparationError> {
    q.validate(g)?;
    Ok(moral_separated(g, q.x, q.y, q.z))
}

/// `X ⊥ Y | Z` by the route criterion, together with the final reach sets.
pub fn separated_reach(g: &Udag, q: &SeparationQuery) -> Result<(bool, ReachState), SeparationError> {
    q.validate(g)?;
    let s = reach_closure(g, q.x, q.z);
    Ok((!s.reached().intersects(q.y), s))
}

/// Every elementary triplet `(a, b, Z)` with `a < b` and `Z ⊆ nodes \ {a, b}`,
/// ordered by `|Z|`, then `a`, then `b`, then `Z`.
pub fn elementary_triplets(nodes: NodeSet) -> Vec<(NodeId, NodeId, NodeSet)> {
    let mut out = Vec::new();
    for a in nodes.iter() {
        for b in nodes.iter().filter(|&b| b > a) {
            let rest = nodes.without(a).without(b);
            for z in rest.subsets() {
                out.push((a, b, z));
            }
        }
    }
    out.sort_by(|p, q| {
        p.2.len()
            .cmp(&q.2.len())
            .then(p.0.cmp(&q.0))
            .then(p.1.cmp(&q.1))
            .then(p.2.bits().cmp(&q.2.bits()))
    });
    out
}

/// All elementary separations of `g`, in [`elementary_triplets`] order.
pub fn separation_model(g: &Udag) -> Vec<(NodeId, NodeId, NodeSet)> {
    elementary_triplets(g.nodes())
        .into_iter()
        .filter(|&(a, b, z)| {
            let r = reach_closure(g, NodeSet::singleton(a), z);
            !r.reached().contains(b)
        })
        .collect()
}

/// Non-adjacent pairs that no conditioning set separates.
///
/// A pair `(a, b)` qualifies when `a -> c` and `b -> d` point into one
/// undirected component that contains an ancestor of `a` or `b`; the
/// undirected walk from `c` to `d` can then be routed through that ancestor.
pub fn non_separable_pairs(g: &Udag) -> Vec<(NodeId, NodeId)> {
    let comps = g.undirected_components(g.nodes());
    let mut out = Vec::new();
    for a in g.nodes().iter() {
        for b in g.nodes().iter().filter(|&b| b > a) {
            if g.adjacent(a, b) {
                continue;
            }
            let anc = g.an(NodeSet::singleton(a).with(b));
            let (cha, chb) = (g.children_of(a), g.children_of(b));
            if comps
                .iter()
                .any(|&k| k.intersects(cha) && k.intersects(chb) && k.intersects(anc))
            {
                out.push((a, b));
            }
        }
    }
    out
}

/// Replaces `G[W]` by its moral graph when `W` is an ancestral set of size
/// greater than one that contains no smaller such set. The result is Markov
/// equivalent to `g`.
pub fn moralize_minimal_ancestral(g: &Udag, w: NodeSet) -> Result<Udag, SeparationError> {
    if !w.is_subset(g.nodes()) {
        return Err(SeparationError::PreconditionViolated("W has nodes outside the graph"));
    }
    if w.len() < 2 {
        return Err(SeparationError::PreconditionViolated("W must have more than one node"));
    }
    if !g.is_ancestral_set(w) {
        return Err(SeparationError::PreconditionViolated("W is not ancestral"));
    }
    if has_smaller_ancestral_subset(g, w) {
        return Err(SeparationError::PreconditionViolated(
            "W contains a smaller ancestral set of size greater than one",
        ));
    }
    let moral = g.moral_adjacency(w);
    let n = g.n();
    let mut children = Vec::with_capacity(n);
    let mut neighbors = Vec::with_capacity(n);
    for v in 0..n {
        if !g.nodes().contains(v) {
            children.push(NodeSet::EMPTY);
            neighbors.push(NodeSet::EMPTY);
        } else if w.contains(v) {
            // Arrows leaving W survive; everything inside W becomes a line.
            children.push(g.children_of(v) - w);
            neighbors.push(moral[v]);
        } else {
            children.push(g.children_of(v));
            neighbors.push(g.neighbors_of(v));
        }
    }
    Ok(Udag::from_parts_unchecked(
        g.names_arc(),
        g.nodes(),
        children,
        neighbors,
    ))
}

/// Every ancestral set of size > 1 is a union of single-node closures, so a
/// proper one exists inside `w` iff some closure or some union of two
/// closures is proper and has at least two nodes.
fn has_smaller_ancestral_subset(g: &Udag, w: NodeSet) -> bool {
    let closures: Vec<NodeSet> = w.iter().map(|v| g.an(NodeSet::singleton(v))).collect();
    for (i, &ci) in closures.iter().enumerate() {
        if ci != w && ci.len() > 1 {
            return true;
        }
        for &cj in &closures[i + 1..] {
            let u = ci | cj;
            if u != w && u.len() > 1 {
                return true;
            }
        }
    }
    false
}

/// Whether `g1` and `g2` represent the same independence model, compared on
/// elementary triplets.
pub fn markov_equivalent(g1: &Udag, g2: &Udag) -> Result<bool, SeparationError> {
    if g1.nodes() != g2.nodes() || g1.n() != g2.n() {
        return Err(SeparationError::NodeMismatch);
    }
    Ok(elementary_triplets(g1.nodes()).into_iter().all(|(a, b, z)| {
        let x = NodeSet::singleton(a);
        let y = NodeSet::singleton(b);
        moral_separated(g1, x, y, z) == moral_separated(g2, x, y, z)
    }))
}
