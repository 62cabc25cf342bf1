//! Mixed graphs with directed and undirected edges (UDAGs) and plain
//! undirected graphs.
//!
//! A [`Udag`] forbids directed cycles and self-loops but otherwise allows
//! semi-directed cycles and up to two edges between a pair of nodes, one
//! directed and one undirected. Both graph types carry a vertex set so that
//! induced subgraphs keep the node ids of the graph they came from.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::nodeset::{NodeId, NodeSet, MAX_NODES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has {0} nodes, at most 64 are supported")]
    TooManyNodes(usize),
    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("directed cycle {0:?}")]
    DirectedCycle(Vec<NodeId>),
    #[error("expected {expected} node names, got {got}")]
    NameCount { expected: usize, got: usize },
}

pub(crate) fn default_names(n: usize) -> Arc<[String]> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                String::from(char::from(b'A' + i as u8))
            } else {
                format!("V{i}")
            }
        })
        .collect()
}

fn check_range(n: usize, v: NodeId) -> Result<(), GraphError> {
    if v >= n {
        Err(GraphError::NodeOutOfRange { node: v, n })
    } else {
        Ok(())
    }
}

/// A graph with directed and undirected edges and no directed cycles.
#[derive(Clone, PartialEq, Eq)]
pub struct Udag {
    n: usize,
    names: Arc<[String]>,
    nodes: NodeSet,
    parents: Vec<NodeSet>,
    children: Vec<NodeSet>,
    neighbors: Vec<NodeSet>,
}

impl core::fmt::Debug for Udag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Udag")
            .field("nodes", &self.nodes)
            .field("directed", &self.directed_edges())
            .field("undirected", &self.undirected_edges())
            .finish()
    }
}

impl Udag {
    /// Validated construction with default names (`A`, `B`, ... for up to 26 nodes).
    pub fn new(n: usize, directed: &[(NodeId, NodeId)], undirected: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        if n > MAX_NODES {
            return Err(GraphError::TooManyNodes(n));
        }
        Self::build(default_names(n), directed, undirected)
    }

    pub fn with_names(
        names: Vec<String>,
        directed: &[(NodeId, NodeId)],
        undirected: &[(NodeId, NodeId)],
    ) -> Result<Self, GraphError> {
        if names.len() > MAX_NODES {
            return Err(GraphError::TooManyNodes(names.len()));
        }
        Self::build(names.into(), directed, undirected)
    }

    /// The graph over `n` nodes with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, &[], &[])
    }

    fn build(
        names: Arc<[String]>,
        directed: &[(NodeId, NodeId)],
        undirected: &[(NodeId, NodeId)],
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut g = Udag {
            n,
            names,
            nodes: NodeSet::full(n),
            parents: vec![NodeSet::EMPTY; n],
            children: vec![NodeSet::EMPTY; n],
            neighbors: vec![NodeSet::EMPTY; n],
        };
        for &(a, b) in directed {
            check_range(n, a)?;
            check_range(n, b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if g.children[a].contains(b) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            if g.children[b].contains(a) {
                return Err(GraphError::DirectedCycle(vec![a, b, a]));
            }
            g.children[a].insert(b);
            g.parents[b].insert(a);
        }
        for &(a, b) in undirected {
            check_range(n, a)?;
            check_range(n, b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if g.neighbors[a].contains(b) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.neighbors[a].insert(b);
            g.neighbors[b].insert(a);
        }
        if let Some(cycle) = g.find_directed_cycle() {
            return Err(GraphError::DirectedCycle(cycle));
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency without validation. Callers guarantee
    /// acyclicity and symmetry of `neighbors`.
    pub(crate) fn from_parts_unchecked(
        names: Arc<[String]>,
        nodes: NodeSet,
        children: Vec<NodeSet>,
        neighbors: Vec<NodeSet>,
    ) -> Self {
        let n = names.len();
        let mut parents = vec![NodeSet::EMPTY; n];
        for (a, ch) in children.iter().enumerate() {
            for b in ch.iter() {
                parents[b].insert(a);
            }
        }
        Udag {
            n,
            names,
            nodes,
            parents,
            children,
            neighbors,
        }
    }

    fn find_directed_cycle(&self) -> Option<Vec<NodeId>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.n];
        let mut stack: Vec<NodeId> = Vec::new();
        for root in self.nodes.iter() {
            if state[root] != 0 {
                continue;
            }
            if let Some(c) = self.cycle_dfs(root, &mut state, &mut stack) {
                return Some(c);
            }
        }
        None
    }

    fn cycle_dfs(&self, v: NodeId, state: &mut [u8], stack: &mut Vec<NodeId>) -> Option<Vec<NodeId>> {
        state[v] = 1;
        stack.push(v);
        for w in self.children[v].iter() {
            match state[w] {
                0 => {
                    if let Some(c) = self.cycle_dfs(w, state, stack) {
                        return Some(c);
                    }
                }
                1 => {
                    let start = stack.iter().position(|&x| x == w).unwrap_or(0);
                    let mut cycle: Vec<NodeId> = stack[start..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                _ => {}
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }

    /// Size of the id space. Node ids run over `0..n()`, but an induced
    /// subgraph's vertex set ([`Udag::nodes`]) may be smaller.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn nodes(&self) -> NodeSet {
        self.nodes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub(crate) fn names_arc(&self) -> Arc<[String]> {
        self.names.clone()
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn parents_of(&self, v: NodeId) -> NodeSet {
        self.parents[v]
    }

    #[inline]
    pub fn children_of(&self, v: NodeId) -> NodeSet {
        self.children[v]
    }

    #[inline]
    pub fn neighbors_of(&self, v: NodeId) -> NodeSet {
        self.neighbors[v]
    }

    pub fn has_arrow(&self, a: NodeId, b: NodeId) -> bool {
        self.children[a].contains(b)
    }

    pub fn has_line(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors[a].contains(b)
    }

    /// Adjacent by an edge of any kind, in either direction.
    pub fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency(a).contains(b)
    }

    #[inline]
    pub(crate) fn adjacency(&self, v: NodeId) -> NodeSet {
        self.parents[v] | self.children[v] | self.neighbors[v]
    }

    pub fn pa(&self, x: NodeSet) -> NodeSet {
        x.iter().fold(NodeSet::EMPTY, |acc, v| acc | self.parents[v])
    }

    pub fn ch(&self, x: NodeSet) -> NodeSet {
        x.iter().fold(NodeSet::EMPTY, |acc, v| acc | self.children[v])
    }

    pub fn ne(&self, x: NodeSet) -> NodeSet {
        x.iter().fold(NodeSet::EMPTY, |acc, v| acc | self.neighbors[v])
    }

    /// Ancestors of `x`, including `x` itself. A node is an ancestor of `A`
    /// when a route `B -> ... -> A` exists whose edges are each directed
    /// towards `A` or undirected.
    pub fn an(&self, x: NodeSet) -> NodeSet {
        let mut out = x;
        let mut frontier = x;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for v in frontier.iter() {
                next |= self.parents[v] | self.neighbors[v];
            }
            frontier = next - out;
            out |= next;
        }
        out
    }

    /// Descendants of `x`, including `x` itself.
    pub fn de(&self, x: NodeSet) -> NodeSet {
        let mut out = x;
        let mut frontier = x;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for v in frontier.iter() {
                next |= self.children[v] | self.neighbors[v];
            }
            frontier = next - out;
            out |= next;
        }
        out
    }

    pub fn is_ancestral_set(&self, w: NodeSet) -> bool {
        self.an(w) == w
    }

    /// The subgraph induced by `w`. Node ids are preserved; nodes outside
    /// `w` are dropped from the vertex set.
    pub fn induced_subgraph(&self, w: NodeSet) -> Udag {
        let w = w & self.nodes;
        let mut children = vec![NodeSet::EMPTY; self.n];
        let mut parents = vec![NodeSet::EMPTY; self.n];
        let mut neighbors = vec![NodeSet::EMPTY; self.n];
        for v in w.iter() {
            children[v] = self.children[v] & w;
            parents[v] = self.parents[v] & w;
            neighbors[v] = self.neighbors[v] & w;
        }
        Udag {
            n: self.n,
            names: self.names.clone(),
            nodes: w,
            parents,
            children,
            neighbors,
        }
    }

    /// Connected components of the undirected skeleton restricted to `within`,
    /// singletons included.
    pub fn undirected_components(&self, within: NodeSet) -> Vec<NodeSet> {
        let within = within & self.nodes;
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for v in within.iter() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = NodeSet::singleton(v);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = self.ne(frontier) & within;
                frontier = next - comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Adjacency of `(G_W)^m` where `W = within`. Index `v` holds the moral
    /// neighbors of `v`; entries for nodes outside `within` are empty.
    pub(crate) fn moral_adjacency(&self, within: NodeSet) -> Vec<NodeSet> {
        let within = within & self.nodes;
        let mut adj = vec![NodeSet::EMPTY; self.n];
        for v in within.iter() {
            adj[v] = self.adjacency(v) & within;
        }
        for section in self.undirected_components(within) {
            let pa = self.pa(section) & within;
            if pa.len() < 2 {
                continue;
            }
            for a in pa.iter() {
                adj[a] |= pa.without(a);
            }
        }
        adj
    }

    /// The moral graph: `A - B` whenever `A` and `B` are adjacent, or both have
    /// arrows into one undirected-connected section.
    pub fn moral_graph(&self) -> Ug {
        Ug {
            n: self.n,
            names: self.names.clone(),
            nodes: self.nodes,
            adj: self.moral_adjacency(self.nodes),
        }
    }

    /// Directed edges `(a, b)` meaning `a -> b`, sorted.
    pub fn directed_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for a in self.nodes.iter() {
            for b in self.children[a].iter() {
                out.push((a, b));
            }
        }
        out
    }

    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub fn undirected_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for a in self.nodes.iter() {
            for b in self.neighbors[a].iter() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn num_arrows(&self) -> usize {
        self.nodes.iter().map(|v| self.children[v].len()).sum()
    }

    pub fn num_lines(&self) -> usize {
        self.nodes.iter().map(|v| self.neighbors[v].len()).sum::<usize>() / 2
    }

    pub fn num_edges(&self) -> usize {
        self.num_arrows() + self.num_lines()
    }

    /// Ordering key used for deterministic tie-breaking between graphs:
    /// sorted undirected edges, then sorted directed edges.
    pub fn edge_key(&self) -> (Vec<(NodeId, NodeId)>, Vec<(NodeId, NodeId)>) {
        (self.undirected_edges(), self.directed_edges())
    }

    pub fn is_dag(&self) -> bool {
        self.num_lines() == 0
    }

    pub fn is_ug(&self) -> bool {
        self.num_arrows() == 0
    }

    /// LWF chain graph: at most one edge per pair and no semi-directed cycle,
    /// i.e. no arrow inside an undirected component and the arrows between
    /// components form a DAG.
    pub fn is_lwf_chain_graph(&self) -> bool {
        for v in self.nodes.iter() {
            if self.children[v].intersects(self.neighbors[v]) || self.parents[v].intersects(self.neighbors[v]) {
                return false;
            }
        }
        let comps = self.undirected_components(self.nodes);
        let mut comp_of = vec![usize::MAX; self.n];
        for (i, c) in comps.iter().enumerate() {
            for v in c.iter() {
                comp_of[v] = i;
            }
        }
        let k = comps.len();
        let mut succ = vec![0u64; k];
        for v in self.nodes.iter() {
            for w in self.children[v].iter() {
                let (cv, cw) = (comp_of[v], comp_of[w]);
                if cv == cw {
                    return false;
                }
                succ[cv] |= 1u64 << cw;
            }
        }
        // Kahn on the component graph.
        let mut indeg = vec![0usize; k];
        for s in &succ {
            for w in NodeSet::from_bits(*s).iter() {
                indeg[w] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
        let mut visited = 0;
        while let Some(c) = ready.pop() {
            visited += 1;
            for w in NodeSet::from_bits(succ[c]).iter() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        visited == k
    }

    /// Returns a copy with different node names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Udag, GraphError> {
        if names.len() != self.n {
            return Err(GraphError::NameCount {
                expected: self.n,
                got: names.len(),
            });
        }
        let mut g = self.clone();
        g.names = names.into();
        Ok(g)
    }
}

/// An undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Ug {
    n: usize,
    names: Arc<[String]>,
    nodes: NodeSet,
    adj: Vec<NodeSet>,
}

impl core::fmt::Debug for Ug {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Ug")
            .field("nodes", &self.nodes)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Ug {
    pub fn new(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        if n > MAX_NODES {
            return Err(GraphError::TooManyNodes(n));
        }
        Self::with_names_arc(default_names(n), edges)
    }

    pub fn with_names(names: Vec<String>, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        if names.len() > MAX_NODES {
            return Err(GraphError::TooManyNodes(names.len()));
        }
        Self::with_names_arc(names.into(), edges)
    }

    fn with_names_arc(names: Arc<[String]>, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        let n = names.len();
        let mut adj = vec![NodeSet::EMPTY; n];
        for &(a, b) in edges {
            check_range(n, a)?;
            check_range(n, b)?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Ug {
            n,
            names,
            nodes: NodeSet::full(n),
            adj,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn nodes(&self) -> NodeSet {
        self.nodes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn neighbors_of(&self, v: NodeId) -> NodeSet {
        self.adj[v]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a].contains(b)
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for a in self.nodes.iter() {
            for b in self.adj[a].iter() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn is_complete(&self, s: NodeSet) -> bool {
        s.iter().all(|v| (s.without(v)).is_subset(self.adj[v]))
    }

    /// Adds edges until `s` is complete.
    pub fn complete(&mut self, s: NodeSet) {
        let s = s & self.nodes;
        for v in s.iter() {
            self.adj[v] |= s.without(v);
        }
    }

    /// Nodes reachable from `from` along paths that stay inside `allowed`.
    /// The start nodes are included whether or not they are allowed.
    pub fn reachable(&self, from: NodeSet, allowed: NodeSet) -> NodeSet {
        let mut seen = from;
        let mut frontier = from;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            next &= allowed;
            frontier = next - seen;
            seen |= next;
        }
        seen
    }

    /// `X` and `Y` are separated by `Z` when every path between them meets `Z`.
    pub fn separates(&self, x: NodeSet, y: NodeSet, z: NodeSet) -> bool {
        let reach = self.reachable(x - z, self.nodes - z);
        !reach.intersects(y)
    }

    /// Marginal subgraph over `w`: `A - B` whenever `A - B` is an edge or a
    /// path joins them whose interior avoids `w`.
    pub fn marginal(&self, w: NodeSet) -> Ug {
        let w = w & self.nodes;
        let outside = self.nodes - w;
        let mut adj = vec![NodeSet::EMPTY; self.n];
        for a in w.iter() {
            let mut hits = self.adj[a] & w;
            let mut seen = self.adj[a] & outside;
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = NodeSet::EMPTY;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                hits |= next & w;
                let nxt_out = next & outside;
                frontier = nxt_out - seen;
                seen |= nxt_out;
            }
            adj[a] = hits.without(a);
        }
        Ug {
            n: self.n,
            names: self.names.clone(),
            nodes: w,
            adj,
        }
    }

    /// Whether every edge of `self` is an edge of `other` over the same vertex set.
    pub fn is_subgraph_of(&self, other: &Ug) -> bool {
        self.nodes == other.nodes && self.nodes.iter().all(|v| self.adj[v].is_subset(other.adj[v]))
    }
}
