//! Brute-force oracles and random graph generators shared by the integration
//! tests. Everything here works straight from the definitions and avoids the
//! library's own closures and bitset shortcuts where it matters.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udag_core::{sample_markov_fixture, DiscreteDistribution, NodeSet, Strictness, Udag, Ug};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random UDAG over `n` nodes: arrows follow a random order (so no directed
/// cycle), lines are independent of the order. Either kind may appear on the
/// same pair.
pub fn sparse_udag<R: Rng>(rng: &mut R, n: usize, p_arrow: f64, p_line: f64) -> Udag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut directed = Vec::new();
    let mut undirected = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p_arrow) {
                directed.push((order[i], order[j]));
            }
            if rng.gen_bool(p_line) {
                undirected.push((order[i].min(order[j]), order[i].max(order[j])));
            }
        }
    }
    Udag::new(n, &directed, &undirected).expect("random order keeps arrows acyclic")
}

/// A random graph with 2..=max_n nodes and a randomly chosen density.
pub fn random_udag(seed: u64, max_n: usize) -> Udag {
    let mut r = rng(seed);
    let n = r.gen_range(2..=max_n);
    let pa = r.gen_range(0.1..0.6);
    let pl = r.gen_range(0.0..0.4);
    sparse_udag(&mut r, n, pa, pl)
}

/// Random DAG (`lines = false`) or undirected graph.
pub fn random_dag_or_ug<R: Rng>(rng: &mut R, n: usize, lines: bool) -> Udag {
    let p = rng.gen_range(0.2..0.7);
    if lines {
        sparse_udag(rng, n, 0.0, p)
    } else {
        sparse_udag(rng, n, p, 0.0)
    }
}

pub fn subsets(s: NodeSet) -> Vec<NodeSet> {
    let items: Vec<usize> = s.iter().collect();
    (0..1u64 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Moral adjacency from the definition: `a - b` iff `a` and `b` are joined
/// by some edge, or `a -> c - ... - d <- b` with the undirected part a path
/// (`c = d` allowed). Paths are found by plain depth-first search.
pub fn moral_oracle(g: &Udag) -> Vec<Vec<bool>> {
    let n = g.n();
    let nodes = g.nodes();
    let mut adj = vec![vec![false; n]; n];
    for a in nodes.iter() {
        for b in nodes.iter() {
            if a != b && (g.has_arrow(a, b) || g.has_arrow(b, a) || g.has_line(a, b)) {
                adj[a][b] = true;
            }
        }
    }
    for a in nodes.iter() {
        for b in nodes.iter().filter(|&b| b != a) {
            'search: for c in g.children_of(a).iter() {
                let mut stack = vec![(c, vec![c])];
                while let Some((v, path)) = stack.pop() {
                    if g.has_arrow(b, v) {
                        adj[a][b] = true;
                        break 'search;
                    }
                    for w in g.neighbors_of(v).iter() {
                        if !path.contains(&w) {
                            let mut p = path.clone();
                            p.push(w);
                            stack.push((w, p));
                        }
                    }
                }
            }
        }
    }
    adj
}

/// Whether a `z`-active route joins `a` and `b`. Routes may repeat nodes, so
/// the search runs over states `(node, current section entered through an
/// arrowhead, current section contains a node of z)`.
pub fn active_route_exists(g: &Udag, a: usize, b: usize, z: NodeSet) -> bool {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = (a, false, z.contains(a));
    seen.insert(start);
    queue.push_back(start);
    while let Some((v, entered, hits)) = queue.pop_front() {
        if v == b && !hits {
            return true;
        }
        let mut next = Vec::new();
        for w in g.neighbors_of(v).iter() {
            next.push((w, entered, hits || z.contains(w)));
        }
        // v -> w: the section ends with a tail, so it is a non-collider.
        if !hits {
            for w in g.children_of(v).iter() {
                next.push((w, true, z.contains(w)));
            }
        }
        // w -> v: arrowhead into the section; a collider if it was entered
        // the same way.
        let ok = if entered { hits } else { !hits };
        if ok {
            for w in g.parents_of(v).iter() {
                next.push((w, false, z.contains(w)));
            }
        }
        for s in next {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    false
}

/// Non-adjacent pairs that no conditioning set separates, by trying every
/// set with the route oracle.
pub fn inseparable_oracle(g: &Udag) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in g.nodes().iter() {
        for b in g.nodes().iter().filter(|&b| b > a) {
            if g.adjacent(a, b) {
                continue;
            }
            let rest = g.nodes().without(a).without(b);
            if subsets(rest).into_iter().all(|z| active_route_exists(g, a, b, z)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Maximal complete vertex sets by exhaustive enumeration.
pub fn cliques_oracle(h: &Ug) -> BTreeSet<NodeSet> {
    let complete = |s: NodeSet| s.iter().all(|a| s.iter().all(|b| a == b || h.has_edge(a, b)));
    let all: Vec<NodeSet> = subsets(h.nodes())
        .into_iter()
        .filter(|s| !s.is_empty() && complete(*s))
        .collect();
    all.iter()
        .filter(|s| !all.iter().any(|t| t != *s && s.is_subset(*t)))
        .copied()
        .collect()
}

/// Closed under parents and neighbours, checked edge by edge.
pub fn is_ancestral_oracle(g: &Udag, w: NodeSet) -> bool {
    w.iter().all(|v| {
        g.nodes()
            .iter()
            .all(|u| !(g.has_arrow(u, v) || g.has_line(u, v)) || w.contains(u))
    })
}

pub fn ancestral_sets_oracle(g: &Udag) -> Vec<NodeSet> {
    subsets(g.nodes())
        .into_iter()
        .filter(|w| !w.is_empty() && is_ancestral_oracle(g, *w))
        .collect()
}

fn moral_of_induced(g: &Udag, w: NodeSet) -> Vec<Vec<bool>> {
    moral_oracle(&g.induced_subgraph(w))
}

fn row(adj: &[Vec<bool>], a: usize) -> NodeSet {
    (0..adj.len()).filter(|&b| adj[a][b]).collect()
}

/// Marginal of an adjacency matrix over `w`: an edge, or a path whose
/// interior lies outside `w`.
pub fn marginal_oracle(adj: &[Vec<bool>], nodes: NodeSet, w: NodeSet) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut out = vec![vec![false; n]; n];
    for a in w.iter() {
        let mut seen = BTreeSet::new();
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for u in nodes.iter().filter(|&u| adj[v][u]) {
                if w.contains(u) {
                    if u != a {
                        out[a][u] = true;
                    }
                } else if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
    }
    out
}

/// Ancestral sets maximal for `a`, straight from the definition: every
/// ancestral proper superset strictly enlarges the moral neighbourhood of `a`.
pub fn maximal_for_node_oracle(g: &Udag, a: usize) -> BTreeSet<NodeSet> {
    let anc = ancestral_sets_oracle(g);
    anc.iter()
        .filter(|w| w.contains(a))
        .filter(|&&w| {
            let base = row(&moral_of_induced(g, w), a);
            anc.iter()
                .filter(|&&u| w.is_subset(u) && u != w)
                .all(|&u| row(&moral_of_induced(g, u), a) != base)
        })
        .copied()
        .collect()
}

/// Ancestral sets maximal for the factorization: the moral graph over `W` is
/// a proper subgraph of the marginal over `W` of every ancestral proper
/// superset's moral graph.
pub fn maximal_fact_oracle(g: &Udag) -> BTreeSet<NodeSet> {
    let anc = ancestral_sets_oracle(g);
    anc.iter()
        .filter(|&&w| {
            let base = moral_of_induced(g, w);
            anc.iter()
                .filter(|&&u| w.is_subset(u) && u != w)
                .all(|&u| marginal_oracle(&moral_of_induced(g, u), u, w) != base)
        })
        .copied()
        .collect()
}

/// A fixture from a random DAG or undirected graph over `n` nodes.
pub fn exact_fixture(seed: u64, n: usize) -> (Udag, DiscreteDistribution) {
    let mut r = rng(seed);
    let g = random_dag_or_ug(&mut r, n, seed % 2 == 1);
    let p = sample_markov_fixture(&g, seed, Strictness::DagOrUgExact)
        .unwrap()
        .distribution;
    (g, p)
}

/// Graphs to test a fixture against: its generator, the generator with one
/// edge dropped, with extra lines, and an unrelated graph.
pub fn probe_graphs(g: &Udag, seed: u64) -> Vec<Udag> {
    let mut r = rng(seed ^ 0x9e37);
    let arrows = g.directed_edges();
    let lines = g.undirected_edges();
    let mut out = vec![g.clone()];
    if !arrows.is_empty() || !lines.is_empty() {
        let k = r.gen_range(0..arrows.len() + lines.len());
        let (mut a2, mut l2) = (arrows.clone(), lines.clone());
        if k < arrows.len() {
            a2.remove(k);
        } else {
            l2.remove(k - arrows.len());
        }
        out.push(Udag::new(g.n(), &a2, &l2).unwrap());
    }
    let mut l3 = lines.clone();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if !g.has_line(a, b) && r.gen_bool(0.3) {
                l3.push((a, b));
            }
        }
    }
    out.push(Udag::new(g.n(), &arrows, &l3).unwrap());
    out.push(sparse_udag(&mut r, g.n(), 0.3, 0.2));
    out
}

/// Proptest strategy for UDAGs with 2..=max_n nodes. Each pair gets an arrow
/// (oriented along a shuffled order) with probability 3/10 and a line with
/// probability 3/10, independently enough to produce both kinds on a pair.
pub fn udag_strategy(max_n: usize) -> impl proptest::strategy::Strategy<Value = Udag> {
    use proptest::prelude::*;
    (
        2..=max_n,
        proptest::collection::vec(0u8..10, max_n * max_n),
        any::<u64>(),
    )
        .prop_map(|(n, states, seed)| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng(seed));
            let mut directed = Vec::new();
            let mut undirected = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let s = states[i * n + j];
                    if s < 3 {
                        directed.push((order[i], order[j]));
                    }
                    if (2..5).contains(&s) {
                        undirected.push((order[i].min(order[j]), order[i].max(order[j])));
                    }
                }
            }
            Udag::new(n, &directed, &undirected).expect("order keeps arrows acyclic")
        })
}
