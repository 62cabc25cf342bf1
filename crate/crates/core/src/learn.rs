//! Exhaustive constraint-based learning: the sparsest graph of a class whose
//! every elementary separation is an independence of the oracle.
//!
//! Candidates are grouped into levels of equal weighted edge count. Levels
//! are visited in increasing objective; inside a level candidates are ordered
//! by [`Udag::edge_key`], so the first consistent candidate is the unique
//! deterministic answer.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::distribution::DiscreteDistribution;
use crate::graph::{default_names, Udag};
use crate::nodeset::{NodeId, NodeSet};
use crate::separation::{elementary_triplets, reach_closure, separation_model};

/// Default node limit for the `udag` class.
pub const DEFAULT_MAX_NODES: usize = 5;
/// Oracles are stored densely per conditioning set, so they stay small.
pub const MAX_ORACLE_NODES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    Udag,
    Dag,
    LwfCg,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LearnError {
    #[error("{n} nodes exceed the search limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("oracle is over {oracle} nodes, graph over {graph}")]
    SizeMismatch { oracle: usize, graph: usize },
    #[error("no graph of the class is consistent with the oracle")]
    NoConsistentGraph,
    #[error("edge weights must be finite and non-negative")]
    InvalidWeight,
    #[error("invalid triplet: {0}")]
    InvalidTriplet(&'static str),
}

/// A symmetric set of elementary independences `(a, b, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndependenceOracle {
    n: usize,
    triplets: BTreeSet<(NodeId, NodeId, u64)>,
}

impl IndependenceOracle {
    pub fn new(n: usize) -> Result<Self, LearnError> {
        if n > MAX_ORACLE_NODES {
            return Err(LearnError::TooLarge {
                n,
                max: MAX_ORACLE_NODES,
            });
        }
        Ok(IndependenceOracle {
            n,
            triplets: BTreeSet::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.triplets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triplets.is_empty()
    }

    /// Declares `a ⊥ b | z` (and so `b ⊥ a | z`).
    pub fn insert(&mut self, a: NodeId, b: NodeId, z: NodeSet) -> Result<(), LearnError> {
        if a >= self.n || b >= self.n || !z.is_subset(NodeSet::full(self.n)) {
            return Err(LearnError::InvalidTriplet("node out of range"));
        }
        if a == b {
            return Err(LearnError::InvalidTriplet("sides must differ"));
        }
        if z.contains(a) || z.contains(b) {
            return Err(LearnError::InvalidTriplet("conditioning set overlaps a side"));
        }
        self.triplets.insert((a.min(b), a.max(b), z.bits()));
        Ok(())
    }

    pub fn contains(&self, a: NodeId, b: NodeId, z: NodeSet) -> bool {
        self.triplets.contains(&(a.min(b), a.max(b), z.bits()))
    }

    /// Triplets with `a < b`, ordered by `a`, `b`, then `Z` bits.
    pub fn triplets(&self) -> impl Iterator<Item = (NodeId, NodeId, NodeSet)> + '_ {
        self.triplets.iter().map(|&(a, b, z)| (a, b, NodeSet::from_bits(z)))
    }

    /// For every `(a, Z)`, the nodes `b ∉ Z ∪ {a}` not declared independent of
    /// `a` given `Z`. A consistent graph must connect `a` to all of them.
    fn dependence_table(&self) -> Vec<NodeSet> {
        let n = self.n;
        let full = NodeSet::full(n);
        let mut t = vec![NodeSet::EMPTY; n << n];
        for z in full.subsets() {
            for a in (full - z).iter() {
                let mut dep = full - z - NodeSet::singleton(a);
                for b in dep.iter() {
                    if self.contains(a, b, z) {
                        dep.remove(b);
                    }
                }
                t[(z.bits() as usize) * n + a] = dep;
            }
        }
        t
    }
}

/// All elementary separations of `g`.
pub fn oracle_from_graph(g: &Udag) -> Result<IndependenceOracle, LearnError> {
    let mut o = IndependenceOracle::new(g.n())?;
    for (a, b, z) in separation_model(g) {
        o.insert(a, b, z)?;
    }
    Ok(o)
}

/// All elementary independences of `p` within `tol`.
pub fn oracle_from_distribution(p: &DiscreteDistribution, tol: f64) -> Result<IndependenceOracle, LearnError> {
    let mut o = IndependenceOracle::new(p.n_vars())?;
    for (a, b, z) in elementary_triplets(p.all_vars()) {
        if p.ci_test_exact(NodeSet::singleton(a), NodeSet::singleton(b), z, tol) {
            o.insert(a, b, z)?;
        }
    }
    Ok(o)
}

/// Precomputed form of an oracle for repeated consistency checks.
#[derive(Debug, Clone)]
pub struct ConsistencyChecker {
    /// `(Z, a)` pairs in `|Z|`-ascending order with the nodes that must be
    /// reachable from `a` given `Z`; pairs with nothing required are skipped.
    required: Vec<(NodeSet, NodeId, NodeSet)>,
}

impl ConsistencyChecker {
    pub fn new(oracle: &IndependenceOracle) -> Self {
        let n = oracle.n;
        let table = oracle.dependence_table();
        let mut zs: Vec<NodeSet> = NodeSet::full(n).subsets().collect();
        zs.sort();
        let mut required = Vec::new();
        for z in zs {
            for a in (NodeSet::full(n) - z).iter() {
                let dep = table[(z.bits() as usize) * n + a];
                if !dep.is_empty() {
                    required.push((z, a, dep));
                }
            }
        }
        ConsistencyChecker { required }
    }

    /// Every separation of `g` is in the oracle; stops at the first violation.
    pub fn check(&self, g: &Udag) -> bool {
        self.required
            .iter()
            .all(|&(z, a, dep)| dep.is_subset(reach_closure(g, NodeSet::singleton(a), z).reached()))
    }
}

pub fn consistent(g: &Udag, oracle: &IndependenceOracle) -> Result<bool, LearnError> {
    if g.n() != oracle.n {
        return Err(LearnError::SizeMismatch {
            oracle: oracle.n,
            graph: g.n(),
        });
    }
    Ok(ConsistencyChecker::new(oracle).check(g))
}

fn pairs(n: usize) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

fn is_acyclic(children: &[NodeSet]) -> bool {
    let n = children.len();
    let mut indeg = vec![0usize; n];
    for ch in children {
        for b in ch.iter() {
            indeg[b] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for b in children[v].iter() {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(b);
            }
        }
    }
    seen == n
}

fn directed_list(children: &[NodeSet]) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for (a, ch) in children.iter().enumerate() {
        for b in ch.iter() {
            out.push((a, b));
        }
    }
    out
}

fn undirected_list(neighbors: &[NodeSet]) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for (a, nb) in neighbors.iter().enumerate() {
        for b in nb.iter().filter(|&b| b > a) {
            out.push((a, b));
        }
    }
    out
}

/// Children masks of every labeled DAG on `n` nodes, sorted by edge list.
fn all_dags(n: usize) -> Vec<Vec<NodeSet>> {
    let ps = pairs(n);
    let total = 3usize.pow(ps.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut children = vec![NodeSet::EMPTY; n];
        let mut c = code;
        for &(a, b) in &ps {
            match c % 3 {
                1 => children[a].insert(b),
                2 => children[b].insert(a),
                _ => {}
            }
            c /= 3;
        }
        if is_acyclic(&children) {
            out.push(children);
        }
    }
    out.sort_by_cached_key(|c| directed_list(c));
    out
}

/// Neighbour masks of every labeled UG on `n` nodes, sorted by edge list.
fn all_ugs(n: usize) -> Vec<Vec<NodeSet>> {
    let ps = pairs(n);
    let mut out: Vec<Vec<NodeSet>> = (0..1u64 << ps.len())
        .map(|mask| {
            let mut nb = vec![NodeSet::EMPTY; n];
            for (i, &(a, b)) in ps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    nb[a].insert(b);
                    nb[b].insert(a);
                }
            }
            nb
        })
        .collect();
    out.sort_by_cached_key(|nb| undirected_list(nb));
    out
}

fn class_limit(class: GraphClass) -> usize {
    match class {
        GraphClass::Udag => DEFAULT_MAX_NODES,
        GraphClass::Dag | GraphClass::LwfCg => 6,
    }
}

/// A candidate as `(undirected part, directed part)` indices into a
/// [`SearchSpace`]. Both part lists are sorted by edge list, so ordering
/// candidates by this pair is ordering them by [`Udag::edge_key`].
pub type Candidate = (u32, u32);

/// Every graph of a class, stored as pairs of a UG and a DAG.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    names: Arc<[String]>,
    ugs: Vec<Vec<NodeSet>>,
    dags: Vec<Vec<NodeSet>>,
    /// Explicit members when the class is not the full product.
    members: Option<Vec<Candidate>>,
}

impl SearchSpace {
    pub fn new(n: usize, class: GraphClass) -> Result<Self, LearnError> {
        Self::with_limit(n, class, class_limit(class))
    }

    pub fn with_limit(n: usize, class: GraphClass, max_nodes: usize) -> Result<Self, LearnError> {
        if n > max_nodes {
            return Err(LearnError::TooLarge { n, max: max_nodes });
        }
        let names = default_names(n);
        let dags = all_dags(n);
        let ugs = match class {
            GraphClass::Dag => vec![vec![NodeSet::EMPTY; n]],
            _ => all_ugs(n),
        };
        let members = (class == GraphClass::LwfCg).then(|| lwf_members(n, &ugs, &dags));
        Ok(SearchSpace {
            names,
            ugs,
            dags,
            members,
        })
    }

    pub fn len(&self) -> usize {
        match &self.members {
            Some(m) => m.len(),
            None => self.ugs.len() * self.dags.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn graph(&self, (u, d): Candidate) -> Udag {
        Udag::from_parts_unchecked(
            self.names.clone(),
            NodeSet::full(self.names.len()),
            self.dags[d as usize].clone(),
            self.ugs[u as usize].clone(),
        )
    }

    fn lines(&self, u: u32) -> usize {
        self.ugs[u as usize].iter().map(|s| s.len()).sum::<usize>() / 2
    }

    fn arrows(&self, d: u32) -> usize {
        self.dags[d as usize].iter().map(|s| s.len()).sum()
    }

    /// Candidates in DAG-major order.
    pub fn candidates(&self) -> impl Iterator<Item = Candidate> + '_ {
        let product = self
            .members
            .is_none()
            .then(|| (0..self.dags.len() as u32).flat_map(move |d| (0..self.ugs.len() as u32).map(move |u| (u, d))));
        let listed = self.members.as_ref().map(|m| m.iter().copied());
        product.into_iter().flatten().chain(listed.into_iter().flatten())
    }

    /// Candidates grouped by objective, in increasing objective, each level
    /// sorted by edge key.
    pub fn levels(&self, config: &LearnerConfig) -> Vec<SearchLevel> {
        let objective =
            |lines: usize, arrows: usize| config.line_weight * lines as f64 + config.arrow_weight * arrows as f64;
        let mut by_counts: BTreeMap<(usize, usize), Vec<Candidate>> = BTreeMap::new();
        match &self.members {
            Some(m) => {
                for &c in m {
                    by_counts
                        .entry((self.lines(c.0), self.arrows(c.1)))
                        .or_default()
                        .push(c);
                }
            }
            None => {
                let mut ug_by: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
                for u in 0..self.ugs.len() as u32 {
                    ug_by.entry(self.lines(u)).or_default().push(u);
                }
                let mut dag_by: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
                for d in 0..self.dags.len() as u32 {
                    dag_by.entry(self.arrows(d)).or_default().push(d);
                }
                for (&l, us) in &ug_by {
                    for (&a, ds) in &dag_by {
                        let v = by_counts.entry((l, a)).or_default();
                        for &u in us {
                            v.extend(ds.iter().map(|&d| (u, d)));
                        }
                    }
                }
            }
        }
        let mut keyed: Vec<(f64, Vec<Candidate>)> = by_counts
            .into_iter()
            .map(|((l, a), cs)| (objective(l, a), cs))
            .collect();
        keyed.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut levels: Vec<SearchLevel> = Vec::new();
        for (obj, cs) in keyed {
            match levels.last_mut() {
                Some(l) if l.objective == obj => l.candidates.extend(cs),
                _ => levels.push(SearchLevel {
                    objective: obj,
                    candidates: cs,
                }),
            }
        }
        for l in &mut levels {
            l.candidates.sort_unstable();
        }
        levels
    }
}

fn lwf_members(n: usize, ugs: &[Vec<NodeSet>], dags: &[Vec<NodeSet>]) -> Vec<Candidate> {
    let ug_index: BTreeMap<&[NodeSet], u32> = ugs.iter().enumerate().map(|(i, u)| (u.as_slice(), i as u32)).collect();
    let dag_index: BTreeMap<&[NodeSet], u32> = dags.iter().enumerate().map(|(i, d)| (d.as_slice(), i as u32)).collect();
    let names = default_names(n);
    let ps = pairs(n);
    let total = 4usize.pow(ps.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut children = vec![NodeSet::EMPTY; n];
        let mut neighbors = vec![NodeSet::EMPTY; n];
        let mut c = code;
        for &(a, b) in &ps {
            match c % 4 {
                1 => children[a].insert(b),
                2 => children[b].insert(a),
                3 => {
                    neighbors[a].insert(b);
                    neighbors[b].insert(a);
                }
                _ => {}
            }
            c /= 4;
        }
        let Some(&d) = dag_index.get(children.as_slice()) else {
            continue;
        };
        let u = ug_index[neighbors.as_slice()];
        let g = Udag::from_parts_unchecked(names.clone(), NodeSet::full(n), children, neighbors);
        if g.is_lwf_chain_graph() {
            out.push((u, d));
        }
    }
    out.sort_unstable();
    out
}

/// Every graph of the class over `n` nodes, each exactly once, subject to the
/// class's node limit.
pub fn enumerate_graphs(n: usize, class: GraphClass) -> Result<impl Iterator<Item = Udag>, LearnError> {
    enumerate_graphs_with_limit(n, class, class_limit(class))
}

pub fn enumerate_graphs_with_limit(
    n: usize,
    class: GraphClass,
    max_nodes: usize,
) -> Result<impl Iterator<Item = Udag>, LearnError> {
    let space = SearchSpace::with_limit(n, class, max_nodes)?;
    let cands: Vec<Candidate> = space.candidates().collect();
    Ok(cands.into_iter().map(move |c| space.graph(c)))
}

/// Number of graphs in the class, without building them.
pub fn count_graphs(n: usize, class: GraphClass) -> Result<usize, LearnError> {
    Ok(SearchSpace::new(n, class)?.len())
}

/// A uniformly random graph of the class, by rejection sampling.
pub fn random_graph<R: Rng + ?Sized>(n: usize, class: GraphClass, rng: &mut R) -> Udag {
    let names = default_names(n);
    let ps = pairs(n);
    loop {
        let mut children = vec![NodeSet::EMPTY; n];
        let mut neighbors = vec![NodeSet::EMPTY; n];
        for &(a, b) in &ps {
            let states = if class == GraphClass::LwfCg { 4 } else { 3 };
            match rng.gen_range(0..states) {
                1 => children[a].insert(b),
                2 => children[b].insert(a),
                3 => {
                    neighbors[a].insert(b);
                    neighbors[b].insert(a);
                }
                _ => {}
            }
            if class == GraphClass::Udag && rng.gen::<bool>() {
                neighbors[a].insert(b);
                neighbors[b].insert(a);
            }
        }
        if !is_acyclic(&children) {
            continue;
        }
        let g = Udag::from_parts_unchecked(names.clone(), NodeSet::full(n), children, neighbors);
        if class != GraphClass::LwfCg || g.is_lwf_chain_graph() {
            return g;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerConfig {
    pub graph_class: GraphClass,
    pub line_weight: f64,
    pub arrow_weight: f64,
    pub return_all_optima: bool,
    /// Node limit; defaults to 5 for `udag` and 6 for the restricted classes.
    pub max_nodes: Option<usize>,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            graph_class: GraphClass::Udag,
            line_weight: 1.0,
            arrow_weight: 1.0,
            return_all_optima: false,
            max_nodes: None,
        }
    }
}

impl LearnerConfig {
    pub fn objective(&self, g: &Udag) -> f64 {
        self.line_weight * g.num_lines() as f64 + self.arrow_weight * g.num_arrows() as f64
    }

    fn validate(&self) -> Result<(), LearnError> {
        let ok = |w: f64| w.is_finite() && w >= 0.0;
        if ok(self.line_weight) && ok(self.arrow_weight) {
            Ok(())
        } else {
            Err(LearnError::InvalidWeight)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearnResult {
    /// The optimal graphs in tie-break order; a single graph unless all
    /// optima were requested.
    pub graphs: Vec<Udag>,
    pub objective: f64,
    /// Candidates in the levels up to and including the optimal one.
    pub graphs_searched: usize,
}

/// Candidates of one objective value, sorted by edge key.
#[derive(Debug, Clone)]
pub struct SearchLevel {
    pub objective: f64,
    pub candidates: Vec<Candidate>,
}

/// Runs the level-wise search. `find_first` returns the index of the first
/// candidate of a level that passes the check, `filter_all` the indices of
/// all of them; both may evaluate candidates in any order or in parallel as
/// long as they report indices in level order.
pub fn learn_with<F, A>(
    oracle: &IndependenceOracle,
    config: &LearnerConfig,
    find_first: F,
    filter_all: A,
) -> Result<LearnResult, LearnError>
where
    F: Fn(&[Candidate], &(dyn Fn(Candidate) -> bool + Sync)) -> Option<usize>,
    A: Fn(&[Candidate], &(dyn Fn(Candidate) -> bool + Sync)) -> Vec<usize>,
{
    config.validate()?;
    let max = config.max_nodes.unwrap_or(class_limit(config.graph_class));
    let space = SearchSpace::with_limit(oracle.n, config.graph_class, max)?;
    let checker = ConsistencyChecker::new(oracle);
    let passes = |c: Candidate| checker.check(&space.graph(c));
    let mut searched = 0;
    for level in space.levels(config) {
        searched += level.candidates.len();
        let hits: Vec<usize> = if config.return_all_optima {
            filter_all(&level.candidates, &passes)
        } else {
            find_first(&level.candidates, &passes).into_iter().collect()
        };
        if !hits.is_empty() {
            return Ok(LearnResult {
                graphs: hits.iter().map(|&i| space.graph(level.candidates[i])).collect(),
                objective: level.objective,
                graphs_searched: searched,
            });
        }
    }
    Err(LearnError::NoConsistentGraph)
}

/// Sequential exhaustive search.
pub fn learn(oracle: &IndependenceOracle, config: &LearnerConfig) -> Result<LearnResult, LearnError> {
    learn_with(
        oracle,
        config,
        |cs, pass| cs.iter().position(|&c| pass(c)),
        |cs, pass| (0..cs.len()).filter(|&i| pass(cs[i])).collect(),
    )
}
