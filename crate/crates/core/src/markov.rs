//! Markov properties of a distribution with respect to a UDAG.
//!
//! The local and pairwise properties quantify over ancestral sets `W` and
//! the moral graph of `G_W`; the global property over separations. Ancestral
//! sets are enumerated exhaustively, so these checks are limited to
//! [`MAX_ENUMERATION_NODES`] nodes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::distribution::DiscreteDistribution;
use crate::graph::Udag;
use crate::nodeset::{NodeId, NodeSet};
use crate::separation::{elementary_triplets, moral_separated};

/// Largest graph for which ancestral sets are enumerated.
pub const MAX_ENUMERATION_NODES: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckError {
    #[error("distribution variables do not match the graph nodes")]
    VariableMismatch,
    #[error("distribution is not strictly positive")]
    NonPositiveDistribution,
    #[error("graph has {0} nodes, at most 12 are supported here")]
    TooLarge(usize),
    #[error("component index {0} out of range")]
    ComponentOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkovProperty {
    Global,
    Local,
    Pairwise,
}

impl MarkovProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            MarkovProperty::Global => "global",
            MarkovProperty::Local => "local",
            MarkovProperty::Pairwise => "pairwise",
        }
    }
}

/// One independence statement `X ⊥ Y | Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Statement {
    pub x: NodeSet,
    pub y: NodeSet,
    pub z: NodeSet,
}

impl Statement {
    pub fn new(x: NodeSet, y: NodeSet, z: NodeSet) -> Self {
        Statement { x, y, z }
    }

    /// `A _||_ B,C | D`, or `A _||_ B` when the conditioning set is empty.
    pub fn render(&self, names: &[String]) -> String {
        let mut s = join_names(names, self.x);
        s.push_str(" _||_ ");
        s.push_str(&join_names(names, self.y));
        if !self.z.is_empty() {
            s.push_str(" | ");
            s.push_str(&join_names(names, self.z));
        }
        s
    }

    fn key(&self) -> (u64, u64, u64) {
        (self.x.bits(), self.y.bits(), self.z.bits())
    }
}

pub fn join_names(names: &[String], s: NodeSet) -> String {
    let mut out = String::new();
    for (i, v) in s.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&names[v]);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub statement: Statement,
    pub rendered: String,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovReport {
    pub property: MarkovProperty,
    pub holds: bool,
    /// Statements checked, after removing duplicates.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

pub(crate) fn check_variables(p: &DiscreteDistribution, g: &Udag) -> Result<(), CheckError> {
    if p.n_vars() != g.n()
        || g.nodes() != NodeSet::full(g.n())
        || p.variables().iter().zip(g.names()).any(|(v, n)| v.name != *n)
    {
        return Err(CheckError::VariableMismatch);
    }
    Ok(())
}

pub(crate) fn check_positive(p: &DiscreteDistribution) -> Result<(), CheckError> {
    if p.is_strictly_positive() {
        Ok(())
    } else {
        Err(CheckError::NonPositiveDistribution)
    }
}

/// Every non-empty ancestral set of `g`, in increasing bit order.
pub fn ancestral_sets(g: &Udag) -> Result<Vec<NodeSet>, CheckError> {
    if g.n() > MAX_ENUMERATION_NODES {
        return Err(CheckError::TooLarge(g.n()));
    }
    Ok(g.nodes()
        .subsets()
        .filter(|w| !w.is_empty() && g.is_ancestral_set(*w))
        .collect())
}

/// Statements of the local property: for every ancestral `W` and `A ∈ W`,
/// `A ⊥ W \ (A ∪ ne(A)) | ne(A)` with neighbours taken in `(G_W)^m`.
/// Vacuous statements (empty right-hand side) are omitted.
pub fn local_statements(g: &Udag) -> Result<Vec<Statement>, CheckError> {
    let mut out = BTreeMap::new();
    for w in ancestral_sets(g)? {
        let m = g.induced_subgraph(w).moral_graph();
        for a in w.iter() {
            let ne = m.neighbors_of(a);
            let rest = w - ne - NodeSet::singleton(a);
            if !rest.is_empty() {
                let s = Statement::new(NodeSet::singleton(a), rest, ne);
                out.insert(s.key(), s);
            }
        }
    }
    Ok(out.into_values().collect())
}

/// Statements of the pairwise property: `A ⊥ B | W \ {A, B}` for every
/// ancestral `W` and every pair non-adjacent in `(G_W)^m`, with `A < B`.
pub fn pairwise_statements(g: &Udag) -> Result<Vec<Statement>, CheckError> {
    let mut out = BTreeMap::new();
    for w in ancestral_sets(g)? {
        let m = g.induced_subgraph(w).moral_graph();
        for a in w.iter() {
            for b in (w - m.neighbors_of(a)).iter().filter(|&b| b > a) {
                let s = Statement::new(NodeSet::singleton(a), NodeSet::singleton(b), w.without(a).without(b));
                out.insert(s.key(), s);
            }
        }
    }
    Ok(out.into_values().collect())
}

/// Elementary separations of `g`, which determine the whole separation model.
pub fn global_statements(g: &Udag) -> Vec<Statement> {
    elementary_triplets(g.nodes())
        .into_iter()
        .filter(|&(a, b, z)| moral_separated(g, NodeSet::singleton(a), NodeSet::singleton(b), z))
        .map(|(a, b, z)| Statement::new(NodeSet::singleton(a), NodeSet::singleton(b), z))
        .collect()
}

fn evaluate(
    p: &DiscreteDistribution,
    g: &Udag,
    property: MarkovProperty,
    statements: Vec<Statement>,
    tol: f64,
) -> MarkovReport {
    let checked = statements.len();
    let violations: Vec<Violation> = statements
        .into_iter()
        .filter_map(|s| {
            let deviation = p.ci_deviation(s.x, s.y, s.z);
            (deviation > tol).then(|| Violation {
                rendered: s.render(g.names()),
                statement: s,
                deviation,
            })
        })
        .collect();
    MarkovReport {
        property,
        holds: violations.is_empty(),
        checked,
        violations,
    }
}

/// Every separation of `g` holds in `p`. Positivity is not required.
pub fn satisfies_global(p: &DiscreteDistribution, g: &Udag, tol: f64) -> Result<MarkovReport, CheckError> {
    check_variables(p, g)?;
    Ok(evaluate(p, g, MarkovProperty::Global, global_statements(g), tol))
}

pub fn satisfies_local(p: &DiscreteDistribution, g: &Udag, tol: f64) -> Result<MarkovReport, CheckError> {
    check_variables(p, g)?;
    check_positive(p)?;
    Ok(evaluate(p, g, MarkovProperty::Local, local_statements(g)?, tol))
}

pub fn satisfies_pairwise(p: &DiscreteDistribution, g: &Udag, tol: f64) -> Result<MarkovReport, CheckError> {
    check_variables(p, g)?;
    check_positive(p)?;
    Ok(evaluate(p, g, MarkovProperty::Pairwise, pairwise_statements(g)?, tol))
}

/// Ancestral sets that are maximal for `a`: no ancestral proper superset
/// leaves the moral neighbourhood of `a` unchanged.
///
/// Such a set `W` is characterized by `W = V \ de(ch(a) \ W)`: everything left
/// out must descend from a child of `a` that is itself left out, since adding
/// that child is what enlarges the neighbourhood.
pub fn maximal_ancestral_sets_for_node(g: &Udag, a: NodeId) -> Result<Vec<NodeSet>, CheckError> {
    let ch = g.children_of(a);
    Ok(ancestral_sets(g)?
        .into_iter()
        .filter(|&w| w.contains(a) && g.nodes() - w == g.de(ch - w))
        .collect())
}

/// Ancestral sets that are maximal for the factorization: every ancestral
/// proper superset adds an edge to the marginal of its moral graph over `W`.
///
/// Characterized by `pa(an(A) \ W) ∩ W` being incomplete in `(G_W)^m` for
/// every `A ∉ W`.
pub fn maximal_ancestral_sets_fact(g: &Udag) -> Result<Vec<NodeSet>, CheckError> {
    let v = g.nodes();
    Ok(ancestral_sets(g)?
        .into_iter()
        .filter(|&w| {
            let m = g.induced_subgraph(w).moral_graph();
            (v - w).iter().all(|a| {
                let outside = g.an(NodeSet::singleton(a)) - w;
                !m.is_complete(g.pa(outside) & w)
            })
        })
        .collect())
}
