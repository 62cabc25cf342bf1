//! Random strictly positive distributions shaped by a graph.
//!
//! Each component `C_i` of the decomposition gets random log-potentials,
//! uniform on `[-1, 1]`, on the cliques of its star graph. The potentials are
//! normalized over `C_i` for every boundary configuration and the
//! conditionals `p(C_i | bd(C_i))` are multiplied together. For chain graphs,
//! and in particular for DAGs and undirected graphs, the result satisfies the
//! global Markov property. For other UDAGs no such guarantee is known.
//!
//! Randomness comes from ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`],
//! so fixtures are identical across platforms.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cliques::cliques;
use crate::decompose::decompose;
use crate::distribution::{DiscreteDistribution, DistributionError, Table, Variable};
use crate::graph::Udag;
use crate::nodeset::NodeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Only DAGs and undirected graphs; the output is guaranteed Markov.
    DagOrUgExact,
    /// Any UDAG; the output has the component-chain form but may not be Markov.
    ComponentForm,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FixtureError {
    #[error("exact fixtures need a DAG or an undirected graph")]
    UnsupportedStrictness,
    #[error("graph must range over its full node set")]
    PartialVertexSet,
    #[error("expected {expected} cardinalities, got {got}")]
    CardinalityCount { expected: usize, got: usize },
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovFixture {
    pub distribution: DiscreteDistribution,
    /// True when the graph is a chain graph, for which the construction is
    /// known to satisfy the global Markov property.
    pub markov_guaranteed: bool,
}

/// Binary fixture.
pub fn sample_markov_fixture(g: &Udag, seed: u64, strictness: Strictness) -> Result<MarkovFixture, FixtureError> {
    sample_markov_fixture_with_cards(g, &vec![2; g.n()], seed, strictness)
}

pub fn sample_markov_fixture_with_cards(
    g: &Udag,
    cards: &[usize],
    seed: u64,
    strictness: Strictness,
) -> Result<MarkovFixture, FixtureError> {
    if g.nodes() != NodeSet::full(g.n()) {
        return Err(FixtureError::PartialVertexSet);
    }
    if cards.len() != g.n() {
        return Err(FixtureError::CardinalityCount {
            expected: g.n(),
            got: cards.len(),
        });
    }
    if strictness == Strictness::DagOrUgExact && !(g.is_dag() || g.is_ug()) {
        return Err(FixtureError::UnsupportedStrictness);
    }
    let vars: Vec<Variable> = g
        .names()
        .iter()
        .zip(cards)
        .map(|(name, &card)| Variable::new(name.to_string(), card))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dec = decompose(g);

    let mut conditionals = Vec::with_capacity(dec.len());
    for i in 0..dec.len() {
        let (c, bd) = (dec.components[i], dec.boundaries[i]);
        conditionals.push(component_conditional(&dec.star_graphs[i], c, bd, cards, &mut rng));
    }

    let size: usize = cards.iter().product();
    let mut table = vec![1.0; size];
    let all_vars: Vec<usize> = (0..g.n()).collect();
    for cond in &conditionals {
        let map = Table {
            vars: all_vars.clone(),
            cards: cards.to_vec(),
            probs: Vec::new(),
        }
        .index_map(cond.var_set());
        for (p, &j) in table.iter_mut().zip(&map) {
            *p *= cond.probs[j];
        }
    }
    let distribution = DiscreteDistribution::from_weights(vars, table)?;
    Ok(MarkovFixture {
        distribution,
        markov_guaranteed: g.is_lwf_chain_graph(),
    })
}

/// `p(C | bd)` as a table over `C ∪ bd`, built from random clique potentials.
fn component_conditional(
    star: &crate::graph::Ug,
    c: NodeSet,
    bd: NodeSet,
    cards: &[usize],
    rng: &mut ChaCha8Rng,
) -> Table {
    let scope = c | bd;
    let vars: Vec<usize> = scope.iter().collect();
    let local_cards: Vec<usize> = vars.iter().map(|&v| cards[v]).collect();
    let size: usize = local_cards.iter().product();
    let mut log_f = vec![0.0f64; size];
    let frame = Table {
        vars: vars.clone(),
        cards: local_cards.clone(),
        probs: Vec::new(),
    };
    for k in cliques(star) {
        let kcards: usize = k.iter().map(|v| cards[v]).product();
        let pot: Vec<f64> = (0..kcards).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let map = frame.index_map(k);
        for (lf, &j) in log_f.iter_mut().zip(&map) {
            *lf += pot[j];
        }
    }
    let mut probs: Vec<f64> = log_f.iter().map(|&l| libm::exp(l)).collect();
    // Normalize over C for each boundary configuration.
    let bmap = frame.index_map(bd);
    let bsize: usize = bd.iter().map(|v| cards[v]).product();
    let mut z = vec![0.0; bsize];
    for (p, &j) in probs.iter().zip(&bmap) {
        z[j] += p;
    }
    for (p, &j) in probs.iter_mut().zip(&bmap) {
        *p /= z[j];
    }
    Table {
        vars,
        cards: local_cards,
        probs,
    }
}
