//! Graphs that unify DAGs and undirected graphs: they may mix directed and
//! undirected edges, carry up to one edge of each kind per node pair, and
//! forbid only directed cycles.
//!
//! The crate is `no_std` and needs only `alloc`. It covers
//!
//! * graph construction, relational closures, moralization, marginal
//!   subgraphs, cliques and the ordering into components ([`graph`],
//!   [`cliques`], [`decompose`]);
//! * both separation criteria, inseparable pairs, the equivalence preserving
//!   moralization of minimal ancestral sets and Markov equivalence
//!   ([`separation`]);
//! * explicit discrete distributions with exact conditional independence,
//!   random Markovian fixtures and the component Gibbs sampler
//!   ([`distribution`], [`fixture`], [`gibbs`]);
//! * local, pairwise and global Markov checks, maximal ancestral sets and
//!   the two factorization checks ([`markov`], [`factorization`]);
//! * an exhaustive constraint-based learner ([`learn`]) and an
//!   additive-noise learner scored by kernel independence tests ([`anm`]).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod anm;
pub mod cliques;
pub mod decompose;
pub mod distribution;
pub mod factorization;
pub mod fixture;
pub mod gallery;
pub mod gibbs;
pub mod graph;
pub mod hsic;
pub mod learn;
pub mod markov;
pub mod nodeset;
pub mod separation;
pub mod special;

pub use anm::{
    learn_causal, regress_residuals, score_udag, AnmConfig, AnmError, CausalSearch, Dataset, KernelRidge, Regressor,
    ScoredGraph,
};
pub use cliques::cliques;
pub use decompose::{decompose, Decomposition};
pub use distribution::{DiscreteDistribution, DistributionError, Variable, CI_TOLERANCE};
pub use factorization::{
    check_causal_identity, factorizes_ancestral, factorizes_components, ComponentFactorizationReport,
    FactorizationReport, IdentityDeviation,
};
pub use fixture::{sample_markov_fixture, sample_markov_fixture_with_cards, FixtureError, MarkovFixture, Strictness};
pub use gibbs::{gibbs_run, BoundaryTrace, GibbsTrace};
pub use graph::{GraphError, Udag, Ug};
pub use hsic::{hsic_joint_pvalue, hsic_joint_test, HsicMethod, HsicOutcome};
pub use learn::{
    consistent, count_graphs, enumerate_graphs, learn, oracle_from_distribution, oracle_from_graph, GraphClass,
    IndependenceOracle, LearnError, LearnResult, LearnerConfig,
};
pub use markov::{
    ancestral_sets, maximal_ancestral_sets_fact, maximal_ancestral_sets_for_node, satisfies_global, satisfies_local,
    satisfies_pairwise, CheckError, MarkovProperty, MarkovReport, Statement, Violation,
};
pub use nodeset::{NodeId, NodeSet, MAX_NODES};
pub use separation::{
    markov_equivalent, moralize_minimal_ancestral, non_separable_pairs, separated_moral, separated_reach, ReachState,
    SeparationError, SeparationQuery,
};
