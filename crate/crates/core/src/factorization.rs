//! Factorization checks for strictly positive distributions.
//!
//! A positive distribution factorizes over the cliques of an undirected graph
//! exactly when it satisfies the pairwise Markov property of that graph, so
//! each clique factorization is checked through the statements
//! `a ⊥ b | rest` for the graph's non-edges.

use alloc::vec::Vec;

use crate::decompose::decompose;
use crate::distribution::{DiscreteDistribution, ZERO_EVENT};
use crate::graph::{Udag, Ug};
use crate::markov::{ancestral_sets, check_positive, check_variables, maximal_ancestral_sets_fact, CheckError};
use crate::nodeset::{NodeId, NodeSet};

/// Worst violation of the pairwise Markov property of `h` by the marginal of
/// `p` over `h`'s vertex set.
pub fn ug_factorization_deviation(p: &DiscreteDistribution, h: &Ug) -> f64 {
    let w = h.nodes();
    let mut worst: f64 = 0.0;
    for a in w.iter() {
        for b in (w - h.neighbors_of(a)).iter().filter(|&b| b > a) {
            let d = p.ci_deviation(NodeSet::singleton(a), NodeSet::singleton(b), w.without(a).without(b));
            worst = worst.max(d);
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport {
    pub holds: bool,
    /// Ancestral sets that were checked.
    pub checked: Vec<NodeSet>,
    /// First ancestral set whose marginal does not factorize, with its deviation.
    pub witness: Option<(NodeSet, f64)>,
}

/// `p(W)` factorizes over the cliques of `(G_W)^m` for every ancestral `W`,
/// or only for the maximal ones when `only_maximal` is set (the others follow
/// by marginalization).
pub fn factorizes_ancestral(
    p: &DiscreteDistribution,
    g: &Udag,
    tol: f64,
    only_maximal: bool,
) -> Result<FactorizationReport, CheckError> {
    check_variables(p, g)?;
    check_positive(p)?;
    let sets = if only_maximal {
        maximal_ancestral_sets_fact(g)?
    } else {
        ancestral_sets(g)?
    };
    let mut witness = None;
    for &w in &sets {
        let d = ug_factorization_deviation(p, &g.induced_subgraph(w).moral_graph());
        if d > tol {
            witness = Some((w, d));
            break;
        }
    }
    Ok(FactorizationReport {
        holds: witness.is_none(),
        checked: sets,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentFactorizationReport {
    pub holds: bool,
    /// `max |p(V) - ∏ p(C_i | bd(C_i))|`.
    pub chain_deviation: f64,
    /// Per component, the worst pairwise-Markov violation of `p(C_i ∪ bd(C_i))`
    /// with respect to its star graph.
    pub component_deviations: Vec<f64>,
}

/// `p(V) = ∏ p(C_i | bd(C_i))` and each `p(C_i | bd(C_i))` factorizes over the
/// cliques of the star graph. This is necessary, not sufficient, for the
/// Markov properties.
pub fn factorizes_components(
    p: &DiscreteDistribution,
    g: &Udag,
    tol: f64,
) -> Result<ComponentFactorizationReport, CheckError> {
    check_variables(p, g)?;
    check_positive(p)?;
    let dec = decompose(g);
    let chain_deviation = chain_deviation(p, &dec.components, &dec.boundaries);
    let component_deviations: Vec<f64> = dec
        .star_graphs
        .iter()
        .map(|h| ug_factorization_deviation(p, h))
        .collect();
    let holds = chain_deviation <= tol && component_deviations.iter().all(|&d| d <= tol);
    Ok(ComponentFactorizationReport {
        holds,
        chain_deviation,
        component_deviations,
    })
}

/// `max |p(V) - ∏_i p(C_i | B_i)|` for the given components and boundaries.
pub fn chain_deviation(p: &DiscreteDistribution, components: &[NodeSet], boundaries: &[NodeSet]) -> f64 {
    let all = p.all_vars();
    let full = p.marginal_table(all);
    let mut product = alloc::vec![1.0; full.probs.len()];
    for (&c, &bd) in components.iter().zip(boundaries) {
        let joint = p.marginal_table(c | bd);
        let boundary = p.marginal_table(bd);
        let mj = full.index_map(c | bd);
        let mb = full.index_map(bd);
        for (i, q) in product.iter_mut().enumerate() {
            let b = boundary.probs[mb[i]];
            *q *= if b <= ZERO_EVENT { 0.0 } else { joint.probs[mj[i]] / b };
        }
    }
    full.probs
        .iter()
        .zip(&product)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityDeviation {
    pub component: usize,
    pub node: NodeId,
    /// `max |p(A | bd, C \ A) - p(A | bd, pa(A), ne(A))|`.
    pub deviation: f64,
}

/// Measures, for every component `C_i` and `A ∈ C_i`, how far the Gibbs update
/// `p(A | bd(C_i), C_i \ A)` is from `p(A | bd(C_i), pa(A), ne(A))`.
/// The identity is an interpretive assumption, so nothing is asserted.
pub fn check_causal_identity(p: &DiscreteDistribution, g: &Udag) -> Result<Vec<IdentityDeviation>, CheckError> {
    check_variables(p, g)?;
    check_positive(p)?;
    let dec = decompose(g);
    let mut out = Vec::new();
    for (i, (&c, &bd)) in dec.components.iter().zip(&dec.boundaries).enumerate() {
        for a in c.iter() {
            let me = NodeSet::singleton(a);
            let big = (bd | c) - me;
            let small = (bd | g.pa(me) | g.ne(me)) - me;
            out.push(IdentityDeviation {
                component: i,
                node: a,
                deviation: p.conditional_deviation(a, big, small),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::Variable;
    use crate::fixture::{sample_markov_fixture, Strictness};
    use crate::gallery::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn set(g: &Udag, names: &str) -> NodeSet {
        names.chars().map(|c| g.index_of(&c.to_string()).unwrap()).collect()
    }

    #[test]
    fn inseparable_example_chain_equality() {
        let g = inseparable_non_adjacent();
        let p = sample_markov_fixture(&g, 5, Strictness::ComponentForm)
            .unwrap()
            .distribution;
        let comps = [set(&g, "A"), set(&g, "B"), set(&g, "D"), set(&g, "CEFH")];
        let bds = [NodeSet::EMPTY, NodeSet::EMPTY, set(&g, "B"), set(&g, "AD")];
        assert!(chain_deviation(&p, &comps, &bds) < 1e-12);
        let r = factorizes_components(&p, &g, 1e-9).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn undirected_fixture_factorizes_everywhere() {
        let g = labeled("ABCD", &["A-B", "B-C", "C-D", "D-A"]);
        let p = sample_markov_fixture(&g, 2, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        assert!(factorizes_ancestral(&p, &g, 1e-9, false).unwrap().holds);
        assert!(factorizes_ancestral(&p, &g, 1e-9, true).unwrap().holds);
    }

    #[test]
    fn dag_fixture_factorizes_on_every_ancestral_set() {
        let g = labeled("ABCD", &["A->C", "B->C", "C->D"]);
        let p = sample_markov_fixture(&g, 9, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        let r = factorizes_ancestral(&p, &g, 1e-9, false).unwrap();
        assert!(r.holds);
        assert_eq!(r.checked.len(), ancestral_sets(&g).unwrap().len());
    }

    #[test]
    fn dependent_pair_fails_with_witness() {
        let g = labeled("ABC", &["A->C", "B->C"]);
        let vars = g.names().iter().map(|n| Variable::new(n.clone(), 2)).collect();
        // A and B correlated, C depends on both.
        let p = DiscreteDistribution::from_weights(vars, vec![4.0, 1.0, 2.0, 2.0, 1.0, 3.0, 1.0, 5.0]).unwrap();
        let r = factorizes_ancestral(&p, &g, 1e-9, false).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().0, set(&g, "AB"));
    }

    #[test]
    fn chain_graph_identity_holds() {
        let g = labeled("ABCD", &["A->B", "B-C", "C-D"]);
        let p = sample_markov_fixture(&g, 4, Strictness::ComponentForm)
            .unwrap()
            .distribution;
        for d in check_causal_identity(&p, &g).unwrap() {
            assert!(d.deviation < 1e-9, "{d:?}");
        }
    }

    #[test]
    fn edgeless_independent_identity_is_zero() {
        let g = Udag::empty(3).unwrap();
        let p = sample_markov_fixture(&g, 1, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        assert!(check_causal_identity(&p, &g)
            .unwrap()
            .iter()
            .all(|d| d.deviation < 1e-12));
        assert!(factorizes_components(&p, &g, 1e-9).unwrap().holds);
    }
}
