mod common;

use common::*;
use udag_core::learn::random_graph;
use udag_core::separation::separation_model;
use udag_core::{
    consistent, count_graphs, enumerate_graphs, learn, markov_equivalent, oracle_from_distribution, oracle_from_graph,
    sample_markov_fixture, GraphClass, LearnerConfig, Strictness, Udag, CI_TOLERANCE,
};

/// An arrow `a -> b` closes a semi-directed cycle when `a` can be reached
/// back from `b` along arrows and lines.
fn has_semi_directed_cycle(g: &Udag) -> bool {
    g.directed_edges().into_iter().any(|(a, b)| {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![b];
        while let Some(v) = stack.pop() {
            if v == a {
                return true;
            }
            for w in (g.children_of(v) | g.neighbors_of(v)).iter() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    })
}

#[test]
fn enumeration_yields_each_graph_once() {
    for (n, class) in [(3, GraphClass::Udag), (4, GraphClass::Dag), (4, GraphClass::LwfCg)] {
        let keys: std::collections::BTreeSet<_> = enumerate_graphs(n, class).unwrap().map(|g| g.edge_key()).collect();
        assert_eq!(keys.len(), count_graphs(n, class).unwrap());
    }
}

#[test]
fn chain_graph_class_is_exactly_the_single_edge_graphs_without_semi_directed_cycles() {
    let lwf: Vec<Udag> = enumerate_graphs(4, GraphClass::LwfCg).unwrap().collect();
    for g in &lwf {
        assert!(!has_semi_directed_cycle(g));
        assert!(g.directed_edges().iter().all(|&(a, b)| !g.has_line(a, b)));
    }
    // And no qualifying UDAG is missing.
    let expected = enumerate_graphs(4, GraphClass::Udag)
        .unwrap()
        .filter(|g| !has_semi_directed_cycle(g) && g.directed_edges().iter().all(|&(a, b)| !g.has_line(a, b)))
        .count();
    assert_eq!(lwf.len(), expected);
}

#[test]
fn round_trip_on_random_four_node_graphs() {
    let config = LearnerConfig::default();
    for seed in 0..25 {
        let g = random_graph(4, GraphClass::Udag, &mut rng(seed));
        let oracle = oracle_from_graph(&g).unwrap();
        let r = learn(&oracle, &config).unwrap();
        let h = &r.graphs[0];
        assert!(consistent(h, &oracle).unwrap());
        assert!(r.objective <= g.num_edges() as f64);
        // Every separation of the answer is a separation of the generator.
        let mine = separation_model(h);
        let theirs = separation_model(&g);
        assert!(mine.iter().all(|t| theirs.contains(t)));
        // Deterministic.
        assert_eq!(learn(&oracle, &config).unwrap(), r);
    }
}

#[test]
fn dag_generators_are_recovered_up_to_equivalence() {
    let config = LearnerConfig {
        graph_class: GraphClass::Dag,
        ..LearnerConfig::default()
    };
    for seed in 0..25 {
        let g = random_graph(4, GraphClass::Dag, &mut rng(seed));
        let r = learn(&oracle_from_graph(&g).unwrap(), &config).unwrap();
        assert_eq!(r.objective, g.num_edges() as f64);
        assert!(
            markov_equivalent(&r.graphs[0], &g).unwrap(),
            "{g:?} vs {:?}",
            r.graphs[0]
        );
    }
}

#[test]
fn all_optima_share_the_objective() {
    let g = udag_core::gallery::labeled("ABC", &["A->B", "B->C"]);
    let oracle = oracle_from_graph(&g).unwrap();
    let config = LearnerConfig {
        return_all_optima: true,
        ..LearnerConfig::default()
    };
    let r = learn(&oracle, &config).unwrap();
    assert!(r.graphs.len() > 1);
    let first = learn(&oracle, &LearnerConfig::default()).unwrap();
    assert_eq!(r.graphs[0], first.graphs[0]);
    for h in &r.graphs {
        assert_eq!(config.objective(h), r.objective);
        assert!(consistent(h, &oracle).unwrap());
        assert!(markov_equivalent(h, &g).unwrap());
    }
    let keys: Vec<_> = r.graphs.iter().map(|h| h.edge_key()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn distribution_oracle_contains_the_graph_oracle() {
    for seed in 0..15 {
        let g = random_dag_or_ug(&mut rng(seed), 4, seed % 2 == 0);
        let p = sample_markov_fixture(&g, seed, Strictness::DagOrUgExact)
            .unwrap()
            .distribution;
        let from_p = oracle_from_distribution(&p, CI_TOLERANCE).unwrap();
        let from_g = oracle_from_graph(&g).unwrap();
        assert!(from_g.triplets().all(|(a, b, z)| from_p.contains(a, b, z)));
        // The generator is always an admissible answer.
        assert!(consistent(&g, &from_p).unwrap());
    }
}
