//! Machine-stable JSON shapes for command output. Node sets are arrays of
//! names in node order; graphs are embedded in the text format.

use serde::Serialize;
use udag_core::{
    ComponentFactorizationReport, Decomposition, FactorizationReport, GibbsTrace, IdentityDeviation, LearnResult,
    MarkovReport, ReachState, ScoredGraph, Ug,
};

use crate::text::{node_names as names_of, write_graph};

#[derive(Serialize)]
pub struct Separation {
    pub separated: bool,
}

#[derive(Serialize)]
pub struct Reach {
    #[serde(rename = "U1")]
    pub u1: Vec<String>,
    #[serde(rename = "U2")]
    pub u2: Vec<String>,
    #[serde(rename = "U3")]
    pub u3: Vec<String>,
    pub separated: bool,
}

impl Reach {
    pub fn new(names: &[String], separated: bool, s: &ReachState) -> Self {
        Reach {
            u1: names_of(names, s.u1),
            u2: names_of(names, s.u2),
            u3: names_of(names, s.u3),
            separated,
        }
    }
}

#[derive(Serialize)]
pub struct Violation {
    pub statement: String,
    pub deviation: f64,
}

#[derive(Serialize)]
pub struct Markov {
    pub property: &'static str,
    pub holds: bool,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl From<&MarkovReport> for Markov {
    fn from(r: &MarkovReport) -> Self {
        Markov {
            property: r.property.as_str(),
            holds: r.holds,
            checked: r.checked,
            violations: r
                .violations
                .iter()
                .map(|v| Violation {
                    statement: v.rendered.clone(),
                    deviation: v.deviation,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct UgJson {
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl UgJson {
    pub fn new(h: &Ug) -> Self {
        let names = h.names();
        UgJson {
            nodes: names_of(names, h.nodes()),
            edges: h
                .edges()
                .into_iter()
                .map(|(a, b)| [names[a].clone(), names[b].clone()])
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Component {
    pub minimal_ancestral_set: Vec<String>,
    pub component: Vec<String>,
    pub boundary: Vec<String>,
    pub star_graph: UgJson,
}

pub fn decomposition(names: &[String], d: &Decomposition) -> Vec<Component> {
    (0..d.len())
        .map(|i| Component {
            minimal_ancestral_set: names_of(names, d.minimal_ancestral_sets[i]),
            component: names_of(names, d.components[i]),
            boundary: names_of(names, d.boundaries[i]),
            star_graph: UgJson::new(&d.star_graphs[i]),
        })
        .collect()
}

#[derive(Serialize)]
pub struct Factorization {
    pub holds: bool,
    pub checked: Vec<Vec<String>>,
    pub witness: Option<Witness>,
    pub chain_deviation: f64,
    pub component_deviations: Vec<f64>,
}

#[derive(Serialize)]
pub struct Witness {
    pub set: Vec<String>,
    pub deviation: f64,
}

impl Factorization {
    pub fn new(names: &[String], anc: &FactorizationReport, comp: &ComponentFactorizationReport) -> Self {
        Factorization {
            holds: anc.holds,
            checked: anc.checked.iter().map(|&w| names_of(names, w)).collect(),
            witness: anc.witness.map(|(w, deviation)| Witness {
                set: names_of(names, w),
                deviation,
            }),
            chain_deviation: comp.chain_deviation,
            component_deviations: comp.component_deviations.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct Learned {
    pub objective: f64,
    pub graphs_searched: usize,
    pub graphs: Vec<String>,
}

impl From<&LearnResult> for Learned {
    fn from(r: &LearnResult) -> Self {
        Learned {
            objective: r.objective,
            graphs_searched: r.graphs_searched,
            graphs: r.graphs.iter().map(write_graph).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Scored {
    pub graph: String,
    pub p_value: f64,
    pub statistic: f64,
}

impl From<&ScoredGraph> for Scored {
    fn from(s: &ScoredGraph) -> Self {
        Scored {
            graph: write_graph(&s.graph),
            p_value: s.p_value,
            statistic: s.statistic,
        }
    }
}

#[derive(Serialize)]
pub struct CausalSearch {
    pub best: Scored,
    pub candidates: Vec<Scored>,
}

#[derive(Serialize)]
pub struct Boundary {
    pub boundary: Vec<usize>,
    pub empirical: Vec<f64>,
    pub exact: Vec<f64>,
    pub total_variation: f64,
}

#[derive(Serialize)]
pub struct Gibbs {
    pub component: Vec<String>,
    pub boundary_nodes: Vec<String>,
    pub sweeps: usize,
    pub burn_in: usize,
    pub max_total_variation: f64,
    pub per_boundary: Vec<Boundary>,
}

impl Gibbs {
    pub fn new(names: &[String], d: &Decomposition, t: &GibbsTrace) -> Self {
        Gibbs {
            component: names_of(names, d.components[t.component]),
            boundary_nodes: names_of(names, d.boundaries[t.component]),
            sweeps: t.sweeps,
            burn_in: t.burn_in,
            max_total_variation: t.max_total_variation(),
            per_boundary: t
                .per_boundary
                .iter()
                .map(|b| Boundary {
                    boundary: b.boundary.clone(),
                    empirical: b.empirical.clone(),
                    exact: b.exact.clone(),
                    total_variation: b.total_variation,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Identity {
    pub component: usize,
    pub node: String,
    pub deviation: f64,
}

impl Identity {
    pub fn new(names: &[String], d: &IdentityDeviation) -> Self {
        Identity {
            component: d.component,
            node: names[d.node].clone(),
            deviation: d.deviation,
        }
    }
}
