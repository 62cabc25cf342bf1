//! Small named graphs that exhibit the characteristic behaviours of UDAGs.
//! Used throughout the tests and handy for experimentation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::graph::Udag;

/// Builds a graph from `"A->C"` / `"E-F"` edge strings over the given labels.
pub fn labeled(labels: &str, edges: &[&str]) -> Udag {
    let names: Vec<String> = labels.chars().map(|c| c.to_string()).collect();
    let idx = |s: &str| {
        names
            .iter()
            .position(|n| n == s.trim())
            .unwrap_or_else(|| panic!("unknown label {s}"))
    };
    let mut directed = Vec::new();
    let mut undirected = Vec::new();
    for e in edges {
        if let Some((a, b)) = e.split_once("->") {
            directed.push((idx(a), idx(b)));
        } else if let Some((a, b)) = e.split_once("<-") {
            directed.push((idx(b), idx(a)));
        } else if let Some((a, b)) = e.split_once('-') {
            undirected.push((idx(a), idx(b)));
        } else {
            panic!("bad edge {e}");
        }
    }
    Udag::with_names(names, &directed, &undirected).expect("gallery graph is valid")
}

/// `C` and `D` are non-adjacent yet no conditioning set separates them:
/// `A->C, B->D, C->E, D->H, E-F, H-F, F->C`.
pub fn inseparable_non_adjacent() -> Udag {
    labeled("ABCDEFH", &["A->C", "B->D", "C->E", "D->H", "E-F", "H-F", "F->C"])
}

/// A twelve-node UDAG whose independence model no LWF chain graph represents.
pub fn no_chain_graph_equivalent() -> Udag {
    labeled(
        "ABCDEFIJKLMN",
        &[
            "A->E", "B->E", "C->F", "D->F", "E-F", "I-J", "E->I", "J->F", "K->I", "L->I", "M->J", "N->J",
        ],
    )
}

/// Graph where several ancestral sets give node `B` the same moral
/// neighbourhood, so only some of them are needed for the local property.
pub fn local_reduction() -> Udag {
    labeled(
        "ABCDEFHIJK",
        &["B->A", "B->C", "B->H", "D->E", "D->K", "C->I", "I-J", "J-K", "F-H"],
    )
}

/// Graph where the factorization over `{A,B,C,D,E}` follows from the one
/// over the whole graph.
pub fn factorization_reduction() -> Udag {
    labeled(
        "ABCDEFHI",
        &["A->C", "B->E", "A->F", "B->I", "C-D", "E-D", "F-H", "I-H"],
    )
}

/// `A -> B <- C` together with `B - C`.
pub fn collider_with_line() -> Udag {
    labeled("ABC", &["A->B", "C->B", "B-C"])
}
