//! Plain-text graph format, one statement per line:
//!
//! ```text
//! # comment
//! node A          declares a node (fixes its position in the node order)
//! A -> C          arrow
//! E -- F          line
//! ```
//!
//! Nodes are ordered by first appearance.

use std::collections::{BTreeSet, HashMap};

use udag_core::{GraphError, NodeSet, Udag, Ug};

use crate::error::{parse_err, Error, Result};

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Node names in order of first appearance.
#[derive(Default)]
pub(crate) struct Names {
    pub names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    pub fn intern(&mut self, name: &str, line: usize) -> Result<usize> {
        if !is_identifier(name) {
            return Err(parse_err(line, format!("`{name}` is not a valid node name")));
        }
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }
}

pub fn parse_graph(src: &str) -> Result<Udag> {
    let mut names = Names::default();
    let mut arrows = Vec::new();
    let mut lines = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let s = content(raw);
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix("node ") {
            for name in rest.split_whitespace() {
                names.intern(name, ln)?;
            }
            continue;
        }
        let (a, b, directed) = if let Some((a, b)) = s.split_once("->") {
            (a.trim(), b.trim(), true)
        } else if let Some((a, b)) = s.split_once("--") {
            (a.trim(), b.trim(), false)
        } else {
            return Err(parse_err(
                ln,
                format!("expected `a -> b`, `a -- b` or `node a`, got `{s}`"),
            ));
        };
        let (a, b) = (names.intern(a, ln)?, names.intern(b, ln)?);
        if a == b {
            return Err(parse_err(ln, "self-loop"));
        }
        let key = if directed {
            (a, b, true)
        } else {
            (a.min(b), a.max(b), false)
        };
        if !seen.insert(key) {
            return Err(parse_err(ln, "duplicate edge"));
        }
        if directed {
            arrows.push((a, b));
        } else {
            lines.push((key.0, key.1));
        }
    }
    let n = names.names;
    Udag::with_names(n.clone(), &arrows, &lines).map_err(|e| match e {
        GraphError::DirectedCycle(cycle) => Error::Invalid(format!(
            "directed cycle {}",
            cycle.iter().map(|&v| n[v].as_str()).collect::<Vec<_>>().join(" -> ")
        )),
        other => other.into(),
    })
}

pub fn read_graph(path: &std::path::Path) -> Result<Udag> {
    parse_graph(&crate::error::read_file(path)?)
}

/// Declares every node, then lists arrows and lines, so that parsing the
/// output gives back the same graph with the same node order.
pub fn write_graph(g: &Udag) -> String {
    let mut out = String::new();
    for v in g.nodes().iter() {
        out.push_str(&format!("node {}\n", g.name(v)));
    }
    for (a, b) in g.directed_edges() {
        out.push_str(&format!("{} -> {}\n", g.name(a), g.name(b)));
    }
    for (a, b) in g.undirected_edges() {
        out.push_str(&format!("{} -- {}\n", g.name(a), g.name(b)));
    }
    out
}

pub fn write_ug(h: &Ug) -> String {
    let names = h.names();
    let mut out = String::new();
    for v in h.nodes().iter() {
        out.push_str(&format!("node {}\n", names[v]));
    }
    for (a, b) in h.edges() {
        out.push_str(&format!("{} -- {}\n", names[a], names[b]));
    }
    out
}

/// Comma-separated node names; the empty string is the empty set.
pub fn parse_node_set(names: &[String], list: &str) -> Result<NodeSet> {
    let mut out = NodeSet::EMPTY;
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v = names
            .iter()
            .position(|n| n == part)
            .ok_or_else(|| Error::UnknownNode(part.to_string()))?;
        out.insert(v);
    }
    Ok(out)
}

pub fn format_node_set(names: &[String], s: NodeSet) -> String {
    format!("{{{}}}", node_names(names, s).join(","))
}

pub fn node_names(names: &[String], s: NodeSet) -> Vec<String> {
    s.iter().map(|v| names[v].clone()).collect()
}

/// `g` with its nodes put in the order of `names`, which must be a
/// permutation of `g`'s names.
pub fn reorder(g: &Udag, names: &[String]) -> Result<Udag> {
    if g.names() == names {
        return Ok(g.clone());
    }
    let pos = |v: usize| -> Result<usize> {
        names
            .iter()
            .position(|n| n == g.name(v))
            .ok_or_else(|| Error::UnknownNode(g.name(v).to_string()))
    };
    if names.len() != g.n() {
        return Err(Error::Invalid(format!(
            "expected {} variables matching the graph, got {}",
            g.n(),
            names.len()
        )));
    }
    let arrows = g
        .directed_edges()
        .into_iter()
        .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
        .collect::<Result<Vec<_>>>()?;
    let lines = g
        .undirected_edges()
        .into_iter()
        .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Udag::with_names(names.to_vec(), &arrows, &lines)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_order() {
        let src = "# example\nnode Z\nA -> C\nC -- E   # trailing\n\nnode Q\n";
        let g = parse_graph(src).unwrap();
        assert_eq!(g.names(), ["Z", "A", "C", "E", "Q"]);
        let again = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn both_edges_on_a_pair() {
        let g = parse_graph("A -> B\nB -- A\n").unwrap();
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph("A -> B\nA => B\n").unwrap_err();
        assert!(e.to_string().starts_with("line 2"), "{e}");
        assert!(matches!(
            parse_graph("A -> B\nA -> B"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_graph("A -- A"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("1x -> B"), Err(Error::Parse { .. })));
        let cyc = parse_graph("A -> B\nB -> C\nC -> A").unwrap_err().to_string();
        assert!(cyc.contains("directed cycle"), "{cyc}");
    }

    #[test]
    fn reorder_permutes_nodes() {
        let g = parse_graph("A -> B\nB -- C\n").unwrap();
        let names: Vec<String> = ["C", "B", "A"].iter().map(|s| s.to_string()).collect();
        let h = reorder(&g, &names).unwrap();
        assert_eq!(h.names(), names);
        assert!(h.has_arrow(2, 1) && h.has_line(0, 1));
        assert!(reorder(&g, &names[..2]).is_err());
    }

    #[test]
    fn node_sets() {
        let names: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_node_set(&names, "").unwrap(), NodeSet::EMPTY);
        assert_eq!(parse_node_set(&names, "C, A").unwrap(), NodeSet::from_iter([0, 2]));
        assert!(matches!(parse_node_set(&names, "D"), Err(Error::UnknownNode(_))));
        assert_eq!(format_node_set(&names, NodeSet::from_iter([0, 2])), "{A,C}");
    }
}
