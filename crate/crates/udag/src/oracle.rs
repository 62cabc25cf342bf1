//! Independence oracle files: one elementary statement per line,
//!
//! ```text
//! node A            optional, fixes node order / declares isolated names
//! A _||_ B | C,D
//! A _||_ C          empty conditioning set (a trailing `|` is also accepted)
//! ```

use udag_core::{IndependenceOracle, NodeSet};

use crate::error::{parse_err, Error, Result};
use crate::text::{content, Names};

/// Parses an oracle. With `known` names (for instance from a graph) every
/// name must be one of them and the oracle uses their order.
pub fn parse_oracle(src: &str, known: Option<&[String]>) -> Result<(Vec<String>, IndependenceOracle)> {
    let mut names = Names::default();
    if let Some(k) = known {
        for n in k {
            names.intern(n, 0)?;
        }
    }
    let mut triplets = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let s = content(raw);
        if s.is_empty() {
            continue;
        }
        let mut intern = |name: &str| -> Result<usize> {
            let before = names.names.len();
            let v = names.intern(name, ln)?;
            if known.is_some() && names.names.len() > before {
                return Err(Error::UnknownNode(name.to_string()));
            }
            Ok(v)
        };
        if let Some(rest) = s.strip_prefix("node ") {
            for name in rest.split_whitespace() {
                intern(name)?;
            }
            continue;
        }
        let (a, rest) = s
            .split_once("_||_")
            .ok_or_else(|| parse_err(ln, format!("expected `A _||_ B | Z`, got `{s}`")))?;
        let (b, z) = match rest.split_once('|') {
            Some((b, z)) => (b, z),
            None => (rest, ""),
        };
        let (a, b) = (a.trim(), b.trim());
        if a.contains(',') || b.contains(',') {
            return Err(parse_err(ln, "only single nodes may stand on either side"));
        }
        let (a, b) = (intern(a)?, intern(b)?);
        let mut zs = NodeSet::EMPTY;
        for part in z.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            zs.insert(intern(part)?);
        }
        triplets.push((ln, a, b, zs));
    }
    let n = names.names.len();
    let mut oracle = IndependenceOracle::new(n)?;
    for (ln, a, b, z) in triplets {
        oracle.insert(a, b, z).map_err(|e| parse_err(ln, e.to_string()))?;
    }
    Ok((names.names, oracle))
}

pub fn write_oracle(names: &[String], oracle: &IndependenceOracle) -> String {
    let mut out = String::new();
    for n in names {
        out.push_str(&format!("node {n}\n"));
    }
    for (a, b, z) in oracle.triplets() {
        out.push_str(&format!("{} _||_ {}", names[a], names[b]));
        if !z.is_empty() {
            let zs: Vec<&str> = z.iter().map(|v| names[v].as_str()).collect();
            out.push_str(&format!(" | {}", zs.join(",")));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let src = "# comment\nA _||_ B | C,D\nA _||_ C\nB _||_ D |\nnode E\n";
        let (names, o) = parse_oracle(src, None).unwrap();
        assert_eq!(names, ["A", "B", "C", "D", "E"]);
        assert_eq!(o.len(), 3);
        assert!(o.contains(1, 0, NodeSet::from_iter([2, 3])));
        assert!(o.contains(1, 3, NodeSet::EMPTY));
        let (names2, o2) = parse_oracle(&write_oracle(&names, &o), None).unwrap();
        assert_eq!((names2, o2), (names, o));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(
            parse_oracle("A _||_ A", None),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_oracle("A _||_ B | A", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_oracle("A, B _||_ C", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_oracle("A B C", None), Err(Error::Parse { .. })));
        let known = vec!["A".to_string(), "B".to_string()];
        assert!(matches!(
            parse_oracle("A _||_ C", Some(&known)),
            Err(Error::UnknownNode(_))
        ));
    }
}
