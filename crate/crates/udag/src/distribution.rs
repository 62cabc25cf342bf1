//! Distribution files:
//!
//! ```json
//! {"variables": [{"name": "A", "card": 2}, {"name": "B", "card": 3}],
//!  "table": [p(A=0,B=0), p(A=0,B=1), p(A=0,B=2), p(A=1,B=0), ...]}
//! ```
//!
//! The table is row-major: the last variable changes fastest.

use serde::{Deserialize, Serialize};
use udag_core::{DiscreteDistribution, Variable};

use crate::error::Result;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableFile {
    name: String,
    card: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    variables: Vec<VariableFile>,
    table: Vec<f64>,
}

pub fn parse_distribution(src: &str) -> Result<DiscreteDistribution> {
    let f: DistributionFile = serde_json::from_str(src)?;
    let vars = f.variables.into_iter().map(|v| Variable::new(v.name, v.card)).collect();
    Ok(DiscreteDistribution::new(vars, f.table)?)
}

pub fn read_distribution(path: &std::path::Path) -> Result<DiscreteDistribution> {
    parse_distribution(&crate::error::read_file(path)?)
}

pub fn write_distribution(p: &DiscreteDistribution) -> String {
    let f = DistributionFile {
        variables: p
            .variables()
            .iter()
            .map(|v| VariableFile {
                name: v.name.clone(),
                card: v.card,
            })
            .collect(),
        table: p.table().to_vec(),
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes") + "\n"
}

/// Sampled configurations as CSV: a header of variable names, then one
/// configuration per row.
pub fn write_samples_csv(p: &DiscreteDistribution, rows: &[Vec<usize>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(p.variables().iter().map(|v| v.name.as_str()))?;
    for r in rows {
        w.write_record(r.iter().map(|x| x.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = r#"{"variables":[{"name":"A","card":2},{"name":"B","card":3}],
                      "table":[0.1,0.1,0.1,0.2,0.2,0.3]}"#;
        let p = parse_distribution(src).unwrap();
        assert_eq!(p.prob(&[1, 2]), 0.3);
        assert_eq!(parse_distribution(&write_distribution(&p)).unwrap(), p);
    }

    #[test]
    fn rejects_bad_tables() {
        let short = r#"{"variables":[{"name":"A","card":2}],"table":[1.0]}"#;
        assert!(parse_distribution(short).is_err());
        let unnormalized = r#"{"variables":[{"name":"A","card":2}],"table":[0.5,0.6]}"#;
        assert!(parse_distribution(unnormalized).is_err());
        assert!(parse_distribution("{}").is_err());
    }

    #[test]
    fn samples_csv() {
        let p = parse_distribution(r#"{"variables":[{"name":"A","card":2}],"table":[0.0,1.0]}"#).unwrap();
        assert_eq!(write_samples_csv(&p, &[vec![1], vec![1]]).unwrap(), "A\n1\n1\n");
    }
}
