//! Continuous data as CSV: a header row of variable names, then one
//! observation per row, comma separated, decimal point.

use std::io::Read;

use udag_core::Dataset;

use crate::error::{parse_err, Error, Result};
use crate::text::is_identifier;

pub fn parse_dataset<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let names: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
        return Err(parse_err(1, format!("`{bad}` is not a valid variable name")));
    }
    let mut columns = vec![Vec::new(); names.len()];
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = i + 2;
        for (col, field) in columns.iter_mut().zip(record.iter()) {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(line, format!("`{field}` is not a number")))?;
            col.push(v);
        }
    }
    Ok(Dataset::new(names, columns)?)
}

pub fn read_dataset(path: &std::path::Path) -> Result<Dataset> {
    let f = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(f)
}
