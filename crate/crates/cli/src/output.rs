use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use crate::config::Format;
use crate::CliError;

pub fn warn(message: &str) {
    eprintln!("{}", json!({ "warning": message }));
}

/// One CSV table: header plus rows of already formatted cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display())))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// Writes `value` as pretty JSON, or `table` as CSV when asked for.
pub fn emit<T: Serialize>(value: &T, table: Option<Table>, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = sink(out)?;
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(value).map_err(|e| CliError::internal(e.to_string()))?;
            writeln!(w, "{text}").map_err(|e| CliError::internal(e.to_string()))?;
        }
        Format::Csv => {
            let table = table.ok_or_else(|| CliError::usage("this report has no CSV form"))?;
            let mut c = csv::Writer::from_writer(w);
            c.write_record(&table.header).map_err(|e| CliError::internal(e.to_string()))?;
            for row in &table.rows {
                c.write_record(row).map_err(|e| CliError::internal(e.to_string()))?;
            }
            c.flush().map_err(|e| CliError::internal(e.to_string()))?;
        }
    }
    Ok(())
}

pub fn indices(v: &[usize]) -> String {
    v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn num(x: f64) -> String {
    format!("{x:e}")
}
