use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// What a subcommand produced, in both output shapes.
pub struct Report {
    pub command: &'static str,
    pub json: Map<String, Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &'static str, header: Vec<&'static str>) -> Self {
        Report {
            command,
            json: Map::new(),
            header,
            rows: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.json.insert(key.to_string(), value.into());
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn schema(&self) -> String {
        format!("cantorval/{}/v1", self.command)
    }

    pub fn write(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        let mut out = BufWriter::new(sink);
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("schema".into(), Value::String(self.schema()));
                doc.extend(self.json.clone());
                serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
        }
        out.flush()
    }
}

/// Shortest text that reads back to the same `f64`, in exponent form when
/// the plain form would be long.
pub fn real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
