//! Column-oriented tables written as CSV or JSON.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::AppError;

pub enum Column {
    Real(Vec<f64>),
    Flag(Vec<bool>),
}

impl Column {
    fn len(&self) -> usize {
        match self {
            Column::Real(v) => v.len(),
            Column::Flag(v) => v.len(),
        }
    }

    fn csv_cell(&self, row: usize, out: &mut String) {
        match self {
            // 17 significant digits
            Column::Real(v) => out.push_str(&format!("{:.16e}", v[row])),
            Column::Flag(v) => out.push(if v[row] { '1' } else { '0' }),
        }
    }

    fn json(&self) -> Value {
        match self {
            Column::Real(v) => Value::from(v.clone()),
            Column::Flag(v) => Value::from(v.clone()),
        }
    }
}

#[derive(Default)]
pub struct Table {
    columns: Vec<(&'static str, Column)>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn real(mut self, name: &'static str, values: Vec<f64>) -> Self {
        self.push(name, Column::Real(values));
        self
    }

    pub fn flag(mut self, name: &'static str, values: Vec<bool>) -> Self {
        self.push(name, Column::Flag(values));
        self
    }

    fn push(&mut self, name: &'static str, column: Column) {
        if let Some((_, first)) = self.columns.first() {
            assert_eq!(
                first.len(),
                column.len(),
                "column `{name}` has the wrong length"
            );
        }
        self.columns.push((name, column));
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.columns.iter().map(|(n, _)| *n).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.names().join(",");
        out.push('\n');
        for row in 0..self.rows() {
            for (k, (_, col)) in self.columns.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                col.csv_cell(row, &mut out);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, config: &RunConfig) -> String {
        #[derive(Serialize)]
        struct Meta<'a> {
            #[serde(flatten)]
            config: &'a RunConfig,
            version: &'static str,
        }
        let meta = Meta {
            config,
            version: env!("CARGO_PKG_VERSION"),
        };
        let mut data = Map::new();
        for (name, col) in &self.columns {
            data.insert((*name).to_owned(), col.json());
        }
        let mut doc = Map::new();
        doc.insert(
            "meta".into(),
            serde_json::to_value(meta).expect("config serializes"),
        );
        doc.insert("data".into(), Value::Object(data));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json serializes");
        text.push('\n');
        text
    }
}

/// Write to `config.out`, or stdout when it is unset.
pub fn emit(table: &Table, config: &RunConfig) -> Result<(), AppError> {
    let text = match config.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(config),
    };
    match &config.out {
        Some(path) => write_file(path, &text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| AppError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), AppError> {
    fs::write(path, text).map_err(|source| AppError::Io {
        path: path.display().to_string(),
        source,
    })
}
