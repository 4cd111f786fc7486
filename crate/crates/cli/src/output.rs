use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

/// A command result: a JSON document plus a flat table for csv/table output.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Output {
        Output {
            json,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows,
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
            }
            Format::Table => Ok(self.table()),
        }
    }

    fn table(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        out += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
        for row in &self.rows {
            out += &line(row);
        }
        out
    }
}
