use std::fmt::Display;
use std::fmt::Write as _;

use serde_json::{json, Value};

/// What a command produced, in every format it supports.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub dot: Option<String>,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Self { json, text, csv: None, dot: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

/// A labelled matrix of canonical strings.
pub struct Grid {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
    numeric: bool,
}

impl Grid {
    pub fn new<T: Display>(rows: Vec<String>, cols: Vec<String>, entries: &[Vec<T>]) -> Self {
        Self {
            rows,
            cols,
            entries: entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            numeric: false,
        }
    }

    /// Entries are integers and go to JSON as numbers.
    pub fn numeric(mut self) -> Self {
        self.numeric = true;
        self
    }

    pub fn indexed<T: Display>(entries: &[Vec<T>]) -> Self {
        let r = entries.len();
        let c = entries.first().map_or(0, Vec::len);
        Self::new((0..r).map(|i| i.to_string()).collect(), (0..c).map(|i| i.to_string()).collect(), entries)
    }

    pub fn json(&self) -> Value {
        let entries: Vec<Vec<Value>> = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match x.parse::<i64>() {
                        Ok(v) if self.numeric => json!(v),
                        _ => json!(x),
                    })
                    .collect()
            })
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn text(&self) -> String {
        let label_w = self.rows.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols.len())
            .map(|j| self.entries.iter().map(|r| r[j].len()).chain([self.cols[j].len()]).max().unwrap_or(0))
            .collect();
        let mut s = format!("{:label_w$}", "");
        for (c, w) in self.cols.iter().zip(&widths) {
            let _ = write!(s, "  {c:>w$}");
        }
        s.push('\n');
        for (label, row) in self.rows.iter().zip(&self.entries) {
            let _ = write!(s, "{label:label_w$}");
            for (x, w) in row.iter().zip(&widths) {
                let _ = write!(s, "  {x:>w$}");
            }
            s.push('\n');
        }
        s
    }

    pub fn csv(&self) -> String {
        let mut s = String::new();
        let header: Vec<String> = std::iter::once(String::new()).chain(self.cols.iter().cloned()).collect();
        s.push_str(&csv_line(&header));
        for (label, row) in self.rows.iter().zip(&self.entries) {
            let line: Vec<String> = std::iter::once(label.clone()).chain(row.iter().cloned()).collect();
            s.push_str(&csv_line(&line));
        }
        s
    }
}

/// Rows of a flat table.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(k, v)| {
                            let val = v.parse::<i64>().map_or_else(|_| json!(v), |n| json!(n));
                            (k.to_string(), val)
                        })
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| self.rows.iter().map(|r| r[j].len()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let mut s = String::new();
        let line = |cells: Vec<&str>| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        s.push_str(&line(self.columns.clone()));
        for r in &self.rows {
            s.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        s
    }

    pub fn csv(&self) -> String {
        let mut s = csv_line(&self.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        for r in &self.rows {
            s.push_str(&csv_line(r));
        }
        s
    }
}

fn csv_field(x: &str) -> String {
    if x.contains([',', '"', '\n']) {
        format!("\"{}\"", x.replace('"', "\"\""))
    } else {
        x.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    let parts: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
    parts.join(",") + "\n"
}
