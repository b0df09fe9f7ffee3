use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;

/// A titled table, printed aligned or as one JSON line.
pub struct Table {
    pub name: &'static str,
    pub title: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Structured rows for records output.
    pub records: Vec<Value>,
}

impl Table {
    pub fn new(name: &'static str, title: impl Into<String>, headers: Vec<&'static str>) -> Self {
        Table {
            name,
            title: title.into(),
            headers,
            rows: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: Vec<String>, record: impl Serialize) {
        self.rows.push(cells);
        self.records
            .push(serde_json::to_value(record).expect("records serialize"));
    }

    fn render_text(&self) -> String {
        let n = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        // numeric columns are right-aligned
        let numeric: Vec<bool> = (0..n)
            .map(|i| {
                self.rows.iter().all(|r| {
                    let c = r.get(i).map_or("", |c| c.trim_end_matches('%'));
                    c.is_empty() || c == "-" || c.parse::<f64>().is_ok()
                })
            })
            .collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate().take(n) {
                let pad = " ".repeat(widths[i] - c.chars().count());
                if i > 0 {
                    s.push_str("  ");
                }
                if numeric[i] {
                    s.push_str(&pad);
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.push_str(&pad);
                }
            }
            s.trim_end().to_owned()
        };
        let mut out = format!("{}\n", self.title);
        let headers: Vec<String> = self.headers.iter().map(|h| h.to_string()).collect();
        out.push_str(&line(&headers));
        out.push('\n');
        let total: usize = widths.iter().sum::<usize>() + 2 * n.saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Records => record_line(json!({
                "table": self.name,
                "rows": self.records,
            })),
        }
    }
}

pub fn record_line(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("records serialize");
    s.push('\n');
    s
}

/// Prints tables separated by blank lines (text) or one per line (records).
pub fn emit(tables: &[Table], format: Format) {
    let parts: Vec<String> = tables.iter().map(|t| t.render(format)).collect();
    match format {
        Format::Text => print!("{}", parts.join("\n")),
        Format::Records => print!("{}", parts.concat()),
    }
}

pub fn fixed(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}
