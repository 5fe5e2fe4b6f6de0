use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A named table of exact text cells.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Table { name, columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), Value::String(v.clone())))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Everything one command emits.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    pub detail: Option<Value>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &'static str, params: Vec<(&'static str, String)>) -> Self {
        Report { command, params, tables: Vec::new(), notes: Vec::new(), detail: None, ok: true }
    }

    /// Records a check; the report fails if any check does.
    pub fn check(&mut self, passed: bool) -> bool {
        self.ok &= passed;
        passed
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Table => Ok(self.render_table()),
        }
    }

    fn render_json(&self) -> anyhow::Result<String> {
        let params: Map<String, Value> =
            self.params.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
        let tables: Map<String, Value> =
            self.tables.iter().map(|t| (t.name.to_string(), t.to_json())).collect();
        let mut out = json!({
            "command": self.command,
            "params": params,
            "ok": self.ok,
            "tables": tables,
            "notes": self.notes,
        });
        if let Some(d) = &self.detail {
            out["detail"] = d.clone();
        }
        let mut s = serde_json::to_string_pretty(&out)?;
        s.push('\n');
        Ok(s)
    }

    fn render_csv(&self) -> anyhow::Result<String> {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["table"];
            header.extend(&t.columns);
            w.write_record(&header)?;
            for r in &t.rows {
                let mut rec = vec![t.name.to_string()];
                rec.extend(r.iter().cloned());
                w.write_record(&rec)?;
            }
            out.push_str(&String::from_utf8(w.into_inner()?)?);
        }
        Ok(out)
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} {}", self.command, params.join(" "));
        for t in &self.tables {
            let _ = writeln!(out, "\n[{}]", t.name);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for r in &t.rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(t.columns.clone()));
            for r in &t.rows {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        let _ = writeln!(out, "\nstatus: {}", if self.ok { "PASS" } else { "FAIL" });
        out
    }
}
