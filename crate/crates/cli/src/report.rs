//! Report model and its three renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

/// Precision metadata attached to a numeric result.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Meta {
    pub depth: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Field {
    pub key: String,
    pub value: Value,
    pub meta: Meta,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub meta: Meta,
}

impl Table {
    pub fn new(name: &str, columns: &[&str], meta: Meta) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub regime: Vec<Field>,
    pub results: Vec<Field>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
    /// Set when some solve stopped at `max_iter`.
    pub not_converged: bool,
}

impl Report {
    pub fn new(command: &str, cfg: &RunConfig) -> Self {
        Report {
            command: command.into(),
            config: cfg.pairs(),
            regime: Vec::new(),
            results: Vec::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
            not_converged: false,
        }
    }

    pub fn regime(&mut self, key: &str, value: impl Into<Value>) {
        self.regime.push(Field {
            key: key.into(),
            value: value.into(),
            meta: Meta::default(),
        });
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>, meta: Meta) {
        self.results.push(Field {
            key: key.into(),
            value: value.into(),
            meta,
        });
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        let w = w.into();
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Jsonl => self.render_jsonl(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "symbeta {}", self.command);
        let _ = writeln!(out);
        let cfg: Vec<(String, String)> = self.config.clone();
        write_pairs(&mut out, "config", &cfg);
        let regime: Vec<(String, String)> =
            self.regime.iter().map(|f| (f.key.clone(), cell(&f.value))).collect();
        write_pairs(&mut out, "regime", &regime);
        let results: Vec<(String, String)> = self
            .results
            .iter()
            .map(|f| (f.key.clone(), with_meta(&cell(&f.value), f.meta)))
            .collect();
        write_pairs(&mut out, "results", &results);
        for t in &self.tables {
            let _ = writeln!(out, "[{}]{}", t.name, meta_suffix(t.meta));
            let cells: Vec<Vec<String>> =
                t.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain(std::iter::once(t.columns[j].len()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[String]| {
                row.iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "  {}", line(&t.columns));
            for r in &cells {
                let _ = writeln!(out, "  {}", line(r));
            }
            let _ = writeln!(out);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    fn render_jsonl(&self) -> String {
        let mut out = String::new();
        let mut push = |v: Value| {
            out.push_str(&v.to_string());
            out.push('\n');
        };
        let mut cfg = Map::new();
        cfg.insert("record".into(), "config".into());
        cfg.insert("command".into(), self.command.clone().into());
        for (k, v) in &self.config {
            cfg.insert(k.clone(), v.clone().into());
        }
        push(Value::Object(cfg));
        let mut regime = Map::new();
        regime.insert("record".into(), "regime".into());
        for f in &self.regime {
            regime.insert(f.key.clone(), f.value.clone());
        }
        push(Value::Object(regime));
        for f in &self.results {
            let mut r = Map::new();
            r.insert("record".into(), "result".into());
            r.insert("key".into(), f.key.clone().into());
            r.insert("value".into(), f.value.clone());
            insert_meta(&mut r, f.meta);
            push(Value::Object(r));
        }
        for t in &self.tables {
            for row in &t.rows {
                let mut r = Map::new();
                r.insert("record".into(), t.name.clone().into());
                for (c, v) in t.columns.iter().zip(row) {
                    r.insert(c.clone(), v.clone());
                }
                insert_meta(&mut r, t.meta);
                push(Value::Object(r));
            }
        }
        for w in &self.warnings {
            push(json!({"record": "warning", "message": w}));
        }
        out
    }

    /// The first table as CSV; scalar results as `key,value` when a command
    /// produces no table. Warnings go to standard error.
    fn render_csv(&self) -> String {
        let mut out = String::new();
        match self.tables.first() {
            Some(t) => {
                let mut header = t.columns.clone();
                header.extend(["depth".to_string(), "tol".to_string()]);
                let _ = writeln!(out, "{}", header.join(","));
                for row in &t.rows {
                    let mut cells: Vec<String> = row.iter().map(csv_cell).collect();
                    cells.push(t.meta.depth.map(|d| d.to_string()).unwrap_or_default());
                    cells.push(t.meta.tol.map(|x| format!("{x:e}")).unwrap_or_default());
                    let _ = writeln!(out, "{}", cells.join(","));
                }
            }
            None => {
                let _ = writeln!(out, "key,value,depth,tol");
                for f in self.regime.iter().chain(&self.results) {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        f.key,
                        csv_cell(&f.value),
                        f.meta.depth.map(|d| d.to_string()).unwrap_or_default(),
                        f.meta.tol.map(|x| format!("{x:e}")).unwrap_or_default()
                    );
                }
            }
        }
        out
    }
}

fn insert_meta(r: &mut Map<String, Value>, meta: Meta) {
    if let Some(d) = meta.depth {
        r.insert("depth".into(), d.into());
    }
    if let Some(t) = meta.tol {
        r.insert("tol".into(), t.into());
    }
}

fn write_pairs(out: &mut String, title: &str, pairs: &[(String, String)]) {
    if pairs.is_empty() {
        return;
    }
    let _ = writeln!(out, "[{title}]");
    let w = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        let _ = writeln!(out, "  {k:<w$}  {v}");
    }
    let _ = writeln!(out);
}

fn meta_suffix(meta: Meta) -> String {
    match (meta.depth, meta.tol) {
        (None, None) => String::new(),
        (Some(d), None) => format!("  (depth {d})"),
        (None, Some(t)) => format!("  (tol {t:e})"),
        (Some(d), Some(t)) => format!("  (depth {d}, tol {t:e})"),
    }
}

fn with_meta(v: &str, meta: Meta) -> String {
    format!("{v}{}", meta_suffix(meta))
}

/// Human-readable cell: floats with 12 significant digits.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => fmt_float(n.as_f64().unwrap()),
        Value::Array(a) if a.is_empty() => "[]".into(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e6).contains(&x.abs()) {
        let s = format!("{x:.12}");
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    } else {
        format!("{x:.6e}")
    }
}

/// Machine cell: floats in shortest round-trip form.
fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains([',', '"']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        Value::Array(a) => {
            let inner = a.iter().map(csv_cell).collect::<Vec<_>>().join(" ");
            if inner.contains(',') {
                format!("\"{inner}\"")
            } else {
                inner
            }
        }
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
