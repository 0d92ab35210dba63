//! Output model shared by every subcommand: a header, typed cells and a
//! meta block, rendered to CSV or JSON as a deterministic byte stream.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value};
use tickwalk::{EngineTag, ExactNum};

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Rational(ExactNum),
    Text(&'static str),
}

impl Cell {
    /// Exact-engine probability/cost cell paired with its float rendering.
    pub fn rational_pair(v: ExactNum) -> [Cell; 2] {
        let f = v.to_f64().unwrap_or(f64::NAN);
        [Cell::Rational(v), Cell::Float(f)]
    }

    /// Log-space counterpart: the value column carries the float verbatim.
    pub fn float_pair(v: f64) -> [Cell; 2] {
        [Cell::Float(v), Cell::Float(v)]
    }
}

#[derive(Debug, Clone)]
pub struct Meta {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub engine: EngineTag,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub meta: Meta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits: enough to round-trip any f64, locale-free.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Int(v) => out.push_str(&v.to_string()),
                    Cell::UInt(v) => out.push_str(&v.to_string()),
                    Cell::Float(v) => out.push_str(&format_f64(*v)),
                    Cell::Rational(v) => out.push_str(&v.to_string()),
                    Cell::Text(v) => out.push_str(v),
                }
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let meta = json!({
            "n": self.meta.n,
            "k": self.meta.k,
            "engine": self.meta.engine.as_str(),
            "tool_version": env!("CARGO_PKG_VERSION"),
        });
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::with_capacity(row.len());
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Int(v) => Value::Number((*v).into()),
                        Cell::UInt(v) => Value::Number((*v).into()),
                        Cell::Float(v) => Number::from_f64(*v)
                            .map(Value::Number)
                            .unwrap_or(Value::Null),
                        Cell::Rational(v) => Value::String(v.to_string()),
                        Cell::Text(v) => Value::String((*v).to_string()),
                    };
                    obj.insert((*name).to_string(), value);
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": meta, "rows": rows });
        let mut text = serde_json::to_string_pretty(&doc).expect("table serializes");
        text.push('\n');
        text
    }
}
