//! Deterministic text output: fixed float formatting (17 significant
//! digits), CSV with a provenance header, and a small JSON emitter that
//! keeps the same float format.

use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// 17 significant digits: enough to round-trip any f64, and stable bytes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Hash of the canonical config line, quoted in every emitted file.
pub fn config_hash(canonical: &str) -> String {
    let mut h = Sha256::new();
    h.update(canonical.as_bytes());
    let out = h.finalize();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub struct CsvWriter {
    buf: String,
}

impl CsvWriter {
    pub fn new(hash: &str, tolerances: &str, columns: &[&str]) -> Self {
        let mut buf = String::new();
        let _ = writeln!(buf, "# config-hash: {hash}");
        let _ = writeln!(buf, "# tolerances: {tolerances}");
        let _ = writeln!(buf, "{}", columns.join(","));
        CsvWriter { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.buf, "{}", fields.join(","));
    }

    pub fn write(self, path: &Path) -> std::io::Result<()> {
        fs::write(path, self.buf)
    }
}

/// JSON values with deterministic float formatting.
pub enum Json {
    Num(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s, 0);
        s
    }

    fn render_into(&self, s: &mut String, indent: usize) {
        match self {
            Json::Num(x) => {
                if x.is_finite() {
                    s.push_str(&fmt_f64(*x));
                } else {
                    let _ = write!(s, "\"{x}\"");
                }
            }
            Json::Int(x) => {
                let _ = write!(s, "{x}");
            }
            Json::Str(v) => {
                let _ = write!(s, "{}", serde_json::to_string(v).unwrap());
            }
            Json::Bool(b) => {
                let _ = write!(s, "{b}");
            }
            Json::Arr(items) => {
                s.push('[');
                for (k, it) in items.iter().enumerate() {
                    if k > 0 {
                        s.push_str(", ");
                    }
                    it.render_into(s, indent);
                }
                s.push(']');
            }
            Json::Obj(fields) => {
                s.push_str("{\n");
                let pad = "  ".repeat(indent + 1);
                for (k, (key, val)) in fields.iter().enumerate() {
                    if k > 0 {
                        s.push_str(",\n");
                    }
                    let _ = write!(s, "{pad}{}: ", serde_json::to_string(key).unwrap());
                    val.render_into(s, indent + 1);
                }
                s.push('\n');
                s.push_str(&"  ".repeat(indent));
                s.push('}');
            }
        }
    }
}

pub fn write_json(path: &Path, value: &Json) -> std::io::Result<()> {
    fs::write(path, value.render() + "\n")
}
