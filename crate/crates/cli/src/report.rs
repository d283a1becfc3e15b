//! JSON report assembly. Field order is insertion order, so a report is
//! byte-identical across runs on the same input.

use std::time::Instant;

use graded_core::linalg::format_scalar;
use graded_core::{FiniteAlgebra, Subspace, Vector};
use serde_json::{json, Map, Value};

/// How matrices are printed: nested arrays of `"p/q"` strings, or
/// matrix-unit supports like `"e11+e33"`.
#[derive(Clone, Copy, Debug)]
pub struct Format {
    pub support: bool,
}

impl Format {
    pub fn element(&self, alg: &FiniteAlgebra, v: &Vector) -> Value {
        if self.support {
            return Value::String(alg.describe(v));
        }
        let cells: Vec<Value> = v.entries().iter().map(|x| Value::String(format_scalar(x))).collect();
        match alg.matrix_order() {
            Some(n) if n > 0 => Value::Array(cells.chunks(n).map(|row| Value::Array(row.to_vec())).collect()),
            _ => Value::Array(cells),
        }
    }

    pub fn basis(&self, alg: &FiniteAlgebra, s: &Subspace) -> Value {
        Value::Array(s.basis().iter().map(|v| self.element(alg, v)).collect())
    }

    /// `{"dim": d, "basis": [...]}`.
    pub fn subspace(&self, alg: &FiniteAlgebra, s: &Subspace) -> Value {
        json!({ "dim": s.dim(), "basis": self.basis(alg, s) })
    }
}

pub struct Report {
    fields: Map<String, Value>,
    verdicts: Vec<Value>,
    failed: usize,
    timings: Vec<(String, f64)>,
    started: Instant,
}

impl Report {
    pub fn new(command: &str, source: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        fields.insert("source".into(), json!(source));
        Report {
            fields,
            verdicts: Vec::new(),
            failed: 0,
            timings: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    pub fn verdict(&mut self, check: &str, pass: bool, detail: Option<String>) {
        if !pass {
            self.failed += 1;
        }
        let mut v = Map::new();
        v.insert("check".into(), json!(check));
        v.insert("pass".into(), json!(pass));
        if let Some(d) = detail {
            v.insert("detail".into(), json!(d));
        }
        self.verdicts.push(Value::Object(v));
    }

    /// Records a verdict from a `Result`, using the error text as detail.
    pub fn verdict_from<T, E: std::fmt::Display>(&mut self, check: &str, r: &Result<T, E>) -> bool {
        match r {
            Ok(_) => self.verdict(check, true, None),
            Err(e) => self.verdict(check, false, Some(e.to_string())),
        }
        r.is_ok()
    }

    /// Closes a timing phase that started at the previous mark.
    pub fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        let ms = now.duration_since(self.started).as_secs_f64() * 1e3;
        self.timings.push((phase.to_string(), ms));
        self.started = now;
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn finish(mut self, timings: bool) -> Value {
        self.fields.insert("verdicts".into(), Value::Array(self.verdicts));
        self.fields
            .insert("status".into(), json!(if self.failed == 0 { "pass" } else { "fail" }));
        if timings {
            let t: Map<String, Value> = self
                .timings
                .into_iter()
                .map(|(k, ms)| (k, json!((ms * 1000.0).round() / 1000.0)))
                .collect();
            self.fields.insert("timings_ms".into(), Value::Object(t));
        }
        Value::Object(self.fields)
    }
}
