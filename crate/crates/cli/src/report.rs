use neutrostat::setval::round_sig;
use neutrostat::{NeutroNumber, SetValue};
use serde_json::{json, Map, Value};

/// Number formatting shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Fmt {
    pub sig: Option<usize>,
}

impl Fmt {
    pub fn num(&self, x: f64) -> Value {
        if !x.is_finite() {
            return Value::String(x.to_string());
        }
        let v = match self.sig {
            Some(s) => round_sig(x, s),
            None => x,
        };
        // keep -0 out of reports
        json!(v + 0.0)
    }

    pub fn text(&self, s: &SetValue) -> String {
        s.to_string_sig(self.sig)
    }

    pub fn set(&self, s: &SetValue) -> Value {
        Value::String(self.text(s))
    }

    pub fn nn(&self, n: &NeutroNumber) -> Value {
        Value::String(n.to_string_sig(self.sig))
    }

    pub fn nums(&self, xs: &[f64]) -> Value {
        Value::Array(xs.iter().map(|&x| self.num(x)).collect())
    }

    pub fn sets(&self, xs: &[SetValue]) -> Value {
        Value::Array(xs.iter().map(|x| self.set(x)).collect())
    }
}

#[derive(Debug, Clone)]
pub struct Warning {
    pub code: &'static str,
    pub message: String,
}

impl Warning {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Warning {
            code,
            message: message.into(),
        }
    }
}

pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<Warning>,
    pub error: Option<(String, String)>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("results".into(), self.results.clone());
        m.insert(
            "warnings".into(),
            Value::Array(
                self.warnings
                    .iter()
                    .map(|w| json!({"code": w.code, "message": w.message}))
                    .collect(),
            ),
        );
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        if let Some((kind, message)) = &self.error {
            m.insert("error".into(), json!({"kind": kind, "message": message}));
        }
        Value::Object(m)
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    /// `path = value` lines, one per leaf.
    pub fn render_table(&self) -> String {
        let mut out = Vec::new();
        flatten("", &self.to_json(), &mut out);
        out.join("\n")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push(format!("{prefix} = {}", parts.join(" ")));
        }
        other => out.push(format!("{prefix} = {}", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
