use artin_hasse::{ExactMatrix, Rational};
use serde_json::{json, Map, Value};

/// Exact fraction as `{"den": "...", "num": "..."}`.
pub fn fraction(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn matrix(m: &ExactMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(fraction).collect()))
            .collect(),
    )
}

/// Top-level document `{"command", "p", "params", "result"}`. Keys are
/// emitted in sorted order, so rendering a parsed document reproduces it.
pub fn document(command: &str, p: Value, params: Value, result: Value) -> String {
    let mut top = Map::new();
    top.insert("command".into(), Value::String(command.into()));
    top.insert("p".into(), p);
    top.insert("params".into(), params);
    top.insert("result".into(), result);
    to_canonical_string(&Value::Object(top))
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn matrix_text(m: &ExactMatrix) -> String {
    m.to_string()
}

pub fn matrix_csv(m: &ExactMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
