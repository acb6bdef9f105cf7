//! Plain-text rendering of output documents.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn walk(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            if !key.is_empty() {
                let _ = writeln!(out, "{pad}{key}:");
            }
            let next = if key.is_empty() { indent } else { indent + 1 };
            for (k, child) in map {
                walk(out, k, child, next);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", parts.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                walk(out, &format!("[{i}]"), item, indent + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

pub fn text(doc: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, "", doc, 0);
    out
}
