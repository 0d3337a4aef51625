//! Markdown rendering of output documents.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace('|', "\\|"),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(", ")
        }
        other => format!("`{other}`"),
    }
}

fn table(rows: &[Value]) -> String {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let mut out = format!("| {} |\n|{}\n", cols.join(" | "), "---|".repeat(cols.len()));
    for r in rows {
        let line: Vec<String> = cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect();
        out += &format!("| {} |\n", line.join(" | "));
    }
    out
}

fn body(doc: &Value) -> String {
    match doc {
        Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => table(rows),
        Value::Object(m) => {
            let mut out = String::from("| field | value |\n|---|---|\n");
            let mut nested = String::new();
            for (k, v) in m {
                match v {
                    Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => {
                        nested += &format!("\n### {k}\n\n{}", table(rows));
                    }
                    _ => out += &format!("| {k} | {} |\n", cell(v)),
                }
            }
            out + &nested
        }
        Value::Array(rows) if rows.is_empty() => "(none)\n".into(),
        other => format!("{}\n", cell(other)),
    }
}

pub fn markdown(doc: &Value, holds: bool, note: Option<&str>) -> String {
    let mut out = format!("**result:** {}\n\n", if holds { "true" } else { "false" });
    if let Some(n) = note {
        out += &format!("{n}\n\n");
    }
    out + &body(doc)
}
