//! `--pretty` output: indented keys, matrices as aligned columns, and
//! integers shown without a `/1` denominator.

use serde_json::Value;

fn short(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<&str>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let m: Vec<Vec<&str>> = rows
        .iter()
        .map(|r| r.as_array()?.iter().map(|x| x.as_str().map(short)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let w = m[0].len();
    (w > 0 && m.iter().all(|r| r.len() == w)).then_some(m)
}

fn matrix_lines(m: &[Vec<&str>], indent: usize, out: &mut String) {
    let cols = m[0].len();
    let widths: Vec<usize> = (0..cols).map(|j| m.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    for row in m {
        out.push_str(&" ".repeat(indent));
        out.push('[');
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(&cells.join("  "));
        out.push_str("]\n");
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => short(s).to_string(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn go(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                out.push_str(&" ".repeat(indent));
                out.push_str(k);
                out.push(':');
                if x.is_object() || as_matrix(x).is_some() || (x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object() || e.is_array()))) {
                    out.push('\n');
                    go(x, indent + 2, out);
                } else {
                    out.push(' ');
                    out.push_str(&scalar(x));
                    out.push('\n');
                }
            }
        }
        Value::Array(items) => {
            if let Some(m) = as_matrix(v) {
                matrix_lines(&m, indent, out);
                return;
            }
            for (i, x) in items.iter().enumerate() {
                out.push_str(&" ".repeat(indent));
                out.push_str(&format!("- [{i}]\n"));
                go(x, indent + 2, out);
            }
        }
        other => {
            out.push_str(&" ".repeat(indent));
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}
