//! Report rendering: pretty JSON with sorted keys, or an aligned table.

use serde_json::Value;

pub fn render(v: &Value, table: bool) -> String {
    if table {
        render_table(v)
    } else {
        serde_json::to_string_pretty(v).expect("values serialize")
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.to_string(), xs.iter().map(scalar).collect::<Vec<_>>().join(" ")));
        }
        other => out.push((prefix.to_string(), scalar_or_json(other))),
    }
}

fn scalar_or_json(v: &Value) -> String {
    match v {
        Value::Array(_) | Value::Object(_) => v.to_string(),
        _ => scalar(v),
    }
}

fn render_table(v: &Value) -> String {
    match v {
        // one row per record, e.g. a scorecard
        Value::Array(rows) if rows.iter().all(Value::is_object) => {
            if rows.is_empty() {
                return "(no rows)".into();
            }
            let flat: Vec<Vec<(String, String)>> = rows
                .iter()
                .map(|r| {
                    let mut out = Vec::new();
                    flatten("", r, &mut out);
                    out
                })
                .collect();
            let mut cols: Vec<String> = Vec::new();
            for row in &flat {
                for (k, _) in row {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
            let cells: Vec<Vec<String>> = flat
                .iter()
                .map(|row| {
                    cols.iter()
                        .map(|c| row.iter().find(|(k, _)| k == c).map_or("-".into(), |(_, v)| v.clone()))
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
                .collect();
            let line = |xs: &[String]| {
                xs.iter()
                    .zip(&widths)
                    .map(|(x, w)| format!("{x:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let mut out = vec![line(&cols)];
            out.extend(cells.iter().map(|r| line(r)));
            out.join("\n")
        }
        _ => {
            let mut out = Vec::new();
            flatten("", v, &mut out);
            let w = out.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            out.iter()
                .map(|(k, x)| format!("{k:<w$}  {x}"))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tables() {
        let t = render(&json!({"b": ["1", "10"], "a": {"x": 1}}), true);
        assert_eq!(t, "a.x  1\nb    1 10");
        let rows = render(&json!([{"name": "x", "match": true}, {"name": "yy", "match": false}]), true);
        assert_eq!(rows, "match  name\ntrue   x\nfalse  yy");
    }
}
