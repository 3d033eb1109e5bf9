//! JSON and CSV encodings of a report payload.

use serde_json::Value;

use crate::error::WorkbenchError;
use crate::request::Format;

const HILBERT_COLUMNS: [&str; 5] = ["computation", "p", "n", "k", "max_degree"];

pub fn render(payload: &Value, format: Format) -> Result<Vec<u8>, WorkbenchError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(payload).expect("values serialize");
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => csv_bytes(payload),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => serde_json::to_string(v).expect("values serialize"),
    }
}

fn csv_err(e: csv::Error) -> WorkbenchError {
    WorkbenchError::Io(std::io::Error::other(e))
}

/// Hilbert series become one row per nonzero degree under the schema columns
/// plus `degree, dim`; any other report is a header row and a value row.
fn csv_bytes(payload: &Value) -> Result<Vec<u8>, WorkbenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let obj = payload.as_object();
    match obj.and_then(|o| o.get("series")).and_then(Value::as_array) {
        Some(series) => {
            let o = obj.expect("series lives in an object");
            let mut header: Vec<&str> = HILBERT_COLUMNS.to_vec();
            header.extend(["degree", "dim"]);
            w.write_record(&header).map_err(csv_err)?;
            let fixed: Vec<String> = HILBERT_COLUMNS
                .iter()
                .map(|c| o.get(*c).map(cell).unwrap_or_default())
                .collect();
            for entry in series {
                let mut row = fixed.clone();
                if let Some(pair) = entry.as_array() {
                    row.extend(pair.iter().map(cell));
                }
                w.write_record(&row).map_err(csv_err)?;
            }
        }
        None => match obj {
            Some(o) => {
                w.write_record(o.keys()).map_err(csv_err)?;
                w.write_record(o.values().map(cell)).map_err(csv_err)?;
            }
            None => {
                w.write_record(["value"]).map_err(csv_err)?;
                w.write_record([cell(payload)]).map_err(csv_err)?;
            }
        },
    }
    w.into_inner().map_err(|e| WorkbenchError::Io(std::io::Error::other(e.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hilbert_csv_mirrors_json_columns() {
        let v = json!({"computation": "words.count", "p": 2, "n": 1, "k": 1, "max_degree": 6, "series": [[3, 1], [5, 2]]});
        let text = String::from_utf8(render(&v, Format::Csv).unwrap()).unwrap();
        assert_eq!(
            text,
            "computation,p,n,k,max_degree,degree,dim\nwords.count,2,1,1,6,3,1\nwords.count,2,1,1,6,5,2\n"
        );
    }

    #[test]
    fn nested_values_are_quoted() {
        let v = json!({"computation": "words.adem", "terms": [[5, 2], [4, 3]]});
        let text = String::from_utf8(render(&v, Format::Csv).unwrap()).unwrap();
        assert_eq!(text, "computation,terms\nwords.adem,\"[[5,2],[4,3]]\"\n");
    }

    #[test]
    fn json_ends_with_newline() {
        let out = render(&json!({"a": 1}), Format::Json).unwrap();
        assert_eq!(out.last(), Some(&b'\n'));
    }
}
