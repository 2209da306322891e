//! Matrix files: CSV of rational literals, or JSON
//! `{"rows": d, "cols": n, "entries": [["3", "-1/2"], ...]}`.

use std::fs;
use std::io::Read;

use serde_json::{json, Value};
use troprank::{TropError, TropMatrix, TropScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// JSON when the text starts with `{`, CSV otherwise.
    pub fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

fn parse_error(row: usize, col: usize, msg: impl Into<String>) -> TropError {
    TropError::Parse {
        row,
        col,
        msg: msg.into(),
    }
}

fn literal(text: &str, row: usize, col: usize) -> Result<TropScalar, TropError> {
    text.parse()
        .map_err(|_| parse_error(row, col, format!("'{text}' is not a rational number")))
}

pub fn parse_csv(text: &str) -> Result<TropMatrix, TropError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<TropScalar>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_error(i + 1, 0, e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = rows.len() + 1;
        let parsed = record
            .iter()
            .enumerate()
            .map(|(j, cell)| literal(cell, row, j + 1))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if parsed.len() != first.len() {
                return Err(parse_error(
                    row,
                    parsed.len(),
                    format!("expected {} entries", first.len()),
                ));
            }
        }
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(parse_error(0, 0, "no rows"));
    }
    TropMatrix::from_rows(rows)
}

fn json_matrix(v: &Value) -> Result<TropMatrix, TropError> {
    let v = v.get("matrix").unwrap_or(v);
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_error(0, 0, "missing \"entries\" array"))?;
    let mut rows = Vec::with_capacity(entries.len());
    for (i, r) in entries.iter().enumerate() {
        let r = r
            .as_array()
            .ok_or_else(|| parse_error(i + 1, 0, "row is not an array"))?;
        let row = r
            .iter()
            .enumerate()
            .map(|(j, x)| match x {
                Value::String(s) => literal(s, i + 1, j + 1),
                Value::Number(n) if n.is_i64() => {
                    Ok(TropScalar::from(n.as_i64().expect("checked")))
                }
                other => Err(parse_error(
                    i + 1,
                    j + 1,
                    format!("{other} is not a rational string"),
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let m = TropMatrix::from_rows(rows)?;
    for (key, want) in [("rows", m.rows()), ("cols", m.cols())] {
        if let Some(got) = v.get(key) {
            if got.as_u64() != Some(want as u64) {
                return Err(TropError::Shape(format!(
                    "\"{key}\" is {got} but entries give {want}"
                )));
            }
        }
    }
    Ok(m)
}

pub fn parse_json(text: &str) -> Result<TropMatrix, TropError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| parse_error(e.line(), e.column(), format!("invalid JSON: {e}")))?;
    json_matrix(&v)
}

pub fn parse_matrix(text: &str) -> Result<TropMatrix, TropError> {
    match Format::sniff(text) {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    }
}

pub fn to_csv(m: &TropMatrix) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(ToString::to_string))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("ascii")
}

pub fn matrix_value(m: &TropMatrix) -> Value {
    let entries: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn to_json(m: &TropMatrix) -> String {
    serde_json::to_string_pretty(&matrix_value(m)).expect("serializable") + "\n"
}

pub fn serialize(m: &TropMatrix, format: Format) -> String {
    match format {
        Format::Csv => to_csv(m),
        Format::Json => to_json(m),
    }
}

/// Reads a matrix from a path, or from `stdin` when the path is `-`.
pub fn read_matrix(path: &str, stdin: &mut dyn Read) -> anyhow::Result<TropMatrix> {
    let text = if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| anyhow::anyhow!("cannot read standard input: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {path}: {e}"))?
    };
    Ok(parse_matrix(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let a = parse_csv("0, 4, 2\n2,1,0\n\n2,4,3\n").unwrap();
        let b = parse_json(
            r#"{"rows": 3, "cols": 3, "entries": [["0","4","2"],["2","1","0"],[2,4,"3"]]}"#,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_matrix(&to_json(&a)).unwrap(), a);
        assert_eq!(parse_matrix(&to_csv(&a)).unwrap(), a);
        let wrapped = format!("{{\"schema\": 1, \"matrix\": {}}}", to_json(&a));
        assert_eq!(parse_matrix(&wrapped).unwrap(), a);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_csv("1,2\n3,x\n") {
            Err(TropError::Parse { row: 2, col: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_json(r#"{"entries": [["1", 0.5]]}"#) {
            Err(TropError::Parse { row: 1, col: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_csv("1,2\n3\n"),
            Err(TropError::Parse { row: 2, .. })
        ));
        assert!(matches!(
            parse_json(r#"{"rows": 2, "entries": [["1"]]}"#),
            Err(TropError::Shape(_))
        ));
        assert!(parse_csv("").is_err());
        assert!(parse_csv("1/0").is_err());
    }
}
