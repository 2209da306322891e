//! JSON reports. Indices are 1-based and every scalar is its exact
//! rational string, so reports can be checked without rerunning searches.

use serde_json::{json, Map, Value};
use troprank::{
    BarvinokRank, HullCell, KapranovReport, PuiseuxMatrix, SingularityCertificate, SolveStatus,
    TropScalar, TropicalRank, Verdict,
};

use crate::io::matrix_value;

pub const SCHEMA: u64 = 1;

/// `{"schema": 1, "command": name}`, ready for more fields.
pub fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

pub fn scalars(v: &[TropScalar]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

pub fn one_based(v: &[usize]) -> Value {
    v.iter().map(|i| json!(i + 1)).collect()
}

pub fn index_sets(sets: &[Vec<usize>]) -> Value {
    sets.iter().map(|s| one_based(s)).collect()
}

pub fn det(c: &SingularityCertificate) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), json!(c.det_value.to_string()));
    m.insert("singular".into(), json!(c.is_singular()));
    m.insert("sigma".into(), one_based(&c.sigma));
    if let Verdict::Singular { sigma2 } = &c.verdict {
        m.insert("sigma2".into(), one_based(sigma2));
    }
    m.insert("u".into(), scalars(&c.u));
    m.insert("v".into(), scalars(&c.v));
    Value::Object(m)
}

pub fn tropical_certificate(t: &TropicalRank) -> Value {
    json!({
        "rows": one_based(&t.rows),
        "cols": one_based(&t.cols),
        "upper_verified": t.upper_verified,
        "upper_bound": t.upper_bound,
    })
}

/// The rank when exact, otherwise `{"lo", "hi"}`.
pub fn barvinok(b: &BarvinokRank) -> Value {
    match b {
        BarvinokRank::Exact { rank, .. } => json!(rank),
        BarvinokRank::Bounds { lo, hi } => json!({ "lo": lo, "hi": hi }),
    }
}

pub fn barvinok_certificate(b: &BarvinokRank) -> Value {
    match b {
        BarvinokRank::Exact { x, y, .. } => json!({ "x": matrix_value(x), "y": matrix_value(y) }),
        BarvinokRank::Bounds { .. } => Value::Null,
    }
}

pub fn kapranov(k: &KapranovReport) -> Value {
    json!({
        "lo": k.lo,
        "hi": k.hi,
        "exact": k.exact,
        "rule": k.rule.map(|r| r.tag()),
    })
}

pub fn cell(c: &HullCell) -> Value {
    json!({ "type": c.ty.to_string(), "dim": c.dim, "witness": scalars(&c.witness) })
}

/// Number of cells of each dimension, index = dimension.
pub fn cell_counts(cells: &[HullCell]) -> Vec<usize> {
    let top = cells.iter().map(|c| c.dim + 1).max().unwrap_or(0);
    let mut counts = vec![0; top];
    for c in cells {
        counts[c.dim] += 1;
    }
    counts
}

pub fn solve(s: &SolveStatus) -> Value {
    match s {
        SolveStatus::Inconsistent { rows } => {
            json!({ "status": "inconsistent", "rows": one_based(rows) })
        }
        SolveStatus::Unique { x } => json!({ "status": "unique", "x": scalars(x) }),
        SolveStatus::Multiple { x, slack_column } => {
            json!({ "status": "multiple", "x": scalars(x), "slack_column": slack_column + 1 })
        }
    }
}

pub fn puiseux(f: &PuiseuxMatrix) -> Value {
    let entries: Vec<Vec<String>> = (0..f.rows())
        .map(|i| (0..f.cols()).map(|j| f.get(i, j).to_string()).collect())
        .collect();
    json!({ "rows": f.rows(), "cols": f.cols(), "entries": entries })
}
