//! Tropical linear systems `M ⊙ x = b`.

use crate::config::Config;
use crate::det::{trop_det, Verdict};
use crate::diffcon::DiffConstraints;
use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::par;
use crate::rank::{combinations, tropical_rank_with};
use crate::scalar::TropScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// Rows where the principal solution overshoots `b`.
    Inconsistent {
        rows: Vec<usize>,
    },
    Unique {
        x: Vec<TropScalar>,
    },
    /// `x` is the least solution; raising `x[slack_column]` a little keeps
    /// it a solution.
    Multiple {
        x: Vec<TropScalar>,
        slack_column: usize,
    },
}

impl SolveStatus {
    pub fn solution(&self) -> Option<&[TropScalar]> {
        match self {
            SolveStatus::Inconsistent { .. } => None,
            SolveStatus::Unique { x } | SolveStatus::Multiple { x, .. } => Some(x),
        }
    }
}

fn check_rhs(m: &TropMatrix, b: &[TropScalar]) -> Result<()> {
    if b.len() != m.rows() {
        return Err(TropError::shape(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    Ok(())
}

/// The least candidate `x_j = max_i (b_i - m_ij)`.
pub fn principal_solution(m: &TropMatrix, b: &[TropScalar]) -> Result<Vec<TropScalar>> {
    check_rhs(m, b)?;
    Ok((0..m.cols())
        .map(|j| {
            (0..m.rows())
                .map(|i| &b[i] - m.get(i, j))
                .max()
                .expect("at least one row")
        })
        .collect())
}

/// Classifies `M ⊙ x = b` as inconsistent, uniquely or multiply solvable.
pub fn solve_status(m: &TropMatrix, b: &[TropScalar]) -> Result<SolveStatus> {
    let x = principal_solution(m, b)?;
    let mx = m.apply(&x)?;
    let bad: Vec<usize> = (0..m.rows()).filter(|&i| mx[i] != b[i]).collect();
    if !bad.is_empty() {
        return Ok(SolveStatus::Inconsistent { rows: bad });
    }
    // column j is pinned when some row attains b_i only at j
    let mut pinned = vec![false; m.cols()];
    for i in 0..m.rows() {
        let hits: Vec<usize> = (0..m.cols())
            .filter(|&j| m.get(i, j) + &x[j] == b[i])
            .collect();
        if let [j] = hits[..] {
            pinned[j] = true;
        }
    }
    Ok(match pinned.iter().position(|p| !p) {
        None => SolveStatus::Unique { x },
        Some(slack_column) => SolveStatus::Multiple { x, slack_column },
    })
}

/// Whether `x` lies in the tropical convex hull of the columns of `m`.
pub fn in_tropical_hull(m: &TropMatrix, x: &[TropScalar]) -> Result<bool> {
    Ok(!matches!(
        solve_status(m, x)?,
        SolveStatus::Inconsistent { .. }
    ))
}

/// A right-hand side with a unique solution, or `None` if `m` is singular.
///
/// With `sigma` the unique optimal permutation, a point `x` where row `i`
/// attains its minimum only at column `sigma(i)` exists; `b = M ⊙ x` then
/// pins every coordinate.
pub fn is_strongly_regular(m: &TropMatrix) -> Result<Option<Vec<TropScalar>>> {
    let cert = trop_det(m)?;
    if let Verdict::Singular { .. } = cert.verdict {
        return Ok(None);
    }
    let n = m.rows();
    let mut sys = DiffConstraints::new(n);
    for i in 0..n {
        let s = cert.sigma[i];
        for j in (0..n).filter(|&j| j != s) {
            sys.lt(s, j, (m.get(i, j) - m.get(i, s)).into_rational());
        }
    }
    let x: Vec<TropScalar> = sys
        .solve()
        .ok_or_else(|| TropError::internal("non-singular matrix without a unique-solution cell"))?
        .into_iter()
        .map(TropScalar::from_rational)
        .collect();
    let b = m.apply(&x)?;
    match solve_status(m, &b)? {
        SolveStatus::Unique { .. } => Ok(Some(b)),
        other => Err(TropError::internal(format!(
            "strong regularity witness failed: {other:?}"
        ))),
    }
}

/// Columns whose submatrix has a uniquely solvable right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongIndependence {
    pub rank: usize,
    pub columns: Vec<usize>,
    /// Rows of a non-singular square minor on `columns`.
    pub rows: Vec<usize>,
    /// `M[:, columns] ⊙ x = b` has exactly one solution.
    pub b: Vec<TropScalar>,
}

fn independent(
    m: &TropMatrix,
    cols: &[usize],
    cfg: &Config,
) -> Result<Option<(Vec<usize>, Vec<TropScalar>)>> {
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let sub = m.submatrix(&all_rows, cols)?;
    let t = tropical_rank_with(
        &sub,
        &Config {
            exec: par::Exec::Sequential,
            ..cfg.clone()
        },
    );
    if t.rank != cols.len() {
        return Ok(None);
    }
    let square = sub.submatrix(&t.rows, &t.cols)?;
    let b_minor = is_strongly_regular(&square)?
        .ok_or_else(|| TropError::internal("non-singular minor reported singular"))?;
    let x = principal_solution(&square, &b_minor)?;
    // t.cols is all of 0..k since the minor uses every column
    let b = sub.apply(&x)?;
    match solve_status(&sub, &b)? {
        SolveStatus::Unique { .. } => Ok(Some((t.rows, b))),
        other => Err(TropError::internal(format!(
            "independence witness failed: {other:?}"
        ))),
    }
}

fn subset_guard(m: &TropMatrix, cfg: &Config) -> Result<()> {
    if m.cols() > cfg.subset_max_cols {
        return Err(TropError::resource(format!(
            "column subset enumeration is limited to {} columns, got {}",
            cfg.subset_max_cols,
            m.cols()
        )));
    }
    Ok(())
}

pub fn strong_independence_rank(m: &TropMatrix) -> Result<StrongIndependence> {
    strong_independence_rank_with(m, &Config::default())
}

/// Largest strongly independent set of columns, with a verified
/// right-hand side.
pub fn strong_independence_rank_with(m: &TropMatrix, cfg: &Config) -> Result<StrongIndependence> {
    subset_guard(m, cfg)?;
    for k in (1..=m.rows().min(m.cols())).rev() {
        let found =
            par::find_map_first(
                cfg.exec,
                combinations(m.cols(), k),
                |cols| match independent(m, &cols, cfg) {
                    Ok(Some((rows, b))) => Some(Ok(StrongIndependence {
                        rank: k,
                        columns: cols,
                        rows,
                        b,
                    })),
                    Ok(None) => None,
                    Err(e) => Some(Err(e)),
                },
            );
        if let Some(result) = found {
            return result;
        }
    }
    Err(TropError::internal("a single column is always independent"))
}

/// All inclusion-maximal strongly independent column sets, each sorted,
/// listed in lexicographic order.
pub fn maximal_independent_column_sets(m: &TropMatrix) -> Result<Vec<Vec<usize>>> {
    maximal_independent_column_sets_with(m, &Config::default())
}

pub fn maximal_independent_column_sets_with(
    m: &TropMatrix,
    cfg: &Config,
) -> Result<Vec<Vec<usize>>> {
    subset_guard(m, cfg)?;
    let n = m.cols();
    // independence is inherited by subsets, so grow level by level
    let mut level: Vec<Vec<usize>> = (0..n).map(|j| vec![j]).collect();
    let mut maximal = Vec::new();
    while !level.is_empty() {
        let mut next: Vec<Vec<usize>> = level
            .iter()
            .flat_map(|s| (s[s.len() - 1] + 1..n).map(move |j| [s.as_slice(), &[j]].concat()))
            .filter(|s| {
                // every subset one smaller must already be independent
                (0..s.len()).all(|drop| {
                    let mut t = s.clone();
                    t.remove(drop);
                    level.binary_search(&t).is_ok()
                })
            })
            .collect();
        let checks = par::map(cfg.exec, next.clone(), |s| {
            independent(m, &s, cfg).map(|r| r.is_some())
        });
        let mut keep = Vec::new();
        for (s, ok) in next.drain(..).zip(checks) {
            if ok? {
                keep.push(s);
            }
        }
        for s in &level {
            let extended = keep.iter().any(|t| s.iter().all(|j| t.contains(j)));
            if !extended {
                maximal.push(s.clone());
            }
        }
        level = keep;
    }
    maximal.sort();
    Ok(maximal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> TropMatrix {
        TropMatrix::from_int_rows(rows).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<TropScalar> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn principal_solutions() {
        let c2 = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(principal_solution(&c2, &v(&[0, 0])).unwrap(), v(&[0, 0]));
        assert_eq!(
            principal_solution(&mat(&[&[0]]), &v(&[5])).unwrap(),
            v(&[5])
        );
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(principal_solution(&m, &v(&[0, 0])).unwrap(), v(&[0, 0]));
        assert!(matches!(
            principal_solution(&m, &v(&[0])),
            Err(TropError::Shape(_))
        ));
    }

    #[test]
    fn statuses() {
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            solve_status(&m, &v(&[0, 0])).unwrap(),
            SolveStatus::Unique { x: v(&[0, 0]) }
        );
        assert!(matches!(
            solve_status(&mat(&[&[0, 0]]), &v(&[0])).unwrap(),
            SolveStatus::Multiple {
                slack_column: 0,
                ..
            }
        ));
        assert_eq!(
            solve_status(&mat(&[&[0], &[1]]), &v(&[0, 0])).unwrap(),
            SolveStatus::Inconsistent { rows: vec![1] }
        );
        assert!(matches!(
            solve_status(&mat(&[&[0], &[1]]), &v(&[0, 5])).unwrap(),
            SolveStatus::Inconsistent { .. }
        ));
        assert!(matches!(
            solve_status(&mat(&[&[0], &[1]]), &v(&[4, 5])).unwrap(),
            SolveStatus::Unique { .. }
        ));
    }

    #[test]
    fn strong_regularity() {
        let b = is_strongly_regular(&mat(&[&[0, 1], &[1, 0]]))
            .unwrap()
            .unwrap();
        assert!(matches!(
            solve_status(&mat(&[&[0, 1], &[1, 0]]), &b).unwrap(),
            SolveStatus::Unique { .. }
        ));
        assert_eq!(
            is_strongly_regular(&mat(&[&[0, 4, 2], &[2, 1, 0], &[2, 4, 3]])).unwrap(),
            None
        );
        assert!(is_strongly_regular(&mat(&[&[3]])).unwrap().is_some());
        assert_eq!(
            is_strongly_regular(&mat(&[&[0, 0], &[0, 0]])).unwrap(),
            None
        );
    }

    #[test]
    fn independence() {
        let c3 = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let s = strong_independence_rank(&c3).unwrap();
        assert_eq!(s.rank, 2);
        let sub = c3.submatrix(&[0, 1, 2], &s.columns).unwrap();
        assert!(matches!(
            solve_status(&sub, &s.b).unwrap(),
            SolveStatus::Unique { .. }
        ));
        assert_eq!(
            strong_independence_rank(&mat(&[&[2], &[7]])).unwrap().rank,
            1
        );
    }

    #[test]
    fn four_point_configuration() {
        let m = mat(&[&[0, 0, 0, 0], &[0, 0, 1, 2], &[1, 0, 0, -1]]);
        assert_eq!(
            maximal_independent_column_sets(&m).unwrap(),
            vec![vec![0, 1], vec![0, 2, 3], vec![1, 2, 3]]
        );
    }
}
