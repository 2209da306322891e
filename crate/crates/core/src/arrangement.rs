//! Vertices of the type decomposition of a point configuration.
//!
//! The points are the columns of a `d x n` grid `g`. A point `x` of the
//! ambient space has type `S` with `i in S_j` iff coordinate `j` maximizes
//! `x_j - g[j][i]`. Vertices are the points whose rows are all linked through
//! shared columns. They are found by growing a linked set of rows from row 0,
//! each new row pinned by a tie with an already placed row.

use std::collections::HashSet;

use crate::numeric::{Grid, Weight};

/// Enumeration stopped because the state budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Exhausted;

/// Per-column bitmask of the rows in `mask` attaining `max_r x_r - g[r][c]`.
pub(crate) fn argmax_rows<T: Weight>(g: &Grid<T>, x: &[T], mask: u64) -> Vec<u64> {
    (0..g.cols)
        .map(|c| {
            let mut best: Option<T> = None;
            let mut rows = 0u64;
            for r in (0..g.rows).filter(|&r| mask >> r & 1 == 1) {
                let val = x[r].clone() - g.get(r, c).clone();
                match best.as_ref().map(|b| val.cmp(b)) {
                    None | Some(std::cmp::Ordering::Greater) => {
                        best = Some(val);
                        rows = 1 << r;
                    }
                    Some(std::cmp::Ordering::Equal) => rows |= 1 << r,
                    Some(std::cmp::Ordering::Less) => {}
                }
            }
            rows
        })
        .collect()
}

/// Whether the rows in `mask` are connected when rows sharing an argmax
/// column are adjacent.
pub(crate) fn rows_linked(argmax: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let mut reached = 1u64 << mask.trailing_zeros();
    loop {
        let grown = argmax
            .iter()
            .filter(|&&rows| rows & reached != 0)
            .fold(reached, |acc, &rows| acc | rows)
            & mask;
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

/// All vertices, each with `x[0] = 0`, sorted.
pub(crate) fn vertices<T: Weight>(
    g: &Grid<T>,
    max_states: usize,
) -> Result<Vec<Vec<T>>, Exhausted> {
    let d = g.rows;
    assert!((1..=64).contains(&d), "row count must fit a bitmask");
    let full: u64 = if d == 64 { u64::MAX } else { (1 << d) - 1 };
    let start = (1u64, vec![T::zero(); d]);
    let mut seen: HashSet<(u64, Vec<T>)> = HashSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    let mut out = Vec::new();
    while let Some((mask, x)) = stack.pop() {
        if mask == full {
            out.push(x);
            continue;
        }
        let argmax = argmax_rows(g, &x, mask);
        for (c, &rows) in argmax.iter().enumerate() {
            let l = rows.trailing_zeros() as usize;
            let base = x[l].clone() - g.get(l, c).clone();
            for k in (0..d).filter(|&k| mask >> k & 1 == 0) {
                let mut y = x.clone();
                y[k] = base.clone() + g.get(k, c).clone();
                let m2 = mask | 1 << k;
                if !rows_linked(&argmax_rows(g, &y, m2), m2) {
                    continue;
                }
                let state = (m2, y);
                if seen.contains(&state) {
                    continue;
                }
                if seen.len() >= max_states {
                    return Err(Exhausted);
                }
                seen.insert(state.clone());
                stack.push(state);
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&[i128]]) -> Grid<i128> {
        Grid {
            rows: rows.len(),
            cols: rows[0].len(),
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    #[test]
    fn segment_has_two_vertices() {
        // columns (1,0) and (0,1)
        let g = grid(&[&[1, 0], &[0, 1]]);
        assert_eq!(vertices(&g, 1000).unwrap(), vec![vec![0, -1], vec![0, 1]]);
    }

    #[test]
    fn single_point() {
        let g = grid(&[&[0], &[2], &[2]]);
        assert_eq!(vertices(&g, 1000).unwrap(), vec![vec![0, 2, 2]]);
        let g = grid(&[&[5, 1]]);
        assert_eq!(vertices(&g, 1000).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn budget_is_reported() {
        let g = grid(&[&[0, 3, 1], &[2, 0, 5], &[1, 4, 0]]);
        assert_eq!(vertices(&g, 1), Err(Exhausted));
    }

    /// Every vertex is a point whose full type links all rows, and every
    /// such point built from an explicit spanning tree of ties is found.
    #[test]
    fn agrees_with_spanning_tree_solutions() {
        let g = grid(&[&[0, 4, 2, 1], &[2, 1, 0, 3], &[2, 4, 3, 0]]);
        let vs = vertices(&g, 100_000).unwrap();
        for x in &vs {
            assert!(rows_linked(&argmax_rows(&g, x, 0b111), 0b111));
        }
        // brute force over all trees on 3 rows: edges (0,a) and (b,2-ish)
        let mut expect = Vec::new();
        let (d, n) = (3usize, 4usize);
        for c1 in 0..n {
            for c2 in 0..n {
                for shape in 0..3 {
                    let mut x = vec![0i128; d];
                    // shape 0: 0-1 via c1, 0-2 via c2; 1: 0-1, 1-2; 2: 0-2, 2-1
                    match shape {
                        0 => {
                            x[1] = g.get(1, c1) - g.get(0, c1);
                            x[2] = g.get(2, c2) - g.get(0, c2);
                        }
                        1 => {
                            x[1] = g.get(1, c1) - g.get(0, c1);
                            x[2] = x[1] - g.get(1, c2) + g.get(2, c2);
                        }
                        _ => {
                            x[2] = g.get(2, c1) - g.get(0, c1);
                            x[1] = x[2] - g.get(2, c2) + g.get(1, c2);
                        }
                    }
                    if rows_linked(&argmax_rows(&g, &x, 0b111), 0b111) {
                        expect.push(x);
                    }
                }
            }
        }
        expect.sort();
        expect.dedup();
        assert_eq!(vs, expect);
    }
}
