//! Tropical, Barvinok and Kapranov ranks.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;

use crate::arrangement::{argmax_rows, vertices, Exhausted};
use crate::config::Config;
use crate::det::grid_is_singular;
use crate::error::{Result, TropError};
use crate::matrix::{rank_one_factor, trop_matmul, TropMatrix};
use crate::numeric::{Grid, Numeric, ToScalar, Weight};
use crate::par;
use crate::scalar::TropScalar;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Tropical rank together with a non-singular minor attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalRank {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// False when the minor budget ran out before every larger minor was
    /// shown singular; `rank` is then only a lower bound.
    pub upper_verified: bool,
    /// Largest size not ruled out.
    pub upper_bound: usize,
}

fn first_nonsingular<T: Weight>(
    g: &Grid<T>,
    k: usize,
    limit: u64,
    cfg: &Config,
) -> (Option<(Vec<usize>, Vec<usize>)>, u64, bool) {
    let rc = combinations(g.rows, k);
    let cc = combinations(g.cols, k);
    let total = rc.len() as u64 * cc.len() as u64;
    let take = total.min(limit);
    let items: Vec<(u64, usize, usize)> = (0..take)
        .map(|idx| {
            (
                idx,
                (idx / cc.len() as u64) as usize,
                (idx % cc.len() as u64) as usize,
            )
        })
        .collect();
    let found = par::find_map_first(cfg.exec, items, |(idx, ri, ci)| {
        (!grid_is_singular(&g.sub(&rc[ri], &cc[ci]))).then_some((idx, ri, ci))
    });
    match found {
        Some((idx, ri, ci)) => (Some((rc[ri].clone(), cc[ci].clone())), idx + 1, true),
        None => (None, take, take == total),
    }
}

/// Row masks beyond this size make the subset tables too large; such
/// matrices go through the plain minor scan.
const SUBSET_SEARCH_MAX_ROWS: usize = 16;

/// Depth-first search over growing column sets.
///
/// For the chosen columns it keeps, per set of rows of the same size, the
/// minimum assignment value and whether it is attained once or more. A
/// column set with no uniquely attained entry is dropped together with all
/// its extensions: removing a matched row and column from a non-singular
/// minor leaves a non-singular minor.
struct ColumnSearch<'a, T> {
    g: &'a Grid<T>,
    /// Row masks by size, and each mask's position within its size.
    by_size: Vec<Vec<usize>>,
    slot: Vec<usize>,
    top: usize,
    best: usize,
    best_rows: usize,
    best_cols: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

type Table<T> = Vec<Option<(T, u8)>>;

impl<T: Weight> ColumnSearch<'_, T> {
    fn extend(&self, prev: &Table<T>, c: usize, j: usize) -> (Table<T>, Option<usize>) {
        let masks = &self.by_size[j + 1];
        let mut next: Table<T> = Vec::with_capacity(masks.len());
        let mut unique = None;
        for &mask in masks {
            let mut cell: Option<(T, u8)> = None;
            for i in (0..self.g.rows).filter(|i| mask >> i & 1 == 1) {
                let Some((v, n)) = &prev[self.slot[mask ^ 1 << i]] else {
                    continue;
                };
                let val = v.clone() + self.g.get(i, c).clone();
                cell = match cell {
                    None => Some((val, *n)),
                    Some((cur, cn)) => match val.cmp(&cur) {
                        std::cmp::Ordering::Less => Some((val, *n)),
                        std::cmp::Ordering::Equal => Some((cur, (cn + n).min(2))),
                        std::cmp::Ordering::Greater => Some((cur, cn)),
                    },
                };
            }
            if unique.is_none() && matches!(cell, Some((_, 1))) {
                unique = Some(mask);
            }
            next.push(cell);
        }
        (next, unique)
    }

    /// False when the node budget ran out.
    fn dfs(&mut self, prev: &Table<T>, start: usize) -> bool {
        let j = self.chosen.len();
        for c in start..self.g.cols {
            if self.best == self.top || j + self.g.cols - c <= self.best {
                return true;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let (next, unique) = self.extend(prev, c, j);
            let Some(mask) = unique else {
                continue;
            };
            self.chosen.push(c);
            if j + 1 > self.best {
                self.best = j + 1;
                self.best_rows = mask;
                self.best_cols = self.chosen.clone();
            }
            let finished = j + 1 == self.g.rows || self.dfs(&next, c + 1);
            self.chosen.pop();
            if !finished {
                return false;
            }
        }
        true
    }
}

fn transpose_grid<T: Clone>(g: &Grid<T>) -> Grid<T> {
    Grid {
        rows: g.cols,
        cols: g.rows,
        data: (0..g.cols)
            .flat_map(|j| (0..g.rows).map(move |i| g.get(i, j).clone()))
            .collect(),
    }
}

/// Exact rank by column search, or `None` when the matrix is too tall in
/// both orientations or the budget runs out.
fn column_search_rank<T: Weight>(g: &Grid<T>, cfg: &Config) -> Option<TropicalRank> {
    let flip = g.rows > g.cols;
    let owned;
    let h = if flip {
        owned = transpose_grid(g);
        &owned
    } else {
        g
    };
    if h.rows > SUBSET_SEARCH_MAX_ROWS {
        return None;
    }
    let mut by_size = vec![Vec::new(); h.rows + 1];
    let mut slot = vec![0; 1 << h.rows];
    for mask in 0..1usize << h.rows {
        let level = &mut by_size[mask.count_ones() as usize];
        slot[mask] = level.len();
        level.push(mask);
    }
    let mut search = ColumnSearch {
        g: h,
        by_size,
        slot,
        top: h.rows.min(h.cols),
        best: 0,
        best_rows: 0,
        best_cols: Vec::new(),
        chosen: Vec::new(),
        nodes: 0,
        budget: cfg.minor_budget,
    };
    let root: Table<T> = vec![Some((T::zero(), 1))];
    if !search.dfs(&root, 0) {
        return None;
    }
    let rows: Vec<usize> = (0..h.rows)
        .filter(|i| search.best_rows >> i & 1 == 1)
        .collect();
    let (rows, cols) = if flip {
        (search.best_cols, rows)
    } else {
        (rows, search.best_cols)
    };
    Some(TropicalRank {
        rank: search.best,
        rows,
        cols,
        upper_verified: true,
        upper_bound: search.best,
    })
}

fn tropical_rank_grid<T: Weight>(g: &Grid<T>, cfg: &Config) -> TropicalRank {
    if let Some(found) = column_search_rank(g, cfg) {
        return found;
    }
    let top = g.rows.min(g.cols);
    let mut spent = 0u64;
    let mut upper_bound = top;
    for k in (1..=top).rev() {
        let (hit, used, complete) = first_nonsingular(g, k, cfg.minor_budget - spent, cfg);
        spent += used;
        if let Some((rows, cols)) = hit {
            return TropicalRank {
                rank: k,
                rows,
                cols,
                upper_verified: upper_bound == k,
                upper_bound,
            };
        }
        if !complete {
            break;
        }
        upper_bound = k - 1;
    }
    // Budget gone: climb from 1x1 minors for a certified lower bound.
    let mut best = TropicalRank {
        rank: 1,
        rows: vec![0],
        cols: vec![0],
        upper_verified: false,
        upper_bound,
    };
    let mut spent = 0u64;
    for k in 2..=upper_bound {
        if spent >= cfg.minor_budget {
            break;
        }
        let (hit, used, _) = first_nonsingular(g, k, cfg.minor_budget - spent, cfg);
        spent += used;
        match hit {
            Some((rows, cols)) => {
                best.rank = k;
                best.rows = rows;
                best.cols = cols;
            }
            None => break,
        }
    }
    best.upper_verified = best.rank == upper_bound;
    best
}

pub fn tropical_rank(m: &TropMatrix) -> TropicalRank {
    tropical_rank_with(m, &Config::default())
}

/// Largest non-singular square minor.
pub fn tropical_rank_with(m: &TropMatrix, cfg: &Config) -> TropicalRank {
    match Numeric::from_matrix(m) {
        Numeric::Int { grid, .. } => tropical_rank_grid(&grid, cfg),
        Numeric::Big(grid) => tropical_rank_grid(&grid, cfg),
    }
}

/// Tropical rank of a 0/1 matrix as the longest chain of unions of column
/// zero sets.
pub fn tropical_rank_01(m: &TropMatrix) -> Result<usize> {
    if !m.is_zero_one() {
        return Err(TropError::domain("matrix has an entry other than 0 or 1"));
    }
    if m.rows() > 128 {
        return Err(TropError::resource("support sets are limited to 128 rows"));
    }
    let mut supports: Vec<u128> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let s = (0..m.rows())
            .filter(|&i| m.get(i, j).is_zero())
            .fold(0u128, |acc, i| acc | 1 << i);
        if s == 0 {
            return Err(TropError::domain(format!(
                "column {} has no zero entry",
                j + 1
            )));
        }
        supports.push(s);
    }
    let mut family: HashSet<u128> = supports.iter().copied().collect();
    let mut frontier: Vec<u128> = family.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        for &t in &supports {
            let u = s | t;
            if family.insert(u) {
                frontier.push(u);
            }
        }
    }
    let mut sets: Vec<u128> = family.into_iter().collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let mut chain = vec![1usize; sets.len()];
    for i in 0..sets.len() {
        for j in 0..i {
            if sets[j] & !sets[i] == 0 && sets[j] != sets[i] {
                chain[i] = chain[i].max(chain[j] + 1);
            }
        }
    }
    Ok(chain.into_iter().max().unwrap_or(0))
}

/// Outcome of asking whether `M = X ⊙ Y` with `r` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarvinokDecision {
    Witness {
        x: TropMatrix,
        y: TropMatrix,
    },
    Impossible,
    /// The search budget ran out first.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarvinokRank {
    Exact {
        rank: usize,
        x: TropMatrix,
        y: TropMatrix,
    },
    Bounds {
        lo: usize,
        hi: usize,
    },
}

impl BarvinokRank {
    pub fn lo(&self) -> usize {
        match self {
            BarvinokRank::Exact { rank, .. } => *rank,
            BarvinokRank::Bounds { lo, .. } => *lo,
        }
    }

    pub fn hi(&self) -> usize {
        match self {
            BarvinokRank::Exact { rank, .. } => *rank,
            BarvinokRank::Bounds { hi, .. } => *hi,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            BarvinokRank::Exact { rank, .. } => Some(*rank),
            BarvinokRank::Bounds { .. } => None,
        }
    }
}

/// `r` factors for any matrix with `r >= min(d, n)`.
fn trivial_factorization(m: &TropMatrix, r: usize) -> Result<(TropMatrix, TropMatrix)> {
    let (d, n) = m.shape();
    let big = m.max_entry() - m.min_entry();
    let diag = |k: usize| {
        TropMatrix::from_fn(k, k, |i, j| {
            if i == j {
                TropScalar::zero()
            } else {
                big.clone()
            }
        })
    };
    let (x, y) = if n <= d {
        (m.clone(), diag(n)?)
    } else {
        (diag(d)?, m.clone())
    };
    pad_factors(x, y, r)
}

/// Repeats the first factor until there are `r` of them.
fn pad_factors(x: TropMatrix, y: TropMatrix, r: usize) -> Result<(TropMatrix, TropMatrix)> {
    let k = x.cols();
    if k >= r {
        return Ok((x, y));
    }
    let x = TropMatrix::from_fn(x.rows(), r, |i, j| {
        x.get(i, if j < k { j } else { 0 }).clone()
    })?;
    let y = TropMatrix::from_fn(r, y.cols(), |i, j| {
        y.get(if i < k { i } else { 0 }, j).clone()
    })?;
    Ok((x, y))
}

fn verified(m: &TropMatrix, x: TropMatrix, y: TropMatrix) -> Result<BarvinokDecision> {
    if trop_matmul(&x, &y)? != *m {
        return Err(TropError::internal(
            "factorization does not reproduce the matrix",
        ));
    }
    Ok(BarvinokDecision::Witness { x, y })
}

/// One rank-one term `a_i + b_j` of a factorization, dominating `M` and
/// touching it on `tight`.
struct Term<T> {
    a: Vec<T>,
    b: Vec<T>,
    tight: Vec<u64>,
}

fn bit(set: &[u64], e: usize) -> bool {
    set[e / 64] >> (e % 64) & 1 == 1
}

fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Rank-one terms at the vertices of `{(a, b) : a_i + b_j >= m_ij}`, keeping
/// only those whose touching set is maximal.
fn maximal_terms<T: Weight>(
    g: &Grid<T>,
    cfg: &Config,
) -> std::result::Result<Vec<Term<T>>, Exhausted> {
    let (d, n) = (g.rows, g.cols);
    let words = (d * n).div_ceil(64);
    let neg = g.negate();
    let mut terms: Vec<Term<T>> = vertices(&neg, cfg.vertex_budget)?
        .into_iter()
        .map(|x| {
            let argmax = argmax_rows(&neg, &x, u64::MAX >> (64 - d));
            let mut tight = vec![0u64; words];
            for (c, &rows) in argmax.iter().enumerate() {
                for r in (0..d).filter(|&r| rows >> r & 1 == 1) {
                    let e = r * n + c;
                    tight[e / 64] |= 1 << (e % 64);
                }
            }
            let a: Vec<T> = x.iter().map(|v| -v.clone()).collect();
            let b: Vec<T> = (0..n)
                .map(|c| {
                    (0..d)
                        .map(|r| g.get(r, c).clone() - a[r].clone())
                        .max()
                        .expect("d >= 1")
                })
                .collect();
            Term { a, b, tight }
        })
        .collect();
    terms.sort_by(|p, q| {
        popcount(&q.tight)
            .cmp(&popcount(&p.tight))
            .then_with(|| p.a.cmp(&q.a))
    });
    let mut keep: Vec<Term<T>> = Vec::new();
    for t in terms {
        if !keep.iter().any(|k| subset(&t.tight, &k.tight)) {
            keep.push(t);
        }
    }
    Ok(keep)
}

struct CoverSearch<'a> {
    sets: &'a [Vec<u64>],
    by_entry: Vec<Vec<usize>>,
    entries: usize,
    max_size: usize,
    nodes: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        (0..self.entries).find(|&e| !bit(covered, e))
    }

    fn search(
        &mut self,
        covered: &mut Vec<u64>,
        left: usize,
        chosen: &mut Vec<usize>,
    ) -> std::result::Result<bool, Exhausted> {
        let Some(e) = self.first_uncovered(covered) else {
            return Ok(true);
        };
        if left == 0 {
            return Ok(false);
        }
        let uncovered = self.entries - popcount(covered);
        if uncovered > left * self.max_size {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        for idx in 0..self.by_entry[e].len() {
            let s = self.by_entry[e][idx];
            let saved = covered.clone();
            for (w, x) in covered.iter_mut().zip(&self.sets[s]) {
                *w |= x;
            }
            chosen.push(s);
            if self.search(covered, left - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            *covered = saved;
        }
        Ok(false)
    }
}

/// Picks `r` touching sets covering every entry, or proves none exist.
fn cover<T: Weight>(
    g: &Grid<T>,
    terms: &[Term<T>],
    r: usize,
    cfg: &Config,
) -> std::result::Result<Option<Vec<usize>>, Exhausted> {
    let entries = g.rows * g.cols;
    let sets: Vec<Vec<u64>> = terms.iter().map(|t| t.tight.clone()).collect();
    let by_entry: Vec<Vec<usize>> = (0..entries)
        .map(|e| (0..sets.len()).filter(|&s| bit(&sets[s], e)).collect())
        .collect();
    let max_size = sets.iter().map(|s| popcount(s)).max().unwrap_or(0);
    // Every cover uses some term through entry 0; branch on it in parallel.
    let first: Vec<usize> = by_entry[0].clone();
    let outcome = par::find_map_first(cfg.exec, first, |s| {
        let mut search = CoverSearch {
            sets: &sets,
            by_entry: by_entry.clone(),
            entries,
            max_size,
            nodes: 0,
            budget: cfg.barvinok_budget,
        };
        let mut covered = sets[s].clone();
        let mut chosen = vec![s];
        match search.search(&mut covered, r - 1, &mut chosen) {
            Ok(true) => Some(Ok(chosen)),
            Ok(false) => None,
            Err(Exhausted) => Some(Err(Exhausted)),
        }
    });
    match outcome {
        Some(Ok(chosen)) => Ok(Some(chosen)),
        Some(Err(e)) => Err(e),
        None => Ok(None),
    }
}

fn factor_matrices<T: Weight + ToScalar>(
    terms: &[&Term<T>],
    scale: Option<&BigInt>,
) -> Result<(TropMatrix, TropMatrix)> {
    let d = terms[0].a.len();
    let n = terms[0].b.len();
    let r = terms.len();
    let x = TropMatrix::from_fn(d, r, |i, k| terms[k].a[i].to_scalar(scale))?;
    let y = TropMatrix::from_fn(r, n, |k, j| terms[k].b[j].to_scalar(scale))?;
    Ok((x, y))
}

fn decide_grid<T: Weight + ToScalar>(
    m: &TropMatrix,
    g: &Grid<T>,
    scale: Option<&BigInt>,
    r: usize,
    cfg: &Config,
) -> Result<BarvinokDecision> {
    if g.rows > 64 {
        return Err(TropError::resource("Barvinok search needs min(d, n) <= 64"));
    }
    let terms = match maximal_terms(g, cfg) {
        Ok(t) => t,
        Err(Exhausted) => return Ok(BarvinokDecision::Undecided),
    };
    match cover(g, &terms, r, cfg) {
        Err(Exhausted) => Ok(BarvinokDecision::Undecided),
        Ok(None) => Ok(BarvinokDecision::Impossible),
        Ok(Some(chosen)) => {
            let picked: Vec<&Term<T>> = chosen.iter().map(|&s| &terms[s]).collect();
            let (x, y) = factor_matrices(&picked, scale)?;
            let (x, y) = pad_factors(x, y, r)?;
            verified(m, x, y)
        }
    }
}

pub fn barvinok_decision(m: &TropMatrix, r: usize) -> Result<BarvinokDecision> {
    barvinok_decision_with(m, r, &Config::default())
}

/// Decides whether `M = X ⊙ Y` with `X` having `r` columns.
///
/// A factorization exists iff the entries of `M` can be covered by the
/// touching sets of `r` vertices of the polyhedron of dominating rank-one
/// terms; the cover is found by exhaustive branching within the budget.
pub fn barvinok_decision_with(m: &TropMatrix, r: usize, cfg: &Config) -> Result<BarvinokDecision> {
    if r == 0 {
        return Err(TropError::domain("factor count must be positive"));
    }
    let (d, n) = m.shape();
    if r >= d.min(n) {
        let (x, y) = trivial_factorization(m, r)?;
        return verified(m, x, y);
    }
    if r == 1 {
        return match rank_one_factor(m) {
            Some((a, b)) => {
                let x = TropMatrix::column_vector(&a)?;
                let y = TropMatrix::row_vector(&b)?;
                verified(m, x, y)
            }
            None => Ok(BarvinokDecision::Impossible),
        };
    }
    // Search on the orientation with fewer rows, then transpose back.
    if d > n {
        return Ok(match barvinok_decision_with(&m.transpose(), r, cfg)? {
            BarvinokDecision::Witness { x, y } => BarvinokDecision::Witness {
                x: y.transpose(),
                y: x.transpose(),
            },
            other => other,
        });
    }
    match Numeric::from_matrix(m) {
        Numeric::Int { grid, scale } => decide_grid(m, &grid, Some(&scale), r, cfg),
        Numeric::Big(grid) => decide_grid(m, &grid, None, r, cfg),
    }
}

pub fn barvinok_rank(m: &TropMatrix) -> Result<BarvinokRank> {
    barvinok_rank_with(m, &Config::default())
}

/// Smallest number of rank-one terms, searched upward from the tropical rank.
pub fn barvinok_rank_with(m: &TropMatrix, cfg: &Config) -> Result<BarvinokRank> {
    let trop = tropical_rank_with(m, cfg);
    barvinok_rank_from(m, trop.rank, cfg)
}

fn barvinok_rank_from(m: &TropMatrix, lo: usize, cfg: &Config) -> Result<BarvinokRank> {
    let top = m.rows().min(m.cols());
    for r in lo.max(1)..=top {
        match barvinok_decision_with(m, r, cfg)? {
            BarvinokDecision::Witness { x, y } => return Ok(BarvinokRank::Exact { rank: r, x, y }),
            BarvinokDecision::Impossible => {}
            BarvinokDecision::Undecided => return Ok(BarvinokRank::Bounds { lo: r, hi: top }),
        }
    }
    Err(TropError::internal("no factorization found at full size"))
}

/// Whether the Barvinok rank is at most 2, decided on 3x3 minors.
pub fn barvinok_rank2_fast(m: &TropMatrix) -> Result<bool> {
    barvinok_rank2_fast_with(m, &Config::default())
}

pub fn barvinok_rank2_fast_with(m: &TropMatrix, cfg: &Config) -> Result<bool> {
    let (d, n) = m.shape();
    if d.min(n) <= 2 {
        return Ok(true);
    }
    let rows = combinations(d, 3);
    let cols = combinations(n, 3);
    let pairs: Vec<(usize, usize)> = (0..rows.len())
        .flat_map(|a| (0..cols.len()).map(move |b| (a, b)))
        .collect();
    let inner = Config {
        exec: crate::par::Exec::Sequential,
        ..cfg.clone()
    };
    let failure = par::find_map_first(cfg.exec, pairs, |(a, b)| {
        let minor = match m.submatrix(&rows[a], &cols[b]) {
            Ok(minor) => minor,
            Err(e) => return Some(Err(e)),
        };
        match barvinok_decision_with(&minor, 2, &inner) {
            Ok(BarvinokDecision::Witness { .. }) => None,
            Ok(BarvinokDecision::Impossible) => Some(Ok(())),
            Ok(BarvinokDecision::Undecided) => Some(Err(TropError::internal(
                "3x3 Barvinok search ran out of budget",
            ))),
            Err(e) => Some(Err(e)),
        }
    });
    match failure {
        None => Ok(true),
        Some(Ok(())) => Ok(false),
        Some(Err(e)) => Err(e),
    }
}

/// Barvinok rank of the `n x n` classical identity: the smallest `r` with
/// `n <= binom(r, floor(r/2))`.
pub fn cn_barvinok_rank(n: u64) -> u64 {
    if n <= 1 {
        return 1;
    }
    (1..)
        .find(|&r| n <= binomial(r, r / 2))
        .expect("central binomials grow")
}

/// Which fact pinned the Kapranov rank exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KapranovRule {
    /// Tropical rank 1: rank-one matrices lift to rank one.
    RankOne,
    /// Tropical rank 2 always lifts to rank 2.
    RankTwo,
    /// Tropical rank at least `min(d, n) - 1`.
    NearFull,
}

impl KapranovRule {
    pub fn tag(self) -> &'static str {
        match self {
            KapranovRule::RankOne => "R1",
            KapranovRule::RankTwo => "R2",
            KapranovRule::NearFull => "R3",
        }
    }
}

impl fmt::Display for KapranovRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KapranovReport {
    pub lo: usize,
    pub hi: usize,
    pub exact: bool,
    pub rule: Option<KapranovRule>,
}

fn exact_rule(trop: &TropicalRank, d: usize, n: usize) -> Option<KapranovRule> {
    if !trop.upper_verified {
        return None;
    }
    match trop.rank {
        1 => Some(KapranovRule::RankOne),
        2 => Some(KapranovRule::RankTwo),
        r if r + 1 >= d.min(n) => Some(KapranovRule::NearFull),
        _ => None,
    }
}

fn kapranov_from(
    trop: &TropicalRank,
    barvinok: Option<&BarvinokRank>,
    d: usize,
    n: usize,
) -> KapranovReport {
    let lo = trop.rank;
    match exact_rule(trop, d, n) {
        Some(rule) => KapranovReport {
            lo,
            hi: lo,
            exact: true,
            rule: Some(rule),
        },
        None => KapranovReport {
            lo,
            hi: barvinok.map_or(d.min(n), |b| b.hi()),
            exact: false,
            rule: None,
        },
    }
}

pub fn kapranov_report(m: &TropMatrix) -> Result<KapranovReport> {
    kapranov_report_with(m, &Config::default())
}

/// Kapranov rank bounds over the complex Puiseux field: the tropical rank
/// below, the Barvinok rank above, exact in the cases tagged by the rule.
pub fn kapranov_report_with(m: &TropMatrix, cfg: &Config) -> Result<KapranovReport> {
    let trop = tropical_rank_with(m, cfg);
    let (d, n) = m.shape();
    if exact_rule(&trop, d, n).is_some() {
        return Ok(kapranov_from(&trop, None, d, n));
    }
    let barvinok = barvinok_rank_from(m, trop.rank, cfg)?;
    Ok(kapranov_from(&trop, Some(&barvinok), d, n))
}

/// All three ranks of one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub tropical: TropicalRank,
    pub barvinok: BarvinokRank,
    pub kapranov: KapranovReport,
}

impl RankReport {
    /// Tropical rank <= Kapranov bounds <= Barvinok rank, and a Barvinok
    /// witness, when present, reproduces `m`.
    pub fn is_consistent(&self, m: &TropMatrix) -> bool {
        let top = m.rows().min(m.cols());
        let chain = 1 <= self.tropical.rank
            && self.tropical.rank <= self.kapranov.lo
            && self.kapranov.lo <= self.kapranov.hi
            && self.kapranov.hi <= self.barvinok.hi()
            && self.barvinok.hi() <= top;
        let witness = match &self.barvinok {
            BarvinokRank::Exact { x, y, .. } => trop_matmul(x, y).is_ok_and(|p| p == *m),
            BarvinokRank::Bounds { .. } => true,
        };
        chain && witness
    }
}

pub fn rank_report(m: &TropMatrix) -> Result<RankReport> {
    rank_report_with(m, &Config::default())
}

pub fn rank_report_with(m: &TropMatrix, cfg: &Config) -> Result<RankReport> {
    let tropical = tropical_rank_with(m, cfg);
    let barvinok = barvinok_rank_from(m, tropical.rank, cfg)?;
    let (d, n) = m.shape();
    let kapranov = kapranov_from(&tropical, Some(&barvinok), d, n);
    Ok(RankReport {
        tropical,
        barvinok,
        kapranov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{classical_identity, trop_add};

    fn mat(rows: &[&[i64]]) -> TropMatrix {
        TropMatrix::from_int_rows(rows).unwrap()
    }

    fn example() -> TropMatrix {
        mat(&[&[0, 4, 2], &[2, 1, 0], &[2, 4, 3]])
    }

    #[test]
    fn column_search_matches_minor_scan() {
        use proptest::prelude::*;
        let strategy = (1usize..=6, 1usize..=6).prop_flat_map(|(d, n)| {
            proptest::collection::vec(-2i64..=2, d * n).prop_map(move |v| (d, n, v))
        });
        proptest!(ProptestConfig::with_cases(200), |((d, n, v) in strategy)| {
            let g = Grid { rows: d, cols: n, data: v.into_iter().map(i128::from).collect() };
            let scan = (1..=d.min(n))
                .rev()
                .find(|&k| {
                    combinations(d, k).iter().any(|r| combinations(n, k).iter().any(|c| !grid_is_singular(&g.sub(r, c))))
                })
                .unwrap();
            let found = column_search_rank(&g, &Config::default()).unwrap();
            prop_assert_eq!(found.rank, scan);
            prop_assert!(!grid_is_singular(&g.sub(&found.rows, &found.cols)));
        });
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(
                    combinations(n, k).len() as u64,
                    binomial(n as u64, k as u64)
                );
            }
        }
    }

    #[test]
    fn example_ranks() {
        let m = example();
        let t = tropical_rank(&m);
        assert_eq!(t.rank, 2);
        assert!(t.upper_verified);
        let b = barvinok_rank(&m).unwrap();
        assert_eq!(b.exact(), Some(2));
        assert!(barvinok_rank2_fast(&m).unwrap());
        let k = kapranov_report(&m).unwrap();
        assert_eq!(
            (k.lo, k.hi, k.exact, k.rule),
            (2, 2, true, Some(KapranovRule::RankTwo))
        );
    }

    #[test]
    fn identity_ranks_small() {
        for n in 3..=5usize {
            let c = classical_identity(n).unwrap();
            assert_eq!(tropical_rank(&c).rank, 2);
            assert_eq!(tropical_rank_01(&c).unwrap(), 2);
            let b = barvinok_rank(&c).unwrap();
            assert_eq!(b.exact(), Some(cn_barvinok_rank(n as u64) as usize));
        }
        assert!(!barvinok_rank2_fast(&classical_identity(3).unwrap()).unwrap());
    }

    #[test]
    fn central_binomial_formula() {
        assert_eq!(cn_barvinok_rank(1), 1);
        assert_eq!(cn_barvinok_rank(2), 2);
        assert_eq!(cn_barvinok_rank(3), 3);
        assert_eq!(cn_barvinok_rank(4), 4);
        assert_eq!(cn_barvinok_rank(6), 4);
        assert_eq!(cn_barvinok_rank(7), 5);
        assert_eq!(cn_barvinok_rank(36), 8);
    }

    #[test]
    fn zero_one_rank_validates_input() {
        assert!(matches!(
            tropical_rank_01(&mat(&[&[0, 2]])),
            Err(TropError::Domain(_))
        ));
        assert!(matches!(
            tropical_rank_01(&mat(&[&[0, 1], &[0, 1]])),
            Err(TropError::Domain(_))
        ));
        assert_eq!(
            tropical_rank_01(&mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap(),
            1
        );
    }

    #[test]
    fn trivial_witness_at_full_size() {
        let m = mat(&[&[3, -1, 0, 2], &[5, 5, 7, 1], &[0, 4, -2, 9]]);
        match barvinok_decision(&m, 3).unwrap() {
            BarvinokDecision::Witness { x, y } => assert_eq!(trop_matmul(&x, &y).unwrap(), m),
            other => panic!("{other:?}"),
        }
        match barvinok_decision(&m, 5).unwrap() {
            BarvinokDecision::Witness { x, y } => {
                assert_eq!(x.cols(), 5);
                assert_eq!(trop_matmul(&x, &y).unwrap(), m);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn three_by_three_identity_needs_three_terms() {
        let c3 = classical_identity(3).unwrap();
        assert_eq!(
            barvinok_decision(&c3, 2).unwrap(),
            BarvinokDecision::Impossible
        );
    }

    #[test]
    fn budget_yields_bounds() {
        let c5 = classical_identity(5).unwrap();
        let cfg = Config {
            barvinok_budget: 1,
            ..Config::default()
        };
        match barvinok_rank_with(&c5, &cfg).unwrap() {
            BarvinokRank::Bounds { lo, hi } => assert!(lo <= 4 && hi == 5),
            BarvinokRank::Exact { rank, .. } => assert_eq!(rank, 4),
        }
    }

    #[test]
    fn minor_budget_gives_certified_lower_bound() {
        let c = classical_identity(6).unwrap();
        let cfg = Config {
            minor_budget: 10,
            ..Config::default()
        };
        let t = tropical_rank_with(&c, &cfg);
        assert!(!t.upper_verified);
        assert!(t.rank <= 2);
        let minor = c.submatrix(&t.rows, &t.cols).unwrap();
        assert!(!crate::det::trop_det(&minor).unwrap().is_singular());
    }

    #[test]
    fn sum_of_factorization_terms() {
        // the decomposition (0,2,2)+(0,4,2) and (3,0,3)+(2,1,0)
        let t = |a: &[i64], b: &[i64]| {
            let a: Vec<TropScalar> = a.iter().map(|&v| v.into()).collect();
            let b: Vec<TropScalar> = b.iter().map(|&v| v.into()).collect();
            crate::matrix::outer(&a, &b).unwrap()
        };
        let sum = trop_add(&t(&[0, 2, 2], &[0, 4, 2]), &t(&[3, 0, 3], &[2, 1, 0])).unwrap();
        assert_eq!(sum, example());
    }
}
