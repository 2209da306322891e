//! Rank-2 lifts of matrices of tropical rank 2.
//!
//! The columns of such a matrix span a tree. Seen from a point `x` of the
//! tree, the normalized matrix `M'` (columns shifted by `x`, then to minimum
//! zero) splits into strictly positive blocks on a zero background. Inside a
//! block, after subtracting its minimum, the same picture repeats. Giving the
//! rows `a_r` and columns `p_j` one fresh constant per block at each level,
//! nested by powers of `t`, yields `deg(a_r - p_j) = M'_rj`, and the matrix
//! `a_r - p_j` plainly has rank at most 2.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::puiseux::{valuation_matrix, PuiseuxMatrix, PuiseuxPoly};
use super::{barvinok_lift_from_factors, lift_rank};
use crate::config::Config;
use crate::convex::enumerate_hull_cells_with;
use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::numeric::{big_grid, Grid};
use crate::rank::{
    barvinok_decision_with, barvinok_rank2_fast_with, tropical_rank_with, BarvinokDecision,
};
use crate::scalar::TropScalar;
use crate::solve::in_tropical_hull;

/// One strictly positive block of the normalized matrix, in original
/// row and column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: TropMatrix,
}

/// Block structure of `M'` around a point of the tree, and how each column
/// of the lift combines two fixed vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2LiftPlan {
    pub pivot: Vec<TropScalar>,
    /// `M'_rj = m_rj - x_r - col_offsets[j]`.
    pub normalized: TropMatrix,
    pub col_offsets: Vec<TropScalar>,
    /// Zero rows first, then the rows of each block.
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
    pub blocks: Vec<PlanBlock>,
    /// Lift of a zero column: `u1_r = a_r`.
    pub u1: Vec<PuiseuxPoly>,
    /// The all-ones vector.
    pub u2: Vec<PuiseuxPoly>,
    /// Column `j` of the normalized lift is `lambda_j u1 + mu_j u2`.
    pub lambda: Vec<PuiseuxPoly>,
    pub mu: Vec<PuiseuxPoly>,
}

impl Rank2LiftPlan {
    /// Rebuilds `M'` from its blocks on a zero background.
    pub fn reassemble(&self) -> Result<TropMatrix> {
        let (d, n) = self.normalized.shape();
        let mut data = vec![TropScalar::zero(); d * n];
        for b in &self.blocks {
            for (bi, &r) in b.rows.iter().enumerate() {
                for (bj, &c) in b.cols.iter().enumerate() {
                    data[r * n + c] = b.entries.get(bi, bj).clone();
                }
            }
        }
        TropMatrix::new(d, n, data)
    }

    /// The lift of `M'` given by the plan.
    pub fn normalized_lift(&self) -> Result<PuiseuxMatrix> {
        let (d, n) = self.normalized.shape();
        PuiseuxMatrix::from_fn(d, n, |r, j| {
            &(&self.lambda[j] * &self.u1[r]) + &(&self.mu[j] * &self.u2[r])
        })
    }
}

/// How a lift was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank2Method {
    /// The tree is a path: sum of two monomial rank-one terms.
    Path,
    /// Three columns around a node of degree three.
    Star,
    /// Nested block constants.
    Nested,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Lift {
    pub lift: PuiseuxMatrix,
    pub method: Rank2Method,
    pub plan: Option<Rank2LiftPlan>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components of the bipartite graph of positive entries, as (rows, cols)
/// index lists into `g`, ordered by smallest member.
fn positive_components(g: &Grid<BigRational>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (d, n) = (g.rows, g.cols);
    let mut uf = UnionFind::new(d + n);
    for r in 0..d {
        for c in 0..n {
            if *g.get(r, c) > BigRational::zero() {
                uf.union(r, d + c);
            }
        }
    }
    let mut comps: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for v in 0..d + n {
        let root = uf.find(v);
        let slot = match comps.iter().position(|c| c.0 == root) {
            Some(k) => k,
            None => {
                comps.push((root, Vec::new(), Vec::new()));
                comps.len() - 1
            }
        };
        if v < d {
            comps[slot].1.push(v);
        } else {
            comps[slot].2.push(v - d);
        }
    }
    comps.into_iter().map(|(_, r, c)| (r, c)).collect()
}

fn not_tree(msg: &str) -> TropError {
    TropError::domain(format!("columns do not span a tree from this point: {msg}"))
}

/// Row values `a` and column values `p` with `deg(a_r - p_j) = g[r][j]`,
/// for a non-negative `g` whose positive entries form complete blocks at
/// every level.
fn nested_constants(g: &Grid<BigRational>) -> Result<(Vec<PuiseuxPoly>, Vec<PuiseuxPoly>)> {
    let mut a = vec![PuiseuxPoly::zero(); g.rows];
    let mut p = vec![PuiseuxPoly::zero(); g.cols];
    for (k, (rows, cols)) in positive_components(g).into_iter().enumerate() {
        let omega = PuiseuxPoly::constant(BigRational::from_integer((k as i64 + 1).into()));
        if rows.is_empty() || cols.is_empty() {
            for &r in &rows {
                a[r] = omega.clone();
            }
            for &c in &cols {
                p[c] = omega.clone();
            }
            continue;
        }
        let sub = g.sub(&rows, &cols);
        if sub.data.iter().any(|v| *v <= BigRational::zero()) {
            return Err(not_tree("a block has a zero entry"));
        }
        let delta = sub.data.iter().min().expect("nonempty").clone();
        let shifted = Grid {
            rows: sub.rows,
            cols: sub.cols,
            data: sub.data.iter().map(|v| v - &delta).collect(),
        };
        let (a2, p2) = nested_constants(&shifted)?;
        for (i, &r) in rows.iter().enumerate() {
            a[r] = &omega + &a2[i].shift(&delta);
        }
        for (j, &c) in cols.iter().enumerate() {
            p[c] = &omega + &p2[j].shift(&delta);
        }
    }
    Ok((a, p))
}

fn normalize(m: &TropMatrix, x: &[TropScalar]) -> Result<(TropMatrix, Vec<TropScalar>)> {
    let shifted = TropMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c) - &x[r])?;
    let offsets: Vec<TropScalar> = (0..m.cols())
        .map(|c| shifted.col(c).into_iter().min().expect("d >= 1"))
        .collect();
    let normalized =
        TropMatrix::from_fn(m.rows(), m.cols(), |r, c| shifted.get(r, c) - &offsets[c])?;
    Ok((normalized, offsets))
}

fn check_rank_two(m: &TropMatrix, cfg: &Config) -> Result<()> {
    let t = tropical_rank_with(m, cfg);
    if t.rank != 2 || !t.upper_verified {
        return Err(TropError::domain(format!(
            "tropical rank is {}, not 2",
            t.rank
        )));
    }
    Ok(())
}

/// Splits the normalized matrix around the hull point `x` into blocks.
pub fn rank2_block_decomposition(m: &TropMatrix, x: &[TropScalar]) -> Result<Rank2LiftPlan> {
    if x.len() != m.rows() {
        return Err(TropError::shape(format!(
            "point has {} coordinates, matrix has {} rows",
            x.len(),
            m.rows()
        )));
    }
    check_rank_two(m, &Config::default())?;
    if !in_tropical_hull(m, x)? {
        return Err(TropError::domain(
            "the point is not in the tropical convex hull of the columns",
        ));
    }
    decompose(m, x)
}

fn decompose(m: &TropMatrix, x: &[TropScalar]) -> Result<Rank2LiftPlan> {
    let (normalized, col_offsets) = normalize(m, x)?;
    let g = big_grid(&normalized);
    let comps = positive_components(&g);
    let mut blocks = Vec::new();
    let mut border_rows = Vec::new();
    let mut border_cols = Vec::new();
    for (rows, cols) in comps {
        if rows.is_empty() || cols.is_empty() {
            border_rows.extend(rows);
            border_cols.extend(cols);
            continue;
        }
        let entries = normalized.submatrix(&rows, &cols)?;
        if entries.entries().iter().any(|v| !v.is_positive()) {
            return Err(not_tree("a block has a zero entry"));
        }
        for r in combinations2(rows.len()) {
            for c in combinations2(cols.len()) {
                let mut four = [
                    entries.get(r.0, c.0),
                    entries.get(r.0, c.1),
                    entries.get(r.1, c.0),
                    entries.get(r.1, c.1),
                ];
                four.sort();
                if four[0] != four[1] {
                    return Err(not_tree("a 2x2 minor of a block has a unique minimum"));
                }
            }
        }
        blocks.push(PlanBlock {
            rows,
            cols,
            entries,
        });
    }
    let row_order: Vec<usize> = border_rows
        .iter()
        .chain(blocks.iter().flat_map(|b| &b.rows))
        .copied()
        .collect();
    let col_order: Vec<usize> = border_cols
        .iter()
        .chain(blocks.iter().flat_map(|b| &b.cols))
        .copied()
        .collect();
    let (a, p) = nested_constants(&g)?;
    let plan = Rank2LiftPlan {
        pivot: x.to_vec(),
        normalized,
        col_offsets,
        row_order,
        col_order,
        blocks,
        u1: a,
        u2: vec![PuiseuxPoly::one(); m.rows()],
        lambda: vec![PuiseuxPoly::one(); m.cols()],
        mu: p.iter().map(|v| -v).collect(),
    };
    if plan.reassemble()? != plan.normalized {
        return Err(TropError::internal(
            "blocks do not reassemble the normalized matrix",
        ));
    }
    Ok(plan)
}

fn combinations2(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// A node of the tree with the most incident edges, lexicographically
/// smallest among ties.
fn pivot_node(m: &TropMatrix, cfg: &Config) -> Result<Vec<TropScalar>> {
    let cfg = cfg.clone().with_hull_limits(m.rows(), m.cols());
    let cells = enumerate_hull_cells_with(m, &cfg)?;
    let edges: Vec<_> = cells.iter().filter(|c| c.dim == 1).collect();
    cells
        .iter()
        .filter(|c| c.dim == 0)
        .map(|v| {
            let degree = edges.iter().filter(|e| v.ty.is_face_of(&e.ty)).count();
            (degree, &v.witness)
        })
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
        .map(|(_, w)| w.clone())
        .ok_or_else(|| TropError::internal("tree without nodes"))
}

/// The three-column lift: in each row the positive entry `α` becomes
/// `-t^α`, the zeros `-1` and `1 + t^α` in column order; a zero row
/// becomes `(-1, -1, 2)`. Every row sums to zero.
fn star_lift(normalized: &TropMatrix) -> Result<Option<PuiseuxMatrix>> {
    if normalized.cols() != 3 {
        return Ok(None);
    }
    let mut rows = Vec::with_capacity(normalized.rows());
    for r in 0..normalized.rows() {
        let row = normalized.row(r);
        let positive: Vec<usize> = (0..3).filter(|&c| row[c].is_positive()).collect();
        let entries = match positive[..] {
            [] => vec![
                PuiseuxPoly::int_term(-1, 0),
                PuiseuxPoly::int_term(-1, 0),
                PuiseuxPoly::int_term(2, 0),
            ],
            [c] => {
                let alpha = row[c].as_rational().clone();
                let t_alpha = PuiseuxPoly::monomial(BigRational::one(), alpha.clone());
                let mut zeros =
                    vec![PuiseuxPoly::int_term(-1, 0), &PuiseuxPoly::one() + &t_alpha].into_iter();
                (0..3)
                    .map(|k| {
                        if k == c {
                            PuiseuxPoly::monomial(-BigRational::one(), alpha.clone())
                        } else {
                            zeros.next().expect("two zeros")
                        }
                    })
                    .collect()
            }
            _ => return Ok(None),
        };
        rows.push(entries);
    }
    PuiseuxMatrix::from_rows(rows).map(Some)
}

fn unnormalize(
    f: &PuiseuxMatrix,
    x: &[TropScalar],
    offsets: &[TropScalar],
) -> Result<PuiseuxMatrix> {
    PuiseuxMatrix::from_fn(f.rows(), f.cols(), |r, c| {
        f.get(r, c).shift((&x[r] + &offsets[c]).as_rational())
    })
}

fn verify(m: &TropMatrix, f: PuiseuxMatrix) -> Result<PuiseuxMatrix> {
    if valuation_matrix(&f)? != *m {
        return Err(TropError::internal("rank-2 lift has the wrong degrees"));
    }
    if lift_rank(&f) != 2 {
        return Err(TropError::internal("rank-2 lift has the wrong rank"));
    }
    Ok(f)
}

pub fn rank2_lift(m: &TropMatrix) -> Result<PuiseuxMatrix> {
    rank2_lift_with(m, &Config::default()).map(|l| l.lift)
}

/// A verified rank-2 lift of a matrix of tropical rank 2.
pub fn rank2_lift_with(m: &TropMatrix, cfg: &Config) -> Result<Rank2Lift> {
    check_rank_two(m, cfg)?;
    if barvinok_rank2_fast_with(m, cfg)? {
        return match barvinok_decision_with(m, 2, cfg)? {
            BarvinokDecision::Witness { x, y } => Ok(Rank2Lift {
                lift: verify(m, barvinok_lift_from_factors(m, &x, &y)?)?,
                method: Rank2Method::Path,
                plan: None,
            }),
            _ => Err(TropError::internal(
                "3x3 minors allow two terms but the whole matrix does not",
            )),
        };
    }
    let x = pivot_node(m, cfg)?;
    let plan = decompose(m, &x)?;
    let (normalized_lift, method) = match star_lift(&plan.normalized)? {
        Some(f) => (f, Rank2Method::Star),
        None => (plan.normalized_lift()?, Rank2Method::Nested),
    };
    let lift = verify(m, unnormalize(&normalized_lift, &x, &plan.col_offsets)?)?;
    Ok(Rank2Lift {
        lift,
        method,
        plan: Some(plan),
    })
}
