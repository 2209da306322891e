//! Types of points and the bounded cells of the type decomposition.
//!
//! For a `d x n` matrix the columns are points of the tropical projective
//! space. A point `x` has type `S` with column `i` in `S_j` iff coordinate `j`
//! maximizes `x_j - m_ji`. The bounded cells (every `S_j` nonempty) make up
//! the tropical convex hull of the columns.

use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;

use crate::arrangement::{argmax_rows, vertices};
use crate::config::Config;
use crate::diffcon::DiffConstraints;
use crate::error::{Result, TropError};
use crate::matrix::{normalize_projective, TropMatrix};
use crate::numeric::{big_grid, Grid, Numeric, Weight};
use crate::par;
use crate::scalar::TropScalar;

/// Most columns a type can index.
pub const MAX_TYPE_COLUMNS: usize = 64;

/// A d-tuple of column-index sets, stored as bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeVector {
    n: usize,
    sets: Vec<u64>,
}

impl TypeVector {
    /// Builds a type from 0-based column indices, one list per coordinate.
    pub fn new(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_TYPE_COLUMNS {
            return Err(TropError::resource(format!(
                "types support at most {MAX_TYPE_COLUMNS} columns"
            )));
        }
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut mask = 0u64;
            for &i in s {
                if i >= n {
                    return Err(TropError::shape(format!(
                        "column index {i} out of range for {n} columns"
                    )));
                }
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        if masks.is_empty() {
            return Err(TropError::shape("a type needs at least one coordinate"));
        }
        Ok(TypeVector { n, sets: masks })
    }

    pub(crate) fn from_masks(n: usize, sets: Vec<u64>) -> Self {
        TypeVector { n, sets }
    }

    /// Number of coordinates `d`.
    pub fn coords(&self) -> usize {
        self.sets.len()
    }

    /// Number of columns `n`.
    pub fn points(&self) -> usize {
        self.n
    }

    pub fn contains(&self, j: usize, i: usize) -> bool {
        self.sets[j] >> i & 1 == 1
    }

    /// The sets as sorted 0-based index lists.
    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|&m| (0..self.n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    }

    /// Every column lies in some set.
    pub fn is_covering(&self) -> bool {
        let all = self.sets.iter().fold(0u64, |a, &m| a | m);
        all.count_ones() as usize == self.n
    }

    /// Every set is nonempty.
    pub fn is_bounded(&self) -> bool {
        self.sets.iter().all(|&m| m != 0)
    }

    pub fn intersect(&self, other: &TypeVector) -> TypeVector {
        TypeVector {
            n: self.n,
            sets: self
                .sets
                .iter()
                .zip(&other.sets)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Componentwise containment; the face order of closed cells.
    pub fn is_face_of(&self, other: &TypeVector) -> bool {
        self.sets.iter().zip(&other.sets).all(|(a, b)| b & !a == 0)
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_covering() {
            Ok(())
        } else {
            Err(TropError::domain(format!(
                "type {self} leaves a column uncovered"
            )))
        }
    }
}

impl fmt::Display for TypeVector {
    /// 1-based, e.g. `({1},{1,2,3},{1})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sets()
            .iter()
            .map(|s| {
                let items: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for TypeVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sets().cmp(&other.sets()).then(self.n.cmp(&other.n))
    }
}

/// Transposes per-column argmax row masks into per-row column masks.
fn type_from_argmax(argmax: &[u64], d: usize) -> TypeVector {
    let mut sets = vec![0u64; d];
    for (i, &rows) in argmax.iter().enumerate() {
        for (j, set) in sets.iter_mut().enumerate() {
            if rows >> j & 1 == 1 {
                *set |= 1 << i;
            }
        }
    }
    TypeVector::from_masks(argmax.len(), sets)
}

fn check_dims(m: &TropMatrix) -> Result<()> {
    if m.rows() > 64 || m.cols() > MAX_TYPE_COLUMNS {
        return Err(TropError::resource(
            "types support at most 64 rows and 64 columns",
        ));
    }
    Ok(())
}

/// Type of the point `x` with respect to the columns of `m`.
pub fn type_of_point(x: &[TropScalar], m: &TropMatrix) -> Result<TypeVector> {
    if x.len() != m.rows() {
        return Err(TropError::shape(format!(
            "point has {} coordinates, matrix has {} rows",
            x.len(),
            m.rows()
        )));
    }
    check_dims(m)?;
    let g = big_grid(m);
    let x: Vec<BigRational> = x.iter().map(|v| v.as_rational().clone()).collect();
    let full = u64::MAX >> (64 - m.rows());
    Ok(type_from_argmax(&argmax_rows(&g, &x, full), m.rows()))
}

fn components(d: usize, adjacent: impl Fn(usize, usize) -> bool) -> usize {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = d;
    for a in 0..d {
        for b in a + 1..d {
            if adjacent(a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    count -= 1;
                }
            }
        }
    }
    count
}

/// Dimension of the cell of type `s`: components of the graph on
/// coordinates joined when their sets meet, minus one.
pub fn cell_dim_from_type(s: &TypeVector) -> Result<usize> {
    s.require_valid()?;
    Ok(components(s.coords(), |a, b| s.sets[a] & s.sets[b] != 0) - 1)
}

/// Summands of the matching mixed cell, its dimension, and whether it lies
/// in the interior of the dilated simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    /// For each column `i`, the coordinates `j` with `i` in `S_j`.
    pub summands: Vec<Vec<usize>>,
    pub mixed_dim: usize,
    pub interior: bool,
}

pub fn type_to_mixed_cell(s: &TypeVector) -> Result<MixedCell> {
    s.require_valid()?;
    let d = s.coords();
    let n = s.points();
    let summands: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..d).filter(|&j| s.contains(j, i)).collect())
        .collect();
    // bipartite graph: nodes 0..n are columns, n..n+d coordinates
    let comps = components(n + d, |a, b| a < n && b >= n && s.contains(b - n, a));
    Ok(MixedCell {
        summands,
        mixed_dim: d - comps,
        interior: s.is_bounded(),
    })
}

/// A point of exact type `s`, or `None` if no such point exists.
pub fn is_type_realizable(s: &TypeVector, m: &TropMatrix) -> Result<Option<Vec<TropScalar>>> {
    if s.coords() != m.rows() || s.points() != m.cols() {
        return Err(TropError::shape(format!(
            "type is {}x{}, matrix is {}x{}",
            s.coords(),
            s.points(),
            m.rows(),
            m.cols()
        )));
    }
    if !s.is_covering() {
        return Ok(None);
    }
    Ok(realize(s, &big_grid(m)))
}

fn realize(s: &TypeVector, g: &Grid<BigRational>) -> Option<Vec<TropScalar>> {
    let (d, n) = (g.rows, g.cols);
    let mut sys = DiffConstraints::new(d);
    for i in 0..n {
        let hits: Vec<usize> = (0..d).filter(|&j| s.contains(j, i)).collect();
        let j0 = *hits.first()?;
        for j in 0..d {
            if s.contains(j, i) {
                for k in 0..d {
                    if k != j {
                        sys.le(k, j, g.get(k, i) - g.get(j, i));
                    }
                }
            } else {
                sys.lt(j, j0, g.get(j, i) - g.get(j0, i));
            }
        }
    }
    let x: Vec<TropScalar> = sys
        .solve()?
        .into_iter()
        .map(TropScalar::from_rational)
        .collect();
    Some(normalize_projective(&x))
}

/// A bounded cell with its exact type, dimension and an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCell {
    pub ty: TypeVector,
    pub dim: usize,
    pub witness: Vec<TropScalar>,
}

pub fn enumerate_hull_cells(m: &TropMatrix) -> Result<Vec<HullCell>> {
    enumerate_hull_cells_with(m, &Config::default())
}

/// Every bounded cell exactly once, sorted by type.
///
/// Vertex types are closed under componentwise intersection; each candidate
/// is then checked for a point of exactly that type.
pub fn enumerate_hull_cells_with(m: &TropMatrix, cfg: &Config) -> Result<Vec<HullCell>> {
    let (d, n) = m.shape();
    if d > cfg.hull_max_rows || n > cfg.hull_max_cols {
        return Err(TropError::resource(format!(
            "hull enumeration is limited to {}x{}, got {d}x{n}",
            cfg.hull_max_rows, cfg.hull_max_cols
        )));
    }
    check_dims(m)?;
    let vertex_types = match Numeric::from_matrix(m) {
        Numeric::Int { grid, .. } => vertex_types(&grid, cfg)?,
        Numeric::Big(grid) => vertex_types(&grid, cfg)?,
    };
    let mut family: HashSet<TypeVector> = vertex_types.iter().cloned().collect();
    let mut frontier: Vec<TypeVector> = family.iter().cloned().collect();
    while let Some(t) = frontier.pop() {
        for v in &vertex_types {
            let u = t.intersect(v);
            if u.is_covering() && u.is_bounded() && family.insert(u.clone()) {
                frontier.push(u);
            }
        }
    }
    let mut candidates: Vec<TypeVector> = family.into_iter().collect();
    candidates.sort();
    let g = big_grid(m);
    let realized = par::map(cfg.exec, candidates, |ty| {
        realize(&ty, &g).map(|witness| (ty, witness))
    });
    realized
        .into_iter()
        .flatten()
        .map(|(ty, witness)| {
            let dim = cell_dim_from_type(&ty)?;
            Ok(HullCell { ty, dim, witness })
        })
        .collect()
}

fn vertex_types<T: Weight>(g: &Grid<T>, cfg: &Config) -> Result<Vec<TypeVector>> {
    let full = u64::MAX >> (64 - g.rows);
    let pts = vertices(g, cfg.vertex_budget)
        .map_err(|_| TropError::resource("vertex enumeration exceeded its state budget"))?;
    let mut types: Vec<TypeVector> = pts
        .iter()
        .map(|x| type_from_argmax(&argmax_rows(g, x, full), g.rows))
        .collect();
    types.sort();
    types.dedup();
    Ok(types)
}

pub fn hull_dimension(m: &TropMatrix) -> Result<usize> {
    hull_dimension_with(m, &Config::default())
}

/// Largest dimension of a bounded cell.
pub fn hull_dimension_with(m: &TropMatrix, cfg: &Config) -> Result<usize> {
    let cells = enumerate_hull_cells_with(m, cfg)?;
    cells
        .iter()
        .map(|c| c.dim)
        .max()
        .ok_or_else(|| TropError::internal("a point configuration has at least one bounded cell"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> TropMatrix {
        TropMatrix::from_int_rows(rows).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<TropScalar> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn ty(n: usize, sets: &[&[usize]]) -> TypeVector {
        let sets: Vec<Vec<usize>> = sets
            .iter()
            .map(|s| s.iter().map(|i| i - 1).collect())
            .collect();
        TypeVector::new(n, &sets).unwrap()
    }

    #[test]
    fn types_of_points() {
        let m = mat(&[&[0, 4, 2], &[2, 1, 0], &[2, 4, 3]]);
        assert_eq!(
            type_of_point(&pt(&[0, 2, 2]), &m).unwrap(),
            ty(3, &[&[1], &[1, 2, 3], &[1]])
        );
        let z = mat(&[&[0, 0], &[0, 0]]);
        assert_eq!(
            type_of_point(&pt(&[0, 0]), &z).unwrap(),
            ty(2, &[&[1, 2], &[1, 2]])
        );
        let c2 = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            type_of_point(&pt(&[0, 0]), &c2).unwrap(),
            ty(2, &[&[2], &[1]])
        );
        assert_eq!(
            type_of_point(&pt(&[0, 0]), &c2).unwrap().to_string(),
            "({2},{1})"
        );
    }

    #[test]
    fn dimensions_from_types() {
        assert_eq!(cell_dim_from_type(&ty(2, &[&[2], &[1]])).unwrap(), 1);
        assert_eq!(cell_dim_from_type(&ty(2, &[&[1, 2], &[1, 2]])).unwrap(), 0);
        assert_eq!(
            cell_dim_from_type(&ty(3, &[&[1], &[1, 2, 3], &[1]])).unwrap(),
            0
        );
        assert!(matches!(
            cell_dim_from_type(&ty(2, &[&[1], &[1]])),
            Err(TropError::Domain(_))
        ));
    }

    #[test]
    fn realizability() {
        let c2 = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            is_type_realizable(&ty(2, &[&[2], &[1]]), &c2).unwrap(),
            Some(pt(&[0, 0]))
        );
        assert_eq!(
            is_type_realizable(&ty(2, &[&[1], &[2]]), &c2).unwrap(),
            None
        );
    }

    #[test]
    fn identity_two_cells() {
        let c2 = mat(&[&[1, 0], &[0, 1]]);
        let cells = enumerate_hull_cells(&c2).unwrap();
        let summary: Vec<(String, usize)> =
            cells.iter().map(|c| (c.ty.to_string(), c.dim)).collect();
        assert_eq!(
            summary,
            vec![
                ("({1,2},{1})".to_string(), 0),
                ("({2},{1})".to_string(), 1),
                ("({2},{1,2})".to_string(), 0),
            ]
        );
        for c in &cells {
            assert_eq!(type_of_point(&c.witness, &c2).unwrap(), c.ty);
        }
        assert_eq!(hull_dimension(&c2).unwrap(), 1);
    }

    #[test]
    fn single_column_is_a_point() {
        let m = mat(&[&[0], &[3], &[1]]);
        let cells = enumerate_hull_cells(&m).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].dim, 0);
        let twin = mat(&[&[0, 1], &[2, 3]]);
        assert_eq!(hull_dimension(&twin).unwrap(), 0);
    }

    #[test]
    fn example_hull_is_one_dimensional() {
        let m = mat(&[&[0, 4, 2], &[2, 1, 0], &[2, 4, 3]]);
        assert_eq!(hull_dimension(&m).unwrap(), 1);
    }

    #[test]
    fn mixed_cells() {
        let c = type_to_mixed_cell(&ty(1, &[&[1], &[1], &[1]])).unwrap();
        assert_eq!(
            (c.summands.clone(), c.mixed_dim, c.interior),
            (vec![vec![0, 1, 2]], 2, true)
        );
        let c = type_to_mixed_cell(&ty(2, &[&[2], &[1]])).unwrap();
        assert_eq!(
            (c.summands, c.mixed_dim, c.interior),
            (vec![vec![1], vec![0]], 0, true)
        );
        let c = type_to_mixed_cell(&ty(2, &[&[1, 2], &[]])).unwrap();
        assert!(!c.interior);
    }

    #[test]
    fn guard_is_enforced() {
        let m = TropMatrix::from_fn(6, 2, |i, j| TropScalar::from((i * j) as i64)).unwrap();
        assert!(matches!(
            enumerate_hull_cells(&m),
            Err(TropError::Resource(_))
        ));
        assert!(enumerate_hull_cells_with(&m, &Config::default().with_hull_limits(6, 2)).is_ok());
    }
}
