//! Matroids given by their bases, cocircuit matrices, and lifts of those
//! matrices built from a linear representation.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, TropError};
use crate::lifts::{lift_rank, valuation_matrix, PuiseuxMatrix, PuiseuxPoly};
use crate::matrix::TropMatrix;
use crate::rank::combinations;

pub const MAX_GROUND_SIZE: usize = 64;

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &e| m | 1 << e)
}

fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&e| mask >> e & 1 == 1).collect()
}

/// A matroid on `{0, .., n-1}` stored by its bases.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    bases: Vec<u64>,
    cocircuits: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Validates the basis exchange axiom; a failure names the offending pair.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_GROUND_SIZE {
            return Err(TropError::domain(format!(
                "ground sets are limited to {MAX_GROUND_SIZE} elements"
            )));
        }
        let first = bases
            .first()
            .ok_or_else(|| TropError::domain("a matroid needs at least one basis"))?;
        let rank = first.len();
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            if let Some(&e) = b.iter().find(|&&e| e >= n) {
                return Err(TropError::domain(format!(
                    "element {} outside ground set of size {n}",
                    e + 1
                )));
            }
            let m = mask_of(b);
            if m.count_ones() as usize != b.len() || b.len() != rank {
                return Err(TropError::domain("bases must be sets of equal size"));
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        let set: HashSet<u64> = masks.iter().copied().collect();
        for &b1 in &masks {
            for &b2 in &masks {
                for x in elements(b1 & !b2) {
                    let ok = elements(b2 & !b1)
                        .into_iter()
                        .any(|y| set.contains(&(b1 & !(1 << x) | 1 << y)));
                    if !ok {
                        return Err(TropError::domain(format!(
                            "basis exchange fails for {} and {}",
                            fmt_set(b1),
                            fmt_set(b2)
                        )));
                    }
                }
            }
        }
        Ok(Matroid {
            ground_size: n,
            rank,
            bases: masks,
            cocircuits: OnceLock::new(),
        })
    }

    /// The uniform matroid: every `r`-subset is a basis.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if r > n || n == 0 {
            return Err(TropError::domain(format!(
                "uniform matroid needs 0 <= r <= n and n >= 1, got n={n}, r={r}"
            )));
        }
        Matroid::from_bases(n, &combinations(n, r))
    }

    /// Seven points, with lines `{i, i+1, i+5}` mod 7 in 1-based labels.
    pub fn fano() -> Self {
        Matroid::from_lines(&FANO_LINES).expect("valid")
    }

    /// The Fano plane without the line `{4, 6, 7}` (1-based).
    pub fn non_fano() -> Self {
        Matroid::from_lines(&FANO_LINES[..6]).expect("valid")
    }

    fn from_lines(lines: &[[usize; 3]]) -> Result<Self> {
        let lines: Vec<u64> = lines.iter().map(|l| mask_of(l)).collect();
        let bases: Vec<Vec<usize>> = combinations(7, 3)
            .into_iter()
            .filter(|t| !lines.contains(&mask_of(t)))
            .collect();
        Matroid::from_bases(7, &bases)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| elements(b)).collect()
    }

    pub fn is_basis(&self, set: &[usize]) -> bool {
        self.bases.binary_search(&mask_of(set)).is_ok()
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        self.rank_mask(mask_of(set))
    }

    fn rank_mask(&self, s: u64) -> usize {
        self.bases
            .iter()
            .map(|b| (b & s).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn closure_mask(&self, s: u64) -> u64 {
        let r = self.rank_mask(s);
        (0..self.ground_size)
            .filter(|&e| self.rank_mask(s | 1 << e) == r)
            .fold(s, |m, e| m | 1 << e)
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let covered = self.bases.iter().fold(0u64, |m, b| m | b);
        (0..self.ground_size)
            .filter(|&e| covered >> e & 1 == 0)
            .collect()
    }

    /// Maximal flats of rank `r - 1`, sorted.
    pub fn hyperplanes(&self) -> Vec<Vec<usize>> {
        if self.rank == 0 {
            return Vec::new();
        }
        let mut flats: Vec<u64> = combinations(self.ground_size, self.rank - 1)
            .into_iter()
            .map(|s| mask_of(&s))
            .filter(|&s| self.rank_mask(s) == self.rank - 1)
            .map(|s| self.closure_mask(s))
            .collect();
        flats.sort_unstable();
        flats.dedup();
        flats.into_iter().map(elements).collect()
    }

    /// Complements of hyperplanes, sorted lexicographically.
    pub fn cocircuits(&self) -> &[Vec<usize>] {
        self.cocircuits.get_or_init(|| {
            let mut c: Vec<Vec<usize>> = self
                .hyperplanes()
                .into_iter()
                .map(|h| (0..self.ground_size).filter(|e| !h.contains(e)).collect())
                .collect();
            c.sort();
            c
        })
    }

    /// Rows are elements, columns cocircuits; 0 marks membership.
    pub fn cocircuit_matrix(&self) -> Result<TropMatrix> {
        let cc = self.cocircuits();
        if cc.is_empty() {
            return Err(TropError::domain("a matroid of rank 0 has no cocircuits"));
        }
        TropMatrix::from_fn(self.ground_size, cc.len(), |i, j| {
            if cc[j].contains(&i) {
                0.into()
            } else {
                1.into()
            }
        })
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matroid of rank {} on {} elements with {} bases",
            self.rank,
            self.ground_size,
            self.bases.len()
        )
    }
}

fn fmt_set(mask: u64) -> String {
    let parts: Vec<String> = elements(mask).iter().map(|e| (e + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 5],
    [1, 2, 6],
    [0, 2, 3],
    [1, 3, 4],
    [2, 4, 5],
    [0, 4, 6],
    [3, 5, 6],
];

/// Vectors representing the non-Fano matroid over the rationals, in the
/// labeling of [`Matroid::non_fano`].
pub fn non_fano_vectors() -> Vec<Vec<BigRational>> {
    [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 0, 1],
        [1, 1, 1],
        [1, 1, 0],
        [0, 1, 1],
    ]
    .iter()
    .map(|v| {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    })
    .collect()
}

/// Looks up `fano`, `non_fano` or `uniform` (which needs `(n, r)`).
pub fn builtin(name: &str, params: Option<(usize, usize)>) -> Result<Matroid> {
    match (name.to_ascii_lowercase().replace('-', "_").as_str(), params) {
        ("fano", _) => Ok(Matroid::fano()),
        ("non_fano" | "nonfano", _) => Ok(Matroid::non_fano()),
        ("uniform", Some((n, r))) => Matroid::uniform(n, r),
        ("uniform", None) => Err(TropError::domain("uniform matroid needs parameters n,r")),
        (other, _) => Err(TropError::domain(format!("unknown matroid '{other}'"))),
    }
}

type Rows = Vec<Vec<BigRational>>;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut Rows) -> Vec<usize> {
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let delta = &f * &a[r][k];
                    a[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}

fn rational_rank(rows: &[&Vec<BigRational>]) -> usize {
    let mut a: Rows = rows.iter().map(|r| (*r).clone()).collect();
    rref(&mut a).len()
}

/// A nonzero vector orthogonal to every row of `a`, when the null space is
/// one-dimensional.
fn normal_vector(a: &[&Vec<BigRational>], dim: usize) -> Option<Vec<BigRational>> {
    let mut m: Rows = a.iter().map(|r| (*r).clone()).collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let [f] = free[..] else {
        return None;
    };
    let mut x = vec![BigRational::zero(); dim];
    x[f] = BigRational::one();
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = -m[row][f].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum_k c_k basis[k] = target`.
fn coordinates(basis: &[&Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = target.len();
    // columns are the basis vectors, augmented by the target
    let mut m: Rows = (0..n)
        .map(|i| {
            basis
                .iter()
                .map(|b| b[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = m[row][k].clone();
    }
    Some(c)
}

fn check_represents(m: &Matroid, rows: &[Vec<BigRational>]) -> Result<()> {
    if rows.len() != m.ground_size() {
        return Err(TropError::shape(format!(
            "{} rows for a ground set of {}",
            rows.len(),
            m.ground_size()
        )));
    }
    for s in combinations(m.ground_size(), m.rank()) {
        let picked: Vec<&Vec<BigRational>> = s.iter().map(|&i| &rows[i]).collect();
        let independent = rational_rank(&picked) == m.rank();
        if independent != m.is_basis(&s) {
            let set: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
            return Err(TropError::domain(format!(
                "rows {{{}}} are {} but {} a basis",
                set.join(","),
                if independent {
                    "independent"
                } else {
                    "dependent"
                },
                if independent { "not" } else { "are" }
            )));
        }
    }
    Ok(())
}

/// Turns vectors `v_i` representing `m` into a matrix whose column for a
/// cocircuit `C` holds `<v_i, phi>`, with `phi` vanishing on the hyperplane
/// complementary to `C`. Its rows still represent `m`, and its column
/// supports are the cocircuits.
pub fn cocircuit_representation(
    m: &Matroid,
    vectors: &[Vec<BigRational>],
) -> Result<Vec<Vec<BigRational>>> {
    let dim = m.rank();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(TropError::shape(format!(
            "vectors must have exactly {dim} coordinates"
        )));
    }
    check_represents(m, vectors)?;
    let mut normals = Vec::new();
    for c in m.cocircuits() {
        let hyperplane: Vec<&Vec<BigRational>> = (0..m.ground_size())
            .filter(|i| !c.contains(i))
            .map(|i| &vectors[i])
            .collect();
        let phi = normal_vector(&hyperplane, dim)
            .ok_or_else(|| TropError::internal("hyperplane of wrong rank"))?;
        normals.push(phi);
    }
    Ok(vectors
        .iter()
        .map(|v| {
            normals
                .iter()
                .map(|phi| v.iter().zip(phi).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect())
}

/// A lift of the cocircuit matrix of `m` with rank equal to the rank of `m`.
///
/// `a` has one row per element and one column per cocircuit (in sorted
/// order); its rows represent `m` and its column supports are the
/// cocircuits. With `B` the first basis and `P` expressing every row in the
/// rows of `B`, the lift is `A + t P b 1^T` for the first `b` in
/// `{1..k}^r` making `P b` nowhere zero.
pub fn representation_lift(m: &Matroid, a: &[Vec<BigRational>]) -> Result<PuiseuxMatrix> {
    let target = m.cocircuit_matrix()?;
    let cc = m.cocircuits();
    if let Some(l) = m.loops().first() {
        return Err(TropError::domain(format!("element {} is a loop", l + 1)));
    }
    if a.len() != m.ground_size() || a.iter().any(|r| r.len() != cc.len()) {
        return Err(TropError::shape(format!(
            "representation must be {}x{}, one column per cocircuit",
            m.ground_size(),
            cc.len()
        )));
    }
    for (j, c) in cc.iter().enumerate() {
        let support: Vec<usize> = (0..a.len()).filter(|&i| !a[i][j].is_zero()).collect();
        if support != *c {
            return Err(TropError::domain(format!(
                "column {} is not supported on its cocircuit",
                j + 1
            )));
        }
    }
    check_represents(m, a)?;
    let r = m.rank();
    let basis = elements(m.bases[0]);
    let basis_rows: Vec<&Vec<BigRational>> = basis.iter().map(|&i| &a[i]).collect();
    let p: Rows = a
        .iter()
        .map(|row| {
            coordinates(&basis_rows, row)
                .ok_or_else(|| TropError::internal("row outside span of a basis"))
        })
        .collect::<Result<_>>()?;
    let b = nowhere_zero_combination(&p, r)?;
    let pb: Vec<BigRational> = p
        .iter()
        .map(|row| row.iter().zip(&b).map(|(x, y)| x * y).sum())
        .collect();
    let f = PuiseuxMatrix::from_fn(a.len(), cc.len(), |i, j| {
        PuiseuxPoly::from_terms([
            (BigRational::zero(), a[i][j].clone()),
            (BigRational::one(), pb[i].clone()),
        ])
    })?;
    if valuation_matrix(&f)? != target || lift_rank(&f) != r {
        return Err(TropError::internal(
            "representation lift failed verification",
        ));
    }
    Ok(f)
}

const COMBINATION_LIMIT: i64 = 24;

/// Smallest `b` in lexicographic order over `{1..k}^r`, `k = 3, 6, 12, ..`,
/// with every `p_i . b` nonzero.
fn nowhere_zero_combination(p: &Rows, r: usize) -> Result<Vec<BigRational>> {
    let mut k = 3;
    while k <= COMBINATION_LIMIT {
        let mut b = vec![1i64; r];
        loop {
            let ok = p.iter().all(|row| {
                !row.iter()
                    .zip(&b)
                    .map(|(x, &y)| x * BigRational::from_integer(y.into()))
                    .sum::<BigRational>()
                    .is_zero()
            });
            if ok {
                return Ok(b
                    .into_iter()
                    .map(|y| BigRational::from_integer(y.into()))
                    .collect());
            }
            let Some(pos) = (0..r).rev().find(|&i| b[i] < k) else {
                break;
            };
            b[pos] += 1;
            b[pos + 1..].iter_mut().for_each(|x| *x = 1);
        }
        k *= 2;
    }
    Err(TropError::resource(format!(
        "no nowhere-zero combination with entries up to {COMBINATION_LIMIT}"
    )))
}
