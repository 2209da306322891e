//! Tropical determinants and singularity certificates.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diffcon::DiffConstraints;
use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::numeric::{big_grid, Grid, Numeric, ToScalar, Weight};
use crate::scalar::TropScalar;

/// Largest size accepted by the enumeration routines.
pub const BRUTE_FORCE_MAX: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonSingular,
    /// A second optimal permutation, distinct from `sigma`.
    Singular {
        sigma2: Vec<usize>,
    },
}

/// Determinant value with an optimal permutation and feasible duals.
///
/// Permutations are 0-indexed: row `i` is matched to column `sigma[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityCertificate {
    pub det_value: TropScalar,
    pub sigma: Vec<usize>,
    pub u: Vec<TropScalar>,
    pub v: Vec<TropScalar>,
    pub verdict: Verdict,
}

impl SingularityCertificate {
    pub fn is_singular(&self) -> bool {
        matches!(self.verdict, Verdict::Singular { .. })
    }

    /// Replays the certificate against `m`: permutation sums, dual
    /// feasibility, complementary slackness and the dual objective.
    pub fn check(&self, m: &TropMatrix) -> bool {
        let r = m.rows();
        if !m.is_square() || self.sigma.len() != r || self.u.len() != r || self.v.len() != r {
            return false;
        }
        if !is_permutation(&self.sigma) || permutation_sum(m, &self.sigma) != self.det_value {
            return false;
        }
        if let Verdict::Singular { sigma2 } = &self.verdict {
            if sigma2 == &self.sigma
                || !is_permutation(sigma2)
                || sigma2.len() != r
                || permutation_sum(m, sigma2) != self.det_value
            {
                return false;
            }
        }
        for i in 0..r {
            for j in 0..r {
                if &self.u[i] + &self.v[j] > *m.get(i, j) {
                    return false;
                }
            }
            if &self.u[i] + &self.v[self.sigma[i]] != *m.get(i, self.sigma[i]) {
                return false;
            }
        }
        let dual: TropScalar = self.u.iter().chain(&self.v).cloned().sum();
        dual == self.det_value
    }
}

pub fn permutation_sum(m: &TropMatrix, sigma: &[usize]) -> TropScalar {
    sigma
        .iter()
        .enumerate()
        .map(|(i, &j)| m.get(i, j).clone())
        .sum()
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

fn require_square(m: &TropMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(TropError::shape(format!(
            "determinant needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

pub(crate) struct Assignment<T> {
    pub sigma: Vec<usize>,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub value: T,
}

/// Minimum-cost perfect assignment by shortest augmenting paths with
/// potentials. Returns duals with `u_i + v_j <= a_ij`, tight on `sigma`.
pub(crate) fn hungarian<T: Weight>(a: &Grid<T>) -> Assignment<T> {
    let n = a.rows;
    debug_assert_eq!(n, a.cols);
    // 1-based arrays; index 0 is the virtual row/column.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = a.get(i0 - 1, j - 1).clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = minv[j].as_mut() {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut sigma = vec![0usize; n];
    for j in 1..=n {
        sigma[p[j] - 1] = j - 1;
    }
    let value = sigma
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &j)| acc + a.get(i, j).clone());
    Assignment {
        sigma,
        u: u[1..].to_vec(),
        v: v[1..].to_vec(),
        value,
    }
}

fn tight_graph<T: Weight>(a: &Grid<T>, u: &[T], v: &[T]) -> Vec<Vec<bool>> {
    (0..a.rows)
        .map(|i| {
            (0..a.cols)
                .map(|j| u[i].clone() + v[j].clone() == *a.get(i, j))
                .collect()
        })
        .collect()
}

/// Whether rows `rows` can be perfectly matched into the free columns.
fn has_perfect_matching(tight: &[Vec<bool>], rows: &[usize], col_free: &[bool]) -> bool {
    let n = col_free.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    fn augment(
        i: usize,
        tight: &[Vec<bool>],
        col_free: &[bool],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..col_free.len() {
            if col_free[j] && tight[i][j] && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, tight, col_free, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    rows.iter().all(|&i| {
        let mut seen = vec![false; n];
        augment(i, tight, col_free, &mut seen, &mut owner)
    })
}

/// Lexicographically smallest perfect matching of the tight graph.
fn lex_min_matching(tight: &[Vec<bool>]) -> Vec<usize> {
    let n = tight.len();
    let mut col_free = vec![true; n];
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let rest: Vec<usize> = (i + 1..n).collect();
        let j = (0..n)
            .find(|&j| {
                if !col_free[j] || !tight[i][j] {
                    return false;
                }
                col_free[j] = false;
                let ok = has_perfect_matching(tight, &rest, &col_free);
                col_free[j] = true;
                ok
            })
            .expect("tight graph of optimal duals has a perfect matching");
        col_free[j] = false;
        sigma.push(j);
    }
    sigma
}

/// A second perfect matching, found as an alternating cycle: row `i` points
/// to row `k` when the edge `(i, sigma[k])` is tight.
fn second_matching(tight: &[Vec<bool>], sigma: &[usize]) -> Option<Vec<usize>> {
    let n = sigma.len();
    let next = |i: usize| (0..n).filter(move |&k| k != i && tight[i][sigma[k]]);
    // state: 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = vec![start];
        let mut iters = vec![next(start)];
        state[start] = 1;
        while let Some(it) = iters.last_mut() {
            match it.next() {
                Some(k) if state[k] == 1 => {
                    let pos = path.iter().position(|&x| x == k).expect("on stack");
                    let cycle = &path[pos..];
                    let mut sigma2 = sigma.to_vec();
                    for (t, &i) in cycle.iter().enumerate() {
                        sigma2[i] = sigma[cycle[(t + 1) % cycle.len()]];
                    }
                    return Some(sigma2);
                }
                Some(k) if state[k] == 0 => {
                    state[k] = 1;
                    path.push(k);
                    iters.push(next(k));
                }
                Some(_) => {}
                None => {
                    let done = path.pop().expect("nonempty");
                    state[done] = 2;
                    iters.pop();
                }
            }
        }
    }
    None
}

pub(crate) struct GridDet<T> {
    pub sigma: Vec<usize>,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub value: T,
    pub sigma2: Option<Vec<usize>>,
}

pub(crate) fn grid_det<T: Weight>(a: &Grid<T>) -> GridDet<T> {
    let asg = hungarian(a);
    let tight = tight_graph(a, &asg.u, &asg.v);
    let sigma = lex_min_matching(&tight);
    let sigma2 = second_matching(&tight, &sigma);
    GridDet {
        sigma,
        u: asg.u,
        v: asg.v,
        value: asg.value,
        sigma2,
    }
}

/// Singularity only; the hot path of minor enumeration.
pub(crate) fn grid_is_singular<T: Weight>(a: &Grid<T>) -> bool {
    let asg = hungarian(a);
    let tight = tight_graph(a, &asg.u, &asg.v);
    second_matching(&tight, &asg.sigma).is_some()
}

fn certificate<T: Weight + ToScalar>(
    g: GridDet<T>,
    scale: Option<&BigInt>,
) -> SingularityCertificate {
    SingularityCertificate {
        det_value: g.value.to_scalar(scale),
        u: g.u.iter().map(|x| x.to_scalar(scale)).collect(),
        v: g.v.iter().map(|x| x.to_scalar(scale)).collect(),
        verdict: match g.sigma2 {
            Some(sigma2) => Verdict::Singular { sigma2 },
            None => Verdict::NonSingular,
        },
        sigma: g.sigma,
    }
}

/// Tropical determinant by optimal assignment.
///
/// `sigma` is the lexicographically smallest optimal permutation; the
/// verdict is `Singular` exactly when a second optimal permutation exists.
pub fn trop_det(m: &TropMatrix) -> Result<SingularityCertificate> {
    require_square(m)?;
    Ok(match Numeric::from_matrix(m) {
        Numeric::Int { grid, scale } => certificate(grid_det(&grid), Some(&scale)),
        Numeric::Big(grid) => certificate(grid_det(&grid), None),
    })
}

/// Whether the square matrix `m` is tropically singular.
pub fn is_singular(m: &TropMatrix) -> Result<bool> {
    require_square(m)?;
    Ok(match Numeric::from_matrix(m) {
        Numeric::Int { grid, .. } => grid_is_singular(&grid),
        Numeric::Big(grid) => grid_is_singular(&grid),
    })
}

/// Next permutation in lexicographic order; false after the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn brute_guard(m: &TropMatrix, what: &str) -> Result<()> {
    require_square(m)?;
    if m.rows() > BRUTE_FORCE_MAX {
        return Err(TropError::resource(format!(
            "{what} enumerates all permutations; size {} exceeds {BRUTE_FORCE_MAX}",
            m.rows()
        )));
    }
    Ok(())
}

/// Determinant certificate by enumerating every permutation.
///
/// Duals come from a separate shortest-path computation, so this is an
/// independent check of [`trop_det`].
pub fn det_bruteforce(m: &TropMatrix) -> Result<SingularityCertificate> {
    brute_guard(m, "det_bruteforce")?;
    let g = big_grid(m);
    let r = m.rows();
    let mut p: Vec<usize> = (0..r).collect();
    let mut best: Option<(BigRational, Vec<usize>, Option<Vec<usize>>)> = None;
    loop {
        let s: BigRational = p
            .iter()
            .enumerate()
            .map(|(i, &j)| g.get(i, j).clone())
            .sum();
        match &mut best {
            None => best = Some((s, p.clone(), None)),
            Some((b, sigma, second)) => {
                if s < *b {
                    *b = s;
                    *sigma = p.clone();
                    *second = None;
                } else if s == *b && second.is_none() {
                    *second = Some(p.clone());
                }
            }
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    let (value, sigma, second) = best.expect("at least one permutation");
    // v_j - v_{sigma(i)} <= m_ij - m_{i,sigma(i)}
    let mut sys = DiffConstraints::new(r);
    for i in 0..r {
        for j in 0..r {
            sys.le(j, sigma[i], g.get(i, j) - g.get(i, sigma[i]));
        }
    }
    let v = sys
        .solve()
        .ok_or_else(|| TropError::internal("optimal permutation admits no duals"))?;
    let u: Vec<BigRational> = (0..r).map(|i| g.get(i, sigma[i]) - &v[sigma[i]]).collect();
    let to = |x: &BigRational| TropScalar::from_rational(x.clone());
    Ok(SingularityCertificate {
        det_value: to(&value),
        u: u.iter().map(to).collect(),
        v: v.iter().map(to).collect(),
        sigma,
        verdict: match second {
            Some(sigma2) => Verdict::Singular { sigma2 },
            None => Verdict::NonSingular,
        },
    })
}

fn parity_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

/// Minimum permutation sums over even and over odd permutations.
///
/// A 1x1 matrix has no odd permutation, so the second value is `None`.
pub fn even_odd_minima(m: &TropMatrix) -> Result<(TropScalar, Option<TropScalar>)> {
    brute_guard(m, "even_odd_minima")?;
    let r = m.rows();
    let mut p: Vec<usize> = (0..r).collect();
    let mut even: Option<TropScalar> = None;
    let mut odd: Option<TropScalar> = None;
    loop {
        let s = permutation_sum(m, &p);
        let slot = if parity_is_odd(&p) {
            &mut odd
        } else {
            &mut even
        };
        if slot.as_ref().is_none_or(|b| s < *b) {
            *slot = Some(s);
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    Ok((even.expect("identity is even"), odd))
}

#[cfg(test)]
fn all_optimal(m: &TropMatrix) -> Vec<Vec<usize>> {
    let r = m.rows();
    let mut p: Vec<usize> = (0..r).collect();
    let mut out: Vec<(TropScalar, Vec<usize>)> = Vec::new();
    loop {
        out.push((permutation_sum(m, &p), p.clone()));
        if !next_permutation(&mut p) {
            break;
        }
    }
    let best = out.iter().map(|(s, _)| s.clone()).min().unwrap();
    out.into_iter()
        .filter(|(s, _)| *s == best)
        .map(|(_, p)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> TropMatrix {
        TropMatrix::from_int_rows(rows).unwrap()
    }

    #[test]
    fn one_by_one() {
        let c = trop_det(&mat(&[&[7]])).unwrap();
        assert_eq!(c.det_value, TropScalar::from(7));
        assert_eq!(c.sigma, vec![0]);
        assert_eq!(c.verdict, Verdict::NonSingular);
    }

    #[test]
    fn identity_two_picks_transposition() {
        let m = mat(&[&[1, 0], &[0, 1]]);
        let c = trop_det(&m).unwrap();
        assert_eq!(c.det_value, TropScalar::from(0));
        assert_eq!(c.sigma, vec![1, 0]);
        assert!(!c.is_singular());
        assert!(c.check(&m));
    }

    #[test]
    fn example_matrix_is_singular_with_value_four() {
        let m = mat(&[&[0, 4, 2], &[2, 1, 0], &[2, 4, 3]]);
        // the two optimal permutations found by listing all six sums
        assert_eq!(all_optimal(&m), vec![vec![0, 1, 2], vec![0, 2, 1]]);
        for c in [trop_det(&m).unwrap(), det_bruteforce(&m).unwrap()] {
            assert_eq!(c.det_value, TropScalar::from(4));
            assert_eq!(c.sigma, vec![0, 1, 2]);
            assert_eq!(
                c.verdict,
                Verdict::Singular {
                    sigma2: vec![0, 2, 1]
                }
            );
            assert!(c.check(&m));
        }
    }

    #[test]
    fn zeros_are_singular() {
        let m = mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(trop_det(&m).unwrap().is_singular());
        assert!(det_bruteforce(&m).unwrap().is_singular());
    }

    #[test]
    fn non_square_is_shape_error() {
        let m = mat(&[&[0, 1]]);
        assert!(matches!(trop_det(&m), Err(TropError::Shape(_))));
    }

    #[test]
    fn brute_force_guard() {
        let m = TropMatrix::from_fn(11, 11, |_, _| TropScalar::zero()).unwrap();
        assert!(matches!(det_bruteforce(&m), Err(TropError::Resource(_))));
        assert!(matches!(even_odd_minima(&m), Err(TropError::Resource(_))));
    }

    #[test]
    fn even_odd_examples() {
        let (e, o) = even_odd_minima(&mat(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!((e, o), (TropScalar::from(2), Some(TropScalar::from(0))));
        let (e, o) = even_odd_minima(&mat(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!((e, o), (TropScalar::zero(), Some(TropScalar::zero())));
        let (e, o) = even_odd_minima(&mat(&[&[0, 4, 2], &[2, 1, 0], &[2, 4, 3]])).unwrap();
        assert_eq!((e, o), (TropScalar::from(4), Some(TropScalar::from(4))));
        let (_, o) = even_odd_minima(&mat(&[&[3]])).unwrap();
        assert_eq!(o, None);
    }

    #[test]
    fn rational_entries_take_integer_path_exactly() {
        let m = TropMatrix::from_rows(vec![
            vec![TropScalar::new(1, 3), TropScalar::new(1, 2)],
            vec![TropScalar::new(1, 2), TropScalar::new(1, 3)],
        ])
        .unwrap();
        let c = trop_det(&m).unwrap();
        assert_eq!(c.det_value, TropScalar::new(2, 3));
        assert!(c.check(&m));
    }

    fn small_matrix(max_n: usize, span: i64) -> impl Strategy<Value = TropMatrix> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec((-span..=span, 1i64..=3), n * n).prop_map(move |v| {
                TropMatrix::new(
                    n,
                    n,
                    v.into_iter().map(|(p, q)| TropScalar::new(p, q)).collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force(m in small_matrix(6, 4)) {
            let a = trop_det(&m).unwrap();
            let b = det_bruteforce(&m).unwrap();
            prop_assert!(a.check(&m));
            prop_assert!(b.check(&m));
            prop_assert_eq!(&a.det_value, &b.det_value);
            prop_assert_eq!(a.is_singular(), b.is_singular());
            prop_assert_eq!(&a.sigma, &b.sigma);
        }

        #[test]
        fn transpose_invariant(m in small_matrix(7, 3)) {
            let a = trop_det(&m).unwrap();
            let b = trop_det(&m.transpose()).unwrap();
            prop_assert_eq!(&a.det_value, &b.det_value);
            prop_assert_eq!(a.is_singular(), b.is_singular());
        }

        #[test]
        fn row_shift_adds_to_value(m in small_matrix(5, 5), row in 0usize..5, c in -7i64..7) {
            let row = row % m.rows();
            let c = TropScalar::new(c, 2);
            let a = trop_det(&m).unwrap();
            let b = trop_det(&m.add_to_row(row, &c)).unwrap();
            prop_assert_eq!(&b.det_value, &(&a.det_value + &c));
            prop_assert_eq!(a.is_singular(), b.is_singular());
        }

        #[test]
        fn parity_minima_cover_determinant(m in small_matrix(5, 4)) {
            let (e, o) = even_odd_minima(&m).unwrap();
            let best = match o { Some(o) => e.oplus(&o), None => e };
            prop_assert_eq!(best, trop_det(&m).unwrap().det_value);
        }
    }
}
