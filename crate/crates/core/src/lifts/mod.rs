//! Lifts of tropical matrices to matrices of Puiseux polynomials.

mod poly;
mod puiseux;
mod rank2;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

pub use puiseux::{valuation_matrix, PuiseuxMatrix, PuiseuxPoly};
pub use rank2::{
    rank2_block_decomposition, rank2_lift, rank2_lift_with, PlanBlock, Rank2Lift, Rank2LiftPlan,
    Rank2Method,
};

use crate::error::{Result, TropError};
use crate::matrix::{outer, trop_add, TropMatrix};
use crate::rank::combinations;
use crate::scalar::TropScalar;

/// Rank over the field of Puiseux series.
///
/// Substituting `t = s^L`, with `L` the common denominator of all exponents,
/// and clearing the smallest power turns every entry into a polynomial in `s`.
pub fn lift_rank(f: &PuiseuxMatrix) -> usize {
    let exps = || {
        f.entries()
            .iter()
            .flat_map(|p| p.terms().iter().map(|(e, _)| e))
    };
    let l = exps().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let base = exps().min().cloned().unwrap_or_default();
    let lr = BigRational::from_integer(l);
    let degree = |e: &BigRational| -> usize {
        let k = (e - &base) * &lr;
        debug_assert!(k.is_integer());
        k.to_integer()
            .to_usize()
            .expect("exponent span fits in memory")
    };
    let grid: Vec<Vec<poly::Poly>> = (0..f.rows())
        .map(|i| {
            (0..f.cols())
                .map(|j| {
                    let p = f.get(i, j);
                    let top = p.terms().last().map_or(0, |(e, _)| degree(e));
                    let mut c = vec![BigRational::default(); top + 1];
                    for (e, k) in p.terms() {
                        c[degree(e)] = k.clone();
                    }
                    poly::Poly::from_coeffs(c)
                })
                .collect()
        })
        .collect();
    poly::rank(grid)
}

/// Whether every `k x k` minor of `f` is the zero polynomial.
pub fn minors_vanish(f: &PuiseuxMatrix, k: usize) -> bool {
    let rows = combinations(f.rows(), k);
    let cols = combinations(f.cols(), k);
    rows.iter()
        .all(|r| cols.iter().all(|c| f.minor_det(r, c).is_zero()))
}

/// Sum of monomial rank-one terms `t^(x_i + y_j)`, one per pair `(x, y)`.
///
/// Every coefficient is +1, so the minimum of each entry never cancels and
/// the degree of the sum is the tropical sum of the terms.
pub fn barvinok_lift(
    m: &TropMatrix,
    terms: &[(Vec<TropScalar>, Vec<TropScalar>)],
) -> Result<PuiseuxMatrix> {
    let (first, rest) = terms
        .split_first()
        .ok_or_else(|| TropError::domain("a decomposition needs at least one term"))?;
    let mut sum = outer(&first.0, &first.1)?;
    for (x, y) in rest {
        sum = trop_add(&sum, &outer(x, y)?)?;
    }
    if sum != *m {
        return Err(TropError::domain("the terms do not add up to the matrix"));
    }
    let f = PuiseuxMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        PuiseuxPoly::from_terms(
            terms
                .iter()
                .map(|(x, y)| ((&x[i] + &y[j]).into_rational(), BigRational::one())),
        )
    })?;
    if valuation_matrix(&f)? != *m || lift_rank(&f) > terms.len() {
        return Err(TropError::internal("monomial lift failed verification"));
    }
    Ok(f)
}

/// [`barvinok_lift`] for a factorization `M = X ⊙ Y`.
pub fn barvinok_lift_from_factors(
    m: &TropMatrix,
    x: &TropMatrix,
    y: &TropMatrix,
) -> Result<PuiseuxMatrix> {
    let terms: Vec<(Vec<TropScalar>, Vec<TropScalar>)> = (0..x.cols())
        .map(|k| (x.col(k), y.row(k).to_vec()))
        .collect();
    barvinok_lift(m, &terms)
}

/// Rank-two lift of the `n x n` classical identity: columns after the
/// second are the first plus `a_i` times the second, with `a_i = i - 2`
/// for 1-based `i`.
pub fn cn_lift(n: usize) -> Result<PuiseuxMatrix> {
    if n < 3 {
        return Err(TropError::domain("the construction needs n >= 3"));
    }
    let t = PuiseuxPoly::int_term(1, 1);
    let one = PuiseuxPoly::one();
    let a = |i: usize| BigRational::from_integer(BigInt::from(i as i64 - 1));
    let u1 = |r: usize| match r {
        0 => t.clone(),
        1 => one.clone(),
        _ => &t - &PuiseuxPoly::constant(a(r)),
    };
    let u2 = |r: usize| if r == 1 { t.clone() } else { one.clone() };
    PuiseuxMatrix::from_fn(n, n, |r, c| match c {
        0 => u1(r),
        1 => u2(r),
        _ => &u1(r) + &u2(r).scale(&a(c)),
    })
}
