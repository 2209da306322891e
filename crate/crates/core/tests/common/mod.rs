#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troprank::{trop_matmul, tropical_rank, TropMatrix, TropScalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries `k / denom` with `|k| <= span`.
pub fn random_matrix(rng: &mut impl Rng, d: usize, n: usize, span: i64, denom: i64) -> TropMatrix {
    let data = (0..d * n)
        .map(|_| TropScalar::new(rng.gen_range(-span..=span), denom))
        .collect();
    TropMatrix::new(d, n, data).unwrap()
}

pub fn random_shape(rng: &mut impl Rng, lo: usize, hi: usize) -> (usize, usize) {
    (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi))
}

/// A square matrix with many equal entries and repeated rows or columns,
/// where ties between permutations are common.
pub fn tie_rich(rng: &mut impl Rng, n: usize) -> TropMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=2)).collect())
        .collect();
    if n >= 2 && rng.gen_bool(0.3) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        rows[a] = rows[b].clone();
    }
    if n >= 2 && rng.gen_bool(0.3) {
        // a row shifted by a constant ties every permutation pair swapping it
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let c = rng.gen_range(-2..=2);
        rows[a] = rows[b].iter().map(|v| v + c).collect();
    }
    TropMatrix::from_int_rows(&rows).unwrap()
}

/// Random 0/1 matrix without a column of ones.
pub fn random_zero_one(rng: &mut impl Rng, d: usize, n: usize) -> TropMatrix {
    let mut rows: Vec<Vec<i64>> = (0..d)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect())
        .collect();
    for c in 0..n {
        if rows.iter().all(|r| r[c] == 1) {
            let r = rng.gen_range(0..d);
            rows[r][c] = 0;
        }
    }
    TropMatrix::from_int_rows(&rows).unwrap()
}

fn random_poly(rng: &mut impl Rng) -> [i64; 4] {
    let mut p = [0; 4];
    for c in p.iter_mut() {
        *c = rng.gen_range(-2..=2);
    }
    p
}

/// Degree of `a - p`, the lowest power with differing coefficients.
fn degree_of_difference(a: &[i64; 4], p: &[i64; 4]) -> Option<i64> {
    (0..4).find(|&k| a[k] != p[k]).map(|k| k as i64)
}

/// A matrix of tropical rank 2: either the degrees of `a_r - p_j` for random
/// polynomials (shifted by random row and column constants), or a tropical
/// product of `d x 2` and `2 x n` factors.
pub fn random_rank_two(rng: &mut impl Rng, max: usize) -> TropMatrix {
    loop {
        let (d, n) = random_shape(rng, 3, max);
        let m = if rng.gen_bool(0.5) {
            let a: Vec<[i64; 4]> = (0..d).map(|_| random_poly(rng)).collect();
            let p: Vec<[i64; 4]> = (0..n).map(|_| random_poly(rng)).collect();
            let degs: Option<Vec<Vec<i64>>> = a
                .iter()
                .map(|ar| p.iter().map(|pj| degree_of_difference(ar, pj)).collect())
                .collect();
            let Some(degs) = degs else { continue };
            let rs: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            let cs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let mut m =
                TropMatrix::from_fn(d, n, |r, c| (degs[r][c] + rs[r] + cs[c]).into()).unwrap();
            if rng.gen_bool(0.3) {
                let mut perm: Vec<usize> = (0..d).collect();
                perm.shuffle(rng);
                m = m.submatrix(&perm, &(0..n).collect::<Vec<_>>()).unwrap();
            }
            m
        } else {
            let x = random_matrix(rng, d, 2, 4, 1);
            let y = random_matrix(rng, 2, n, 4, 1);
            trop_matmul(&x, &y).unwrap()
        };
        if tropical_rank(&m).rank == 2 {
            return m;
        }
    }
}

/// A tropical product `X ⊙ Y` with inner dimension `k`, where ranks fall
/// below full and ties are frequent.
pub fn random_low_rank(rng: &mut impl Rng, d: usize, n: usize, k: usize) -> TropMatrix {
    let x = random_matrix(rng, d, k, 3, 1);
    let y = random_matrix(rng, k, n, 3, 1);
    trop_matmul(&x, &y).unwrap()
}
