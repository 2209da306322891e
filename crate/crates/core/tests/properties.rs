use proptest::prelude::*;
use troprank::solve::strong_independence_rank;
use troprank::{
    barvinok_rank, barvinok_rank2_fast, kapranov_report, principal_solution, rank_one_factor,
    rank_report, solve_status, trop_add, trop_matmul, tropical_rank, tropical_rank_01, Matroid,
    SolveStatus, TropMatrix, TropScalar,
};

fn scalar() -> impl Strategy<Value = TropScalar> {
    (-20i64..=20, 1i64..=4).prop_map(|(p, q)| TropScalar::new(p, q))
}

fn matrix_of(d: usize, n: usize, span: i64) -> impl Strategy<Value = TropMatrix> {
    proptest::collection::vec(-span..=span, d * n).prop_map(move |v| {
        TropMatrix::new(d, n, v.into_iter().map(TropScalar::from).collect()).unwrap()
    })
}

fn matrix(max_d: usize, max_n: usize, span: i64) -> impl Strategy<Value = TropMatrix> {
    (1..=max_d, 1..=max_n).prop_flat_map(move |(d, n)| matrix_of(d, n, span))
}

fn zero_one(max: usize) -> impl Strategy<Value = TropMatrix> {
    matrix(max, max, 1).prop_map(|m| {
        let mut rows: Vec<Vec<TropScalar>> = m
            .to_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| {
                        if v.is_negative() {
                            TropScalar::zero()
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        for c in 0..m.cols() {
            if rows.iter().all(|r| !r[c].is_zero()) {
                rows[0][c] = TropScalar::zero();
            }
        }
        TropMatrix::from_rows(rows).unwrap()
    })
}

fn shift_all(m: &TropMatrix, rows: &[i64], cols: &[i64]) -> TropMatrix {
    TropMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j) + &TropScalar::from(rows[i] + cols[j])
    })
    .unwrap()
}

fn two_by_two_consistent(m: &TropMatrix) -> bool {
    (0..m.rows()).all(|i| {
        (0..m.rows()).all(|k| {
            (0..m.cols()).all(|j| {
                (0..m.cols()).all(|l| m.get(i, j) + m.get(k, l) == m.get(i, l) + m.get(k, j))
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn semiring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.oplus(&b), b.oplus(&a));
        prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
        prop_assert_eq!(a.oplus(&a), a.clone());
        prop_assert_eq!(a.otimes(&b).otimes(&c), a.otimes(&b.otimes(&c)));
        prop_assert_eq!(a.otimes(&b.oplus(&c)), a.otimes(&b).oplus(&a.otimes(&c)));
    }

    #[test]
    fn matmul_is_associative(
        (a, b, c) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(p, q, r, s)| {
            (matrix_of(p, q, 5), matrix_of(q, r, 5), matrix_of(r, s, 5))
        })
    ) {
        let left = trop_matmul(&trop_matmul(&a, &b).unwrap(), &c).unwrap();
        let right = trop_matmul(&a, &trop_matmul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn row_constant_passes_through_product(
        (a, b) in (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(p, q, r)| (matrix_of(p, q, 5), matrix_of(q, r, 5))),
        c in scalar(),
        pick in any::<prop::sample::Index>(),
    ) {
        let i = pick.index(a.rows());
        let lhs = trop_matmul(&a.add_to_row(i, &c), &b).unwrap();
        let rhs = trop_matmul(&a, &b).unwrap().add_to_row(i, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_one_factor_matches_minor_condition(m in matrix(4, 4, 2)) {
        let f = rank_one_factor(&m);
        prop_assert_eq!(f.is_some(), two_by_two_consistent(&m));
        if let Some((x, y)) = f {
            prop_assert_eq!(troprank::matrix::outer(&x, &y).unwrap(), m);
        }
    }

    #[test]
    fn rank_one_products_factor(
        x in proptest::collection::vec(scalar(), 1..5),
        y in proptest::collection::vec(scalar(), 1..5),
    ) {
        let m = troprank::matrix::outer(&x, &y).unwrap();
        prop_assert!(two_by_two_consistent(&m));
        prop_assert!(rank_one_factor(&m).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ranks_form_a_chain_and_are_invariant(
        m in matrix(4, 4, 3),
        rs in proptest::collection::vec(-3i64..=3, 4),
        cs in proptest::collection::vec(-3i64..=3, 4),
    ) {
        let r = rank_report(&m).unwrap();
        prop_assert!(r.is_consistent(&m));
        let key = |r: &troprank::RankReport| (r.tropical.rank, r.barvinok.lo(), r.barvinok.hi(), r.kapranov.clone());
        let t = rank_report(&m.transpose()).unwrap();
        prop_assert_eq!(key(&t), key(&r));
        let shifted = shift_all(&m, &rs[..m.rows()], &cs[..m.cols()]);
        prop_assert_eq!(key(&rank_report(&shifted).unwrap()), key(&r));
    }

    #[test]
    fn minors_never_have_larger_rank(m in matrix(4, 4, 3), keep in any::<u8>()) {
        let rows: Vec<usize> = (0..m.rows()).filter(|i| keep >> i & 1 == 1).collect();
        let cols: Vec<usize> = (0..m.cols()).filter(|j| keep >> (4 + j) & 1 == 1).collect();
        prop_assume!(!rows.is_empty() && !cols.is_empty());
        let s = m.submatrix(&rows, &cols).unwrap();
        prop_assert!(tropical_rank(&s).rank <= tropical_rank(&m).rank);
        prop_assert!(barvinok_rank(&s).unwrap().hi() <= barvinok_rank(&m).unwrap().hi());
        prop_assert!(kapranov_report(&s).unwrap().lo <= kapranov_report(&m).unwrap().lo);
    }

    #[test]
    fn fast_two_term_test_agrees_with_search(m in matrix(4, 4, 3)) {
        let exact = barvinok_rank(&m).unwrap().exact().expect("small instances are decided");
        prop_assert_eq!(barvinok_rank2_fast(&m).unwrap(), exact <= 2);
    }

    #[test]
    fn zero_one_rank_is_chain_length(m in zero_one(5)) {
        prop_assert_eq!(tropical_rank_01(&m).unwrap(), tropical_rank(&m).rank);
    }

    #[test]
    fn ranks_are_subadditive(
        (a, b) in (1usize..=4, 1usize..=4).prop_flat_map(|(d, n)| (matrix_of(d, n, 3), matrix_of(d, n, 3))),
        c in (1usize..=4).prop_flat_map(|k| matrix_of(k, 3, 3)),
    ) {
        let sum = trop_add(&a, &b).unwrap();
        prop_assert!(tropical_rank(&sum).rank <= tropical_rank(&a).rank + tropical_rank(&b).rank);
        let bv = |m: &TropMatrix| barvinok_rank(m).unwrap().exact().unwrap();
        prop_assert!(bv(&sum) <= bv(&a) + bv(&b));
        if c.rows() == a.cols() {
            let p = trop_matmul(&a, &c).unwrap();
            prop_assert!(tropical_rank(&p).rank <= tropical_rank(&a).rank.min(tropical_rank(&c).rank));
            prop_assert!(bv(&p) <= bv(&a).min(bv(&c)));
        }
    }

    #[test]
    fn residuation(m in matrix(4, 4, 4), raw in proptest::collection::vec(-6i64..=6, 4)) {
        let b: Vec<TropScalar> = raw[..m.rows()].iter().map(|&v| v.into()).collect();
        let x = principal_solution(&m, &b).unwrap();
        let mx = m.apply(&x).unwrap();
        prop_assert!(mx.iter().zip(&b).all(|(u, v)| u >= v));
        let solvable = mx == b;
        prop_assert_eq!(solvable, !matches!(solve_status(&m, &b).unwrap(), SolveStatus::Inconsistent { .. }));
    }

    #[test]
    fn principal_solution_is_least(m in matrix(4, 4, 4), raw in proptest::collection::vec(-6i64..=6, 4)) {
        let x0: Vec<TropScalar> = raw[..m.cols()].iter().map(|&v| v.into()).collect();
        let b = m.apply(&x0).unwrap();
        let x = principal_solution(&m, &b).unwrap();
        prop_assert!(x.iter().zip(&x0).all(|(u, v)| u <= v));
        prop_assert_eq!(m.apply(&x).unwrap(), b);
    }

    #[test]
    fn strong_independence_equals_tropical_rank(m in matrix(4, 4, 3)) {
        let s = strong_independence_rank(&m).unwrap();
        prop_assert_eq!(s.rank, tropical_rank(&m).rank);
        let rows: Vec<usize> = (0..m.rows()).collect();
        let sub = m.submatrix(&rows, &s.columns).unwrap();
        let unique = matches!(solve_status(&sub, &s.b).unwrap(), SolveStatus::Unique { .. });
        prop_assert!(unique);
    }
}

#[test]
fn cocircuit_matrices_have_matroid_rank() {
    let mut matroids: Vec<Matroid> = (1..=7)
        .flat_map(|n| (1..=n).map(move |r| Matroid::uniform(n, r).unwrap()))
        .collect();
    matroids.push(Matroid::fano());
    matroids.push(Matroid::non_fano());
    for m in matroids {
        let c = m.cocircuit_matrix().unwrap();
        assert!(
            (0..c.cols()).all(|j| c.col(j).iter().any(TropScalar::is_zero)),
            "{m}"
        );
        assert_eq!(tropical_rank(&c).rank, m.rank(), "{m}");
        assert_eq!(tropical_rank_01(&c).unwrap(), m.rank(), "{m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sequential_and_parallel_agree(m in matrix(4, 6, 2)) {
        use troprank::{Config, barvinok_rank_with, maximal_independent_column_sets_with, tropical_rank_with};
        let (seq, par) = (Config::sequential(), Config::default());
        prop_assert_eq!(tropical_rank_with(&m, &seq), tropical_rank_with(&m, &par));
        prop_assert_eq!(barvinok_rank_with(&m, &seq).unwrap(), barvinok_rank_with(&m, &par).unwrap());
        prop_assert_eq!(
            maximal_independent_column_sets_with(&m, &seq).unwrap(),
            maximal_independent_column_sets_with(&m, &par).unwrap()
        );
    }
}
