use proptest::prelude::*;
use troprank::convex::{enumerate_hull_cells_with, type_of_point, type_to_mixed_cell};
use troprank::{
    cell_dim_from_type, hull_dimension, is_type_realizable, tropical_rank, Config, TropMatrix,
    TropScalar,
};

fn matrix(max_d: usize, max_n: usize, span: i64) -> impl Strategy<Value = TropMatrix> {
    (1..=max_d, 1..=max_n).prop_flat_map(move |(d, n)| {
        proptest::collection::vec(-span..=span, d * n).prop_map(move |v| {
            TropMatrix::new(d, n, v.into_iter().map(TropScalar::from).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_dimension_plus_one_is_tropical_rank(m in matrix(4, 4, 3)) {
        prop_assert_eq!(hull_dimension(&m).unwrap() + 1, tropical_rank(&m).rank);
    }

    #[test]
    fn cells_have_exact_witnesses_and_complementary_mixed_cells(m in matrix(4, 4, 3)) {
        let d = m.rows();
        let cells = enumerate_hull_cells_with(&m, &Config::default()).unwrap();
        let mut min_mixed = usize::MAX;
        for c in &cells {
            prop_assert_eq!(&type_of_point(&c.witness, &m).unwrap(), &c.ty);
            prop_assert_eq!(c.dim, cell_dim_from_type(&c.ty).unwrap());
            let mixed = type_to_mixed_cell(&c.ty).unwrap();
            prop_assert!(mixed.interior);
            prop_assert_eq!(c.dim + mixed.mixed_dim, d - 1);
            min_mixed = min_mixed.min(mixed.mixed_dim);
        }
        prop_assert_eq!(tropical_rank(&m).rank, d - min_mixed);
    }

    #[test]
    fn sampled_points_round_trip(m in matrix(4, 5, 4), raw in proptest::collection::vec(-12i64..=12, 4)) {
        let x: Vec<TropScalar> = raw[..m.rows()].iter().map(|&v| TropScalar::new(v, 2)).collect();
        let t = type_of_point(&x, &m).unwrap();
        let w = is_type_realizable(&t, &m).unwrap().expect("the sample itself realizes its type");
        prop_assert_eq!(type_of_point(&w, &m).unwrap(), t);
    }
}

/// Every bounded type met on a fine grid of sample points is among the
/// enumerated cells.
#[test]
fn grid_sampling_finds_no_missing_cell() {
    let cases: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![0, 4, 2], vec![2, 1, 0], vec![2, 4, 3]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        vec![vec![0, 0, 0, 0], vec![0, 2, 1, 3], vec![0, 1, 3, 2]],
        vec![vec![0, 3, 1], vec![1, 0, 2], vec![2, 2, 0]],
    ];
    for rows in cases {
        let m = TropMatrix::from_int_rows(&rows).unwrap();
        let cells = enumerate_hull_cells_with(&m, &Config::default()).unwrap();
        let known: std::collections::HashSet<_> = cells.iter().map(|c| c.ty.clone()).collect();
        // quarter steps resolve every cell of these integer configurations
        for a in -24..=24 {
            for b in -24..=24 {
                let x = vec![
                    TropScalar::zero(),
                    TropScalar::new(a, 4),
                    TropScalar::new(b, 4),
                ];
                let t = type_of_point(&x, &m).unwrap();
                if t.is_bounded() {
                    assert!(known.contains(&t), "missing cell {t} at {x:?}");
                }
            }
        }
    }
}
