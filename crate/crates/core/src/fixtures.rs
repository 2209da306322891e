//! Worked matrices with known ranks, for tests and demonstrations.
//!
//! Values here are facts from the literature, not outputs of this crate.
//! Nothing in the library reads them.

use crate::matrix::TropMatrix;

fn m<const N: usize>(rows: &[[i64; N]]) -> TropMatrix {
    TropMatrix::from_int_rows(rows).expect("fixture is rectangular")
}

/// A 3x3 matrix of tropical and Barvinok rank 2, determinant 4 attained
/// by two permutations.
pub fn example_matrix() -> TropMatrix {
    m(&[[0, 4, 2], [2, 1, 0], [2, 4, 3]])
}

/// Two rank-one terms whose tropical sum is [`example_matrix`].
pub fn example_terms() -> Vec<TropMatrix> {
    vec![
        m(&[[0, 4, 2], [2, 6, 4], [2, 6, 4]]),
        m(&[[5, 4, 3], [2, 1, 0], [5, 4, 3]]),
    ]
}

/// Four rank-one matrices whose tropical sum is the 6x6 classical identity.
pub fn c6_terms() -> Vec<TropMatrix> {
    vec![
        m(&[
            [1, 1, 1, 2, 2, 2],
            [1, 1, 1, 2, 2, 2],
            [1, 1, 1, 2, 2, 2],
            [0, 0, 0, 1, 1, 1],
            [0, 0, 0, 1, 1, 1],
            [0, 0, 0, 1, 1, 1],
        ]),
        m(&[
            [1, 1, 0, 0, 0, 1],
            [1, 1, 0, 0, 0, 1],
            [2, 2, 1, 1, 1, 2],
            [2, 2, 1, 1, 1, 2],
            [2, 2, 1, 1, 1, 2],
            [1, 1, 0, 0, 0, 1],
        ]),
        m(&[
            [1, 0, 1, 0, 1, 0],
            [2, 1, 2, 1, 2, 1],
            [1, 0, 1, 0, 1, 0],
            [2, 1, 2, 1, 2, 1],
            [1, 0, 1, 0, 1, 0],
            [2, 1, 2, 1, 2, 1],
        ]),
        m(&[
            [1, 2, 2, 2, 1, 1],
            [0, 1, 1, 1, 0, 0],
            [0, 1, 1, 1, 0, 0],
            [0, 1, 1, 1, 0, 0],
            [1, 2, 2, 2, 1, 1],
            [1, 2, 2, 2, 1, 1],
        ]),
    ]
}

/// Cocircuit matrix of the Fano plane in its customary column order.
pub fn fano_cocircuit_matrix() -> TropMatrix {
    m(&[
        [1, 1, 0, 1, 0, 0, 0],
        [0, 1, 1, 0, 1, 0, 0],
        [0, 0, 1, 1, 0, 1, 0],
        [0, 0, 0, 1, 1, 0, 1],
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 0, 1, 1],
        [1, 0, 1, 0, 0, 0, 1],
    ])
}

/// Kapranov rank of the Fano cocircuit matrix over the complex numbers.
pub const FANO_KAPRANOV_RANK: usize = 4;

/// Four points in the plane whose strongly independent column sets are
/// not the independent sets of a matroid.
pub fn four_point_matrix() -> TropMatrix {
    m(&[[0, 0, 0, 0], [0, 0, 1, 2], [1, 0, 0, -1]])
}

/// Maximal strongly independent column sets of [`four_point_matrix`],
/// 0-based.
pub fn four_point_maximal_sets() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![0, 2, 3], vec![1, 2, 3]]
}

/// Tropical and Barvinok rank 2, yet Kapranov rank 3 over the field with
/// two elements.
pub fn two_element_field_matrix() -> TropMatrix {
    m(&[[1, 0, 0], [0, 1, 0], [0, 0, 0]])
}

pub fn two_element_field_terms() -> Vec<TropMatrix> {
    vec![
        m(&[[1, 0, 0], [2, 1, 1], [1, 0, 0]]),
        m(&[[1, 2, 1], [0, 1, 0], [0, 1, 0]]),
    ]
}

pub const TWO_ELEMENT_FIELD_KAPRANOV_RANK: usize = 3;
