//! Exact numeric backends for the combinatorial kernels.
//!
//! Comparisons, sums and differences of matrix entries are all that the
//! assignment and arrangement kernels need, so a matrix whose entries share a
//! small common denominator is rescaled to `i128` integers. Scaling by a
//! positive constant preserves every comparison and every tie exactly.
//! Matrices that do not fit fall back to `BigRational`.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::TropMatrix;
use crate::scalar::TropScalar;

/// Largest absolute scaled entry kept on the integer path; leaves headroom
/// for sums of many entries in `i128`.
const INT_LIMIT: i64 = 1 << 60;

pub(crate) trait Weight:
    Clone
    + Ord
    + Hash
    + Debug
    + Send
    + Sync
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
}

impl Weight for i128 {}
impl Weight for BigRational {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grid<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn sub(&self, rows: &[usize], cols: &[usize]) -> Grid<T> {
        Grid {
            rows: rows.len(),
            cols: cols.len(),
            data: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
        }
    }
}

impl<T: Weight> Grid<T> {
    pub fn negate(&self) -> Grid<T> {
        Grid {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }
}

/// A matrix in whichever exact representation is cheapest.
#[derive(Clone, Debug)]
pub(crate) enum Numeric {
    Int { grid: Grid<i128>, scale: BigInt },
    Big(Grid<BigRational>),
}

impl Numeric {
    pub fn from_matrix(m: &TropMatrix) -> Numeric {
        let scale = m
            .entries()
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Option<Vec<i128>> = m
            .entries()
            .iter()
            .map(|x| {
                let v = x.numer() * (&scale / x.denom());
                v.to_i64().filter(|v| v.abs() < INT_LIMIT).map(i128::from)
            })
            .collect();
        match scaled {
            Some(data) => Numeric::Int {
                grid: Grid {
                    rows: m.rows(),
                    cols: m.cols(),
                    data,
                },
                scale,
            },
            None => Numeric::Big(big_grid(m)),
        }
    }
}

pub(crate) fn big_grid(m: &TropMatrix) -> Grid<BigRational> {
    Grid {
        rows: m.rows(),
        cols: m.cols(),
        data: m
            .entries()
            .iter()
            .map(|x| x.as_rational().clone())
            .collect(),
    }
}

pub(crate) fn unscale(v: i128, scale: &BigInt) -> TropScalar {
    TropScalar::from_rational(BigRational::new(BigInt::from(v), scale.clone()))
}

pub(crate) trait ToScalar {
    fn to_scalar(&self, scale: Option<&BigInt>) -> TropScalar;
}

impl ToScalar for i128 {
    fn to_scalar(&self, scale: Option<&BigInt>) -> TropScalar {
        unscale(*self, scale.expect("integer weights carry a scale"))
    }
}

impl ToScalar for BigRational {
    fn to_scalar(&self, _scale: Option<&BigInt>) -> TropScalar {
        TropScalar::from_rational(self.clone())
    }
}
