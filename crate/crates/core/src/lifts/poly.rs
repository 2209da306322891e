//! Dense univariate polynomials over Q and fraction-free elimination.

use num_rational::BigRational;
use num_traits::Zero;

/// Coefficients by increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Poly(Vec<BigRational>);

impl Poly {
    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::from_integer(1.into())])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                match o.0.get(i) {
                    Some(b) => a - b,
                    None => a,
                }
            })
            .collect();
        Poly::from_coeffs(c)
    }

    /// `self / d`, which must divide exactly.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dl = d.0.len();
        if rem.len() < dl {
            assert!(
                Poly::from_coeffs(rem).is_zero(),
                "inexact polynomial division"
            );
            return Poly::default();
        }
        let lead = d.0.last().expect("nonzero");
        let mut quot = vec![BigRational::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1] / lead;
            if !c.is_zero() {
                for (i, b) in d.0.iter().enumerate() {
                    rem[k + i] -= &c * b;
                }
            }
            quot[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::from_coeffs(quot)
    }
}

/// Rank over Q(s) by Bareiss elimination with full pivoting.
pub(crate) fn rank(mut a: Vec<Vec<Poly>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Poly::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((pi, pj)) = pivot else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev);
            }
            a[i][k] = Poly::default();
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(
            c.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 0, -1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), p(&[1, -1]));
    }

    #[test]
    fn ranks() {
        // [[1, s], [s, 1]] has determinant 1 - s^2
        assert_eq!(
            rank(vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[0, 1]), p(&[1])]]),
            2
        );
        // outer product of (1, s) and (s, s^2)
        assert_eq!(
            rank(vec![
                vec![p(&[0, 1]), p(&[0, 0, 1])],
                vec![p(&[0, 0, 1]), p(&[0, 0, 0, 1])]
            ]),
            1
        );
        assert_eq!(rank(vec![vec![p(&[]), p(&[])]]), 0);
    }
}
