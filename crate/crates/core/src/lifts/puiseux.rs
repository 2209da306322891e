//! Finite Puiseux polynomials `sum c_k t^{e_k}` with rational `c_k`, `e_k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TropError};
use crate::matrix::TropMatrix;
use crate::scalar::TropScalar;

/// Terms sorted by strictly increasing exponent, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxPoly {
    terms: Vec<(BigRational, BigRational)>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, BigRational::zero())
    }

    /// `c * t^e`
    pub fn monomial(c: BigRational, e: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            PuiseuxPoly {
                terms: vec![(e, c)],
            }
        }
    }

    /// `t^e` with coefficient one.
    pub fn t_pow(e: &TropScalar) -> Self {
        Self::monomial(BigRational::one(), e.as_rational().clone())
    }

    /// Integer-coefficient shorthand: `c * t^e`.
    pub fn int_term(c: i64, e: i64) -> Self {
        Self::monomial(q(c), q(e))
    }

    /// Builds from `(exponent, coefficient)` pairs in any order, merging
    /// equal exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (BigRational, BigRational)>) -> Self {
        let mut v: Vec<(BigRational, BigRational)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        PuiseuxPoly { terms: out }
    }

    /// `(exponent, coefficient)` pairs by increasing exponent.
    pub fn terms(&self) -> &[(BigRational, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<TropScalar> {
        self.terms
            .first()
            .map(|(e, _)| TropScalar::from_rational(e.clone()))
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &BigRational) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let neg = |c: &BigRational| if sign < 0 { -c.clone() } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0.clone(), neg(&b[j].1)));
                j += 1;
            } else {
                let c = &a[i].1 + neg(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        PuiseuxPoly { terms: out }
    }
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.merge(rhs, 1)
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.merge(rhs, -1)
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(e1, c1)| rhs.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2))),
        )
    }
}

impl Add for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
        &self + &rhs
    }
}

impl Sub for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
        &self - &rhs
    }
}

impl Mul for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
        &self * &rhs
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for PuiseuxPoly {
    /// E.g. `1 - 2t^(1/2) + t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let power = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "t".to_string()
            } else if e.is_integer() && e.is_positive() {
                format!("t^{}", e.numer())
            } else {
                format!("t^({})", fmt_rat(e))
            };
            match (mag.is_one(), power.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&power)?,
                (false, true) => f.write_str(&fmt_rat(&mag))?,
                (false, false) => write!(f, "{}{}", fmt_rat(&mag), power)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A dense matrix of nonzero Puiseux polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxMatrix {
    rows: usize,
    cols: usize,
    data: Vec<PuiseuxPoly>,
}

impl PuiseuxMatrix {
    /// Rejects empty shapes and zero entries, whose degree is undefined.
    pub fn new(rows: usize, cols: usize, data: Vec<PuiseuxPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(TropError::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(PuiseuxPoly::is_zero) {
            return Err(TropError::domain(format!(
                "entry ({}, {}) is zero and has no degree",
                k / cols + 1,
                k % cols + 1
            )));
        }
        Ok(PuiseuxMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<PuiseuxPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(TropError::shape("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> PuiseuxPoly,
    ) -> Result<Self> {
        Self::new(
            rows,
            cols,
            (0..rows * cols).map(|k| f(k / cols, k % cols)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxPoly {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[PuiseuxPoly] {
        &self.data
    }

    /// Determinant of the square minor on `rows x cols`, by cofactor
    /// expansion.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> PuiseuxPoly {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        if rows.is_empty() {
            return PuiseuxPoly::one();
        }
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let rest_rows = &rows[1..];
        let mut acc = PuiseuxPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = self.get(rows[0], c) * &self.minor_det(rest_rows, &rest_cols);
            acc = if k % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }
}

impl fmt::Display for PuiseuxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Entrywise degree.
pub fn valuation_matrix(f: &PuiseuxMatrix) -> Result<TropMatrix> {
    let vals: Option<Vec<TropScalar>> = f.data.iter().map(PuiseuxPoly::valuation).collect();
    let vals = vals.ok_or_else(|| TropError::domain("zero entry has no degree"))?;
    TropMatrix::new(f.rows, f.cols, vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_and_products() {
        let t = PuiseuxPoly::int_term(1, 1);
        assert!((&t - &t).is_zero());
        let one = PuiseuxPoly::one();
        let p = &(&one + &t) * &(&one - &t);
        assert_eq!(p, &one - &PuiseuxPoly::int_term(1, 2));
        assert_eq!(p.to_string(), "1 - t^2");
    }

    #[test]
    fn leading_cancellation_raises_valuation() {
        let a = PuiseuxPoly::from_terms([(r(1, 2), q(3)), (q(1), q(1))]);
        let b = PuiseuxPoly::monomial(q(-3), r(1, 2));
        assert_eq!((&a + &b).valuation(), Some(TropScalar::from(1)));
        assert_eq!(a.to_string(), "3t^(1/2) + t");
    }

    #[test]
    fn valuations_of_matrices() {
        let m = PuiseuxMatrix::from_rows(vec![
            vec![PuiseuxPoly::int_term(1, 1), PuiseuxPoly::one()],
            vec![PuiseuxPoly::one(), PuiseuxPoly::int_term(1, 1)],
        ])
        .unwrap();
        assert_eq!(
            valuation_matrix(&m).unwrap(),
            TropMatrix::from_int_rows(&[[1, 0], [0, 1]]).unwrap()
        );
        assert_eq!(m.minor_det(&[0, 1], &[0, 1]).to_string(), "-1 + t^2");
        assert!(PuiseuxMatrix::from_rows(vec![vec![PuiseuxPoly::zero()]]).is_err());
    }
}
