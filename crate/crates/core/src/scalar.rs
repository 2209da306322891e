//! Exact rational scalars of the min-plus semiring.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finite element of the tropical semiring `(Q, min, +)`.
///
/// The value is stored as a reduced fraction with a positive denominator;
/// every operation is exact. Tropical addition is [`TropScalar::oplus`]
/// (minimum) and tropical multiplication is ordinary `+`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TropScalar(BigRational);

impl TropScalar {
    pub fn zero() -> Self {
        TropScalar(BigRational::zero())
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        TropScalar(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_rational(value: BigRational) -> Self {
        TropScalar(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Tropical sum `a ⊕ b = min(a, b)`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product `a ⊙ b = a + b`.
    pub fn otimes(&self, other: &Self) -> Self {
        TropScalar(&self.0 + &other.0)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational literal: {:?}", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

impl FromStr for TropScalar {
    type Err = ParseScalarError;

    /// Accepts `"p"` or `"p/q"` with integer `p`, positive integer `q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        let valid_int = |x: &str, allow_sign: bool| {
            let digits = if allow_sign {
                x.strip_prefix(['-', '+']).unwrap_or(x)
            } else {
                x
            };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        match t.split_once('/') {
            None => {
                if !valid_int(t, true) {
                    return Err(err());
                }
                let n: BigInt = t.parse().map_err(|_| err())?;
                Ok(TropScalar(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                if !valid_int(p, true) || !valid_int(q, false) {
                    return Err(err());
                }
                let n: BigInt = p.parse().map_err(|_| err())?;
                let d: BigInt = q.parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(TropScalar(BigRational::new(n, d)))
            }
        }
    }
}

impl From<i64> for TropScalar {
    fn from(v: i64) -> Self {
        TropScalar(BigRational::from_integer(v.into()))
    }
}

impl From<i32> for TropScalar {
    fn from(v: i32) -> Self {
        TropScalar::from(v as i64)
    }
}

impl From<BigRational> for TropScalar {
    fn from(v: BigRational) -> Self {
        TropScalar(v)
    }
}

impl Add for TropScalar {
    type Output = TropScalar;
    fn add(self, rhs: TropScalar) -> TropScalar {
        TropScalar(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a TropScalar> for &'a TropScalar {
    type Output = TropScalar;
    fn add(self, rhs: &'a TropScalar) -> TropScalar {
        TropScalar(&self.0 + &rhs.0)
    }
}

impl AddAssign<&TropScalar> for TropScalar {
    fn add_assign(&mut self, rhs: &TropScalar) {
        self.0 += &rhs.0;
    }
}

impl Sub for TropScalar {
    type Output = TropScalar;
    fn sub(self, rhs: TropScalar) -> TropScalar {
        TropScalar(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a TropScalar> for &'a TropScalar {
    type Output = TropScalar;
    fn sub(self, rhs: &'a TropScalar) -> TropScalar {
        TropScalar(&self.0 - &rhs.0)
    }
}

impl Neg for TropScalar {
    type Output = TropScalar;
    fn neg(self) -> TropScalar {
        TropScalar(-self.0)
    }
}

impl Neg for &TropScalar {
    type Output = TropScalar;
    fn neg(self) -> TropScalar {
        TropScalar(-&self.0)
    }
}

impl std::iter::Sum for TropScalar {
    fn sum<I: Iterator<Item = TropScalar>>(iter: I) -> Self {
        iter.fold(TropScalar::zero(), |a, b| a + b)
    }
}
