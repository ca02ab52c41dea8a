//! Fixed-precision binary floating point backed by `dashu-float`.

use super::Rational;
use crate::error::{Error, Result};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

type Inner = FBig<HalfEven, 2>;

/// Binary floating point value with an explicit mantissa width in bits.
#[derive(Clone, Debug)]
pub struct BigFloat {
    inner: Inner,
    precision: usize,
}

fn ibig_from(b: &BigInt) -> IBig {
    let (sign, mag) = b.to_bytes_le();
    let u = IBig::from(UBig::from_le_bytes(&mag));
    if sign == Sign::Minus {
        -u
    } else {
        u
    }
}

fn bigint_from(i: &IBig) -> BigInt {
    let negative = *i < IBig::ZERO;
    let mag: UBig = if negative { (-i.clone()).try_into().unwrap() } else { i.clone().try_into().unwrap() };
    let b = BigInt::from_bytes_le(Sign::Plus, &mag.to_le_bytes());
    if negative {
        -b
    } else {
        b
    }
}

impl BigFloat {
    fn wrap(inner: Inner, precision: usize) -> Self {
        BigFloat { inner: inner.with_precision(precision).value(), precision }
    }

    /// Nearest representable value to `r` at `precision` bits.
    pub fn from_rational(r: &Rational, precision: usize) -> Self {
        assert!(precision >= 2, "precision must be at least 2 bits");
        if r.is_zero() {
            return Self::zero(precision);
        }
        let num = r.numer();
        let den = r.denom();
        // Scale so the truncated integer quotient carries precision + 2 bits.
        let k = precision as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let quotient = if k >= 0 { (num << k as usize) / den } else { num / (den << (-k) as usize) };
        let inner = Inner::from_parts(ibig_from(&quotient), -k as isize);
        Self::wrap(inner, precision)
    }

    pub fn from_i64(v: i64, precision: usize) -> Self {
        Self::wrap(Inner::from(IBig::from(v)), precision)
    }

    pub fn zero(precision: usize) -> Self {
        Self::from_i64(0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::from_i64(1, precision)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64, precision: usize) -> Self {
        Self::wrap(Inner::from_parts(IBig::from(1), e as isize), precision)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> Rational {
        let repr = self.inner.repr();
        let s = bigint_from(repr.significand());
        let e = repr.exponent();
        if e >= 0 {
            Rational::from_integer(s << e as usize)
        } else {
            Rational::new(s, BigInt::one() << (-e) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.inner.to_f64().value()
    }

    pub fn is_negative(&self) -> bool {
        self.inner < Inner::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.inner == Inner::ZERO
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Square root; negative input is an error rather than a NaN.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::InvalidInput(format!("square root of negative value {}", self)));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(Self::wrap(self.inner.sqrt(), self.precision))
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.inner.partial_cmp(&other.inner)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { inner: -self.inner.clone(), precision: self.precision }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { inner: -self.inner, precision: self.precision }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                let p = self.precision.max(rhs.precision);
                BigFloat::wrap(&self.inner $op &rhs.inner, p)
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn third_round_trips() {
        let r = rat(1, 3).unwrap();
        let f = BigFloat::from_rational(&r, 256);
        let err = (f.to_rational() - &r) / &r;
        let bound = BigFloat::pow2(-255, 256).to_rational();
        assert!(num_traits::Signed::abs(&err) <= bound);
    }

    #[test]
    fn sqrt_of_two_squares_back() {
        let two = BigFloat::from_i64(2, 256);
        let s = two.sqrt().unwrap();
        let d = (&(&s * &s) - &two).abs();
        assert!(d < BigFloat::pow2(-250, 256));
        assert!((s.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn negative_sqrt_is_error() {
        assert!(BigFloat::from_i64(-1, 64).sqrt().is_err());
    }

    #[test]
    fn exact_integers() {
        let f = BigFloat::from_rational(&rat(-12, 1).unwrap(), 64);
        assert_eq!(f.to_rational(), rat(-12, 1).unwrap());
    }
}
