//! Exact rational scalars and the small amount of linear algebra the
//! identity engines need.
//!
//! Every identity check runs on [`Rational`]; binary floating point only
//! appears through [`BigFloat`] once square roots are unavoidable.

mod bigfloat;
mod tridiag;

pub use bigfloat::BigFloat;
pub use tridiag::{continuant, eigenvalues_symmetric_tridiagonal, SymTridiagonal};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds `num/den`, reduced.
pub fn rat(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with an optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str, signed: bool| {
        let body = if signed { t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t) } else { t };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"p/q"` rendering (denominator always present).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `a / b`, reporting a zero denominator as an evaluation pole.
pub fn checked_div(a: &Rational, b: &Rational, what: &str) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::EvaluationPole(what.to_string()));
    }
    Ok(a / b)
}

/// `q^k` for any integer `k`; `q` must be nonzero when `k < 0`.
pub fn qpow(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(q.clone(), k as usize)
    } else {
        num_traits::pow(q.recip(), k.unsigned_abs() as usize)
    }
}

/// Outcome of comparing two sequences for exact proportionality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProportionalityStatus {
    Proportional,
    Mismatch,
    BothZero,
}

impl ProportionalityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProportionalityStatus::Proportional => "Proportional",
            ProportionalityStatus::Mismatch => "Mismatch",
            ProportionalityStatus::BothZero => "BothZero",
        }
    }
}

/// Result of [`fit_proportionality`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProportionalityReport {
    pub status: ProportionalityStatus,
    /// `lhs / rhs` when proportional.
    pub ratio: Option<Rational>,
    pub samples_used: usize,
    /// Indices where both sides vanish.
    pub degenerate_points: Vec<usize>,
    /// Index of the first disagreement, if any.
    pub first_mismatch: Option<usize>,
}

/// Decides whether `lhs = r * rhs` for a single nonzero rational `r`.
///
/// Points where both sides vanish carry no information and are recorded in
/// `degenerate_points`; a zero on exactly one side is a mismatch.
pub fn fit_proportionality(lhs: &[Rational], rhs: &[Rational]) -> Result<ProportionalityReport> {
    if lhs.len() != rhs.len() {
        return Err(Error::InvalidInput(format!(
            "length mismatch: {} vs {}",
            lhs.len(),
            rhs.len()
        )));
    }
    if lhs.is_empty() {
        return Err(Error::InvalidInput("empty sample".into()));
    }
    let mut ratio: Option<Rational> = None;
    let mut degenerate = Vec::new();
    let mut used = 0;
    for (i, (l, r)) in lhs.iter().zip(rhs).enumerate() {
        match (l.is_zero(), r.is_zero()) {
            (true, true) => degenerate.push(i),
            (true, false) | (false, true) => {
                return Ok(ProportionalityReport {
                    status: ProportionalityStatus::Mismatch,
                    ratio: None,
                    samples_used: used,
                    degenerate_points: degenerate,
                    first_mismatch: Some(i),
                })
            }
            (false, false) => {
                let q = l / r;
                match &ratio {
                    None => ratio = Some(q),
                    Some(r0) if *r0 == q => {}
                    Some(_) => {
                        return Ok(ProportionalityReport {
                            status: ProportionalityStatus::Mismatch,
                            ratio: None,
                            samples_used: used,
                            degenerate_points: degenerate,
                            first_mismatch: Some(i),
                        })
                    }
                }
                used += 1;
            }
        }
    }
    let status = if ratio.is_some() {
        ProportionalityStatus::Proportional
    } else {
        ProportionalityStatus::BothZero
    };
    Ok(ProportionalityReport { status, ratio, samples_used: used, degenerate_points: degenerate, first_mismatch: None })
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Result<Rational> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_reduces() {
        assert_eq!(rat(6, -4).unwrap(), rat(-3, 2).unwrap());
        assert_eq!(format_rational(&rat(0, 7).unwrap()), "0/1");
        assert_eq!(rat(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-7/9", "5/1", "0/1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn qpow_negative() {
        let q = rat(1, 2).unwrap();
        assert_eq!(qpow(&q, -3), int(8));
        assert_eq!(qpow(&q, 0), int(1));
    }

    #[test]
    fn proportional_example() {
        let l: Vec<_> = [1, 2, 3].iter().map(|&v| int(v)).collect();
        let r: Vec<_> = [2, 4, 6].iter().map(|&v| int(v)).collect();
        let rep = fit_proportionality(&l, &r).unwrap();
        assert_eq!(rep.status, ProportionalityStatus::Proportional);
        assert_eq!(rep.ratio, Some(rat(1, 2).unwrap()));
    }

    #[test]
    fn zero_on_one_side_is_mismatch() {
        let l = vec![int(1), int(0)];
        let r = vec![int(1), int(1)];
        assert_eq!(fit_proportionality(&l, &r).unwrap().status, ProportionalityStatus::Mismatch);
        let z = vec![int(0), int(0)];
        assert_eq!(fit_proportionality(&z, &z).unwrap().status, ProportionalityStatus::BothZero);
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(determinant(m).unwrap(), int(1));
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(m).unwrap(), int(-1));
        assert_eq!(determinant(vec![]).unwrap(), int(1));
    }
}
