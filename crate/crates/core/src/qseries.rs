//! Pochhammer symbols and terminating (basic) hypergeometric series.
//!
//! ```text
//! (a)_n    = a (a+1) ... (a+n-1)
//! (a;q)_n  = (1-a)(1-aq)...(1-aq^(n-1))
//! rFs(a_1..a_r; b_1..b_s | z)     = sum_k (a_1..a_r)_k / (b_1..b_s)_k z^k / k!
//! rphis(a_1..a_r; b_1..b_s | q; z) = sum_k (a_1..a_r;q)_k / (b_1..b_s;q)_k
//!                                    * ((-1)^k q^(k(k-1)/2))^(1+s-r) z^k / (q;q)_k
//! ```
//!
//! A series is summed up to its termination degree, or up to the first order
//! at which a numerator factor vanishes, whichever comes first.

use crate::error::{Error, Result};
use crate::exact::{qpow, Rational};
use num_traits::{One, Zero};

/// Shifted factorial `(a)_n`.
pub fn poch(a: &Rational, n: usize) -> Rational {
    let mut r = Rational::one();
    let mut t = a.clone();
    for _ in 0..n {
        r *= &t;
        t += Rational::one();
    }
    r
}

/// q-shifted factorial `(a;q)_n`.
pub fn qpoch(a: &Rational, q: &Rational, n: usize) -> Rational {
    let mut r = Rational::one();
    let mut t = a.clone();
    for _ in 0..n {
        r *= Rational::one() - &t;
        t *= q;
    }
    r
}

/// Product `(a_1, ..., a_k; q)_n`.
pub fn qpoch_many(args: &[Rational], q: &Rational, n: usize) -> Rational {
    args.iter().map(|a| qpoch(a, q, n)).product()
}

/// Product `(a_1, ..., a_k)_n`.
pub fn poch_many(args: &[Rational], n: usize) -> Rational {
    args.iter().map(|a| poch(a, n)).product()
}

/// Checks `(a;q^-1)_n = (-a)^n q^(-n(n-1)/2) (a^-1;q)_n` exactly.
pub fn qpoch_inverse_base_identity_check(a: &Rational, q: &Rational, n: usize) -> Result<bool> {
    if a.is_zero() || q.is_zero() {
        return Err(Error::InvalidInput("a and q must be nonzero".into()));
    }
    let lhs = qpoch(a, &q.recip(), n);
    let n_i = n as i64;
    let rhs = qpow(&-a.clone(), n_i) * qpow(q, -(n_i * (n_i - 1) / 2)) * qpoch(&a.recip(), q, n);
    Ok(lhs == rhs)
}

/// Which kind of series a [`SeriesSpec`] describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    /// Ordinary hypergeometric `rFs`.
    Ordinary,
    /// Basic hypergeometric `rphis` in base `q`.
    Q(Rational),
}

/// A terminating series `rFs` or `rphis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub numerator: Vec<Rational>,
    pub denominator: Vec<Rational>,
    pub base: Base,
    pub argument: Rational,
    pub termination_degree: usize,
}

impl SeriesSpec {
    /// Ordinary series; some numerator parameter must equal `-degree`.
    pub fn ordinary(numerator: Vec<Rational>, denominator: Vec<Rational>, argument: Rational, degree: usize) -> Result<Self> {
        let target = -Rational::from_integer((degree as i64).into());
        if !numerator.contains(&target) {
            return Err(Error::InvalidInput(format!("no numerator parameter equals -{degree}")));
        }
        Ok(SeriesSpec { numerator, denominator, base: Base::Ordinary, argument, termination_degree: degree })
    }

    /// Basic series; some numerator parameter must equal `q^-degree`.
    pub fn basic(
        numerator: Vec<Rational>,
        denominator: Vec<Rational>,
        q: Rational,
        argument: Rational,
        degree: usize,
    ) -> Result<Self> {
        if q <= Rational::zero() || q == Rational::one() {
            return Err(Error::InvalidInput(format!("base must be positive and different from 1, got {q}")));
        }
        let target = qpow(&q, -(degree as i64));
        if !numerator.contains(&target) {
            return Err(Error::InvalidInput(format!("no numerator parameter equals q^-{degree}")));
        }
        Ok(SeriesSpec { numerator, denominator, base: Base::Q(q), argument, termination_degree: degree })
    }

    /// Exact value of the series.
    pub fn eval(&self) -> Result<Rational> {
        hyper_terminating(self)
    }
}

/// Sums a terminating series exactly.
///
/// Fails with [`Error::PoleInSeries`] when a denominator factor vanishes at an
/// order whose numerator is still nonzero.
pub fn hyper_terminating(spec: &SeriesSpec) -> Result<Rational> {
    let r = spec.numerator.len() as i64;
    let s = spec.denominator.len() as i64;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    // Running q^k for the basic case.
    let mut qk = Rational::one();
    for k in 0..spec.termination_degree {
        let (num, den) = match &spec.base {
            Base::Ordinary => {
                let kk = Rational::from_integer((k as i64).into());
                let num: Rational = spec.numerator.iter().map(|a| a + &kk).product();
                if num.is_zero() {
                    break;
                }
                let mut den = Rational::one();
                for (j, b) in spec.denominator.iter().enumerate() {
                    let f = b + &kk;
                    if f.is_zero() {
                        return Err(Error::PoleInSeries { parameter: format!("b{} = {}", j + 1, b), order: k + 1 });
                    }
                    den *= f;
                }
                (num * &spec.argument, den * Rational::from_integer((k as i64 + 1).into()))
            }
            Base::Q(q) => {
                let num: Rational = spec.numerator.iter().map(|a| Rational::one() - a * &qk).product();
                if num.is_zero() {
                    break;
                }
                let mut den = Rational::one();
                for (j, b) in spec.denominator.iter().enumerate() {
                    let f = Rational::one() - b * &qk;
                    if f.is_zero() {
                        return Err(Error::PoleInSeries { parameter: format!("b{} = {}", j + 1, b), order: k + 1 });
                    }
                    den *= f;
                }
                den *= Rational::one() - &qk * q;
                let e = 1 + s - r;
                let mut extra = num_traits::pow(-qk.clone(), e.unsigned_abs() as usize);
                if e < 0 {
                    extra = extra.recip();
                }
                let out = (num * &spec.argument * extra, den);
                qk *= q;
                out
            }
        };
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

/// `rFs(num; den | z)` terminating at `degree`.
pub fn hyper_f(num: Vec<Rational>, den: Vec<Rational>, z: Rational, degree: usize) -> Result<Rational> {
    SeriesSpec::ordinary(num, den, z, degree)?.eval()
}

/// `rphis(num; den | q; z)` terminating at `degree`.
pub fn hyper_phi(num: Vec<Rational>, den: Vec<Rational>, q: &Rational, z: Rational, degree: usize) -> Result<Rational> {
    SeriesSpec::basic(num, den, q.clone(), z, degree)?.eval()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn poch_small() {
        assert_eq!(poch(&int(3), 4), int(360));
        assert_eq!(poch(&int(-2), 3), int(0));
        assert_eq!(poch(&int(5), 0), int(1));
    }

    #[test]
    fn qpoch_small() {
        let q = rat(1, 2).unwrap();
        // (1/2;1/2)_3 = (1/2)(3/4)(7/8)
        assert_eq!(qpoch(&q, &q, 3), rat(21, 64).unwrap());
    }

    #[test]
    fn inverse_base() {
        let q = rat(1, 3).unwrap();
        for n in 0..7 {
            assert!(qpoch_inverse_base_identity_check(&rat(5, 7).unwrap(), &q, n).unwrap());
        }
    }

    #[test]
    fn chu_vandermonde() {
        // 2F1(-n, b; c | 1) = (c-b)_n / (c)_n
        let b = rat(1, 3).unwrap();
        let c = rat(7, 5).unwrap();
        for n in 0..6usize {
            let v = hyper_f(vec![int(-(n as i64)), b.clone()], vec![c.clone()], int(1), n).unwrap();
            assert_eq!(v, poch(&(&c - &b), n) / poch(&c, n));
        }
    }

    #[test]
    fn q_chu_vandermonde() {
        // 2phi1(q^-n, b; c | q; q) = (c/b;q)_n / (c;q)_n * b^n
        let q = rat(1, 2).unwrap();
        let b = rat(2, 3).unwrap();
        let c = rat(1, 5).unwrap();
        for n in 0..6usize {
            let v = hyper_phi(vec![qpow(&q, -(n as i64)), b.clone()], vec![c.clone()], &q, q.clone(), n).unwrap();
            let expect = qpoch(&(&c / &b), &q, n) / qpoch(&c, &q, n) * qpow(&b, n as i64);
            assert_eq!(v, expect);
        }
    }

    #[test]
    fn pole_detected() {
        let e = hyper_f(vec![int(-3)], vec![int(-1)], int(1), 3).unwrap_err();
        assert!(matches!(e, Error::PoleInSeries { order: 2, .. }));
    }

    #[test]
    fn numerator_zero_stops_early() {
        // (-1)_k vanishes from k = 2 on, before the denominator (-2)_k does.
        let v = hyper_f(vec![int(-3), int(-1)], vec![int(-2)], int(1), 3).unwrap();
        assert_eq!(v, int(1) + int(-3) * int(-1) / int(-2));
    }

    #[test]
    fn requires_termination() {
        assert!(SeriesSpec::ordinary(vec![int(1)], vec![], int(1), 2).is_err());
        assert!(SeriesSpec::basic(vec![int(4)], vec![], int(1), int(1), 2).is_err());
    }
}
