//! Spectra of real symmetric tridiagonal matrices by Sturm-sequence bisection.

use super::BigFloat;
use crate::error::{Error, Result};

/// Real symmetric tridiagonal matrix: `diag[i]` on the diagonal and
/// `off[i]` at positions `(i, i+1)` and `(i+1, i)`.
#[derive(Clone, Debug)]
pub struct SymTridiagonal {
    pub diag: Vec<BigFloat>,
    pub off: Vec<BigFloat>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<BigFloat>, off: Vec<BigFloat>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    fn precision(&self) -> usize {
        self.diag[0].precision()
    }

    /// `T v`.
    pub fn apply(&self, v: &[BigFloat]) -> Vec<BigFloat> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = &self.diag[i] * &v[i];
                if i > 0 {
                    s = s + &self.off[i - 1] * &v[i - 1];
                }
                if i + 1 < n {
                    s = s + &self.off[i] * &v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (BigFloat, BigFloat) {
        let n = self.dim();
        let p = self.precision();
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for i in 0..n {
            let mut r = BigFloat::zero(p);
            if i > 0 {
                r = r + self.off[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.off[i].abs();
            }
            let l = &self.diag[i] - &r;
            let h = &self.diag[i] + &r;
            lo = Some(match lo {
                Some(x) if x < l => x,
                _ => l,
            });
            hi = Some(match hi {
                Some(x) if x > h => x,
                _ => h,
            });
        }
        (lo.unwrap(), hi.unwrap())
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: &BigFloat, tiny: &BigFloat) -> usize {
        let mut count = 0;
        let mut d = &self.diag[0] - x;
        for i in 0..self.dim() {
            if i > 0 {
                let b2 = &self.off[i - 1] * &self.off[i - 1];
                d = &(&self.diag[i] - x) - &(&b2 / &d);
            }
            if d.is_zero() {
                d = -tiny;
            }
            if d.is_negative() {
                count += 1;
            }
        }
        count
    }
}

/// Eigenvalues in ascending order, each bracketed to a width of
/// `2^(4-P)` times the Gershgorin radius.
pub fn eigenvalues_symmetric_tridiagonal(t: &SymTridiagonal) -> Vec<BigFloat> {
    let p = t.precision();
    let (lo0, hi0) = t.gershgorin();
    let scale = lo0.abs().max(hi0.abs()).max(BigFloat::one(p));
    let width = &scale * &BigFloat::pow2(4 - p as i64, p);
    let tiny = &scale * &BigFloat::pow2(-(p as i64) - 8, p);
    let half = BigFloat::pow2(-1, p);
    (0..t.dim())
        .map(|k| {
            let mut lo = lo0.clone();
            let mut hi = hi0.clone();
            while &hi - &lo > width {
                let mid = &(&lo + &hi) * &half;
                if t.count_below(&mid, &tiny) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            &(&lo + &hi) * &half
        })
        .collect()
}

/// Determinant of the tridiagonal matrix with the given diagonal and
/// products `upper[i] * lower[i]` of opposite off-diagonal entries.
pub fn continuant(diag: &[BigFloat], off_products: &[BigFloat]) -> BigFloat {
    let p = diag[0].precision();
    let mut prev = BigFloat::one(p);
    let mut cur = diag[0].clone();
    for i in 1..diag.len() {
        let next = &(&diag[i] * &cur) - &(&off_products[i - 1] * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: i64) -> BigFloat {
        BigFloat::from_i64(v, 128)
    }

    #[test]
    fn path_graph_laplacian() {
        // [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2 - sqrt 2, 2, 2 + sqrt 2.
        let t = SymTridiagonal::new(vec![bf(2), bf(2), bf(2)], vec![bf(-1), bf(-1)]).unwrap();
        let ev = eigenvalues_symmetric_tridiagonal(&t);
        let r2 = std::f64::consts::SQRT_2;
        let expect = [2.0 - r2, 2.0, 2.0 + r2];
        for (e, x) in ev.iter().zip(expect) {
            assert!((e.to_f64() - x).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_matrix() {
        let t = SymTridiagonal::new(vec![bf(3), bf(-1), bf(0)], vec![bf(0), bf(0)]).unwrap();
        let ev: Vec<f64> = eigenvalues_symmetric_tridiagonal(&t).iter().map(|e| e.to_f64()).collect();
        assert_eq!(ev.iter().map(|e| e.round() as i64).collect::<Vec<_>>(), vec![-1, 0, 3]);
    }

    #[test]
    fn continuant_matches_direct() {
        // det [[1,2,0],[3,4,5],[0,6,7]] = 1*(28-30) - 2*(21) = -44
        let d = continuant(&[bf(1), bf(4), bf(7)], &[bf(6), bf(30)]);
        assert_eq!(d.to_f64(), -44.0);
    }
}
