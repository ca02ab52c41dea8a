//! Limit relations between families.
//!
//! Each edge embeds the target parameters into the source family along a
//! one-parameter path and compares the source polynomial with the target
//! polynomial exactly at each point of a sequence approaching the limit.

use super::{eval_polynomial, FamilyId, ParamSet, Slot};
use crate::error::{Error, Result};
use crate::exact::{int, qpow, rat, Rational};
use crate::qseries::qpoch;
use num_traits::{One, Signed, Zero};

/// Where the path parameter goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Infinity,
    Zero,
    /// The lattice size `N` grows; path values are integers.
    LatticeSize,
}

/// One edge `source -> target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LimitEdge {
    pub source: FamilyId,
    pub target: FamilyId,
    /// Name of the path parameter.
    pub parameter: &'static str,
    pub direction: Direction,
}

use Direction::*;
use FamilyId::*;

const fn edge(source: FamilyId, target: FamilyId, parameter: &'static str, direction: Direction) -> LimitEdge {
    LimitEdge { source, target, parameter, direction }
}

pub const EDGES: [LimitEdge; 17] = [
    edge(Racah, Hahn, "d", Infinity),
    edge(Racah, DualHahn, "b'", Infinity),
    edge(Hahn, Krawtchouk, "t", Infinity),
    edge(QRacah, QHahn, "d", Zero),
    edge(QRacah, DualQHahn, "b'", Zero),
    edge(QHahn, QuantumQKrawtchouk, "a", Infinity),
    edge(QHahn, QKrawtchouk, "a", Zero),
    edge(DualQHahn, DualQKrawtchouk, "a", Zero),
    edge(QHahn, AffineQKrawtchouk, "b", Zero),
    edge(Hahn, Meixner, "N", LatticeSize),
    edge(Meixner, Charlier, "beta", Infinity),
    edge(QHahn, LittleQJacobi, "N", LatticeSize),
    edge(QHahn, QMeixner, "N", LatticeSize),
    edge(LittleQJacobi, LittleQLaguerre, "b", Zero),
    edge(QMeixner, AlSalamCarlitzII, "c", Zero),
    edge(LittleQJacobi, QBessel, "a'", Zero),
    edge(QMeixner, QCharlier, "b", Zero),
];

pub fn find_edge(source: FamilyId, target: FamilyId) -> Result<&'static LimitEdge> {
    EDGES.iter().find(|e| e.source == source && e.target == target).ok_or_else(|| {
        Error::InvalidInput(format!("no limit edge {} -> {}", source.token(), target.token()))
    })
}

impl LimitEdge {
    /// Default path: `10^k` for `k = 1..=16` towards infinity, `10^-k` for `k = 2..=17` towards
    /// zero, and `N = 10^k` (classical) or `N = 5, 10, 20, 40, 80` (q) for a
    /// growing lattice.
    pub fn default_path(&self) -> Vec<Rational> {
        let ten = int(10);
        match self.direction {
            Infinity => (1..=16).map(|k| qpow(&ten, k)).collect(),
            Zero => (2..=17).map(|k| qpow(&ten, -k)).collect(),
            LatticeSize if self.source.is_q() => [5, 10, 20, 40, 80].into_iter().map(int).collect(),
            LatticeSize => (1..=16).map(|k| qpow(&ten, k)).collect(),
        }
    }

    /// Source parameters at path value `t`.
    pub fn embed(&self, target: &ParamSet, t: &Rational) -> Result<ParamSet> {
        if target.family() != self.target {
            return Err(Error::InvalidInput(format!(
                "edge {} -> {} got {} parameters",
                self.source.token(),
                self.target.token(),
                target.family().token()
            )));
        }
        let v = |i: usize| target.value(i);
        let q = target.q().cloned();
        let one = Rational::one();
        let lattice = |k: i64| -> Result<i64> {
            if t.is_integer() && *t >= one {
                Ok(i64::try_from(t.to_integer()).map_err(|_| Error::InvalidInput("N too large".into()))? * k)
            } else {
                Err(Error::InvalidInput(format!("lattice path value must be a positive integer, got {t}")))
            }
        };
        let n = || target.lattice_n().unwrap_or(0);
        let qn = |k: i64| qpow(q.as_ref().unwrap(), k);
        let nonzero = |r: &Rational| -> Result<()> {
            if r.is_zero() {
                Err(Error::InvalidInput(format!("path value {} must be nonzero here", self.parameter)))
            } else {
                Ok(())
            }
        };
        let (qs, slots) = match (self.source, self.target) {
            (Racah, Hahn) => (None, vec![
                Slot::Add(v(0)),
                Slot::Add(v(1) + int(n()) + t),
                Slot::Add(int(-n())),
                Slot::Add(t.clone()),
            ]),
            (Racah, DualHahn) => (None, vec![
                Slot::Add(v(0)),
                Slot::Add(t.clone()),
                Slot::Add(int(-n())),
                Slot::Add(v(0) + v(1) - &one),
            ]),
            (Hahn, Krawtchouk) => (None, vec![
                Slot::Add(&one + v(0) * t),
                Slot::Add(&one + (&one - v(0)) * t),
                Slot::Add(int(n())),
            ]),
            (QRacah, QHahn) => (q.clone(), vec![
                Slot::Mult(v(0)),
                Slot::Mult(v(1) * qn(n()) * t),
                Slot::Exp(-n()),
                Slot::Mult(t.clone()),
            ]),
            (QRacah, DualQHahn) => (q.clone(), vec![
                Slot::Mult(v(0)),
                Slot::Mult(t.clone()),
                Slot::Exp(-n()),
                Slot::Mult(v(0) * v(1) / q.as_ref().unwrap()),
            ]),
            (QHahn, QuantumQKrawtchouk) => {
                (q.clone(), vec![Slot::Mult(t.clone()), Slot::Mult(v(0) * qn(1)), Slot::Exp(n())])
            }
            (QHahn, QKrawtchouk) => {
                nonzero(t)?;
                (q.clone(), vec![Slot::Mult(t.clone()), Slot::Mult(-v(0) * qn(1) / t), Slot::Exp(n())])
            }
            (DualQHahn, DualQKrawtchouk) => {
                nonzero(t)?;
                (q.clone(), vec![Slot::Mult(t.clone()), Slot::Mult(v(0) * qn(1 - n()) / t), Slot::Exp(n())])
            }
            (QHahn, AffineQKrawtchouk) => {
                (q.clone(), vec![Slot::Mult(v(0) * qn(1)), Slot::Mult(t.clone()), Slot::Exp(n())])
            }
            (Hahn, Meixner) => {
                let big_n = lattice(1)?;
                let c = v(1);
                nonzero(&c)?;
                (None, vec![
                    Slot::Add(v(0)),
                    Slot::Add(&one + (&one - &c) / &c * int(big_n)),
                    Slot::Add(int(big_n)),
                ])
            }
            (Meixner, Charlier) => {
                let a = v(0);
                (None, vec![Slot::Add(t.clone()), Slot::Add(&a / (&a + t))])
            }
            (QHahn, LittleQJacobi) => {
                let big_n = lattice(1)?;
                (q.clone(), vec![Slot::Mult(v(0) * qn(1)), Slot::Mult(v(1) * qn(1)), Slot::Exp(big_n)])
            }
            (QHahn, QMeixner) => {
                let big_n = lattice(1)?;
                let (b, c) = (v(0), v(1));
                (q.clone(), vec![Slot::Mult(&b * qn(1)), Slot::Mult(-qn(-big_n) / (&b * &c)), Slot::Exp(big_n)])
            }
            (LittleQJacobi, LittleQLaguerre) => (q.clone(), vec![Slot::Mult(v(0)), Slot::Mult(t.clone())]),
            (QMeixner, AlSalamCarlitzII) => {
                nonzero(t)?;
                (q.clone(), vec![Slot::Mult(-v(0) / t), Slot::Mult(t.clone())])
            }
            (LittleQJacobi, QBessel) => {
                nonzero(t)?;
                (q.clone(), vec![Slot::Mult(t.clone()), Slot::Mult(-v(0) / (t * q.as_ref().unwrap()))])
            }
            (QMeixner, QCharlier) => (q.clone(), vec![Slot::Mult(t.clone()), Slot::Mult(v(0))]),
            _ => unreachable!("edge table and embeddings disagree"),
        };
        if t.is_zero() {
            // Exact endpoint of a `-> 0` path; only the polynomial is used.
            Ok(ParamSet::new_unchecked(self.source, qs, slots))
        } else {
            ParamSet::new(self.source, qs, slots)
        }
    }

    /// Source lattice point for target point `x`: `N - x` on the
    /// qHa -> lqJ edge, `x` otherwise.
    fn source_x(&self, source: &ParamSet, x: i64) -> i64 {
        match (self.source, self.target) {
            (QHahn, LittleQJacobi) => source.lattice_n().unwrap() - x,
            _ => x,
        }
    }

    /// Normalisation factor in front of the target polynomial:
    /// `(-a)^n q^(n(n+1)/2) (bq;q)_n / (aq;q)_n` on qHa -> lqJ, 1 otherwise.
    pub fn prefactor(&self, target: &ParamSet, n: usize) -> Result<Rational> {
        match (self.source, self.target) {
            (QHahn, LittleQJacobi) => {
                let q = target.q().unwrap();
                let (a, b) = (target.value(0), target.value(1));
                let ni = n as i64;
                let num = qpow(&-&a, ni) * qpow(q, ni * (ni + 1) / 2) * qpoch(&(&b * q), q, n);
                let den = qpoch(&(&a * q), q, n);
                if den.is_zero() {
                    return Err(Error::EvaluationPole("(aq;q)_n = 0".into()));
                }
                Ok(num / den)
            }
            _ => Ok(Rational::one()),
        }
    }
}

/// Deviations along a limit path.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub edge: LimitEdge,
    pub n: usize,
    pub x: i64,
    pub t_values: Vec<Rational>,
    /// `|source(t) - prefactor * target|` per path value.
    pub deviations: Vec<Rational>,
    pub strictly_decreasing: bool,
    pub final_below_threshold: bool,
    /// Every deviation is exactly zero (e.g. `n = 0`).
    pub identically_zero: bool,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.identically_zero || (self.strictly_decreasing && self.final_below_threshold)
    }
}

/// Threshold on the last deviation, `10^-6`.
pub fn limit_threshold() -> Rational {
    rat(1, 1_000_000).unwrap()
}

/// Evaluates the source polynomial along the path and compares with the
/// target polynomial at `(n, x)`.
pub fn limit_relation_check(
    source: FamilyId,
    target: FamilyId,
    ps_target: &ParamSet,
    n: usize,
    x: i64,
    t_values: &[Rational],
) -> Result<LimitReport> {
    let edge = *find_edge(source, target)?;
    if t_values.is_empty() {
        return Err(Error::InvalidInput("empty path".into()));
    }
    let expected = edge.prefactor(ps_target, n)? * eval_polynomial(ps_target, n, x)?;
    let mut deviations = Vec::with_capacity(t_values.len());
    for t in t_values {
        let src = edge.embed(ps_target, t)?;
        let value = eval_polynomial(&src, n, edge.source_x(&src, x))?;
        deviations.push((value - &expected).abs());
    }
    let strictly_decreasing = deviations.windows(2).all(|w| w[1] < w[0]);
    let final_below_threshold = *deviations.last().unwrap() < limit_threshold();
    let identically_zero = deviations.iter().all(|d| d.is_zero());
    Ok(LimitReport {
        edge,
        n,
        x,
        t_values: t_values.to_vec(),
        deviations,
        strictly_decreasing,
        final_below_threshold,
        identically_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_exact() {
        for e in &EDGES {
            let ps = ParamSet::safe(e.target);
            let r = limit_relation_check(e.source, e.target, &ps, 0, 2, &e.default_path()).unwrap();
            assert!(r.identically_zero && r.passed(), "{e:?}");
        }
    }

    #[test]
    fn krawtchouk_from_hahn() {
        let ps = ParamSet::new(Krawtchouk, None, vec![Slot::Add(rat(1, 2).unwrap()), Slot::Add(int(4))]).unwrap();
        let path: Vec<Rational> = [10, 100, 1000].into_iter().map(int).collect();
        let r = limit_relation_check(Hahn, Krawtchouk, &ps, 2, 1, &path).unwrap();
        assert!(r.strictly_decreasing);
    }

    #[test]
    fn affine_q_krawtchouk_is_reached_exactly() {
        let ps = ParamSet::safe(AffineQKrawtchouk);
        let r = limit_relation_check(QHahn, AffineQKrawtchouk, &ps, 2, 3, &[rat(1, 10).unwrap(), Rational::zero()])
            .unwrap();
        assert!(r.deviations[1].is_zero());
        assert!(r.passed());
    }

    #[test]
    fn unknown_edge_is_rejected() {
        let ps = ParamSet::safe(Charlier);
        assert!(matches!(limit_relation_check(Hahn, Charlier, &ps, 1, 1, &[int(10)]), Err(Error::InvalidInput(_))));
    }
}
