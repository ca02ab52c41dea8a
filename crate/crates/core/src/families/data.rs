//! Per-family formulas.

use super::params::{ParamSet, SlotKind};
use super::FamilyId;
use crate::error::{Error, Result};
use crate::exact::{checked_div, int, qpow, Rational};
use crate::qseries::{hyper_f, hyper_phi, poch, poch_many, qpoch, qpoch_many};
use num_traits::{One, Zero};

pub(crate) trait FamilyData: Sync {
    fn slots(&self) -> &'static [(&'static str, SlotKind)];
    fn delta(&self) -> &'static [i64];
    fn kappa(&self, ps: &ParamSet) -> Rational;
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational>;
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational>;
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational>;
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational>;
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational>;
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational>;
}

pub(crate) fn get(f: FamilyId) -> &'static dyn FamilyData {
    match f {
        FamilyId::Racah => &Racah,
        FamilyId::QRacah => &QRacah,
        FamilyId::Hahn => &Hahn,
        FamilyId::DualHahn => &DualHahn,
        FamilyId::Krawtchouk => &Krawtchouk,
        FamilyId::QHahn => &QHahn,
        FamilyId::DualQHahn => &DualQHahn,
        FamilyId::QuantumQKrawtchouk => &QuantumQKrawtchouk,
        FamilyId::QKrawtchouk => &QKrawtchouk,
        FamilyId::DualQKrawtchouk => &DualQKrawtchouk,
        FamilyId::AffineQKrawtchouk => &AffineQKrawtchouk,
        FamilyId::Meixner => &Meixner,
        FamilyId::Charlier => &Charlier,
        FamilyId::LittleQJacobi => &LittleQJacobi,
        FamilyId::QMeixner => &QMeixner,
        FamilyId::LittleQLaguerre => &LittleQLaguerre,
        FamilyId::AlSalamCarlitzII => &AlSalamCarlitzII,
        FamilyId::QBessel => &QBessel,
        FamilyId::QCharlier => &QCharlier,
    }
}

/// `d~ = a+b+c-d-1` (R) or `abc d^-1 q^-1` (qR).
pub(crate) fn racah_d_tilde(ps: &ParamSet) -> Result<Rational> {
    let p = V(ps);
    match ps.family() {
        FamilyId::Racah => Ok(p.v(0) + p.v(1) + p.v(2) - p.v(3) - one()),
        FamilyId::QRacah => checked_div(&(p.v(0) * p.v(1) * p.v(2)), &(p.v(3) * p.q()), "d q = 0"),
        f => Err(Error::InvalidInput(format!("d~ is defined for R and qR only, not {}", f.name()))),
    }
}

struct V<'a>(&'a ParamSet);

impl V<'_> {
    fn q(&self) -> Rational {
        self.0.qv().clone()
    }
    fn v(&self, i: usize) -> Rational {
        self.0.value(i)
    }
    fn qp(&self, k: i64) -> Rational {
        qpow(self.0.qv(), k)
    }
    fn n(&self) -> i64 {
        self.0.lattice_n().expect("finite family without N")
    }
    fn nr(&self) -> Rational {
        int(self.n())
    }
}

fn one() -> Rational {
    Rational::one()
}

fn r(v: i64) -> Rational {
    int(v)
}

fn div(a: Rational, b: Rational, what: &str) -> Result<Rational> {
    checked_div(&a, &b, what)
}

/// `1 - v`
fn om(v: Rational) -> Rational {
    one() - v
}

/// `(-1)^x`
fn sgn(x: usize) -> Rational {
    if x.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

const ADD: SlotKind = SlotKind::Add;
const MULT: SlotKind = SlotKind::Mult;
const LAT: SlotKind = SlotKind::Lattice { sign: 1 };
const LAT_NEG: SlotKind = SlotKind::Lattice { sign: -1 };

struct Racah;
impl FamilyData for Racah {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", ADD), ("b", ADD), ("c", LAT_NEG), ("d", ADD)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 1, 1, 1]
    }
    fn kappa(&self, _: &ParamSet) -> Rational {
        one()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let x = r(x);
        let (a, b, c, d) = (p.v(0), p.v(1), p.v(2), p.v(3));
        let num = -((&x + a) * (&x + b) * (&x + c) * (&x + &d));
        div(num, (r(2) * &x + &d) * (r(2) * &x + one() + &d), "R: B denominator")
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let x = r(x);
        let (a, b, c, d) = (p.v(0), p.v(1), p.v(2), p.v(3));
        let num = -((&x + &d - a) * (&x + &d - b) * (&x + &d - c) * &x);
        div(num, (r(2) * &x - one() + &d) * (r(2) * &x + &d), "R: D denominator")
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(r(n) * (r(n) + racah_d_tilde(ps)?))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(r(x) * (r(x) + V(ps).v(3)))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let nn = r(n as i64);
        let num = vec![-nn.clone(), &nn + racah_d_tilde(ps)?, r(-x), r(x) + p.v(3)];
        hyper_f(num, vec![p.v(0), p.v(1), p.v(2)], one(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let (a, b, c, d) = (p.v(0), p.v(1), p.v(2), p.v(3));
        let num = poch_many(&[a.clone(), b.clone(), c.clone(), d.clone()], x);
        let den = poch_many(&[&d - a + one(), &d - b + one(), &d - c + one(), one()], x);
        div(num * (r(2 * x as i64) + &d), den * d, "R: ground state")
    }
}

struct QRacah;
impl FamilyData for QRacah {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT), ("b", MULT), ("c", LAT_NEG), ("d", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 1, 1, 1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let qx = p.qp(x);
        let (a, b, c, d) = (p.v(0), p.v(1), p.v(2), p.v(3));
        let num = -(om(a * &qx) * om(b * &qx) * om(c * &qx) * om(&d * &qx));
        div(num, om(&d * p.qp(2 * x)) * om(&d * p.qp(2 * x + 1)), "qR: B denominator")
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let qx = p.qp(x);
        let (a, b, c, d) = (p.v(0), p.v(1), p.v(2), p.v(3));
        let dqx = &d * &qx;
        let num = -(racah_d_tilde(ps)? * om(&dqx / a) * om(&dqx / b) * om(&dqx / c) * om(qx));
        div(num, om(&d * p.qp(2 * x - 1)) * om(&d * p.qp(2 * x)), "qR: D denominator")
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-n) - one()) * om(racah_d_tilde(ps)? * p.qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-x) - one()) * om(p.v(3) * p.qp(x)))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let num = vec![p.qp(-n_i), racah_d_tilde(ps)? * p.qp(n_i), p.qp(-x), p.v(3) * p.qp(x)];
        hyper_phi(num, vec![p.v(0), p.v(1), p.v(2)], &p.q(), p.q(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let (a, b, c, d) = (p.v(0), p.v(1), p.v(2), p.v(3));
        let dq = &d * &q;
        let num = qpoch_many(&[a.clone(), b.clone(), c.clone(), d.clone()], &q, x);
        let den = qpoch_many(&[&dq / a, &dq / b, &dq / c, q.clone()], &q, x)
            * qpow(&racah_d_tilde(ps)?, x as i64);
        div(num * om(&d * p.qp(2 * x as i64)), den * om(d), "qR: ground state")
    }
}

struct Hahn;
impl FamilyData for Hahn {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", ADD), ("b", ADD), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 1, -1]
    }
    fn kappa(&self, _: &ParamSet) -> Rational {
        one()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((r(x) + p.v(0)) * (p.nr() - r(x)))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(r(x) * (p.v(1) + p.nr() - r(x)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(r(n) * (r(n) + p.v(0) + p.v(1) - one()))
    }
    fn eta(&self, _: &ParamSet, x: i64) -> Result<Rational> {
        Ok(r(x))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let nn = r(n as i64);
        let num = vec![-nn.clone(), nn + p.v(0) + p.v(1) - one(), r(-x)];
        hyper_f(num, vec![p.v(0), -p.nr()], one(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let num = poch(&p.v(0), x) * poch(&-p.nr(), x);
        let den = poch(&one(), x) * poch(&(one() - p.v(1) - p.nr()), x);
        div(num, den, "Ha: ground state")
    }
}

struct DualHahn;
impl FamilyData for DualHahn {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", ADD), ("b", ADD), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 0, -1]
    }
    fn kappa(&self, _: &ParamSet) -> Rational {
        one()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let (a, b, n) = (p.v(0), p.v(1), p.nr());
        let x = r(x);
        let s = &a + &b;
        let num = (&x + &a) * (&x + &s - one()) * (n - &x);
        div(num, (r(2) * &x - one() + &s) * (r(2) * &x + &s), "dHa: B denominator")
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let (a, b, n) = (p.v(0), p.v(1), p.nr());
        let x = r(x);
        let s = &a + &b;
        let num = &x * (&x + &b - one()) * (&x + &s + n - one());
        div(num, (r(2) * &x - r(2) + &s) * (r(2) * &x - one() + &s), "dHa: D denominator")
    }
    fn energy(&self, _: &ParamSet, n: i64) -> Result<Rational> {
        Ok(r(n))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(r(x) * (r(x) + p.v(0) + p.v(1) - one()))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let num = vec![r(-(n as i64)), r(x) + p.v(0) + p.v(1) - one(), r(-x)];
        hyper_f(num, vec![p.v(0), -p.nr()], one(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let (a, b, n) = (p.v(0), p.v(1), p.nr());
        let s1 = &a + &b - one();
        let num = poch_many(&[a.clone(), s1.clone(), -n.clone()], x) * (r(2 * x as i64) + &s1);
        let den = poch_many(&[one(), b.clone(), &a + &b + &n], x) * &s1;
        Ok(sgn(x) * div(num, den, "dHa: ground state")?)
    }
}

struct Krawtchouk;
impl FamilyData for Krawtchouk {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("p", ADD), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[0, -1]
    }
    fn kappa(&self, _: &ParamSet) -> Rational {
        one()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * (p.nr() - r(x)))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(om(p.v(0)) * r(x))
    }
    fn energy(&self, _: &ParamSet, n: i64) -> Result<Rational> {
        Ok(r(n))
    }
    fn eta(&self, _: &ParamSet, x: i64) -> Result<Rational> {
        Ok(r(x))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let z = div(one(), p.v(0), "K: p = 0")?;
        hyper_f(vec![r(-(n as i64)), r(-x)], vec![-p.nr()], z, n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let ratio = div(p.v(0), om(p.v(0)), "K: p = 1")?;
        let num = qpow(&ratio, x as i64) * poch(&-p.nr(), x) * sgn(x);
        div(num, poch(&one(), x), "K: ground state")
    }
}

struct QHahn;
impl FamilyData for QHahn {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT), ("b", MULT), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 1, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(om(p.v(0) * p.qp(x)) * (p.qp(x - p.n()) - one()))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) / p.q() * om(p.qp(x)) * (p.qp(x - p.n()) - p.v(1)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-n) - one()) * om(p.v(0) * p.v(1) * p.qp(n - 1)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let num = vec![p.qp(-n_i), p.v(0) * p.v(1) * p.qp(n_i - 1), p.qp(-x)];
        hyper_phi(num, vec![p.v(0), p.qp(-p.n())], &p.q(), p.q(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let (a, b) = (p.v(0), p.v(1));
        let num = qpoch_many(&[a.clone(), p.qp(-p.n())], &q, x);
        let den = qpoch_many(&[q.clone(), p.qp(1 - p.n()) / &b], &q, x) * qpow(&(&a * &b / &q), x as i64);
        div(num, den, "qHa: ground state")
    }
}

struct DualQHahn;
impl FamilyData for DualQHahn {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT), ("b", MULT), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 0, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let ab = p.v(0) * p.v(1);
        let num = (p.qp(x - p.n()) - one()) * om(p.v(0) * p.qp(x)) * om(&ab * p.qp(x - 1));
        div(num, om(&ab * p.qp(2 * x - 1)) * om(&ab * p.qp(2 * x)), "dqHa: B denominator")
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let (a, b) = (p.v(0), p.v(1));
        let ab = &a * &b;
        let n = p.n();
        let num = a * p.qp(x - n - 1) * om(p.qp(x)) * om(&ab * p.qp(x + n - 1)) * om(b * p.qp(x - 1));
        div(num, om(&ab * p.qp(2 * x - 2)) * om(&ab * p.qp(2 * x - 1)), "dqHa: D denominator")
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(V(ps).qp(-n) - one())
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-x) - one()) * om(p.v(0) * p.v(1) * p.qp(x - 1)))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let num = vec![p.qp(-(n as i64)), p.v(0) * p.v(1) * p.qp(x - 1), p.qp(-x)];
        hyper_phi(num, vec![p.v(0), p.qp(-p.n())], &p.q(), p.q(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let (a, b) = (p.v(0), p.v(1));
        let n = p.n();
        let abq = &a * &b / &q;
        let xi = x as i64;
        let num = qpoch_many(&[p.qp(-n), a.clone(), abq.clone()], &q, x)
            * p.qp(n * xi - xi * (xi - 1) / 2)
            * om(&a * &b * p.qp(2 * xi - 1));
        let den = qpoch_many(&[q.clone(), &a * &b * p.qp(n), b.clone()], &q, x) * qpow(&a, xi) * om(abq);
        Ok(sgn(x) * div(num, den, "dqHa: ground state")?)
    }
}

struct QuantumQKrawtchouk;
impl FamilyData for QuantumQKrawtchouk {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("p", MULT), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.qp(x) / p.v(0) * (p.qp(x - p.n()) - one()))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(om(p.qp(x)) * om(p.qp(x - p.n() - 1) / p.v(0)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        hyper_phi(vec![p.qp(-n_i), p.qp(-x)], vec![p.qp(-p.n())], &p.q(), p.v(0) * p.qp(n_i + 1), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let pp = p.v(0);
        let xi = x as i64;
        let num = qpoch(&p.qp(-p.n()), &q, x) * p.qp(xi * (xi - 1) / 2);
        let den = qpoch_many(&[q.clone(), p.qp(-p.n()) / &pp], &q, x) * qpow(&pp, xi);
        Ok(sgn(x) * div(num, den, "qqK: ground state")?)
    }
}

struct QKrawtchouk;
impl FamilyData for QKrawtchouk {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("p", MULT), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[2, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.qp(x - p.n()) - one())
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * om(p.qp(x)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-n) - one()) * (one() + p.v(0) * p.qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let num = vec![p.qp(-n_i), p.qp(-x), -p.v(0) * p.qp(n_i)];
        hyper_phi(num, vec![p.qp(-p.n()), Rational::zero()], &p.q(), p.q(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let num = qpoch(&p.qp(-p.n()), &q, x);
        let den = qpow(&p.v(0), x as i64) * qpoch(&q, &q, x);
        Ok(sgn(x) * div(num, den, "qK: ground state")?)
    }
}

struct DualQKrawtchouk;
impl FamilyData for DualQKrawtchouk {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("c", MULT), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[0, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let (c, n) = (p.v(0), p.n());
        let num = (p.qp(x - n) - one()) * om(&c * p.qp(x - n));
        div(num, om(&c * p.qp(2 * x - n)) * om(&c * p.qp(2 * x + 1 - n)), "dqK: B denominator")
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let (c, n) = (p.v(0), p.n());
        let num = -(&c * p.qp(2 * x - 2 * n - 1) * om(p.qp(x)) * om(&c * p.qp(x)));
        div(num, om(&c * p.qp(2 * x - 1 - n)) * om(&c * p.qp(2 * x - n)), "dqK: D denominator")
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(V(ps).qp(-n) - one())
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-x) - one()) * om(p.v(0) * p.qp(x - p.n())))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let num = vec![p.qp(-(n as i64)), p.qp(-x), p.v(0) * p.qp(x - p.n())];
        hyper_phi(num, vec![p.qp(-p.n()), Rational::zero()], &p.q(), p.q(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let (c, n) = (p.v(0), p.n());
        let xi = x as i64;
        let num = qpoch_many(&[p.qp(-n), &c * p.qp(-n)], &q, x)
            * p.qp(2 * n * xi - xi * xi)
            * om(&c * p.qp(2 * xi - n));
        let den = qpoch_many(&[q.clone(), &c * &q], &q, x) * qpow(&c, xi) * om(&c * p.qp(-n));
        div(num, den, "dqK: ground state")
    }
}

struct AffineQKrawtchouk;
impl FamilyData for AffineQKrawtchouk {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("p", MULT), ("N", LAT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(x - p.n()) - one()) * om(p.v(0) * p.qp(x + 1)))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * p.qp(x - p.n()) * om(p.qp(x)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(V(ps).qp(-n) - one())
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let num = vec![p.qp(-(n as i64)), p.qp(-x), Rational::zero()];
        hyper_phi(num, vec![p.v(0) * p.q(), p.qp(-p.n())], &p.q(), p.q(), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let (pp, n) = (p.v(0), p.n());
        let xi = x as i64;
        let num = qpoch_many(&[p.qp(-n), &pp * &q], &q, x) * p.qp(-xi * (xi - 1) / 2 - xi * (1 - n));
        let den = qpoch(&q, &q, x) * qpow(&pp, xi);
        Ok(sgn(x) * div(num, den, "aqK: ground state")?)
    }
}

struct Meixner;
impl FamilyData for Meixner {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("beta", ADD), ("c", ADD)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 0]
    }
    fn kappa(&self, _: &ParamSet) -> Rational {
        one()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        let c = p.v(1);
        div(&c * (r(x) + p.v(0)), om(c), "M: c = 1")
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        div(r(x), om(p.v(1)), "M: c = 1")
    }
    fn energy(&self, _: &ParamSet, n: i64) -> Result<Rational> {
        Ok(r(n))
    }
    fn eta(&self, _: &ParamSet, x: i64) -> Result<Rational> {
        Ok(r(x))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let z = one() - div(one(), p.v(1), "M: c = 0")?;
        hyper_f(vec![r(-(n as i64)), r(-x)], vec![p.v(0)], z, n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        Ok(qpow(&p.v(1), x as i64) * poch(&p.v(0), x) / poch(&one(), x))
    }
}

struct Charlier;
impl FamilyData for Charlier {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", ADD)]
    }
    fn delta(&self) -> &'static [i64] {
        &[0]
    }
    fn kappa(&self, _: &ParamSet) -> Rational {
        one()
    }
    fn b(&self, ps: &ParamSet, _: i64) -> Result<Rational> {
        Ok(V(ps).v(0))
    }
    fn d(&self, _: &ParamSet, x: i64) -> Result<Rational> {
        Ok(r(x))
    }
    fn energy(&self, _: &ParamSet, n: i64) -> Result<Rational> {
        Ok(r(n))
    }
    fn eta(&self, _: &ParamSet, x: i64) -> Result<Rational> {
        Ok(r(x))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let z = -div(one(), V(ps).v(0), "C: a = 0")?;
        hyper_f(vec![r(-(n as i64)), r(-x)], vec![], z, n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        Ok(qpow(&V(ps).v(0), x as i64) / poch(&one(), x))
    }
}

struct LittleQJacobi;
impl FamilyData for LittleQJacobi {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT), ("b", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, 1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * (p.qp(-x) - p.v(1) * p.q()))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-n) - one()) * om(p.v(0) * p.v(1) * p.qp(n + 1)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(x)))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let num = vec![p.qp(-n_i), p.v(0) * p.v(1) * p.qp(n_i + 1), p.qp(-x)];
        hyper_phi(num, vec![p.v(1) * p.q()], &p.q(), p.qp(x) / p.v(0), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        Ok(qpow(&(p.v(0) * &q), x as i64) * qpoch(&(p.v(1) * &q), &q, x) / qpoch(&q, &q, x))
    }
}

struct QMeixner;
impl FamilyData for QMeixner {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("b", MULT), ("c", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1, -1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(1) * p.qp(x) * om(p.v(0) * p.qp(x + 1)))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(om(p.qp(x)) * (one() + p.v(0) * p.v(1) * p.qp(x)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let z = -(p.qp(n_i + 1) / p.v(1));
        hyper_phi(vec![p.qp(-n_i), p.qp(-x)], vec![p.v(0) * p.q()], &p.q(), z, n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let (b, c) = (p.v(0), p.v(1));
        let xi = x as i64;
        let num = qpow(&c, xi) * p.qp(xi * (xi - 1) / 2) * qpoch(&(&b * &q), &q, x);
        div(num, qpoch_many(&[q.clone(), -(&b * &c * &q)], &q, x), "qM: ground state")
    }
}

struct LittleQLaguerre;
impl FamilyData for LittleQLaguerre {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * p.qp(-x))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(V(ps).qp(-n) - one())
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(x)))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        hyper_phi(vec![p.qp(-(n as i64)), p.qp(-x)], vec![], &p.q(), p.qp(x) / p.v(0), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        Ok(qpow(&(p.v(0) * &q), x as i64) / qpoch(&q, &q, x))
    }
}

struct AlSalamCarlitzII;
impl FamilyData for AlSalamCarlitzII {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[0]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * p.qp(2 * x + 1))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(om(p.qp(x)) * om(p.v(0) * p.qp(x)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        hyper_phi(vec![p.qp(-n_i), p.qp(-x)], vec![], &p.q(), p.qp(n_i) / p.v(0), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let xi = x as i64;
        let num = qpow(&p.v(0), xi) * p.qp(xi * xi);
        div(num, qpoch_many(&[q.clone(), p.v(0) * &q], &q, x), "ASCII: ground state")
    }
}

struct QBessel;
impl FamilyData for QBessel {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[2]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q().recip()
    }
    fn b(&self, ps: &ParamSet, _: i64) -> Result<Rational> {
        Ok(V(ps).v(0))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        let p = V(ps);
        Ok((p.qp(-n) - one()) * (one() + p.v(0) * p.qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(x)))
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let num = vec![p.qp(-n_i), -(p.v(0) * p.qp(n_i)), p.qp(-x)];
        hyper_phi(num, vec![], &p.q(), -(p.qp(x) / p.v(0)), n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let xi = x as i64;
        Ok(qpow(&p.v(0), xi) * p.qp(xi * (xi + 1) / 2) / qpoch(&q, &q, x))
    }
}

struct QCharlier;
impl FamilyData for QCharlier {
    fn slots(&self) -> &'static [(&'static str, SlotKind)] {
        &[("a", MULT)]
    }
    fn delta(&self) -> &'static [i64] {
        &[-1]
    }
    fn kappa(&self, ps: &ParamSet) -> Rational {
        V(ps).q()
    }
    fn b(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        let p = V(ps);
        Ok(p.v(0) * p.qp(x))
    }
    fn d(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(x)))
    }
    fn energy(&self, ps: &ParamSet, n: i64) -> Result<Rational> {
        Ok(om(V(ps).qp(n)))
    }
    fn eta(&self, ps: &ParamSet, x: i64) -> Result<Rational> {
        Ok(V(ps).qp(-x) - one())
    }
    fn poly(&self, ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
        let p = V(ps);
        let n_i = n as i64;
        let z = -(p.qp(n_i + 1) / p.v(0));
        hyper_phi(vec![p.qp(-n_i), p.qp(-x)], vec![Rational::zero()], &p.q(), z, n)
    }
    fn phi0_sq(&self, ps: &ParamSet, x: usize) -> Result<Rational> {
        let p = V(ps);
        let q = p.q();
        let xi = x as i64;
        Ok(qpow(&p.v(0), xi) * p.qp(xi * (xi - 1) / 2) / qpoch(&q, &q, x))
    }
}
