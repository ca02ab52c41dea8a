//! The nineteen discrete orthogonal polynomial families of real-shift
//! discrete quantum mechanics: potentials `B`, `D`, energies, sinusoidal
//! coordinate `eta`, polynomials `P_n` normalized by `P_n(0) = 1`, and the
//! ground state.
//!
//! Each Hamiltonian is the tridiagonal matrix
//!
//! ```text
//! H[x][x]   = B(x) + D(x)
//! H[x][x+1] = -sqrt(B(x) D(x+1))
//! H[x][x-1] = -sqrt(B(x-1) D(x))
//! ```
//!
//! and `P_n(eta(x))` solves
//! `B(x)(P(x) - P(x+1)) + D(x)(P(x) - P(x-1)) = E_n P(x)`.

mod data;
mod params;
pub mod limits;

pub use params::{ParamSet, Slot, SlotKind};

use crate::error::{Error, Result};
use crate::exact::{checked_div, qpow, Rational};
use crate::qseries::{poch, qpoch};
use num_traits::{One, Zero};
use std::fmt;

/// Family identifiers: Racah, q-Racah, then the reductions from the finite
/// classical families down to the semi-infinite q-families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Racah,
    QRacah,
    Hahn,
    DualHahn,
    Krawtchouk,
    QHahn,
    DualQHahn,
    QuantumQKrawtchouk,
    QKrawtchouk,
    DualQKrawtchouk,
    AffineQKrawtchouk,
    Meixner,
    Charlier,
    LittleQJacobi,
    QMeixner,
    LittleQLaguerre,
    AlSalamCarlitzII,
    QBessel,
    QCharlier,
}

impl FamilyId {
    pub const ALL: [FamilyId; 19] = [
        FamilyId::Racah,
        FamilyId::QRacah,
        FamilyId::Hahn,
        FamilyId::DualHahn,
        FamilyId::Krawtchouk,
        FamilyId::QHahn,
        FamilyId::DualQHahn,
        FamilyId::QuantumQKrawtchouk,
        FamilyId::QKrawtchouk,
        FamilyId::DualQKrawtchouk,
        FamilyId::AffineQKrawtchouk,
        FamilyId::Meixner,
        FamilyId::Charlier,
        FamilyId::LittleQJacobi,
        FamilyId::QMeixner,
        FamilyId::LittleQLaguerre,
        FamilyId::AlSalamCarlitzII,
        FamilyId::QBessel,
        FamilyId::QCharlier,
    ];

    /// Short command-line token.
    pub fn token(self) -> &'static str {
        match self {
            FamilyId::Racah => "r",
            FamilyId::QRacah => "qr",
            FamilyId::Hahn => "ha",
            FamilyId::DualHahn => "dha",
            FamilyId::Krawtchouk => "k",
            FamilyId::QHahn => "qha",
            FamilyId::DualQHahn => "dqha",
            FamilyId::QuantumQKrawtchouk => "qqk",
            FamilyId::QKrawtchouk => "qk",
            FamilyId::DualQKrawtchouk => "dqk",
            FamilyId::AffineQKrawtchouk => "aqk",
            FamilyId::Meixner => "m",
            FamilyId::Charlier => "c",
            FamilyId::LittleQJacobi => "lqj",
            FamilyId::QMeixner => "qm",
            FamilyId::LittleQLaguerre => "lql",
            FamilyId::AlSalamCarlitzII => "ascii",
            FamilyId::QBessel => "qb",
            FamilyId::QCharlier => "qc",
        }
    }

    pub fn from_token(s: &str) -> Result<FamilyId> {
        let lower = s.to_ascii_lowercase();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.token() == lower)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family token {s:?}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Racah => "Racah",
            FamilyId::QRacah => "q-Racah",
            FamilyId::Hahn => "Hahn",
            FamilyId::DualHahn => "dual Hahn",
            FamilyId::Krawtchouk => "Krawtchouk",
            FamilyId::QHahn => "q-Hahn",
            FamilyId::DualQHahn => "dual q-Hahn",
            FamilyId::QuantumQKrawtchouk => "quantum q-Krawtchouk",
            FamilyId::QKrawtchouk => "q-Krawtchouk",
            FamilyId::DualQKrawtchouk => "dual q-Krawtchouk",
            FamilyId::AffineQKrawtchouk => "affine q-Krawtchouk",
            FamilyId::Meixner => "Meixner",
            FamilyId::Charlier => "Charlier",
            FamilyId::LittleQJacobi => "little q-Jacobi",
            FamilyId::QMeixner => "q-Meixner",
            FamilyId::LittleQLaguerre => "little q-Laguerre",
            FamilyId::AlSalamCarlitzII => "Al-Salam-Carlitz II",
            FamilyId::QBessel => "alternative q-Bessel",
            FamilyId::QCharlier => "q-Charlier",
        }
    }

    /// Finite lattice `x = 0..=N`.
    pub fn is_finite(self) -> bool {
        matches!(
            self,
            FamilyId::Racah
                | FamilyId::QRacah
                | FamilyId::Hahn
                | FamilyId::DualHahn
                | FamilyId::Krawtchouk
                | FamilyId::QHahn
                | FamilyId::DualQHahn
                | FamilyId::QuantumQKrawtchouk
                | FamilyId::QKrawtchouk
                | FamilyId::DualQKrawtchouk
                | FamilyId::AffineQKrawtchouk
        )
    }

    pub fn is_q(self) -> bool {
        !matches!(
            self,
            FamilyId::Racah
                | FamilyId::Hahn
                | FamilyId::DualHahn
                | FamilyId::Krawtchouk
                | FamilyId::Meixner
                | FamilyId::Charlier
        )
    }

    /// Shift vector `delta` applied by `ParamSet::shifted`.
    pub fn delta(self) -> &'static [i64] {
        data::get(self).delta()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Forward potential `B(x)`.
pub fn potential_b(ps: &ParamSet, x: i64) -> Result<Rational> {
    data::get(ps.family()).b(ps, x)
}

/// Backward potential `D(x)`.
pub fn potential_d(ps: &ParamSet, x: i64) -> Result<Rational> {
    data::get(ps.family()).d(ps, x)
}

/// Energy `E_n`; negative `n` is allowed and used for pseudo virtual levels.
pub fn energy(ps: &ParamSet, n: i64) -> Result<Rational> {
    data::get(ps.family()).energy(ps, n)
}

/// Sinusoidal coordinate `eta(x)`, with `eta(0) = 0`.
pub fn eta(ps: &ParamSet, x: i64) -> Result<Rational> {
    data::get(ps.family()).eta(ps, x)
}

/// `P_n(x)` with `P_n(0) = 1`.
pub fn eval_polynomial(ps: &ParamSet, n: usize, x: i64) -> Result<Rational> {
    data::get(ps.family()).poly(ps, n, x)
}

/// Parameter `kappa` in `E_n` growth; 1 for the classical families.
pub fn kappa(ps: &ParamSet) -> Rational {
    data::get(ps.family()).kappa(ps)
}

/// Closed form of `phi_0(x)^2`.
pub fn ground_state_sq_closed(ps: &ParamSet, x: usize) -> Result<Rational> {
    data::get(ps.family()).phi0_sq(ps, x)
}

/// `phi_0(x)^2 = prod_{y<x} B(y) / D(y+1)`.
pub fn ground_state_sq(ps: &ParamSet, x: usize) -> Result<Rational> {
    let mut r = Rational::one();
    for y in 0..x as i64 {
        r *= checked_div(&potential_b(ps, y)?, &potential_d(ps, y + 1)?, "D(y+1) = 0 in ground state")?;
    }
    Ok(r)
}

/// `d tilde`, the parameter combination in the energies of R and qR.
pub fn d_tilde(ps: &ParamSet) -> Result<Rational> {
    data::racah_d_tilde(ps)
}

/// Lattice points on which the family is checked: `0..=N` for finite
/// families, `0..=horizon` otherwise.
pub fn lattice(ps: &ParamSet, horizon: i64) -> Vec<i64> {
    match ps.lattice_n() {
        Some(n) => (0..=n).collect(),
        None => (0..=horizon).collect(),
    }
}

/// Outcome of [`check_family_axioms`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub boundary_ok: bool,
    pub positivity_ok: bool,
    pub eta_ok: bool,
    pub normalization_ok: bool,
    pub difference_equation_ok: bool,
    pub ground_state_ok: bool,
    pub energy_monotone_ok: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the structural axioms of one family at one parameter point:
/// boundary zeros of `B` and `D`, positivity on the lattice, `eta(0) = 0`,
/// `P_n(0) = 1`, the difference equation, the closed ground state and
/// `0 = E_0 < E_1 < ...`.
pub fn check_family_axioms(ps: &ParamSet, max_degree: usize, horizon: i64) -> Result<AxiomReport> {
    let mut failures = Vec::new();
    let points = lattice(ps, horizon);
    let n_top = ps.lattice_n();

    let mut boundary_ok = potential_d(ps, 0)?.is_zero();
    if let Some(n) = n_top {
        boundary_ok &= potential_b(ps, n)?.is_zero();
    }
    if !boundary_ok {
        failures.push("boundary zeros".into());
    }

    let mut positivity_ok = true;
    for &x in &points {
        let interior_b = n_top.is_none_or(|n| x < n);
        if interior_b && potential_b(ps, x)? <= Rational::zero() {
            positivity_ok = false;
            failures.push(format!("B({x}) not positive"));
        }
        if x > 0 && potential_d(ps, x)? <= Rational::zero() {
            positivity_ok = false;
            failures.push(format!("D({x}) not positive"));
        }
    }

    let eta_ok = eta(ps, 0)?.is_zero();
    if !eta_ok {
        failures.push("eta(0) != 0".into());
    }

    let degrees: Vec<usize> = match n_top {
        Some(n) => (0..=(n as usize).min(max_degree)).collect(),
        None => (0..=max_degree).collect(),
    };
    let mut normalization_ok = true;
    let mut difference_equation_ok = true;
    for &n in &degrees {
        if eval_polynomial(ps, n, 0)? != Rational::one() {
            normalization_ok = false;
            failures.push(format!("P_{n}(0) != 1"));
        }
        let e = energy(ps, n as i64)?;
        for &x in &points {
            let p = eval_polynomial(ps, n, x)?;
            let b = potential_b(ps, x)?;
            let d = potential_d(ps, x)?;
            let up = if b.is_zero() { Rational::zero() } else { &b * (&p - eval_polynomial(ps, n, x + 1)?) };
            let down = if d.is_zero() { Rational::zero() } else { &d * (&p - eval_polynomial(ps, n, x - 1)?) };
            if up + down != &e * &p {
                difference_equation_ok = false;
                failures.push(format!("difference equation fails at n={n}, x={x}"));
            }
        }
    }

    let mut ground_state_ok = true;
    for &x in &points {
        if ground_state_sq(ps, x as usize)? != ground_state_sq_closed(ps, x as usize)? {
            ground_state_ok = false;
            failures.push(format!("closed ground state differs at x={x}"));
        }
    }

    let mut energy_monotone_ok = energy(ps, 0)?.is_zero();
    for w in degrees.windows(2) {
        if energy(ps, w[0] as i64)? >= energy(ps, w[1] as i64)? {
            energy_monotone_ok = false;
        }
    }
    if !energy_monotone_ok {
        failures.push("energies not 0 = E_0 < E_1 < ...".into());
    }

    Ok(AxiomReport {
        boundary_ok,
        positivity_ok,
        eta_ok,
        normalization_ok,
        difference_equation_ok,
        ground_state_ok,
        energy_monotone_ok,
        failures,
    })
}

/// Outcome of [`orthogonality_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub off_diagonal_zero: bool,
    pub diagonal_positive: bool,
}

/// Exact `sum_x phi_0(x)^2 P_n(x) P_m(x)` over the finite lattice.
pub fn orthogonality_sum(ps: &ParamSet, n: usize, m: usize) -> Result<Rational> {
    let top = ps
        .lattice_n()
        .ok_or_else(|| Error::InvalidInput("orthogonality sums need a finite lattice".into()))?;
    let mut s = Rational::zero();
    for x in 0..=top {
        s += ground_state_sq_closed(ps, x as usize)? * eval_polynomial(ps, n, x)? * eval_polynomial(ps, m, x)?;
    }
    Ok(s)
}

/// Orthogonality of `P_n` and `P_m` for finite families. For `n == m` only
/// the sign of the norm is checked.
pub fn orthogonality_check(ps: &ParamSet, n: usize, m: usize) -> Result<OrthogonalityReport> {
    let s = orthogonality_sum(ps, n, m)?;
    Ok(if n == m {
        OrthogonalityReport { off_diagonal_zero: true, diagonal_positive: s > Rational::zero() }
    } else {
        OrthogonalityReport { off_diagonal_zero: s.is_zero(), diagonal_positive: true }
    })
}

/// Exact check of `H~ P_n = E_n P_n` on the finite lattice, where
/// `H~ = B(1 - e^d) + D(1 - e^-d)` is the similarity transform of `H` by the
/// ground state.
pub fn eigen_equation_check(ps: &ParamSet, n: usize) -> Result<bool> {
    let top = ps
        .lattice_n()
        .ok_or_else(|| Error::InvalidInput("eigen_equation_check needs a finite lattice".into()))?;
    let e = energy(ps, n as i64)?;
    let p: Vec<Rational> = (0..=top).map(|x| eval_polynomial(ps, n, x)).collect::<Result<_>>()?;
    for x in 0..=top {
        let i = x as usize;
        let b = potential_b(ps, x)?;
        let d = potential_d(ps, x)?;
        let mut v = (&b + &d) * &p[i];
        if x < top {
            v -= &b * &p[i + 1];
        }
        if x > 0 {
            v -= &d * &p[i - 1];
        }
        if v != &e * &p[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `B(x)(P_n(x) - P_n(x+1)) + D(x)(P_n(x) - P_n(x-1)) = E_n P_n(x)` at one
/// integer point, which may lie outside the lattice.
pub fn check_difference_equation(ps: &ParamSet, n: usize, x: i64) -> Result<bool> {
    let p = eval_polynomial(ps, n, x)?;
    let up = potential_b(ps, x)? * (&p - eval_polynomial(ps, n, x + 1)?);
    let down = potential_d(ps, x)? * (&p - eval_polynomial(ps, n, x - 1)?);
    Ok(up + down == energy(ps, n as i64)? * p)
}

/// `lambda' = (l1 + l3 - l4, l2 + l3 - l4, l3, 2 l3 - l4)` for R and qR.
pub fn reflected_parameters(ps: &ParamSet) -> Result<ParamSet> {
    if !matches!(ps.family(), FamilyId::Racah | FamilyId::QRacah) {
        return Err(Error::InvalidInput(format!(
            "the reflection symmetry is defined for R and qR, not {}",
            ps.family().name()
        )));
    }
    let (a, b, c, d) = (ps.value(0), ps.value(1), ps.value(2), ps.value(3));
    let lattice = ps.slots()[2].clone();
    match ps.family() {
        FamilyId::Racah => ParamSet::new(
            FamilyId::Racah,
            None,
            vec![Slot::Add(&a + &c - &d), Slot::Add(&b + &c - &d), lattice, Slot::Add(&c + &c - &d)],
        ),
        FamilyId::QRacah => {
            let ratio = checked_div(&c, &d, "d = 0")?;
            ParamSet::new(
                FamilyId::QRacah,
                ps.q().cloned(),
                vec![Slot::Mult(&a * &ratio), Slot::Mult(&b * &ratio), lattice, Slot::Mult(&c * &ratio)],
            )
        }
        _ => unreachable!(),
    }
}

/// Constant `P_n(N - x; lambda') / P_n(x; lambda)`.
pub fn reflection_constant(ps: &ParamSet, n: usize) -> Result<Rational> {
    reflected_parameters(ps)?;
    let (a, b) = (ps.value(0), ps.value(1));
    let dt = d_tilde(ps)?;
    let one = Rational::one();
    match ps.family() {
        FamilyId::Racah => {
            let num = poch(&a, n) * poch(&b, n);
            let den = poch(&(&one - &a + &dt), n) * poch(&(&one - &b + &dt), n);
            checked_div(&num, &den, "reflection constant")
        }
        _ => {
            let q = ps.q().unwrap();
            let (c, d) = (ps.value(2), ps.value(3));
            let ni = n as i64;
            let num = qpow(&c, ni) * qpoch(&a, q, n) * qpoch(&b, q, n);
            let den = qpow(&d, ni)
                * qpoch(&checked_div(&(&dt * q), &a, "a = 0")?, q, n)
                * qpoch(&checked_div(&(&dt * q), &b, "b = 0")?, q, n);
            checked_div(&num, &den, "reflection constant")
        }
    }
}

/// `B(N-x; lambda') = D(x; lambda)`, `D(N-x; lambda') = B(x; lambda)` and
/// `P_n(N-x; lambda') = const * P_n(x; lambda)` for R and qR.
pub fn check_reflection_symmetry(ps: &ParamSet, x: i64, n: usize) -> Result<bool> {
    let rp = reflected_parameters(ps)?;
    let top = ps.lattice_n().unwrap();
    let potentials = potential_b(&rp, top - x)? == potential_d(ps, x)? && potential_d(&rp, top - x)? == potential_b(ps, x)?;
    let poly = eval_polynomial(&rp, n, top - x)? == reflection_constant(ps, n)? * eval_polynomial(ps, n, x)?;
    Ok(potentials && poly)
}

/// qR data at `q^-1` with the same `lambda`: every stored `q^lambda_j` is
/// inverted.
pub fn q_inverted_parameters(ps: &ParamSet) -> Result<ParamSet> {
    if ps.family() != FamilyId::QRacah {
        return Err(Error::InvalidInput("q inversion is defined for qR".into()));
    }
    let q = ps.q().unwrap();
    let inv = |v: &Rational| checked_div(&Rational::one(), v, "zero parameter");
    let slots = ps
        .slots()
        .iter()
        .map(|s| match s {
            Slot::Mult(v) => inv(v).map(Slot::Mult),
            other => Ok(other.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    ParamSet::new(FamilyId::QRacah, Some(inv(q)?), slots)
}

/// `P_n(x; lambda; q^-1) = P_n(x; lambda; q)` together with
/// `B(x; lambda; q^-1) = B(x; lambda; q) / d~` and the same for `D`.
pub fn check_q_inversion(ps: &ParamSet, n: usize, x: i64) -> Result<bool> {
    let inv = q_inverted_parameters(ps)?;
    let dt = d_tilde(ps)?;
    let b_ok = potential_b(&inv, x)? * &dt == potential_b(ps, x)?;
    let d_ok = potential_d(&inv, x)? * &dt == potential_d(ps, x)?;
    Ok(b_ok && d_ok && eval_polynomial(&inv, n, x)? == eval_polynomial(ps, n, x)?)
}
