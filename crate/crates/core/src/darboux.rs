//! One-step Darboux deformation by a pseudo virtual state vector, for the
//! finite families.
//!
//! Square roots of rationals enter here, so the Hamiltonians are assembled in
//! [`BigFloat`]. Everything that stays rational (potentials, compatibility
//! relations, the boundary defect of the pseudo virtual vector in the gauge
//! `phi_0 * phi~_0`) is checked exactly.

use crate::casoratian::{build_index_sets, verify_identity, IdentityOutcome};
use crate::error::{Error, Result};
use crate::exact::{
    checked_div, continuant, eigenvalues_symmetric_tridiagonal, qpow, BigFloat, Rational, SymTridiagonal,
};
use crate::families::{self, FamilyId, ParamSet};
use crate::twists::{make_twist, Twist, TwistId};
use num_traits::{One, Zero};

/// `2^(-precision/2)`, the default tolerance at a given precision.
pub fn default_tolerance(precision: usize) -> BigFloat {
    BigFloat::pow2(-(precision as i64) / 2, precision)
}

/// `10^(-k)` at the given precision.
pub fn decimal_tolerance(k: u32, precision: usize) -> BigFloat {
    let r = Rational::new(1.into(), num_bigint::BigInt::from(10u8).pow(k));
    BigFloat::from_rational(&r, precision)
}

fn lattice_size(ps: &ParamSet) -> Result<i64> {
    ps.lattice_n()
        .filter(|_| ps.family().is_finite())
        .ok_or_else(|| Error::InvalidInput(format!("{} has no finite lattice", ps.family().name())))
}

fn bf(r: &Rational, precision: usize) -> BigFloat {
    BigFloat::from_rational(r, precision)
}

fn sqrt_rational(r: &Rational, precision: usize, what: &str) -> Result<BigFloat> {
    if *r < Rational::zero() {
        return Err(Error::InvalidParameters(format!("{what} is negative: {r}")));
    }
    bf(r, precision).sqrt()
}

fn max_abs(v: &[BigFloat]) -> BigFloat {
    let p = v.first().map(|x| x.precision()).unwrap_or(64);
    v.iter().fold(BigFloat::zero(p), |m, x| m.max(x.abs()))
}

/// The original Hamiltonian: `H` in [`BigFloat`] and its exact similarity
/// transform `H~ = phi_0^-1 H phi_0`, both on `x = 0..=N`.
#[derive(Clone, Debug)]
pub struct HamiltonianBundle {
    pub params: ParamSet,
    pub precision: usize,
    pub h: SymTridiagonal,
    /// Diagonal `B + D` of `H~`.
    pub h_tilde_diag: Vec<Rational>,
    /// Superdiagonal `-B(x)` of `H~`.
    pub h_tilde_upper: Vec<Rational>,
    /// Subdiagonal `-D(x+1)` of `H~`.
    pub h_tilde_lower: Vec<Rational>,
}

/// Assembles `H` and `H~` on the finite lattice.
pub fn build_hamiltonian(ps: &ParamSet, precision: usize) -> Result<HamiltonianBundle> {
    let n = lattice_size(ps)?;
    let mut diag = Vec::new();
    let mut off = Vec::new();
    let mut td = Vec::new();
    let mut tu = Vec::new();
    let mut tl = Vec::new();
    for x in 0..=n {
        let b = families::potential_b(ps, x)?;
        let d = families::potential_d(ps, x)?;
        diag.push(bf(&(&b + &d), precision));
        td.push(&b + &d);
        if x < n {
            let d1 = families::potential_d(ps, x + 1)?;
            let prod = &b * &d1;
            off.push(-sqrt_rational(&prod, precision, "B(x) D(x+1)")?);
            tu.push(-b);
            tl.push(-d1);
        }
    }
    Ok(HamiltonianBundle {
        params: ps.clone(),
        precision,
        h: SymTridiagonal::new(diag, off)?,
        h_tilde_diag: td,
        h_tilde_upper: tu,
        h_tilde_lower: tl,
    })
}

impl HamiltonianBundle {
    /// `H~ f` for a rational vector on `0..=N`.
    pub fn apply_h_tilde(&self, f: &[Rational]) -> Vec<Rational> {
        let n = self.h_tilde_diag.len();
        (0..n)
            .map(|i| {
                let mut s = &self.h_tilde_diag[i] * &f[i];
                if i + 1 < n {
                    s += &self.h_tilde_upper[i] * &f[i + 1];
                }
                if i > 0 {
                    s += &self.h_tilde_lower[i - 1] * &f[i - 1];
                }
                s
            })
            .collect()
    }

    /// Exact `H~ P_n = E_n P_n` for every `n = 0..=N`.
    pub fn h_tilde_eigen_check(&self) -> Result<bool> {
        let n = self.h_tilde_diag.len();
        for deg in 0..n {
            let p: Vec<Rational> =
                (0..n as i64).map(|x| families::eval_polynomial(&self.params, deg, x)).collect::<Result<_>>()?;
            let e = families::energy(&self.params, deg as i64)?;
            if self.apply_h_tilde(&p) != p.iter().map(|v| &e * v).collect::<Vec<_>>() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest deviation between the computed spectrum of `H` and
    /// `E_0..E_N`.
    pub fn spectrum_deviation(&self) -> Result<BigFloat> {
        let ev = eigenvalues_symmetric_tridiagonal(&self.h);
        let mut exact: Vec<Rational> =
            (0..ev.len() as i64).map(|n| families::energy(&self.params, n)).collect::<Result<_>>()?;
        exact.sort();
        let diffs: Vec<BigFloat> = ev.iter().zip(&exact).map(|(a, b)| (a - &bf(b, self.precision)).abs()).collect();
        Ok(max_abs(&diffs))
    }
}

/// Ground state data on `0..=N`.
#[derive(Clone, Debug)]
pub struct GroundState {
    pub phi0_sq: Vec<Rational>,
    pub phi0: Vec<BigFloat>,
    /// Exact `B(x) phi_0(x)^2 = D(x+1) phi_0(x+1)^2` on `0..N`.
    pub detailed_balance_ok: bool,
    /// `||H phi_0||_inf / ||phi_0||_inf`.
    pub residual: BigFloat,
}

pub fn ground_state(ps: &ParamSet, precision: usize) -> Result<GroundState> {
    let n = lattice_size(ps)?;
    let phi0_sq: Vec<Rational> = (0..=n as usize).map(|x| families::ground_state_sq(ps, x)).collect::<Result<_>>()?;
    let phi0: Vec<BigFloat> =
        phi0_sq.iter().map(|v| sqrt_rational(v, precision, "phi_0^2")).collect::<Result<_>>()?;
    let mut detailed_balance_ok = true;
    for x in 0..n {
        let lhs = families::potential_b(ps, x)? * &phi0_sq[x as usize];
        let rhs = families::potential_d(ps, x + 1)? * &phi0_sq[x as usize + 1];
        detailed_balance_ok &= lhs == rhs;
    }
    let h = build_hamiltonian(ps, precision)?;
    let residual = &max_abs(&h.h.apply(&phi0)) / &max_abs(&phi0);
    Ok(GroundState { phi0_sq, phi0, detailed_balance_ok, residual })
}

/// Result of [`validate_parameter_range`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterRangeReport {
    /// The explicit qR inequalities (always true for other families).
    pub inequalities_ok: bool,
    pub alpha_positive: bool,
    /// `alpha B' > 0` on `0..=N` and `B'(-1) = 0`.
    pub b_prime_ok: bool,
    /// `alpha D' > 0` on `0..=N` and `D'(N+1) = 0`.
    pub d_prime_ok: bool,
    /// `xi_v > 0` on `-1..=N+1`, per requested `v`.
    pub xi_positive: Vec<(usize, bool)>,
    pub failures: Vec<String>,
}

impl ParameterRangeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn admissible(&self, v: usize) -> bool {
        self.inequalities_ok
            && self.b_prime_ok
            && self.d_prime_ok
            && self.xi_positive.iter().any(|&(w, ok)| w == v && ok)
    }
}

/// For qR: `c = q^-N`, `0 < ac < d < 1`, `qd < b < 1`, `ac < dq`, `b < q`,
/// `d < q^2`.
pub fn qracah_inequalities(ps: &ParamSet) -> Result<Vec<String>> {
    if ps.family() != FamilyId::QRacah {
        return Err(Error::InvalidInput("the parameter inequalities are defined for qR".into()));
    }
    let q = ps.q().unwrap();
    let (a, b, c, d) = (ps.value(0), ps.value(1), ps.value(2), ps.value(3));
    let zero = Rational::zero();
    let one = Rational::one();
    let ac = &a * &c;
    let mut fails = Vec::new();
    let n = ps.lattice_n().unwrap();
    if c != qpow(q, -n) {
        fails.push("c != q^-N".to_string());
    }
    if !(zero < ac && ac < d && d < one) {
        fails.push("0 < ac < d < 1".to_string());
    }
    if !(q * &d < b && b < one) {
        fails.push("qd < b < 1".to_string());
    }
    if !(ac < &d * q) {
        fails.push("ac < dq".to_string());
    }
    if !(b < *q) {
        fails.push("b < q".to_string());
    }
    if !(d < q * q) {
        fails.push("d < q^2".to_string());
    }
    Ok(fails)
}

/// Checks the positivity conditions under which the deformation by
/// `xi_v` is well defined. Violations, including poles of `xi_v`, are
/// collected in the report rather than returned as errors.
pub fn validate_parameter_range(ps: &ParamSet, twist: TwistId, degrees: &[usize]) -> Result<ParameterRangeReport> {
    let n = lattice_size(ps)?;
    let tw = make_twist(ps, twist)?;
    let mut failures = Vec::new();
    let inequalities_ok = if ps.family() == FamilyId::QRacah {
        let f = qracah_inequalities(ps)?;
        failures.extend(f.iter().map(|s| format!("inequality {s} fails")));
        f.is_empty()
    } else {
        true
    };
    let alpha_positive = tw.alpha > Rational::zero();
    let mut b_prime_ok = tw.b_prime(-1)?.is_zero();
    let mut d_prime_ok = tw.d_prime(n + 1)?.is_zero();
    for x in 0..=n {
        b_prime_ok &= &tw.alpha * tw.b_prime(x)? > Rational::zero();
        d_prime_ok &= &tw.alpha * tw.d_prime(x)? > Rational::zero();
    }
    if !b_prime_ok {
        failures.push("B' sign or boundary condition".into());
    }
    if !d_prime_ok {
        failures.push("D' sign or boundary condition".into());
    }
    let mut xi_positive = Vec::new();
    for &v in degrees {
        let mut ok = true;
        for x in -1..=n + 1 {
            match tw.xi(v, x) {
                Ok(val) => ok &= val > Rational::zero(),
                Err(e) => {
                    ok = false;
                    failures.push(format!("xi_{v}({x}) cannot be evaluated: {e}"));
                    break;
                }
            }
        }
        if !ok {
            failures.push(format!("xi_{v} not positive on [-1, N+1]"));
        }
        xi_positive.push((v, ok));
    }
    Ok(ParameterRangeReport { inequalities_ok, alpha_positive, b_prime_ok, d_prime_ok, xi_positive, failures })
}

/// `phi~_0(x) phi_0(x) = prod_{y<x} B(y) / (alpha D'(y+1))`.
///
/// This is the rational gauge factor of the pseudo virtual vector; the sign
/// decoration `(sgn alpha)^-x` used for negative `alpha` is built in.
pub fn gauge_factor(tw: &Twist, x: i64) -> Result<Rational> {
    let mut r = Rational::one();
    for y in 0..x {
        let den = &tw.alpha * tw.d_prime(y + 1)?;
        r *= checked_div(&families::potential_b(&tw.original, y)?, &den, "alpha D'(y+1) = 0")?;
    }
    Ok(r)
}

/// `phi~_0` as an almost zero mode of `H'`.
#[derive(Clone, Debug)]
pub struct AlmostZeroModeReport {
    /// Exact `phi~_0(x+1)^2 / phi~_0(x)^2 = B'(x) / D'(x+1)` on `0..N`.
    pub ratio_relation_ok: bool,
    /// qR only: `phi~_0 phi_0 = (1 - d q^2x) / ((1 - d) q^x)` exactly.
    pub closed_form_ok: Option<bool>,
    /// `||H' phi~_0 - D'(0) phi~_0(0) e_0 - B'(N) phi~_0(N) e_N||_inf`
    /// relative to `||phi~_0||_inf`.
    pub residual: BigFloat,
}

/// Checks `H' phi~_0 = D'(0) phi~_0(0) delta_x0 + B'(N) phi~_0(N) delta_xN`.
pub fn almost_zero_mode_check(ps: &ParamSet, twist: TwistId, precision: usize) -> Result<AlmostZeroModeReport> {
    let n = lattice_size(ps)?;
    let tw = make_twist(ps, twist)?;
    let rho: Vec<Rational> = (0..=n).map(|x| gauge_factor(&tw, x)).collect::<Result<_>>()?;
    let phi0_sq: Vec<Rational> =
        (0..=n as usize).map(|x| families::ground_state_sq(ps, x)).collect::<Result<_>>()?;
    let mut ratio_relation_ok = true;
    for x in 0..n {
        let i = x as usize;
        let lhs = &rho[i + 1] * &rho[i + 1] * &phi0_sq[i] * tw.d_prime(x + 1)?;
        let rhs = &rho[i] * &rho[i] * &phi0_sq[i + 1] * tw.b_prime(x)?;
        ratio_relation_ok &= lhs == rhs;
    }
    let closed_form_ok = if ps.family() == FamilyId::QRacah {
        let q = ps.q().unwrap();
        let d = ps.value(3);
        let one = Rational::one();
        Some((0..=n).all(|x| {
            rho[x as usize] == (&one - &d * qpow(q, 2 * x)) / ((&one - &d) * qpow(q, x))
        }))
    } else {
        None
    };
    let p = precision;
    let phi_t: Vec<BigFloat> = (0..=n as usize)
        .map(|i| Ok(&bf(&rho[i], p) / &sqrt_rational(&phi0_sq[i], p, "phi_0^2")?))
        .collect::<Result<_>>()?;
    let mut residual = Vec::new();
    for x in 0..=n {
        let i = x as usize;
        let (b, d) = (tw.b_prime(x)?, tw.d_prime(x)?);
        let mut s = &bf(&(&b + &d), p) * &phi_t[i];
        if x < n {
            let prod = &b * tw.d_prime(x + 1)?;
            s = s - &(&sqrt_rational(&prod, p, "B' D'")? * &phi_t[i + 1]);
        }
        if x > 0 {
            let prod = tw.b_prime(x - 1)? * &d;
            s = s - &(&sqrt_rational(&prod, p, "B' D'")? * &phi_t[i - 1]);
        }
        if x == 0 {
            s = s - &(&bf(&d, p) * &phi_t[0]);
        }
        if x == n {
            s = s - &(&bf(&b, p) * &phi_t[i]);
        }
        residual.push(s);
    }
    let residual = &max_abs(&residual) / &max_abs(&phi_t);
    Ok(AlmostZeroModeReport { ratio_relation_ok, closed_form_ok, residual })
}

/// Boundary behaviour of `H phi~_v - E~_v phi~_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport {
    /// Exact defect `(H~ g - E~_v g)(x)` for `g = phi~_v / phi_0` on `0..=N`.
    pub defect: Vec<Rational>,
    pub predicted_at_0: Rational,
    pub predicted_at_n: Rational,
    pub boundary_matches: bool,
    /// Same relation in the symmetric gauge, `||H phi~_v - E~ phi~_v -
    /// boundary terms||_inf / ||phi~_v||_inf`.
    pub symmetric_residual: BigFloat,
}

/// Exact defect of the pseudo virtual state vector `phi~_v = phi~_0 xi_v`.
///
/// Working with `g = phi~_v / phi_0` keeps everything rational:
/// `(H - E~) phi~_v = phi_0 (H~ - E~) g`. The defect must vanish in the
/// interior and equal `alpha D'(0) xi_v(-1)` at `x = 0` and
/// `alpha B'(N) phi~_0(N) xi_v(N+1) / phi_0(N)` at `x = N`. An interior
/// defect means the twist data is wrong and is reported as
/// [`Error::TwistTableError`].
pub fn pseudo_virtual_vector_defect(ps: &ParamSet, twist: TwistId, v: usize, precision: usize) -> Result<DefectReport> {
    let n = lattice_size(ps)?;
    let tw = make_twist(ps, twist)?;
    let h = build_hamiltonian(ps, precision)?;
    let e = tw.pseudo_energy(v as i64)?;
    let mut g = Vec::new();
    let mut phi0_sq = Vec::new();
    for x in 0..=n {
        let sq = families::ground_state_sq(ps, x as usize)?;
        g.push(checked_div(&(gauge_factor(&tw, x)? * tw.xi(v, x)?), &sq, "phi_0^2 = 0")?);
        phi0_sq.push(sq);
    }
    let hg = h.apply_h_tilde(&g);
    let defect: Vec<Rational> = hg.iter().zip(&g).map(|(a, b)| a - &e * b).collect();
    if let Some(x) = (1..n as usize).find(|&x| !defect[x].is_zero()) {
        return Err(Error::TwistTableError(format!(
            "{} twist {}: interior defect at x = {x} for v = {v}",
            ps.family().token(),
            twist.token()
        )));
    }
    let predicted_at_0 = &tw.alpha * tw.d_prime(0)? * tw.xi(v, -1)?;
    let predicted_at_n = checked_div(
        &(&tw.alpha * tw.b_prime(n)? * gauge_factor(&tw, n)? * tw.xi(v, n + 1)?),
        &phi0_sq[n as usize],
        "phi_0(N) = 0",
    )?;
    let boundary_matches = defect[0] == predicted_at_0 && defect[n as usize] == predicted_at_n;

    // Symmetric gauge: phi~_v = phi_0 g.
    let p = precision;
    let phi0: Vec<BigFloat> = phi0_sq.iter().map(|s| sqrt_rational(s, p, "phi_0^2")).collect::<Result<_>>()?;
    let phi_v: Vec<BigFloat> = phi0.iter().zip(&g).map(|(a, b)| a * &bf(b, p)).collect();
    let hv = h.h.apply(&phi_v);
    let e_f = bf(&e, p);
    let mut r: Vec<BigFloat> = hv.iter().zip(&phi_v).map(|(a, b)| a - &(&e_f * b)).collect();
    // phi~_0(0) = 1; phi~_0(N) = rho(N) / phi_0(N).
    r[0] = &r[0] - &bf(&predicted_at_0, p);
    let last = n as usize;
    r[last] = &r[last] - &(&bf(&predicted_at_n, p) * &phi0[last]);
    let symmetric_residual = &max_abs(&r) / &max_abs(&phi_v);
    Ok(DefectReport { defect, predicted_at_0, predicted_at_n, boundary_matches, symmetric_residual })
}

/// The deformed Hamiltonian `H_d1` on `x = -1..=N` and its exact data.
#[derive(Clone, Debug)]
pub struct DeformedBundle {
    pub twist: Twist,
    pub d1: usize,
    pub precision: usize,
    pub n: i64,
    /// `B^(x)` on `-1..=N+1` (index `x + 1`).
    pub b_hat: Vec<Rational>,
    /// `D^(x)` on `-1..=N+1` (index `x + 1`).
    pub d_hat: Vec<Rational>,
    /// `xi_d1(x)` on `-1..=N+1` (index `x + 1`).
    pub xi: Vec<Rational>,
    pub e_tilde: Rational,
    pub h: SymTridiagonal,
    /// Exact `B D(x+1) = B^ D^(x+1)` and `B + D = B^ + D^ + E~` on `0..=N`.
    pub compatibility_ok: bool,
    /// `B^(-1) = 0`, `D^(N+1) = 0`, both positive on `0..=N`.
    pub hat_potentials_ok: bool,
    /// Standard-form potentials `B_d1 > 0` on `-1..N`, `B_d1(N) = 0`,
    /// `D_d1 > 0` on `0..=N`, `D_d1(-1) = 0`.
    pub standard_form_ok: bool,
}

impl DeformedBundle {
    fn at(v: &[Rational], x: i64) -> &Rational {
        &v[(x + 1) as usize]
    }

    /// `B^(x)` for `x` in `-1..=N+1`.
    pub fn b_hat_at(&self, x: i64) -> &Rational {
        Self::at(&self.b_hat, x)
    }

    /// `D^(x)` for `x` in `-1..=N+1`.
    pub fn d_hat_at(&self, x: i64) -> &Rational {
        Self::at(&self.d_hat, x)
    }

    /// `B_d1(x) = alpha D'(x+1) xi(x) / xi(x+1)`.
    pub fn b_standard(&self, x: i64) -> Result<Rational> {
        let num = &self.twist.alpha * self.twist.d_prime(x + 1)? * Self::at(&self.xi, x);
        checked_div(&num, Self::at(&self.xi, x + 1), "xi = 0")
    }

    /// `D_d1(x) = alpha B'(x) xi(x+1) / xi(x)`.
    pub fn d_standard(&self, x: i64) -> Result<Rational> {
        let num = &self.twist.alpha * self.twist.b_prime(x)? * Self::at(&self.xi, x + 1);
        checked_div(&num, Self::at(&self.xi, x), "xi = 0")
    }
}

/// Builds `H_d1` from `B^(x) = alpha B'(x) xi(x+1)/xi(x)` and
/// `D^(x) = alpha D'(x) xi(x-1)/xi(x)`:
///
/// ```text
/// H_d1[x][x]   = B^(x) + D^(x+1) + E~_d1
/// H_d1[x][x+1] = -sqrt(B^(x+1) D^(x+1))
/// ```
pub fn build_deformed(ps: &ParamSet, twist: TwistId, d1: usize, precision: usize) -> Result<DeformedBundle> {
    let n = lattice_size(ps)?;
    let tw = make_twist(ps, twist)?;
    let xi: Vec<Rational> = (-2..=n + 2).map(|x| tw.xi(d1, x)).collect::<Result<_>>()?;
    let xi_at = |x: i64| &xi[(x + 2) as usize];
    let mut b_hat = Vec::new();
    let mut d_hat = Vec::new();
    for x in -1..=n + 1 {
        let b = checked_div(&(&tw.alpha * tw.b_prime(x)? * xi_at(x + 1)), xi_at(x), "xi_d1 = 0")?;
        let d = checked_div(&(&tw.alpha * tw.d_prime(x)? * xi_at(x - 1)), xi_at(x), "xi_d1 = 0")?;
        b_hat.push(b);
        d_hat.push(d);
    }
    let e_tilde = tw.pseudo_energy(d1 as i64)?;
    let bh = |x: i64| &b_hat[(x + 1) as usize];
    let dh = |x: i64| &d_hat[(x + 1) as usize];

    let mut compatibility_ok = true;
    for x in 0..=n {
        let b = families::potential_b(ps, x)?;
        let d = families::potential_d(ps, x)?;
        let d_next = families::potential_d(ps, x + 1)?;
        compatibility_ok &= &b * &d_next == bh(x) * dh(x + 1);
        compatibility_ok &= &b + &d == bh(x) + dh(x) + &e_tilde;
    }
    let zero = Rational::zero();
    let mut hat_potentials_ok = bh(-1).is_zero() && dh(n + 1).is_zero();
    for x in 0..=n {
        hat_potentials_ok &= *bh(x) > zero && *dh(x) > zero;
    }

    let mut diag = Vec::new();
    let mut off = Vec::new();
    for x in -1..=n {
        diag.push(bf(&(bh(x) + dh(x + 1) + &e_tilde), precision));
        if x < n {
            let prod = bh(x + 1) * dh(x + 1);
            if prod <= zero {
                return Err(Error::InvalidParameters(format!(
                    "B^ D^ product at x = {} is not positive: {prod}",
                    x + 1
                )));
            }
            off.push(-sqrt_rational(&prod, precision, "B^ D^")?);
        }
    }
    let xi_inner: Vec<Rational> = xi[1..xi.len() - 1].to_vec();
    let mut bundle = DeformedBundle {
        twist: tw,
        d1,
        precision,
        n,
        b_hat: b_hat.clone(),
        d_hat: d_hat.clone(),
        xi: xi_inner,
        e_tilde,
        h: SymTridiagonal::new(diag, off)?,
        compatibility_ok,
        hat_potentials_ok,
        standard_form_ok: false,
    };
    let mut standard_form_ok = bundle.b_standard(n)?.is_zero() && bundle.d_standard(-1)?.is_zero();
    for x in -1..n {
        standard_form_ok &= bundle.b_standard(x)? > zero;
    }
    for x in 0..=n {
        standard_form_ok &= bundle.d_standard(x)? > zero;
    }
    for x in -1..=n {
        // Standard form reproduces the same matrix entries.
        standard_form_ok &= bundle.b_standard(x)? + bundle.d_standard(x)? == bh(x) + dh(x + 1);
    }
    bundle.standard_form_ok = standard_form_ok;
    Ok(bundle)
}

/// Numerical checks of the deformed spectrum.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub eigenvalue_deviation: BigFloat,
    /// Worst normalized `||H v - E v||_inf` over the `N + 2` explicit vectors.
    pub eigenvector_residual: BigFloat,
    /// Worst mismatch of the Casoratian rewriting on `0..N`.
    pub casoratian_form_deviation: BigFloat,
    /// Worst `|<u, w>|` between distinct normalized eigenvectors.
    pub orthogonality_deviation: BigFloat,
    /// Worst entry mismatch between `A A^T + E~` and `H_d1`, relative to
    /// `max(1, |entry|)`; bounded by `2^(4-P)` independently of `tol`.
    pub factorization_deviation: BigFloat,
    /// Number of computed eigenvalues within `tol` of `E~_d1`.
    pub pseudo_level_multiplicity: usize,
    /// `|det(H_d1 - E~)|` relative to the product of row norms.
    pub determinant_relative: BigFloat,
    pub tolerance: BigFloat,
    pub passed: bool,
}

fn dot(a: &[BigFloat], b: &[BigFloat]) -> BigFloat {
    let p = a[0].precision();
    a.iter().zip(b).fold(BigFloat::zero(p), |s, (x, y)| s + x * y)
}

fn normalized(v: &[BigFloat]) -> Result<Vec<BigFloat>> {
    let norm = dot(v, v).sqrt()?;
    if norm.is_zero() {
        return Err(Error::DeformationError("zero eigenvector".into()));
    }
    Ok(v.iter().map(|x| x / &norm).collect())
}

/// Compares `H_d1` with `{E_0..E_N} + {E~_d1}` and with its explicit
/// eigenvectors, returning the measurements.
pub fn deformed_spectrum_measure(bundle: &DeformedBundle, tol: &BigFloat) -> Result<SpectrumReport> {
    let p = bundle.precision;
    let tw = &bundle.twist;
    let ps = &tw.original;
    let n = bundle.n;
    let dim = (n + 2) as usize;
    let one = BigFloat::one(p);

    // Spectrum.
    let ev = eigenvalues_symmetric_tridiagonal(&bundle.h);
    let mut expected: Vec<Rational> = (0..=n).map(|k| families::energy(ps, k)).collect::<Result<_>>()?;
    expected.push(bundle.e_tilde.clone());
    expected.sort();
    let mut eigenvalue_deviation = BigFloat::zero(p);
    for (a, b) in ev.iter().zip(&expected) {
        let bb = bf(b, p);
        let scale = bb.abs().max(one.clone());
        eigenvalue_deviation = eigenvalue_deviation.max(&(a - &bb).abs() / &scale);
    }

    // Explicit eigenvectors phi_{d1,n} and the new state.
    let sqrt_b: Vec<BigFloat> =
        (-1..=n).map(|x| sqrt_rational(bundle.b_hat_at(x), p, "B^")).collect::<Result<_>>()?;
    let sqrt_d_next: Vec<BigFloat> =
        (-1..=n).map(|x| sqrt_rational(bundle.d_hat_at(x + 1), p, "D^")).collect::<Result<_>>()?;
    let gs = ground_state(ps, p)?;
    let phi_n = |k: usize, x: i64| -> Result<BigFloat> {
        if x < 0 || x > n {
            return Ok(BigFloat::zero(p));
        }
        Ok(&gs.phi0[x as usize] * &bf(&families::eval_polynomial(ps, k, x)?, p))
    };
    let mut vectors = Vec::new();
    let mut energies = Vec::new();
    let mut casoratian_form_deviation = BigFloat::zero(p);
    for k in 0..=n as usize {
        let mut v = Vec::with_capacity(dim);
        for x in -1..=n {
            let i = (x + 1) as usize;
            v.push(&(&sqrt_b[i] * &phi_n(k, x)?) - &(&sqrt_d_next[i] * &phi_n(k, x + 1)?));
        }
        // Casoratian rewriting on 0..N-1, with nu = phi_0 / phi~_0 = phi_0^2 / rho.
        let scale = max_abs(&v).max(BigFloat::pow2(-(p as i64), p));
        for x in 0..n {
            let rho = |y: i64| gauge_factor(tw, y);
            let nu = |y: i64| -> Result<Rational> {
                checked_div(&families::ground_state_sq(ps, y as usize)?, &rho(y)?, "rho = 0")
            };
            let xi0 = bundle.xi[(x + 1) as usize].clone();
            let xi1 = bundle.xi[(x + 2) as usize].clone();
            let w = &xi0 * nu(x + 1)? * families::eval_polynomial(ps, k, x + 1)?
                - &xi1 * nu(x)? * families::eval_polynomial(ps, k, x)?;
            let phi_t0 = &bf(&rho(x)?, p) / &gs.phi0[x as usize];
            let pref = sqrt_rational(&(&tw.alpha * tw.b_prime(x)?), p, "alpha B'")?;
            let root = sqrt_rational(&(&xi0 * &xi1), p, "xi xi")?;
            let val = -(&(&pref * &phi_t0) / &root) * bf(&w, p);
            casoratian_form_deviation = casoratian_form_deviation.max(&(&val - &v[(x + 1) as usize]).abs() / &scale);
        }
        vectors.push(v);
        energies.push(bf(&families::energy(ps, k as i64)?, p));
    }
    let lower = ps.shifted(-1);
    let mut new_state = Vec::with_capacity(dim);
    for x in -1..=n {
        let phi0_sq = families::ground_state_sq(&lower, (x + 1) as usize)?;
        let num = sqrt_rational(&phi0_sq, p, "phi_0(x+1; lambda - delta)^2")?;
        let den = sqrt_rational(&(&bundle.xi[(x + 1) as usize] * &bundle.xi[(x + 2) as usize]), p, "xi xi")?;
        new_state.push(&num / &den);
    }
    vectors.push(new_state);
    energies.push(bf(&bundle.e_tilde, p));

    let mut eigenvector_residual = BigFloat::zero(p);
    let mut units = Vec::new();
    for (v, e) in vectors.iter().zip(&energies) {
        let u = normalized(v)?;
        let hu = bundle.h.apply(&u);
        let r: Vec<BigFloat> = hu.iter().zip(&u).map(|(a, b)| a - &(e * b)).collect();
        eigenvector_residual = eigenvector_residual.max(max_abs(&r));
        units.push(u);
    }
    let mut orthogonality_deviation = BigFloat::zero(p);
    for i in 0..units.len() {
        for j in 0..i {
            orthogonality_deviation = orthogonality_deviation.max(dot(&units[i], &units[j]).abs());
        }
    }

    // A = sqrt(B^) - e^d sqrt(D^) on -1..=N, then A A^T + E~.
    let mut a = vec![vec![BigFloat::zero(p); dim]; dim];
    for i in 0..dim {
        a[i][i] = sqrt_b[i].clone();
        if i + 1 < dim {
            a[i][i + 1] = -&sqrt_rational(bundle.d_hat_at(i as i64), p, "D^")?;
        }
    }
    let e_t = bf(&bundle.e_tilde, p);
    let mut factorization_deviation = BigFloat::zero(p);
    for i in 0..dim {
        for j in 0..dim {
            let mut s = BigFloat::zero(p);
            for k in 0..dim {
                s = s + &a[i][k] * &a[j][k];
            }
            if i == j {
                s = s + &e_t;
            }
            let target = if i == j {
                bundle.h.diag[i].clone()
            } else if j == i + 1 {
                bundle.h.off[i].clone()
            } else if i == j + 1 {
                bundle.h.off[j].clone()
            } else {
                BigFloat::zero(p)
            };
            let scale = target.abs().max(one.clone());
            factorization_deviation = factorization_deviation.max(&(&s - &target).abs() / &scale);
        }
    }

    // det(H_d1 - E~) = 0.
    let shifted: Vec<BigFloat> = bundle.h.diag.iter().map(|d| d - &e_t).collect();
    let off_sq: Vec<BigFloat> = bundle.h.off.iter().map(|o| o * o).collect();
    let det = continuant(&shifted, &off_sq).abs();
    let mut scale = one.clone();
    for i in 0..dim {
        let mut row = shifted[i].abs();
        if i > 0 {
            row = row + bundle.h.off[i - 1].abs();
        }
        if i + 1 < dim {
            row = row + bundle.h.off[i].abs();
        }
        scale = &scale * &row.max(one.clone());
    }
    let determinant_relative = &det / &scale;

    let e_f = bf(&bundle.e_tilde, p);
    let pseudo_level_multiplicity = ev.iter().filter(|v| (*v - &e_f).abs() <= *tol).count();
    let passed = eigenvalue_deviation <= *tol
        && eigenvector_residual <= *tol
        && casoratian_form_deviation <= *tol
        && orthogonality_deviation <= *tol
        && factorization_deviation <= BigFloat::pow2(4 - p as i64, p)
        && determinant_relative <= *tol
        && pseudo_level_multiplicity == 1;
    Ok(SpectrumReport {
        eigenvalue_deviation,
        eigenvector_residual,
        casoratian_form_deviation,
        orthogonality_deviation,
        factorization_deviation,
        pseudo_level_multiplicity,
        determinant_relative,
        tolerance: tol.clone(),
        passed,
    })
}

/// [`deformed_spectrum_measure`] that fails with
/// [`Error::DeformationError`] when any check exceeds its bound.
pub fn deformed_spectrum_check(bundle: &DeformedBundle, tol: &BigFloat) -> Result<SpectrumReport> {
    let r = deformed_spectrum_measure(bundle, tol)?;
    if r.passed {
        Ok(r)
    } else {
        Err(Error::DeformationError(format!(
            "d1 = {}: eigenvalues {}, residual {}, casoratian form {}, orthogonality {}, factorization {}, \
             determinant {}, pseudo level multiplicity {}",
            bundle.d1,
            r.eigenvalue_deviation,
            r.eigenvector_residual,
            r.casoratian_form_deviation,
            r.orthogonality_deviation,
            r.factorization_deviation,
            r.determinant_relative,
            r.pseudo_level_multiplicity
        )))
    }
}

/// `xi_l(x-1; lambda)` against the Casoratian of `P_1..P_l` at
/// `lambda - (l+1) delta`: the identity with `D = {l}`, `calN = l`.
pub fn eigenstate_deletion_special_case(ps: &ParamSet, l: usize) -> Result<IdentityOutcome> {
    if l == 0 {
        return Err(Error::InvalidInput("l must be positive".into()));
    }
    verify_identity(ps, TwistId::I, &build_index_sets(&[l], l)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr() -> ParamSet {
        ParamSet::safe(FamilyId::QRacah)
    }

    #[test]
    fn safe_point_is_admissible() {
        let r = validate_parameter_range(&qr(), TwistId::I, &[0, 1, 2]).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.alpha_positive);
    }

    #[test]
    fn original_hamiltonian_spectrum() {
        let h = build_hamiltonian(&qr(), 256).unwrap();
        assert!(h.h_tilde_eigen_check().unwrap());
        assert!(h.spectrum_deviation().unwrap() <= decimal_tolerance(30, 256));
        let g = ground_state(&qr(), 256).unwrap();
        assert!(g.detailed_balance_ok);
        assert!(g.residual <= decimal_tolerance(30, 256));
    }

    #[test]
    fn defect_lives_on_the_boundary() {
        for v in 0..3 {
            let r = pseudo_virtual_vector_defect(&qr(), TwistId::I, v, 256).unwrap();
            assert!(r.boundary_matches, "v = {v}: {:?}", r);
            assert!(!r.predicted_at_0.is_zero());
            assert!(r.symmetric_residual <= decimal_tolerance(30, 256));
        }
    }

    #[test]
    fn deformed_spectrum_at_256_bits() {
        let tol = decimal_tolerance(30, 256);
        for d1 in 0..3 {
            let b = build_deformed(&qr(), TwistId::I, d1, 256).unwrap();
            assert!(b.compatibility_ok && b.hat_potentials_ok && b.standard_form_ok, "d1 = {d1}");
            let r = deformed_spectrum_check(&b, &tol).unwrap();
            assert!(r.passed, "d1 = {d1}: {r:?}");
        }
    }

    #[test]
    fn almost_zero_mode() {
        let r = almost_zero_mode_check(&qr(), TwistId::I, 256).unwrap();
        assert!(r.ratio_relation_ok);
        assert_eq!(r.closed_form_ok, Some(true));
        assert!(r.residual <= decimal_tolerance(30, 256));
    }

    #[test]
    fn corrupted_bundle_is_rejected() {
        let mut b = build_deformed(&qr(), TwistId::I, 1, 128).unwrap();
        b.e_tilde += Rational::one();
        assert!(matches!(deformed_spectrum_check(&b, &default_tolerance(128)), Err(Error::DeformationError(_))));
    }

    #[test]
    fn default_tolerance_scales_with_precision() {
        assert_eq!(default_tolerance(128).to_f64(), 2f64.powi(-64));
    }

    #[test]
    fn special_case_holds() {
        for l in 1..=3 {
            let out = eigenstate_deletion_special_case(&qr(), l).unwrap();
            assert!(out.report.ratio.is_some(), "l = {l}");
        }
    }

    #[test]
    fn semi_infinite_family_is_rejected() {
        assert!(build_hamiltonian(&ParamSet::safe(FamilyId::Meixner), 64).is_err());
    }
}
