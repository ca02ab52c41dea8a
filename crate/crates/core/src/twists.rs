//! Discrete symmetries ("twists") of the Hamiltonians and the pseudo
//! virtual state polynomials they generate.
//!
//! A twist maps `x -> t(x)` and `lambda -> t(lambda)` (and possibly
//! `q -> 1/q`) so that new potentials `B'`, `D'` satisfy
//!
//! ```text
//! B(x) D(x+1) = alpha^2 B'(x) D'(x+1)
//! B(x) + D(x) = alpha (B'(x) + D'(x)) + alpha'
//! ```
//!
//! The twisted polynomial `xi_v(x) = P_v(t(x); t(lambda))` then solves the
//! original difference equation with the pseudo energy
//! `E~_v = alpha E_v(t(lambda)) + alpha'`.

use crate::error::{Error, Result};
use crate::exact::{checked_div, int, qpow, Rational};
use crate::families::{self, FamilyId, ParamSet, Slot};
use crate::qseries::{hyper_f, hyper_phi, poch, qpoch};
use num_traits::{One, Zero};
use std::fmt;

/// Twist labels. The tilde variants also invert the base `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistId {
    I,
    II,
    ITilde,
    IITilde,
    III,
    IV,
    IIITilde,
    IVTilde,
}

impl TwistId {
    pub const ALL: [TwistId; 8] = [
        TwistId::I,
        TwistId::II,
        TwistId::ITilde,
        TwistId::IITilde,
        TwistId::III,
        TwistId::IV,
        TwistId::IIITilde,
        TwistId::IVTilde,
    ];

    pub fn token(self) -> &'static str {
        match self {
            TwistId::I => "i",
            TwistId::II => "ii",
            TwistId::ITilde => "i~",
            TwistId::IITilde => "ii~",
            TwistId::III => "iii",
            TwistId::IV => "iv",
            TwistId::IIITilde => "iii~",
            TwistId::IVTilde => "iv~",
        }
    }

    pub fn from_token(s: &str) -> Result<TwistId> {
        TwistId::ALL
            .into_iter()
            .find(|t| t.token() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown twist token {s:?}")))
    }

    pub fn inverts_q(self) -> bool {
        matches!(self, TwistId::ITilde | TwistId::IITilde | TwistId::IIITilde | TwistId::IVTilde)
    }

    /// Twists of type (iii)/(iv) shift the level index by `N+1` instead of
    /// producing pseudo virtual states.
    pub fn is_level_shift(self) -> bool {
        matches!(self, TwistId::III | TwistId::IV | TwistId::IIITilde | TwistId::IVTilde)
    }
}

impl fmt::Display for TwistId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// How a twist moves the lattice coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XMap {
    /// `t(x) = -x - 1`
    Reflect,
    /// `t(x) = x - N - 1`
    ShiftBack,
}

/// One output component: `t(lambda)_j = constant + sum_k coeffs[k] lambda_k`.
type AffineRow = (i64, &'static [i64]);

type ConstFn = fn(&ParamSet) -> Result<Rational>;

/// Registry entry for one twist of one family.
#[derive(Clone, Copy)]
pub struct TwistDescriptor {
    pub family: FamilyId,
    pub id: TwistId,
    /// Exchanged variant: `t(lambda)_1` and `t(lambda)_2` swapped.
    pub exchanged: bool,
    pub x_map: XMap,
    rows: &'static [AffineRow],
    tabulated_alpha: Option<ConstFn>,
    tabulated_alpha_prime: Option<ConstFn>,
}

impl fmt::Debug for TwistDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistDescriptor")
            .field("family", &self.family)
            .field("id", &self.id)
            .field("exchanged", &self.exchanged)
            .field("x_map", &self.x_map)
            .field("rows", &self.rows)
            .finish()
    }
}

impl TwistDescriptor {
    pub fn label(&self) -> String {
        if self.exchanged {
            format!("{}'", self.id.token())
        } else {
            self.id.token().to_string()
        }
    }

    /// The exchanged variant (R and qR only).
    pub fn exchanged(&self) -> Result<TwistDescriptor> {
        if !matches!(self.family, FamilyId::Racah | FamilyId::QRacah) {
            return Err(Error::NotATwist(format!("{} has no exchanged twists", self.family.name())));
        }
        Ok(TwistDescriptor { exchanged: !self.exchanged, ..*self })
    }

    pub fn has_tabulated_alpha(&self) -> bool {
        self.tabulated_alpha.is_some()
    }

    pub fn has_tabulated_alpha_prime(&self) -> bool {
        self.tabulated_alpha_prime.is_some()
    }

    /// `t(lambda)` together with the new base.
    pub fn apply(&self, ps: &ParamSet) -> Result<ParamSet> {
        if ps.family() != self.family {
            return Err(Error::InvalidInput("twist applied to a different family".into()));
        }
        let new_q = ps.q().map(|q| if self.id.inverts_q() { q.recip() } else { q.clone() });
        // q'^lambda_j for every input slot.
        let powered = |j: usize| -> Rational {
            match &ps.slots()[j] {
                Slot::Mult(v) => {
                    if self.id.inverts_q() {
                        v.recip()
                    } else {
                        v.clone()
                    }
                }
                Slot::Exp(k) => qpow(new_q.as_ref().unwrap(), *k),
                Slot::Add(v) => v.clone(),
            }
        };
        let mut slots = Vec::with_capacity(self.rows.len());
        for (i, (c, coeffs)) in self.rows.iter().enumerate() {
            let slot = match &ps.slots()[i] {
                Slot::Add(_) => {
                    let mut v = int(*c);
                    for (j, m) in coeffs.iter().enumerate() {
                        if *m != 0 {
                            match &ps.slots()[j] {
                                Slot::Add(l) => v += int(*m) * l,
                                _ => return Err(Error::TwistTableError("mixed slot kinds".into())),
                            }
                        }
                    }
                    Slot::Add(v)
                }
                Slot::Exp(_) => {
                    let mut k = *c;
                    for (j, m) in coeffs.iter().enumerate() {
                        if *m != 0 {
                            match &ps.slots()[j] {
                                Slot::Exp(l) => k += m * l,
                                _ => {
                                    return Err(Error::TwistTableError(
                                        "lattice slot depends on a non-lattice parameter".into(),
                                    ))
                                }
                            }
                        }
                    }
                    Slot::Exp(k)
                }
                Slot::Mult(_) => {
                    let q = new_q.as_ref().unwrap();
                    let mut v = qpow(q, *c);
                    for (j, m) in coeffs.iter().enumerate() {
                        if *m != 0 {
                            v *= qpow(&powered(j), *m);
                        }
                    }
                    Slot::Mult(v)
                }
            };
            slots.push(slot);
        }
        if self.exchanged {
            slots.swap(0, 1);
        }
        ParamSet::new(self.family, new_q, slots)
    }
}

macro_rules! rows {
    ($( ($c:expr; $($m:expr),*) ),* $(,)?) => {
        &[ $( ($c, &[$($m),*]) ),* ]
    };
}

fn one(_: &ParamSet) -> Result<Rational> {
    Ok(Rational::one())
}
fn minus_one(_: &ParamSet) -> Result<Rational> {
    Ok(-Rational::one())
}
fn q_alpha(ps: &ParamSet) -> Result<Rational> {
    Ok(ps.q().unwrap().clone())
}
fn r_alpha_prime(ps: &ParamSet) -> Result<Rational> {
    Ok(-(families::d_tilde(ps)? - Rational::one()))
}
fn qr_alpha(ps: &ParamSet) -> Result<Rational> {
    Ok(families::d_tilde(ps)? / ps.q().unwrap())
}
fn qr_alpha_prime(ps: &ParamSet) -> Result<Rational> {
    let q = ps.q().unwrap();
    Ok(-((Rational::one() - q) * (Rational::one() - families::d_tilde(ps)? / q)))
}
fn qha_alpha_ii(ps: &ParamSet) -> Result<Rational> {
    Ok(ps.value(0) * ps.value(1) * qpow(ps.q().unwrap(), -2))
}
fn qk_alpha_ii(ps: &ParamSet) -> Result<Rational> {
    Ok(-(ps.value(0) / ps.q().unwrap()))
}

const fn entry(
    family: FamilyId,
    id: TwistId,
    x_map: XMap,
    rows: &'static [AffineRow],
    tabulated_alpha: Option<ConstFn>,
    tabulated_alpha_prime: Option<ConstFn>,
) -> TwistDescriptor {
    TwistDescriptor { family, id, exchanged: false, x_map, rows, tabulated_alpha, tabulated_alpha_prime }
}

const RACAH_I: &[AffineRow] = rows![(2; -1, 0, 0, 0), (2; 0, -1, 0, 0), (2; 0, 0, -1, 0), (2; 0, 0, 0, -1)];
const RACAH_II: &[AffineRow] = rows![(2; -1, 0, -1, 1), (2; 0, -1, -1, 1), (2; 0, 0, -1, 0), (2; 0, 0, -2, 1)];
const RACAH_III: &[AffineRow] = rows![(1; 1, 0, 0, -1), (1; 0, 1, 0, -1), (2; 0, 0, -1, 0), (2; 0, 0, 0, -1)];
const RACAH_IV: &[AffineRow] = rows![(1; 1, 0, -1, 0), (1; 0, 1, -1, 0), (2; 0, 0, -1, 0), (2; 0, 0, -2, 1)];
const HAHN_I: &[AffineRow] = rows![(2; -1, 0, 0), (2; 0, -1, 0), (-2; 0, 0, -1)];
const HAHN_II: &[AffineRow] = rows![(2; 0, -1, 0), (2; -1, 0, 0), (-2; 0, 0, -1)];
const DUAL_HAHN_II: &[AffineRow] = rows![(1; 0, 1, 1), (1; 1, 0, 1), (-2; 0, 0, -1)];
const NEG_P: &[AffineRow] = rows![(0; -1, 0), (-2; 0, -1)];
const SAME_P: &[AffineRow] = rows![(0; 1, 0), (-2; 0, -1)];
const ONE_MINUS_P: &[AffineRow] = rows![(1; -1, 0), (-2; 0, -1)];
const TWO_MINUS_P: &[AffineRow] = rows![(2; -1, 0), (-2; 0, -1)];
const MEIXNER_I: &[AffineRow] = rows![(2; -1, 0), (0; 0, 1)];
const NEG_PAIR: &[AffineRow] = rows![(0; -1, 0), (0; 0, -1)];
const NEG_ONE: &[AffineRow] = rows![(0; -1)];
const TWO_MINUS_ONE: &[AffineRow] = rows![(2; -1)];

use FamilyId as F;
use TwistId as T;
use XMap::{Reflect, ShiftBack};

static REGISTRY: &[TwistDescriptor] = &[
    entry(F::Racah, T::I, Reflect, RACAH_I, Some(one), Some(r_alpha_prime)),
    entry(F::Racah, T::II, ShiftBack, RACAH_II, Some(one), Some(r_alpha_prime)),
    entry(F::Racah, T::III, Reflect, RACAH_III, None, None),
    entry(F::Racah, T::IV, ShiftBack, RACAH_IV, None, None),
    entry(F::QRacah, T::I, Reflect, RACAH_I, Some(qr_alpha), Some(qr_alpha_prime)),
    entry(F::QRacah, T::II, ShiftBack, RACAH_II, Some(qr_alpha), Some(qr_alpha_prime)),
    entry(F::QRacah, T::ITilde, Reflect, RACAH_I, Some(q_alpha), Some(qr_alpha_prime)),
    entry(F::QRacah, T::IITilde, ShiftBack, RACAH_II, Some(q_alpha), Some(qr_alpha_prime)),
    entry(F::QRacah, T::III, Reflect, RACAH_III, None, None),
    entry(F::QRacah, T::IV, ShiftBack, RACAH_IV, None, None),
    entry(F::QRacah, T::IIITilde, Reflect, RACAH_III, None, None),
    entry(F::QRacah, T::IVTilde, ShiftBack, RACAH_IV, None, None),
    entry(F::Hahn, T::I, Reflect, HAHN_I, Some(one), None),
    entry(F::Hahn, T::II, ShiftBack, HAHN_II, Some(one), None),
    entry(F::DualHahn, T::I, Reflect, HAHN_I, Some(minus_one), None),
    entry(F::DualHahn, T::II, ShiftBack, DUAL_HAHN_II, Some(minus_one), None),
    entry(F::Krawtchouk, T::I, Reflect, SAME_P, Some(minus_one), None),
    entry(F::Krawtchouk, T::II, ShiftBack, ONE_MINUS_P, Some(minus_one), None),
    entry(F::QHahn, T::ITilde, Reflect, HAHN_I, Some(q_alpha), None),
    entry(F::QHahn, T::II, ShiftBack, HAHN_II, Some(qha_alpha_ii), None),
    entry(F::DualQHahn, T::ITilde, Reflect, HAHN_I, Some(q_alpha), None),
    entry(F::DualQHahn, T::IITilde, ShiftBack, DUAL_HAHN_II, Some(q_alpha), None),
    entry(F::QuantumQKrawtchouk, T::ITilde, Reflect, NEG_P, None, None),
    entry(F::QKrawtchouk, T::ITilde, Reflect, TWO_MINUS_P, Some(q_alpha), None),
    entry(F::QKrawtchouk, T::II, ShiftBack, TWO_MINUS_P, Some(qk_alpha_ii), None),
    entry(F::DualQKrawtchouk, T::ITilde, Reflect, NEG_P, Some(q_alpha), None),
    entry(F::DualQKrawtchouk, T::IITilde, ShiftBack, SAME_P, Some(q_alpha), None),
    entry(F::AffineQKrawtchouk, T::ITilde, Reflect, NEG_P, None, None),
    entry(F::Meixner, T::I, Reflect, MEIXNER_I, None, None),
    entry(F::Charlier, T::I, Reflect, NEG_ONE, None, None),
    entry(F::LittleQJacobi, T::ITilde, Reflect, NEG_PAIR, None, None),
    entry(F::QMeixner, T::ITilde, Reflect, NEG_PAIR, None, None),
    entry(F::LittleQLaguerre, T::ITilde, Reflect, NEG_ONE, None, None),
    entry(F::AlSalamCarlitzII, T::ITilde, Reflect, NEG_ONE, None, None),
    entry(F::QBessel, T::ITilde, Reflect, TWO_MINUS_ONE, None, None),
    entry(F::QCharlier, T::ITilde, Reflect, NEG_ONE, None, None),
];

/// All registered twists of a family, in table order.
pub fn twists_for(family: FamilyId) -> Vec<TwistDescriptor> {
    REGISTRY.iter().filter(|d| d.family == family).copied().collect()
}

/// Twists that produce pseudo virtual state polynomials.
pub fn virtual_twists_for(family: FamilyId) -> Vec<TwistDescriptor> {
    twists_for(family).into_iter().filter(|d| !d.id.is_level_shift()).collect()
}

/// Looks up a registered twist.
pub fn descriptor(family: FamilyId, id: TwistId) -> Result<TwistDescriptor> {
    REGISTRY
        .iter()
        .find(|d| d.family == family && d.id == id)
        .copied()
        .ok_or_else(|| Error::NotATwist(format!("twist {id} is not registered for {}", family.name())))
}

/// Where the twist constants came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantSource {
    /// Tabulated formula, confirmed against the derivation.
    Tabulated,
    /// Solved from the potentials.
    Derived,
}

impl ConstantSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstantSource::Tabulated => "tabulated",
            ConstantSource::Derived => "derived",
        }
    }
}

/// A twist instantiated at a parameter point.
#[derive(Clone, Debug)]
pub struct Twist {
    pub descriptor: TwistDescriptor,
    pub original: ParamSet,
    pub twisted: ParamSet,
    pub alpha: Rational,
    pub alpha_prime: Rational,
    pub alpha_source: ConstantSource,
    pub alpha_prime_source: ConstantSource,
}

/// Instantiates a registered twist at `ps` and pins `alpha`, `alpha'`.
pub fn make_twist(ps: &ParamSet, id: TwistId) -> Result<Twist> {
    instantiate(ps, descriptor(ps.family(), id)?)
}

/// Instantiates an arbitrary descriptor, e.g. an exchanged variant.
pub fn instantiate(ps: &ParamSet, descriptor: TwistDescriptor) -> Result<Twist> {
    let twisted = descriptor.apply(ps)?;
    let mut tw = Twist {
        descriptor,
        original: ps.clone(),
        twisted,
        alpha: Rational::one(),
        alpha_prime: Rational::zero(),
        alpha_source: ConstantSource::Derived,
        alpha_prime_source: ConstantSource::Derived,
    };
    let hint = descriptor.tabulated_alpha.map(|f| f(ps)).transpose()?;
    let (alpha, alpha_prime) = derive_constants_with_hint(ps, |x| tw.b_prime(x), |x| tw.d_prime(x), hint)?;
    tw.alpha = alpha;
    tw.alpha_prime = alpha_prime;
    if let Some(f) = descriptor.tabulated_alpha {
        let tabulated = f(ps)?;
        if tabulated != tw.alpha {
            return Err(Error::TwistTableError(format!(
                "{} twist {}: tabulated alpha {} disagrees with derived {}",
                ps.family().name(),
                descriptor.label(),
                tabulated,
                tw.alpha
            )));
        }
        tw.alpha_source = ConstantSource::Tabulated;
    }
    if let Some(f) = descriptor.tabulated_alpha_prime {
        let tabulated = f(ps)?;
        if tabulated != tw.alpha_prime {
            return Err(Error::TwistTableError(format!(
                "{} twist {}: tabulated alpha' {} disagrees with derived {}",
                ps.family().name(),
                descriptor.label(),
                tabulated,
                tw.alpha_prime
            )));
        }
        tw.alpha_prime_source = ConstantSource::Tabulated;
    }
    Ok(tw)
}

/// Sample points used when solving for the twist constants.
fn constant_sample_points(ps: &ParamSet) -> Vec<i64> {
    let top = ps.lattice_n().unwrap_or(6);
    (-3..=top + 3).collect()
}

/// Solves `B + D = alpha (B' + D') + alpha'` at two points and validates both
/// defining relations at every other sample point.
pub fn derive_constants(
    ps: &ParamSet,
    b_prime: impl Fn(i64) -> Result<Rational>,
    d_prime: impl Fn(i64) -> Result<Rational>,
) -> Result<(Rational, Rational)> {
    derive_constants_with_hint(ps, b_prime, d_prime, None)
}

/// [`derive_constants`]; when `B' + D'` is constant on the samples the sum
/// relation leaves `alpha` open and `hint` is checked against the product
/// relation instead.
fn derive_constants_with_hint(
    ps: &ParamSet,
    b_prime: impl Fn(i64) -> Result<Rational>,
    d_prime: impl Fn(i64) -> Result<Rational>,
    hint: Option<Rational>,
) -> Result<(Rational, Rational)> {
    struct Sample {
        x: i64,
        b: Rational,
        d_next: Rational,
        bp: Rational,
        dp_next: Rational,
        s: Rational,
        sp: Rational,
    }
    let mut samples = Vec::new();
    for x in constant_sample_points(ps) {
        let vals = (|| -> Result<_> {
            Ok((
                families::potential_b(ps, x)?,
                families::potential_d(ps, x)?,
                families::potential_d(ps, x + 1)?,
                b_prime(x)?,
                d_prime(x)?,
                d_prime(x + 1)?,
            ))
        })();
        if let Ok((b, d, d_next, bp, dp, dp_next)) = vals {
            let s = &b + &d;
            let sp = &bp + &dp;
            samples.push(Sample { x, b, d_next, bp, dp_next, s, sp });
        }
    }
    if samples.len() < 7 {
        return Err(Error::NotATwist(format!("only {} usable sample points", samples.len())));
    }
    let first = &samples[0];
    let alpha = match (samples.iter().find(|s| s.sp != first.sp), hint) {
        (Some(second), _) => checked_div(&(&first.s - &second.s), &(&first.sp - &second.sp), "alpha")?,
        (None, Some(h)) => h,
        (None, None) => return Err(Error::NotATwist("B' + D' is constant; alpha undetermined".into())),
    };
    if alpha.is_zero() {
        return Err(Error::NotATwist("alpha = 0".into()));
    }
    let alpha_prime = &first.s - &alpha * &first.sp;
    let a2 = &alpha * &alpha;
    for s in &samples {
        if s.s != &alpha * &s.sp + &alpha_prime {
            return Err(Error::NotATwist(format!("B + D relation fails at x = {}", s.x)));
        }
        if &s.b * &s.d_next != &a2 * &s.bp * &s.dp_next {
            return Err(Error::NotATwist(format!("B D relation fails at x = {}", s.x)));
        }
    }
    Ok((alpha, alpha_prime))
}

impl Twist {
    pub fn id(&self) -> TwistId {
        self.descriptor.id
    }

    pub fn family(&self) -> FamilyId {
        self.original.family()
    }

    fn n(&self) -> i64 {
        self.original.lattice_n().unwrap_or(0)
    }

    /// `t(x)`.
    pub fn t_x(&self, x: i64) -> i64 {
        match self.descriptor.x_map {
            XMap::Reflect => -x - 1,
            XMap::ShiftBack => x - self.n() - 1,
        }
    }

    /// `B'(x)`.
    pub fn b_prime(&self, x: i64) -> Result<Rational> {
        match self.descriptor.x_map {
            XMap::Reflect => families::potential_d(&self.twisted, self.t_x(x)),
            XMap::ShiftBack => families::potential_b(&self.twisted, self.t_x(x)),
        }
    }

    /// `D'(x)`.
    pub fn d_prime(&self, x: i64) -> Result<Rational> {
        match self.descriptor.x_map {
            XMap::Reflect => families::potential_b(&self.twisted, self.t_x(x)),
            XMap::ShiftBack => families::potential_d(&self.twisted, self.t_x(x)),
        }
    }

    /// `E~_v = alpha E_v(t(lambda)) + alpha'`.
    pub fn pseudo_energy(&self, v: i64) -> Result<Rational> {
        Ok(&self.alpha * families::energy(&self.twisted, v)? + &self.alpha_prime)
    }

    /// `xi_v(x) = P_v(t(x); t(lambda))` straight from the definition.
    pub fn xi_by_definition(&self, v: usize, x: i64) -> Result<Rational> {
        if self.descriptor.id.is_level_shift() {
            return Err(Error::InvalidInput("level-shift twists carry no pseudo virtual polynomials".into()));
        }
        families::eval_polynomial(&self.twisted, v, self.t_x(x))
    }

    /// `xi_v(x)` from the tabulated hypergeometric closed form. Twists
    /// without a separate closed form fall back to the definition.
    pub fn xi(&self, v: usize, x: i64) -> Result<Rational> {
        if self.descriptor.exchanged {
            return self.xi_by_definition(v, x);
        }
        match xi_closed_forms(&self.original, self.descriptor.id, v, x)?.into_iter().next() {
            Some(val) => Ok(val),
            None => self.xi_by_definition(v, x),
        }
    }
}

/// Every tabulated closed form of `xi_v(x)` for this family and twist.
/// Several families list more than one equivalent form; an empty list means
/// only the definition is available.
pub fn xi_closed_forms(ps: &ParamSet, id: TwistId, v: usize, x: i64) -> Result<Vec<Rational>> {
    let vi = v as i64;
    let nv = int(-vi);
    let o = Rational::one;
    let n = ps.lattice_n().unwrap_or(0);
    let nr = int(n);
    let xr = int(x);
    let val = |i: usize| ps.value(i);
    let forms = match (ps.family(), id) {
        (F::Racah, T::I) => {
            let dt = families::d_tilde(ps)?;
            let (a, b, c, d) = (val(0), val(1), val(2), val(3));
            let num = vec![nv, int(vi + 2) - dt, &xr + o(), o() - &xr - d];
            vec![hyper_f(num, vec![int(2) - a, int(2) - b, int(2) - c], o(), v)?]
        }
        (F::Racah, T::II) => {
            let dt = families::d_tilde(ps)?;
            let (a, b, c) = (val(0), val(1), val(2));
            let num = vec![nv, int(vi + 2) - &dt, o() - &xr - &c, &xr + &a + &b - &dt];
            vec![hyper_f(num, vec![o() + &a - &dt, o() + &b - &dt, int(2) - c], o(), v)?]
        }
        (F::QRacah, T::I) => {
            let q = ps.q().unwrap().clone();
            let qp = |k: i64| qpow(&q, k);
            let dt = families::d_tilde(ps)?;
            let (a, b, c, d) = (val(0), val(1), val(2), val(3));
            let num = vec![qp(-vi), qp(vi + 2) / &dt, qp(x + 1), qp(1 - x) / d];
            vec![hyper_phi(num, vec![qp(2) / a, qp(2) / b, qp(2) / c], &q, q.clone(), v)?]
        }
        (F::QRacah, T::II) => {
            let q = ps.q().unwrap().clone();
            let qp = |k: i64| qpow(&q, k);
            let dt = families::d_tilde(ps)?;
            let (a, b, c) = (val(0), val(1), val(2));
            let num = vec![qp(-vi), qp(vi + 2) / &dt, qp(1 - x) / &c, &a * &b / &dt * qp(x)];
            vec![hyper_phi(num, vec![&q * &a / &dt, &q * &b / &dt, qp(2) / c], &q, q.clone(), v)?]
        }
        (F::Hahn, T::I) => {
            let (a, b) = (val(0), val(1));
            vec![hyper_f(vec![nv, int(vi + 3) - &a - b, &xr + o()], vec![int(2) - a, &nr + int(2)], o(), v)?]
        }
        (F::Hahn, T::II) => {
            let (a, b) = (val(0), val(1));
            let num = vec![nv, int(vi + 3) - a - &b, &nr + o() - &xr];
            vec![hyper_f(num, vec![int(2) - b, &nr + int(2)], o(), v)?]
        }
        (F::DualHahn, T::I) => {
            let (a, b) = (val(0), val(1));
            let num = vec![nv, int(2) - &xr - &a - b, &xr + o()];
            vec![hyper_f(num, vec![int(2) - a, &nr + int(2)], o(), v)?]
        }
        (F::DualHahn, T::II) => {
            let (a, b) = (val(0), val(1));
            let num = vec![nv, &xr + a + &b + &nr, &nr + o() - &xr];
            vec![hyper_f(num, vec![&b + &nr + o(), &nr + int(2)], o(), v)?]
        }
        (F::Krawtchouk, T::I) => {
            let p = val(0);
            vec![hyper_f(vec![nv, &xr + o()], vec![&nr + int(2)], checked_div(&o(), &p, "p")?, v)?]
        }
        (F::Krawtchouk, T::II) => {
            let p = val(0);
            let z = checked_div(&o(), &(o() - p), "1 - p")?;
            vec![hyper_f(vec![nv, &nr + o() - &xr], vec![&nr + int(2)], z, v)?]
        }
        (F::Meixner, T::I) => {
            let (beta, c) = (val(0), val(1));
            let z = o() - checked_div(&o(), &c, "c")?;
            vec![hyper_f(vec![nv, &xr + o()], vec![int(2) - beta], z, v)?]
        }
        (F::Charlier, T::I) => {
            let z = checked_div(&o(), &val(0), "a")?;
            vec![hyper_f(vec![nv, &xr + o()], vec![], z, v)?]
        }
        (f, _) if f.is_q() => q_closed_forms(ps, id, v, x)?,
        _ => vec![],
    };
    Ok(forms)
}

fn q_closed_forms(ps: &ParamSet, id: TwistId, v: usize, x: i64) -> Result<Vec<Rational>> {
    let q = ps.q().unwrap().clone();
    let qp = |k: i64| qpow(&q, k);
    let vi = v as i64;
    let n = ps.lattice_n().unwrap_or(0);
    let val = |i: usize| ps.value(i);
    let zero = Rational::zero;
    let phi = |num: Vec<Rational>, den: Vec<Rational>, z: Rational| hyper_phi(num, den, &q, z, v);
    let forms = match (ps.family(), id) {
        (F::QHahn, T::ITilde) => {
            let (a, b) = (val(0), val(1));
            let num = vec![qp(-vi), qp(vi + 3) / (&a * &b), qp(x + 1)];
            vec![phi(num, vec![qp(2) / &a, qp(n + 2)], &b * qp(n - x))?]
        }
        (F::QHahn, T::II) => {
            let (a, b) = (val(0), val(1));
            let num = vec![qp(-vi), qp(vi + 3) / (&a * &b), qp(n + 1 - x)];
            vec![phi(num, vec![qp(2) / &b, qp(n + 2)], q.clone())?]
        }
        (F::DualQHahn, T::ITilde) => {
            let (a, b) = (val(0), val(1));
            let num = vec![qp(-vi), qp(2 - x) / (&a * &b), qp(x + 1)];
            vec![phi(num, vec![qp(2) / &a, qp(n + 2)], &b * qp(vi + n + 1))?]
        }
        (F::DualQHahn, T::IITilde) => {
            let (a, b) = (val(0), val(1));
            let num = vec![qp(-vi), &a * &b * qp(x + n), qp(n + 1 - x)];
            vec![phi(num, vec![&b * qp(n + 1), qp(n + 2)], qp(vi + 2) / &a)?]
        }
        (F::QuantumQKrawtchouk, T::ITilde) => {
            let p = val(0);
            vec![phi(vec![qp(-vi), qp(x + 1)], vec![qp(n + 2)], p * qp(n + 1 - x))?]
        }
        (F::QKrawtchouk, T::ITilde) => {
            let p = val(0);
            let num = vec![qp(-vi), -(qp(vi + 2) / &p), qp(x + 1)];
            vec![phi(num, vec![qp(n + 2)], -(p * qp(n - x - 1)))?]
        }
        (F::QKrawtchouk, T::II) => {
            let p = val(0);
            let num = vec![qp(-vi), -(qp(vi + 2) / &p), qp(n + 1 - x)];
            vec![phi(num, vec![qp(n + 2), zero()], q.clone())?]
        }
        (F::DualQKrawtchouk, T::ITilde) => {
            let c = val(0);
            let num = vec![qp(-vi), qp(n + 1 - x) / &c, qp(x + 1)];
            vec![phi(num, vec![qp(n + 2)], c * qp(vi))?]
        }
        (F::DualQKrawtchouk, T::IITilde) => {
            let c = val(0);
            let num = vec![qp(-vi), &c * qp(x + 1), qp(n + 1 - x)];
            vec![phi(num, vec![qp(n + 2)], qp(vi) / c)?]
        }
        (F::AffineQKrawtchouk, T::ITilde) => {
            let p = val(0);
            let num = vec![qp(-vi), qp(x + 1)];
            vec![phi(num, vec![&q / &p, qp(n + 2)], qp(vi + n + 2 - x) / p)?]
        }
        (F::LittleQJacobi, T::ITilde) => {
            let (a, b) = (val(0), val(1));
            let ab = &a * &b;
            let pre = qpow(&-b.clone(), -vi) * qp(vi * (vi + 1) / 2) * qpoch(&(&q / &a), &q, v)
                / qpoch(&(&q / &b), &q, v);
            let form_a = pre * phi(vec![qp(-vi), qp(vi + 1) / &ab], vec![&q / &a], &b * qp(x + 1))?;
            let form_b = phi(vec![qp(-vi), qp(vi + 1) / &ab, qp(x + 1)], vec![&q / &b, zero()], q.clone())?;
            vec![form_b, form_a]
        }
        (F::QMeixner, T::ITilde) => {
            let (b, c) = (val(0), val(1));
            vec![phi(vec![qp(-vi), qp(x + 1)], vec![&q / &b], -(qp(-x) / (&b * &c)))?]
        }
        (F::LittleQLaguerre, T::ITilde) => {
            let a = val(0);
            let form_a = phi(vec![qp(-vi), qp(x + 1)], vec![zero()], qp(vi + 1) / &a)?;
            let pre = qpow(&-a.clone(), -vi) * qp(vi * (vi + 1) / 2) * qpoch(&(&a * qp(-vi)), &q, v);
            let form_b = pre * phi(vec![qp(-vi)], vec![&q / &a], qp(vi + x + 2) / &a)?;
            vec![form_a, form_b]
        }
        (F::AlSalamCarlitzII, T::ITilde) => {
            let a = val(0);
            vec![phi(vec![qp(-vi), qp(x + 1)], vec![zero()], qp(-x) / a)?]
        }
        (F::QBessel, T::ITilde) => {
            let a = val(0);
            let form_c = phi(vec![qp(-vi), -(qp(vi + 2) / &a), qp(x + 1)], vec![zero(), zero()], q.clone())?;
            let form_a = qp(vi * (x + 1)) * phi(vec![qp(-vi), qp(x + 1)], vec![], -(qp(2 * vi + 1 - x) / &a))?;
            let form_b = qpow(&-a.clone(), -vi)
                * qp(vi * (vi + 2))
                * phi(vec![qp(-vi), -(qp(vi + 2) / &a)], vec![], -(&a * qp(x - 1)))?;
            vec![form_c, form_a, form_b]
        }
        (F::QCharlier, T::ITilde) => {
            let a = val(0);
            vec![phi(vec![qp(-vi), qp(x + 1)], vec![], -(qp(-x - 1) / a))?]
        }
        _ => vec![],
    };
    Ok(forms)
}

/// Tabulated ratio `xi^(b)_v / xi^(a)_v` between two twists of one family.
pub fn tabulated_xi_ratio(ps: &ParamSet, a: TwistId, b: TwistId, v: usize) -> Result<Option<Rational>> {
    let vi = v as i64;
    let o = Rational::one;
    let val = |i: usize| ps.value(i);
    let n = ps.lattice_n().unwrap_or(0);
    let ratio = match (ps.family(), a, b) {
        (F::Racah, T::I, T::II) => {
            let dt = families::d_tilde(ps)?;
            let (aa, bb) = (val(0), val(1));
            let num = poch(&(int(2) - &aa), v) * poch(&(int(2) - &bb), v);
            let den = poch(&(o() + &aa - &dt), v) * poch(&(o() + &bb - &dt), v);
            Some(checked_div(&num, &den, "ratio")?)
        }
        (F::QRacah, T::I, T::II) => {
            let q = ps.q().unwrap();
            let dt = families::d_tilde(ps)?;
            let (aa, bb, cc, dd) = (val(0), val(1), val(2), val(3));
            let q2 = q * q;
            let num = qpow(&dd, vi) * qpoch(&(&q2 / &aa), q, v) * qpoch(&(&q2 / &bb), q, v);
            let den = qpow(&cc, vi) * qpoch(&(q * &aa / &dt), q, v) * qpoch(&(q * &bb / &dt), q, v);
            Some(checked_div(&num, &den, "ratio")?)
        }
        (F::QRacah, T::I, T::ITilde) | (F::QRacah, T::II, T::IITilde) => Some(o()),
        (F::Hahn, T::I, T::II) => {
            let (aa, bb) = (val(0), val(1));
            Some(checked_div(&poch(&(int(2) - aa), v), &poch(&(bb - int(vi + 1)), v), "ratio")?)
        }
        (F::DualHahn, T::I, T::II) => {
            let (aa, bb) = (val(0), val(1));
            Some(checked_div(&poch(&(int(2) - aa), v), &poch(&(bb + int(n + 1)), v), "ratio")?)
        }
        (F::Krawtchouk, T::I, T::II) => {
            let p = val(0);
            Some(qpow(&(o() - checked_div(&o(), &p, "p")?), -vi))
        }
        (F::QHahn, T::ITilde, T::II) => {
            let q = ps.q().unwrap();
            let (aa, bb) = (val(0), val(1));
            let num = qpoch(&(q * q / aa), q, v);
            let den = qpoch(&(bb * qpow(q, -vi - 1)), q, v);
            Some(checked_div(&num, &den, "ratio")?)
        }
        (F::DualQHahn, T::ITilde, T::IITilde) => {
            let q = ps.q().unwrap();
            let (aa, bb) = (val(0), val(1));
            let num = qpoch(&(q * q / aa), q, v);
            let den = qpoch(&(bb * qpow(q, n + 1)), q, v);
            Some(checked_div(&num, &den, "ratio")?)
        }
        (F::QKrawtchouk, T::ITilde, T::II) => {
            let q = ps.q().unwrap();
            Some(qpow(&-val(0), -vi) * qpow(q, vi * (vi + 2)))
        }
        (F::DualQKrawtchouk, T::ITilde, T::IITilde) => Some(qpow(&val(0), -vi)),
        _ => None,
    };
    Ok(ratio)
}

/// Evaluates `xi` of two twists over a grid and compares the measured
/// ratio with the tabulated one, when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct XiRatioReport {
    pub proportional: crate::exact::ProportionalityReport,
    pub tabulated: Option<Rational>,
    pub tabulated_matches: Option<bool>,
}

pub fn check_xi_proportionality(ps: &ParamSet, a: TwistId, b: TwistId, v: usize, grid: &[i64]) -> Result<XiRatioReport> {
    let ta = make_twist(ps, a)?;
    let tb = make_twist(ps, b)?;
    let lhs: Vec<Rational> = grid.iter().map(|&x| tb.xi(v, x)).collect::<Result<_>>()?;
    let rhs: Vec<Rational> = grid.iter().map(|&x| ta.xi(v, x)).collect::<Result<_>>()?;
    let proportional = crate::exact::fit_proportionality(&lhs, &rhs)?;
    let tabulated = tabulated_xi_ratio(ps, a, b, v)?;
    let tabulated_matches = tabulated.as_ref().map(|p| proportional.ratio.as_ref() == Some(p));
    Ok(XiRatioReport { proportional, tabulated, tabulated_matches })
}

/// `alpha_a B'_a = alpha_b B'_b` and `alpha_a D'_a = alpha_b D'_b` on a grid:
/// two twists of one family giving the same scaled potentials.
pub fn check_potential_relation(ps: &ParamSet, a: TwistId, b: TwistId, grid: &[i64]) -> Result<bool> {
    let ta = make_twist(ps, a)?;
    let tb = make_twist(ps, b)?;
    for &x in grid {
        if &ta.alpha * ta.b_prime(x)? != &tb.alpha * tb.b_prime(x)? {
            return Ok(false);
        }
        if &ta.alpha * ta.d_prime(x)? != &tb.alpha * tb.d_prime(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
