//! Parameter sets `lambda` (plus `q` for the q-families).

use super::{data, FamilyId};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, qpow, rat, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// How one component `lambda_j` is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    /// Classical parameter, stored as `lambda_j` itself.
    Add,
    /// q-family parameter, stored as `q^lambda_j`.
    Mult,
    /// Lattice-size slot `lambda_j = sign * N`. Classical families use it as
    /// is; q-families use `q^lambda_j`.
    Lattice { sign: i64 },
}

/// Stored value of one parameter component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Add(Rational),
    Mult(Rational),
    /// Integer exponent `lambda_j` of a lattice slot.
    Exp(i64),
}

/// A family together with a concrete parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    family: FamilyId,
    q: Option<Rational>,
    slots: Vec<Slot>,
}

impl ParamSet {
    /// Raw constructor. Slots must match the family layout.
    pub fn new(family: FamilyId, q: Option<Rational>, slots: Vec<Slot>) -> Result<Self> {
        let layout = data::get(family).slots();
        if slots.len() != layout.len() {
            return Err(Error::InvalidParameters(format!(
                "{} expects {} parameters, got {}",
                family.name(),
                layout.len(),
                slots.len()
            )));
        }
        for ((name, kind), slot) in layout.iter().zip(&slots) {
            let ok = match (kind, slot) {
                (SlotKind::Add, Slot::Add(_)) => true,
                (SlotKind::Mult, Slot::Mult(v)) => !v.is_zero(),
                (SlotKind::Lattice { .. }, Slot::Exp(_)) => family.is_q(),
                (SlotKind::Lattice { .. }, Slot::Add(v)) => !family.is_q() && v.is_integer(),
                _ => false,
            };
            if !ok {
                return Err(Error::InvalidParameters(format!("bad value for parameter {name} of {}", family.name())));
            }
        }
        match (&q, family.is_q()) {
            (Some(qv), true) => {
                if *qv <= Rational::zero() || *qv == Rational::one() {
                    return Err(Error::InvalidParameters(format!("q must be positive and not 1, got {qv}")));
                }
            }
            (None, false) => {}
            (Some(_), false) => return Err(Error::InvalidParameters(format!("{} takes no q", family.name()))),
            (None, true) => return Err(Error::InvalidParameters(format!("{} needs q", family.name()))),
        }
        Ok(ParamSet { family, q, slots })
    }

    /// Skips value validation; used for exact endpoints of limit paths
    /// (such as `b = 0`) where only the polynomial is evaluated.
    pub(crate) fn new_unchecked(family: FamilyId, q: Option<Rational>, slots: Vec<Slot>) -> Self {
        ParamSet { family, q, slots }
    }

    /// Builds a parameter set from named values; the lattice slot, if any,
    /// comes from `n`.
    pub fn from_named(family: FamilyId, named: &BTreeMap<String, Rational>, n: Option<i64>) -> Result<Self> {
        let layout = data::get(family).slots();
        let q = if family.is_q() {
            Some(named.get("q").cloned().ok_or_else(|| Error::InvalidParameters("missing parameter q".into()))?)
        } else {
            None
        };
        let mut used = 0;
        let mut slots = Vec::new();
        for (name, kind) in layout {
            let slot = match kind {
                SlotKind::Lattice { sign } => {
                    let n = n.ok_or_else(|| Error::InvalidParameters(format!("{} needs N", family.name())))?;
                    if n < 1 {
                        return Err(Error::InvalidParameters(format!("N must be positive, got {n}")));
                    }
                    if named.contains_key(*name) {
                        return Err(Error::InvalidParameters(format!(
                            "parameter {name} of {} is fixed by N; pass N instead",
                            family.name()
                        )));
                    }
                    if family.is_q() {
                        Slot::Exp(sign * n)
                    } else {
                        Slot::Add(int(sign * n))
                    }
                }
                _ => {
                    let v = named
                        .get(*name)
                        .cloned()
                        .ok_or_else(|| Error::InvalidParameters(format!("missing parameter {name}")))?;
                    used += 1;
                    if *kind == SlotKind::Mult {
                        Slot::Mult(v)
                    } else {
                        Slot::Add(v)
                    }
                }
            };
            slots.push(slot);
        }
        let expected = used + usize::from(family.is_q());
        if named.len() != expected {
            let known: Vec<&str> = layout.iter().map(|(n, _)| *n).collect();
            return Err(Error::InvalidParameters(format!(
                "unexpected parameter for {}; known: q, {}",
                family.name(),
                known.join(", ")
            )));
        }
        if family.is_finite() && n.is_none() {
            return Err(Error::InvalidParameters(format!("{} needs N", family.name())));
        }
        ParamSet::new(family, q, slots)
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn q(&self) -> Option<&Rational> {
        self.q.as_ref()
    }

    /// Base `q`; only call for q-families.
    pub(crate) fn qv(&self) -> &Rational {
        self.q.as_ref().expect("q-family parameter set without q")
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// The number the formulas use for slot `i`: `lambda_i` for classical
    /// slots, `q^lambda_i` for q-family slots.
    pub fn value(&self, i: usize) -> Rational {
        match &self.slots[i] {
            Slot::Add(v) | Slot::Mult(v) => v.clone(),
            Slot::Exp(k) => qpow(self.qv(), *k),
        }
    }

    /// Lattice size `N` for finite families.
    pub fn lattice_n(&self) -> Option<i64> {
        let layout = data::get(self.family).slots();
        layout.iter().zip(&self.slots).find_map(|((_, kind), slot)| match (kind, slot) {
            (SlotKind::Lattice { sign }, Slot::Exp(k)) => Some(k * sign),
            (SlotKind::Lattice { sign }, Slot::Add(v)) => Some(v.to_integer().try_into().unwrap_or(i64::MAX) * sign),
            _ => None,
        })
    }

    /// `lambda + k delta`.
    pub fn shifted(&self, k: i64) -> ParamSet {
        let delta = self.family.delta();
        let slots = self
            .slots
            .iter()
            .zip(delta)
            .map(|(s, &dj)| match s {
                Slot::Add(v) => Slot::Add(v + int(k * dj)),
                Slot::Mult(v) => Slot::Mult(v * qpow(self.qv(), k * dj)),
                Slot::Exp(e) => Slot::Exp(e + k * dj),
            })
            .collect();
        ParamSet { family: self.family, q: self.q.clone(), slots }
    }

    /// Replaces the value of a non-lattice slot by name.
    pub fn with_value(&self, name: &str, v: Rational) -> Result<ParamSet> {
        let layout = data::get(self.family).slots();
        let i = layout
            .iter()
            .position(|(n, _)| *n == name)
            .ok_or_else(|| Error::InvalidParameters(format!("no parameter {name}")))?;
        let mut slots = self.slots.clone();
        slots[i] = match layout[i].1 {
            SlotKind::Add => Slot::Add(v),
            SlotKind::Mult => Slot::Mult(v),
            SlotKind::Lattice { .. } => return Err(Error::InvalidParameters("use with_lattice_n".into())),
        };
        ParamSet::new(self.family, self.q.clone(), slots)
    }

    /// Replaces `N`.
    pub fn with_lattice_n(&self, n: i64) -> Result<ParamSet> {
        let layout = data::get(self.family).slots();
        let mut slots = self.slots.clone();
        for ((_, kind), slot) in layout.iter().zip(slots.iter_mut()) {
            if let SlotKind::Lattice { sign } = kind {
                *slot = if self.family.is_q() { Slot::Exp(sign * n) } else { Slot::Add(int(sign * n)) };
            }
        }
        ParamSet::new(self.family, self.q.clone(), slots)
    }

    /// `q`, the free named values and `N`, in the form accepted by
    /// [`ParamSet::from_named`].
    pub fn named(&self) -> Vec<(String, Rational)> {
        let layout = data::get(self.family).slots();
        let mut out = Vec::new();
        if let Some(q) = &self.q {
            out.push(("q".to_string(), q.clone()));
        }
        for (i, (name, kind)) in layout.iter().enumerate() {
            if !matches!(kind, SlotKind::Lattice { .. }) {
                out.push((name.to_string(), self.value(i)));
            }
        }
        if let Some(n) = self.lattice_n() {
            out.push(("N".to_string(), int(n)));
        }
        out
    }

    /// The documented default point of each family. All positivity
    /// constraints hold and no series in the identity engine meets a pole.
    pub fn safe(family: FamilyId) -> ParamSet {
        ParamSet::samples(family).remove(0)
    }

    /// Three parameter points per family; the first is [`ParamSet::safe`].
    pub fn samples(family: FamilyId) -> Vec<ParamSet> {
        let r = |n: i64, d: i64| rat(n, d).unwrap();
        let q = || Some(r(1, 2));
        let mk = |qv: Option<Rational>, slots: Vec<Slot>| ParamSet::new(family, qv, slots).unwrap();
        let add = Slot::Add;
        let mul = Slot::Mult;
        match family {
            FamilyId::Racah => vec![
                mk(None, vec![add(r(13, 2)), add(r(1, 3)), add(int(-5)), add(r(2, 5))]),
                mk(None, vec![add(r(29, 4)), add(r(3, 7)), add(int(-6)), add(r(5, 9))]),
                mk(None, vec![add(r(11, 2)), add(r(2, 3)), add(int(-4)), add(r(3, 4))]),
            ],
            FamilyId::QRacah => vec![
                mk(q(), vec![mul(r(1, 5000)), mul(r(1, 3)), Slot::Exp(-5), mul(r(2, 9))]),
                mk(q(), vec![mul(r(1, 3000)), mul(r(1, 3)), Slot::Exp(-5), mul(r(1, 5))]),
                mk(Some(r(1, 3)), vec![mul(r(1, 3000)), mul(r(1, 5)), Slot::Exp(-4), mul(r(1, 11))]),
            ],
            FamilyId::Hahn => vec![
                mk(None, vec![add(r(3, 2)), add(r(5, 4)), add(int(4))]),
                mk(None, vec![add(r(7, 3)), add(r(2, 5)), add(int(5))]),
                mk(None, vec![add(r(1, 2)), add(r(9, 7)), add(int(3))]),
            ],
            FamilyId::DualHahn => vec![
                mk(None, vec![add(r(3, 2)), add(r(5, 4)), add(int(4))]),
                mk(None, vec![add(r(7, 3)), add(r(2, 5)), add(int(5))]),
                mk(None, vec![add(r(1, 2)), add(r(9, 7)), add(int(3))]),
            ],
            FamilyId::Krawtchouk => vec![
                mk(None, vec![add(r(1, 3)), add(int(4))]),
                mk(None, vec![add(r(3, 5)), add(int(5))]),
                mk(None, vec![add(r(2, 7)), add(int(3))]),
            ],
            FamilyId::QHahn => vec![
                mk(q(), vec![mul(r(1, 3)), mul(r(1, 5)), Slot::Exp(4)]),
                mk(q(), vec![mul(r(2, 7)), mul(r(3, 5)), Slot::Exp(5)]),
                mk(Some(r(1, 3)), vec![mul(r(3, 4)), mul(r(1, 7)), Slot::Exp(3)]),
            ],
            FamilyId::DualQHahn => vec![
                mk(q(), vec![mul(r(1, 3)), mul(r(1, 5)), Slot::Exp(4)]),
                mk(q(), vec![mul(r(2, 7)), mul(r(3, 5)), Slot::Exp(5)]),
                mk(Some(r(1, 3)), vec![mul(r(3, 4)), mul(r(1, 7)), Slot::Exp(3)]),
            ],
            FamilyId::QuantumQKrawtchouk => vec![
                mk(q(), vec![mul(int(20)), Slot::Exp(4)]),
                mk(q(), vec![mul(int(40)), Slot::Exp(5)]),
                mk(Some(r(1, 3)), vec![mul(int(30)), Slot::Exp(3)]),
            ],
            FamilyId::QKrawtchouk => vec![
                mk(q(), vec![mul(r(1, 3)), Slot::Exp(4)]),
                mk(q(), vec![mul(r(5, 2)), Slot::Exp(5)]),
                mk(Some(r(1, 3)), vec![mul(r(2, 7)), Slot::Exp(3)]),
            ],
            FamilyId::DualQKrawtchouk => vec![
                mk(q(), vec![mul(r(-1, 3)), Slot::Exp(4)]),
                mk(q(), vec![mul(r(-5, 2)), Slot::Exp(5)]),
                mk(Some(r(1, 3)), vec![mul(r(-2, 7)), Slot::Exp(3)]),
            ],
            FamilyId::AffineQKrawtchouk => vec![
                mk(q(), vec![mul(r(1, 3)), Slot::Exp(4)]),
                mk(q(), vec![mul(r(6, 5)), Slot::Exp(5)]),
                mk(Some(r(1, 3)), vec![mul(r(2, 7)), Slot::Exp(3)]),
            ],
            FamilyId::Meixner => vec![
                mk(None, vec![add(r(3, 2)), add(r(1, 3))]),
                mk(None, vec![add(r(5, 7)), add(r(3, 5))]),
                mk(None, vec![add(r(9, 4)), add(r(1, 6))]),
            ],
            FamilyId::Charlier => vec![
                mk(None, vec![add(r(3, 2))]),
                mk(None, vec![add(r(2, 7))]),
                mk(None, vec![add(r(11, 3))]),
            ],
            FamilyId::LittleQJacobi => vec![
                mk(q(), vec![mul(r(1, 3)), mul(r(1, 5))]),
                mk(q(), vec![mul(r(3, 7)), mul(r(2, 3))]),
                mk(Some(r(1, 3)), vec![mul(r(5, 4)), mul(r(1, 7))]),
            ],
            FamilyId::QMeixner => vec![
                mk(q(), vec![mul(r(1, 3)), mul(r(1, 5))]),
                mk(q(), vec![mul(r(3, 7)), mul(r(7, 2))]),
                mk(Some(r(1, 3)), vec![mul(r(5, 4)), mul(r(2, 9))]),
            ],
            FamilyId::LittleQLaguerre => vec![
                mk(q(), vec![mul(r(1, 3))]),
                mk(q(), vec![mul(r(9, 5))]),
                mk(Some(r(1, 3)), vec![mul(r(2, 7))]),
            ],
            FamilyId::AlSalamCarlitzII => vec![
                mk(q(), vec![mul(r(1, 3))]),
                mk(q(), vec![mul(r(5, 7))]),
                mk(Some(r(1, 3)), vec![mul(r(1, 5))]),
            ],
            FamilyId::QBessel => vec![
                mk(q(), vec![mul(r(1, 3))]),
                mk(q(), vec![mul(r(7, 3))]),
                mk(Some(r(1, 3)), vec![mul(r(2, 5))]),
            ],
            FamilyId::QCharlier => vec![
                mk(q(), vec![mul(r(1, 3))]),
                mk(q(), vec![mul(r(7, 3))]),
                mk(Some(r(1, 3)), vec![mul(r(2, 5))]),
            ],
        }
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.named().iter().map(|(k, v)| format!("{k}={}", format_rational(v))).collect();
        write!(f, "{}[{}]", self.family.token(), parts.join(","))
    }
}
