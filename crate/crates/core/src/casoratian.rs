//! Casoratian identities between pseudo virtual state polynomials and
//! eigenpolynomials.
//!
//! For `D = {d_1 < ... < d_M}` and `calN >= max D`, put
//! `Dbar = {0..calN} \ {calN - d_j} = {e_1 < ... < e_Nbar}`,
//! `Nbar = calN + 1 - M` and `lambdabar = lambda - (calN + 1) delta`. Then
//!
//! ```text
//! phi_M(x-M; lambda)^-1 W[xi_d1 .. xi_dM](x-M; lambda)
//!     = A * phi_Nbar(x; lambdabar)^-1 W[P_e1 .. P_eNbar](x; lambdabar)
//! ```
//!
//! with `W[f](x) = det(f_k(x+j-1))` and
//! `phi_M(x) = prod_{j<k} (eta(x+k-1) - eta(x+j-1)) / eta(k-j)`.

use crate::error::{Error, Result};
use crate::exact::{checked_div, determinant, fit_proportionality, qpow, ProportionalityReport, ProportionalityStatus, Rational};
use crate::families::{self, FamilyId, ParamSet};
use crate::qseries::{qpoch, qpoch_many};
use crate::twists::{make_twist, Twist, TwistId};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Casoratian `det(f_k(x + j))`, `j, k = 0..n-1`. The empty Casoratian is 1.
pub fn casoratian<F>(fs: &[F], x: i64) -> Result<Rational>
where
    F: Fn(i64) -> Result<Rational>,
{
    let n = fs.len();
    let mut m = Vec::with_capacity(n);
    for j in 0..n {
        let row: Vec<Rational> = fs.iter().map(|f| f(x + j as i64)).collect::<Result<_>>()?;
        m.push(row);
    }
    determinant(m)
}

/// Casoratian of already tabulated columns: `cols[k][j] = f_k(x + j)`.
pub fn casoratian_of_columns(cols: &[Vec<Rational>]) -> Result<Rational> {
    let n = cols.len();
    let m: Vec<Vec<Rational>> = (0..n).map(|j| (0..n).map(|k| cols[k][j].clone()).collect()).collect();
    determinant(m)
}

/// `phi_M(x)`; equals 1 for `M = 0, 1`.
pub fn varphi_m(ps: &ParamSet, m: usize, x: i64) -> Result<Rational> {
    let mut r = Rational::one();
    for k in 1..=m as i64 {
        for j in 1..k {
            let num = families::eta(ps, x + k - 1)? - families::eta(ps, x + j - 1)?;
            r *= checked_div(&num, &families::eta(ps, k - j)?, "eta(k-j) = 0")?;
        }
    }
    Ok(r)
}

/// The index data of one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    /// `d_1 < ... < d_M`.
    pub d: Vec<usize>,
    pub caln: usize,
    /// `e_1 < ... < e_Nbar`.
    pub dbar: Vec<usize>,
}

impl IndexSets {
    pub fn m(&self) -> usize {
        self.d.len()
    }

    pub fn nbar(&self) -> usize {
        self.dbar.len()
    }

    /// `lambda - (calN + 1) delta`.
    pub fn lambda_bar(&self, ps: &ParamSet) -> ParamSet {
        ps.shifted(-(self.caln as i64 + 1))
    }

    /// `L = sum d + sum e + M + Nbar + 2`; the grid holds `2L + 2` points.
    pub fn degree_bound(&self) -> usize {
        self.d.iter().sum::<usize>() + self.dbar.iter().sum::<usize>() + self.m() + self.nbar() + 2
    }
}

/// Canonical index sets: `D` sorted, `Dbar` derived.
pub fn build_index_sets(d: &[usize], caln: usize) -> Result<IndexSets> {
    if d.is_empty() {
        return Err(Error::InvalidInput("D must be nonempty".into()));
    }
    let mut d = d.to_vec();
    d.sort_unstable();
    if d.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("D has repeated entries".into()));
    }
    if *d.last().unwrap() > caln {
        return Err(Error::InvalidInput(format!("calN = {caln} is below max D = {}", d.last().unwrap())));
    }
    let removed: Vec<usize> = d.iter().map(|dj| caln - dj).collect();
    let dbar = (0..=caln).filter(|e| !removed.contains(e)).collect();
    Ok(IndexSets { d, caln, dbar })
}

/// A verified (or refuted) identity instance.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub family: FamilyId,
    pub twist: TwistId,
    pub index_sets: IndexSets,
    pub report: ProportionalityReport,
    pub grid: Vec<i64>,
    /// Points dropped because `phi` vanished or a value hit a pole.
    pub skipped: Vec<i64>,
}

/// Left and right sides at one lattice point; `Ok(None)` when a `phi`
/// factor vanishes, `Err` when some value hits a pole.
fn sides(
    tw: &Twist,
    lambda_bar: &ParamSet,
    idx: &IndexSets,
    x: i64,
    xi_cache: &mut HashMap<(usize, i64), Result<Rational>>,
    p_cache: &mut HashMap<(usize, i64), Result<Rational>>,
) -> Result<Option<(Rational, Rational)>> {
    let m = idx.m() as i64;
    let phi_l = varphi_m(&tw.original, idx.m(), x - m)?;
    let phi_r = varphi_m(lambda_bar, idx.nbar(), x)?;
    if phi_l.is_zero() || phi_r.is_zero() {
        return Ok(None);
    }
    let mut left_cols = Vec::new();
    for &dj in &idx.d {
        let mut col = Vec::new();
        for j in 0..m {
            let y = x - m + j;
            let v = xi_cache.entry((dj, y)).or_insert_with(|| tw.xi(dj, y)).clone()?;
            col.push(v);
        }
        left_cols.push(col);
    }
    let mut right_cols = Vec::new();
    for &e in &idx.dbar {
        let mut col = Vec::new();
        for j in 0..idx.nbar() as i64 {
            let y = x + j;
            let v = p_cache
                .entry((e, y))
                .or_insert_with(|| families::eval_polynomial(lambda_bar, e, y))
                .clone()?;
            col.push(v);
        }
        right_cols.push(col);
    }
    let lhs = casoratian_of_columns(&left_cols)? / phi_l;
    let rhs = casoratian_of_columns(&right_cols)? / phi_r;
    Ok(Some((lhs, rhs)))
}

/// Evaluates both sides on a grid of `2L + 2` usable points starting at
/// `x = -M - 1` and fits an exact ratio.
pub fn verify_identity(ps: &ParamSet, twist: TwistId, idx: &IndexSets) -> Result<IdentityOutcome> {
    let tw = make_twist(ps, twist)?;
    verify_identity_with(&tw, idx)
}

/// [`verify_identity`] for an already instantiated twist.
pub fn verify_identity_with(tw: &Twist, idx: &IndexSets) -> Result<IdentityOutcome> {
    if tw.id().is_level_shift() {
        return Err(Error::InvalidInput("level-shift twists do not enter the identity".into()));
    }
    let ps = &tw.original;
    for &dj in &idx.d {
        if seed_degree_collapsed(tw, dj)? {
            return Err(Error::DegenerateInstance(format!(
                "{} twist {}: xi_{dj} has degree below {dj} in eta at this point",
                ps.family().name(),
                tw.descriptor.label()
            )));
        }
    }
    let lambda_bar = idx.lambda_bar(ps);
    let needed = 2 * idx.degree_bound() + 2;
    let mut xi_cache = HashMap::new();
    let mut p_cache = HashMap::new();
    let mut grid = Vec::new();
    let mut skipped = Vec::new();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut last_error = None;
    let mut x = -(idx.m() as i64) - 1;
    while grid.len() < needed {
        if skipped.len() > needed + 64 {
            // A pole that persists across the whole scan is a property of the
            // parameter point, not of the grid.
            return Err(last_error.unwrap_or_else(|| {
                Error::DegenerateInstance(format!(
                    "{} points skipped before collecting {needed} usable grid points",
                    skipped.len()
                ))
            }));
        }
        match sides(tw, &lambda_bar, idx, x, &mut xi_cache, &mut p_cache) {
            Ok(Some((l, r))) => {
                grid.push(x);
                lhs.push(l);
                rhs.push(r);
            }
            Ok(None) => skipped.push(x),
            Err(e) => {
                skipped.push(x);
                last_error = Some(e);
            }
        }
        x += 1;
    }
    let report = fit_proportionality(&lhs, &rhs)?;
    let label = format!(
        "{} twist {} D={:?} calN={}",
        ps.family().name(),
        tw.descriptor.label(),
        idx.d,
        idx.caln
    );
    match report.status {
        ProportionalityStatus::Proportional => Ok(IdentityOutcome {
            family: ps.family(),
            twist: tw.id(),
            index_sets: idx.clone(),
            report,
            grid,
            skipped,
        }),
        ProportionalityStatus::BothZero => Err(Error::DegenerateInstance(format!("{label}: both sides vanish"))),
        ProportionalityStatus::Mismatch => {
            let at = report.first_mismatch.map(|i| grid[i]).unwrap_or_default();
            Err(Error::IdentityFalsified(format!("{label}: sides not proportional at x = {at}")))
        }
    }
}

/// True when the top Newton coefficient of `xi_v` over `eta(0..=v)`
/// vanishes, i.e. the seed degenerates to lower degree. Poles at the nodes
/// are left for the grid scan to report.
fn seed_degree_collapsed(tw: &Twist, v: usize) -> Result<bool> {
    let ps = &tw.original;
    let mut nodes = Vec::with_capacity(v + 1);
    let mut table = Vec::with_capacity(v + 1);
    for x in 0..=v as i64 {
        match (families::eta(ps, x), tw.xi(v, x)) {
            (Ok(e), Ok(f)) => {
                nodes.push(e);
                table.push(f);
            }
            _ => return Ok(false),
        }
    }
    for level in 1..=v {
        for i in (level..=v).rev() {
            let step = &nodes[i] - &nodes[i - level];
            table[i] = checked_div(&(&table[i] - &table[i - 1]), &step, "coincident eta nodes")?;
        }
    }
    Ok(table[v].is_zero())
}

/// Leading coefficient of `P_n` in `eta` for qR:
/// `c_n = (d~ q^n; q)_n / (a, b, c; q)_n`.
pub fn leading_coefficient_cn(ps: &ParamSet, n: usize) -> Result<Rational> {
    if ps.family() != FamilyId::QRacah {
        return Err(Error::InvalidInput("leading_coefficient_cn is defined for qR".into()));
    }
    let q = ps.q().unwrap();
    let dt = families::d_tilde(ps)?;
    let num = qpoch(&(dt * qpow(q, n as i64)), q, n);
    let den = qpoch_many(&[ps.value(0), ps.value(1), ps.value(2)], q, n);
    checked_div(&num, &den, "(a,b,c;q)_n = 0")
}

/// Closed form of the proportionality constant for qR with twist (i).
pub fn qracah_constant_a(ps: &ParamSet, idx: &IndexSets) -> Result<Rational> {
    if ps.family() != FamilyId::QRacah {
        return Err(Error::InvalidInput("the closed-form constant is defined for qR".into()));
    }
    let q = ps.q().unwrap();
    let one = Rational::one();
    let d = ps.value(3);
    let m = idx.m() as i64;
    let nbar = idx.nbar() as i64;
    let twisted = make_twist(ps, TwistId::I)?.twisted;
    let lambda_bar = idx.lambda_bar(ps);

    let mut a = Rational::one();
    for &dj in &idx.d {
        a *= leading_coefficient_cn(&twisted, dj)?;
    }
    for &e in &idx.dbar {
        a = checked_div(&a, &leading_coefficient_cn(&lambda_bar, e)?, "c_e = 0")?;
    }
    for j in 0..idx.d.len() {
        for i in 0..j {
            a *= &one - qpow(q, (idx.d[j] - idx.d[i]) as i64);
        }
    }
    for j in 0..idx.dbar.len() {
        for i in 0..j {
            a = checked_div(&a, &(&one - qpow(q, (idx.dbar[j] - idx.dbar[i]) as i64)), "1 - q^k = 0")?;
        }
    }
    for i in 1..=m {
        a *= qpow(&(&one - &d * qpow(q, i)), m - i);
    }
    for i in 1..=nbar {
        a = checked_div(&a, &qpow(&(&one - &d * qpow(q, -nbar - m + i)), nbar - i), "1 - d q^k = 0")?;
    }
    let sum_d: i64 = idx.d.iter().map(|&v| v as i64).sum();
    a *= qpow(&d, -sum_d);
    let mut e = 0i64;
    for (j, &dj) in idx.d.iter().enumerate() {
        e += (m - j as i64) * dj as i64;
    }
    for (j, &ej) in idx.dbar.iter().enumerate() {
        e += (j as i64 + 1) * ej as i64;
    }
    e -= m * (m - 1) * (2 * m - 1) / 6;
    e -= (nbar - 1) * nbar * (nbar + 1) / 6;
    Ok(a * qpow(q, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn index_sets_example() {
        let idx = build_index_sets(&[2, 1], 3).unwrap();
        assert_eq!(idx.d, vec![1, 2]);
        assert_eq!(idx.dbar, vec![0, 3]);
        assert_eq!(idx.nbar(), 2);
        assert!(build_index_sets(&[1, 1], 3).is_err());
        assert!(build_index_sets(&[4], 3).is_err());
        assert!(build_index_sets(&[], 3).is_err());
    }

    #[test]
    fn empty_casoratian_is_one() {
        let fs: Vec<fn(i64) -> Result<Rational>> = vec![];
        assert_eq!(casoratian(&fs, 3).unwrap(), int(1));
    }

    #[test]
    fn casoratian_of_monomials() {
        // W[1, x](x) = 1, W[1, x, x^2](x) = 2.
        let fs: Vec<Box<dyn Fn(i64) -> Result<Rational>>> =
            vec![Box::new(|_| Ok(int(1))), Box::new(|x| Ok(int(x))), Box::new(|x| Ok(int(x * x)))];
        assert_eq!(casoratian(&fs[..2], 5).unwrap(), int(1));
        assert_eq!(casoratian(&fs, -4).unwrap(), int(2));
    }

    #[test]
    fn varphi_trivial_orders() {
        let ps = ParamSet::safe(FamilyId::QRacah);
        assert_eq!(varphi_m(&ps, 0, 3).unwrap(), int(1));
        assert_eq!(varphi_m(&ps, 1, 3).unwrap(), int(1));
    }
}
