//! Independent checks that make up the reports. Every job is pure, so the
//! suite can run them on a worker pool.

use crate::config::params_string;
use crate::report::{IndexSetsEcho, Record, Status};
use rdqm::casoratian::{build_index_sets, qracah_constant_a, verify_identity, IndexSets};
use rdqm::darboux::{
    build_deformed, deformed_spectrum_measure, eigenstate_deletion_special_case, pseudo_virtual_vector_defect,
    validate_parameter_range,
};
use rdqm::error::{Error, Result};
use rdqm::exact::{format_rational, qpow, rat, BigFloat, ProportionalityStatus, Rational};
use rdqm::families::limits::{limit_relation_check, LimitEdge};
use rdqm::families::{
    check_difference_equation, check_family_axioms, check_q_inversion, check_reflection_symmetry, energy,
    eval_polynomial, orthogonality_check, FamilyId, ParamSet,
};
use rdqm::qseries::{qpoch, qpoch_inverse_base_identity_check};
use rdqm::twists::{check_xi_proportionality, make_twist, twists_for, virtual_twists_for, TwistId};
use serde_json::{json, Map, Value};
use std::time::Instant;

/// What a finished check reports besides its verdict.
#[derive(Default)]
pub struct Check {
    pub passed: bool,
    pub ratio: Option<Rational>,
    pub skipped: Vec<i64>,
    pub details: Map<String, Value>,
}

impl Check {
    fn verdict(passed: bool) -> Check {
        Check { passed, ..Check::default() }
    }

    fn with(mut self, key: &str, v: impl Into<Value>) -> Check {
        self.details.insert(key.into(), v.into());
        self
    }
}

type Runner = Box<dyn Fn() -> Result<Check> + Send + Sync>;

pub struct Job {
    pub id: String,
    pub kind: &'static str,
    pub family: FamilyId,
    pub twist: Option<TwistId>,
    pub index_sets: Option<IndexSets>,
    pub params: ParamSet,
    run: Runner,
}

/// Errors that describe the parameter point rather than the identity.
fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::DegenerateInstance(_) | Error::PoleInSeries { .. } | Error::EvaluationPole(_) | Error::DivisionByZero
    )
}

impl Job {
    /// Runs the check. With `strict`, degenerate outcomes count as failures.
    pub fn execute(&self, strict: bool) -> Record {
        let start = Instant::now();
        let outcome = (self.run)();
        let duration_ms = start.elapsed().as_millis() as u64;
        let mut details = Map::new();
        details.insert("params".into(), params_string(&self.params).into());
        details.insert("n".into(), self.params.lattice_n().map_or(Value::Null, Value::from));
        let (status, ratio, skipped) = match outcome {
            Ok(c) => {
                details.extend(c.details);
                let status = if c.passed { Status::Pass } else { Status::Fail };
                (status, c.ratio.as_ref().map(format_rational), c.skipped)
            }
            Err(e) => {
                details.insert("error".into(), e.kind().into());
                details.insert("message".into(), e.to_string().into());
                let status = if is_degenerate(&e) && !strict { Status::Degenerate } else { Status::Fail };
                (status, None, Vec::new())
            }
        };
        Record {
            id: self.id.clone(),
            kind: self.kind.to_string(),
            family: self.family.token().to_string(),
            twist: self.twist.map(|t| t.token().to_string()),
            index_sets: self.index_sets.as_ref().map(IndexSetsEcho::from),
            status,
            ratio,
            skipped_points: skipped,
            duration_ms,
            details: Value::Object(details),
        }
    }
}

fn job(kind: &'static str, id: String, ps: &ParamSet, twist: Option<TwistId>, run: Runner) -> Job {
    Job { id, kind, family: ps.family(), twist, index_sets: None, params: ps.clone(), run }
}

fn point_id(ps: &ParamSet) -> String {
    format!("{}[{}]", ps.family().token(), params_string(ps)) + &ps.lattice_n().map_or(String::new(), |n| format!("N={n}"))
}

fn bf(x: &BigFloat) -> String {
    format!("{:.3e}", x.to_f64())
}

/// `verify_identity`, plus the closed-form constant for qR with twist (i).
pub fn identity(ps: &ParamSet, twist: TwistId, idx: &IndexSets) -> Job {
    let d: Vec<String> = idx.d.iter().map(|v| v.to_string()).collect();
    let id = format!("identity/{}/{}/D={}/calN={}", point_id(ps), twist.token(), d.join(","), idx.caln);
    let (p, i) = (ps.clone(), idx.clone());
    let mut j = job(
        "identity",
        id,
        ps,
        Some(twist),
        Box::new(move || {
            let out = verify_identity(&p, twist, &i)?;
            let bound = 2 * i.degree_bound() + 2;
            let mut check = Check {
                passed: out.report.status == ProportionalityStatus::Proportional && out.grid.len() >= bound,
                ratio: out.report.ratio.clone(),
                skipped: out.skipped.clone(),
                details: Map::new(),
            }
            .with("grid_points", out.grid.len())
            .with("degree_bound", bound);
            if p.family() == FamilyId::QRacah && twist == TwistId::I {
                let a = qracah_constant_a(&p, &i)?;
                check.passed &= out.report.ratio.as_ref() == Some(&a);
                check = check.with("closed_form_a", format_rational(&a));
            }
            Ok(check)
        }),
    );
    j.index_sets = Some(idx.clone());
    j
}

/// Pseudo energies of one twist for `v = 0..=4`.
pub fn pseudo_energy(ps: &ParamSet, twist: TwistId) -> Job {
    let p = ps.clone();
    job(
        "pseudo-energy",
        format!("pseudo-energy/{}/{}", point_id(ps), twist.token()),
        ps,
        Some(twist),
        Box::new(move || {
            let tw = make_twist(&p, twist)?;
            let mut ok = true;
            for v in 0..=4i64 {
                let want = if twist.is_level_shift() {
                    energy(&p, v + p.lattice_n().unwrap_or(0) + 1)?
                } else {
                    energy(&p, -v - 1)?
                };
                ok &= tw.pseudo_energy(v)? == want;
            }
            Ok(Check::verdict(ok).with("alpha", format_rational(&tw.alpha)).with("alpha_prime", format_rational(&tw.alpha_prime)))
        }),
    )
}

/// Proportionality of `xi_v` between two twists for `v = 0..=3`, against
/// the tabulated constant where one exists.
pub fn twist_ratio(ps: &ParamSet, a: TwistId, b: TwistId) -> Job {
    let p = ps.clone();
    job(
        "twist-ratio",
        format!("twist-ratio/{}/{}:{}", point_id(ps), a.token(), b.token()),
        ps,
        Some(a),
        Box::new(move || {
            let grid: Vec<i64> = (-3..=p.lattice_n().unwrap_or(6) + 3).collect();
            let mut ok = true;
            let mut ratios = Vec::new();
            for v in 0..=3 {
                let rep = check_xi_proportionality(&p, a, b, v, &grid)?;
                ok &= rep.proportional.status == ProportionalityStatus::Proportional && rep.tabulated_matches != Some(false);
                ratios.push(json!({
                    "v": v,
                    "measured": rep.proportional.ratio.as_ref().map(format_rational),
                    "tabulated": rep.tabulated.as_ref().map(format_rational),
                }));
            }
            Ok(Check::verdict(ok).with("against", b.token()).with("ratios", ratios))
        }),
    )
}

/// Family axioms, the difference equation off the lattice and
/// orthogonality.
pub fn axioms(ps: &ParamSet) -> Job {
    let p = ps.clone();
    job(
        "axioms",
        format!("axioms/{}", point_id(ps)),
        ps,
        None,
        Box::new(move || {
            let top = p.lattice_n();
            let max_degree = top.map_or(5, |n| n as usize);
            let rep = check_family_axioms(&p, max_degree, top.unwrap_or(7))?;
            let mut failures = rep.failures.clone();
            let horizon = top.unwrap_or(7);
            for n in 0..=max_degree {
                for x in -3..=horizon + 3 {
                    if !check_difference_equation(&p, n, x)? {
                        failures.push(format!("difference equation n={n} x={x}"));
                    }
                }
                if top.is_some() {
                    for m in 0..n {
                        if !orthogonality_check(&p, n, m)?.off_diagonal_zero {
                            failures.push(format!("orthogonality ({n},{m})"));
                        }
                    }
                    if !orthogonality_check(&p, n, n)?.diagonal_positive {
                        failures.push(format!("norm of P_{n}"));
                    }
                }
                if eval_polynomial(&p, n, 0)? != rat(1, 1)? {
                    failures.push(format!("P_{n}(0) != 1"));
                }
            }
            Ok(Check::verdict(failures.is_empty()).with("failures", failures))
        }),
    )
}

/// Reflection symmetry, and q-inversion for qR, for `n <= 3`, `x` in `0..=N`.
pub fn symmetry(ps: &ParamSet) -> Job {
    let p = ps.clone();
    job(
        "symmetry",
        format!("symmetry/{}", point_id(ps)),
        ps,
        None,
        Box::new(move || {
            let n_top = p.lattice_n().ok_or_else(|| Error::InvalidInput("symmetries need a finite lattice".into()))?;
            let mut failures = Vec::new();
            for n in 0..=3 {
                for x in 0..=n_top {
                    if !check_reflection_symmetry(&p, x, n)? {
                        failures.push(format!("reflection n={n} x={x}"));
                    }
                    if p.family() == FamilyId::QRacah && !check_q_inversion(&p, n, x)? {
                        failures.push(format!("q-inversion n={n} x={x}"));
                    }
                }
            }
            Ok(Check::verdict(failures.is_empty()).with("failures", failures))
        }),
    )
}

/// One limit edge at every sample point of its target.
pub fn limit(edge: &'static LimitEdge) -> Job {
    let ps = ParamSet::safe(edge.target);
    job(
        "limit",
        format!("limit/{}->{}", edge.source.token(), edge.target.token()),
        &ps,
        None,
        Box::new(move || {
            let mut failures = Vec::new();
            let mut worst = Rational::from_integer(0.into());
            for p in ParamSet::samples(edge.target) {
                for n in 0..=3 {
                    for x in 0..=4 {
                        let rep = limit_relation_check(edge.source, edge.target, &p, n, x, &edge.default_path())?;
                        if let Some(last) = rep.deviations.last() {
                            if *last > worst {
                                worst = last.clone();
                            }
                        }
                        if !rep.passed() {
                            failures.push(format!("{p} n={n} x={x}"));
                        }
                    }
                }
            }
            Ok(Check::verdict(failures.is_empty())
                .with("source", edge.source.token())
                .with("parameter", edge.parameter)
                .with("worst_final_deviation", format!("{:.3e}", rational_f64(&worst)))
                .with("failures", failures))
        }),
    )
}

fn rational_f64(r: &Rational) -> f64 {
    BigFloat::from_rational(r, 64).to_f64()
}

/// Spectrum of the deformed Hamiltonian `H_d1`.
pub fn darboux(ps: &ParamSet, twist: TwistId, d1: usize, precision: usize, tol: &BigFloat) -> Job {
    let (p, tol) = (ps.clone(), tol.clone());
    job(
        "darboux",
        format!("darboux/{}/{}/d1={d1}/P={precision}", point_id(ps), twist.token()),
        ps,
        Some(twist),
        Box::new(move || {
            let range = validate_parameter_range(&p, twist, &[d1])?;
            if !range.admissible(d1) {
                return Ok(Check::verdict(false).with("failures", range.failures));
            }
            let b = build_deformed(&p, twist, d1, precision)?;
            let r = deformed_spectrum_measure(&b, &tol)?;
            let structural = b.compatibility_ok && b.hat_potentials_ok && b.standard_form_ok;
            Ok(Check::verdict(r.passed && structural)
                .with("pseudo_energy", format_rational(&b.e_tilde))
                .with("size", b.h.dim())
                .with("tolerance", bf(&r.tolerance))
                .with("eigenvalue_deviation", bf(&r.eigenvalue_deviation))
                .with("eigenvector_residual", bf(&r.eigenvector_residual))
                .with("casoratian_form_deviation", bf(&r.casoratian_form_deviation))
                .with("orthogonality_deviation", bf(&r.orthogonality_deviation))
                .with("factorization_deviation", bf(&r.factorization_deviation))
                .with("determinant_relative", bf(&r.determinant_relative))
                .with("pseudo_level_multiplicity", r.pseudo_level_multiplicity)
                .with("structural_ok", structural))
        }),
    )
}

/// Boundary-only defect of the pseudo virtual state vector.
pub fn defect(ps: &ParamSet, twist: TwistId, v: usize, precision: usize) -> Job {
    let p = ps.clone();
    job(
        "defect",
        format!("defect/{}/{}/v={v}", point_id(ps), twist.token()),
        ps,
        Some(twist),
        Box::new(move || {
            let d = pseudo_virtual_vector_defect(&p, twist, v, precision)?;
            Ok(Check::verdict(d.boundary_matches)
                .with("defect_at_0", format_rational(&d.defect[0]))
                .with("defect_at_n", format_rational(d.defect.last().unwrap()))
                .with("symmetric_residual", bf(&d.symmetric_residual)))
        }),
    )
}

/// `xi_l(x-1)` against the Casoratian of `P_1..P_l`.
pub fn special_case(ps: &ParamSet, l: usize) -> Job {
    let p = ps.clone();
    let mut j = job(
        "special-case",
        format!("special-case/{}/l={l}", point_id(ps)),
        ps,
        Some(TwistId::I),
        Box::new(move || {
            let out = eigenstate_deletion_special_case(&p, l)?;
            Ok(Check {
                passed: out.report.status == ProportionalityStatus::Proportional,
                ratio: out.report.ratio.clone(),
                skipped: out.skipped.clone(),
                details: Map::new(),
            })
        }),
    );
    j.index_sets = build_index_sets(&[l], l).ok();
    j
}

/// Pochhammer splitting and the inverse-base identity over a fixed
/// spread of rational inputs.
pub fn qseries() -> Job {
    let ps = ParamSet::safe(FamilyId::QRacah);
    job(
        "qseries",
        "qseries/identities".into(),
        &ps,
        None,
        Box::new(|| {
            let a_vals = [(-7, 3), (1, 5), (2, 1), (-1, 9), (13, 11)];
            let q_vals = [(1, 2), (2, 3), (5, 2), (-1, 3)];
            let mut cases = 0;
            let mut failures = Vec::new();
            for &(an, ad) in &a_vals {
                for &(qn, qd) in &q_vals {
                    let (a, q) = (rat(an, ad)?, rat(qn, qd)?);
                    for m in 0..=4usize {
                        for n in 0..=4usize {
                            cases += 1;
                            let split = qpoch(&a, &q, m) * qpoch(&(&a * qpow(&q, m as i64)), &q, n);
                            if qpoch(&a, &q, m + n) != split {
                                failures.push(format!("split a={a} q={q} m={m} n={n}"));
                            }
                        }
                        if !qpoch_inverse_base_identity_check(&a, &q, m)? {
                            failures.push(format!("inverse base a={a} q={q} n={m}"));
                        }
                    }
                }
            }
            Ok(Check::verdict(failures.is_empty()).with("cases", cases).with("failures", failures))
        }),
    )
}

/// All `(D, calN)` with `1 <= |D| <= max_m` and `max D <= calN <= top`.
pub fn index_matrix(max_m: usize, top: usize) -> Vec<IndexSets> {
    let mut out = Vec::new();
    for mask in 1u32..1 << (top + 1) {
        let d: Vec<usize> = (0..=top).filter(|i| mask & (1 << i) != 0).collect();
        if d.len() > max_m {
            continue;
        }
        for caln in *d.last().unwrap()..=top {
            out.push(build_index_sets(&d, caln).expect("valid by construction"));
        }
    }
    out
}

/// Per-family data checks: axioms, twist energies and ratios, symmetries.
pub fn family_checks(ps: &ParamSet) -> Vec<Job> {
    let f = ps.family();
    let mut jobs = vec![axioms(ps)];
    for d in twists_for(f) {
        jobs.push(pseudo_energy(ps, d.id));
    }
    let tws = virtual_twists_for(f);
    for (i, a) in tws.iter().enumerate() {
        for b in &tws[i + 1..] {
            jobs.push(twist_ratio(ps, a.id, b.id));
        }
    }
    if matches!(f, FamilyId::Racah | FamilyId::QRacah) {
        jobs.push(symmetry(ps));
    }
    jobs
}

/// Darboux checks at one qR point.
pub fn darboux_checks(ps: &ParamSet, twist: TwistId, d1s: &[usize], precision: usize, tol: &BigFloat) -> Vec<Job> {
    let mut jobs: Vec<Job> = d1s.iter().map(|&d1| darboux(ps, twist, d1, precision, tol)).collect();
    jobs.extend((0..=3).map(|v| defect(ps, twist, v, precision)));
    if ps.family() == FamilyId::QRacah && twist == TwistId::I {
        jobs.extend((1..=3).map(|l| special_case(ps, l)));
    }
    jobs
}

/// The full acceptance matrix.
pub fn suite(precision: usize, tol: &BigFloat) -> Vec<Job> {
    let mut jobs = Vec::new();
    for f in [FamilyId::QRacah, FamilyId::Racah] {
        let ps = ParamSet::safe(f);
        jobs.extend(index_matrix(3, 4).iter().map(|idx| identity(&ps, TwistId::I, idx)));
    }
    for f in FamilyId::ALL.into_iter().filter(|f| !matches!(f, FamilyId::Racah | FamilyId::QRacah)) {
        let ps = ParamSet::safe(f);
        let tw = virtual_twists_for(f)[0].id;
        jobs.extend(index_matrix(2, 3).iter().map(|idx| identity(&ps, tw, idx)));
    }
    for f in FamilyId::ALL {
        for ps in ParamSet::samples(f) {
            jobs.extend(family_checks(&ps));
        }
    }
    jobs.extend(darboux_checks(&ParamSet::safe(FamilyId::QRacah), TwistId::I, &[0, 1, 2], precision, tol));
    jobs.extend(rdqm::families::limits::EDGES.iter().map(limit));
    jobs.push(qseries());
    jobs
}
