use rdqm::casoratian::{build_index_sets, qracah_constant_a};
use rdqm::darboux::*;
use rdqm::error::Error;
use rdqm::exact::{eigenvalues_symmetric_tridiagonal, int, rat, BigFloat, Rational};
use rdqm::families::{energy, ground_state_sq_closed, FamilyId, ParamSet, Slot};
use rdqm::twists::TwistId;

fn r(n: i64, d: i64) -> Rational {
    rat(n, d).unwrap()
}

fn qracah(q: Rational, a: Rational, b: Rational, n: i64, d: Rational) -> ParamSet {
    ParamSet::new(FamilyId::QRacah, Some(q), vec![Slot::Mult(a), Slot::Mult(b), Slot::Exp(-n), Slot::Mult(d)]).unwrap()
}

fn safe() -> ParamSet {
    ParamSet::safe(FamilyId::QRacah)
}

#[test]
fn inequality_examples() {
    // a c = 1 breaks 0 < ac < d.
    let bad = qracah(r(1, 2), r(1, 32), r(1, 4), 5, r(1, 8));
    assert!(qracah_inequalities(&bad).unwrap().iter().any(|f| f.contains("ac < d")));
    let too_big_d = qracah(r(1, 2), r(1, 5000), r(1, 3), 5, r(1, 3));
    assert!(qracah_inequalities(&too_big_d).unwrap().iter().any(|f| f == "d < q^2"));
    assert!(qracah_inequalities(&safe()).unwrap().is_empty());
    assert!(qracah_inequalities(&ParamSet::safe(FamilyId::Racah)).is_err());

    let rep = validate_parameter_range(&bad, TwistId::I, &[0]).unwrap();
    assert!(!rep.passed());
    assert!(!rep.admissible(0));
    assert_eq!(rep.xi_positive, vec![(0, true)]);
}

#[test]
fn ground_state_examples() {
    let ps = safe();
    let gs = ground_state(&ps, 256).unwrap();
    assert_eq!(gs.phi0_sq[0], int(1));
    assert!(gs.detailed_balance_ok);
    assert!(gs.residual < default_tolerance(256));
    for (x, v) in gs.phi0_sq.iter().enumerate() {
        assert_eq!(*v, ground_state_sq_closed(&ps, x).unwrap());
    }
}

#[test]
fn hamiltonian_spectrum() {
    let h = build_hamiltonian(&safe(), 256).unwrap();
    assert!(h.h_tilde_eigen_check().unwrap());
    assert!(h.spectrum_deviation().unwrap() < decimal_tolerance(30, 256));
}

#[test]
fn deformed_bundle_shape() {
    let ps = safe();
    let n = ps.lattice_n().unwrap();
    for d1 in 0..=2 {
        let b = build_deformed(&ps, TwistId::I, d1, 256).unwrap();
        assert_eq!(b.h.dim(), (n + 2) as usize);
        assert!(b.compatibility_ok && b.hat_potentials_ok && b.standard_form_ok, "d1={d1}");
        assert_eq!(*b.b_hat_at(-1), int(0));
        assert_eq!(*b.d_hat_at(n + 1), int(0));
        assert_eq!(b.b_standard(n).unwrap(), int(0));
        assert_eq!(b.d_standard(-1).unwrap(), int(0));
    }
}

#[test]
fn lowest_pseudo_level_becomes_ground_level() {
    let ps = safe();
    let b = build_deformed(&ps, TwistId::I, 0, 256).unwrap();
    assert_eq!(b.e_tilde, energy(&ps, -1).unwrap());
    assert!(b.e_tilde < int(0));
    let ev = eigenvalues_symmetric_tridiagonal(&b.h);
    let lowest = ev.iter().cloned().fold(ev[0].clone(), |m, v| if v < m { v } else { m });
    let target = BigFloat::from_rational(&b.e_tilde, 256);
    assert!((lowest - target).abs() < decimal_tolerance(30, 256));
}

#[test]
fn spectrum_at_30_digits() {
    let tol = decimal_tolerance(30, 256);
    for d1 in 0..=2 {
        let b = build_deformed(&safe(), TwistId::I, d1, 256).unwrap();
        let rep = deformed_spectrum_check(&b, &tol).unwrap();
        assert_eq!(rep.pseudo_level_multiplicity, 1);
    }
}

#[test]
fn tight_tolerance_at_low_precision_is_rejected() {
    let b = build_deformed(&safe(), TwistId::I, 1, 64).unwrap();
    let res = deformed_spectrum_check(&b, &decimal_tolerance(60, 64));
    assert!(matches!(res, Err(Error::DeformationError(_))));
}

#[test]
fn defects_and_almost_zero_mode() {
    let ps = safe();
    let z = almost_zero_mode_check(&ps, TwistId::I, 256).unwrap();
    assert!(z.ratio_relation_ok);
    assert_ne!(z.closed_form_ok, Some(false));
    for v in 0..=3 {
        let d = pseudo_virtual_vector_defect(&ps, TwistId::I, v, 256).unwrap();
        assert!(d.boundary_matches, "v={v}");
        let n = d.defect.len();
        assert!(d.defect[1..n - 1].iter().all(|x| *x == int(0)));
    }
}

#[test]
fn special_case_matches_closed_constant() {
    let ps = safe();
    for l in 1..=3 {
        let out = eigenstate_deletion_special_case(&ps, l).unwrap();
        let a = qracah_constant_a(&ps, &build_index_sets(&[l], l).unwrap()).unwrap();
        assert_eq!(out.report.ratio, Some(a), "l={l}");
    }
    assert!(eigenstate_deletion_special_case(&ps, 0).is_err());
}
