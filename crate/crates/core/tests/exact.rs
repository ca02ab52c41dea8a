use rdqm::error::Error;
use rdqm::exact::*;

fn r(n: i64, d: i64) -> Rational {
    rat(n, d).unwrap()
}

fn bf(v: &Rational) -> BigFloat {
    BigFloat::from_rational(v, 256)
}

#[test]
fn rational_normal_forms() {
    assert_eq!(format_rational(&r(2, 4)), "1/2");
    assert_eq!(format_rational(&r(3, -6)), "-1/2");
    assert_eq!(format_rational(&r(0, 7)), "0/1");
    assert_eq!(rat(1, 0), Err(Error::DivisionByZero));
}

#[test]
fn literals() {
    assert_eq!(parse_rational("-3/9").unwrap(), r(-1, 3));
    assert_eq!(parse_rational("5").unwrap(), r(5, 1));
    for bad in ["1/0", "1 /2", "a/2", "", "1/-2", "1/2/3"] {
        assert!(parse_rational(bad).is_err(), "{bad}");
    }
}

#[test]
fn proportionality_examples() {
    let v = |xs: &[i64]| xs.iter().map(|&x| r(x, 1)).collect::<Vec<_>>();
    let p = fit_proportionality(&v(&[1, 2, 3]), &v(&[2, 4, 6])).unwrap();
    assert_eq!(p.status, ProportionalityStatus::Proportional);
    assert_eq!(p.ratio, Some(r(1, 2)));
    assert_eq!(fit_proportionality(&v(&[0, 0]), &v(&[0, 0])).unwrap().status, ProportionalityStatus::BothZero);
    assert_eq!(fit_proportionality(&v(&[1, 2]), &v(&[2, 5])).unwrap().status, ProportionalityStatus::Mismatch);
    assert!(matches!(fit_proportionality(&v(&[1]), &v(&[1, 2])), Err(Error::InvalidInput(_))));
}

#[test]
fn proportionality_skips_common_zeros() {
    let lhs = vec![r(0, 1), r(3, 1), r(0, 1), r(6, 1)];
    let rhs = vec![r(0, 1), r(1, 1), r(0, 1), r(2, 1)];
    let p = fit_proportionality(&lhs, &rhs).unwrap();
    assert_eq!(p.ratio, Some(r(3, 1)));
    assert_eq!(p.degenerate_points, vec![0, 2]);
}

#[test]
fn small_spectra() {
    let one = SymTridiagonal::new(vec![bf(&r(0, 1))], vec![]).unwrap();
    assert!(eigenvalues_symmetric_tridiagonal(&one)[0].is_zero());
    let two = SymTridiagonal::new(vec![bf(&r(1, 1)); 2], vec![bf(&r(1, 1))]).unwrap();
    let ev = eigenvalues_symmetric_tridiagonal(&two);
    let tol = BigFloat::pow2(-128, 256);
    assert!(ev[0].abs() <= tol);
    assert!((&ev[1] - &bf(&r(2, 1))).abs() <= tol);
    assert!(SymTridiagonal::new(vec![], vec![]).is_err());
}

#[test]
fn bigfloat_round_trip_error() {
    for (n, d) in [(1, 3), (-22, 7), (355, 113), (1, 1 << 40)] {
        let x = r(n, d);
        let back = BigFloat::from_rational(&x, 256).to_rational();
        let rel = (&back - &x) / &x;
        let bound = qpow(&r(2, 1), -255);
        assert!(rel <= bound && -rel <= bound, "{n}/{d}");
    }
}

#[test]
fn determinant_of_singular_matrix() {
    let m = vec![vec![r(1, 2), r(1, 3)], vec![r(3, 2), r(1, 1)]];
    assert_eq!(determinant(m).unwrap(), r(0, 1));
    assert_eq!(determinant(vec![]).unwrap(), r(1, 1));
}
