use rdqm::error::Error;
use rdqm::exact::{int, rat, Rational};
use rdqm::qseries::*;

fn r(n: i64, d: i64) -> Rational {
    rat(n, d).unwrap()
}

#[test]
fn pochhammer_examples() {
    assert_eq!(poch(&r(7, 3), 0), int(1));
    assert_eq!(poch(&int(1), 4), int(24));
    assert_eq!(poch(&int(-3), 5), int(0));
    assert_eq!(qpoch(&r(5, 7), &r(1, 3), 0), int(1));
    assert_eq!(qpoch(&int(2), &r(1, 2), 2), int(0));
    assert_eq!(qpoch(&r(1, 3), &r(1, 2), 2), r(5, 9));
}

#[test]
fn inverse_base_examples() {
    assert!(qpoch_inverse_base_identity_check(&int(2), &r(1, 2), 2).unwrap());
    assert_eq!(qpoch(&int(2), &int(2), 2), int(3));
    assert!(qpoch_inverse_base_identity_check(&r(4, 9), &r(1, 2), 0).unwrap());
    assert!(qpoch_inverse_base_identity_check(&r(1, 3), &r(2, 5), 3).unwrap());
    assert!(matches!(qpoch_inverse_base_identity_check(&int(0), &r(1, 2), 2), Err(Error::InvalidInput(_))));
}

#[test]
fn series_examples() {
    let spec = SeriesSpec::ordinary(vec![int(0)], vec![r(1, 3)], r(5, 2), 0).unwrap();
    assert_eq!(hyper_terminating(&spec).unwrap(), int(1));
    // 2F1(-1, -x; -N | 1/p) at x = 2, N = 4, p = 1/2.
    let k = SeriesSpec::ordinary(vec![int(-1), int(-2)], vec![int(-4)], int(2), 1).unwrap();
    assert_eq!(hyper_terminating(&k).unwrap(), int(0));
    // A 4phi3 of Racah type at x = 0 has a vanishing numerator q^-x - 1 factor.
    let q = r(1, 2);
    let phi = SeriesSpec::basic(vec![int(2), r(3, 7), int(1), r(1, 5)], vec![r(1, 3), r(2, 9), int(8)], q.clone(), q, 1)
        .unwrap();
    assert_eq!(hyper_terminating(&phi).unwrap(), int(1));
}

#[test]
fn pole_reports_parameter_and_order() {
    let spec = SeriesSpec::ordinary(vec![int(-3), r(1, 2)], vec![int(-1)], int(1), 3).unwrap();
    match hyper_terminating(&spec) {
        Err(Error::PoleInSeries { order, .. }) => assert_eq!(order, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn termination_is_explicit() {
    assert!(SeriesSpec::ordinary(vec![int(-2)], vec![], int(1), 3).is_err());
    assert!(SeriesSpec::basic(vec![int(4)], vec![], r(1, 2), int(1), 3).is_err());
    assert!(SeriesSpec::basic(vec![int(8)], vec![], int(1), int(1), 3).is_err());
}
