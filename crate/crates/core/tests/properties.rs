use proptest::prelude::*;
use rdqm::darboux::default_tolerance;
use rdqm::exact::{
    eigenvalues_symmetric_tridiagonal, fit_proportionality, format_rational, parse_rational, rat, BigFloat,
    ProportionalityStatus, Rational, SymTridiagonal,
};
use rdqm::families::{FamilyId, ParamSet};
use rdqm::qseries::{hyper_f, hyper_phi, qpoch, qpoch_inverse_base_identity_check};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..40).prop_map(|(n, d)| rat(n, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != rat(0, 1).unwrap())
}

/// Bases away from roots of unity and 0.
fn base() -> impl Strategy<Value = Rational> {
    (1i64..20, 2i64..25).prop_filter("q != 1", |(n, d)| n != d).prop_map(|(n, d)| rat(n, d).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
    }

    #[test]
    fn scaled_vectors_are_proportional(v in prop::collection::vec(rational(), 1..12), k in nonzero()) {
        prop_assume!(v.iter().any(|x| *x != rat(0, 1).unwrap()));
        let kv: Vec<Rational> = v.iter().map(|x| x * &k).collect();
        let rep = fit_proportionality(&v, &kv).unwrap();
        prop_assert_eq!(rep.status, ProportionalityStatus::Proportional);
        prop_assert_eq!(rep.ratio, Some(k.recip()));
    }

    #[test]
    fn eigenvalue_sum_is_trace(
        entries in prop::collection::vec((rational(), rational()), 1..=12),
    ) {
        let p = 256;
        let diag: Vec<BigFloat> = entries.iter().map(|(d, _)| BigFloat::from_rational(d, p)).collect();
        let off: Vec<BigFloat> = entries[1..].iter().map(|(_, o)| BigFloat::from_rational(o, p)).collect();
        let t = SymTridiagonal::new(diag.clone(), off).unwrap();
        let sum = eigenvalues_symmetric_tridiagonal(&t).into_iter().fold(BigFloat::zero(p), |s, x| s + x);
        let trace = diag.into_iter().fold(BigFloat::zero(p), |s, x| s + x);
        let scale = trace.abs().max(BigFloat::one(p));
        prop_assert!((sum - trace).abs() <= &default_tolerance(p) * &scale);
    }

    #[test]
    fn qpoch_splits(a in rational(), q in base(), m in 0usize..=8, n in 0usize..=8) {
        let qm = (0..m).fold(rat(1, 1).unwrap(), |s, _| s * &q);
        prop_assert_eq!(qpoch(&a, &q, m + n), qpoch(&a, &q, m) * qpoch(&(&a * qm), &q, n));
    }

    #[test]
    fn inverse_base_identity(a in nonzero(), q in base(), n in 0usize..=10) {
        prop_assert!(qpoch_inverse_base_identity_check(&a, &q, n).unwrap());
    }

    #[test]
    fn hyper_is_symmetric_in_its_parameters(
        deg in 0usize..=5,
        extra in prop::collection::vec(rational(), 2),
        den in prop::collection::vec((1i64..30, 1i64..7).prop_map(|(n, d)| rat(n, d).unwrap()), 2),
        z in rational(),
        q in base(),
    ) {
        let top = rat(-(deg as i64), 1).unwrap();
        let num = vec![top.clone(), extra[0].clone(), extra[1].clone()];
        let swapped = vec![extra[1].clone(), top, extra[0].clone()];
        let den_rev: Vec<Rational> = den.iter().rev().cloned().collect();
        let lhs = hyper_f(num.clone(), den.clone(), z.clone(), deg);
        let rhs = hyper_f(swapped, den_rev.clone(), z.clone(), deg);
        prop_assert_eq!(lhs.ok(), rhs.ok());

        let qn = (0..deg).fold(rat(1, 1).unwrap(), |s, _| s / &q);
        let qnum = vec![qn.clone(), extra[0].clone(), extra[1].clone()];
        let qswap = vec![extra[0].clone(), extra[1].clone(), qn];
        let l = hyper_phi(qnum, den.clone(), &q, z.clone(), deg);
        let r = hyper_phi(qswap, den_rev, &q, z, deg);
        prop_assert_eq!(l.ok(), r.ok());
    }

    #[test]
    fn shifts_compose(j in -4i64..4, k in -4i64..4, fi in 0usize..FamilyId::ALL.len()) {
        let ps = ParamSet::safe(FamilyId::ALL[fi]);
        prop_assert_eq!(ps.shifted(j).shifted(k), ps.shifted(j + k));
    }
}
