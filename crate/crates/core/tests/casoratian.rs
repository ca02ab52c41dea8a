use rdqm::casoratian::*;
use rdqm::error::Error;
use rdqm::exact::{int, qpow, ProportionalityStatus, Rational};
use rdqm::families::{d_tilde, eta, eval_polynomial, FamilyId, ParamSet, Slot};
use rdqm::twists::{make_twist, TwistId};

fn r(n: i64, d: i64) -> Rational {
    rdqm::exact::rat(n, d).unwrap()
}

fn qracah(q: Rational, a: Rational, b: Rational, n: i64, d: Rational) -> ParamSet {
    ParamSet::new(FamilyId::QRacah, Some(q), vec![Slot::Mult(a), Slot::Mult(b), Slot::Exp(-n), Slot::Mult(d)]).unwrap()
}

fn ell(s: &[usize]) -> i64 {
    let m = s.len() as i64;
    s.iter().map(|&v| v as i64).sum::<i64>() - m * (m - 1) / 2
}

fn all_subsets(max: usize) -> Vec<Vec<usize>> {
    (1u32..1 << (max + 1)).map(|mask| (0..=max).filter(|i| mask & (1 << i) != 0).collect()).collect()
}

#[test]
fn index_set_examples() {
    let idx = build_index_sets(&[0], 0).unwrap();
    assert!(idx.dbar.is_empty());
    assert_eq!(idx.nbar(), 0);
    let idx = build_index_sets(&[1], 1).unwrap();
    assert_eq!(idx.dbar, vec![1]);
    let idx = build_index_sets(&[3, 1], 4).unwrap();
    assert_eq!((idx.d.clone(), idx.dbar.clone(), idx.nbar()), (vec![1, 3], vec![0, 2, 4], 3));
    assert!(matches!(build_index_sets(&[2, 2], 3), Err(Error::InvalidInput(_))));
    assert!(matches!(build_index_sets(&[5], 4), Err(Error::InvalidInput(_))));
}

#[test]
fn index_set_invariants() {
    for caln in 0..=6usize {
        for d in all_subsets(caln).into_iter().filter(|d| d.len() <= 4) {
            let idx = build_index_sets(&d, caln).unwrap();
            let m = idx.m() as i64;
            let c = caln as i64;
            let sum_e: i64 = idx.dbar.iter().map(|&e| e as i64).sum();
            let sum_d: i64 = idx.d.iter().map(|&v| v as i64).sum();
            assert_eq!(sum_e, sum_d + c * (c + 1) / 2 - c * m, "{d:?} {caln}");
            assert_eq!(ell(&idx.dbar), ell(&idx.d), "{d:?} {caln}");
            assert_eq!(idx.m() + idx.nbar(), caln + 1);
        }
    }
}

#[test]
fn casoratian_examples() {
    let ps = ParamSet::safe(FamilyId::QRacah);
    let fs: Vec<Box<dyn Fn(i64) -> rdqm::error::Result<Rational>>> =
        vec![Box::new(|_| Ok(int(1))), Box::new(|x| eta(&ps, x))];
    for x in -2..6 {
        assert_eq!(casoratian(&fs[..0], x).unwrap(), int(1));
        assert_eq!(casoratian(&fs, x).unwrap(), eta(&ps, x + 1).unwrap() - eta(&ps, x).unwrap());
    }
}

#[test]
fn varphi_examples() {
    for f in [FamilyId::Hahn, FamilyId::Krawtchouk, FamilyId::Meixner, FamilyId::Charlier] {
        let ps = ParamSet::safe(f);
        for m in 0..=4 {
            for x in -2..5 {
                assert_eq!(varphi_m(&ps, m, x).unwrap(), int(1), "{f} M={m} x={x}");
            }
        }
    }
    let ps = ParamSet::safe(FamilyId::QRacah);
    let e1 = eta(&ps, 1).unwrap();
    for x in -2..5 {
        let phi = (eta(&ps, x + 1).unwrap() - eta(&ps, x).unwrap()) / &e1;
        assert_eq!(varphi_m(&ps, 2, x).unwrap(), phi);
    }
}

#[test]
fn trivial_identity_has_unit_ratio() {
    for f in FamilyId::ALL {
        let ps = ParamSet::safe(f);
        let tw = rdqm::twists::virtual_twists_for(f)[0].id;
        let out = verify_identity(&ps, tw, &build_index_sets(&[0], 0).unwrap()).unwrap();
        assert_eq!(out.report.ratio, Some(int(1)), "{f}");
    }
}

#[test]
fn single_index_identity() {
    for f in FamilyId::ALL {
        let ps = ParamSet::safe(f);
        let tw = rdqm::twists::virtual_twists_for(f)[0].id;
        let idx = build_index_sets(&[1], 1).unwrap();
        let out = verify_identity(&ps, tw, &idx).unwrap();
        assert_eq!(out.report.status, ProportionalityStatus::Proportional, "{f}");
        assert!(out.grid.len() >= 2 * idx.degree_bound() + 2);
    }
}

#[test]
fn leading_coefficient_examples() {
    let ps = ParamSet::safe(FamilyId::QRacah);
    assert_eq!(leading_coefficient_cn(&ps, 0).unwrap(), int(1));
    let q = ps.q().unwrap();
    let one = int(1);
    let expect = (&one - d_tilde(&ps).unwrap() * q) / ((&one - ps.value(0)) * (&one - ps.value(1)) * (&one - ps.value(2)));
    assert_eq!(leading_coefficient_cn(&ps, 1).unwrap(), expect);
    for n in 0..=3usize {
        let nodes: Vec<Rational> = (0..=n as i64).map(|x| eta(&ps, x).unwrap()).collect();
        let mut t: Vec<Rational> = (0..=n as i64).map(|x| eval_polynomial(&ps, n, x).unwrap()).collect();
        for level in 1..=n {
            for i in (level..=n).rev() {
                t[i] = (&t[i] - &t[i - 1]) / (&nodes[i] - &nodes[i - level]);
            }
        }
        assert_eq!(t[n], leading_coefficient_cn(&ps, n).unwrap(), "n={n}");
    }
    assert!(leading_coefficient_cn(&ParamSet::safe(FamilyId::Racah), 1).is_err());
}

#[test]
fn closed_form_constant_matches_measured_ratio() {
    let ps = ParamSet::safe(FamilyId::QRacah);
    for (d, caln) in [(vec![0], 0), (vec![1], 1), (vec![1, 3], 3), (vec![1, 2], 3)] {
        let idx = build_index_sets(&d, caln).unwrap();
        let out = verify_identity(&ps, TwistId::I, &idx).unwrap();
        assert_eq!(out.report.ratio, Some(qracah_constant_a(&ps, &idx).unwrap()), "{d:?} {caln}");
    }
}

#[test]
fn swapping_two_indices_flips_the_sign() {
    let ps = ParamSet::safe(FamilyId::QRacah);
    let tw = make_twist(&ps, TwistId::I).unwrap();
    let x = 2;
    let cols = |order: &[usize]| -> Vec<Vec<Rational>> {
        order.iter().map(|&dj| (0..order.len() as i64).map(|j| tw.xi(dj, x + j).unwrap()).collect()).collect()
    };
    let w = casoratian_of_columns(&cols(&[1, 3])).unwrap();
    let ws = casoratian_of_columns(&cols(&[3, 1])).unwrap();
    assert_ne!(w, int(0));
    assert_eq!(w, -ws);
}

#[test]
fn eta_shift_recurrence() {
    let ps = ParamSet::safe(FamilyId::QRacah);
    let q = ps.q().unwrap();
    let d = ps.value(3);
    for (dset, caln) in [(vec![1], 2), (vec![1, 2], 3), (vec![0, 2, 3], 4)] {
        let idx = build_index_sets(&dset, caln).unwrap();
        let m = idx.m() as i64;
        let left = idx.lambda_bar(&ps).shifted(idx.nbar() as i64 - 1);
        let right = ps.shifted(m - 1);
        for x in -3..10 {
            let rhs = qpow(q, -m) * eta(&right, x - m).unwrap() + (qpow(q, -m) - int(1)) * (int(1) - &d / q);
            assert_eq!(eta(&left, x).unwrap(), rhs, "{dset:?} x={x}");
        }
    }
}

#[test]
fn degenerate_point_is_reported() {
    // b = q^2: xi_1 of twist (i) has a vanishing denominator parameter and
    // the twisted b' = 1 truncates xi_2 to the constant 1.
    let ps = qracah(r(1, 2), r(1, 2048), r(1, 4), 5, r(1, 8));
    let tw = make_twist(&ps, TwistId::I).unwrap();
    assert!(matches!(tw.xi(1, 2), Err(Error::PoleInSeries { .. })));
    assert_eq!(tw.xi(2, 2).unwrap(), int(1));
    let res = verify_identity(&ps, TwistId::I, &build_index_sets(&[0, 2], 2).unwrap());
    assert!(matches!(res, Err(Error::DegenerateInstance(_))), "{res:?}");
    let res = verify_identity(&ps, TwistId::I, &build_index_sets(&[1], 1).unwrap());
    assert!(matches!(res, Err(Error::PoleInSeries { .. }) | Err(Error::EvaluationPole(_))), "{res:?}");
}
