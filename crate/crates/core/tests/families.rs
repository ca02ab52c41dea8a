use rdqm::families::{check_family_axioms, eigen_equation_check, orthogonality_check, FamilyId, ParamSet};

#[test]
fn axioms_hold_at_every_sample_point() {
    let mut bad = Vec::new();
    for f in FamilyId::ALL {
        for ps in ParamSet::samples(f) {
            let rep = check_family_axioms(&ps, 5, 7).unwrap();
            if !rep.passed() {
                bad.push(format!("{ps}: {:?}", rep.failures));
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn finite_families_are_orthogonal() {
    for f in FamilyId::ALL.into_iter().filter(|f| f.is_finite()) {
        for ps in ParamSet::samples(f) {
            let n = ps.lattice_n().unwrap() as usize;
            for a in 0..=n {
                assert!(eigen_equation_check(&ps, a).unwrap(), "{ps} n={a}");
                for b in 0..=a {
                    let rep = orthogonality_check(&ps, a, b).unwrap();
                    assert!(rep.off_diagonal_zero && rep.diagonal_positive, "{ps} ({a},{b})");
                }
            }
        }
    }
}

use rdqm::casoratian::varphi_m;
use rdqm::exact::{int, rat, Rational};
use rdqm::families::limits::{find_edge, limit_relation_check, EDGES};
use rdqm::families::{
    check_difference_equation, check_q_inversion, check_reflection_symmetry, d_tilde, energy, eta, eval_polynomial,
    orthogonality_sum, Slot,
};

fn r(n: i64, d: i64) -> Rational {
    rat(n, d).unwrap()
}

fn krawtchouk(p: Rational, n: i64) -> ParamSet {
    ParamSet::new(FamilyId::Krawtchouk, None, vec![Slot::Add(p), Slot::Add(int(n))]).unwrap()
}

fn qracah(q: Rational, a: Rational, b: Rational, n: i64, d: Rational) -> ParamSet {
    ParamSet::new(FamilyId::QRacah, Some(q), vec![Slot::Mult(a), Slot::Mult(b), Slot::Exp(-n), Slot::Mult(d)]).unwrap()
}

#[test]
fn polynomial_examples() {
    let k = krawtchouk(r(1, 2), 4);
    assert_eq!(eval_polynomial(&k, 1, 2).unwrap(), int(0));
    for f in FamilyId::ALL {
        let ps = ParamSet::safe(f);
        assert_eq!(eval_polynomial(&ps, 0, 5).unwrap(), int(1));
        assert_eq!(eval_polynomial(&ps, 3, 0).unwrap(), int(1));
    }
}

#[test]
fn energy_examples() {
    assert_eq!(energy(&krawtchouk(r(1, 2), 4), 7).unwrap(), int(7));
    for f in FamilyId::ALL {
        assert_eq!(energy(&ParamSet::safe(f), 0).unwrap(), int(0));
    }
    // d~ = abc / (dq) = 1/4 at q = 1/2.
    let ps = qracah(r(1, 2), r(1, 16), r(1, 8), 2, r(1, 4));
    assert_eq!(d_tilde(&ps).unwrap(), r(1, 4));
    assert_eq!(energy(&ps, 2).unwrap(), r(45, 16));
    assert_eq!(energy(&ps, -2).unwrap(), int(0));
}

#[test]
fn difference_equation_examples() {
    let k = krawtchouk(r(1, 2), 4);
    assert!(check_difference_equation(&k, 1, 1).unwrap());
    let ps = ParamSet::safe(FamilyId::QRacah);
    assert!(check_difference_equation(&ps, 2, ps.lattice_n().unwrap() + 3).unwrap());
}

#[test]
fn difference_equation_off_the_lattice() {
    let mut bad = Vec::new();
    for f in FamilyId::ALL {
        for ps in ParamSet::samples(f) {
            let top = ps.lattice_n().unwrap_or(7);
            for n in 0..=3 {
                for x in -3..=top + 3 {
                    if !matches!(check_difference_equation(&ps, n, x), Ok(true)) {
                        bad.push(format!("{ps} n={n} x={x}"));
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn orthogonality_example() {
    let ps = qracah(r(1, 2), r(1, 1000), r(1, 3), 4, r(2, 9));
    assert_eq!(orthogonality_sum(&ps, 1, 3).unwrap(), int(0));
    assert!(orthogonality_sum(&ps, 0, 0).unwrap() > int(0));
}

#[test]
fn symmetry_examples() {
    let q = qracah(r(1, 2), r(1, 16), r(1, 4), 3, r(1, 8));
    assert!(check_reflection_symmetry(&q, 0, 0).unwrap());
    assert!(check_reflection_symmetry(&q, 1, 2).unwrap());
    let racah = ParamSet::new(
        FamilyId::Racah,
        None,
        vec![Slot::Add(r(3, 2)), Slot::Add(r(5, 4)), Slot::Add(int(-3)), Slot::Add(r(7, 2))],
    )
    .unwrap();
    assert!(check_reflection_symmetry(&racah, 2, 1).unwrap());
    assert!(check_q_inversion(&q, 0, 2).unwrap());
    assert!(check_q_inversion(&q, 3, 2).unwrap());
    assert!(check_reflection_symmetry(&ParamSet::safe(FamilyId::Hahn), 1, 1).is_err());
}

#[test]
fn eta_and_varphi() {
    for f in FamilyId::ALL {
        let ps = ParamSet::safe(f);
        let top = ps.lattice_n().unwrap_or(6);
        assert_eq!(eta(&ps, 0).unwrap(), int(0));
        let e1 = eta(&ps, 1).unwrap();
        for x in -3..=top + 3 {
            let lhs = varphi_m(&ps, 2, x).unwrap() * &e1;
            assert_eq!(lhs, eta(&ps, x + 1).unwrap() - eta(&ps, x).unwrap(), "{ps} x={x}");
        }
    }
}

/// Top Newton coefficient of `P_n` as a polynomial in `eta` over the nodes
/// `eta(0..=n)`.
fn top_coefficient(ps: &ParamSet, n: usize) -> Rational {
    let nodes: Vec<Rational> = (0..=n as i64).map(|x| eta(ps, x).unwrap()).collect();
    let mut table: Vec<Rational> = (0..=n as i64).map(|x| eval_polynomial(ps, n, x).unwrap()).collect();
    for level in 1..=n {
        for i in (level..=n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    table[n].clone()
}

#[test]
fn leading_coefficients_do_not_vanish() {
    for f in FamilyId::ALL {
        for ps in ParamSet::samples(f) {
            let top = ps.lattice_n().map_or(5, |n| (n as usize).min(5));
            for n in 0..=top {
                assert_ne!(top_coefficient(&ps, n), int(0), "{ps} n={n}");
            }
        }
    }
}

#[test]
fn limit_edges_converge() {
    assert_eq!(EDGES.len(), 17);
    let mut bad = Vec::new();
    for e in &EDGES {
        for ps in ParamSet::samples(e.target) {
            for n in 0..=3 {
                for x in 0..=4 {
                    let rep = limit_relation_check(e.source, e.target, &ps, n, x, &e.default_path()).unwrap();
                    if !rep.passed() {
                        bad.push(format!("{} -> {} {ps} n={n} x={x}", e.source, e.target));
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn hahn_to_krawtchouk_example() {
    let k = krawtchouk(r(1, 2), 4);
    let path = [int(10), int(100), int(1000)];
    let rep = limit_relation_check(FamilyId::Hahn, FamilyId::Krawtchouk, &k, 2, 1, &path).unwrap();
    assert!(rep.strictly_decreasing);
    assert!(!rep.final_below_threshold);
    assert!(find_edge(FamilyId::Krawtchouk, FamilyId::Hahn).is_err());
}
