use motzkin::circle::{half_parity_check, interval_construction};
use motzkin::density::{rank1_report, verify_avoiding};
use motzkin::group::{
    basis_images, problem_from_corank1, problem_from_integer_vectors, problem_from_rational_circle, quotient_of,
    realize_as_compact_group,
};
use motzkin::lattice::Lattice;
use motzkin::report::{Method, Side, Witness};
use motzkin::solve::{bounds, construct, density, integer_problem};
use motzkin::{BigInt, BigRational, Error, SolverOptions};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn lattice_problem(r: usize, rows: &[&[i64]]) -> motzkin::group::DifferenceProblem {
    basis_images(&quotient_of(&Lattice::from_i64(r, rows).unwrap())).unwrap()
}

#[test]
fn every_bound_names_its_method() {
    let opts = SolverOptions::default();
    for p in [
        problem_from_rational_circle(&[q(1, 13), q(3, 13), q(4, 13)]).unwrap(),
        integer_problem(&[1, 3, 8]).unwrap(),
        lattice_problem(3, &[&[1, 2, 2]]),
        lattice_problem(4, &[&[1, 2, 0, 1], &[0, 1, 3, 1]]),
    ] {
        let r = bounds(&p, &opts).unwrap();
        assert!(r.lower.value <= r.upper.value, "{p}");
        for e in &r.entries {
            assert!(!e.method.to_string().is_empty());
            match e.side {
                Side::Lower => assert!(e.value <= r.upper.value, "{p}: {} above the upper bound", e.method),
                Side::Upper if e.trusted => assert!(e.value >= r.lower.value, "{p}: {} below the lower bound", e.method),
                Side::Upper => {}
            }
        }
    }
}

#[test]
fn periodic_witnesses_avoid() {
    let opts = SolverOptions::default();
    for p in [
        integer_problem(&[1, 3, 8]).unwrap(),
        lattice_problem(2, &[&[2, 3]]),
        lattice_problem(3, &[&[2, 0, 1], &[0, 2, 1]]),
    ] {
        for e in bounds(&p, &opts).unwrap().entries {
            if let Some(Witness::Periodic(s)) = &e.witness {
                assert!(verify_avoiding(s, &p), "{p}: {} witness {s}", e.method);
                assert_eq!(s.density(), e.value);
            }
        }
    }
}

#[test]
fn density_is_exact_in_the_complete_ranks() {
    let opts = SolverOptions::default();
    // rank 0, 1, r - 1 and r in Z^3
    let cases = [
        (basis_images(&quotient_of(&Lattice::zero(3))).unwrap(), q(1, 2)),
        (lattice_problem(3, &[&[1, 2, 2]]), q(2, 5)),
        (lattice_problem(3, &[&[1, 1, 0], &[0, 1, 1]]), q(1, 2)),
        (lattice_problem(3, &[&[13, 0, 0], &[-3, 1, 0], &[-4, 0, 1]]), q(3, 13)),
    ];
    for (p, want) in cases {
        let r = density(&p, &opts).unwrap();
        assert_eq!(r.exact, Some(want), "{p}");
    }
}

#[test]
fn explicit_rank1_has_a_construction_witness() {
    let r = density(&lattice_problem(2, &[&[1, 2]]), &SolverOptions::default()).unwrap();
    assert_eq!(r.exact, Some(q(1, 3)));
    assert!(matches!(r.lower.witness, Some(Witness::Periodic(_))));
    assert_eq!(r.lower.method, Method::Rank1Construction);
}

#[test]
fn half_parity_meets_its_upper_bound() {
    let p = lattice_problem(3, &[&[1, 1, 0], &[0, 1, 1]]);
    assert!(half_parity_check(p.group.lattice()));
    let r = bounds(&p, &SolverOptions::default()).unwrap();
    assert_eq!(r.exact, Some(q(1, 2)));
    assert!(r.entries.iter().any(|e| e.method == Method::HalfParity));
}

#[test]
fn corank1_direct_input() {
    // Z_2 × Z with differences (1, 1) and (0, 1)
    let p = problem_from_corank1(&[BigInt::from(2)], &[vec![1.into(), 1.into()], vec![0.into(), 1.into()]]).unwrap();
    let r = density(&p, &SolverOptions::default()).unwrap();
    assert!(r.is_exact());
    assert!(matches!(r.lower.method, Method::WindowMeanCycle { .. }));
}

#[test]
fn constructions_by_shape() {
    let opts = SolverOptions::default();
    let c = construct(&lattice_problem(2, &[&[2, 3]]), &opts).unwrap();
    assert_eq!(c.density, q(2, 5));
    let Witness::Periodic(s) = &c.witness else { panic!() };
    assert_eq!(s.cell().len(), 2);
    assert!(c.verified);

    let c = construct(&integer_problem(&[1, 3, 8]).unwrap(), &opts).unwrap();
    assert_eq!(c.density, q(4, 11));
}

#[test]
fn middle_rank_reports_bounds_only() {
    let p = lattice_problem(4, &[&[1, 2, 0, 0], &[0, 0, 1, 2]]);
    let opts = SolverOptions::default();
    assert!(matches!(construct(&p, &opts), Err(Error::NoConstructionApplicable(_))));
    let r = density(&p, &opts).unwrap();
    assert!(r.lower.value > q(0, 1));
    assert!(r.entries.iter().any(|e| e.method == Method::KappaDual));
}

#[test]
fn intervals_need_the_right_width() {
    let f = [q(1, 13), q(3, 13), q(4, 13)];
    let set = interval_construction(&f, &BigInt::from(2), &q(2, 13)).unwrap();
    assert_eq!(set.measure(), q(2, 13));
    assert!(interval_construction(&f, &BigInt::from(2), &q(3, 13)).is_err());
}

#[test]
fn isomorphic_presentations_agree() {
    let opts = SolverOptions::default();
    let circle = density(&problem_from_rational_circle(&[q(1, 13), q(3, 13), q(4, 13)]).unwrap(), &opts).unwrap();
    let explicit = density(&lattice_problem(3, &[&[13, 0, 0], &[-3, 1, 0], &[-4, 0, 1]]), &opts).unwrap();
    assert_eq!(circle.exact, explicit.exact);
    let vectors = problem_from_integer_vectors(&[vec![2.into(), 0.into()], vec![0.into(), 2.into()]]).unwrap();
    assert_eq!(density(&vectors, &opts).unwrap().exact, Some(q(1, 2)));
}

#[test]
fn realization_text_names_the_group() {
    let text = realize_as_compact_group(&Lattice::from_i64(2, &[&[1, 2]]).unwrap());
    assert!(text.contains("G = G_0 × T"));
    let r = rank1_report(&[BigInt::from(1), BigInt::from(2)], &SolverOptions::default()).unwrap();
    assert_eq!(r.exact, Some(q(1, 3)));
}
