//! Regression values for the bundled example meshes: gluing polynomials,
//! branch routing, dimension tables, and collocation conditioning.

use c1glue::basisgen::Collocation;
use c1glue::polyalg::Poly;
use c1glue::rat::{rat, rat_int, Rational};
use c1glue::verify::condition_number;
use c1glue::{example_mesh, ScalingMode, TraceNormalSpace, EXAMPLE_NAMES};

fn poly(cs: &[(i64, i64)]) -> Poly {
    Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn space(name: &str, d: usize) -> TraceNormalSpace {
    let mesh = example_mesh(name).unwrap();
    TraceNormalSpace::build(&mesh, d).unwrap_or_else(|e| panic!("{name} d={d}: {e}"))
}

#[test]
fn gluing_polynomials_of_the_first_example() {
    let sp = space("ex1-generic", 3);
    let g = &sp.gluing;
    assert_eq!(g.alpha_tilde[0], poly(&[(6, 5), (-11, 10), (7, 5)]));
    assert_eq!(
        g.alpha_tilde[1],
        poly(&[(-17, 15), (-22, 15), (31, 15), (-2, 3)])
    );
    assert_eq!(g.beta, poly(&[(5, 4), (-1, 1), (1, 1)]));
    assert_eq!(g.beta_l[0], poly(&[(1, 10), (2, 5)]));
    assert_eq!(
        g.beta_l[1],
        poly(&[(-16, 15), (79, 30), (-1, 5), (-4, 15)])
    );
    assert_eq!(g.gamma, poly(&[(1, 1)]));
    assert_eq!(g.alpha_l[0], g.alpha_tilde[0]);
    assert_eq!(g.alpha_l[1], g.alpha_tilde[1]);
    assert_eq!(g.alpha_hat[0], poly(&[(-11, 20), (3, 10)]));
    assert_eq!(g.alpha_hat[1], poly(&[(-173, 60), (23, 30)]));
    assert_eq!(g.beta_hat[0], poly(&[(1, 10), (2, 5)]));
    assert_eq!(g.beta_hat[1], poly(&[(-29, 60), (5, 2)]));
    assert_eq!(g.alpha_star[0], poly(&[(7, 5)]));
    assert_eq!(g.hat_cross_constant().unwrap(), rat(133, 300));
}

#[test]
fn branch_routing_of_all_examples() {
    let expected = [
        ("ex1-generic", "c", "generic"),
        ("ex1-special-c", "c", "generic"),
        ("ex1-special-c1", "c", "proportional-rows-alpha"),
        ("ex1-gamma-quadratic", "c", "generic"),
        ("ex1-gamma-beta", "c", "beta-hats-zero"),
        ("ex2-generic", "b", "1"),
        ("ex2-case2", "b", "2"),
        ("ex2-choice3", "b", "1"),
        ("ex2-choice4", "b", "2"),
        ("ex3", "a", "1"),
    ];
    for (name, case, branch) in expected {
        let sp = space(name, 4);
        assert_eq!(sp.branch.case_label(), case, "{name}");
        assert_eq!(sp.branch.branch_name(), branch, "{name}");
    }
}

#[test]
fn dimension_tables_for_degrees_two_through_six() {
    // totals at d = 2..6 and interface counts per mesh family
    let families: [(&[&str], [usize; 5], fn(usize) -> usize); 3] = [
        (
            &["ex1-generic", "ex2-generic", "ex3"],
            [7, 16, 28, 43, 61],
            |d| 2 * d - 1,
        ),
        (
            &["ex1-special-c", "ex1-special-c1", "ex2-case2", "ex2-choice3"],
            [8, 17, 29, 44, 62],
            |d| 2 * d,
        ),
        (
            &["ex1-gamma-quadratic", "ex1-gamma-beta", "ex2-choice4"],
            [9, 18, 30, 45, 63],
            |d| 2 * d + 1,
        ),
    ];
    for (names, totals, interface) in families {
        for name in names {
            for (k, d) in (2..=6).enumerate() {
                let dims = space(name, d).dimensions();
                assert_eq!(dims.total, totals[k], "{name} d={d}");
                assert_eq!(dims.interface, interface(d), "{name} d={d}");
            }
        }
    }
}

#[test]
fn parameter_split_at_degree_six() {
    let expected = [
        ("ex1-generic", 3, 5, 4, 2),
        ("ex1-special-c", 4, 5, 5, 2),
        ("ex1-special-c1", 4, 5, 5, 2),
        ("ex1-gamma-quadratic", 5, 5, 6, 2),
        ("ex1-gamma-beta", 5, 5, 6, 2),
        ("ex2-generic", 4, 6, 5, 0),
        ("ex2-case2", 4, 7, 5, 0),
        ("ex2-choice3", 5, 6, 6, 0),
        ("ex2-choice4", 5, 7, 6, 0),
        ("ex3", 4, 6, 5, 0),
    ];
    for (name, d_omega, n_theta, n_omega, n_mu) in expected {
        let dims = space(name, 6).dimensions();
        assert_eq!(dims.d_omega, d_omega, "{name}");
        assert_eq!(dims.n_theta, n_theta, "{name}");
        assert_eq!(dims.n_omega, n_omega, "{name}");
        assert_eq!(dims.n_mu, n_mu, "{name}");
    }
}

#[test]
fn skew_constants_of_the_second_example() {
    let sp = space("ex2-case2", 4);
    let cs = sp.skew_constants.as_ref().unwrap();
    assert_eq!(cs[0], rat(1, 3));
    assert_eq!(cs[1], rat(2, 45));
    assert_eq!(cs[2], rat(-32, 15));
    assert_eq!(cs[3], rat(-64, 225));

    let sp = space("ex2-choice4", 4);
    let cs = sp.skew_constants.as_ref().unwrap();
    assert_eq!(cs[0], rat(1, 2));
    assert_eq!(cs[1], rat(-59, 45));
    assert_eq!(cs[2], rat_int(0));
    assert_eq!(cs[3], rat_int(0));
}

#[test]
fn collocation_condition_numbers() {
    let cases = [
        ("ex1-generic", 6, 40.3481),
        ("ex1-generic", 7, 37.1648),
        ("ex1-special-c", 6, 236.9764),
    ];
    for (name, d, expected) in cases {
        let sp = space(name, d);
        let coll = Collocation::build(&sp, ScalingMode::Weighted).unwrap();
        let cond = condition_number(&coll.matrix);
        assert!(
            (cond - expected).abs() < 1e-3,
            "{name} d={d}: {cond} vs {expected}"
        );
    }
}

#[test]
fn collocation_is_square_and_nonsingular_corpus_wide() {
    for name in EXAMPLE_NAMES {
        for d in [3, 5, 6] {
            let sp = space(name, d);
            let coll = Collocation::build(&sp, ScalingMode::Weighted)
                .unwrap_or_else(|e| panic!("{name} d={d}: {e}"));
            let n = sp.n_theta + sp.n_omega;
            assert_eq!(coll.matrix.len(), n, "{name} d={d}");
            assert!(coll.matrix.iter().all(|r| r.len() == n));
            let cond = condition_number(&coll.matrix);
            assert!(cond.is_finite(), "{name} d={d}: singular block");
        }
    }
}

#[test]
fn gamma_stays_normalized_at_zero_for_the_corpus() {
    for name in EXAMPLE_NAMES {
        let sp = space(name, 3);
        let g0 = sp.gluing.gamma.eval(&Rational::from_integer(0.into()));
        assert_eq!(g0, rat_int(1), "{name}");
    }
}
