use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use szego_core::cis;
use szego_core::measures::{moments, schur_from_measure, Density, MeasureSpec};
use szego_core::opuc::build_opuc;
use szego_core::para::{discrete_measure, make_pop, make_rule, pop_zeros, weights_via_integral};

fn poisson(a: Complex64) -> MeasureSpec {
    MeasureSpec::Density {
        density: Density::BernsteinSzego { a: [a.re, a.im] },
        grid: 512,
    }
}

// The Poisson kernel has c_m = a^m for m >= 0, which the rule must reproduce
// for |m| < n whatever the invariance parameter.
#[test]
fn poisson_moments_are_reproduced() {
    let a = Complex64::new(0.4, -0.3);
    let schur = schur_from_measure(&poisson(a), 10).unwrap();
    let table = build_opuc(&schur, 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=10 {
        let beta = cis(rng.gen_range(-PI..PI));
        let pop = make_pop(&table, n, Complex64::new(1.0, 0.0), beta).unwrap();
        let rule = make_rule(&table, &pop, 0.0).unwrap();
        for m in 0..n as i32 {
            let exact = a.powi(m);
            assert!((rule.moment(m as i64) - exact).norm() < 1e-12, "n {n} m {m}");
            assert!((rule.moment(-(m as i64)) - exact.conj()).norm() < 1e-12, "n {n} m {}", -m);
        }
    }
}

#[test]
fn weights_are_positive_and_sum_to_one() {
    let spec = MeasureSpec::Density {
        density: Density::VonMises { kappa: 2.5, center: 1.0 },
        grid: 512,
    };
    let table = build_opuc(&schur_from_measure(&spec, 12).unwrap(), 12).unwrap();
    let pop = make_pop(&table, 12, Complex64::new(1.0, 0.0), cis(0.3)).unwrap();
    let rule = make_rule(&table, &pop, -PI).unwrap();
    assert!(rule.weights.iter().all(|&h| h > 0.0));
    let dm = discrete_measure(&rule);
    assert!((dm.total_mass() - 1.0).abs() < 1e-12);
    // a trigonometric polynomial of degree 11 is integrated exactly
    let f = |t: f64| (3.0 * t).cos() + 0.5 * (11.0 * t - 0.2).sin() + 2.0;
    assert!((rule.apply(&f) - spec.integrate(&f)).abs() < 1e-11);
}

#[test]
fn integral_weights_agree_for_every_shift() {
    let spec = MeasureSpec::Density {
        density: Density::OneMinusCos { center: 0.7 },
        grid: 512,
    };
    let n = 8;
    let table = build_opuc(&schur_from_measure(&spec, n).unwrap(), n).unwrap();
    let m = moments(&spec, 2 * n).unwrap();
    let pop = make_pop(&table, n, Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)).unwrap();
    let rule = make_rule(&table, &pop, 0.0).unwrap();
    for p in 0..n {
        let h = weights_via_integral(&rule, &m, p).unwrap();
        for (a, b) in h.iter().zip(&rule.weights) {
            assert!((a - b).abs() < 1e-10, "p {p}: {a} vs {b}");
        }
    }
    assert!(weights_via_integral(&rule, &m, n).is_err());
}

#[test]
fn pop_zeros_are_roots_of_the_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a = (0..9)
        .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(-PI..PI)))
        .collect();
    let schur = szego_core::opuc::SchurSequence::new(a).unwrap();
    let table = build_opuc(&schur, 9).unwrap();
    let pop = make_pop(&table, 9, cis(0.4), cis(-1.3)).unwrap();
    let zeros = pop_zeros(&pop, 2.0).unwrap();
    assert_eq!(zeros.len(), 9);
    assert!(zeros.iter().all(|&t| (2.0..2.0 + 2.0 * PI).contains(&t)));
    let scale = pop.poly.l1_norm();
    for t in zeros {
        assert!(pop.poly.eval(cis(t)).norm() < 1e-12 * scale);
    }
}
