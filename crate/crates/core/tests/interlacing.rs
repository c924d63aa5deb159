use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use szego_core::measures::{schur_from_measure, Density, MeasureSpec};
use szego_core::opuc::SchurSequence;
use szego_core::sof::{interlace_check, sof_combo, sof_f1, sof_f2, sturm_sign_probe, SofContext, SofFamilySpec, SofMode};
use szego_core::{cis, circular_distance};

fn von_mises() -> MeasureSpec {
    MeasureSpec::Density {
        density: Density::VonMises { kappa: 1.5, center: 2.0 },
        grid: 512,
    }
}

#[test]
fn lebesgue_f1_and_f2_alternate() {
    let ctx = SofContext::new(&SchurSequence::lebesgue(7), 7).unwrap();
    let f1 = sof_f1(ctx.table(), 7, cis(0.0), 0.0).unwrap();
    let f2 = sof_f2(ctx.table(), ctx.omega(), 7, cis(0.0), 0.0).unwrap();
    // z^7 = 1 against z^7 = -1
    for (j, (a, b)) in f1.zeros.iter().zip(&f2.zeros).enumerate() {
        assert!((a - TAU * j as f64 / 7.0).abs() < 1e-12);
        assert!((b - TAU * (j as f64 + 0.5) / 7.0).abs() < 1e-12);
    }
    assert!(interlace_check(&f1.zeros, &f2.zeros, 0.0, None).ok);
}

#[test]
fn consecutive_orders_interlace_for_several_families() {
    let ctx = SofContext::new(&schur_from_measure(&von_mises(), 12).unwrap(), 12).unwrap();
    let omega0 = -0.6;
    for mode in [
        SofMode::F1,
        SofMode::F2,
        SofMode::Combo { a1: 0.3, a2: -1.2 },
    ] {
        let spec = SofFamilySpec::anchored(omega0, mode.clone());
        let exclude = (mode == SofMode::F1).then_some(omega0);
        let fam: Vec<_> = (1..=12).map(|n| sof_combo(&ctx, &spec, n).unwrap()).collect();
        for p in fam.windows(2) {
            let r = interlace_check(&p[0].zeros, &p[1].zeros, omega0, exclude);
            assert!(r.ok, "{mode:?} order {}: {:?}", p[0].order, r.witness);
        }
    }
}

#[test]
fn sturm_products_match_the_kernel() {
    let ctx = SofContext::new(&schur_from_measure(&von_mises(), 10).unwrap(), 10).unwrap();
    let omega0 = 1.1;
    let w = cis(omega0);
    for n in 1..=10 {
        let f1 = sof_f1(ctx.table(), n, w, omega0).unwrap();
        let f2 = sof_f2(ctx.table(), ctx.omega(), n, w, omega0).unwrap();
        let probe = sturm_sign_probe(&f1, &f2).unwrap();
        let zeta: Vec<f64> = f1
            .zeros
            .iter()
            .copied()
            .filter(|&t| circular_distance(t, omega0) > 1e-9)
            .collect();
        assert_eq!(probe.len(), zeta.len());
        let e = ctx.table().e(n);
        for (v, t) in probe.iter().zip(zeta) {
            let k = ctx.table().kernel_sum(n - 1, cis(t), cis(t)).unwrap().re;
            let expected = 2.0 * e * e * k;
            assert!(*v > 0.0);
            assert!((v - expected).abs() < 1e-10 * expected, "n {n}: {v} vs {expected}");
        }
    }
}

#[test]
fn swapped_pair_fails_with_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let a: Vec<Complex64> = (0..6)
        .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.6), rng.gen_range(-PI..PI)))
        .collect();
    let ctx = SofContext::new(&SchurSequence::new(a).unwrap(), 6).unwrap();
    let f = sof_f1(ctx.table(), 6, cis(0.0), 0.0).unwrap();
    let g = sof_f1(ctx.table(), 4, cis(0.0), 0.0).unwrap();
    // orders two apart cannot interlace
    let r = interlace_check(&g.zeros, &f.zeros, 0.0, Some(0.0));
    assert!(!r.ok);
    assert!(r.witness.is_some());
}
