use std::f64::consts::{PI, TAU};

use szego_core::arcs::ArcSet;
use szego_core::measures::{schur_from_measure, Density, MeasureSpec, MixtureComponent};
use szego_core::sof::{SofContext, SofFamilySpec, SofMode};
use szego_core::support::{gap_zero_census, support_estimate, zero_cloud};

fn half_circle_arc() -> MeasureSpec {
    MeasureSpec::ArcDensity {
        density: Density::Uniform,
        lo: PI / 2.0,
        hi: 1.5 * PI,
        panels: 16,
    }
}

fn context(spec: &MeasureSpec, n: usize) -> SofContext {
    SofContext::new(&schur_from_measure(spec, n).unwrap(), n).unwrap()
}

#[test]
fn arc_support_is_sandwiched() {
    let eps = 0.15;
    let est = support_estimate(&half_circle_arc(), &[0.0], 32, eps, None).unwrap();
    let truth = ArcSet::arc(PI / 2.0, 1.5 * PI);
    let got = est.set();
    assert!(got.contains_set(&truth), "{:?}", est.arcs);
    assert!(truth.thicken(2.0 * eps).contains_set(&got), "{:?}", est.arcs);
    assert!(!got.contains_point(0.0));
}

#[test]
fn at_most_one_zero_in_the_gap() {
    let ctx = context(&half_circle_arc(), 32);
    for mode in [SofMode::F1, SofMode::F2, SofMode::Combo { a1: 1.0, a2: -0.7 }] {
        let cloud = zero_cloud(&ctx, &SofFamilySpec::anchored(0.0, mode.clone()), 1..=32).unwrap();
        for (n, count) in gap_zero_census(&cloud, (1.5 * PI + 1e-9, TAU + PI / 2.0 - 1e-9)) {
            assert!(count <= 1, "{mode:?} order {n}: {count}");
            if mode == SofMode::F1 {
                assert_eq!(count, 1);
            }
        }
    }
}

#[test]
fn two_gaps_are_both_excluded() {
    let arc = |lo: f64, hi: f64| MixtureComponent {
        weight: 0.5,
        measure: MeasureSpec::ArcDensity {
            density: Density::Uniform,
            lo,
            hi,
            panels: 16,
        },
    };
    let spec = MeasureSpec::Mixture {
        components: vec![arc(0.5, 2.5), arc(3.5, 5.5)],
    };
    let eps = 0.2;
    let est = support_estimate(&spec, &[3.0, 6.0], 32, eps, None).unwrap();
    let got = est.set();
    for gap_point in [3.0, 6.0, 0.1, 2.9, 3.1] {
        assert!(!got.contains_point(gap_point), "{gap_point} in {:?}", est.arcs);
    }
    for inside in [1.0, 1.5, 2.0, 4.0, 4.5, 5.0] {
        assert!(got.contains_point(inside), "{inside} not in {:?}", est.arcs);
    }
}

#[test]
fn atom_is_kept() {
    let spec = MeasureSpec::Mixture {
        components: vec![
            MixtureComponent {
                weight: 0.7,
                measure: half_circle_arc(),
            },
            MixtureComponent {
                weight: 0.3,
                measure: MeasureSpec::Atomic { atoms: vec![(5.5, 1.0)] },
            },
        ],
    };
    let ctx = context(&spec, 32);
    let cloud = zero_cloud(&ctx, &SofFamilySpec::anchored(0.0, SofMode::F1), 1..=32).unwrap();
    let acc = szego_core::support::accumulation_set(&cloud, 0.15, 16);
    assert!(acc.contains_point(5.5), "{:?}", acc.to_arcs());
}
