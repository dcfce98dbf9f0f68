mod common;

use std::f64::consts::PI;

use proptest::prelude::*;

use platycosm::euclid_group::Preset;
use platycosm::exact::{self, q, qi};
use platycosm::selberg::{
    cylinder_density, cylinder_term, exercise_identity, geometric_heat_trace, spectral_heat_trace,
    twisted_cylinder_volume, CountingFunction, HeatTraceConfig,
};

const TWISTS: [f64; 4] = [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI];

#[test]
fn simpson_integrates_gaussian() {
    let v = common::adaptive_simpson(&|x: f64| (-x * x).exp(), 0.0, 8.0, 1e-14);
    assert!((v - PI.sqrt() / 2.0).abs() < 1e-13);
}

#[test]
fn counting_function_is_isospectral() {
    let tetra = CountingFunction::new(&Preset::Tetra.presentation(), qi(5)).unwrap();
    let didi = CountingFunction::new(&Preset::Didi.presentation(), qi(5)).unwrap();
    for i in 0..=40 {
        let s = q(i, 8);
        let (a, b) = (tetra.eval(s).unwrap(), didi.eval(s).unwrap());
        assert_eq!(a.jump, b.jump, "lattice part at s={s}");
        assert_eq!(a.cylinder_over_pi, b.cylinder_over_pi, "cylinder part at s={s}");
    }
}

#[test]
fn counting_function_is_monotone() {
    for preset in Preset::ALL {
        let p = preset.presentation();
        let n = CountingFunction::new(&p, qi(4)).unwrap();
        assert_eq!(n.eval(q(1, 1000)).unwrap().jump, p.volume());
        let mut prev = 0.0;
        for i in 0..=200 {
            let v = n.eval(q(i, 50)).unwrap().total();
            assert!(v >= prev, "{preset} at {i}/50");
            prev = v;
        }
    }
}

#[test]
fn heat_trace_decreases_to_one() {
    for preset in [Preset::Tetra, Preset::Didi, Preset::TwoTall] {
        let p = preset.presentation();
        let mut prev = f64::INFINITY;
        for t in [0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2] {
            let k = spectral_heat_trace(&p, &HeatTraceConfig::new(t, 1e-13)).unwrap().value;
            // strictly smaller until the excess over 1 drops below an ulp
            assert!(k < prev || (k == prev && k - 1.0 <= f64::EPSILON), "{preset} t={t}");
            prev = k;
        }
        let far = spectral_heat_trace(&p, &HeatTraceConfig::new(50.0, 1e-13)).unwrap().value;
        assert!((far - 1.0).abs() < 1e-15);
    }
}

#[test]
fn weyl_leading_term() {
    for preset in [Preset::Tetra, Preset::Didi, Preset::TwoTall] {
        let p = preset.presentation();
        let t = 0.01;
        let k = spectral_heat_trace(&p, &HeatTraceConfig::new(t, 1e-6)).unwrap().value;
        let vol = exact::to_f64(&p.volume());
        let ratio = k * (4.0 * PI * t).powf(1.5) / vol;
        assert!((ratio - 1.0).abs() < 0.05, "{preset}: ratio {ratio}");
    }
}

#[test]
fn bounds_cover_truncation() {
    let p = Preset::Didi.presentation();
    for t in [0.05, 0.3, 1.0] {
        let fine = spectral_heat_trace(&p, &HeatTraceConfig::new(t, 1e-14)).unwrap();
        for eps in [1e-3, 1e-6, 1e-9] {
            let cfg = HeatTraceConfig::new(t, eps);
            let s = spectral_heat_trace(&p, &cfg).unwrap();
            let g = geometric_heat_trace(&p, &cfg).unwrap();
            assert!((s.value - fine.value).abs() <= s.bound + fine.bound);
            assert!((g.value - fine.value).abs() <= g.bound + fine.bound);
        }
    }
}

#[test]
fn poisson_summation_on_the_cube() {
    let p = Preset::CubicalTorocosm.presentation();
    for t in [0.03, 0.2, 1.0, 2.5] {
        let cfg = HeatTraceConfig::new(t, 1e-12);
        let spec = spectral_heat_trace(&p, &cfg).unwrap();
        let geom = geometric_heat_trace(&p, &cfg).unwrap();
        let images = common::cubic_image_sum(t);
        assert!((spec.value - images).abs() < 1e-12, "t={t}");
        assert!((geom.value - images).abs() < 1e-12, "t={t}");
    }
}

#[test]
fn exercise_is_antisymmetric() {
    let e = exercise_identity(0.2, 1e-12).unwrap();
    assert_eq!(e.rhs - e.lhs, -e.residual());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_quadrature(
        h in 0.05f64..3.0,
        which in 0usize..4,
        k in 1u32..8,
        t in 0.05f64..2.0,
        extra in 0.1f64..6.0,
    ) {
        let theta = TWISTS[which];
        let upper = h + extra;
        let closed = cylinder_term(h, theta, k, t, Some(upper)).unwrap();
        let density = |s: f64| cylinder_density(h, theta, k, t, s).unwrap();
        let quad = common::adaptive_simpson(&density, h, upper, 1e-14 * closed.abs().max(1e-300));
        prop_assert!((closed - quad).abs() <= 1e-12 * closed.abs(), "{} vs {}", closed, quad);
    }

    #[test]
    fn twist_enters_only_through_sine(h in 0.05f64..3.0, k in 1u32..8, t in 0.05f64..2.0, s in 0.0f64..8.0) {
        let scaled: Vec<f64> = TWISTS
            .iter()
            .map(|&th| cylinder_term(h, th, k, t, None).unwrap() * (th / 2.0).sin().powi(2))
            .collect();
        for x in &scaled {
            prop_assert!((x - scaled[3]).abs() <= 1e-14 * scaled[3].abs());
        }
        let vq = twisted_cylinder_volume(h, PI / 2.0, s.max(h)).unwrap();
        let vh = twisted_cylinder_volume(h, PI, s.max(h)).unwrap();
        prop_assert!((vq - 2.0 * vh).abs() <= 1e-15 * vq.abs());
    }
}
