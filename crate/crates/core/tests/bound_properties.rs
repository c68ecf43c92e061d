use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use polyperim_core::bound::objective;
use polyperim_core::{even_n_supremum, max_inscribed_triangle_perimeter, optimal_bound, supremum, Geometry};
use proptest::prelude::*;

const CASES: [(Geometry, f64); 8] = [
    (Geometry::Euclidean, 1.0),
    (Geometry::Euclidean, 3.0),
    (Geometry::Hyperbolic, 0.5),
    (Geometry::Hyperbolic, 1.0),
    (Geometry::Hyperbolic, 2.0),
    (Geometry::Spherical, 0.1),
    (Geometry::Spherical, 0.3),
    (Geometry::Spherical, FRAC_PI_4),
];

/// Chord lengths written out directly from the law of cosines of each model.
fn chord_oracle(g: Geometry, r: f64, angle: f64) -> f64 {
    match g {
        Geometry::Euclidean => 2.0 * r * (angle / 2.0).sin().abs(),
        Geometry::Hyperbolic => {
            let (c, s) = (r.cosh(), r.sinh());
            (c * c - s * s * angle.cos()).max(1.0).acosh()
        }
        Geometry::Spherical => {
            let (c, s) = (r.cos(), r.sin());
            (c * c + s * s * angle.cos()).clamp(-1.0, 1.0).acos()
        }
    }
}

fn triangle_oracle(g: Geometry, r: f64, t1: f64, t2: f64) -> f64 {
    let t3 = TAU - t1 - t2;
    if t3 < 0.0 {
        return f64::NEG_INFINITY;
    }
    chord_oracle(g, r, t1) + chord_oracle(g, r, t2) + chord_oracle(g, r, t3)
}

/// Grid scan over two free central angles, then repeated local zooms.
fn triangle_grid_max(g: Geometry, r: f64) -> f64 {
    let m = 600;
    let h = TAU / m as f64;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=m {
        for j in 0..=m {
            let (t1, t2) = (i as f64 * h, j as f64 * h);
            let v = triangle_oracle(g, r, t1, t2);
            if v > best.0 {
                best = (v, t1, t2);
            }
        }
    }
    let mut w = 2.0 * h;
    for _ in 0..40 {
        let (_, c1, c2) = best;
        let k = 20;
        for i in 0..=k {
            for j in 0..=k {
                let t1 = c1 - w + 2.0 * w * i as f64 / k as f64;
                let t2 = c2 - w + 2.0 * w * j as f64 / k as f64;
                let v = triangle_oracle(g, r, t1, t2);
                if v > best.0 {
                    best = (v, t1, t2);
                }
            }
        }
        w *= 0.3;
    }
    best.0
}

#[test]
fn optimum_dominates_random_phi() {
    let mut rng_state = 0x9e37_79b9_7f4a_7c15_u64;
    let mut next = || {
        // xorshift64*, enough for spreading samples over (0, pi/2)
        rng_state ^= rng_state >> 12;
        rng_state ^= rng_state << 25;
        rng_state ^= rng_state >> 27;
        (rng_state.wrapping_mul(0x2545_f491_4f6c_dd1d) >> 11) as f64 / (1u64 << 53) as f64
    };
    for (g, r) in CASES {
        for n in [3, 5, 7, 11, 21] {
            let b = optimal_bound(g, r, n).unwrap();
            for _ in 0..1000 {
                let phi = (next() * FRAC_PI_2).max(1e-12);
                let v = objective(g, r, n, phi).unwrap();
                assert!(b.value >= v - 1e-12 * b.value, "{g} r={r} n={n} phi={phi}: {v} > {}", b.value);
            }
        }
    }
}

#[test]
fn returned_fields_are_consistent() {
    for (g, r) in CASES {
        for n in (3..=41).step_by(2) {
            let b = optimal_bound(g, r, n).unwrap();
            assert!((b.central_angle_alpha + 2.0 * b.central_angle_beta - TAU).abs() < 1e-12);
            assert!((b.value - ((n - 2) as f64 * b.alpha + 2.0 * b.beta)).abs() <= 1e-12 * b.value);
            assert!((b.alpha - chord_oracle(g, r, b.central_angle_alpha)).abs() < 1e-12);
            assert!((b.beta - chord_oracle(g, r, b.central_angle_beta)).abs() < 1e-12);
            if n == 3 {
                assert!((b.alpha - b.beta).abs() < 1e-9, "{g} r={r}: {} vs {}", b.alpha, b.beta);
            } else {
                assert!(b.alpha > b.beta, "{g} r={r} n={n}: {} <= {}", b.alpha, b.beta);
            }
        }
    }
}

#[test]
fn alpha_at_least_beta_on_a_radius_grid() {
    for g in Geometry::ALL {
        let rmax = match g {
            Geometry::Spherical => FRAC_PI_4,
            _ => 4.0,
        };
        for k in 1..=12 {
            let r = rmax * k as f64 / 12.0;
            for n in (3..=41).step_by(2) {
                let b = optimal_bound(g, r, n).unwrap();
                if n == 3 {
                    assert!((b.alpha - b.beta).abs() < 1e-9);
                } else {
                    assert!(b.alpha > b.beta, "{g} r={r} n={n}");
                }
            }
        }
    }
}

#[test]
fn strictly_increasing_in_n_and_r() {
    for (g, r) in CASES {
        let values: Vec<f64> = (3..=41).step_by(2).map(|n| optimal_bound(g, r, n).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]), "{g} r={r}: {values:?}");
    }
    for g in Geometry::ALL {
        let rmax = match g {
            Geometry::Spherical => 1.5,
            _ => 5.0,
        };
        for n in [3, 5, 9] {
            let values: Vec<f64> =
                (1..=30).map(|k| optimal_bound(g, rmax * k as f64 / 30.0, n).unwrap().value).collect();
            assert!(values.windows(2).all(|w| w[1] > w[0]), "{g} n={n}: {values:?}");
        }
    }
}

#[test]
fn triangle_is_equilateral_and_stationary() {
    for (g, r) in CASES {
        let b = optimal_bound(g, r, 3).unwrap();
        assert!((b.phi - PI / 3.0).abs() < 1e-9, "{g} r={r}: phi {}", b.phi);
        // The objective is flat at pi/3 to first order.
        let h = 1e-5;
        let d = objective(g, r, 3, PI / 3.0 + h).unwrap() - objective(g, r, 3, PI / 3.0 - h).unwrap();
        assert!(d.abs() / (2.0 * h) < 1e-6, "{g} r={r}: slope {}", d / (2.0 * h));
        let tri = max_inscribed_triangle_perimeter(g, r).unwrap();
        assert!((tri - b.value).abs() < 1e-12 * tri.max(1.0));
    }
}

#[test]
fn max_triangle_matches_two_angle_grid() {
    for (g, r) in [(Geometry::Hyperbolic, 2.0), (Geometry::Euclidean, 1.0), (Geometry::Spherical, 0.5), (Geometry::Spherical, 1.4)] {
        let oracle = triangle_grid_max(g, r);
        let got = max_inscribed_triangle_perimeter(g, r).unwrap();
        assert!((got - oracle).abs() <= 1e-7, "{g} r={r}: {got} vs {oracle}");
    }
}

#[test]
fn spherical_triangle_tends_to_a_great_circle() {
    let s = max_inscribed_triangle_perimeter(Geometry::Spherical, FRAC_PI_2 - 1e-9).unwrap();
    assert!((s - TAU).abs() < 1e-6);
    assert!(max_inscribed_triangle_perimeter(Geometry::Spherical, FRAC_PI_2).is_err());
}

#[test]
fn small_radius_bounds_approach_the_plane() {
    let r = 1e-3;
    for n in [3, 5, 7, 9] {
        let e = optimal_bound(Geometry::Euclidean, r, n).unwrap().value;
        for g in [Geometry::Hyperbolic, Geometry::Spherical] {
            let v = optimal_bound(g, r, n).unwrap().value;
            let rel = (v / e - 1.0).abs();
            // Curvature enters at relative order r^2 / 6.
            assert!(rel <= r * r / 6.0, "{g} n={n}: relative deviation {rel:e}");
        }
    }
}

#[test]
fn hyperbolic_exceeds_and_spherical_trails_the_plane() {
    for n in [3, 5, 7] {
        for r in [0.1, 0.5, 0.7] {
            let e = optimal_bound(Geometry::Euclidean, r, n).unwrap().value;
            assert!(optimal_bound(Geometry::Hyperbolic, r, n).unwrap().value > e);
            assert!(optimal_bound(Geometry::Spherical, r, n).unwrap().value < e);
        }
    }
}

#[test]
fn supremum_dispatches_on_parity() {
    for (g, r) in CASES {
        assert_eq!(supremum(g, r, 6).unwrap(), even_n_supremum(g, r, 6).unwrap());
        assert!((supremum(g, r, 6).unwrap() - 12.0 * r).abs() < 1e-12 * r.max(1.0));
        assert_eq!(supremum(g, r, 7).unwrap(), optimal_bound(g, r, 7).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bound_sits_between_triangle_and_diameter_walk(
        gi in 0usize..3,
        rf in 0.01f64..1.0,
        k in 1usize..20,
    ) {
        let g = Geometry::ALL[gi];
        let r = match g {
            Geometry::Spherical => rf * FRAC_PI_4,
            _ => rf * 3.0,
        };
        let n = 2 * k + 1;
        let b = optimal_bound(g, r, n).unwrap();
        // Beaten by any single inscribed configuration, beats nothing longer
        // than n diameters.
        let equilateral = n as f64 * chord_oracle(g, r, TAU / 3.0);
        prop_assert!(b.value >= equilateral - 1e-12 * equilateral);
        prop_assert!(b.value < n as f64 * 2.0 * r);
        prop_assert!(b.phi > 0.0 && b.phi < FRAC_PI_2);
    }

    #[test]
    fn optimum_beats_its_neighbours(
        gi in 0usize..3,
        rf in 0.05f64..1.0,
        k in 1usize..20,
        h in 1e-6f64..1e-2,
    ) {
        let g = Geometry::ALL[gi];
        let r = match g {
            Geometry::Spherical => rf * FRAC_PI_4,
            _ => rf * 3.0,
        };
        let n = 2 * k + 1;
        let b = optimal_bound(g, r, n).unwrap();
        for phi in [b.phi - h, b.phi + h] {
            if phi > 0.0 && phi < FRAC_PI_2 {
                prop_assert!(objective(g, r, n, phi).unwrap() <= b.value + 1e-12 * b.value);
            }
        }
    }
}
