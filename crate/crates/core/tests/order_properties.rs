use std::f64::consts::TAU;

use polyperim_core::order::chain_crosses_segment;
use polyperim_core::{
    find_nonalternating_pair, random_simple_polygon, Disk, GPoint, Geometry, Isometry, OrderRel,
    ProjectionOrderContext, SignSequence,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn disk_for(g: Geometry) -> Disk {
    let r = match g {
        Geometry::Euclidean => 1.0,
        Geometry::Hyperbolic => 1.0,
        Geometry::Spherical => 0.6,
    };
    Disk::centered(g, r).unwrap()
}

/// A random isometry: an optional reflection, a rotation about the origin,
/// then a translation to a random point.
fn random_isometry(g: Geometry, rng: &mut ChaCha8Rng) -> Isometry {
    let rot = Isometry::rotation(g, rng.gen::<f64>() * TAU);
    let d = match g {
        Geometry::Spherical => rng.gen::<f64>() * 1.2,
        _ => rng.gen::<f64>() * 2.0,
    };
    let angle = rng.gen::<f64>() * TAU;
    let target = g.exp_origin(d * angle.cos(), d * angle.sin());
    let mut iso = Isometry::translation_to(g, target).compose(&rot);
    if rng.gen::<bool>() {
        iso = iso.compose(&Isometry::reflection(g));
    }
    iso
}

fn context(g: Geometry, disk: &Disk, p: GPoint, q: GPoint) -> ProjectionOrderContext {
    ProjectionOrderContext::new(g, p, q, *disk).unwrap()
}

fn distinct_pair(disk: &Disk, rng: &mut ChaCha8Rng) -> (GPoint, GPoint) {
    let g = disk.geometry();
    loop {
        let p = disk.sample_uniform(rng);
        let q = disk.sample_uniform(rng);
        if g.distance(p, q).unwrap() > 1e-3 * disk.radius() {
            return (p, q);
        }
    }
}

#[test]
fn compare_is_a_total_preorder() {
    for g in Geometry::ALL {
        let disk = disk_for(g);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let (p, q) = distinct_pair(&disk, &mut rng);
            let octx = context(g, &disk, p, q);
            let [x, y, z] = [0; 3].map(|_| disk.sample_uniform(&mut rng));
            let xy = octx.compare(x, y).unwrap();
            let yx = octx.compare(y, x).unwrap();
            match xy {
                OrderRel::Less => assert_eq!(yx, OrderRel::Greater),
                OrderRel::Greater => assert_eq!(yx, OrderRel::Less),
                OrderRel::Equal => assert_eq!(yx, OrderRel::Equal),
            }
            if octx.le(x, y).unwrap() && octx.le(y, z).unwrap() {
                assert!(octx.le(x, z).unwrap(), "{g}: transitivity failed");
            }
            assert_eq!(octx.compare(x, x).unwrap(), OrderRel::Equal);
            assert_eq!(octx.compare(p, q).unwrap(), OrderRel::Less);
        }
    }
}

#[test]
fn compare_and_crossing_are_isometry_invariant() {
    for g in Geometry::ALL {
        let disk = disk_for(g);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut crossings = 0;
        for _ in 0..1000 {
            let (p, q) = distinct_pair(&disk, &mut rng);
            let [a, b, c] = [0; 3].map(|_| disk.sample_uniform(&mut rng));
            let octx = context(g, &disk, p, q);

            let iso = random_isometry(g, &mut rng);
            let moved = Disk::new(g, iso.apply(disk.center()), disk.radius()).unwrap();
            let m = |x: GPoint| iso.apply(x);
            let mctx = context(g, &moved, m(p), m(q));

            for (x, y) in [(a, b), (b, c), (a, c), (p, b)] {
                let gap = (octx.coordinate(x).unwrap() - octx.coordinate(y).unwrap()).abs();
                if gap > 1e-8 {
                    assert_eq!(octx.compare(x, y).unwrap(), mctx.compare(m(x), m(y)).unwrap(), "{g}");
                }
            }
            let before = octx.chain_crosses(a, b, c).unwrap();
            let after = mctx.chain_crosses(m(a), m(b), m(c)).unwrap();
            assert_eq!(before, after, "{g}: chain crossing changed under an isometry");
            crossings += before as usize;
        }
        assert!(crossings > 50, "{g}: only {crossings} crossing chains sampled");
    }
}

#[test]
fn chart_center_does_not_change_crossing() {
    // The free function picks its own chart center; the context uses the
    // disk. Both must agree on generic input.
    for g in Geometry::ALL {
        let disk = disk_for(g);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let (p, q) = distinct_pair(&disk, &mut rng);
            let [a, b, c] = [0; 3].map(|_| disk.sample_uniform(&mut rng));
            let octx = context(g, &disk, p, q);
            assert_eq!(
                octx.chain_crosses(a, b, c).unwrap(),
                chain_crosses_segment(g, p, q, a, b, c).unwrap(),
                "{g}"
            );
        }
    }
}

#[test]
fn random_odd_polygons_have_a_nonalternating_pair() {
    for g in Geometry::ALL {
        let disk = disk_for(g);
        let mut found = 0;
        for seed in 0..10_000u64 {
            let n = 3 + 2 * (seed % 5) as usize;
            let poly = random_simple_polygon(&disk, n, seed).unwrap();
            let v = poly.vertices();
            let octx = context(g, &disk, v[n - 1], v[0]);
            let seq = octx.sign_sequence(v).unwrap();
            assert_eq!(seq.len(), n + 1);
            assert_eq!(seq.values()[0], 1);
            assert_eq!(seq.values()[n], 1);
            let i = find_nonalternating_pair(&seq).expect("parity guarantees a pair");
            let w = &seq.values()[i..i + 2];
            assert!((w[0] >= 0 && w[1] >= 0) || (w[0] <= 0 && w[1] <= 0));
            found += 1;
        }
        assert_eq!(found, 10_000);
    }
}

fn brute_pair(v: &[i8]) -> Option<usize> {
    (0..v.len().saturating_sub(1)).find(|&i| v[i] * v[i + 1] >= 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn pair_exists_for_even_sequences_with_equal_ends(
        inner in prop::collection::vec(-1i8..=1, 0..40),
        end in prop::sample::select(vec![-1i8, 1]),
        pad in -1i8..=1,
    ) {
        let mut v = vec![end];
        v.extend(inner);
        if v.len() % 2 == 0 {
            v.push(pad);
        }
        v.push(end);
        prop_assert_eq!(v.len() % 2, 0);
        let seq = SignSequence::from_values(v.clone()).unwrap();
        let got = find_nonalternating_pair(&seq);
        prop_assert!(got.is_some());
        prop_assert_eq!(got, brute_pair(&v));
    }

    #[test]
    fn a_zero_pins_the_pair(
        v in prop::collection::vec(-1i8..=1, 2..40),
        at in 0usize..40,
    ) {
        let mut v = v;
        let at = at % v.len();
        v[at] = 0;
        let seq = SignSequence::from_values(v.clone()).unwrap();
        let got = find_nonalternating_pair(&seq).unwrap();
        prop_assert!(got <= at.saturating_sub(1));
        prop_assert_eq!(Some(got), brute_pair(&v));
    }

    #[test]
    fn strict_alternation_has_no_pair(start in prop::sample::select(vec![-1i8, 1]), len in 0usize..40) {
        let v: Vec<i8> = (0..len).map(|i| if i % 2 == 0 { start } else { -start }).collect();
        prop_assert_eq!(find_nonalternating_pair(&SignSequence::from_values(v).unwrap()), None);
    }
}
