use std::sync::Arc;

use blockset_core::bounds::{outer_length_lower, sbs_lower};
use blockset_core::codes::{ab_condition, code_is_minimal, min_distance, LinearCode, MinimalityEngine};
use blockset_core::concat::concatenate;
use blockset_core::construct::{
    diverted_tangent_set, four_point_selection, super_construction, tetrahedron, CertStatus,
};
use blockset_core::gfield::{make_tower, Field};
use blockset_core::linpro::rank;
use blockset_core::repro::random_code;
use blockset_core::verify::{code_is_outer_minimal, is_outer_sbs, is_sbs};
use blockset_core::{Caps, Elem, FieldTower, Mat, ProjSystem};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn flat(q: u32) -> Arc<Field> {
    FieldTower::flat(q).unwrap().base().clone()
}

fn minimal(c: &LinearCode, e: MinimalityEngine) -> bool {
    code_is_minimal(c, e, &Caps::default()).unwrap().verdict
}

/// (q, k, n) with q^k small enough for exhaustive codeword scans.
fn shape() -> impl Strategy<Value = (u32, usize, usize, u64)> {
    prop::sample::select(vec![
        (2u32, 3usize),
        (2, 4),
        (3, 3),
        (4, 2),
        (4, 3),
        (5, 2),
        (7, 2),
        (8, 2),
    ])
    .prop_flat_map(|(q, k)| (Just(q), Just(k), k..k + 9, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn minimality_engines_agree((q, k, n, seed) in shape()) {
        let f = flat(q);
        let c = random_code(&mut ChaCha8Rng::seed_from_u64(seed), &f, k, n);
        let pair = minimal(&c, MinimalityEngine::Pairwise);
        prop_assert_eq!(pair, minimal(&c, MinimalityEngine::Geometric));
        if pair {
            let d = min_distance(&c, u64::MAX).unwrap() as u32;
            prop_assert!(d > (q - 1) * (k as u32 - 1));
        }
        if ab_condition(&c, u64::MAX).unwrap().2 {
            prop_assert!(pair);
        }
    }

    #[test]
    fn minimality_survives_scaling_and_permutation((q, k, n, seed) in shape()) {
        let f = flat(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_code(&mut rng, &f, k, n);
        let g = c.generator();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let cols: Vec<Vec<Elem>> = order
            .iter()
            .map(|&j| {
                let s = rng.gen_range(1..q);
                g.column(j).iter().map(|&x| f.mul(s, x)).collect()
            })
            .collect();
        let d = LinearCode::new(f.clone(), Mat::from_columns(&cols, k)).unwrap();
        prop_assert_eq!(minimal(&c, MinimalityEngine::Pairwise), minimal(&d, MinimalityEngine::Pairwise));
        prop_assert_eq!(min_distance(&c, u64::MAX).unwrap(), min_distance(&d, u64::MAX).unwrap());
    }

    #[test]
    fn adding_points_keeps_blocking((q, k, n, seed) in shape()) {
        let f = flat(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_code(&mut rng, &f, k, n);
        let mut cols: Vec<Vec<Elem>> = (0..n).map(|j| c.generator().column(j)).collect();
        for _ in 0..3 {
            let mut v: Vec<Elem> = (0..k).map(|_| rng.gen_range(0..q)).collect();
            v[0] = 1;
            cols.push(v);
        }
        let bigger = LinearCode::new(f.clone(), Mat::from_columns(&cols, k)).unwrap();
        if minimal(&c, MinimalityEngine::Geometric) {
            prop_assert!(minimal(&bigger, MinimalityEngine::Geometric));
        }
    }
}

#[test]
fn minimal_codes_are_outer_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let caps = Caps::default();
    let mut seen = 0;
    for (p, m, h, k, n) in [(2, 1, 2, 2, 14), (2, 1, 2, 3, 24), (3, 1, 2, 2, 24), (2, 1, 3, 2, 24)] {
        let t = make_tower(p, m, h).unwrap();
        for _ in 0..40 {
            let c = random_code(&mut rng, t.top(), k, n);
            if minimal(&c, MinimalityEngine::Pairwise) {
                seen += 1;
                assert!(code_is_outer_minimal(&t, &c, &caps).unwrap().verdict);
            }
        }
    }
    assert!(seen > 10, "only {seen} minimal samples");
}

fn random_inner(rng: &mut ChaCha8Rng, f: &Arc<Field>, h: usize, n: usize) -> LinearCode {
    loop {
        let c = random_code(rng, f, h, n);
        if rank(f, c.generator()) == h {
            return c;
        }
    }
}

#[test]
fn concatenation_distance_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, m, h, k, n, n_in) in [
        (2, 1, 2usize, 2, 4, 3),
        (2, 1, 3, 2, 5, 5),
        (3, 1, 2, 2, 4, 4),
        (2, 1, 2, 3, 6, 4),
    ] {
        let t = make_tower(p, m, h as u32).unwrap();
        for _ in 0..15 {
            let outer = random_code(&mut rng, t.top(), k, n);
            let inners: Vec<LinearCode> = (0..n).map(|_| random_inner(&mut rng, t.base(), h, n_in)).collect();
            let d_in = inners.iter().map(|c| min_distance(c, u64::MAX).unwrap()).min().unwrap();
            let big_d = min_distance(&outer, u64::MAX).unwrap();
            let c = concatenate(&t, &outer, &inners).unwrap();
            assert_eq!(c.k(), k * h);
            assert_eq!(c.n(), n * n_in);
            assert!(min_distance(&c, u64::MAX).unwrap() >= big_d * d_in);
        }
    }
}

#[test]
fn constructions_respect_the_lower_bound() {
    let caps = Caps::default();
    for (k, q) in [(3usize, 2u32), (4, 2), (3, 3), (4, 3), (3, 4), (5, 2), (3, 5)] {
        let f = flat(q);
        let tet = tetrahedron(k, &f).unwrap();
        assert!(is_sbs(&tet, &caps).unwrap().verdict);
        assert!(tet.len() as u64 >= sbs_lower(k as u64, q as u64));
    }
    for (k, q) in [(3usize, 4u32), (3, 5), (3, 7), (4, 5)] {
        let s = diverted_tangent_set(k, &flat(q), true, &caps).unwrap();
        assert_eq!(s.certificate.status, CertStatus::Verified);
        assert!(s.union.len() as u64 >= sbs_lower(k as u64, q as u64));
    }
    for q in [2u32, 3] {
        let s = super_construction(q, 1, true, &caps).unwrap();
        assert!(s.certificate.holds());
        assert!(s.points.len() as u64 >= sbs_lower(s.k as u64, q as u64));
    }
}

#[test]
fn outer_sets_respect_the_lower_bound() {
    let caps = Caps::default();
    for (p, m, h, big_k) in [
        (2, 1, 2, 2usize),
        (3, 1, 2, 2),
        (2, 1, 3, 2),
        (2, 1, 2, 3),
        (3, 1, 2, 3),
    ] {
        let t = make_tower(p, m, h).unwrap();
        let tangent = diverted_tangent_set(big_k, t.top(), false, &caps).unwrap();
        let pts: ProjSystem = four_point_selection(&t, &tangent.lines).unwrap();
        assert!(is_outer_sbs(&t, &pts, &caps).unwrap().verdict);
        let lower = outer_length_lower(big_k as u64, h as u64, t.q() as u64).unwrap();
        assert!(pts.len() as u64 >= lower, "{} < {lower}", pts.len());
    }
}
