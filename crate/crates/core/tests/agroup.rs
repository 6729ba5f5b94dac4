mod common;

use std::collections::HashSet;

use arbor::agroup::{canonical_morphism, product_a, DEFAULT_BOUND};
use arbor::gaschuetz::GaschuetzLayer;
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIXTURES: [&str; 6] = [
    Z2,
    KLEIN,
    "cyclic(3; a=1, b=2)",
    "perm(4; a=(0 1 2), b=(1 2 3))",
    "perm(5; a=(0 1 2), b=(0 1 2 3 4))",
    "tilde(klein(a=10, b=01), 3)",
];

#[test]
fn evaluation_is_a_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for spec in FIXTURES {
        let g = grp(spec);
        for _ in 0..200 {
            let (u, v) = (random_word(&mut rng, 2, 10), random_word(&mut rng, 2, 10));
            assert_eq!(g.evaluate(&u.concat(&v)), g.mul(g.evaluate(&u), g.evaluate(&v)), "{spec}");
            assert_eq!(g.evaluate(&u.inverse()), g.inverse(g.evaluate(&u)));
        }
    }
}

#[test]
fn traversal_vectors_have_the_right_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for spec in FIXTURES {
        let g = grp(spec);
        for _ in 0..50 {
            let u = random_word(&mut rng, 2, 14);
            let t = g.traversal_vector(&u);
            assert!(t.boundary_ok(&g), "{spec}: `{u}`");
            assert_eq!(t.end, g.evaluate(&u));
        }
    }
}

#[test]
fn counting_lifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut maps = Vec::new();
    let (z2, klein) = (grp(Z2), grp(KLEIN));
    maps.push((z2.clone(), klein.clone(), canonical_morphism(&klein, &z2).unwrap()));
    for (base, p, tilde) in [(Z2, 2, false), (Z2, 3, false), (Z2, 3, true), (KLEIN, 2, false), (KLEIN, 3, true)] {
        let l = GaschuetzLayer::new(grp(base), p, tilde).unwrap();
        let (h, elems) = l.materialize(DEFAULT_BOUND).unwrap();
        maps.push((l.base().clone(), h, GaschuetzLayer::projection(&elems)));
    }
    for (g, h, phi) in &maps {
        for _ in 0..100 {
            let u = random_word(&mut rng, 2, 16);
            let (tg, th) = (g.traversal_vector(&u), h.traversal_vector(&u));
            for x in 0..g.order() {
                for a in 0..2 {
                    let lifted: i64 = (0..h.order()).filter(|&y| phi.apply(y) == x).map(|y| th.get(y, a)).sum();
                    assert_eq!(lifted, tg.get(x, a));
                }
            }
        }
    }
}

#[test]
fn a_products_project_onto_both_factors() {
    for (x, y) in [(Z2, "cyclic(3; a=1, b=1)"), (KLEIN, Z2), ("perm(5; a=(0 1 2), b=(0 1 2 3 4))", Z2), (Z2, Z2)] {
        let (g, h) = (grp(x), grp(y));
        let (p, pairs) = product_a(&g, &h, DEFAULT_BOUND).unwrap();
        assert_eq!((g.order() * h.order()) % p.order(), 0);
        let left: HashSet<usize> = pairs.iter().map(|q| q.0).collect();
        let right: HashSet<usize> = pairs.iter().map(|q| q.1).collect();
        assert_eq!((left.len(), right.len()), (g.order(), h.order()));
        assert!(canonical_morphism(&p, &g).is_some() && canonical_morphism(&p, &h).is_some());
    }
}

#[test]
fn no_morphism_against_the_grain() {
    let (z2, klein) = (grp(Z2), grp(KLEIN));
    assert!(canonical_morphism(&z2, &klein).is_none());
    assert_eq!(canonical_morphism(&klein, &z2).unwrap().kernel().len(), 2);
}
