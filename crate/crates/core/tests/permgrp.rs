use arbor::permgrp::{alternating_certificate, Parity, PermGroupGens, Permutation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn parity_is_multiplicative((p, q) in (1usize..9).prop_flat_map(|n| (perm(n), perm(n)))) {
        let sign = |x: Parity| if x == Parity::Even { 1 } else { -1 };
        prop_assert_eq!(sign(p.then(&q).parity()), sign(p.parity()) * sign(q.parity()));
    }

    #[test]
    fn prime_power_cycle_is_literal(p in (2usize..9).prop_flat_map(perm)) {
        if let Some((q, r)) = p.prime_power_cycle() {
            let x = p.pow(r);
            let mut ct = x.cycle_type();
            ct.retain(|&c| c > 1);
            prop_assert_eq!(ct, vec![q as usize]);
        }
    }
}

/// Set partitions of `0..n` as block labels, first occurrence order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            let blocks = p.iter().max().map_or(0, |m| m + 1);
            for b in 0..=blocks {
                let mut q = p.clone();
                q.push(b);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn primitive_oracle(g: &PermGroupGens) -> bool {
    let n = g.degree;
    for p in partitions(n) {
        let blocks = p.iter().max().unwrap() + 1;
        if blocks == 1 || blocks == n || !n.is_multiple_of(blocks) {
            continue;
        }
        if (0..blocks).any(|b| p.iter().filter(|&&x| x == b).count() != n / blocks) {
            continue;
        }
        let invariant =
            g.gens.iter().all(|s| (0..n).all(|i| (0..n).all(|j| (p[i] == p[j]) == (p[s.image(i)] == p[s.image(j)]))));
        if invariant {
            return false;
        }
    }
    true
}

#[test]
fn primitivity_matches_partition_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = [0, 0];
    for n in 3..=8 {
        for _ in 0..12 {
            let gens: Vec<Permutation> = (0..2)
                .map(|_| {
                    let mut v: Vec<usize> = (0..n).collect();
                    v.shuffle(&mut rng);
                    Permutation::new(v).unwrap()
                })
                .collect();
            let g = PermGroupGens::new(n, gens);
            if !g.is_transitive() {
                continue;
            }
            let ours = g.is_primitive().unwrap();
            assert_eq!(ours, primitive_oracle(&g), "degree {n}: {:?}", g.gens);
            seen[ours as usize] += 1;
        }
    }
    let z4 = PermGroupGens::new(4, vec![Permutation::parse("(0 1 2 3)", 4).unwrap()]);
    assert!(!z4.is_primitive().unwrap() && !primitive_oracle(&z4));
    let d8 = PermGroupGens::new(8, vec![Permutation::parse("(0 1 2 3 4 5 6 7)", 8).unwrap()]);
    assert!(!d8.is_primitive().unwrap() && !primitive_oracle(&d8));
    assert!(seen[1] > 0);
}

#[test]
fn valid_certificate_means_alternating_order() {
    let fact = |n: usize| (1..=n).product::<usize>();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hits = 0;
    for n in 5..=7 {
        for _ in 0..300 {
            let gens: Vec<Permutation> = (0..2)
                .map(|_| {
                    let mut v: Vec<usize> = (0..n).collect();
                    v.shuffle(&mut rng);
                    Permutation::new(v).unwrap()
                })
                .filter(|p| p.parity() == Parity::Even)
                .collect();
            if gens.is_empty() {
                continue;
            }
            let g = PermGroupGens::new(n, gens);
            if alternating_certificate(&g).unwrap().valid() {
                assert_eq!(g.brute_force_order().unwrap(), fact(n) / 2);
                hits += 1;
            }
        }
    }
    assert!(hits >= 10, "only {hits} certified samples");
}
