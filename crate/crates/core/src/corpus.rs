//! Seeded generator of connected, folded, incomplete automata.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autom::Automaton;
use crate::error::{Error, Result};

/// One automaton on `m` vertices over `k` letters: a random spanning tree plus a few
/// extra edges that keep it folded, with at least one missing outgoing edge.
pub fn random_automaton(rng: &mut impl Rng, m: usize, k: usize) -> Automaton {
    loop {
        let mut out = vec![vec![None; k]; m];
        let mut inc = vec![vec![None; k]; m];
        let mut edges = Vec::new();
        let mut try_add =
            |s: usize, a: usize, d: usize, out: &mut Vec<Vec<Option<usize>>>, inc: &mut Vec<Vec<Option<usize>>>| {
                if out[s][a].is_none() && inc[d][a].is_none() {
                    out[s][a] = Some(d);
                    inc[d][a] = Some(s);
                    edges.push((s, a, d));
                    true
                } else {
                    false
                }
            };
        let mut order: Vec<usize> = (1..m).collect();
        order.shuffle(rng);
        let mut placed = vec![0];
        let mut ok = true;
        for v in order {
            let mut attached = false;
            for _ in 0..64 {
                let u = placed[rng.gen_range(0..placed.len())];
                let a = rng.gen_range(0..k);
                let (s, d) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
                if try_add(s, a, d, &mut out, &mut inc) {
                    attached = true;
                    break;
                }
            }
            if !attached {
                ok = false;
                break;
            }
            placed.push(v);
        }
        if !ok {
            continue;
        }
        let extra = rng.gen_range(0..=m);
        for _ in 0..extra {
            let (s, a, d) = (rng.gen_range(0..m), rng.gen_range(0..k), rng.gen_range(0..m));
            try_add(s, a, d, &mut out, &mut inc);
        }
        let aut = Automaton::from_parts(k, m, &edges, 0).expect("generated edges are folded");
        if aut.is_connected() && !aut.is_complete() {
            return aut;
        }
    }
}

/// `count` automata over two letters with sizes drawn from `m_range`, deterministic in `seed`.
pub fn corpus(seed: u64, count: usize, m_range: RangeInclusive<usize>) -> Result<Vec<Automaton>> {
    if *m_range.start() < 3 || m_range.is_empty() {
        return Err(Error::Precondition(format!(
            "vertex range {}..={} must lie in m >= 3",
            m_range.start(),
            m_range.end()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let m = rng.gen_range(m_range.clone());
            random_automaton(&mut rng, m, 2)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn postconditions_and_determinism() {
        let a = corpus(1, 10, 3..=8).unwrap();
        assert_eq!(a.len(), 10);
        for x in &a {
            assert!(x.is_connected() && !x.is_complete());
            assert!((3..=8).contains(&x.n()));
        }
        assert_eq!(a, corpus(1, 10, 3..=8).unwrap());
        assert!(corpus(1, 3, 2..=5).is_err());
    }
}
