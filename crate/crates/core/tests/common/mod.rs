#![allow(dead_code)]

use std::collections::BTreeSet;

use arbor::agroup::{FiniteGroup, GroupSpec, DEFAULT_BOUND};
use arbor::autom::{Automaton, Subgraph};
use arbor::constellation::Constellation;
use arbor::word::{SignedLetter, Word};
use rand::Rng;

pub const Z2: &str = "cyclic(2; a=1, b=1)";
pub const KLEIN: &str = "klein(a=10, b=01)";

pub fn grp(spec: &str) -> FiniteGroup {
    GroupSpec::parse(spec).unwrap().materialize(DEFAULT_BOUND).unwrap()
}

pub fn w(s: &str) -> Word {
    Word::parse_std(s).unwrap()
}

pub fn random_word(rng: &mut impl Rng, k: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| {
                let i = rng.gen_range(0..k);
                if rng.gen_bool(0.5) {
                    SignedLetter::pos(i)
                } else {
                    SignedLetter::neg(i)
                }
            })
            .collect(),
    )
}

/// Every word of length exactly `len`, reduced or not.
pub fn words_of_length(k: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for u in &out {
            for l in SignedLetter::all(k) {
                next.push(u.concat(&Word::letter(l)));
            }
        }
        out = next;
    }
    out
}

pub fn words_up_to(k: usize, len: usize) -> Vec<Word> {
    (0..=len).flat_map(|n| words_of_length(k, n)).collect()
}

fn sub_from_mask(host: &Automaton, mask: u64, extra: &[usize]) -> Subgraph {
    let edges: Vec<usize> = host.edges().iter().map(|&(s, a, _)| s * host.k() + a).collect();
    let chosen = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    Subgraph::from_edges(host, chosen, extra)
}

/// Maximal constellations by exhaustive search over pairs of edge sets, as
/// `(Xi edge ids, g, Theta edge ids)`.
pub fn brute_force_maximal(g: &FiniteGroup) -> BTreeSet<(Vec<usize>, usize, Vec<usize>)> {
    let host = g.cayley();
    let m = host.edge_count();
    assert!(m <= 10, "oracle is exhaustive");
    let mut out = BTreeSet::new();
    for x in 1..g.order() {
        let mut valid: Vec<(u64, u64)> = Vec::new();
        let subs: Vec<Subgraph> = (0..1u64 << m).map(|mask| sub_from_mask(&host, mask, &[0, x])).collect();
        for (a, xi) in subs.iter().enumerate() {
            for (b, theta) in subs.iter().enumerate() {
                let c = Constellation { xi: xi.clone(), g: x, theta: theta.clone() };
                if c.validate(&host).is_ok() {
                    valid.push((a as u64, b as u64));
                }
            }
        }
        for &(a, b) in &valid {
            let dominated = valid.iter().any(|&(c, d)| (c, d) != (a, b) && a & !c == 0 && b & !d == 0);
            if !dominated {
                out.insert((subs[a as usize].edge_ids().collect(), x, subs[b as usize].edge_ids().collect()));
            }
        }
    }
    out
}

/// A word reading a path from `1` to `c.g` inside `c.xi`: a random walk inside `Xi`
/// followed by a shortest path to `g`.
pub fn random_path_word(rng: &mut impl Rng, g: &FiniteGroup, c: &Constellation, steps: usize) -> Word {
    let k = g.k();
    let moves = |x: usize| -> Vec<(SignedLetter, usize)> {
        SignedLetter::all(k)
            .filter_map(|l| {
                let y = g.step(x, l);
                let e = if l.inverse { y * k + l.index } else { x * k + l.index };
                c.xi.has_edge(e).then_some((l, y))
            })
            .collect()
    };
    let mut letters = Vec::new();
    let mut x = 0;
    for _ in 0..steps {
        let m = moves(x);
        let (l, y) = m[rng.gen_range(0..m.len())];
        letters.push(l);
        x = y;
    }
    let mut prev: Vec<Option<(usize, SignedLetter)>> = vec![None; g.order()];
    let mut seen = vec![false; g.order()];
    seen[x] = true;
    let mut q = std::collections::VecDeque::from([x]);
    while let Some(v) = q.pop_front() {
        for (l, y) in moves(v) {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((v, l));
                q.push_back(y);
            }
        }
    }
    let mut tail = Vec::new();
    let mut y = c.g;
    while y != x {
        let (v, l) = prev[y].expect("Xi is connected");
        tail.push(l);
        y = v;
    }
    tail.reverse();
    letters.extend(tail);
    Word::new(letters)
}
