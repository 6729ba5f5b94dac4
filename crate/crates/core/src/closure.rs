//! Closures at a finite level. For `F -> G` and `H = <gens>` with image `T` in `G`, the
//! level closure is the preimage of `T`; its Stallings automaton is the Schreier graph
//! `Σ(G, T, A)` on right cosets `Tg`, based at `T`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::agroup::FiniteGroup;
use crate::autom::Automaton;
use crate::error::{Error, Result};
use crate::gaschuetz::{GaschuetzLayer, Tower};
use crate::word::Word;

fn check_alphabet(words: &[Word], g: &FiniteGroup) -> Result<()> {
    for w in words {
        if let Some(l) = w.letters().iter().find(|l| l.index >= g.k()) {
            return Err(Error::Precondition(format!("letter {} is outside the group's alphabet", Word::letter(*l))));
        }
    }
    Ok(())
}

/// Image subgroup `T` of `<words>` in `g`, sorted.
pub fn image_subgroup(words: &[Word], g: &FiniteGroup) -> Result<Vec<usize>> {
    check_alphabet(words, g)?;
    let gens: Vec<usize> = words.iter().map(|w| g.evaluate(w)).collect();
    Ok(g.subgroup(&gens))
}

/// Right coset index of every element for the subgroup `t`.
pub fn right_cosets(g: &FiniteGroup, t: &[usize]) -> (Vec<usize>, usize) {
    let mut coset = vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if coset[x] == usize::MAX {
            for &s in t {
                coset[g.mul(s, x)] = count;
            }
            count += 1;
        }
    }
    (coset, count)
}

/// `Σ(G, T, A)` based at the coset `T`, in canonical numbering.
pub fn schreier_graph(g: &FiniteGroup, t: &[usize]) -> Automaton {
    let (coset, count) = right_cosets(g, t);
    let mut edges = HashSet::new();
    for x in 0..g.order() {
        for a in 0..g.k() {
            edges.insert((coset[x], a, coset[g.mul_gen(x, a)]));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Automaton::from_parts(g.k(), count, &edges, coset[0]).expect("a Schreier graph is folded").canonical()
}

pub fn closure_at_level(gens: &[Word], g: &FiniteGroup) -> Result<Automaton> {
    let t = image_subgroup(gens, g)?;
    Ok(schreier_graph(g, &t).core())
}

#[derive(Clone, Debug)]
pub struct Extendibility {
    /// `ψ(A^G)` is isomorphic to `A`.
    pub extendible: bool,
    /// The same question answered by searching for a based embedding of `A` into `Σ`.
    pub embeds: bool,
    /// `ψ(A^G)`: the image of `A` in `Σ(G, T, A)`.
    pub image: Automaton,
}

/// Decide whether the based automaton `aut` embeds into the Schreier graph of its own image
/// in `g`, once through the quotient it induces there and once by direct search.
pub fn extendible_at_level(aut: &Automaton, g: &FiniteGroup) -> Result<Extendibility> {
    if aut.k() != g.k() {
        return Err(Error::Precondition(format!("alphabets differ: {} vs {}", aut.k(), g.k())));
    }
    // A^G: the component of (base, 1) in A x Γ(G); its base fiber is T.
    let mut seen = HashSet::new();
    seen.insert((aut.base(), 0usize));
    let mut q = VecDeque::from([(aut.base(), 0usize)]);
    let mut pairs = vec![(aut.base(), 0usize)];
    while let Some((v, x)) = q.pop_front() {
        for l in crate::word::SignedLetter::all(aut.k()) {
            if let Some(w) = aut.step(v, l) {
                let y = g.step(x, l);
                if seen.insert((w, y)) {
                    pairs.push((w, y));
                    q.push_back((w, y));
                }
            }
        }
    }
    let mut t: Vec<usize> = pairs.iter().filter(|p| p.0 == aut.base()).map(|p| p.1).collect();
    t.sort_unstable();
    if g.subgroup(&t) != t {
        return Err(Error::Precondition("base fiber is not a subgroup".into()));
    }
    let (coset, _) = right_cosets(g, &t);
    let sigma_raw = {
        let (c, count) = (&coset, coset.iter().max().map_or(1, |m| m + 1));
        let mut edges = HashSet::new();
        for x in 0..g.order() {
            for a in 0..g.k() {
                edges.insert((c[x], a, c[g.mul_gen(x, a)]));
            }
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        Automaton::from_parts(g.k(), count, &edges, c[0])?
    };
    let mut image_edges = HashSet::new();
    for &(v, x) in &pairs {
        for a in 0..aut.k() {
            if aut.out(v, a).is_some() {
                image_edges.insert((coset[x], a, coset[g.mul_gen(x, a)]));
            }
        }
    }
    let mut image_edges: Vec<_> = image_edges.into_iter().collect();
    image_edges.sort_unstable();
    let image = Automaton::from_parts(g.k(), sigma_raw.n(), &image_edges, coset[0])?;
    let keep = image.component(image.base());
    let image = image.restrict(&keep).canonical();
    let extendible = image.isomorphic(aut);
    let embeds = aut.embed_into(&sigma_raw, sigma_raw.base()).is_some();
    Ok(Extendibility { extendible, embeds, image })
}

/// `[w] ∈ T_1 ⋯ T_n` in `g`, the product formed as a set.
pub fn product_membership_at_level(w: &Word, subgroups: &[Vec<Word>], g: &FiniteGroup) -> Result<bool> {
    check_alphabet(std::slice::from_ref(w), g)?;
    let mut set: HashSet<usize> = HashSet::from([0]);
    for gens in subgroups {
        let t = image_subgroup(gens, g)?;
        let mut next = HashSet::new();
        for &x in &set {
            for &s in &t {
                next.insert(g.mul(x, s));
            }
        }
        set = next;
    }
    Ok(set.contains(&g.evaluate(w)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevel {
    pub order: usize,
    pub member: bool,
    pub closure_vertices: usize,
}

/// Membership of `w` in the level closures of `<gens>` along a tower, the top layer
/// enumerated within `bound`.
pub fn closure_chain(w: &Word, gens: &[Word], tower: &Tower, bound: usize) -> Result<Vec<ChainLevel>> {
    let mut groups: Vec<FiniteGroup> = tower.levels.clone();
    if let Some(top) = &tower.top {
        let (h, _) = GaschuetzLayer::materialize(top, bound)?;
        groups.push(h);
    }
    let mut out = Vec::new();
    for g in &groups {
        check_alphabet(std::slice::from_ref(w), g)?;
        let c = closure_at_level(gens, g)?;
        out.push(ChainLevel { order: g.order(), member: c.member(w), closure_vertices: c.n() });
    }
    for pair in out.windows(2) {
        assert!(pair[0].member || !pair[1].member, "level closures must shrink along the tower");
    }
    Ok(out)
}
