//! Constellations `(Xi, g, Theta)` in Cayley graphs: maximal ones from minimal cuts,
//! the special constellations `Delta_a`, amalgams and the assembled automaton that
//! contains every amalgam.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::agroup::FiniteGroup;
use crate::autom::{fold, Automaton, LabeledGraph, Subgraph};
use crate::error::{Error, Result};
use crate::word::SignedLetter;

pub const DEFAULT_CUT_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constellation {
    pub xi: Subgraph,
    pub g: usize,
    pub theta: Subgraph,
}

impl Constellation {
    /// Both parts connected and containing `1` and `g`, with `1` and `g` in different
    /// components of the intersection.
    pub fn validate(&self, host: &Automaton) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(format!("not a constellation: {m}")));
        let one = host.base();
        if self.g == one {
            return bad("g is the identity");
        }
        for (name, s) in [("Xi", &self.xi), ("Theta", &self.theta)] {
            if !s.has_vertex(one) || !s.has_vertex(self.g) {
                return bad(&format!("{name} misses 1 or g"));
            }
            if !s.is_connected(host) {
                return bad(&format!("{name} is disconnected"));
            }
        }
        if self.xi.intersect(&self.theta).component(host, one)[self.g] {
            return bad("1 and g are joined inside the intersection");
        }
        Ok(())
    }

    /// Whether `self` is dominated by `other`: same `g`, parts contained in the other's.
    pub fn is_below(&self, other: &Constellation) -> bool {
        self.g == other.g && self.xi.is_subset(&other.xi) && self.theta.is_subset(&other.theta)
    }
}

/// A minimal cut: the crossing positive edges of a bipartition with connected sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub near: Vec<usize>,
    pub far: Vec<usize>,
    pub edges: Vec<usize>,
}

fn induced_connected(host: &Automaton, inside: &[bool]) -> bool {
    let Some(s) = inside.iter().position(|&x| x) else { return true };
    let mut seen = vec![false; inside.len()];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for l in SignedLetter::all(host.k()) {
            if let Some(w) = host.step(v, l) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    (0..inside.len()).all(|v| !inside[v] || seen[v])
}

/// All minimal cut sets of a connected graph, one per bipartition `(near ∋ 1, far)`
/// with both induced sides connected, ordered by the bitmask of the far side.
pub fn minimal_cut_sets(host: &Automaton, bound: usize) -> Result<Vec<Cut>> {
    let n = host.n();
    if n > bound {
        return Err(Error::Bound(format!("{n} vertices exceed the cut enumeration bound {bound}")));
    }
    let one = host.base();
    let others: Vec<usize> = (0..n).filter(|&v| v != one).collect();
    let mut cuts = Vec::new();
    for mask in 1u64..(1u64 << others.len()) {
        let mut far_mask = vec![false; n];
        for (i, &v) in others.iter().enumerate() {
            far_mask[v] = mask >> i & 1 == 1;
        }
        let near_mask: Vec<bool> = far_mask.iter().map(|x| !x).collect();
        if !induced_connected(host, &far_mask) || !induced_connected(host, &near_mask) {
            continue;
        }
        let edges = host
            .edges()
            .into_iter()
            .filter(|&(s, _, d)| far_mask[s] != far_mask[d])
            .map(|(s, a, _)| Subgraph::edge_id(host.k(), s, a))
            .collect();
        cuts.push(Cut {
            near: (0..n).filter(|&v| near_mask[v]).collect(),
            far: (0..n).filter(|&v| far_mask[v]).collect(),
            edges,
        });
    }
    Ok(cuts)
}

/// An ordered split `(C_Xi, C_Theta)` of a minimal cut. `Xi` is the graph minus `C_Theta`,
/// `Theta` the graph minus `C_Xi`, and `g` ranges over the far side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxConstellationPair {
    pub cut: usize,
    pub c_xi: Vec<usize>,
    pub c_theta: Vec<usize>,
    pub far: Vec<usize>,
}

impl MaxConstellationPair {
    pub fn xi(&self, host: &Automaton) -> Subgraph {
        Subgraph::full(host).without(&self.c_theta)
    }

    pub fn theta(&self, host: &Automaton) -> Subgraph {
        Subgraph::full(host).without(&self.c_xi)
    }

    pub fn constellations(&self, host: &Automaton) -> Vec<Constellation> {
        let (xi, theta) = (self.xi(host), self.theta(host));
        self.far.iter().map(|&g| Constellation { xi: xi.clone(), g, theta: theta.clone() }).collect()
    }
}

/// Every ordered split of every minimal cut into two nonempty parts; each resulting
/// constellation is validated.
pub fn maximal_constellations(group: &FiniteGroup, bound: usize) -> Result<Vec<MaxConstellationPair>> {
    let host = group.cayley();
    let cuts = minimal_cut_sets(&host, bound)?;
    let mut out = Vec::new();
    for (ci, cut) in cuts.iter().enumerate() {
        let c = cut.edges.len();
        if c >= 63 {
            return Err(Error::Bound(format!("cut with {c} edges is too large to split")));
        }
        for mask in 1u64..(1u64 << c) - 1 {
            let (mut c_xi, mut c_theta) = (Vec::new(), Vec::new());
            for (i, &e) in cut.edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c_xi.push(e);
                } else {
                    c_theta.push(e);
                }
            }
            let pair = MaxConstellationPair { cut: ci, c_xi, c_theta, far: cut.far.clone() };
            for con in pair.constellations(&host) {
                con.validate(&host).expect("maximal constellation failed validation");
            }
            out.push(pair);
        }
    }
    Ok(out)
}

/// `Delta_a`: the graph minus the edge `(1, a)` against that single edge with its endpoints.
pub fn delta_a(group: &FiniteGroup, l: SignedLetter) -> Result<Constellation> {
    let host = group.cayley();
    let k = group.k();
    let g = group.step(0, l);
    if g == 0 {
        return Err(Error::Precondition(format!("letter {l:?} acts trivially; Delta is not a constellation")));
    }
    let e = if l.inverse { Subgraph::edge_id(k, g, l.index) } else { Subgraph::edge_id(k, 0, l.index) };
    let xi = Subgraph::full(&host).without(&[e]);
    if !xi.is_connected(&host) {
        return Err(Error::Precondition("removing the edge disconnects the Cayley graph".into()));
    }
    let theta = Subgraph::from_edges(&host, [e], &[]);
    let c = Constellation { xi, g, theta };
    c.validate(&host)?;
    Ok(c)
}

/// Disjoint union of the two subgraphs with their copies of `1` identified, folded.
pub fn amalgam(host: &Automaton, xi: &Subgraph, theta: &Subgraph) -> Result<Automaton> {
    let one = host.base();
    let x = xi.to_automaton(host, one)?;
    let t = theta.to_automaton(host, one)?;
    let mut g = LabeledGraph::new(host.k(), x.n() + t.n() - 1);
    g.base = Some(x.base());
    let tmap = |v: usize| {
        if v == t.base() {
            x.base()
        } else if v < t.base() {
            x.n() + v
        } else {
            x.n() + v - 1
        }
    };
    for (s, a, d) in x.edges() {
        g.add_edge(s, a, d);
    }
    for (s, a, d) in t.edges() {
        g.add_edge(tmap(s), a, tmap(d));
    }
    Ok(fold(&g))
}

/// Result of assembling all amalgams into one connected incomplete automaton.
#[derive(Clone, Debug)]
pub struct AgAssembly {
    pub automaton: Automaton,
    /// One amalgam per unordered split, in chaining order.
    pub amalgams: Vec<Automaton>,
    /// Chain letter of each amalgam.
    pub letters: Vec<usize>,
    /// Vertex of `automaton` where each amalgam embeds.
    pub anchors: Vec<usize>,
}

fn first_non_total_letter(a: &Automaton) -> Option<usize> {
    (0..a.k()).find(|&l| (0..a.n()).any(|v| a.out(v, l).is_none()))
}

/// Build the amalgam of every unordered split of every minimal cut, chain the amalgams
/// sharing a chain letter by bridge edges, and attach each chain to one sink vertex.
pub fn assemble_ag(group: &FiniteGroup, bound: usize) -> Result<AgAssembly> {
    let host = group.cayley();
    let pairs = maximal_constellations(group, bound)?;
    let cuts = minimal_cut_sets(&host, bound)?;
    let mut classes: BTreeMap<usize, Vec<(String, Automaton)>> = BTreeMap::new();
    for pair in &pairs {
        // keep one of each (C_Xi, C_Theta), (C_Theta, C_Xi)
        let first_of_cut = cuts[pair.cut].edges[0];
        if !pair.c_xi.contains(&first_of_cut) {
            continue;
        }
        let am = amalgam(&host, &pair.xi(&host), &pair.theta(&host))?;
        let letter = first_non_total_letter(&am).ok_or_else(|| Error::Precondition("amalgam is complete".into()))?;
        classes.entry(letter).or_default().push((am.write_aut(), am));
    }
    if classes.is_empty() {
        return Err(Error::Precondition("group has no maximal constellations".into()));
    }
    let mut g = LabeledGraph::new(group.k(), 0);
    let mut amalgams = Vec::new();
    let mut letters = Vec::new();
    let mut offsets = Vec::new();
    let mut chain_ends = Vec::new();
    for (&letter, list) in classes.iter_mut() {
        list.sort_by(|x, y| x.0.cmp(&y.0));
        let mut prev_end: Option<usize> = None;
        for (_, am) in list.iter() {
            let off = g.vertices;
            g.vertices += am.n();
            for (s, a, d) in am.edges() {
                g.add_edge(off + s, a, off + d);
            }
            if let Some(src) = prev_end {
                let dst = (0..am.n()).find(|&v| am.inc(v, letter).is_none()).expect("amalgam lacks a free entry");
                g.add_edge(src, letter, off + dst);
            }
            // a vertex still lacking an outgoing edge; the bridge only used an incoming slot
            let src = (0..am.n()).find(|&v| am.out(v, letter).is_none()).expect("amalgam lacks a free exit");
            prev_end = Some(off + src);
            offsets.push(off + am.base());
            amalgams.push(am.clone());
            letters.push(letter);
        }
        chain_ends.push((prev_end.unwrap(), letter));
    }
    let sink = g.add_vertex();
    for (src, letter) in chain_ends {
        g.add_edge(src, letter, sink);
    }
    g.base = Some(offsets[0]);
    let raw = Automaton::from_graph(&g)?;
    if !raw.is_connected() {
        return Err(Error::Disconnected);
    }
    let automaton = raw.canonical();
    if automaton.is_complete() {
        return Err(Error::Precondition("assembled automaton is complete".into()));
    }
    let mut anchors = Vec::new();
    for am in &amalgams {
        let at = (0..automaton.n()).find(|&v| am.embed_into(&automaton, v).is_some());
        anchors.push(at.ok_or_else(|| Error::Precondition("amalgam does not embed".into()))?);
    }
    Ok(AgAssembly { automaton, amalgams, letters, anchors })
}
