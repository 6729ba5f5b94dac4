//! Labeled graphs and inverse automata (folded pointed graphs).
//!
//! Only positive edges are stored; each edge `(s, a, d)` carries an implicit
//! inverse `d -a^-1-> s`. An [`Automaton`] is folded: every letter acts as a
//! partial injection on vertices.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgrp::{PermGroupGens, Permutation};
use crate::word::{SignedLetter, Word};

/// A possibly unfolded graph with positive edges `(src, letter, dst)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub alphabet: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, usize, usize)>,
    pub base: Option<usize>,
}

impl LabeledGraph {
    pub fn new(alphabet: usize, vertices: usize) -> Self {
        LabeledGraph { alphabet, vertices, edges: Vec::new(), base: None }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    pub fn add_edge(&mut self, src: usize, letter: usize, dst: usize) {
        assert!(src < self.vertices && dst < self.vertices && letter < self.alphabet);
        self.edges.push((src, letter, dst));
    }

    /// Add a path from `start` reading `w` and ending at `end`, through fresh vertices.
    pub fn add_path(&mut self, start: usize, w: &Word, end: usize) {
        let ls = w.letters();
        if ls.is_empty() {
            assert_eq!(start, end, "empty path must be closed");
            return;
        }
        let mut cur = start;
        for (i, &l) in ls.iter().enumerate() {
            let next = if i + 1 == ls.len() { end } else { self.add_vertex() };
            if l.inverse {
                self.add_edge(next, l.index, cur);
            } else {
                self.add_edge(cur, l.index, next);
            }
            cur = next;
        }
    }

    /// One closed path at the base per word.
    pub fn bouquet(words: &[Word], alphabet: usize) -> Self {
        let mut g = LabeledGraph::new(alphabet, 1);
        g.base = Some(0);
        for w in words {
            g.add_path(0, &w.reduce(), 0);
        }
        g
    }

    /// Serialize to the line-oriented `.aut` format.
    pub fn write_aut(&self) -> String {
        let mut s = String::new();
        s.push_str("alphabet");
        for i in 0..self.alphabet {
            let _ = write!(s, " {}", letter_char(i));
        }
        s.push('\n');
        let mut touched = vec![false; self.vertices];
        for &(a, _, b) in &self.edges {
            touched[a] = true;
            touched[b] = true;
        }
        for (v, t) in touched.iter().enumerate() {
            if !t {
                let _ = writeln!(s, "vertex {v}");
            }
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for (a, l, b) in edges {
            let _ = writeln!(s, "edge {a} {} {b}", letter_char(l));
        }
        if let Some(b) = self.base {
            let _ = writeln!(s, "base {b}");
        }
        s
    }

    pub fn read_aut(text: &str) -> Result<Self> {
        let mut names: Option<Vec<char>> = None;
        let mut edges = Vec::new();
        let mut raw_edges: Vec<(usize, char, usize)> = Vec::new();
        let mut max_id: Option<usize> = None;
        let mut base = None;
        let bump = |m: &mut Option<usize>, v: usize| *m = Some(m.map_or(v, |x: usize| x.max(v)));
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: malformed `{line}`", lineno + 1));
            let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
            match toks[0] {
                "alphabet" => {
                    let mut ns = Vec::new();
                    for t in &toks[1..] {
                        let mut cs = t.chars();
                        match (cs.next(), cs.next()) {
                            (Some(c), None) if c.is_ascii_lowercase() => ns.push(c),
                            _ => return Err(bad()),
                        }
                    }
                    names = Some(ns);
                }
                "vertex" if toks.len() == 2 => bump(&mut max_id, int(toks[1])?),
                "base" if toks.len() == 2 => {
                    let b = int(toks[1])?;
                    bump(&mut max_id, b);
                    base = Some(b);
                }
                "edge" if toks.len() == 4 => {
                    let s = int(toks[1])?;
                    let d = int(toks[3])?;
                    let mut cs = toks[2].chars();
                    let c = match (cs.next(), cs.next()) {
                        (Some(c), None) if c.is_ascii_lowercase() => c,
                        (Some(c), None) => return Err(Error::UnknownLetter(c)),
                        _ => return Err(bad()),
                    };
                    bump(&mut max_id, s);
                    bump(&mut max_id, d);
                    raw_edges.push((s, c, d));
                }
                _ => return Err(bad()),
            }
        }
        let names = match names {
            Some(ns) => ns,
            None => {
                let k = raw_edges.iter().map(|&(_, c, _)| (c as u8 - b'a') as usize + 1).max().unwrap_or(0);
                (0..k).map(letter_char).collect()
            }
        };
        for (s, c, d) in raw_edges {
            let l = names.iter().position(|&x| x == c).ok_or(Error::UnknownLetter(c))?;
            edges.push((s, l, d));
        }
        Ok(LabeledGraph { alphabet: names.len(), vertices: max_id.map_or(0, |m| m + 1), edges, base })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for v in 0..self.vertices {
            let shape = if Some(v) == self.base { " [shape=doublecircle]" } else { "" };
            let _ = writeln!(s, "  {v}{shape};");
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for (a, l, b) in edges {
            let _ = writeln!(s, "  {a} -> {b} [label=\"{}\"];", letter_char(l));
        }
        s.push_str("}\n");
        s
    }
}

pub fn letter_char(i: usize) -> char {
    (b'a' + i as u8) as char
}

/// A folded pointed graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automaton {
    k: usize,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
    base: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Stallings folding. The result is relabeled canonically (see [`Automaton::canonical`]);
/// components not containing the base are kept, ordered by their smallest input vertex.
pub fn fold(g: &LabeledGraph) -> Automaton {
    let n = g.vertices.max(1);
    let base = g.base.unwrap_or(0);
    let mut uf = UnionFind::new(n);
    // adjacency entries: (letter, outgoing?, other endpoint)
    let mut adj: Vec<Vec<(usize, bool, usize)>> = vec![Vec::new(); n];
    for &(s, l, d) in &g.edges {
        adj[s].push((l, true, d));
        adj[d].push((l, false, s));
    }
    let mut work: VecDeque<usize> = (0..n).collect();
    while let Some(v) = work.pop_front() {
        if uf.find(v) != v {
            continue;
        }
        let mut seen: HashMap<(usize, bool), usize> = HashMap::new();
        let mut merges = Vec::new();
        for &(l, o, w) in &adj[v] {
            let w = uf.find(w);
            match seen.get(&(l, o)) {
                Some(&x) if x != w => merges.push((x, w)),
                Some(_) => {}
                None => {
                    seen.insert((l, o), w);
                }
            }
        }
        adj[v] = seen.into_iter().map(|((l, o), w)| (l, o, w)).collect();
        for (x, y) in merges {
            let (x, y) = (uf.find(x), uf.find(y));
            if x == y {
                continue;
            }
            let (keep, drop) = if adj[x].len() >= adj[y].len() { (x, y) } else { (y, x) };
            uf.parent[drop] = keep;
            let moved = std::mem::take(&mut adj[drop]);
            adj[keep].extend(moved);
            work.push_back(keep);
        }
    }
    let mut edges: Vec<(usize, usize, usize)> = g.edges.iter().map(|&(s, l, d)| (uf.find(s), l, uf.find(d))).collect();
    edges.sort_unstable();
    edges.dedup();
    // classes ordered by smallest member
    let mut rep_order: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for v in 0..n {
        let r = uf.find(v);
        if !seen[r] {
            seen[r] = true;
            rep_order.push(r);
        }
    }
    let mut idx = vec![usize::MAX; n];
    for (i, &r) in rep_order.iter().enumerate() {
        idx[r] = i;
    }
    let m = rep_order.len();
    let edges: Vec<_> = edges.into_iter().map(|(s, l, d)| (idx[s], l, idx[d])).collect();
    let raw = Automaton::from_parts(g.alphabet, m, &edges, idx[uf.find(base)])
        .expect("folding produced a non-deterministic graph");
    raw.canonical()
}

/// Stallings automaton of the subgroup generated by `gens`.
pub fn core_of_words(gens: &[Word], alphabet: usize) -> Automaton {
    fold(&LabeledGraph::bouquet(gens, alphabet)).core()
}

impl Automaton {
    /// Build from explicit edges keeping vertex ids; fails if the edges are not folded.
    pub fn from_parts(k: usize, n: usize, edges: &[(usize, usize, usize)], base: usize) -> Result<Self> {
        if base >= n.max(1) {
            return Err(Error::Precondition(format!("base {base} out of range")));
        }
        let n = n.max(1);
        let mut out = vec![vec![None; k]; n];
        let mut inc = vec![vec![None; k]; n];
        for &(s, l, d) in edges {
            if s >= n || d >= n || l >= k {
                return Err(Error::Precondition(format!("edge ({s},{l},{d}) out of range")));
            }
            match (out[s][l], inc[d][l]) {
                (None, None) => {
                    out[s][l] = Some(d);
                    inc[d][l] = Some(s);
                }
                (Some(x), Some(y)) if x == d && y == s => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "graph is not folded at edge {s} -{}-> {d}",
                        letter_char(l)
                    )))
                }
            }
        }
        Ok(Automaton { k, out, inc, base })
    }

    /// Strictly read a graph that must already be folded (vertex ids kept).
    pub fn from_graph(g: &LabeledGraph) -> Result<Self> {
        Automaton::from_parts(g.alphabet, g.vertices, &g.edges, g.base.unwrap_or(0))
    }

    /// Single base vertex, no edges.
    pub fn trivial(k: usize) -> Self {
        Automaton { k, out: vec![vec![None; k]], inc: vec![vec![None; k]], base: 0 }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn out(&self, v: usize, a: usize) -> Option<usize> {
        self.out[v][a]
    }

    pub fn inc(&self, v: usize, a: usize) -> Option<usize> {
        self.inc[v][a]
    }

    pub fn step(&self, v: usize, l: SignedLetter) -> Option<usize> {
        if l.inverse {
            self.inc[v][l.index]
        } else {
            self.out[v][l.index]
        }
    }

    pub fn read(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |v, &l| self.step(v, l))
    }

    /// Whether the reduced form of `w` labels a closed path at the base.
    pub fn member(&self, w: &Word) -> bool {
        self.read(self.base, &w.reduce()) == Some(self.base)
    }

    /// Positive edges sorted by (src, letter, dst).
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut e = Vec::new();
        for v in 0..self.n() {
            for a in 0..self.k {
                if let Some(d) = self.out[v][a] {
                    e.push((v, a, d));
                }
            }
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().flatten().filter(|x| x.is_some()).count()
    }

    /// Number of incident edge ends; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.out[v].iter().filter(|x| x.is_some()).count() + self.inc[v].iter().filter(|x| x.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.out.iter().all(|row| row.iter().all(|x| x.is_some()))
    }

    /// First (vertex, letter) pair without an outgoing edge, scanning letters first.
    pub fn missing_out(&self) -> Option<(usize, usize)> {
        (0..self.k).find_map(|a| (0..self.n()).find(|&v| self.out[v][a].is_none()).map(|v| (v, a)))
    }

    pub fn component(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for l in SignedLetter::all(self.k) {
                if let Some(w) = self.step(v, l) {
                    if !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component(self.base).iter().all(|&x| x)
    }

    /// Rank of the recognized subgroup, `E - V + 1`.
    pub fn rank(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edge_count() + 1 - self.n())
    }

    /// Keep only the vertices marked in `keep` (the base must be kept), relabeled canonically.
    pub fn restrict(&self, keep: &[bool]) -> Automaton {
        assert!(keep[self.base]);
        let mut idx = vec![usize::MAX; self.n()];
        let mut m = 0;
        for v in 0..self.n() {
            if keep[v] {
                idx[v] = m;
                m += 1;
            }
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(s, _, d)| keep[s] && keep[d])
            .map(|(s, l, d)| (idx[s], l, idx[d]))
            .collect();
        Automaton::from_parts(self.k, m, &edges, idx[self.base]).unwrap().canonical()
    }

    /// Base component with degree-one non-base vertices trimmed repeatedly.
    pub fn core(&self) -> Automaton {
        let mut keep = self.component(self.base);
        let mut deg: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        let mut stack: Vec<usize> = (0..self.n()).filter(|&v| keep[v] && v != self.base && deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !keep[v] {
                continue;
            }
            keep[v] = false;
            for l in SignedLetter::all(self.k) {
                if let Some(w) = self.step(v, l) {
                    if keep[w] && w != v {
                        deg[w] -= 1;
                        if w != self.base && deg[w] <= 1 {
                            stack.push(w);
                        }
                    }
                }
            }
        }
        self.restrict(&keep)
    }

    /// Relabel by breadth-first search from the base, trying `a, A, b, B, ...` in order.
    /// Further components follow in order of their smallest current vertex.
    pub fn canonical(&self) -> Automaton {
        let n = self.n();
        let mut idx = vec![usize::MAX; n];
        let mut next = 0;
        let starts = std::iter::once(self.base).chain(0..n);
        for s in starts {
            if idx[s] != usize::MAX {
                continue;
            }
            idx[s] = next;
            next += 1;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for l in SignedLetter::all(self.k) {
                    if let Some(w) = self.step(v, l) {
                        if idx[w] == usize::MAX {
                            idx[w] = next;
                            next += 1;
                            q.push_back(w);
                        }
                    }
                }
            }
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(s, l, d)| (idx[s], l, idx[d])).collect();
        Automaton::from_parts(self.k, n, &edges, idx[self.base]).unwrap()
    }

    /// Pointed isomorphism test for connected automata.
    pub fn isomorphic(&self, other: &Automaton) -> bool {
        self.k == other.k && self.n() == other.n() && self.canonical() == other.canonical()
    }

    pub fn to_graph(&self) -> LabeledGraph {
        LabeledGraph { alphabet: self.k, vertices: self.n(), edges: self.edges(), base: Some(self.base) }
    }

    pub fn write_aut(&self) -> String {
        self.to_graph().write_aut()
    }

    pub fn to_dot(&self) -> String {
        self.to_graph().to_dot()
    }

    /// Same automaton with a different base vertex.
    pub fn with_base(&self, base: usize) -> Automaton {
        assert!(base < self.n());
        Automaton { base, ..self.clone() }
    }

    /// Pullback with `other`, restricted to the core at the pair of bases.
    pub fn product(&self, other: &Automaton) -> Automaton {
        assert_eq!(self.k, other.k, "alphabets differ");
        let mut idx: HashMap<(usize, usize), usize> = HashMap::new();
        let start = (self.base, other.base);
        idx.insert(start, 0);
        let mut order = vec![start];
        let mut edges = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (u, v) = order[i];
            for a in 0..self.k {
                if let (Some(u2), Some(v2)) = (self.out[u][a], other.out[v][a]) {
                    let n = idx.len();
                    let j = *idx.entry((u2, v2)).or_insert_with(|| {
                        order.push((u2, v2));
                        n
                    });
                    edges.push((i, a, j));
                }
                if let (Some(u2), Some(v2)) = (self.inc[u][a], other.inc[v][a]) {
                    let n = idx.len();
                    let j = *idx.entry((u2, v2)).or_insert_with(|| {
                        order.push((u2, v2));
                        n
                    });
                    edges.push((j, a, i));
                }
            }
            i += 1;
        }
        edges.sort_unstable();
        edges.dedup();
        Automaton::from_parts(self.k, order.len(), &edges, 0).expect("product of folded graphs is folded").core()
    }

    /// The unique label-preserving injective morphism of the base component of `self`
    /// into `target` sending the base to `start`, if any. Indexed by vertices of `self`;
    /// vertices outside the base component map to `usize::MAX`.
    pub fn embed_into(&self, target: &Automaton, start: usize) -> Option<Vec<usize>> {
        if self.k != target.k || start >= target.n() {
            return None;
        }
        let mut map = vec![usize::MAX; self.n()];
        let mut used = vec![false; target.n()];
        map[self.base] = start;
        used[start] = true;
        let mut q = VecDeque::from([self.base]);
        while let Some(v) = q.pop_front() {
            for l in SignedLetter::all(self.k) {
                if let Some(w) = self.step(v, l) {
                    let img = target.step(map[v], l)?;
                    if map[w] == usize::MAX {
                        if used[img] {
                            return None;
                        }
                        used[img] = true;
                        map[w] = img;
                        q.push_back(w);
                    } else if map[w] != img {
                        return None;
                    }
                }
            }
        }
        Some(map)
    }

    /// Letter actions of a complete automaton as permutations of the vertex set.
    pub fn transition_group(&self) -> Result<PermGroupGens> {
        if !self.is_complete() {
            return Err(Error::Precondition("automaton is not complete".into()));
        }
        let gens = (0..self.k)
            .map(|a| Permutation::new((0..self.n()).map(|v| self.out[v][a].unwrap()).collect()).unwrap())
            .collect();
        Ok(PermGroupGens::new(self.n(), gens))
    }
}

/// A set of positive edges of a host automaton (usually a Cayley graph) together
/// with a vertex set containing all their endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgraph {
    pub k: usize,
    pub edges: Vec<bool>,
    pub vertices: Vec<bool>,
}

impl Subgraph {
    pub fn edge_id(k: usize, v: usize, a: usize) -> usize {
        v * k + a
    }

    pub fn empty(host: &Automaton) -> Self {
        Subgraph { k: host.k(), edges: vec![false; host.n() * host.k()], vertices: vec![false; host.n()] }
    }

    pub fn full(host: &Automaton) -> Self {
        let mut s = Subgraph::empty(host);
        for (v, a, d) in host.edges() {
            s.edges[v * host.k() + a] = true;
            s.vertices[v] = true;
            s.vertices[d] = true;
        }
        s.vertices.iter_mut().for_each(|x| *x = true);
        s
    }

    /// Subgraph spanned by the given edge ids plus extra vertices.
    pub fn from_edges(host: &Automaton, edges: impl IntoIterator<Item = usize>, extra: &[usize]) -> Self {
        let mut s = Subgraph::empty(host);
        for e in edges {
            s.insert_edge(host, e);
        }
        for &v in extra {
            s.vertices[v] = true;
        }
        s
    }

    pub fn insert_edge(&mut self, host: &Automaton, e: usize) {
        let (v, a) = (e / self.k, e % self.k);
        let d = host.out(v, a).expect("edge id not present in host");
        self.edges[e] = true;
        self.vertices[v] = true;
        self.vertices[d] = true;
    }

    /// Remove edges, keeping all vertices.
    pub fn without(&self, removed: &[usize]) -> Self {
        let mut s = self.clone();
        for &e in removed {
            s.edges[e] = false;
        }
        s
    }

    pub fn has_edge(&self, e: usize) -> bool {
        self.edges[e]
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices[v]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|&&b| b).count()
    }

    pub fn intersect(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            k: self.k,
            edges: self.edges.iter().zip(&other.edges).map(|(a, b)| *a && *b).collect(),
            vertices: self.vertices.iter().zip(&other.vertices).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// Whether every edge and vertex of `self` lies in `other`.
    pub fn is_subset(&self, other: &Subgraph) -> bool {
        self.edges.iter().zip(&other.edges).all(|(a, b)| !*a || *b)
            && self.vertices.iter().zip(&other.vertices).all(|(a, b)| !*a || *b)
    }

    /// Vertices reachable from `start` along edges of the subgraph (either direction).
    pub fn component(&self, host: &Automaton, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        if !self.vertices[start] {
            return seen;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for a in 0..self.k {
                if let Some(w) = host.out(v, a) {
                    if self.edges[v * self.k + a] && !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
                if let Some(w) = host.inc(v, a) {
                    if self.edges[w * self.k + a] && !seen[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        seen
    }

    pub fn is_connected(&self, host: &Automaton) -> bool {
        match self.vertex_ids().next() {
            None => true,
            Some(s) => {
                let c = self.component(host, s);
                self.vertex_ids().all(|v| c[v])
            }
        }
    }

    /// The subgraph as a pointed automaton based at `base`, vertices renumbered in increasing order.
    pub fn to_automaton(&self, host: &Automaton, base: usize) -> Result<Automaton> {
        if !self.vertices[base] {
            return Err(Error::Precondition(format!("subgraph does not contain vertex {base}")));
        }
        let mut idx = vec![usize::MAX; self.vertices.len()];
        let mut m = 0;
        for v in self.vertex_ids() {
            idx[v] = m;
            m += 1;
        }
        let edges: Vec<_> = self
            .edge_ids()
            .map(|e| {
                let (v, a) = (e / self.k, e % self.k);
                (idx[v], a, idx[host.out(v, a).unwrap()])
            })
            .collect();
        Automaton::from_parts(self.k, m, &edges, idx[base])
    }
}

/// Edges of the complete automaton `cay` traversed by paths that start at its base and
/// are readable in `aut` from its base: reachability in the product of the two.
pub fn span_from_base(aut: &Automaton, cay: &Automaton) -> Subgraph {
    let k = cay.k();
    let mut sub = Subgraph::empty(cay);
    sub.vertices[cay.base()] = true;
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    seen.insert((aut.base(), cay.base()), ());
    let mut q = VecDeque::from([(aut.base(), cay.base())]);
    while let Some((v, h)) = q.pop_front() {
        for l in SignedLetter::all(k.min(aut.k())) {
            let (Some(v2), Some(h2)) = (aut.step(v, l), cay.step(h, l)) else { continue };
            let e = if l.inverse { h2 * k + l.index } else { h * k + l.index };
            sub.edges[e] = true;
            sub.vertices[h2] = true;
            if seen.insert((v2, h2), ()).is_none() {
                q.push_back((v2, h2));
            }
        }
    }
    sub
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_std(s).unwrap()
    }

    fn edges(a: &Automaton) -> Vec<(usize, usize, usize)> {
        a.edges()
    }

    #[test]
    fn fold_bouquet_example() {
        let g = LabeledGraph::bouquet(&[w("aa"), w("abA")], 2);
        let f = fold(&g);
        assert_eq!(f.n(), 2);
        assert_eq!(edges(&f), vec![(0, 0, 1), (1, 0, 0), (1, 1, 1)]);
    }

    #[test]
    fn fold_parallel_loops() {
        let mut g = LabeledGraph::new(2, 1);
        g.base = Some(0);
        g.add_edge(0, 0, 0);
        g.add_edge(0, 0, 0);
        let f = fold(&g);
        assert_eq!(edges(&f), vec![(0, 0, 0)]);
    }

    #[test]
    fn fold_is_fixed_point_on_folded() {
        let a = core_of_words(&[w("aa"), w("b")], 2);
        assert_eq!(fold(&a.to_graph()), a);
    }

    #[test]
    fn core_examples() {
        let c = core_of_words(&[w("aa"), w("b")], 2);
        assert_eq!(edges(&c), vec![(0, 0, 1), (0, 1, 0), (1, 0, 0)]);
        let c = core_of_words(&[w("a")], 2);
        assert_eq!(edges(&c), vec![(0, 0, 0)]);
        let c = core_of_words(&[w("aa"), w("abA")], 2);
        assert_eq!(c.n(), 2);
        assert_eq!(c.rank().unwrap(), 2);
        let c = core_of_words(&[], 2);
        assert_eq!((c.n(), c.edge_count()), (1, 0));
    }

    #[test]
    fn core_trims_hairs() {
        // a path hanging off the base gets removed
        let g = LabeledGraph::bouquet(&[w("abBA")], 2);
        let c = fold(&g).core();
        assert_eq!(c.n(), 1);
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn member_examples() {
        let c = core_of_words(&[w("aa"), w("b")], 2);
        assert!(c.member(&w("aab")));
        assert!(c.member(&Word::empty()));
        assert!(!c.member(&w("a")));
        assert!(c.member(&w("aabAA")));
        assert!(!c.member(&w("abA")));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(core_of_words(&[w("aa"), w("b")], 2).rank().unwrap(), 2);
        assert_eq!(core_of_words(&[w("a"), w("b"), w("c")], 3).rank().unwrap(), 3);
        let two = Automaton::from_parts(2, 2, &[(0, 0, 1), (1, 0, 0), (0, 1, 1), (1, 1, 0)], 0).unwrap();
        assert_eq!(two.rank().unwrap(), 3);
        let disc = Automaton::from_parts(2, 2, &[], 0).unwrap();
        assert_eq!(disc.rank(), Err(Error::Disconnected));
    }

    #[test]
    fn product_examples() {
        let a = core_of_words(&[w("a")], 2);
        let aa = core_of_words(&[w("aa")], 2);
        assert!(a.product(&aa).isomorphic(&aa));
        let x = core_of_words(&[w("aa"), w("b")], 2);
        assert!(x.product(&x).isomorphic(&x));
        let b = core_of_words(&[w("b")], 2);
        let p = a.product(&b);
        assert_eq!((p.n(), p.edge_count()), (1, 0));
    }

    #[test]
    fn embed_examples() {
        let z2 = Automaton::from_parts(2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)], 0).unwrap();
        let edge = Automaton::from_parts(2, 2, &[(0, 0, 1)], 0).unwrap();
        assert_eq!(edge.embed_into(&z2, 0), Some(vec![0, 1]));
        let loop_a = core_of_words(&[w("a")], 2);
        assert_eq!(loop_a.embed_into(&z2, 0), None);
        let x = core_of_words(&[w("aa"), w("b")], 2);
        assert_eq!(x.embed_into(&x, x.base()), Some((0..x.n()).collect()));
    }

    #[test]
    fn transition_group_trivial() {
        let one = Automaton::from_parts(2, 1, &[(0, 0, 0), (0, 1, 0)], 0).unwrap();
        let t = one.transition_group().unwrap();
        assert!(t.gens.iter().all(|p| p.is_identity()));
        assert!(core_of_words(&[w("aa")], 2).transition_group().is_err());
    }

    #[test]
    fn span_examples() {
        let z2 = Automaton::from_parts(2, 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)], 0).unwrap();
        let bouquet = core_of_words(&[w("a"), w("b")], 2);
        assert_eq!(span_from_base(&bouquet, &z2), Subgraph::full(&z2));
        let loop_a = core_of_words(&[w("a")], 2);
        let s = span_from_base(&loop_a, &z2);
        assert_eq!(s.edge_ids().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.vertex_ids().count(), 2);
        let edge = Automaton::from_parts(2, 2, &[(0, 0, 1)], 0).unwrap();
        let s = span_from_base(&edge, &z2);
        assert_eq!(s.edge_ids().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn aut_format() {
        let c = core_of_words(&[w("aa"), w("b")], 2);
        let text = c.write_aut();
        assert_eq!(text, "alphabet a b\nedge 0 a 1\nedge 0 b 0\nedge 1 a 0\nbase 0\n");
        let back = LabeledGraph::read_aut(&text).unwrap();
        assert_eq!(back.write_aut(), text);
        let empty = Automaton::trivial(2);
        assert_eq!(empty.write_aut(), "alphabet a b\nvertex 0\nbase 0\n");
        let dot = c.to_dot();
        assert!(dot.contains("0 [shape=doublecircle]"));
        assert_eq!(dot.matches("label=").count(), 3);
    }

    #[test]
    fn aut_parse_errors() {
        assert!(LabeledGraph::read_aut("edge 0 a").is_err());
        assert!(LabeledGraph::read_aut("alphabet a\nedge 0 b 1").is_err());
        let g = LabeledGraph::read_aut("# comment\nedge 0 b 1 # trailing\n").unwrap();
        assert_eq!((g.alphabet, g.vertices, g.base), (2, 2, None));
    }
}
