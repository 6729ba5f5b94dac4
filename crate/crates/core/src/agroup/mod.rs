//! Finite groups generated by the alphabet: elements are enumerated breadth-first
//! from the identity and stored as right-multiplication tables.

mod spec;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::autom::Automaton;
use crate::error::{Error, Result};
use crate::gaschuetz::GaschuetzLayer;
use crate::word::{SignedLetter, Word};

pub use spec::GroupSpec;

pub const DEFAULT_BOUND: usize = 1_000_000;

/// A materialized A-generated group. Element `0` is the identity; elements are
/// numbered in breadth-first discovery order using the letters `a, b, ...` in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    k: usize,
    right: Vec<usize>,
    right_inv: Vec<usize>,
    /// (parent element, letter) in the breadth-first tree; unused for the identity.
    parent: Vec<(usize, usize)>,
}

impl FiniteGroup {
    /// Enumerate the group generated by `k` letters acting on the right of `identity`
    /// through `mul_gen`. Returns the group and the element representatives by index.
    pub fn from_bfs<T, F>(k: usize, identity: T, mut mul_gen: F, bound: usize) -> Result<(FiniteGroup, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: FnMut(&T, usize) -> T,
    {
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut elems = vec![identity];
        let mut parent = vec![(0, usize::MAX)];
        let mut right = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for a in 0..k {
                let y = mul_gen(&elems[i], a);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= bound {
                            return Err(Error::OrderBound(bound));
                        }
                        let j = elems.len();
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((i, a));
                        j
                    }
                };
                right.push(j);
            }
            i += 1;
        }
        let n = elems.len();
        let mut right_inv = vec![usize::MAX; n * k];
        for g in 0..n {
            for a in 0..k {
                right_inv[right[g * k + a] * k + a] = g;
            }
        }
        if right_inv.contains(&usize::MAX) {
            return Err(Error::Precondition("generator action is not a permutation".into()));
        }
        Ok((FiniteGroup { k, right, right_inv, parent }, elems))
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mul_gen(&self, g: usize, a: usize) -> usize {
        self.right[g * self.k + a]
    }

    pub fn mul_gen_inv(&self, g: usize, a: usize) -> usize {
        self.right_inv[g * self.k + a]
    }

    pub fn step(&self, g: usize, l: SignedLetter) -> usize {
        if l.inverse {
            self.mul_gen_inv(g, l.index)
        } else {
            self.mul_gen(g, l.index)
        }
    }

    /// Image of letter `a` in the group.
    pub fn generator(&self, a: usize) -> usize {
        self.mul_gen(0, a)
    }

    /// Positive word labeling the tree path from the identity to `g`.
    pub fn tree_word(&self, mut g: usize) -> Word {
        let mut ls = Vec::new();
        while g != 0 {
            let (p, a) = self.parent[g];
            ls.push(SignedLetter::pos(a));
            g = p;
        }
        ls.reverse();
        Word::new(ls)
    }

    pub fn parent(&self, g: usize) -> Option<(usize, usize)> {
        (g != 0).then(|| self.parent[g])
    }

    pub fn evaluate_from(&self, g: usize, w: &Word) -> usize {
        w.letters().iter().fold(g, |x, &l| self.step(x, l))
    }

    pub fn evaluate(&self, w: &Word) -> usize {
        self.evaluate_from(0, w)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.evaluate_from(g, &self.tree_word(h))
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.evaluate(&self.tree_word(g).inverse())
    }

    pub fn pow(&self, g: usize, e: u64) -> usize {
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, g);
        }
        r
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// Left multiplication by `g` as an index map: `i -> g * i`.
    pub fn left_perm(&self, g: usize) -> Vec<usize> {
        let mut l = vec![0; self.order()];
        l[0] = g;
        for i in 1..self.order() {
            let (p, a) = self.parent[i];
            l[i] = self.mul_gen(l[p], a);
        }
        l
    }

    /// Full multiplication table, row `g` is `left_perm(g)`.
    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|g| self.left_perm(g)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = (0..self.k).map(|a| self.generator(a)).collect();
        gens.iter().all(|&x| gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn cayley(&self) -> Automaton {
        let mut edges = Vec::with_capacity(self.order() * self.k);
        for g in 0..self.order() {
            for a in 0..self.k {
                edges.push((g, a, self.mul_gen(g, a)));
            }
        }
        Automaton::from_parts(self.k, self.order(), &edges, 0).expect("Cayley graph is folded")
    }

    /// The same group with extra letters mapped to the identity.
    pub fn pad_alphabet(&self, k: usize) -> FiniteGroup {
        assert!(k >= self.k);
        let n = self.order();
        let mut right = Vec::with_capacity(n * k);
        let mut right_inv = Vec::with_capacity(n * k);
        for g in 0..n {
            for a in 0..k {
                right.push(if a < self.k { self.mul_gen(g, a) } else { g });
                right_inv.push(if a < self.k { self.mul_gen_inv(g, a) } else { g });
            }
        }
        FiniteGroup { k, right, right_inv, parent: self.parent.clone() }
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut q = VecDeque::from([0]);
        let tables: Vec<Vec<usize>> = gens.iter().map(|&s| self.right_mul_map(s)).collect();
        while let Some(x) = q.pop_front() {
            for t in &tables {
                let y = t[x];
                if !inside[y] {
                    inside[y] = true;
                    q.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| inside[x]).collect()
    }

    /// Right multiplication by `s` as an index map: `x -> x * s`.
    pub fn right_mul_map(&self, s: usize) -> Vec<usize> {
        let w = self.tree_word(s);
        (0..self.order()).map(|x| self.evaluate_from(x, &w)).collect()
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut conj: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order()];
        for &x in gens {
            for g in 0..self.order() {
                let gi = self.inverse(g);
                let c = self.mul(self.mul(gi, x), g);
                if !seen[c] {
                    seen[c] = true;
                    conj.push(c);
                }
            }
        }
        self.subgroup(&conj)
    }

    /// Normal closure of the commutators of the generator images.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.k {
            for b in a + 1..self.k {
                let x = self.generator(a);
                let y = self.generator(b);
                let c = self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y));
                comms.push(c);
            }
        }
        self.normal_closure(&comms)
    }

    /// Invariant factors `d1 | d2 | ...` of the abelianization, ascending; empty for a perfect group.
    pub fn abelianization(&self) -> Vec<u64> {
        let n_sub = self.commutator_subgroup();
        let mut in_n = vec![false; self.order()];
        for &x in &n_sub {
            in_n[x] = true;
        }
        let q = (self.order() / n_sub.len()) as u64;
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for (p, e) in factorize(q) {
            // log_p of the number of cosets killed by p^i, for i = 0..=e
            let mut logs = vec![0u32];
            let mut powers: Vec<usize> = (0..self.order()).collect();
            for _ in 0..e {
                powers = powers.iter().map(|&x| self.pow(x, p)).collect();
                let count = powers.iter().filter(|&&x| in_n[x]).count() / n_sub.len();
                logs.push(ilog(count as u64, p));
            }
            let s: Vec<u32> = (1..=e as usize).map(|i| logs[i] - logs[i - 1]).collect();
            let mut exps = Vec::new();
            for i in 0..s.len() {
                let next = s.get(i + 1).copied().unwrap_or(0);
                for _ in 0..(s[i] - next) {
                    exps.push(i as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push((p, exps));
        }
        let r = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors: Vec<u64> =
            (0..r).map(|j| per_prime.iter().map(|(p, e)| e.get(j).map_or(1, |&x| p.pow(x))).product()).collect();
        factors.sort_unstable();
        factors
    }

    /// Elements commuting with every generator image.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| {
                (0..self.k).all(|a| {
                    let x = self.generator(a);
                    self.mul(x, z) == self.mul_gen(z, a)
                })
            })
            .collect()
    }

    /// Signed traversal counts of the path of `w` from the identity in the Cayley graph.
    pub fn traversal_vector(&self, w: &Word) -> TraversalVector {
        let mut counts = vec![0i64; self.order() * self.k];
        let mut g = 0;
        for &l in w.letters() {
            let h = self.step(g, l);
            if l.inverse {
                counts[h * self.k + l.index] -= 1;
            } else {
                counts[g * self.k + l.index] += 1;
            }
            g = h;
        }
        TraversalVector { k: self.k, counts, end: g }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x > 1 {
        assert_eq!(x % p, 0, "count is not a power of {p}");
        x /= p;
        e += 1;
    }
    e
}

/// Signed traversal counts indexed by positive edge id `g * k + a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraversalVector {
    pub k: usize,
    pub counts: Vec<i64>,
    /// Endpoint of the path.
    pub end: usize,
}

impl TraversalVector {
    pub fn get(&self, g: usize, a: usize) -> i64 {
        self.counts[g * self.k + a]
    }

    /// Nonzero entries as `((g, a), count)`.
    pub fn support(&self) -> Vec<((usize, usize), i64)> {
        self.counts.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| ((e / self.k, e % self.k), c)).collect()
    }

    /// Outgoing minus incoming traversals equals `[v = 1] - [v = end]` at every vertex.
    pub fn boundary_ok(&self, group: &FiniteGroup) -> bool {
        let mut bal = vec![0i64; group.order()];
        for g in 0..group.order() {
            for a in 0..self.k {
                let c = self.get(g, a);
                bal[g] += c;
                bal[group.mul_gen(g, a)] -= c;
            }
        }
        (0..group.order()).all(|v| bal[v] == (v == 0) as i64 - (v == self.end) as i64)
    }
}

/// The generator-respecting map from one A-generated group onto another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub map: Vec<usize>,
}

impl Morphism {
    pub fn apply(&self, h: usize) -> usize {
        self.map[h]
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&h| self.map[h] == 0).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Morphism) -> Morphism {
        Morphism { map: self.map.iter().map(|&x| next.map[x]).collect() }
    }

    pub fn identity(n: usize) -> Morphism {
        Morphism { map: (0..n).collect() }
    }
}

/// The canonical morphism `h -> g` if one exists. It exists exactly when the subgroup
/// of `h x g` generated by the letter pairs has order `|h|`; the search stops as soon
/// as a second partner for some element of `h` shows up.
pub fn canonical_morphism(h: &FiniteGroup, g: &FiniteGroup) -> Option<Morphism> {
    if h.k() != g.k() {
        return None;
    }
    let mut map = vec![usize::MAX; h.order()];
    map[0] = 0;
    let mut q = VecDeque::from([0]);
    while let Some(x) = q.pop_front() {
        for a in 0..h.k() {
            let (y, z) = (h.mul_gen(x, a), g.mul_gen(map[x], a));
            if map[y] == usize::MAX {
                map[y] = z;
                q.push_back(y);
            } else if map[y] != z {
                return None;
            }
        }
    }
    Some(Morphism { map })
}

/// The subgroup of `g x h` generated by the pairs of letter images.
pub fn product_a(g: &FiniteGroup, h: &FiniteGroup, bound: usize) -> Result<(FiniteGroup, Vec<(usize, usize)>)> {
    let k = g.k().max(h.k());
    let (g, h) = (g.pad_alphabet(k), h.pad_alphabet(k));
    FiniteGroup::from_bfs(k, (0usize, 0usize), |&(x, y), a| (g.mul_gen(x, a), h.mul_gen(y, a)), bound)
}

/// A group given either by its element table or lazily as a Gaschutz layer over one.
#[derive(Clone, Debug)]
pub enum AGroup {
    Materialized(FiniteGroup),
    Lazy(Box<GaschuetzLayer>),
}

impl AGroup {
    pub fn k(&self) -> usize {
        match self {
            AGroup::Materialized(g) => g.k(),
            AGroup::Lazy(l) => l.base().k(),
        }
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        match self {
            AGroup::Materialized(g) => g.evaluate(w) == 0,
            AGroup::Lazy(l) => l.is_identity(w),
        }
    }

    /// Human-readable value of `w`.
    pub fn describe(&self, w: &Word) -> String {
        if self.is_identity(w) {
            return "identity".into();
        }
        match self {
            AGroup::Materialized(g) => {
                let x = g.evaluate(w);
                format!("element {x} (= {})", g.tree_word(x))
            }
            AGroup::Lazy(l) => l.evaluate(w).to_string(),
        }
    }

    /// Enumerate a lazy group; a materialized one is returned as is.
    pub fn materialize(&self, bound: usize) -> Result<FiniteGroup> {
        match self {
            AGroup::Materialized(g) => Ok(g.clone()),
            AGroup::Lazy(l) => Ok(l.materialize(bound)?.0),
        }
    }
}
