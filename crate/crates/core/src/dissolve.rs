//! Dissolving decisions and related finite checks.
//!
//! `H` dissolves a constellation `(Xi, g, Theta)` of `G` when no two words, one reading
//! a path `1 -> g` inside `Xi` and one inside `Theta`, have equal value in `H`. On an
//! enumerated `H` this is reachability in the lifted subgraphs. For a Gaschutz layer over
//! an enumerated group the endpoint sets are cosets of cycle spaces, so the question
//! becomes a linear one mod p.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::agroup::{canonical_morphism, FiniteGroup, Morphism};
use crate::autom::Subgraph;
use crate::constellation::{delta_a, maximal_constellations, Constellation};
use crate::error::{Error, Result};
use crate::gaschuetz::{GaschuetzLayer, Tower};
use crate::linalg::ModpBasis;
use crate::word::{SignedLetter, Word};

/// Component of `1` in the preimage of a subgraph of `Γ(G)` inside `Γ(H)`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub vertices: Vec<bool>,
    /// Edge ids `h * k + a` of `Γ(H)` lying over the subgraph, inside the component.
    pub edges: Vec<bool>,
    /// Vertex of `Γ(G)` to the lifted vertices over it.
    pub fibers: BTreeMap<usize, Vec<usize>>,
    /// Breadth-first tree over signed letters: (previous vertex, letter).
    pub tree: Vec<Option<(usize, SignedLetter)>>,
    /// Breadth-first order of discovery.
    pub order: Vec<usize>,
}

impl Lift {
    /// Word of the tree path from `1` to `x`.
    pub fn tree_word(&self, mut x: usize) -> Word {
        let mut ls = Vec::new();
        while let Some((p, l)) = self.tree[x] {
            ls.push(l);
            x = p;
        }
        ls.reverse();
        Word::new(ls)
    }
}

pub fn reachable_lift(h: &FiniteGroup, phi: &Morphism, sub: &Subgraph) -> Lift {
    let k = h.k();
    let n = h.order();
    let allowed = |x: usize, a: usize| sub.has_edge(phi.apply(x) * k + a);
    let mut vertices = vec![false; n];
    let mut tree = vec![None; n];
    let mut order = Vec::new();
    if sub.has_vertex(0) {
        vertices[0] = true;
        order.push(0);
        let mut q = VecDeque::from([0]);
        while let Some(x) = q.pop_front() {
            for l in SignedLetter::all(k) {
                let y = h.step(x, l);
                let edge_src = if l.inverse { y } else { x };
                if allowed(edge_src, l.index) && !vertices[y] {
                    vertices[y] = true;
                    tree[y] = Some((x, l));
                    order.push(y);
                    q.push_back(y);
                }
            }
        }
    }
    let mut edges = vec![false; n * k];
    for x in 0..n {
        if vertices[x] {
            for a in 0..k {
                if allowed(x, a) {
                    edges[x * k + a] = true;
                }
            }
        }
    }
    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        if vertices[x] {
            fibers.entry(phi.apply(x)).or_default().push(x);
        }
    }
    Lift { vertices, edges, fibers, tree, order }
}

/// A word using positive letters only that reads `1 -> target` inside the lift, if any.
fn positive_word(h: &FiniteGroup, lift: &Lift, target: usize) -> Option<Word> {
    let k = h.k();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; h.order()];
    let mut seen = vec![false; h.order()];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(x) = q.pop_front() {
        if x == target {
            let mut ls = Vec::new();
            let mut y = x;
            while let Some((p, a)) = prev[y] {
                ls.push(SignedLetter::pos(a));
                y = p;
            }
            ls.reverse();
            return Some(Word::new(ls));
        }
        for a in 0..k {
            if lift.edges[x * k + a] {
                let y = h.mul_gen(x, a);
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, a));
                    q.push_back(y);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Reachability,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    /// Two words of equal value, `u` read inside `Xi` and `v` inside `Theta`.
    Words { u: String, v: String },
    /// A shared endpoint `h` of the enumerated level and the nonzero entries
    /// `(element, letter, residue)` of a difference vector lying in the cycle span.
    Vector { h: usize, difference: Vec<(usize, usize, u64)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissolveReport {
    pub id: String,
    pub dissolved: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

/// Whether `path` of `w` from `1` in `Γ(G)` stays in `sub` and ends at `end`.
pub fn path_inside(g: &FiniteGroup, sub: &Subgraph, w: &Word, end: usize) -> bool {
    let k = g.k();
    let mut x = 0;
    for &l in w.letters() {
        let y = g.step(x, l);
        let e = if l.inverse { y * k + l.index } else { x * k + l.index };
        if !sub.has_edge(e) {
            return false;
        }
        x = y;
    }
    x == end
}

/// Exact decision on an enumerated `h` with canonical morphism `phi: h -> g`.
pub fn dissolves_materialized(g: &FiniteGroup, h: &FiniteGroup, phi: &Morphism, c: &Constellation) -> DissolveReport {
    let lx = reachable_lift(h, phi, &c.xi);
    let lt = reachable_lift(h, phi, &c.theta);
    let empty = Vec::new();
    let fx = lx.fibers.get(&c.g).unwrap_or(&empty);
    let ft = lt.fibers.get(&c.g).unwrap_or(&empty);
    let shared: Vec<usize> = fx.iter().copied().filter(|x| ft.contains(x)).collect();
    let Some(&target) = shared.first() else {
        return DissolveReport { id: String::new(), dissolved: true, method: Method::Reachability, witness: None };
    };
    let u = positive_word(h, &lx, target).unwrap_or_else(|| lx.tree_word(target));
    let v = positive_word(h, &lt, target).unwrap_or_else(|| lt.tree_word(target));
    assert_eq!(h.evaluate(&u), h.evaluate(&v), "witness words differ in H");
    assert!(path_inside(g, &c.xi, &u, c.g) && path_inside(g, &c.theta, &v, c.g), "witness path leaves its part");
    DissolveReport {
        id: String::new(),
        dissolved: false,
        method: Method::Reachability,
        witness: Some(Witness::Words { u: u.to_string(), v: v.to_string() }),
    }
}

/// Traversal vectors of the tree paths of a lift, one dense vector per reached vertex.
fn tree_vectors(h: &FiniteGroup, lift: &Lift) -> Vec<Option<Vec<i64>>> {
    let k = h.k();
    let mut tv: Vec<Option<Vec<i64>>> = vec![None; h.order()];
    for &x in &lift.order {
        let v = match lift.tree[x] {
            None => vec![0; h.order() * k],
            Some((p, l)) => {
                let mut v = tv[p].clone().unwrap();
                if l.inverse {
                    v[x * k + l.index] -= 1;
                } else {
                    v[p * k + l.index] += 1;
                }
                v
            }
        };
        tv[x] = Some(v);
    }
    tv
}

/// Add the fundamental cycles of a lift to `basis`.
fn add_cycles(h: &FiniteGroup, lift: &Lift, tv: &[Option<Vec<i64>>], basis: &mut ModpBasis) {
    let k = h.k();
    for e in 0..lift.edges.len() {
        if !lift.edges[e] {
            continue;
        }
        let (x, a) = (e / k, e % k);
        let y = h.mul_gen(x, a);
        let mut v = tv[x].clone().unwrap();
        v[e] += 1;
        for (vi, yi) in v.iter_mut().zip(tv[y].as_ref().unwrap()) {
            *vi -= yi;
        }
        if v.iter().any(|&c| c != 0) {
            let c = basis.canon(&v);
            basis.insert(&c);
        }
    }
}

/// Decision for a Gaschutz layer `top` over an enumerated group `G_k`, with `proj: G_k -> G`.
pub fn dissolves_linear(top: &GaschuetzLayer, proj: &Morphism, c: &Constellation) -> Result<DissolveReport> {
    let gk = top.base();
    let k = gk.k();
    let lx = reachable_lift(gk, proj, &c.xi);
    let lt = reachable_lift(gk, proj, &c.theta);
    let empty = Vec::new();
    let fx = lx.fibers.get(&c.g).unwrap_or(&empty);
    let ft = lt.fibers.get(&c.g).unwrap_or(&empty);
    let shared: Vec<usize> = fx.iter().copied().filter(|x| ft.contains(x)).collect();
    let done = |dissolved, witness| DissolveReport { id: String::new(), dissolved, method: Method::Linear, witness };
    if shared.is_empty() {
        return Ok(done(true, None));
    }
    let dim = gk.order() * k;
    let mut basis = ModpBasis::new(top.p(), dim)?;
    let tvx = tree_vectors(gk, &lx);
    let tvt = tree_vectors(gk, &lt);
    add_cycles(gk, &lx, &tvx, &mut basis);
    add_cycles(gk, &lt, &tvt, &mut basis);
    if top.tilde() {
        for a in 0..k {
            let v: Vec<u64> = (0..dim).map(|e| (e % k == a) as u64).collect();
            basis.insert(&v);
        }
    }
    for &x in &shared {
        let diff: Vec<i64> =
            tvx[x].as_ref().unwrap().iter().zip(tvt[x].as_ref().unwrap()).map(|(a, b)| a - b).collect();
        let d = basis.canon(&diff);
        if basis.contains(&d) {
            let difference = d.iter().enumerate().filter(|(_, &r)| r != 0).map(|(e, &r)| (e / k, e % k, r)).collect();
            return Ok(done(false, Some(Witness::Vector { h: x, difference })));
        }
    }
    Ok(done(true, None))
}

/// A group over `G` to test for dissolving.
#[derive(Clone, Debug)]
pub enum Candidate {
    /// Enumerated `H` with its canonical morphism onto `G`.
    Materialized { h: FiniteGroup, phi: Morphism },
    /// Lazy Gaschutz layer over an enumerated group mapping onto `G` by `proj`.
    Layer { top: GaschuetzLayer, proj: Morphism },
}

impl Candidate {
    pub fn materialized(h: FiniteGroup, g: &FiniteGroup) -> Result<Candidate> {
        let phi =
            canonical_morphism(&h, g).ok_or_else(|| Error::Precondition("no canonical morphism onto G".into()))?;
        Ok(Candidate::Materialized { h, phi })
    }

    /// From a tower over `G`: the top layer enumerated (reachability) or kept lazy (linear).
    pub fn from_tower(tower: &Tower, method: Method, bound: usize) -> Result<Candidate> {
        let proj = tower.projection_to_base();
        match (&tower.top, method) {
            (None, _) => Ok(Candidate::Materialized { h: tower.levels[0].clone(), phi: proj }),
            (Some(top), Method::Linear) => Ok(Candidate::Layer { top: top.clone(), proj }),
            (Some(top), Method::Reachability) => {
                let (h, elems) = top.materialize(bound)?;
                let phi = GaschuetzLayer::projection(&elems).then(&proj);
                Ok(Candidate::Materialized { h, phi })
            }
        }
    }

    pub fn check(&self, g: &FiniteGroup, c: &Constellation) -> Result<DissolveReport> {
        match self {
            Candidate::Materialized { h, phi } => Ok(dissolves_materialized(g, h, phi, c)),
            Candidate::Layer { top, proj } => dissolves_linear(top, proj, c),
        }
    }
}

fn letter_name(l: SignedLetter) -> String {
    Word::letter(l).to_string()
}

/// Checks `Delta_a` for every signed letter.
pub fn is_weak_dissolver(g: &FiniteGroup, cand: &Candidate) -> Result<(bool, Vec<DissolveReport>)> {
    let mut reports = Vec::new();
    for l in SignedLetter::all(g.k()) {
        let c = delta_a(g, l)?;
        let mut r = cand.check(g, &c)?;
        r.id = format!("delta_{}", letter_name(l));
        reports.push(r);
    }
    Ok((reports.iter().all(|r| r.dissolved), reports))
}

/// Checks every maximal constellation with every admissible `g`.
pub fn is_dissolver(g: &FiniteGroup, cand: &Candidate, bound: usize) -> Result<(bool, Vec<DissolveReport>)> {
    let host = g.cayley();
    let mut reports = Vec::new();
    for (i, pair) in maximal_constellations(g, bound)?.iter().enumerate() {
        for c in pair.constellations(&host) {
            let mut r = cand.check(g, &c)?;
            r.id = format!("pair{i}_g{}", c.g);
            reports.push(r);
        }
    }
    Ok((reports.iter().all(|r| r.dissolved), reports))
}

/// The four conditions for `phi: H -> G` and a signed letter, computed independently:
/// removing the `N`-translates of the edge `(1, a)` disconnects `Γ(H)`; it separates `1`
/// from `a`; it separates `n` from `na` for every `n` in `N`; `H` dissolves `Delta_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisconnectionReport {
    pub disconnected: bool,
    pub separates_one: bool,
    pub separates_all: bool,
    pub dissolves_delta: bool,
}

impl DisconnectionReport {
    pub fn agree(&self) -> bool {
        let v = [self.disconnected, self.separates_one, self.separates_all, self.dissolves_delta];
        v.iter().all(|&x| x == v[0])
    }
}

fn components(h: &FiniteGroup, removed: &[bool]) -> Vec<usize> {
    let k = h.k();
    let mut comp = vec![usize::MAX; h.order()];
    let mut c = 0;
    for s in 0..h.order() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = c;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for a in 0..k {
                let y = h.mul_gen(x, a);
                if !removed[x * k + a] && comp[y] == usize::MAX {
                    comp[y] = c;
                    q.push_back(y);
                }
                let z = h.mul_gen_inv(x, a);
                if !removed[z * k + a] && comp[z] == usize::MAX {
                    comp[z] = c;
                    q.push_back(z);
                }
            }
        }
        c += 1;
    }
    comp
}

pub fn disconnection_equivalence(
    g: &FiniteGroup,
    h: &FiniteGroup,
    phi: &Morphism,
    l: SignedLetter,
) -> Result<DisconnectionReport> {
    let k = h.k();
    let kernel = phi.kernel();
    let src = if l.inverse { h.mul_gen_inv(0, l.index) } else { 0 };
    let mut removed = vec![false; h.order() * k];
    for &n in &kernel {
        removed[h.mul(n, src) * k + l.index] = true;
    }
    let comp = components(h, &removed);
    let la = h.step(0, l);
    let disconnected = comp.iter().any(|&c| c != comp[0]);
    let separates_one = comp[0] != comp[la];
    let separates_all = kernel.iter().all(|&n| comp[n] != comp[h.step(n, l)]);
    let delta = delta_a(g, l)?;
    let dissolves_delta = dissolves_materialized(g, h, phi, &delta).dissolved;
    Ok(DisconnectionReport { disconnected, separates_one, separates_all, dissolves_delta })
}

/// With `L` the preimage of a nontrivial subgroup `K` of `G` under `proj: H -> G`: whether
/// removing `L e^{±1}`, `e = (x, a)`, disconnects `Γ(H)` with `x` and `xa` separated.
pub fn key_lemma_check(
    h: &FiniteGroup,
    proj: &Morphism,
    k_gens: &[usize],
    g: &FiniteGroup,
    x: usize,
    a: usize,
) -> Result<bool> {
    let ksub = g.subgroup(k_gens);
    if ksub.len() < 2 {
        return Err(Error::Precondition("K must be a nontrivial subgroup".into()));
    }
    let kk = h.k();
    let mut removed = vec![false; h.order() * kk];
    for lelem in (0..h.order()).filter(|&y| ksub.contains(&proj.apply(y))) {
        removed[h.mul(lelem, x) * kk + a] = true;
    }
    let comp = components(h, &removed);
    let disconnected = comp.iter().any(|&c| c != comp[0]);
    Ok(disconnected && comp[x] != comp[h.mul_gen(x, a)])
}

/// Run the key-lemma check on every edge of `Γ(Tilde(G, p))`; returns (edges checked, failures).
pub fn key_lemma_all(g: &FiniteGroup, p: u64, k_gens: &[usize], bound: usize) -> Result<(usize, Vec<(usize, usize)>)> {
    let layer = GaschuetzLayer::new(g.clone(), p, true)?;
    let (h, elems) = layer.materialize(bound)?;
    let proj = GaschuetzLayer::projection(&elems);
    let mut failures = Vec::new();
    let mut count = 0;
    for x in 0..h.order() {
        for a in 0..h.k() {
            count += 1;
            if !key_lemma_check(&h, &proj, k_gens, g, x, a)? {
                failures.push((x, a));
            }
        }
    }
    Ok((count, failures))
}

/// Signed sum of the traversals by `w` in `Γ(H)` of the lifts of the border edges of `Xi`
/// around the component of `1` in `Xi ∩ Theta`. For admissible `w` this is exactly 1.
pub fn detecting_edges_sum(
    g: &FiniteGroup,
    h: &FiniteGroup,
    phi: &Morphism,
    c: &Constellation,
    w: &Word,
) -> Result<i64> {
    if !path_inside(g, &c.xi, w, c.g) {
        return Err(Error::Precondition(format!("path of `{w}` does not run inside Xi to g")));
    }
    let host = g.cayley();
    let k = g.k();
    let ups = c.xi.intersect(&c.theta).component(&host, 0);
    let mut border = vec![0i64; g.order() * k];
    for e in c.xi.edge_ids() {
        let (s, a) = (e / k, e % k);
        let d = g.mul_gen(s, a);
        border[e] = match (ups[s], ups[d]) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        };
    }
    let t = h.traversal_vector(w);
    let mut sum = 0;
    for x in 0..h.order() {
        for a in 0..k {
            sum += border[phi.apply(x) * k + a] * t.get(x, a);
        }
    }
    Ok(sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    /// `|G|(|A|-1)+1`.
    pub formula: usize,
    /// `E - rank(boundary)` of `Γ(G)` over F_p.
    pub cycle_space_dim: usize,
    /// `log_p` of the kernel of the plain layer, when it could be enumerated.
    pub kernel_rank: Option<usize>,
    pub tilde_kernel_rank: Option<usize>,
    /// `formula - tilde_kernel_rank`; the center has rank `|A|`.
    pub tilde_deficit: Option<usize>,
}

impl RankReport {
    pub fn holds(&self) -> bool {
        self.cycle_space_dim == self.formula && self.kernel_rank.is_none_or(|r| r == self.formula)
    }
}

pub fn schreier_rank_check(g: &FiniteGroup, p: u64, bound: usize) -> Result<RankReport> {
    let (n, k) = (g.order(), g.k());
    let formula = n * (k - 1) + 1;
    let mut bd = ModpBasis::new(p, n * k)?;
    for v in 0..n {
        let mut row = vec![0i64; n * k];
        for a in 0..k {
            row[v * k + a] += 1;
            row[g.mul_gen_inv(v, a) * k + a] -= 1;
        }
        let r = bd.canon(&row);
        bd.insert(&r);
    }
    let cycle_space_dim = n * k - bd.rank();
    let kernel_log = |tilde: bool| -> Result<Option<usize>> {
        let layer = GaschuetzLayer::new(g.clone(), p, tilde)?;
        if layer.order_formula() > num_bigint::BigUint::from(bound) {
            return Ok(None);
        }
        let (_, elems) = layer.materialize(bound)?;
        let size = elems.iter().filter(|x| x.g == 0).count() as u64;
        let mut e = 0;
        let mut s = size;
        while s > 1 {
            if !s.is_multiple_of(p) {
                return Err(Error::Precondition(format!("kernel order {size} is not a power of {p}")));
            }
            s /= p;
            e += 1;
        }
        Ok(Some(e))
    };
    let kernel_rank = kernel_log(false)?;
    let tilde_kernel_rank = kernel_log(true)?;
    let tilde_deficit = tilde_kernel_rank.map(|t| formula - t);
    Ok(RankReport { formula, cycle_space_dim, kernel_rank, tilde_kernel_rank, tilde_deficit })
}

/// Whether the kernel of `layer -> G` is spanned by commutators `(s - 1) c` with the group,
/// together with the center when the layer is the tilde one. In that case the kernel lies in
/// the derived subgroup and the layer has the same abelianization as `G`.
pub fn abelianization_preserved(g: &FiniteGroup, p: u64, tilde: bool) -> Result<bool> {
    let (n, k) = (g.order(), g.k());
    let dim = n * k;
    let cay = g.cayley();
    let full = Subgraph::full(&cay);
    let lift = reachable_lift(g, &crate::agroup::Morphism::identity(n), &full);
    let tv = tree_vectors(g, &lift);
    let mut cycles = ModpBasis::new(p, dim)?;
    add_cycles(g, &lift, &tv, &mut cycles);
    let cycle_vecs: Vec<Vec<u64>> = {
        let mut out = Vec::new();
        for e in 0..dim {
            let (x, a) = (e / k, e % k);
            let y = g.mul_gen(x, a);
            let mut v = tv[x].clone().unwrap();
            v[e] += 1;
            for (vi, yi) in v.iter_mut().zip(tv[y].as_ref().unwrap()) {
                *vi -= yi;
            }
            if v.iter().any(|&c| c != 0) {
                out.push(cycles.canon(&v));
            }
        }
        out
    };
    let target = cycles.rank();
    let mut span = ModpBasis::new(p, dim)?;
    if tilde {
        for a in 0..k {
            span.insert(&(0..dim).map(|e| (e % k == a) as u64).collect::<Vec<_>>());
        }
    }
    'outer: for s in 1..n {
        let left = g.left_perm(s);
        for c in &cycle_vecs {
            if span.rank() == target {
                break 'outer;
            }
            let mut v = vec![0u64; dim];
            for (e, &r) in c.iter().enumerate() {
                if r != 0 {
                    let moved = left[e / k] * k + e % k;
                    v[moved] = (v[moved] + r) % p;
                    v[e] = (v[e] + p - r) % p;
                }
            }
            span.insert(&v);
        }
    }
    Ok(cycle_vecs.iter().all(|c| span.contains(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agroup::{GroupSpec, DEFAULT_BOUND};

    fn grp(s: &str) -> FiniteGroup {
        GroupSpec::parse(s).unwrap().materialize(DEFAULT_BOUND).unwrap()
    }

    #[test]
    fn lift_identity() {
        let z2 = grp("cyclic(2; a=1, b=1)");
        let full = Subgraph::full(&z2.cayley());
        let l = reachable_lift(&z2, &Morphism::identity(2), &full);
        assert_eq!(l.fibers[&0], vec![0]);
        assert_eq!(l.fibers[&1], vec![1]);
        let none = Subgraph::from_edges(&z2.cayley(), [], &[0]);
        let l = reachable_lift(&z2, &Morphism::identity(2), &none);
        assert_eq!(l.fibers.len(), 1);
    }

    #[test]
    fn klein_fails_delta_a() {
        let z2 = grp("cyclic(2; a=1, b=1)");
        let k = grp("tilde(cyclic(2; a=1, b=1), 2)");
        let phi = canonical_morphism(&k, &z2).unwrap();
        let d = delta_a(&z2, SignedLetter::pos(0)).unwrap();
        let r = dissolves_materialized(&z2, &k, &phi, &d);
        assert!(!r.dissolved);
        assert_eq!(r.witness, Some(Witness::Words { u: "bab".into(), v: "a".into() }));
    }

    #[test]
    fn identity_never_dissolves() {
        let z2 = grp("cyclic(2; a=1, b=1)");
        let d = delta_a(&z2, SignedLetter::pos(1)).unwrap();
        assert!(!dissolves_materialized(&z2, &z2, &Morphism::identity(2), &d).dissolved);
    }

    #[test]
    fn linear_matches_small_cases() {
        let z2 = grp("cyclic(2; a=1, b=1)");
        let d = delta_a(&z2, SignedLetter::pos(0)).unwrap();
        let t = GaschuetzLayer::new(z2.clone(), 2, true).unwrap();
        assert!(!dissolves_linear(&t, &Morphism::identity(2), &d).unwrap().dissolved);
        let plain = GaschuetzLayer::new(z2.clone(), 2, false).unwrap();
        assert!(dissolves_linear(&plain, &Morphism::identity(2), &d).unwrap().dissolved);
    }

    #[test]
    fn rank_examples() {
        let r = schreier_rank_check(&grp("cyclic(2; a=1, b=1)"), 2, DEFAULT_BOUND).unwrap();
        assert_eq!((r.formula, r.cycle_space_dim, r.kernel_rank), (3, 3, Some(3)));
        assert_eq!(r.tilde_deficit, Some(2));
        let r = schreier_rank_check(&grp("klein(a=10, b=01)"), 3, DEFAULT_BOUND).unwrap();
        assert_eq!((r.formula, r.cycle_space_dim, r.kernel_rank), (5, 5, Some(5)));
    }

    #[test]
    fn key_lemma_rejects_trivial_k() {
        let z2 = grp("cyclic(2; a=1, b=1)");
        assert!(key_lemma_all(&z2, 2, &[], DEFAULT_BOUND).is_err());
        let (n, fails) = key_lemma_all(&z2, 2, &[1], DEFAULT_BOUND).unwrap();
        assert_eq!(n, 8);
        assert!(fails.is_empty());
    }
}
