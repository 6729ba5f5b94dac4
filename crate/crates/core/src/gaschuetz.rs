//! Gaschutz p-extensions of a materialized group `G`.
//!
//! Elements are pairs `(alpha, g)`: `alpha` is a residue vector mod p on the edges of the
//! Cayley graph of `G`, `g` an element of `G`. Letter `a` maps to `(e_(1,a), [a])` and
//! `(alpha, g)(beta, h) = (alpha + g.beta, gh)` where `g` shifts edge `(k, a)` to `(gk, a)`.
//! The tilde variant divides out the center, vectors constant on each label class; its
//! elements are kept in the normal form with `alpha(1, a) = 0` for every letter.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::agroup::{FiniteGroup, GroupSpec, Morphism};
use crate::error::{Error, Result};
use crate::permgrp::is_prime;
use crate::word::Word;

/// Sparse residue vector indexed by edge id `g * k + a`; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeVector {
    p: u64,
    entries: Vec<(usize, u64)>,
}

impl EdgeVector {
    pub fn zero(p: u64) -> Self {
        EdgeVector { p, entries: Vec::new() }
    }

    pub fn from_dense(p: u64, dense: &[i64]) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .map(|(e, &x)| (e, x.rem_euclid(p as i64) as u64))
            .filter(|&(_, r)| r != 0)
            .collect();
        EdgeVector { p, entries }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u64> {
        let mut d = vec![0; len];
        for &(e, r) in &self.entries {
            d[e] = r;
        }
        d
    }

    pub fn get(&self, e: usize) -> u64 {
        self.entries.binary_search_by_key(&e, |&(x, _)| x).map_or(0, |i| self.entries[i].1)
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Add `c` (taken mod p) at edge `e`.
    pub fn add_at(&mut self, e: usize, c: i64) {
        let c = c.rem_euclid(self.p as i64) as u64;
        if c == 0 {
            return;
        }
        match self.entries.binary_search_by_key(&e, |&(x, _)| x) {
            Ok(i) => {
                let r = (self.entries[i].1 + c) % self.p;
                if r == 0 {
                    self.entries.remove(i);
                } else {
                    self.entries[i].1 = r;
                }
            }
            Err(i) => self.entries.insert(i, (e, c)),
        }
    }

    pub fn add(&self, other: &EdgeVector) -> EdgeVector {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let r = (a[i].1 + b[j].1) % self.p;
                if r != 0 {
                    out.push((a[i].0, r));
                }
                i += 1;
                j += 1;
            }
        }
        EdgeVector { p: self.p, entries: out }
    }

    pub fn neg(&self) -> EdgeVector {
        EdgeVector { p: self.p, entries: self.entries.iter().map(|&(e, r)| (e, self.p - r)).collect() }
    }

    /// Translate by left multiplication: edge `(h, a)` moves to `(left[h], a)`.
    pub fn shifted(&self, left: &[usize], k: usize) -> EdgeVector {
        let mut entries: Vec<(usize, u64)> = self.entries.iter().map(|&(e, r)| (left[e / k] * k + e % k, r)).collect();
        entries.sort_unstable();
        EdgeVector { p: self.p, entries }
    }

    /// Subtract, for every letter, the entry at `(1, a)` from all `(., a)` entries.
    pub fn tilde_normalized(&self, n: usize, k: usize) -> EdgeVector {
        let shifts: Vec<u64> = (0..k).map(|a| self.get(a)).collect();
        if shifts.iter().all(|&c| c == 0) {
            return self.clone();
        }
        let mut dense = self.to_dense(n * k);
        for (e, x) in dense.iter_mut().enumerate() {
            *x = (*x + self.p - shifts[e % k]) % self.p;
        }
        let entries = dense.into_iter().enumerate().filter(|&(_, r)| r != 0).collect();
        EdgeVector { p: self.p, entries }
    }

    /// Whether the vector is constant on each label class of an `n`-vertex graph.
    pub fn constant_per_label(&self, n: usize, k: usize) -> bool {
        (0..k).all(|a| {
            let c = self.get(a);
            (0..n).all(|h| self.get(h * k + a) == c)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GElem {
    pub alpha: EdgeVector,
    pub g: usize,
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let parts: Vec<String> = self.alpha.entries.iter().map(|(e, r)| format!("e{e}:{r}")).collect();
        write!(f, "[{}], g={})", parts.join(" "), self.g)
    }
}

/// The layer `G^{Z/p}` (or its center quotient) over a materialized base.
#[derive(Clone, Debug)]
pub struct GaschuetzLayer {
    base: FiniteGroup,
    p: u64,
    tilde: bool,
}

/// `|G| p^{|G|(|A|-1)+1}` for the plain layer, `|G| p^{(|G|-1)(|A|-1)}` for the tilde layer.
pub fn order_formula(order: usize, k: usize, p: u64, tilde: bool) -> BigUint {
    let exp = if tilde { (order - 1) * (k.max(1) - 1) } else { order * (k.max(1) - 1) + 1 };
    BigUint::from(order) * BigUint::from(p).pow(exp as u32)
}

impl GaschuetzLayer {
    pub fn new(base: FiniteGroup, p: u64, tilde: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(GaschuetzLayer { base, p, tilde })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn tilde(&self) -> bool {
        self.tilde
    }

    fn k(&self) -> usize {
        self.base.k()
    }

    fn norm(&self, alpha: EdgeVector) -> EdgeVector {
        if self.tilde {
            alpha.tilde_normalized(self.base.order(), self.k())
        } else {
            alpha
        }
    }

    pub fn identity(&self) -> GElem {
        GElem { alpha: EdgeVector::zero(self.p), g: 0 }
    }

    pub fn generator(&self, a: usize) -> GElem {
        self.mul_gen(&self.identity(), a)
    }

    pub fn mul_gen(&self, x: &GElem, a: usize) -> GElem {
        let mut alpha = x.alpha.clone();
        alpha.add_at(x.g * self.k() + a, 1);
        GElem { alpha: self.norm(alpha), g: self.base.mul_gen(x.g, a) }
    }

    pub fn mul_gen_inv(&self, x: &GElem, a: usize) -> GElem {
        let h = self.base.mul_gen_inv(x.g, a);
        let mut alpha = x.alpha.clone();
        alpha.add_at(h * self.k() + a, -1);
        GElem { alpha: self.norm(alpha), g: h }
    }

    pub fn mul(&self, x: &GElem, y: &GElem) -> GElem {
        let left = self.base.left_perm(x.g);
        let alpha = x.alpha.add(&y.alpha.shifted(&left, self.k()));
        GElem { alpha: self.norm(alpha), g: self.base.mul(x.g, y.g) }
    }

    pub fn inverse(&self, x: &GElem) -> GElem {
        let gi = self.base.inverse(x.g);
        let left = self.base.left_perm(gi);
        GElem { alpha: self.norm(x.alpha.shifted(&left, self.k()).neg()), g: gi }
    }

    /// Value of `w`: its traversal vector mod p and its value in the base.
    pub fn evaluate(&self, w: &Word) -> GElem {
        let t = self.base.traversal_vector(w);
        GElem { alpha: self.norm(EdgeVector::from_dense(self.p, &t.counts)), g: t.end }
    }

    /// Word-problem test straight from traversal counts: the path must close up, and the
    /// counts must vanish mod p (plain) or be congruent within each label class (tilde).
    pub fn is_identity(&self, w: &Word) -> bool {
        let t = self.base.traversal_vector(w);
        if t.end != 0 {
            return false;
        }
        let p = self.p as i64;
        let (n, k) = (self.base.order(), self.k());
        if self.tilde {
            (0..k).all(|a| {
                let c = t.get(0, a).rem_euclid(p);
                (0..n).all(|h| t.get(h, a).rem_euclid(p) == c)
            })
        } else {
            t.counts.iter().all(|c| c.rem_euclid(p) == 0)
        }
    }

    pub fn order_formula(&self) -> BigUint {
        order_formula(self.base.order(), self.k(), self.p, self.tilde)
    }

    /// Breadth-first enumeration of the layer.
    pub fn materialize(&self, bound: usize) -> Result<(FiniteGroup, Vec<GElem>)> {
        FiniteGroup::from_bfs(self.k(), self.identity(), |x, a| self.mul_gen(x, a), bound)
    }

    /// Projection of an enumerated layer onto the base.
    pub fn projection(elems: &[GElem]) -> Morphism {
        Morphism { map: elems.iter().map(|x| x.g).collect() }
    }

    /// Indices of enumerated elements `(alpha, 1)` with `alpha` constant on each label class.
    pub fn constant_center(&self, elems: &[GElem]) -> Vec<usize> {
        let (n, k) = (self.base.order(), self.k());
        (0..elems.len()).filter(|&i| elems[i].g == 0 && elems[i].alpha.constant_per_label(n, k)).collect()
    }

    /// A word whose value is `(indicator of all a-edges, 1)`: for each cycle of `a` on the
    /// base, go to a point of the cycle, run around it once and come back.
    pub fn center_witness(&self, a: usize) -> Word {
        let n = self.base.order();
        let mut seen = vec![false; n];
        let mut w = Word::empty();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            loop {
                seen[x] = true;
                len += 1;
                x = self.base.mul_gen(x, a);
                if x == s {
                    break;
                }
            }
            let path = self.base.tree_word(s);
            w = w.concat(&path).concat(&Word::power_of(a, len)).concat(&path.inverse());
        }
        w
    }

    /// Classical structure checks, valid when p does not divide `|G|`.
    pub fn structure_checks(&self, bound: usize) -> Result<StructureReport> {
        let n = self.base.order();
        if (n as u64).is_multiple_of(self.p) {
            return Err(Error::Hypothesis(format!("p = {} divides |G| = {n}", self.p)));
        }
        let plain = GaschuetzLayer::new(self.base.clone(), self.p, false)?;
        let (h, elems) = plain.materialize(bound)?;
        let kernel: Vec<usize> = (0..elems.len()).filter(|&i| elems[i].g == 0).collect();
        let expected_rank = n * (self.k() - 1) + 1;
        let kernel_rank = log_exact(kernel.len() as u64, self.p);
        let exponent_p = kernel.iter().all(|&x| h.pow(x, self.p) == 0);
        let kernel_abelian = kernel.iter().all(|&x| kernel.iter().all(|&y| h.mul(x, y) == h.mul(y, x)));
        let center = h.center();
        Ok(StructureReport {
            order: h.order(),
            order_formula: plain.order_formula().to_string(),
            order_ok: BigUint::from(h.order()) == plain.order_formula(),
            kernel_rank,
            expected_rank,
            kernel_elementary_abelian: exponent_p && kernel_abelian,
            center_order: center.len(),
            center_ok: BigUint::from(center.len()) == BigUint::from(self.p).pow(self.k() as u32),
        })
    }
}

fn log_exact(mut x: u64, p: u64) -> Option<usize> {
    let mut e = 0;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        e += 1;
    }
    Some(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub order: usize,
    pub order_formula: String,
    pub order_ok: bool,
    pub kernel_rank: Option<usize>,
    pub expected_rank: usize,
    pub kernel_elementary_abelian: bool,
    pub center_order: usize,
    pub center_ok: bool,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.order_ok
            && self.kernel_rank == Some(self.expected_rank)
            && self.kernel_elementary_abelian
            && self.center_ok
    }
}

/// A base group and a list of layers `(p, tilde)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub base: GroupSpec,
    pub layers: Vec<(u64, bool)>,
}

impl TowerSpec {
    /// Parse `"~2,~2,3"`: `~` marks a tilde layer.
    pub fn parse_layers(text: &str) -> Result<Vec<(u64, bool)>> {
        text.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let (tilde, num) = match t.strip_prefix('~') {
                    Some(r) => (true, r),
                    None => (false, t),
                };
                let p: u64 = num.trim().parse().map_err(|_| Error::Parse(format!("bad layer `{t}`")))?;
                if p < 2 {
                    return Err(Error::Parse(format!("layer prime must be >= 2, got {p}")));
                }
                Ok((p, tilde))
            })
            .collect()
    }
}

/// Levels `G_0, ..., G_{L-1}` enumerated, the top layer over `G_{L-1}` kept lazy.
#[derive(Clone, Debug)]
pub struct Tower {
    pub levels: Vec<FiniteGroup>,
    /// `projections[i]` maps level `i + 1` onto level `i`.
    pub projections: Vec<Morphism>,
    pub top: Option<GaschuetzLayer>,
}

impl Tower {
    pub fn build(spec: &TowerSpec, bound: usize) -> Result<Tower> {
        let mut levels = vec![spec.base.materialize(bound)?];
        let mut projections = Vec::new();
        let mut top = None;
        for (i, &(p, tilde)) in spec.layers.iter().enumerate() {
            let layer = GaschuetzLayer::new(levels.last().unwrap().clone(), p, tilde)?;
            if i + 1 == spec.layers.len() {
                top = Some(layer);
            } else {
                let (g, elems) = layer.materialize(bound)?;
                projections.push(GaschuetzLayer::projection(&elems));
                levels.push(g);
            }
        }
        Ok(Tower { levels, projections, top })
    }

    /// Orders of all levels, the lazy top by formula.
    pub fn orders(&self) -> Vec<BigUint> {
        let mut v: Vec<BigUint> = self.levels.iter().map(|g| BigUint::from(g.order())).collect();
        if let Some(t) = &self.top {
            v.push(t.order_formula());
        }
        v
    }

    /// Composite projection from the highest enumerated level onto the base.
    pub fn projection_to_base(&self) -> Morphism {
        let mut m = Morphism::identity(self.levels.last().unwrap().order());
        for p in self.projections.iter().rev() {
            m = m.then(p);
        }
        m
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        match &self.top {
            Some(t) => t.is_identity(w),
            None => self.levels[0].evaluate(w) == 0,
        }
    }
}
