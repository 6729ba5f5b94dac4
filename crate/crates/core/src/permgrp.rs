//! Permutations, orbit and block computations, and the Jordan-style certificate
//! that a permutation group is the full alternating group.
//!
//! Permutations act on the right: `p.then(q)` applies `p` first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Precondition(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From disjoint (or not) cycles, composed left to right.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Permutation::identity(n);
        for c in cycles {
            let mut images: Vec<usize> = (0..n).collect();
            let mut seen = HashSet::new();
            for (i, &x) in c.iter().enumerate() {
                if x >= n || !seen.insert(x) {
                    return Err(Error::Precondition(format!("bad cycle {c:?} on {n} points")));
                }
                images[x] = c[(i + 1) % c.len()];
            }
            p = p.then(&Permutation { images });
        }
        Ok(p)
    }

    /// Parse cycle notation such as `(0 1 2)(3 4)`; `()` or an empty string is the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|j| (&r[..j], &r[j + 1..])))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation `{text}`")))?;
            let pts = body
                .0
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{t}` in `{text}`"))))
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = body.1.trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// All cycles including fixed points, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths, fixed points included, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn parity(&self) -> Parity {
        if (self.degree() - self.cycles().len()).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Every `(q, r)` where `q` is a prime cycle length occurring once and dividing no other
    /// cycle length, and `r` is the lcm of the other lengths, so `self^r` is a single `q`-cycle.
    pub fn prime_power_cycles(&self) -> Vec<(u64, u64)> {
        let t = self.cycle_type();
        let mut out = Vec::new();
        for (i, &q) in t.iter().enumerate() {
            if !is_prime(q as u64) || t.iter().filter(|&&x| x == q).count() != 1 {
                continue;
            }
            if t.iter().enumerate().any(|(j, &x)| j != i && x % q == 0) {
                continue;
            }
            let r = t.iter().enumerate().filter(|&(j, _)| j != i).fold(1u64, |acc, (_, &x)| lcm(acc, x as u64));
            out.push((q as u64, r));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The candidate of [`Permutation::prime_power_cycles`] with the largest prime.
    pub fn prime_power_cycle(&self) -> Option<(u64, u64)> {
        self.prime_power_cycles().into_iter().max()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let pts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// One permutation per alphabet letter, all of the same degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupGens {
    pub degree: usize,
    pub gens: Vec<Permutation>,
}

impl PermGroupGens {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Self {
        assert!(gens.iter().all(|g| g.degree() == degree), "generator degrees differ");
        PermGroupGens { degree, gens }
    }

    pub fn orbit(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        let mut out = vec![start];
        while let Some(x) = q.pop_front() {
            for g in &self.gens {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Smallest block of imprimitivity containing `0` and `beta`, as a membership vector.
    pub fn minimal_block(&self, beta: usize) -> Vec<bool> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut queue = VecDeque::from([(0usize, beta)]);
        while let Some((x, y)) = queue.pop_front() {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx == ry {
                continue;
            }
            parent[ry] = rx;
            for g in &self.gens {
                queue.push_back((g.image(x), g.image(y)));
            }
        }
        let r0 = find(&mut parent, 0);
        (0..n).map(|i| find(&mut parent, i) == r0).collect()
    }

    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::Precondition("primitivity needs a transitive group".into()));
        }
        if self.degree <= 2 {
            return Ok(true);
        }
        Ok((1..self.degree).all(|b| self.minimal_block(b).iter().all(|&x| x)))
    }

    /// Order by listing every element. Only for degree at most 7.
    pub fn brute_force_order(&self) -> Result<usize> {
        if self.degree > 7 {
            return Err(Error::Bound(format!("brute-force order needs degree <= 7, got {}", self.degree)));
        }
        let id = Permutation::identity(self.degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut q = VecDeque::from([id]);
        while let Some(p) = q.pop_front() {
            for g in &self.gens {
                let r = p.then(g);
                if seen.insert(r.clone()) {
                    q.push_back(r);
                }
            }
        }
        Ok(seen.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCycle {
    pub q: u64,
    pub power: u64,
    pub letter: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingCertificate {
    pub degree: usize,
    pub transitive: bool,
    pub primitive: bool,
    pub all_even: bool,
    pub prime_cycle: Option<PrimeCycle>,
}

impl AlternatingCertificate {
    pub fn valid(&self) -> bool {
        self.transitive
            && self.primitive
            && self.all_even
            && self.prime_cycle.as_ref().is_some_and(|c| is_prime(c.q) && c.q + 3 <= self.degree as u64)
    }
}

/// Transitivity, primitivity, evenness and a prime cycle of length at most `n - 3`.
/// When valid the group is the alternating group (Jordan). The prime cycle is taken
/// with the largest admissible prime over all letters, ties going to the smaller letter,
/// and is re-verified by computing the power.
pub fn alternating_certificate(g: &PermGroupGens) -> Result<AlternatingCertificate> {
    let n = g.degree;
    if n < 5 {
        return Err(Error::Precondition(format!("certificate needs degree >= 5, got {n}")));
    }
    let transitive = g.is_transitive();
    let primitive = transitive && g.is_primitive()?;
    let all_even = g.gens.iter().all(|p| p.parity() == Parity::Even);
    let mut best: Option<PrimeCycle> = None;
    for (letter, p) in g.gens.iter().enumerate() {
        for (q, r) in p.prime_power_cycles() {
            if q + 3 > n as u64 {
                continue;
            }
            let t = p.pow(r).cycle_type();
            let single = t[0] == q as usize && t[1..].iter().all(|&x| x == 1);
            assert!(single, "power of {p} is not a single {q}-cycle");
            if best.as_ref().is_none_or(|b| q > b.q) {
                best = Some(PrimeCycle { q, power: r, letter });
            }
        }
    }
    Ok(AlternatingCertificate { degree: n, transitive, primitive, all_even, prime_cycle: best })
}
