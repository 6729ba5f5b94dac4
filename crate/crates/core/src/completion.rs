//! Completion of a connected incomplete inverse automaton on `m >= 3` vertices to a
//! permutation automaton on `n >= m + q + 2` vertices with alternating transition group,
//! `q` the smallest prime above `m`.
//!
//! Gadget vertices `W = {x_1..x_q, y, z, t_1..t_k}` are appended after the input vertices:
//! `v -a-> x_1`, the `a`-cycle `y -> x_2 -> x_3 -> t_1 -> ... -> t_k -> z -> y`, and the
//! `b`-cycle `x_1 -> ... -> x_q -> x_1`. Every letter is then totalized by closing its
//! maximal chains into cycles, and parity is fixed by turning two fixed points of `W`
//! into a 2-cycle.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autom::Automaton;
use crate::error::{Error, Result};
use crate::permgrp::{alternating_certificate, is_prime, AlternatingCertificate, Permutation};

pub fn smallest_prime_greater(m: u64) -> u64 {
    let mut q = m + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionPlan {
    pub m: usize,
    pub q: usize,
    pub k: usize,
    pub n: usize,
    /// Letter of the attaching edge and the `y`-cycle.
    pub a: usize,
    /// Vertex of the input lacking an outgoing `a`-edge.
    pub v: usize,
    /// Letter of the long `q`-cycle.
    pub b: usize,
}

impl CompletionPlan {
    pub fn x(&self, i: usize) -> usize {
        assert!((1..=self.q).contains(&i));
        self.m + i - 1
    }

    pub fn y(&self) -> usize {
        self.m + self.q
    }

    pub fn z(&self) -> usize {
        self.m + self.q + 1
    }

    pub fn t(&self, j: usize) -> usize {
        assert!((1..=self.k).contains(&j));
        self.m + self.q + 2 + j - 1
    }
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub automaton: Automaton,
    pub certificate: AlternatingCertificate,
    pub plan: CompletionPlan,
}

/// Check the preconditions and fix the gadget parameters.
pub fn plan(aut: &Automaton, n: usize) -> Result<CompletionPlan> {
    let m = aut.n();
    if m < 3 {
        return Err(Error::Precondition(format!("m = {m} < 3 vertices is not supported")));
    }
    if aut.k() < 2 {
        return Err(Error::Precondition("need at least two letters".into()));
    }
    if !aut.is_connected() {
        return Err(Error::Disconnected);
    }
    let (v, a) = aut.missing_out().ok_or_else(|| Error::Precondition("automaton is already complete".into()))?;
    let q = smallest_prime_greater(m as u64) as usize;
    if n < m + q + 2 {
        return Err(Error::Precondition(format!("n < m+q+2 = {}", m + q + 2)));
    }
    let b = if a == 0 { 1 } else { 0 };
    Ok(CompletionPlan { m, q, k: n - m - q - 2, n, a, v, b })
}

/// Close every maximal chain of a partial injection into a cycle; isolated points become
/// fixed points. Returns the total map.
fn close_chains(partial: &[Option<usize>]) -> Vec<usize> {
    let n = partial.len();
    let mut has_pre = vec![false; n];
    for d in partial.iter().flatten() {
        has_pre[*d] = true;
    }
    let mut total: Vec<usize> = partial.iter().enumerate().map(|(i, d)| d.unwrap_or(i)).collect();
    for s in 0..n {
        if has_pre[s] {
            continue;
        }
        let mut end = s;
        while let Some(d) = partial[end] {
            end = d;
        }
        total[end] = s;
    }
    total
}

/// Extend `aut` per the gadget and return the completed automaton with its certificate.
pub fn complete_to_alternating(aut: &Automaton, n: usize, seed: u64) -> Result<Completion> {
    let plan = plan(aut, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kk = aut.k();
    let mut partial: Vec<Vec<Option<usize>>> = (0..kk)
        .map(|l| {
            let mut col = vec![None; n];
            for (v, slot) in col.iter_mut().enumerate().take(plan.m) {
                *slot = aut.out(v, l);
            }
            col
        })
        .collect();
    let (a, b) = (plan.a, plan.b);
    partial[a][plan.v] = Some(plan.x(1));
    let mut ycycle = vec![plan.y(), plan.x(2), plan.x(3)];
    ycycle.extend((1..=plan.k).map(|j| plan.t(j)));
    ycycle.push(plan.z());
    for i in 0..ycycle.len() {
        partial[a][ycycle[i]] = Some(ycycle[(i + 1) % ycycle.len()]);
    }
    for i in 1..=plan.q {
        partial[b][plan.x(i)] = Some(plan.x(i % plan.q + 1));
    }
    let mut gens = Vec::new();
    for (l, col) in partial.iter().enumerate() {
        let mut total = close_chains(col);
        let p = Permutation::new(total.clone()).expect("closing chains yields a bijection");
        if p.parity() == crate::permgrp::Parity::Odd {
            let mut pool: Vec<usize> = if l == a {
                (4..=plan.q).map(|i| plan.x(i)).collect()
            } else if l == b {
                let mut v = vec![plan.y(), plan.z()];
                v.extend((1..=plan.k).map(|j| plan.t(j)));
                v
            } else {
                (plan.m..n).collect()
            };
            pool.retain(|&x| col[x].is_none() && !col.contains(&Some(x)));
            if pool.len() < 2 {
                return Err(Error::Precondition("no free gadget points to fix parity".into()));
            }
            let pick: Vec<usize> = pool.choose_multiple(&mut rng, 2).copied().collect();
            total[pick[0]] = pick[1];
            total[pick[1]] = pick[0];
        }
        gens.push(total);
    }
    let mut edges = Vec::with_capacity(n * kk);
    for v in 0..n {
        for (l, g) in gens.iter().enumerate() {
            edges.push((v, l, g[v]));
        }
    }
    let automaton = Automaton::from_parts(kk, n, &edges, aut.base())?;
    let certificate = alternating_certificate(&automaton.transition_group()?)?;
    Ok(Completion { automaton, certificate, plan })
}

/// Checks of the completion properties against the input, each one literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionChecks {
    pub extends_input: bool,
    pub all_even: bool,
    pub b_cycles_short: bool,
    pub certificate_valid: bool,
}

impl CompletionChecks {
    pub fn all(&self) -> bool {
        self.extends_input && self.all_even && self.b_cycles_short && self.certificate_valid
    }
}

pub fn check_completion(input: &Automaton, c: &Completion) -> CompletionChecks {
    let out = &c.automaton;
    let extends_input = input.edges().iter().all(|&(s, l, d)| out.out(s, l) == Some(d));
    let t = out.transition_group().expect("completion is complete");
    let all_even = t.gens.iter().all(|p| p.parity() == crate::permgrp::Parity::Even);
    let long: Vec<usize> = (1..=c.plan.q).map(|i| c.plan.x(i)).collect();
    let b_cycles_short = t.gens[c.plan.b].cycles().iter().all(|cy| {
        if cy.contains(&long[0]) {
            let mut s = cy.clone();
            s.sort_unstable();
            s == long && cy.len() == c.plan.q
        } else {
            cy.len() < c.plan.q
        }
    });
    CompletionChecks { extends_input, all_even, b_cycles_short, certificate_valid: c.certificate.valid() }
}

/// Per amalgam, a vertex of the completion where it embeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredissolverReport {
    pub witnesses: Vec<Option<usize>>,
}

impl PredissolverReport {
    pub fn certified(&self) -> bool {
        self.witnesses.iter().all(|w| w.is_some())
    }
}

pub fn predissolver_certificate(c: &Automaton, amalgams: &[Automaton]) -> PredissolverReport {
    let witnesses = amalgams.iter().map(|am| (0..c.n()).find(|&v| am.embed_into(c, v).is_some())).collect();
    PredissolverReport { witnesses }
}
