//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arbor::agroup::{canonical_morphism, FiniteGroup, GroupSpec, Morphism, DEFAULT_BOUND};
use arbor::closure::{closure_at_level, image_subgroup, product_membership_at_level, right_cosets};
use arbor::completion::{check_completion, complete_to_alternating, predissolver_certificate, smallest_prime_greater};
use arbor::constellation::{assemble_ag, delta_a, maximal_constellations, DEFAULT_CUT_BOUND};
use arbor::corpus::corpus;
use arbor::dissolve::{
    detecting_edges_sum, disconnection_equivalence, dissolves_materialized, is_dissolver, key_lemma_all, path_inside,
    schreier_rank_check, Candidate, Method, Witness,
};
use arbor::gaschuetz::{order_formula, GaschuetzLayer, Tower, TowerSpec};
use arbor::word::{SignedLetter, Word};
use common::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn layer(base: &str, p: u64, tilde: bool) -> GaschuetzLayer {
    GaschuetzLayer::new(grp(base), p, tilde).unwrap()
}

/// Enumerated layer with its projection onto the base.
fn enumerated(
    base: &str,
    p: u64,
    tilde: bool,
) -> (GaschuetzLayer, FiniteGroup, Morphism, Vec<arbor::gaschuetz::GElem>) {
    let l = layer(base, p, tilde);
    let (h, elems) = l.materialize(DEFAULT_BOUND).unwrap();
    let phi = GaschuetzLayer::projection(&elems);
    (l, h, phi, elems)
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let inputs = corpus(2024, 25, 3..=8).map_err(|e| e.to_string())?;
    let sizes: BTreeSet<usize> = inputs.iter().map(|a| a.n()).collect();
    let mut runs = 0;
    for (i, a) in inputs.iter().enumerate() {
        let q = smallest_prime_greater(a.n() as u64) as usize;
        for n in a.n() + q + 2..=a.n() + q + 4 {
            let c = complete_to_alternating(a, n, i as u64).map_err(|e| format!("instance {i}, n={n}: {e}"))?;
            let checks = check_completion(a, &c);
            ensure(checks.all(), format!("instance {i}, n={n}: {checks:?}"))?;
            let (cq, _) = c.certificate.prime_cycle.as_ref().map(|p| (p.q, p.power)).unwrap();
            ensure(cq as usize <= n - 3, format!("instance {i}: certificate q={cq} > n-3"))?;
            runs += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{runs} completions, m values {sizes:?}, {:.2?}", start.elapsed()))
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let g = grp(Z2);
    let pairs = maximal_constellations(&g, DEFAULT_CUT_BOUND).map_err(|e| e.to_string())?;
    let oracle = brute_force_maximal(&g);
    let host = g.cayley();
    let ours: BTreeSet<_> = pairs
        .iter()
        .flat_map(|p| p.constellations(&host))
        .map(|c| (c.xi.edge_ids().collect::<Vec<_>>(), c.g, c.theta.edge_ids().collect::<Vec<_>>()))
        .collect();
    ensure(pairs.len() == 14 && ours == oracle, format!("{} pairs, oracle {}", pairs.len(), oracle.len()))?;
    let spec = TowerSpec { base: GroupSpec::parse(Z2).unwrap(), layers: TowerSpec::parse_layers("~2,~2,~2").unwrap() };
    let tower = Tower::build(&spec, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    ensure(tower.levels[2].order() == 32, format!("|G2| = {}", tower.levels[2].order()))?;
    let cand = Candidate::from_tower(&tower, Method::Linear, DEFAULT_BOUND).map_err(|e| e.to_string())?;
    let (all, reports) = is_dissolver(&g, &cand, DEFAULT_CUT_BOUND).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.dissolved).map(|r| r.id.as_str()).collect();
    ensure(all, format!("not dissolved: {failed:?}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("14 pairs match the oracle, {} constellations dissolved, {:.2?}", reports.len(), start.elapsed()))
}

fn ac3() -> Outcome {
    let g = grp(Z2);
    let (_, h, phi, _) = enumerated(Z2, 2, true);
    ensure(h.order() == 4, "Tilde(Z/2,2) is not of order 4")?;
    let d = delta_a(&g, SignedLetter::pos(0)).map_err(|e| e.to_string())?;
    let r = dissolves_materialized(&g, &h, &phi, &d);
    let Some(Witness::Words { u, v }) = r.witness.clone() else {
        return Err(format!("no word witness: {r:?}"));
    };
    ensure(!r.dissolved && u == "bab" && v == "a", format!("got {r:?}"))?;
    let (u, v) = (w(&u), w(&v));
    ensure(h.evaluate(&u) == h.evaluate(&v), "[u] != [v]")?;
    ensure(path_inside(&g, &d.xi, &u, d.g) && path_inside(&g, &d.theta, &v, d.g), "paths leave their parts")?;
    Ok("u = bab, v = a".into())
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let g = grp(Z2);
    let mut lines = Vec::new();
    for p in [2, 3] {
        let spec = TowerSpec { base: GroupSpec::parse(Z2).unwrap(), layers: vec![(p, false)] };
        let tower = Tower::build(&spec, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        let mut verdicts = Vec::new();
        for m in [Method::Reachability, Method::Linear] {
            let cand = Candidate::from_tower(&tower, m, DEFAULT_BOUND).map_err(|e| e.to_string())?;
            let (_, reports) = is_dissolver(&g, &cand, DEFAULT_CUT_BOUND).map_err(|e| e.to_string())?;
            ensure(reports.len() == 14, format!("{} constellations", reports.len()))?;
            verdicts.push(reports.iter().map(|r| r.dissolved).collect::<Vec<_>>());
        }
        ensure(verdicts[0] == verdicts[1], format!("p={p}: methods disagree"))?;
        ensure(verdicts[0].iter().all(|&d| d), format!("p={p}: some constellation not dissolved"))?;
        lines.push(format!("p={p} ok"));
    }
    within(start, Duration::from_secs(10))?;
    Ok(lines.join(", "))
}

fn ac5() -> Outcome {
    let start = Instant::now();
    let z2 = grp(Z2);
    let klein = grp(KLEIN);
    let mut fixtures: Vec<(String, FiniteGroup, FiniteGroup, Morphism)> = Vec::new();
    let phi = canonical_morphism(&klein, &z2).ok_or("no morphism Klein -> Z/2")?;
    fixtures.push(("Klein->Z/2".into(), z2.clone(), klein.clone(), phi));
    let (_, h, phi, _) = enumerated(Z2, 2, false);
    fixtures.push(("Gaschutz(Z/2,2)".into(), z2.clone(), h, phi));
    let (_, h, phi, _) = enumerated(Z2, 3, true);
    fixtures.push(("Tilde(Z/2,3)".into(), z2.clone(), h, phi));
    let (_, h, phi, _) = enumerated(KLEIN, 3, false);
    fixtures.push(("Gaschutz(Klein,3)".into(), klein.clone(), h, phi));
    let mut summary = Vec::new();
    for (name, g, h, phi) in &fixtures {
        let mut vals = Vec::new();
        for l in SignedLetter::all(g.k()) {
            let r = disconnection_equivalence(g, h, phi, l).map_err(|e| e.to_string())?;
            ensure(r.agree(), format!("{name}, {}: {r:?}", Word::letter(l)))?;
            vals.push(if r.disconnected { 'T' } else { 'F' });
        }
        summary.push(format!("{name}:{}", vals.iter().collect::<String>()));
    }
    within(start, Duration::from_secs(30))?;
    Ok(summary.join(" "))
}

fn ac6() -> Outcome {
    let mut sizes = Vec::new();
    for (base, p, want) in [(Z2, 2, 4), (Z2, 3, 9), (KLEIN, 3, 9)] {
        let (l, h, _, elems) = enumerated(base, p, false);
        let brute = h.center();
        let constant = l.constant_center(&elems);
        ensure(brute == constant, format!("{base} p={p}: center differs from constant vectors"))?;
        ensure(brute.len() == want, format!("{base} p={p}: center order {}", brute.len()))?;
        sizes.push(brute.len());
    }
    Ok(format!("center orders {sizes:?}"))
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut count = 0;
    for base in [Z2, KLEIN] {
        for p in [2, 3] {
            for tilde in [false, true] {
                let (l, h, _, _) = enumerated(base, p, tilde);
                for _ in 0..500 {
                    let u = random_word(&mut rng, 2, 12);
                    ensure(l.is_identity(&u) == (h.evaluate(&u) == 0), format!("{base} p={p} tilde={tilde}: `{u}`"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} words agree"))
}

fn ac8() -> Outcome {
    let mut orders = Vec::new();
    for (base, p, tilde, want) in [
        (Z2, 2, false, 16),
        (Z2, 3, false, 54),
        (Z2, 2, true, 4),
        (Z2, 3, true, 6),
        (KLEIN, 3, false, 972),
        (KLEIN, 3, true, 108),
    ] {
        let (l, h, _, _) = enumerated(base, p, tilde);
        let formula = order_formula(l.base().order(), 2, p, tilde);
        ensure(
            formula == BigUint::from(h.order()),
            format!("{base} p={p} tilde={tilde}: formula {formula} vs {}", h.order()),
        )?;
        ensure(h.order() == want, format!("{base} p={p} tilde={tilde}: order {}", h.order()))?;
        orders.push(h.order());
    }
    for (base, p) in [(Z2, 2), (Z2, 3), (KLEIN, 2), (KLEIN, 3)] {
        let r = schreier_rank_check(&grp(base), p, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        ensure(r.holds() && r.kernel_rank.is_some(), format!("{base} p={p}: {r:?}"))?;
    }
    Ok(format!("orders {orders:?} (Gaschutz(Klein,3) = 4*3^5, not 324 = 4*3^4); kernel ranks = E-V+1"))
}

fn ac9() -> Outcome {
    let (_, h, _, _) = enumerated(KLEIN, 3, true);
    ensure(h.order() == 108, "Tilde(Klein,3) is not of order 108")?;
    let a = h.abelianization();
    ensure(a == vec![2, 2], format!("Tilde(Klein,3) abelianizes to {a:?}"))?;
    let (_, h, _, _) = enumerated(Z2, 3, true);
    let b = h.abelianization();
    ensure(b == vec![2], format!("Tilde(Z/2,3) abelianizes to {b:?}"))?;
    Ok(format!("{a:?} and {b:?}"))
}

fn ac10() -> Outcome {
    let start = Instant::now();
    let z2 = grp(Z2);
    let klein = grp(KLEIN);
    let mut cases: Vec<(&str, &FiniteGroup, u64, Vec<usize>)> =
        vec![("Z/2", &z2, 2, vec![1]), ("Z/2", &z2, 3, vec![1])];
    for x in 1..klein.order() {
        cases.push(("Klein", &klein, 2, vec![x]));
    }
    let mut edges = 0;
    for (name, g, p, k) in cases {
        let (n, fails) = key_lemma_all(g, p, &k, DEFAULT_BOUND).map_err(|e| e.to_string())?;
        ensure(fails.is_empty(), format!("{name} p={p} K={k:?}: fails at {fails:?}"))?;
        edges += n;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{edges} edges checked"))
}

fn ac11() -> Outcome {
    let start = Instant::now();
    let g = grp(Z2);
    let ag = assemble_ag(&g, DEFAULT_CUT_BOUND).map_err(|e| e.to_string())?;
    ensure(ag.amalgams.len() == 7, format!("{} amalgams", ag.amalgams.len()))?;
    for am in &ag.amalgams {
        ensure((0..ag.automaton.n()).any(|v| am.embed_into(&ag.automaton, v).is_some()), "amalgam missing")?;
    }
    let m = ag.automaton.n();
    let n = m + smallest_prime_greater(m as u64) as usize + 2;
    let c = complete_to_alternating(&ag.automaton, n, 0).map_err(|e| e.to_string())?;
    ensure(check_completion(&ag.automaton, &c).all(), "completion checks fail")?;
    let report = predissolver_certificate(&c.automaton, &ag.amalgams);
    ensure(report.certified(), format!("{report:?}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("7 amalgams in AG ({m} vertices), completion on {n} points certified"))
}

fn ac12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let z2 = grp(Z2);
    let klein = grp(KLEIN);
    let mut maps: Vec<(FiniteGroup, FiniteGroup, Morphism)> = Vec::new();
    maps.push((z2.clone(), klein.clone(), canonical_morphism(&klein, &z2).unwrap()));
    for (base, p, tilde) in [(Z2, 2, false), (Z2, 3, true), (KLEIN, 2, true), (KLEIN, 3, false)] {
        let (l, h, phi, _) = enumerated(base, p, tilde);
        maps.push((l.base().clone(), h, phi));
    }
    for _ in 0..100 {
        let (g, h, phi) = &maps[rng.gen_range(0..maps.len())];
        let u = random_word(&mut rng, 2, 16);
        let tg = g.traversal_vector(&u);
        let th = h.traversal_vector(&u);
        for x in 0..g.order() {
            for a in 0..2 {
                let lifted: i64 = (0..h.order()).filter(|&y| phi.apply(y) == x).map(|y| th.get(y, a)).sum();
                ensure(lifted == tg.get(x, a), format!("counting lifts fails for `{u}` at ({x},{a})"))?;
            }
        }
    }
    let mut constellations = Vec::new();
    for g in [&z2, &klein] {
        for pair in maximal_constellations(g, DEFAULT_CUT_BOUND).unwrap() {
            for c in pair.constellations(&g.cayley()) {
                constellations.push((g.clone(), c));
            }
        }
    }
    for _ in 0..50 {
        let (g, c) = &constellations[rng.gen_range(0..constellations.len())];
        let candidates: Vec<&(FiniteGroup, FiniteGroup, Morphism)> =
            maps.iter().filter(|m| m.0.order() == g.order()).collect();
        let (_, h, phi) = candidates[rng.gen_range(0..candidates.len())];
        let steps = rng.gen_range(0..10);
        let u = random_path_word(&mut rng, g, c, steps);
        let s = detecting_edges_sum(g, h, phi, c, &u).map_err(|e| e.to_string())?;
        ensure(s == 1, format!("detecting edges sum {s} for `{u}`"))?;
    }
    Ok("100 counting-lifts and 50 detecting-edges instances exact".into())
}

fn ac13() -> Outcome {
    let g = grp("cyclic(4; a=1, b=1)");
    let gens = [w("aa")];
    let c = closure_at_level(&gens, &g).map_err(|e| e.to_string())?;
    let t = image_subgroup(&gens, &g).map_err(|e| e.to_string())?;
    let (_, index) = right_cosets(&g, &t);
    let rank = c.rank().map_err(|e| e.to_string())?;
    ensure(index == 2 && rank == 3 && rank == index * (g.k() - 1) + 1, format!("index {index}, rank {rank}"))?;
    let mut checked = 0;
    for u in words_up_to(2, 6) {
        ensure(c.member(&u) == t.contains(&g.evaluate(&u)), format!("language differs on `{u}`"))?;
        checked += 1;
    }
    let subs = vec![vec![w("aa")], vec![w("bb")]];
    let rz = |s: &str| product_membership_at_level(&w(s), &subs, &g).unwrap();
    ensure(rz("ab") && !rz("a") && product_membership_at_level(&Word::empty(), &subs, &g).unwrap(), "rz examples")?;
    Ok(format!("rank 3 at index 2, {checked} words agree, rz examples reproduce"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
        ("AC11", ac11),
        ("AC12", ac12),
        ("AC13", ac13),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match std::panic::catch_unwind(f) {
            Ok(Ok(msg)) => println!("{name} PASS {msg}"),
            Ok(Err(msg)) => {
                failed += 1;
                println!("{name} FAIL {msg}");
            }
            Err(_) => {
                failed += 1;
                println!("{name} FAIL panicked");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
