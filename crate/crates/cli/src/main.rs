use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use arbor::agroup::{canonical_morphism, FiniteGroup, GroupSpec, DEFAULT_BOUND};
use arbor::autom::{core_of_words, fold, Automaton, LabeledGraph};
use arbor::closure::{
    closure_at_level, closure_chain, extendible_at_level, image_subgroup, product_membership_at_level, right_cosets,
};
use arbor::completion::{check_completion, complete_to_alternating, predissolver_certificate};
use arbor::constellation::{amalgam, assemble_ag, maximal_constellations, minimal_cut_sets, DEFAULT_CUT_BOUND};
use arbor::corpus::corpus;
use arbor::dissolve::{
    abelianization_preserved, disconnection_equivalence, is_dissolver, is_weak_dissolver, key_lemma_all,
    schreier_rank_check, Candidate, Method,
};
use arbor::gaschuetz::{GaschuetzLayer, Tower, TowerSpec};
use arbor::permgrp::alternating_certificate;
use arbor::word::{SignedLetter, Word};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "arbor",
    version,
    about = "Finite-level computations with Stallings automata, constellations and Gaschutz layers"
)]
struct Cli {
    /// Enumeration bound for materialized groups.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Reachability,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Fold a labeled graph given as an .aut file.
    Fold {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Core automaton of a subgroup given by generators or by an automaton.
    Core {
        #[arg(long, conflicts_with = "automaton")]
        words: Option<String>,
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Subgroup membership of a word.
    Member {
        #[arg(long, conflicts_with = "automaton")]
        words: Option<String>,
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long)]
        word: String,
    },
    /// Cayley graph of a materialized group.
    Cayley {
        #[arg(long)]
        group: String,
        #[arg(long)]
        dot: bool,
    },
    /// Minimal cuts and maximal constellation pairs.
    Constellations {
        #[arg(long)]
        group: String,
    },
    /// Amalgam of one maximal constellation pair.
    Amalgam {
        #[arg(long)]
        group: String,
        #[arg(long)]
        pair: usize,
    },
    /// Connected incomplete automaton containing every amalgam.
    Ag {
        #[arg(long)]
        group: String,
    },
    /// Complete a connected incomplete automaton to one with alternating transition group.
    CompleteAlternating {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also certify that these amalgams (.aut files) embed into the completion.
        #[arg(long, value_delimiter = ',')]
        amalgams: Vec<PathBuf>,
        /// Write the completed automaton here.
        #[arg(long)]
        aut_out: Option<PathBuf>,
    },
    /// Jordan certificate that a complete automaton has alternating or symmetric transition group.
    CertifyAn {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Orders and structural checks of a Gaschutz layer.
    GaschutzInfo {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        tilde: bool,
    },
    /// Center of an enumerated Gaschutz layer against the constant-per-label vectors.
    Center {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Value of a word in a group; Gaschutz layers are evaluated lazily.
    Evaluate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Dissolver or weak-dissolver check of a tower over a group.
    Dissolve {
        #[arg(long)]
        group: String,
        /// Layers such as "~2,~2,3"; `~` marks the quotient by the center.
        #[arg(long, default_value = "")]
        layers: String,
        #[arg(long)]
        weak: bool,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// The four disconnection conditions for a morphism onto a group and a letter.
    Disconnect {
        #[arg(long)]
        group: String,
        #[arg(long)]
        cover: String,
        /// A signed letter such as `a` or `B`.
        #[arg(long)]
        letter: String,
    },
    /// Edge removal check in the tilde layer for the preimage of a subgroup.
    KeyLemma {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
        /// Generators of the subgroup K as words; defaults to the whole group.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Kernel rank of the Gaschutz layer against the cycle rank of the Cayley graph.
    RankCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Invariant factors of the abelianization.
    Abelianization {
        #[arg(long)]
        group: String,
        /// Also check that a further tilde layer at this prime keeps the abelianization.
        #[arg(long)]
        tilde_prime: Option<u64>,
    },
    /// Closure of a subgroup at a finite level.
    Closure {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        level: String,
        /// Also decide membership of this word along the tower given by --layers.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value = "")]
        layers: String,
        /// Check whether this automaton embeds into the Schreier graph of its image.
        #[arg(long)]
        automaton: Option<PathBuf>,
    },
    /// Membership of a word in a product of subgroup images.
    RzMember {
        #[arg(long)]
        word: String,
        /// Subgroups separated by `|`, generators by `,`.
        #[arg(long)]
        subgroups: String,
        #[arg(long)]
        level: String,
    },
    /// Seeded corpus of connected, folded, incomplete automata.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        m_min: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[arg(long)]
        dir: PathBuf,
    },
}

/// What a command produced: text and whether the property it tests holds.
struct Output {
    text: String,
    holds: bool,
}

impl Output {
    fn report(mut v: Value, holds: bool) -> Output {
        v.as_object_mut().unwrap().insert("schema".into(), json!(1));
        Output { text: serde_json::to_string_pretty(&v).unwrap() + "\n", holds }
    }

    fn automaton(a: &Automaton, dot: bool) -> Output {
        Output { text: if dot { a.to_dot() } else { a.write_aut() }, holds: true }
    }
}

fn group(spec: &str, bound: usize) -> Result<FiniteGroup> {
    Ok(GroupSpec::parse(spec)?.materialize(bound)?)
}

fn words(list: &str) -> Result<Vec<Word>> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| Ok(Word::parse_std(s)?)).collect()
}

fn read_automaton(path: &Path) -> Result<Automaton> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Automaton::from_graph(&LabeledGraph::read_aut(&text)?)?)
}

fn subgroup_automaton(words_arg: &Option<String>, automaton: &Option<PathBuf>, letters: usize) -> Result<Automaton> {
    match (words_arg, automaton) {
        (Some(w), None) => {
            let gens = words(w)?;
            let k = gens.iter().map(Word::alphabet_span).max().unwrap_or(0).max(letters);
            Ok(core_of_words(&gens, k))
        }
        (None, Some(p)) => read_automaton(p),
        _ => bail!("give exactly one of --words and --automaton"),
    }
}

fn tower(spec: &str, layers: &str, bound: usize) -> Result<Tower> {
    let spec = TowerSpec { base: GroupSpec::parse(spec)?, layers: TowerSpec::parse_layers(layers)? };
    Ok(Tower::build(&spec, bound)?)
}

fn run(cli: Cli) -> Result<Output> {
    let bound = cli.bound;
    Ok(match cli.command {
        Command::Fold { graph, dot } => {
            let text = fs::read_to_string(&graph).with_context(|| format!("reading {}", graph.display()))?;
            Output::automaton(&fold(&LabeledGraph::read_aut(&text)?), dot)
        }
        Command::Core { words, automaton, letters, dot } => {
            Output::automaton(&subgroup_automaton(&words, &automaton, letters)?.core(), dot)
        }
        Command::Member { words, automaton, letters, word } => {
            let a = subgroup_automaton(&words, &automaton, letters)?;
            let w = Word::parse_std(&word)?;
            let member = a.member(&w);
            Output::report(json!({ "word": w.to_string(), "member": member }), member)
        }
        Command::Cayley { group: g, dot } => Output::automaton(&group(&g, bound)?.cayley(), dot),
        Command::Constellations { group: g } => {
            let g = group(&g, bound)?;
            let host = g.cayley();
            let cuts = minimal_cut_sets(&host, DEFAULT_CUT_BOUND)?;
            let pairs = maximal_constellations(&g, DEFAULT_CUT_BOUND)?;
            let list: Vec<Value> = pairs
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    json!({
                        "pair": i,
                        "cut": cuts[p.cut].edges,
                        "partition": { "c_xi": p.c_xi, "c_theta": p.c_theta },
                        "far_component": p.far,
                    })
                })
                .collect();
            Output::report(json!({ "cuts": cuts.len(), "pairs": list }), true)
        }
        Command::Amalgam { group: g, pair } => {
            let g = group(&g, bound)?;
            let host = g.cayley();
            let pairs = maximal_constellations(&g, DEFAULT_CUT_BOUND)?;
            let p = pairs.get(pair).ok_or_else(|| anyhow!("pair {pair} out of range (0..{})", pairs.len()))?;
            Output::automaton(&amalgam(&host, &p.xi(&host), &p.theta(&host))?, false)
        }
        Command::Ag { group: g } => {
            Output::automaton(&assemble_ag(&group(&g, bound)?, DEFAULT_CUT_BOUND)?.automaton, false)
        }
        Command::CompleteAlternating { automaton, n, seed, amalgams, aut_out } => {
            let a = read_automaton(&automaton)?;
            let c = complete_to_alternating(&a, n, seed)?;
            let checks = check_completion(&a, &c);
            let ams: Vec<Automaton> = amalgams.iter().map(|p| read_automaton(p)).collect::<Result<_>>()?;
            let pre = predissolver_certificate(&c.automaton, &ams);
            if let Some(path) = aut_out {
                fs::write(&path, c.automaton.write_aut()).with_context(|| format!("writing {}", path.display()))?;
            }
            let holds = checks.all() && pre.certified();
            Output::report(
                json!({
                    "plan": c.plan,
                    "checks": checks,
                    "certificate": c.certificate,
                    "predissolver": pre,
                    "automaton": c.automaton.write_aut(),
                }),
                holds,
            )
        }
        Command::CertifyAn { automaton } => {
            let a = read_automaton(&automaton)?;
            let cert = alternating_certificate(&a.transition_group()?)?;
            let valid = cert.valid();
            Output::report(json!({ "certificate": cert, "valid": valid }), valid)
        }
        Command::GaschutzInfo { group: g, p, tilde } => {
            let layer = GaschuetzLayer::new(group(&g, bound)?, p, tilde)?;
            let formula = layer.order_formula();
            let enumerated = match layer.materialize(bound) {
                Ok((h, _)) => Some(h.order()),
                Err(arbor::Error::OrderBound(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let checks = if tilde { None } else { layer.structure_checks(bound).ok() };
            let holds = enumerated.is_none_or(|o| formula == o.into()) && checks.as_ref().is_none_or(|c| c.all_pass());
            Output::report(
                json!({
                    "base_order": layer.base().order(),
                    "p": p,
                    "tilde": tilde,
                    "order_formula": formula.to_string(),
                    "enumerated_order": enumerated,
                    "checks": checks,
                }),
                holds,
            )
        }
        Command::Center { group: g, p } => {
            let layer = GaschuetzLayer::new(group(&g, bound)?, p, false)?;
            let (h, elems) = layer.materialize(bound)?;
            let center = h.center();
            let constant = layer.constant_center(&elems);
            let expected = (p as usize).pow(h.k() as u32);
            let holds = center == constant && center.len() == expected;
            let witnesses: Vec<String> = (0..h.k()).map(|a| layer.center_witness(a).to_string()).collect();
            Output::report(
                json!({
                    "order": h.order(),
                    "center_order": center.len(),
                    "expected": expected,
                    "constant_per_label": center == constant,
                    "witnesses": witnesses,
                }),
                holds,
            )
        }
        Command::Evaluate { group: g, word } => {
            let grp = GroupSpec::parse(&g)?.realize(bound)?;
            let w = Word::parse_std(&word)?;
            if w.alphabet_span() > grp.k() {
                bail!("word `{word}` uses letters outside the group's {} letters", grp.k());
            }
            Output::report(
                json!({ "word": w.to_string(), "value": grp.describe(&w), "identity": grp.is_identity(&w) }),
                true,
            )
        }
        Command::Dissolve { group: g, layers, weak, method } => {
            let base = group(&g, bound)?;
            let t = tower(&g, &layers, bound)?;
            let method = match method {
                MethodArg::Reachability => Method::Reachability,
                MethodArg::Linear => Method::Linear,
                MethodArg::Auto => match &t.top {
                    Some(top) if top.order_formula() > bound.into() => Method::Linear,
                    _ => Method::Reachability,
                },
            };
            let cand = Candidate::from_tower(&t, method, bound)?;
            let (all, reports) =
                if weak { is_weak_dissolver(&base, &cand)? } else { is_dissolver(&base, &cand, DEFAULT_CUT_BOUND)? };
            let orders: Vec<String> = t.orders().iter().map(|o| o.to_string()).collect();
            Output::report(
                json!({
                    "group": g,
                    "layers": layers,
                    "orders": orders,
                    "mode": if weak { "weak" } else { "full" },
                    "method": method,
                    "dissolved": all,
                    "reports": reports,
                }),
                all,
            )
        }
        Command::Disconnect { group: g, cover, letter } => {
            let (base, h) = (group(&g, bound)?, group(&cover, bound)?);
            let phi = canonical_morphism(&h, &base)
                .ok_or_else(|| anyhow!("no canonical morphism from the cover onto the group"))?;
            let w = Word::parse_std(&letter)?;
            let l: SignedLetter = match w.letters() {
                [l] if l.index < base.k() => *l,
                _ => bail!("--letter must be a single letter of the group's alphabet"),
            };
            let r = disconnection_equivalence(&base, &h, &phi, l)?;
            let agree = r.agree();
            Output::report(json!({ "letter": letter, "conditions": r, "agree": agree }), agree)
        }
        Command::KeyLemma { group: g, p, subgroup } => {
            let base = group(&g, bound)?;
            let k: Vec<usize> = match subgroup {
                Some(s) => words(&s)?.iter().map(|w| base.evaluate(w)).collect(),
                None => (0..base.order()).collect(),
            };
            let (checked, failures) = key_lemma_all(&base, p, &k, bound)?;
            let holds = failures.is_empty();
            Output::report(json!({ "edges_checked": checked, "failures": failures, "holds": holds }), holds)
        }
        Command::RankCheck { group: g, p } => {
            let r = schreier_rank_check(&group(&g, bound)?, p, bound)?;
            let holds = r.holds();
            Output::report(json!({ "rank": r, "holds": holds }), holds)
        }
        Command::Abelianization { group: g, tilde_prime } => {
            let base = group(&g, bound)?;
            let factors = base.abelianization();
            let preserved = tilde_prime.map(|p| abelianization_preserved(&base, p, true)).transpose()?;
            Output::report(
                json!({ "order": base.order(), "invariant_factors": factors, "tilde_layer_preserves": preserved }),
                preserved.unwrap_or(true),
            )
        }
        Command::Closure { gens, level, word, layers, automaton } => {
            let g = group(&level, bound)?;
            let gens = words(&gens)?;
            let c = closure_at_level(&gens, &g)?;
            let t = image_subgroup(&gens, &g)?;
            let (_, index) = right_cosets(&g, &t);
            let rank = c.rank()?;
            let mut report = json!({
                "image_order": t.len(),
                "index": index,
                "rank": rank,
                "schreier_rank": index * (g.k() - 1) + 1,
                "automaton": c.write_aut(),
            });
            let mut holds = rank == index * (g.k() - 1) + 1;
            if let Some(w) = word {
                let chain = closure_chain(&Word::parse_std(&w)?, &gens, &tower(&level, &layers, bound)?, bound)?;
                report["chain"] = json!(chain);
            }
            if let Some(path) = automaton {
                let e = extendible_at_level(&read_automaton(&path)?, &g)?;
                holds &= e.extendible;
                report["extendible"] =
                    json!({ "isomorphic_image": e.extendible, "embeds": e.embeds, "image": e.image.write_aut() });
            }
            Output::report(report, holds)
        }
        Command::RzMember { word, subgroups, level } => {
            let g = group(&level, bound)?;
            let subs: Vec<Vec<Word>> = subgroups.split('|').map(words).collect::<Result<_>>()?;
            let w = Word::parse_std(&word)?;
            let member = product_membership_at_level(&w, &subs, &g)?;
            Output::report(json!({ "word": w.to_string(), "member": member }), member)
        }
        Command::Corpus { seed, count, m_min, m_max, dir } => {
            let auts = corpus(seed, count, m_min..=m_max)?;
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let mut files = Vec::new();
            for (i, a) in auts.iter().enumerate() {
                let path = dir.join(format!("{i:03}.aut"));
                fs::write(&path, a.write_aut()).with_context(|| format!("writing {}", path.display()))?;
                files.push(json!({ "file": path.file_name().unwrap().to_string_lossy(), "vertices": a.n() }));
            }
            Output::report(json!({ "seed": seed, "files": files }), true)
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(o) => {
            let written = match &out {
                Some(p) => fs::write(p, &o.text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{}", o.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if o.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
