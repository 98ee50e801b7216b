//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line, even after an earlier one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpfd::analysis::{self, formula_solution, Concept, Evidence};
use lpfd::axioms::{
    all_schemas, check_derivation, corrupted_strict_is_weak, parse_derivation, soundness_fuzz, FuzzConfig,
};
use lpfd::crosscheck::compare_solvers;
use lpfd::fixtures;
use lpfd::model::{ProfileSet, MAX_PLAYERS};
use lpfd::semantics::{eval_all, Evaluator};
use lpfd::testgen::{self, oracle_ca, random_macro_formula, GenConfig, PrefMode};
use lpfd::{bind, parse, Formula, PdModel, PlayerSet, Vocabulary};

const MODELS: usize = 200;
const SEED: u64 = 2024;

const MONOTONICITY_PROOF: &str = include_str!("../examples/proofs/pa_monotonicity.lpfdproof");
const COVER_PROOF: &str = include_str!("../examples/proofs/cover_theorem.lpfdproof");

fn gen_config() -> GenConfig {
    GenConfig {
        players: [1, 4],
        actions: [1, 3],
        preferences: PrefMode::Mixed,
        total: false,
        seed: SEED,
        ..GenConfig::default()
    }
}

fn models() -> &'static [(u64, PdModel)] {
    static MODELS_CELL: OnceLock<Vec<(u64, PdModel)>> = OnceLock::new();
    MODELS_CELL.get_or_init(|| testgen::generate_many(&gen_config(), MODELS).expect("generator config is valid"))
}

fn formula(m: &PdModel, text: &str) -> Formula {
    let ast = parse(text).unwrap_or_else(|e| panic!("{text}: {e}"));
    bind(&ast, m.vocab()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn group_text(v: &Vocabulary, g: PlayerSet) -> String {
    format!("{{{}}}", v.group_names(g).join(","))
}

fn labels(m: &PdModel, set: &ProfileSet) -> Vec<String> {
    set.ones().map(|s| m.label(s).to_string()).collect()
}

fn holds_at(m: &PdModel, profile: &str, text: &str) -> bool {
    let s = m.profile_index(profile).unwrap();
    eval_all(m, &formula(m, text)).unwrap().contains(s)
}

fn rock_jazz_facts() -> String {
    let m = fixtures::rock_jazz();
    let nash_pair = "([={E}; <={}; <{A}] false & [={A}; <={}; <{E}] false)";
    assert!(holds_at(&m, "RR", nash_pair));
    assert!(holds_at(&m, "JJ", nash_pair));
    assert!(holds_at(&m, "JJ", "[={}; <={}; <{E,A}] false"));
    assert!(!holds_at(&m, "RR", "[={}; <={}; <{E,A}] false"));
    let ext = eval_all(&m, &formula(&m, nash_pair)).unwrap();
    assert_eq!(labels(&m, &ext), ["RR", "JJ"]);

    let both = m.vocab().all_players();
    let solved = |c| analysis::solve(&m, c, both).unwrap().solution_labels(&m);
    assert_eq!(solved(Concept::Nash), ["RR", "JJ"]);
    assert_eq!(solved(Concept::WeakPareto), ["JJ"]);
    assert_eq!(solved(Concept::StrongPareto), ["JJ"]);
    "nash {RR,JJ}, weak and strong Pareto {JJ}".into()
}

fn dilemma_one() -> String {
    let m = fixtures::prisoners_dilemma();
    let at = "coop,coop";
    assert!(holds_at(&m, at, "pa({1,2})"));
    assert!(!holds_at(&m, at, "pa({1})"));
    assert!(!holds_at(&m, at, "pa({2})"));
    assert!(!holds_at(&m, at, "ca1({1,2})"));

    let s = m.profile_index(at).unwrap();
    let v = m.vocab();
    let native = |c, names: &[&str]| {
        analysis::solve(&m, c, v.group(names.iter().copied()).unwrap())
            .unwrap()
            .solutions
            .contains(s)
    };
    assert!(native(Concept::StrongPareto, &["1", "2"]));
    assert!(!native(Concept::StrongPareto, &["1"]));
    assert!(!native(Concept::StrongPareto, &["2"]));
    assert!(!native(Concept::Ca1, &["1", "2"]));
    "coop,coop: Pa{1,2}, not Pa{1}, not Pa{2}, not Ca1{1,2}".into()
}

fn dilemma_two() -> String {
    let m = fixtures::prisoners_dilemma_3();
    let all = m.vocab().all_players();
    assert!(holds_at(&m, "conf,conf,observe", "(pa({1,2,3}) & na({1,2,3}))"));

    let native = analysis::ca(&m, all).unwrap();
    let oracle: Vec<_> = oracle_ca(&m, all).unwrap();
    let expansion = formula_solution(&m, Concept::Ca, all).unwrap();
    let native_set: Vec<_> = native.solutions.ones().collect();
    assert_eq!(native_set, oracle, "native vs oracle");
    assert_eq!(native_set, expansion.ones().collect::<Vec<_>>(), "native vs disjunction");

    let want = vec![m.vocab().group(["1", "3"]).unwrap(), m.vocab().group(["2", "3"]).unwrap()];
    let mut carriers = Vec::new();
    for (s, ev) in m.profiles().zip(&native.evidence) {
        if let Evidence::Cover(c) = ev {
            if *c == want {
                carriers.push(m.label(s).to_string());
            }
        }
    }
    assert_eq!(carriers, ["conf,conf,observe"]);
    assert!(!native.solutions.contains(m.profile_index("coop,coop,observe").unwrap()));
    format!(
        "Ca{{1,2,3}} with cover {{{{1,3}},{{2,3}}}} is carried by {}, not coop,coop; three routes agree on {:?}",
        carriers[0],
        labels(&m, &native.solutions)
    )
}

fn soundness() -> String {
    let cfg = FuzzConfig {
        models: MODELS,
        seed: SEED,
        depth: 1,
        gen: gen_config(),
        schemas: all_schemas(),
        ..FuzzConfig::default()
    };
    let r = soundness_fuzz(&cfg).unwrap();
    assert_eq!(r.models, MODELS);
    if let Some(v) = r.violations.first() {
        panic!("{} violated at {} (model seed {:#x}): {}", v.schema, v.profile, v.model_seed, v.instance);
    }
    let n_players: Vec<_> = models().iter().map(|(_, m)| m.vocab().player_count()).collect();
    assert!(n_players.contains(&4));
    assert!(models().iter().any(|(_, m)| m.is_total()));
    assert!(models().iter().any(|(_, m)| !m.is_total()));

    let control = FuzzConfig {
        schemas: vec![corrupted_strict_is_weak()],
        ..cfg
    };
    let bad = soundness_fuzz(&control).unwrap();
    assert!(!bad.violations.is_empty(), "mutated schema went unnoticed");
    format!(
        "{} instances over {} models, 0 violations; mutant caught {} times",
        r.instances,
        r.models,
        bad.violations.len()
    )
}

/// All families of `subsets` (given as indices) whose union is `group`.
fn covers(group: PlayerSet, subsets: &[PlayerSet]) -> Vec<u32> {
    (0u32..1 << subsets.len())
        .filter(|&fam| {
            let union = (0..subsets.len())
                .filter(|i| fam >> i & 1 == 1)
                .fold(PlayerSet::EMPTY, |u, i| u.union(subsets[i]));
            union == group
        })
        .collect()
}

fn theorems() -> String {
    let mut checks = 0usize;
    for (seed, m) in models() {
        let v = m.vocab();
        let all = v.all_players();
        let mut ev = Evaluator::new(m);
        let mut ext = |text: &str| ev.extension(&formula(m, text)).unwrap();
        for x in all.subsets() {
            let xs = group_text(v, x);
            let minus_x = format!("-{xs}");
            let pa_x = ext(&format!("pa({xs})"));

            // Pa_{-X} X' -> Pa_{-X'} X'
            for sub in x.subsets() {
                let given = ext(&format!("paY({minus_x};{})", group_text(v, sub)));
                let own = ext(&format!("pa({})", group_text(v, sub)));
                assert!(given.is_subset(&own), "monotonicity, seed {seed:#x}, X={xs}");
                checks += 1;
            }

            // Every cover with Pa_{-X}-optimal members gives Pa X.
            let proper: Vec<PlayerSet> = x.subsets().filter(|&g| g != x).collect();
            let optimal: Vec<ProfileSet> = proper
                .iter()
                .map(|&g| ext(&format!("paY({minus_x};{})", group_text(v, g))))
                .collect();
            let families = covers(x, &proper);
            for s in m.profiles() {
                let mask = (0..proper.len())
                    .filter(|&i| optimal[i].contains(s))
                    .fold(0u32, |acc, i| acc | 1 << i);
                for &fam in &families {
                    if fam & !mask == 0 {
                        assert!(pa_x.contains(s), "cover theorem, seed {seed:#x}, X={xs}");
                    }
                    checks += 1;
                }
            }

            let ca = ext(&format!("ca({xs})"));
            let ca1 = ext(&format!("ca1({xs})"));
            assert!(ca.is_subset(&ca1), "Ca -> Ca1, seed {seed:#x}, X={xs}");
            checks += 1;
        }
    }

    let m = fixtures::prisoners_dilemma();
    assert!(holds_at(&m, "conf,conf", "((pa({1}) & pa({2})) & ~pa({1,2}))"));
    format!("{checks} pointwise checks; PD I witness present at conf,conf")
}

fn oracle_equivalence() -> String {
    let mut compared = 0;
    for (seed, m) in models() {
        let (mismatches, n) = compare_solvers(m, 4);
        if let Some(x) = mismatches.first() {
            panic!(
                "seed {seed:#x}: {} on {:?} via {}: {:?} vs {:?}",
                x.concept.name(),
                m.vocab().group_names(x.group),
                x.route,
                x.direct,
                x.other
            );
        }
        compared += n;
    }
    format!("{compared} comparisons, 0 mismatches")
}

struct Mutation {
    proof: &'static str,
    line: usize,
    from: &'static str,
    to: &'static str,
    step: usize,
    kind: &'static str,
}

const MUTATIONS: [Mutation; 13] = [
    Mutation { proof: MONOTONICITY_PROOF, line: 5, from: "Y={2}", to: "Y={1}", step: 1, kind: "no-schema-match" },
    Mutation { proof: MONOTONICITY_PROOF, line: 5, from: "[={2}; <={3}; <{1}] false)", to: "[={2}; <={}; <{1}] false)", step: 1, kind: "no-schema-match" },
    Mutation { proof: MONOTONICITY_PROOF, line: 6, from: "[={2}; <={1}; <{3}]", to: "[={2}; <={}; <{3}]", step: 2, kind: "side-condition" },
    Mutation { proof: MONOTONICITY_PROOF, line: 6, from: "II.e", to: "II.d", step: 2, kind: "no-schema-match" },
    Mutation { proof: MONOTONICITY_PROOF, line: 7, from: "pa({1,3})", to: "pa({1,2})", step: 3, kind: "not-tautology" },
    Mutation { proof: MONOTONICITY_PROOF, line: 8, from: "MP 1, 3", to: "MP 2, 3", step: 4, kind: "bad-modus-ponens" },
    Mutation { proof: MONOTONICITY_PROOF, line: 9, from: "MP 2, 4", to: "MP 2, 6", step: 5, kind: "bad-reference" },
    Mutation { proof: MONOTONICITY_PROOF, line: 9, from: "pa({1,3})) BY", to: "pa({1,2,3})) BY", step: 5, kind: "bad-modus-ponens" },
    Mutation { proof: COVER_PROOF, line: 5, from: "<={2,3}; <{1}", to: "<={2}; <{1}", step: 1, kind: "side-condition" },
    Mutation { proof: COVER_PROOF, line: 6, from: "<={1,3}; <{2}", to: "<={1,3}; <{1}", step: 2, kind: "side-condition" },
    Mutation { proof: COVER_PROOF, line: 7, from: "II.e", to: "II.c2", step: 3, kind: "no-schema-match" },
    Mutation { proof: COVER_PROOF, line: 8, from: "TAUT 1, 2, 3", to: "TAUT 1, 2", step: 4, kind: "not-tautology" },
    Mutation { proof: COVER_PROOF, line: 8, from: "-> pa({1,2,3})", to: "-> na({1,2,3})", step: 4, kind: "not-tautology" },
];

fn mutate(text: &str, line: usize, from: &str, to: &str) -> String {
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let target = &mut lines[line - 1];
    assert!(target.contains(from), "line {line} lacks {from:?}: {target}");
    *target = target.replacen(from, to, 1);
    lines.join("\n")
}

fn derivations() -> String {
    for (name, text) in [("monotonicity", MONOTONICITY_PROOF), ("cover", COVER_PROOF)] {
        let verdict = check_derivation(&parse_derivation(text).unwrap());
        assert!(verdict.accepted(), "{name} proof rejected: {:?}", verdict.failure);
    }
    for (i, mu) in MUTATIONS.iter().enumerate() {
        let text = mutate(mu.proof, mu.line, mu.from, mu.to);
        let verdict = check_derivation(&parse_derivation(&text).unwrap());
        let f = verdict
            .failure
            .unwrap_or_else(|| panic!("mutation {i} ({:?} -> {:?}) accepted", mu.from, mu.to));
        assert_eq!(
            (f.step, f.line, f.reason.kind()),
            (mu.step, mu.line, mu.kind),
            "mutation {i}: {}",
            f.reason
        );
    }
    format!("2 proofs accepted, {} mutations rejected at the mutated line", MUTATIONS.len())
}

fn round_trips() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..1000 {
        let ast = random_macro_formula(&mut rng, 4);
        let text = ast.to_string();
        let back = parse(&text).unwrap_or_else(|e| panic!("ast {i}: {text}: {e}"));
        assert_eq!(back, ast, "ast {i}: {text}");
    }
    let mut exported = 0;
    let fixed = [fixtures::rock_jazz(), fixtures::prisoners_dilemma(), fixtures::prisoners_dilemma_3()];
    for m in fixed.iter().chain(models().iter().map(|(_, m)| m)) {
        let once = m.to_toml();
        let back = PdModel::from_toml(&once).unwrap();
        assert_eq!(&back, m);
        assert_eq!(back.to_toml(), once);
        exported += 1;
    }
    assert!(MAX_PLAYERS >= 4);
    format!("1000 ASTs round-trip; {exported} models export/import idempotently")
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> String);
    let criteria: [Criterion; 8] = [
        ("rock-jazz facts", Duration::from_secs(1), rock_jazz_facts),
        ("prisoners' dilemma I", Duration::from_secs(1), dilemma_one),
        ("prisoners' dilemma II", Duration::from_secs(5), dilemma_two),
        ("soundness fuzz", Duration::from_secs(300), soundness),
        ("theorem suite", Duration::from_secs(300), theorems),
        ("oracle equivalence", Duration::from_secs(300), oracle_equivalence),
        ("derivation checker", Duration::from_secs(60), derivations),
        ("round trips", Duration::from_secs(60), round_trips),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        match outcome {
            Ok(note) if took <= limit => {
                println!("criterion {}: PASS {name} ({took:.2?}): {note}", i + 1);
            }
            Ok(_) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: took {took:.2?}, limit {limit:?}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({took:.2?}): see panic above", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria pass");
}
