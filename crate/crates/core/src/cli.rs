//! The `lpfd` command line.
//!
//! Exit codes: 0 when a verdict was computed (false verdicts and rejected
//! derivations included), 1 for usage and input errors, 2 when a fuzz run
//! finds an invalid axiom instance or a solver disagreement.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{self, Concept, Evidence};
use crate::axioms::{self, all_schemas, check_derivation, parse_derivation, FuzzConfig};
use crate::crosscheck::compare_solvers;
use crate::fixtures;
use crate::formula::{bind_with_warnings, parse, MacroFormula};
use crate::model::{PdModel, PlayerSet, Vocabulary};
use crate::semantics::Evaluator;
use crate::testgen::{generate, sub_seed, GenConfig};

#[derive(Parser, Debug)]
#[command(name = "lpfd", version, about = "Model checking and game analysis for preference-dependence models")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula at a profile.
    Check {
        /// Model file, or a bundled fixture: rockjazz, pd1, pd2.
        model: String,
        /// Profile label, e.g. `JJ` or `conf,conf,observe`.
        #[arg(long)]
        at: String,
        #[arg(long, conflicts_with = "formula_file", required_unless_present = "formula_file")]
        formula: Option<String>,
        #[arg(long)]
        formula_file: Option<String>,
    },
    /// Compute the solutions of a game-theoretic concept.
    Solve {
        model: String,
        /// nash, wpareto, spareto, ca, ca1, ca2 or paY.
        #[arg(long)]
        concept: String,
        /// Group, e.g. `{E,A}`.
        #[arg(long)]
        group: String,
        /// Fixed group for `paY`.
        #[arg(long)]
        fixed: Option<String>,
    },
    /// Check every axiom instance on one model.
    Axioms {
        model: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Soundness fuzzing and solver cross-checks on random models.
    Fuzz {
        #[arg(long, default_value_t = 200)]
        models: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generator settings in TOML; its seed is replaced by `--seed`.
        #[arg(long)]
        config: Option<String>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 400)]
        budget: usize,
    },
    /// Check a derivation script.
    Prove { script: String },
}

struct Failure {
    code: i32,
    reason: &'static str,
    message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        reason: "input",
        message: message.into(),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
}

fn load_model(arg: &str) -> Result<PdModel, Failure> {
    if !Path::new(arg).exists() {
        if let Some(m) = fixtures::by_name(arg) {
            return m.map_err(|e| input(format!("fixture {arg}: {e}")));
        }
    }
    let text = read(arg)?;
    PdModel::from_toml(&text).map_err(|e| input(format!("{arg}: {e}")))
}

fn parse_group(v: &Vocabulary, text: &str) -> Result<PlayerSet, Failure> {
    let text = text.trim();
    let (complement, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let body = body.trim();
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body);
    let names: Vec<&str> = inner.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
    let g = v.group(names).map_err(|e| input(e.to_string()))?;
    Ok(if complement { v.complement(g) } else { g })
}

fn braces(v: &Vocabulary, g: PlayerSet) -> String {
    format!("{{{}}}", v.group_names(g).join(","))
}

#[derive(Serialize)]
struct CheckDoc {
    status: &'static str,
    profile: String,
    formula: String,
    value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover: Option<Vec<Vec<String>>>,
    warnings: Vec<String>,
}

fn check(format: Format, model: &str, at: &str, text: &str) -> Result<String, Failure> {
    let m = load_model(model)?;
    let s = m.profile_index(at).map_err(|e| input(e.to_string()))?;
    let parsed = parse(text).map_err(|e| input(format!("formula: {e}")))?;
    let (f, warnings) = match &parsed {
        // Large groups are decided by the native solver, not by expansion.
        MacroFormula::Ca(_) => match bind_with_warnings(&parsed, m.vocab()) {
            Ok(x) => (Some(x.0), x.1),
            Err(crate::formula::BindError::CaTooLarge { .. }) => (None, Vec::new()),
            Err(e) => return Err(input(e.to_string())),
        },
        _ => {
            let (f, w) = bind_with_warnings(&parsed, m.vocab()).map_err(|e| input(e.to_string()))?;
            (Some(f), w)
        }
    };
    let ca_evidence = match &parsed {
        MacroFormula::Ca(g) => {
            let v = m.vocab();
            let set = v
                .group(g.members.iter().map(String::as_str))
                .map_err(|e| input(e.to_string()))?;
            let group = if g.complement { v.complement(set) } else { set };
            let report = analysis::ca(&m, group).map_err(|e| input(e.to_string()))?;
            Some(report.evidence[s].clone())
        }
        _ => None,
    };
    let (value, witness) = match &f {
        Some(f) => {
            let r = Evaluator::new(&m)
                .eval(s, f)
                .map_err(|e| input(e.to_string()))?;
            (r.value, r.witness)
        }
        None => (ca_evidence.as_ref().is_some_and(Evidence::holds), None),
    };
    if let Some(e) = &ca_evidence {
        if e.holds() != value {
            return Err(Failure {
                code: 2,
                reason: "invariant",
                message: "native ca solver disagrees with the expanded formula".into(),
            });
        }
    }
    let v = m.vocab();
    let cover = match &ca_evidence {
        Some(Evidence::Cover(c)) => Some(c.iter().map(|g| v.group_names(*g)).collect::<Vec<_>>()),
        _ => None,
    };
    let warnings: Vec<String> = warnings.iter().map(ToString::to_string).collect();
    Ok(match format {
        Format::Structured => toml::to_string(&CheckDoc {
            status: "ok",
            profile: m.label(s).to_string(),
            formula: parsed.to_string(),
            value,
            witness: witness.map(|t| m.label(t).to_string()),
            cover,
            warnings,
        })
        .expect("serializable"),
        Format::Human => {
            let mut out = format!("{} at {}: {}\n", parsed, m.label(s), value);
            if let Some(t) = witness {
                let _ = writeln!(out, "witness: {}", m.label(t));
            }
            if let Some(c) = cover {
                let sets: Vec<String> = c.iter().map(|g| format!("{{{}}}", g.join(","))).collect();
                let _ = writeln!(out, "cover: {{{}}}", sets.join(","));
            }
            for w in warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            out
        }
    })
}

fn solve(format: Format, model: &str, concept: &str, group: &str, fixed: Option<&str>) -> Result<String, Failure> {
    let m = load_model(model)?;
    let g = parse_group(m.vocab(), group)?;
    let concept = match concept {
        "paY" | "pay" => {
            let fixed = fixed.ok_or_else(|| input("paY needs --fixed"))?;
            Concept::ParetoGiven(parse_group(m.vocab(), fixed)?)
        }
        other => other.parse::<Concept>().map_err(input)?,
    };
    let report = analysis::solve(&m, concept, g).map_err(|e| input(e.to_string()))?;
    Ok(match format {
        Format::Structured => format!("status = \"ok\"\n{}", report.to_toml(&m)),
        Format::Human => report.to_human(&m),
    })
}

fn axioms_cmd(format: Format, model: &str, depth: usize, budget: usize, seed: u64) -> Result<(String, i32), Failure> {
    let m = load_model(model)?;
    let r = axioms::check_model(&m, &all_schemas(), depth, budget, seed);
    let code = if r.violations.is_empty() { 0 } else { 2 };
    let text = match format {
        Format::Structured => {
            let mut out = format!(
                "status = \"{}\"\ninstances = {}\nsampled = {}\nviolations = {}\n",
                if code == 0 { "ok" } else { "violations" },
                r.instances,
                r.truncated,
                r.violations.len()
            );
            for v in &r.violations {
                let _ = write!(
                    out,
                    "\n[[violation]]\nschema = {:?}\ninstance = {:?}\nprofile = {:?}\n",
                    v.schema, v.instance, v.profile
                );
            }
            out
        }
        Format::Human => {
            let mut out = format!(
                "{} instances of {} schemata checked{}: {} violations\n",
                r.instances,
                all_schemas().len(),
                if r.truncated { " (sampled)" } else { "" },
                r.violations.len()
            );
            for v in &r.violations {
                let _ = writeln!(out, "{} fails at {}: {}", v.schema, v.profile, v.instance);
            }
            out
        }
    };
    Ok((text, code))
}

fn fuzz(
    format: Format,
    models: usize,
    seed: u64,
    config: Option<&str>,
    depth: usize,
    budget: usize,
) -> Result<(String, i32), Failure> {
    let gen = match config {
        Some(path) => GenConfig::from_toml(&read(path)?).map_err(|e| input(format!("{path}: {e}")))?,
        None => GenConfig::default(),
    };
    let cfg = FuzzConfig {
        models,
        seed,
        depth,
        budget,
        gen: gen.clone(),
        ..FuzzConfig::default()
    };
    let report = axioms::soundness_fuzz(&cfg).map_err(|e| input(e.to_string()))?;
    let mut mismatches = Vec::new();
    let mut comparisons = 0;
    for i in 0..models as u64 {
        let s = sub_seed(seed, i);
        let m = generate(&gen.with_seed(s)).map_err(|e| input(e.to_string()))?;
        let (bad, n) = compare_solvers(&m, 4);
        comparisons += n;
        for b in bad {
            mismatches.push(format!(
                "model seed {s}: {} for {} via {}: direct {:?}, other {:?}",
                b.concept,
                braces(m.vocab(), b.group),
                b.route,
                b.direct,
                b.other
            ));
        }
    }
    let code = if report.violations.is_empty() && mismatches.is_empty() { 0 } else { 2 };
    let text = match format {
        Format::Structured => {
            let mut out = format!(
                "status = \"{}\"\nseed = {seed}\nmodels = {}\ninstances = {}\nsampled = {}\nviolations = {}\ncomparisons = {comparisons}\nmismatches = {}\n",
                if code == 0 { "ok" } else { "violations" },
                report.models,
                report.instances,
                report.truncated,
                report.violations.len(),
                mismatches.len()
            );
            for v in &report.violations {
                let _ = write!(
                    out,
                    "\n[[violation]]\nmodel_seed = {}\nschema = {:?}\ninstance = {:?}\nprofile = {:?}\n",
                    v.model_seed, v.schema, v.instance, v.profile
                );
            }
            for m in &mismatches {
                let _ = write!(out, "\n[[mismatch]]\ndetail = {m:?}\n");
            }
            out
        }
        Format::Human => {
            let mut out = format!(
                "seed {seed}: {} models, {} axiom instances{}, {} violations; {comparisons} solver comparisons, {} mismatches\n",
                report.models,
                report.instances,
                if report.truncated { " (sampled)" } else { "" },
                report.violations.len(),
                mismatches.len()
            );
            for v in &report.violations {
                let _ = writeln!(
                    out,
                    "model seed {}: {} fails at {}: {}",
                    v.model_seed, v.schema, v.profile, v.instance
                );
            }
            for m in &mismatches {
                let _ = writeln!(out, "{m}");
            }
            out
        }
    };
    Ok((text, code))
}

fn prove(format: Format, path: &str) -> Result<String, Failure> {
    let text = read(path)?;
    let d = parse_derivation(&text).map_err(|e| input(format!("{path}: {e}")))?;
    let v = check_derivation(&d);
    Ok(match (format, &v.failure) {
        (Format::Human, None) => format!("accepted: {} steps\n", v.steps),
        (Format::Human, Some(f)) => format!("rejected: {f}\n"),
        (Format::Structured, None) => format!("status = \"ok\"\naccepted = true\nsteps = {}\n", v.steps),
        (Format::Structured, Some(f)) => format!(
            "status = \"ok\"\naccepted = false\nsteps = {}\nfailed_step = {}\nfailed_line = {}\nreason = {:?}\nmessage = {:?}\n",
            v.steps,
            f.step,
            f.line,
            f.reason.kind(),
            f.reason.to_string()
        ),
    })
}

/// Runs the command line `argv` (program name first), writing the report
/// to `out`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    let result = match &cli.command {
        Command::Check { model, at, formula, formula_file } => {
            let text = match (formula, formula_file) {
                (Some(f), _) => Ok(f.clone()),
                (None, Some(path)) => read(path),
                (None, None) => Err(input("missing formula")),
            };
            text.and_then(|t| check(format, model, at, &t)).map(|s| (s, 0))
        }
        Command::Solve { model, concept, group, fixed } => {
            solve(format, model, concept, group, fixed.as_deref()).map(|s| (s, 0))
        }
        Command::Axioms { model, depth, budget, seed } => axioms_cmd(format, model, *depth, *budget, *seed),
        Command::Fuzz { models, seed, config, depth, budget } => {
            fuzz(format, *models, *seed, config.as_deref(), *depth, *budget)
        }
        Command::Prove { script } => prove(format, script).map(|s| (s, 0)),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = match format {
                Format::Structured => write!(
                    out,
                    "status = \"error\"\nreason = {:?}\nmessage = {:?}\n",
                    f.reason, f.message
                ),
                Format::Human => writeln!(out, "error: {}", f.message),
            };
            f.code
        }
    }
}
