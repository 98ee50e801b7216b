//! Hilbert-style derivations.
//!
//! A script declares its vocabulary, then lists numbered steps:
//!
//! ```text
//! players: 1, 2, 3
//! predicates: P/1
//! 1. ([={}; <={3}; <{1}] false -> [={2}; <={3}; <{1}] false) BY axiom(II.e, Y={2})
//! 2. [={1}; <={}; <{}] ([={}; <={3}; <{1}] false -> [={2}; <={3}; <{1}] false) BY NEC 1 [={1}; <={}; <{}]
//! 3. (P(1) | ~P(1)) BY TAUT
//! ```
//!
//! Justifications are `axiom(name, bindings...)`, `MP n, m`, `NEC n [q]`,
//! `TAUT` for a propositional tautology, and `TAUT n, m, ...` for a
//! propositional consequence of earlier steps. Axiom bindings such as
//! `X'={1,2}` or `x=1` fix metavariables; the matcher finds the rest.
//! Blank lines and `#` comments are ignored.

use std::fmt;

use thiserror::Error;

use super::schema::Subst;
use super::tautology::is_tautology;
use super::{match_schema_with, schema_by_name, MatchOutcome};
use crate::formula::{bind, parse, Formula};
use crate::model::{GroupQuery, Player, PlayerSet, Vocabulary};

/// A malformed script: the derivation cannot even be read.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        name: String,
        groups: Vec<(String, PlayerSet)>,
        players: Vec<(String, Player)>,
    },
    ModusPonens(usize, usize),
    Necessitation(usize, GroupQuery),
    Taut(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub number: usize,
    /// Line in the script source, 1-based.
    pub line: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub vocab: Vocabulary,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    UnknownAxiom(String),
    /// Necessitation cited as an axiom instead of the `NEC` rule.
    RuleAsAxiom,
    UnknownMetavariable(String),
    NoSchemaMatch(String),
    SideCondition { schema: String, condition: String },
    /// A cited step number that is not an earlier step.
    BadReference(usize),
    BadModusPonens(usize, usize),
    BadNecessitation(usize),
    NotTautology,
    TooManyAtoms(usize),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::UnknownAxiom(n) => write!(f, "unknown axiom `{n}`"),
            Reason::RuleAsAxiom => f.write_str("necessitation is a rule; cite it as `NEC n [q]`"),
            Reason::UnknownMetavariable(v) => write!(f, "the schema has no metavariable `{v}`"),
            Reason::NoSchemaMatch(n) => write!(f, "formula is not an instance of {n}"),
            Reason::SideCondition { schema, condition } => {
                write!(f, "side condition of {schema} fails: {condition}")
            }
            Reason::BadReference(n) => write!(f, "step {n} is not an earlier step"),
            Reason::BadModusPonens(a, b) => {
                write!(f, "modus ponens does not apply to steps {a} and {b}")
            }
            Reason::BadNecessitation(n) => {
                write!(f, "formula is not the given modality applied to step {n}")
            }
            Reason::NotTautology => f.write_str("not a propositional consequence of the cited steps"),
            Reason::TooManyAtoms(n) => write!(f, "too many propositional atoms ({n}) for a truth table"),
        }
    }
}

impl Reason {
    /// Stable machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Reason::UnknownAxiom(_) => "unknown-axiom",
            Reason::RuleAsAxiom => "rule-as-axiom",
            Reason::UnknownMetavariable(_) => "unknown-metavariable",
            Reason::NoSchemaMatch(_) => "no-schema-match",
            Reason::SideCondition { .. } => "side-condition",
            Reason::BadReference(_) => "bad-reference",
            Reason::BadModusPonens(..) => "bad-modus-ponens",
            Reason::BadNecessitation(_) => "bad-necessitation",
            Reason::NotTautology => "not-tautology",
            Reason::TooManyAtoms(_) => "too-many-atoms",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub step: usize,
    pub line: usize,
    pub reason: Reason,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} (line {}): {}", self.step, self.line, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub steps: usize,
    /// The first failing step, if any.
    pub failure: Option<Failure>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }
}

fn err(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError {
        line,
        message: message.into(),
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>, ScriptError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| err(line, format!("expected a step number, found `{p}`"))))
        .collect()
}

fn parse_group(line: usize, vocab: &Vocabulary, text: &str) -> Result<PlayerSet, ScriptError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| err(line, format!("expected a group like {{a,b}}, found `{text}`")))?;
    let names: Vec<&str> = inner.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
    vocab.group(names).map_err(|e| err(line, e.to_string()))
}

fn parse_justification(line: usize, vocab: &Vocabulary, text: &str) -> Result<Justification, ScriptError> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("axiom(") {
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| err(line, "unclosed `axiom(`"))?;
        let parts = split_top_level(body);
        let (name, bindings) = parts.split_first().ok_or_else(|| err(line, "axiom needs a name"))?;
        let mut groups = Vec::new();
        let mut players = Vec::new();
        for b in bindings {
            let (var, value) = b
                .split_once('=')
                .ok_or_else(|| err(line, format!("expected `name=value`, found `{b}`")))?;
            let (var, value) = (var.trim(), value.trim());
            if value.starts_with('{') {
                groups.push((var.to_string(), parse_group(line, vocab, value)?));
            } else {
                let p = vocab.player_index(value).map_err(|e| err(line, e.to_string()))?;
                players.push((var.to_string(), p));
            }
        }
        return Ok(Justification::Axiom {
            name: name.to_string(),
            groups,
            players,
        });
    }
    if let Some(rest) = text.strip_prefix("MP") {
        let ns = numbers(line, rest)?;
        return match ns[..] {
            [a, b] => Ok(Justification::ModusPonens(a, b)),
            _ => Err(err(line, "MP takes two step numbers")),
        };
    }
    if let Some(rest) = text.strip_prefix("NEC") {
        let rest = rest.trim();
        let (n, q) = rest
            .split_once('[')
            .ok_or_else(|| err(line, "NEC takes a step number and a modality `[...]`"))?;
        let n = numbers(line, n)?;
        let [n] = n[..] else {
            return Err(err(line, "NEC takes one step number"));
        };
        let probe = parse(&format!("[{q} true")).map_err(|e| err(line, format!("in NEC modality: {e}")))?;
        let bound = bind(&probe, vocab).map_err(|e| err(line, e.to_string()))?;
        let Formula::Modal(q, _) = bound else {
            return Err(err(line, "NEC modality must be a box `[...]`"));
        };
        return Ok(Justification::Necessitation(n, q));
    }
    if let Some(rest) = text.strip_prefix("TAUT") {
        return Ok(Justification::Taut(numbers(line, rest)?));
    }
    Err(err(line, format!("unknown justification `{text}`")))
}

fn parse_header(line: usize, key: &str, value: &str, vocab: &mut Option<Vocabulary>) -> Result<(), ScriptError> {
    match key {
        "players" => {
            if vocab.is_some() {
                return Err(err(line, "players declared twice"));
            }
            let names: Vec<&str> = value.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
            *vocab = Some(Vocabulary::new(names).map_err(|e| err(line, e.to_string()))?);
        }
        "predicates" => {
            let v = vocab
                .take()
                .ok_or_else(|| err(line, "declare players before predicates"))?;
            let mut v = v;
            for decl in value.split(',').map(str::trim).filter(|d| !d.is_empty()) {
                let (name, arity) = decl
                    .split_once('/')
                    .ok_or_else(|| err(line, format!("expected `Name/arity`, found `{decl}`")))?;
                let arity = arity
                    .trim()
                    .parse()
                    .map_err(|_| err(line, format!("bad arity in `{decl}`")))?;
                v = v.with_predicate(name.trim(), arity).map_err(|e| err(line, e.to_string()))?;
            }
            *vocab = Some(v);
        }
        other => return Err(err(line, format!("unknown header `{other}`"))),
    }
    Ok(())
}

pub fn parse_derivation(text: &str) -> Result<Derivation, ScriptError> {
    let mut vocab: Option<Vocabulary> = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let number_end = content.find(|c: char| !c.is_ascii_digit()).unwrap_or(content.len());
        if number_end == 0 {
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| err(line, format!("expected a header or a numbered step, found `{content}`")))?;
            if !steps.is_empty() {
                return Err(err(line, "headers must precede the steps"));
            }
            parse_header(line, key.trim(), value, &mut vocab)?;
            continue;
        }
        let v = vocab.as_ref().ok_or_else(|| err(line, "missing `players:` header"))?;
        let number: usize = content[..number_end].parse().unwrap();
        if number != steps.len() + 1 {
            return Err(err(line, format!("expected step {}, found {number}", steps.len() + 1)));
        }
        let rest = content[number_end..]
            .strip_prefix('.')
            .ok_or_else(|| err(line, "expected `.` after the step number"))?;
        let (formula, just) = rest
            .rsplit_once(" BY ")
            .ok_or_else(|| err(line, "missing ` BY ` justification"))?;
        let parsed = parse(formula).map_err(|e| err(line, format!("column {}: {}", e.col, e.message)))?;
        let formula = bind(&parsed, v).map_err(|e| err(line, e.to_string()))?;
        steps.push(Step {
            number,
            line,
            formula,
            justification: parse_justification(line, v, just)?,
        });
    }
    let vocab = vocab.ok_or_else(|| err(1, "missing `players:` header"))?;
    Ok(Derivation { vocab, steps })
}

fn check_step(d: &Derivation, k: usize) -> Result<(), Reason> {
    let step = &d.steps[k];
    let earlier = |n: usize| -> Result<&Formula, Reason> {
        if n == 0 || n > k {
            Err(Reason::BadReference(n))
        } else {
            Ok(&d.steps[n - 1].formula)
        }
    };
    let all = d.vocab.all_players();
    match &step.justification {
        Justification::Axiom { name, groups, players } => {
            if name == "II.a" {
                return Err(Reason::RuleAsAxiom);
            }
            let schema = schema_by_name(name).ok_or_else(|| Reason::UnknownAxiom(name.clone()))?;
            let mv = schema.metavars();
            let mut given = Subst::default();
            for (var, set) in groups {
                let v = mv
                    .groups
                    .iter()
                    .find(|g| *g == var)
                    .ok_or_else(|| Reason::UnknownMetavariable(var.clone()))?;
                given.groups.insert(v, *set);
            }
            for (var, p) in players {
                let v = mv
                    .players
                    .iter()
                    .find(|g| *g == var)
                    .ok_or_else(|| Reason::UnknownMetavariable(var.clone()))?;
                given.players.insert(v, *p);
            }
            match match_schema_with(&schema, &step.formula, all, given) {
                MatchOutcome::Matched(_) => Ok(()),
                MatchOutcome::SideCondition(c) => Err(Reason::SideCondition {
                    schema: name.clone(),
                    condition: c,
                }),
                MatchOutcome::NoMatch => Err(Reason::NoSchemaMatch(name.clone())),
            }
        }
        Justification::ModusPonens(a, b) => {
            let (fa, fb) = (earlier(*a)?, earlier(*b)?);
            let fits = |p: &Formula, imp: &Formula| {
                imp.as_implication() == Some((p, &step.formula))
            };
            if fits(fa, fb) || fits(fb, fa) {
                Ok(())
            } else {
                Err(Reason::BadModusPonens(*a, *b))
            }
        }
        Justification::Necessitation(n, q) => {
            let premise = earlier(*n)?;
            match &step.formula {
                Formula::Modal(fq, body) if fq == q && **body == *premise => Ok(()),
                _ => Err(Reason::BadNecessitation(*n)),
            }
        }
        Justification::Taut(cited) => {
            let premises = cited
                .iter()
                .map(|&n| earlier(n).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let goal = if premises.is_empty() {
                step.formula.clone()
            } else {
                Formula::implies(Formula::conjunction(premises), step.formula.clone())
            };
            match is_tautology(&goal) {
                Ok(true) => Ok(()),
                Ok(false) => Err(Reason::NotTautology),
                Err(e) => Err(Reason::TooManyAtoms(e.0)),
            }
        }
    }
}

/// Checks every step in order and reports the first that fails.
pub fn check_derivation(d: &Derivation) -> Verdict {
    let failure = (0..d.steps.len()).find_map(|k| {
        check_step(d, k).err().map(|reason| Failure {
            step: d.steps[k].number,
            line: d.steps[k].line,
            reason,
        })
    });
    Verdict {
        steps: d.steps.len(),
        failure,
    }
}
