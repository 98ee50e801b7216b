//! The proof system: axiom schemata, schema matching, bounded instance
//! enumeration, soundness fuzzing and a derivation checker.
//!
//! Schemata use the metavariables `X, X', X'', Y, Y', Y'', Z` for groups,
//! `x, y` for players and `phi, psi` for formulas. Necessitation is a rule,
//! not a schema, and is handled by the derivation checker.

mod derivation;
mod enumerate;
mod fuzz;
mod schema;
mod tautology;

pub use derivation::{
    check_derivation, parse_derivation, Derivation, Failure, Justification, Reason, ScriptError,
    Step, Verdict,
};
pub use enumerate::{enumerate_instances, formula_pool, Instances};
pub use fuzz::{check_model, soundness_fuzz, FuzzConfig, FuzzReport, ModelCheckReport, Violation};
pub use schema::{AxiomSchema, Cond, GExpr, MetaVars, Pat, QPat, Subst};
pub use tautology::{is_tautology, TooManyAtoms, MAX_TAUTOLOGY_ATOMS};

use crate::formula::Formula;
use crate::model::PlayerSet;

fn var(name: &'static str) -> GExpr {
    GExpr::Var(name)
}

fn q(eq: GExpr, weak: GExpr, strict: GExpr) -> QPat {
    QPat::new(eq, weak, strict)
}

fn phi() -> Pat {
    Pat::meta("phi")
}

fn psi() -> Pat {
    Pat::meta("psi")
}

/// K: `[q](φ → ψ) → ([q]φ → [q]ψ)`.
pub fn k_distribution() -> AxiomSchema {
    let s = QPat::standard;
    AxiomSchema::new(
        "II.b",
        Pat::implies(
            Pat::boxed(s(), Pat::implies(phi(), psi())),
            Pat::implies(Pat::boxed(s(), phi()), Pat::boxed(s(), psi())),
        ),
        vec![],
    )
}

/// `φ → [=X; ⪯∅; ≺∅]φ` when the truth of `φ` depends only on `X`.
pub fn agreement_persistence() -> AxiomSchema {
    AxiomSchema::new(
        "II.c1",
        Pat::implies(phi(), Pat::boxed(q(var("X"), GExpr::Empty, GExpr::Empty), phi())),
        vec![Cond::Supported("phi", var("X"))],
    )
}

pub fn transitivity() -> AxiomSchema {
    let s = QPat::standard;
    AxiomSchema::new(
        "II.c2",
        Pat::implies(Pat::boxed(s(), phi()), Pat::boxed(s(), Pat::boxed(s(), phi()))),
        vec![],
    )
}

pub fn reflexivity() -> AxiomSchema {
    AxiomSchema::new(
        "II.d",
        Pat::implies(Pat::boxed(q(var("X"), var("X'"), GExpr::Empty), phi()), phi()),
        vec![],
    )
}

pub fn monotonicity() -> AxiomSchema {
    AxiomSchema::new(
        "II.e",
        Pat::implies(
            Pat::boxed(QPat::standard(), phi()),
            Pat::boxed(q(var("Y"), var("Y'"), var("Y''")), phi()),
        ),
        vec![
            Cond::Subset(var("X"), var("Y")),
            Cond::Subset(var("X'"), var("Y'")),
            Cond::Subset(var("X''"), var("Y''")),
        ],
    )
}

/// Strict improvement is weak improvement.
pub fn strict_is_weak() -> AxiomSchema {
    AxiomSchema::new(
        "II.f",
        Pat::implies(
            Pat::dual(QPat::standard(), phi()),
            Pat::dual(q(var("X"), GExpr::union(var("X'"), var("X''")), var("X''")), phi()),
        ),
        vec![],
    )
}

/// Weak then strict is strict.
pub fn weak_then_strict() -> AxiomSchema {
    AxiomSchema::new(
        "II.g",
        Pat::implies(
            Pat::dual(
                QPat::standard(),
                Pat::dual(
                    q(var("X"), GExpr::diff(var("X'"), var("Y")), GExpr::union(var("X''"), var("Y"))),
                    phi(),
                ),
            ),
            Pat::dual(q(var("X"), var("X'"), GExpr::union(var("X''"), var("Y"))), phi()),
        ),
        vec![Cond::Subset(var("Y"), var("X'"))],
    )
}

/// Strict then weak is strict.
pub fn strict_then_weak() -> AxiomSchema {
    AxiomSchema::new(
        "II.h",
        Pat::implies(
            Pat::dual(
                QPat::standard(),
                Pat::dual(
                    q(var("X"), GExpr::union(var("X'"), var("Y")), GExpr::diff(var("X''"), var("Y"))),
                    phi(),
                ),
            ),
            Pat::dual(q(var("X"), GExpr::union(var("X'"), var("Y")), var("X''")), phi()),
        ),
        vec![Cond::Subset(var("Y"), var("X''"))],
    )
}

/// A weakly better witness is either strictly better for some member or
/// equally good for all.
pub fn interaction() -> AxiomSchema {
    let s = QPat::standard;
    AxiomSchema::new(
        "II.j",
        Pat::implies(
            Pat::and(phi(), Pat::dual(s(), psi())),
            Pat::or(
                Pat::big_or(
                    var("X'"),
                    "x",
                    Pat::dual(
                        q(var("X"), var("X'"), GExpr::union(var("X''"), GExpr::Single("x"))),
                        psi(),
                    ),
                ),
                Pat::dual(
                    s(),
                    Pat::and(psi(), Pat::dual(q(var("X"), var("X'"), GExpr::Empty), phi())),
                ),
            ),
        ),
        vec![],
    )
}

pub fn dependence_reflexivity() -> AxiomSchema {
    AxiomSchema::new(
        "III.a",
        Pat::Dep(QPat::standard(), "x"),
        vec![Cond::Member("x", var("X"))],
    )
}

pub fn dependence_transitivity() -> AxiomSchema {
    AxiomSchema::new(
        "III.b",
        Pat::implies(
            Pat::and(
                Pat::dep_all(QPat::standard(), var("Y")),
                Pat::dep_all(q(var("Y"), var("X'"), var("X''")), var("Z")),
            ),
            Pat::dep_all(QPat::standard(), var("Z")),
        ),
        vec![],
    )
}

pub fn transfer() -> AxiomSchema {
    AxiomSchema::new(
        "IV.a",
        Pat::implies(
            Pat::and(
                Pat::dep_all(QPat::standard(), var("Y")),
                Pat::boxed(q(var("Y"), var("X'"), var("X''")), phi()),
            ),
            Pat::boxed(QPat::standard(), phi()),
        ),
        vec![],
    )
}

/// Every axiom schema, ordered by name.
pub fn all_schemas() -> Vec<AxiomSchema> {
    vec![
        k_distribution(),
        agreement_persistence(),
        transitivity(),
        reflexivity(),
        monotonicity(),
        strict_is_weak(),
        weak_then_strict(),
        strict_then_weak(),
        interaction(),
        dependence_reflexivity(),
        dependence_transitivity(),
        transfer(),
    ]
}

pub fn schema_by_name(name: &str) -> Option<AxiomSchema> {
    all_schemas().into_iter().find(|s| s.name == name)
}

/// K as a conjunction, `[q](φ → ψ) ∧ ([q]φ → [q]ψ)`. Not valid: the first
/// conjunct can fail.
pub fn k_as_conjunction() -> AxiomSchema {
    let s = QPat::standard;
    AxiomSchema::new(
        "II.b/conj",
        Pat::and(
            Pat::boxed(s(), Pat::implies(phi(), psi())),
            Pat::implies(Pat::boxed(s(), phi()), Pat::boxed(s(), psi())),
        ),
        vec![],
    )
}

/// Agreement persistence guarded by the syntactic `Free` set. Not valid
/// once `φ` contains a preference modality.
pub fn agreement_persistence_free() -> AxiomSchema {
    let mut s = agreement_persistence();
    s.name = "II.c1/free";
    s.conditions = vec![Cond::FreeWithin("phi", var("X"))];
    s
}

/// Mutation control: [`strict_is_weak`] with the union moved into the
/// strict slot. Not valid.
pub fn corrupted_strict_is_weak() -> AxiomSchema {
    AxiomSchema::new(
        "II.f/mutant",
        Pat::implies(
            Pat::dual(QPat::standard(), phi()),
            Pat::dual(q(var("X"), var("X'"), GExpr::union(var("X'"), var("X''"))), phi()),
        ),
        vec![],
    )
}

/// Result of matching a formula against a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched(Subst),
    /// The shape matches but every such substitution violates a side
    /// condition; the first one found is reported.
    SideCondition(String),
    NoMatch,
}

impl MatchOutcome {
    pub fn is_match(&self) -> bool {
        matches!(self, MatchOutcome::Matched(_))
    }
}

/// Matches `candidate` against `schema`, with group variables ranging over
/// subsets of `all`.
pub fn match_schema(schema: &AxiomSchema, candidate: &Formula, all: PlayerSet) -> MatchOutcome {
    match_schema_with(schema, candidate, all, Subst::default())
}

/// As [`match_schema`], starting from some metavariables already fixed.
pub fn match_schema_with(
    schema: &AxiomSchema,
    candidate: &Formula,
    all: PlayerSet,
    given: Subst,
) -> MatchOutcome {
    let groups = schema.metavars().groups;
    let mut side = None;
    if let Some(s) = search(schema, candidate, all, &groups, given, &mut side) {
        return MatchOutcome::Matched(s);
    }
    match side {
        Some(c) => MatchOutcome::SideCondition(c),
        None => MatchOutcome::NoMatch,
    }
}

fn search(
    schema: &AxiomSchema,
    f: &Formula,
    all: PlayerSet,
    groups: &[&'static str],
    start: Subst,
    side: &mut Option<String>,
) -> Option<Subst> {
    let mut s = start.clone();
    let need = match schema::match_pat(&schema.pattern, f, &mut s) {
        Ok(false) => return None,
        Ok(true) => match schema.check_conditions(&s, all) {
            Ok(None) => return Some(s),
            Ok(Some(c)) => {
                side.get_or_insert_with(|| c.to_string());
                return None;
            }
            Err(v) => v,
        },
        Err(v) => v,
    };
    if !groups.contains(&need) {
        return None;
    }
    for sub in all.subsets() {
        let mut next = start.clone();
        next.groups.insert(need, sub);
        if let Some(found) = search(schema, f, all, groups, next, side) {
            return Some(found);
        }
    }
    None
}
