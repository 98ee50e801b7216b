//! Game-theoretic solvers.
//!
//! Each concept is computed directly from its definition by searching for a
//! dominating profile, and [`formula_solution`] computes the same set by
//! evaluating the defining formula. The two routes are kept separate so
//! that each checks the other.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::formula::{self, Formula, BindError};
use crate::model::{GroupQuery, ModelError, PdModel, Player, PlayerSet, ProfileIndex, ProfileSet};
use crate::semantics::{eval_all, EvalError};

/// Default bound on the group size accepted by the native `ca` solver.
pub const DEFAULT_CA_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Bind(#[from] BindError),
    #[error("group of {size} players exceeds the limit of {limit}")]
    GroupTooLarge { size: usize, limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Concept {
    Nash,
    WeakPareto,
    StrongPareto,
    /// Strong Pareto optimality with an arbitrary fixed group.
    ParetoGiven(PlayerSet),
    Ca,
    Ca1,
    Ca2,
}

impl Concept {
    pub fn name(&self) -> &'static str {
        match self {
            Concept::Nash => "nash",
            Concept::WeakPareto => "wpareto",
            Concept::StrongPareto => "spareto",
            Concept::ParetoGiven(_) => "paY",
            Concept::Ca => "ca",
            Concept::Ca1 => "ca1",
            Concept::Ca2 => "ca2",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses every concept except `paY`, which needs a fixed group.
impl FromStr for Concept {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "nash" => Concept::Nash,
            "wpareto" | "weakPareto" => Concept::WeakPareto,
            "spareto" | "strongPareto" | "pa" => Concept::StrongPareto,
            "ca" => Concept::Ca,
            "ca1" => Concept::Ca1,
            "ca2" => Concept::Ca2,
            other => return Err(format!("unknown concept `{other}`")),
        })
    }
}

/// Why a profile is, or is not, a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Holds,
    /// A family of proper subgroups, each Pareto optimal with the
    /// complement of the whole group fixed, whose union is the group.
    Cover(Vec<PlayerSet>),
    /// `by` agrees with the profile on the fixed players of `subgroup` and
    /// improves on it for `subgroup` in the sense of the concept.
    Blocked { subgroup: PlayerSet, by: ProfileIndex },
    /// Players lying in no Pareto optimal proper subgroup.
    Uncovered(PlayerSet),
}

impl Evidence {
    pub fn holds(&self) -> bool {
        matches!(self, Evidence::Holds | Evidence::Cover(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub concept: Concept,
    pub group: PlayerSet,
    pub solutions: ProfileSet,
    /// One entry per profile, in canonical order.
    pub evidence: Vec<Evidence>,
}

impl AnalysisReport {
    fn collect(concept: Concept, group: PlayerSet, evidence: Vec<Evidence>) -> Self {
        let mut solutions = FixedBitSet::with_capacity(evidence.len());
        for (s, e) in evidence.iter().enumerate() {
            solutions.set(s, e.holds());
        }
        AnalysisReport {
            concept,
            group,
            solutions,
            evidence,
        }
    }

    pub fn solution_labels(&self, m: &PdModel) -> Vec<String> {
        self.solutions.ones().map(|s| m.label(s).to_string()).collect()
    }
}

fn check_group(m: &PdModel, group: PlayerSet) -> Result<(), AnalysisError> {
    Ok(m.vocab().check_group(group)?)
}

/// First `t` that agrees with `s` on `fixed`, is weakly preferred by all of
/// `weak` and strictly preferred by all of `strict`.
fn first_reachable(m: &PdModel, s: ProfileIndex, q: GroupQuery) -> Option<ProfileIndex> {
    m.profiles().find(|&t| {
        m.agrees(s, t, q.eq) && m.weakly_below(s, t, q.weak) && m.strictly_below(s, t, q.strict)
    })
}

fn nash_at(m: &PdModel, s: ProfileIndex, group: PlayerSet) -> Evidence {
    let all = m.vocab().all_players();
    for x in group.iter() {
        let only = PlayerSet::singleton(x);
        let q = GroupQuery::new(all.without(x), PlayerSet::EMPTY, only);
        if let Some(t) = first_reachable(m, s, q) {
            return Evidence::Blocked { subgroup: only, by: t };
        }
    }
    Evidence::Holds
}

/// No `t` fixing `fixed` with `s ⪯_X t` and `s ≺_x t` for some `x ∈ X`.
fn pareto_given_at(m: &PdModel, s: ProfileIndex, fixed: PlayerSet, group: PlayerSet) -> Evidence {
    let dominating = m.profiles().find(|&t| {
        m.agrees(s, t, fixed)
            && m.weakly_below(s, t, group)
            && group.iter().any(|x| m.strictly_below(s, t, PlayerSet::singleton(x)))
    });
    match dominating {
        Some(t) => Evidence::Blocked { subgroup: group, by: t },
        None => Evidence::Holds,
    }
}

fn per_profile(m: &PdModel, f: impl Fn(ProfileIndex) -> Evidence) -> Vec<Evidence> {
    m.profiles().map(f).collect()
}

/// Nash equilibria for `group`: no member gains strictly by changing only
/// their own action.
pub fn nash(m: &PdModel, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    let ev = per_profile(m, |s| nash_at(m, s, group));
    Ok(AnalysisReport::collect(Concept::Nash, group, ev))
}

/// Weak Pareto optima: with the outsiders fixed, no profile is strictly
/// better for every member.
pub fn weak_pareto(m: &PdModel, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    let fixed = m.vocab().complement(group);
    let ev = per_profile(m, |s| {
        match first_reachable(m, s, GroupQuery::new(fixed, PlayerSet::EMPTY, group)) {
            Some(t) => Evidence::Blocked { subgroup: group, by: t },
            None => Evidence::Holds,
        }
    });
    Ok(AnalysisReport::collect(Concept::WeakPareto, group, ev))
}

/// Strong Pareto optima: with the outsiders fixed, no profile is weakly
/// better for every member and strictly better for one.
pub fn strong_pareto(m: &PdModel, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    let fixed = m.vocab().complement(group);
    let ev = per_profile(m, |s| pareto_given_at(m, s, fixed, group));
    Ok(AnalysisReport::collect(Concept::StrongPareto, group, ev))
}

/// Strong Pareto optimality of `group` with `fixed` held constant instead of
/// the complement.
pub fn pareto_given(
    m: &PdModel,
    fixed: PlayerSet,
    group: PlayerSet,
) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    check_group(m, fixed)?;
    let ev = per_profile(m, |s| pareto_given_at(m, s, fixed, group));
    Ok(AnalysisReport::collect(Concept::ParetoGiven(fixed), group, ev))
}

/// Pareto optimal Nash equilibria.
pub fn ca1(m: &PdModel, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    let fixed = m.vocab().complement(group);
    let ev = per_profile(m, |s| match pareto_given_at(m, s, fixed, group) {
        Evidence::Holds => nash_at(m, s, group),
        blocked => blocked,
    });
    Ok(AnalysisReport::collect(Concept::Ca1, group, ev))
}

/// Every subgroup, the group included, is Pareto optimal.
pub fn ca2(m: &PdModel, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    if group.len() > DEFAULT_CA_LIMIT {
        return Err(AnalysisError::GroupTooLarge {
            size: group.len(),
            limit: DEFAULT_CA_LIMIT,
        });
    }
    let ev = per_profile(m, |s| {
        group
            .subsets()
            .map(|sub| pareto_given_at(m, s, m.vocab().complement(sub), sub))
            .find(|e| !e.holds())
            .unwrap_or(Evidence::Holds)
    });
    Ok(AnalysisReport::collect(Concept::Ca2, group, ev))
}

/// Collective agency with the default group-size limit.
pub fn ca(m: &PdModel, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    ca_with_limit(m, group, DEFAULT_CA_LIMIT)
}

/// Collective agency: a Nash equilibrium for the group at which some cover
/// of the group by proper subgroups consists of subgroups that are each
/// Pareto optimal with the group's complement fixed.
///
/// A cover exists iff the union of all such subgroups is the whole group,
/// so covers are never enumerated. The reported cover keeps the maximal
/// qualifying subgroups, then drops redundant ones in canonical order.
pub fn ca_with_limit(
    m: &PdModel,
    group: PlayerSet,
    limit: usize,
) -> Result<AnalysisReport, AnalysisError> {
    check_group(m, group)?;
    if group.len() > limit {
        return Err(AnalysisError::GroupTooLarge {
            size: group.len(),
            limit,
        });
    }
    let fixed = m.vocab().complement(group);
    let proper: Vec<PlayerSet> = group.proper_subsets().collect();
    let ev = per_profile(m, |s| {
        if let blocked @ Evidence::Blocked { .. } = nash_at(m, s, group) {
            return blocked;
        }
        let good: Vec<PlayerSet> = proper
            .iter()
            .copied()
            .filter(|&sub| pareto_given_at(m, s, fixed, sub).holds())
            .collect();
        let covered = good.iter().fold(PlayerSet::EMPTY, |acc, g| acc.union(*g));
        if covered != group {
            return Evidence::Uncovered(group.difference(covered));
        }
        Evidence::Cover(minimize_cover(group, &good))
    });
    Ok(AnalysisReport::collect(Concept::Ca, group, ev))
}

fn minimize_cover(group: PlayerSet, good: &[PlayerSet]) -> Vec<PlayerSet> {
    let mut cover: Vec<PlayerSet> = good
        .iter()
        .copied()
        .filter(|&g| !g.is_empty() && !good.iter().any(|&h| g.is_proper_subset(h)))
        .collect();
    let mut i = 0;
    while i < cover.len() {
        let rest = cover
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(PlayerSet::EMPTY, |acc, (_, g)| acc.union(*g));
        if rest == group {
            cover.remove(i);
        } else {
            i += 1;
        }
    }
    cover
}

/// Runs the direct solver for `concept`.
pub fn solve(m: &PdModel, concept: Concept, group: PlayerSet) -> Result<AnalysisReport, AnalysisError> {
    match concept {
        Concept::Nash => nash(m, group),
        Concept::WeakPareto => weak_pareto(m, group),
        Concept::StrongPareto => strong_pareto(m, group),
        Concept::ParetoGiven(fixed) => pareto_given(m, fixed, group),
        Concept::Ca => ca(m, group),
        Concept::Ca1 => ca1(m, group),
        Concept::Ca2 => ca2(m, group),
    }
}

/// The defining formula of `concept`. For `ca` this is the explicit
/// disjunction over covers, available for small groups only.
pub fn defining_formula(m: &PdModel, concept: Concept, group: PlayerSet) -> Result<Formula, AnalysisError> {
    check_group(m, group)?;
    let all = m.vocab().all_players();
    Ok(match concept {
        Concept::Nash => formula::nash(all, group),
        Concept::WeakPareto => formula::weak_pareto(all, group),
        Concept::StrongPareto => formula::pareto(all, group),
        Concept::ParetoGiven(fixed) => {
            check_group(m, fixed)?;
            formula::pareto_given(fixed, group)
        }
        Concept::Ca1 => formula::ca1(all, group),
        Concept::Ca2 => formula::ca2(all, group),
        Concept::Ca => {
            let text = crate::formula::MacroFormula::Ca(crate::formula::GroupExpr::literal(
                m.vocab().group_names(group),
            ));
            formula::bind(&text, m.vocab())?
        }
    })
}

/// Solution set computed by evaluating the defining formula.
pub fn formula_solution(m: &PdModel, concept: Concept, group: PlayerSet) -> Result<ProfileSet, AnalysisError> {
    let f = defining_formula(m, concept, group)?;
    Ok(eval_all(m, &f)?)
}

/// The Nash formula written with the whole group's complement fixed in
/// every conjunct, `∧_{x∈X} [=V−X; <={}; <{x}] ⊥`. For groups of two or
/// more players this is stronger than the unilateral-deviation definition
/// that [`nash`] implements.
pub fn nash_fixing_complement(all: PlayerSet, group: PlayerSet) -> Formula {
    Formula::conjunction(group.iter().map(|x: Player| {
        Formula::modal(
            GroupQuery::new(all.difference(group), PlayerSet::EMPTY, PlayerSet::singleton(x)),
            Formula::False,
        )
    }))
}

#[derive(Serialize)]
struct ReportDoc {
    concept: String,
    group: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed: Option<Vec<String>>,
    solutions: Vec<String>,
    profiles: Vec<ProfileDoc>,
}

#[derive(Serialize)]
struct ProfileDoc {
    id: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocked_by: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocked_group: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    uncovered: Option<Vec<String>>,
}

impl AnalysisReport {
    /// Structured form, mirroring the model file conventions.
    pub fn to_toml(&self, m: &PdModel) -> String {
        let v = m.vocab();
        let doc = ReportDoc {
            concept: self.concept.name().to_string(),
            group: v.group_names(self.group),
            fixed: match self.concept {
                Concept::ParetoGiven(fixed) => Some(v.group_names(fixed)),
                _ => None,
            },
            solutions: self.solution_labels(m),
            profiles: self
                .evidence
                .iter()
                .enumerate()
                .map(|(s, e)| {
                    let mut p = ProfileDoc {
                        id: m.label(s).to_string(),
                        holds: e.holds(),
                        cover: None,
                        blocked_by: None,
                        blocked_group: None,
                        uncovered: None,
                    };
                    match e {
                        Evidence::Holds => {}
                        Evidence::Cover(c) => {
                            p.cover = Some(c.iter().map(|g| v.group_names(*g)).collect())
                        }
                        Evidence::Blocked { subgroup, by } => {
                            p.blocked_by = Some(m.label(*by).to_string());
                            p.blocked_group = Some(v.group_names(*subgroup));
                        }
                        Evidence::Uncovered(u) => p.uncovered = Some(v.group_names(*u)),
                    }
                    p
                })
                .collect(),
        };
        toml::to_string(&doc).expect("reports always serialize")
    }

    pub fn to_human(&self, m: &PdModel) -> String {
        let v = m.vocab();
        let braces = |g: PlayerSet| format!("{{{}}}", v.group_names(g).join(","));
        let mut out = format!(
            "{} for {}: {}\n",
            self.concept,
            braces(self.group),
            if self.solutions.is_clear() {
                "no solutions".to_string()
            } else {
                self.solution_labels(m).join(" ")
            }
        );
        for (s, e) in self.evidence.iter().enumerate() {
            let line = match e {
                Evidence::Holds => "holds".to_string(),
                Evidence::Cover(c) => format!(
                    "holds with cover {{{}}}",
                    c.iter().map(|g| braces(*g)).collect::<Vec<_>>().join(",")
                ),
                Evidence::Blocked { subgroup, by } => {
                    format!("blocked by {} (group {})", m.label(*by), braces(*subgroup))
                }
                Evidence::Uncovered(u) => format!("no cover: {} uncovered", braces(*u)),
            };
            out.push_str(&format!("  {}: {line}\n", m.label(s)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g(m: &PdModel, names: &[&str]) -> PlayerSet {
        m.vocab().group(names.iter().copied()).unwrap()
    }

    #[test]
    fn rock_jazz_solutions() {
        let m = fixtures::rock_jazz();
        let both = g(&m, &["E", "A"]);
        assert_eq!(nash(&m, both).unwrap().solution_labels(&m), ["RR", "JJ"]);
        assert_eq!(weak_pareto(&m, both).unwrap().solution_labels(&m), ["JJ"]);
        assert_eq!(strong_pareto(&m, both).unwrap().solution_labels(&m), ["JJ"]);
        assert_eq!(nash(&m, PlayerSet::EMPTY).unwrap().solutions.count_ones(..), 4);
    }

    #[test]
    fn the_complement_variant_of_nash_differs() {
        let m = fixtures::rock_jazz();
        let both = g(&m, &["E", "A"]);
        let f = nash_fixing_complement(m.vocab().all_players(), both);
        let ext = eval_all(&m, &f).unwrap();
        assert_eq!(ext.ones().collect::<Vec<_>>(), vec![3]);
        assert_ne!(ext, nash(&m, both).unwrap().solutions);
    }

    #[test]
    fn singleton_concepts_coincide() {
        let m = fixtures::prisoners_dilemma_3();
        for x in 0..3 {
            let one = PlayerSet::singleton(x);
            let n = nash(&m, one).unwrap().solutions;
            assert_eq!(weak_pareto(&m, one).unwrap().solutions, n);
            assert_eq!(strong_pareto(&m, one).unwrap().solutions, n);
        }
    }

    #[test]
    fn collective_agency_in_the_three_player_dilemma() {
        let m = fixtures::prisoners_dilemma_3();
        let all = m.vocab().all_players();
        let r = ca(&m, all).unwrap();
        assert_eq!(r.solution_labels(&m), ["conf,conf,observe"]);
        assert_eq!(
            r.evidence[3],
            Evidence::Cover(vec![g(&m, &["1", "3"]), g(&m, &["2", "3"])])
        );
        // At (coop,coop) each prisoner gains by confessing.
        assert!(matches!(r.evidence[0], Evidence::Blocked { .. }));
    }

    #[test]
    fn ca1_fails_at_mutual_cooperation() {
        let m = fixtures::prisoners_dilemma();
        let r = ca1(&m, m.vocab().all_players()).unwrap();
        assert!(!r.solutions.contains(0));
    }

    #[test]
    fn pareto_given_everything_fixed_always_holds() {
        let m = fixtures::prisoners_dilemma_3();
        let all = m.vocab().all_players();
        let r = pareto_given(&m, all, g(&m, &["1", "2"])).unwrap();
        assert_eq!(r.solutions.count_ones(..), 4);
        let r = pareto_given(&m, PlayerSet::EMPTY, g(&m, &["1", "3"])).unwrap();
        assert!(r.solutions.contains(3));
    }

    #[test]
    fn singleton_ca_is_unsatisfiable() {
        let m = fixtures::prisoners_dilemma_3();
        for x in 0..3 {
            let r = ca(&m, PlayerSet::singleton(x)).unwrap();
            assert!(r.solutions.is_clear());
        }
        let r = ca(&m, PlayerSet::EMPTY).unwrap();
        assert_eq!(r.solutions.count_ones(..), 4);
    }

    #[test]
    fn limits_and_errors() {
        let m = fixtures::prisoners_dilemma_3();
        assert_eq!(
            ca_with_limit(&m, m.vocab().all_players(), 2),
            Err(AnalysisError::GroupTooLarge { size: 3, limit: 2 })
        );
        assert!(matches!(
            nash(&m, PlayerSet::singleton(7)),
            Err(AnalysisError::Model(ModelError::GroupOutOfRange(_)))
        ));
        assert_eq!("spareto".parse::<Concept>(), Ok(Concept::StrongPareto));
        assert!("bogus".parse::<Concept>().is_err());
    }

    #[test]
    fn formula_route_matches_on_fixtures() {
        for m in [fixtures::rock_jazz(), fixtures::prisoners_dilemma(), fixtures::prisoners_dilemma_3()] {
            let all = m.vocab().all_players();
            for group in all.subsets() {
                for c in [Concept::Nash, Concept::WeakPareto, Concept::StrongPareto, Concept::Ca, Concept::Ca1, Concept::Ca2] {
                    assert_eq!(
                        solve(&m, c, group).unwrap().solutions,
                        formula_solution(&m, c, group).unwrap(),
                        "{c} {group:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn report_rendering() {
        let m = fixtures::rock_jazz();
        let r = nash(&m, g(&m, &["E", "A"])).unwrap();
        let text = r.to_toml(&m);
        assert!(text.contains("solutions = [\"RR\", \"JJ\"]"), "{text}");
        let human = r.to_human(&m);
        assert!(human.starts_with("nash for {E,A}: RR JJ"), "{human}");
        assert!(human.contains("RJ: blocked by"), "{human}");
    }
}
