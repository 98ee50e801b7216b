//! Brute-force oracles. Each is a literal reading of its definition: loops
//! over profiles and players, comparing raw assignments and preferences.

use thiserror::Error;

use crate::formula::Formula;
use crate::model::{GroupQuery, PdModel, Player, PlayerSet, ProfileIndex};

/// Largest group for which [`oracle_ca`] enumerates covers. A group of `k`
/// players has `2^(2^k - 1)` families of proper subsets.
pub const MAX_ORACLE_CA: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("cover enumeration over {0} players is out of reach (limit {MAX_ORACLE_CA})")]
    TooLarge(usize),
}

fn players_of(g: PlayerSet) -> Vec<Player> {
    g.iter().collect()
}

fn same_on(m: &PdModel, s: ProfileIndex, t: ProfileIndex, group: &[Player]) -> bool {
    let (a, b) = (m.assignment(s), m.assignment(t));
    group.iter().all(|&x| a[x] == b[x])
}

fn others(m: &PdModel, group: PlayerSet) -> Vec<Player> {
    (0..m.vocab().player_count())
        .filter(|&y| !group.contains(y))
        .collect()
}

/// No member can gain strictly by a unilateral change.
pub fn oracle_nash(m: &PdModel, group: PlayerSet) -> Vec<ProfileIndex> {
    m.profiles()
        .filter(|&s| {
            players_of(group).into_iter().all(|x| {
                let rest = others(m, PlayerSet::singleton(x));
                !m.profiles().any(|t| {
                    same_on(m, s, t, &rest) && m.preference(x).lt(s, t)
                })
            })
        })
        .collect()
}

/// With the outsiders fixed, no profile is strictly better for all members.
pub fn oracle_weak_pareto(m: &PdModel, group: PlayerSet) -> Vec<ProfileIndex> {
    let rest = others(m, group);
    let members = players_of(group);
    m.profiles()
        .filter(|&s| {
            !m.profiles().any(|t| {
                same_on(m, s, t, &rest) && members.iter().all(|&x| m.preference(x).lt(s, t))
            })
        })
        .collect()
}

/// With `fixed` held, no profile is weakly better for all members of
/// `group` and strictly better for one.
pub fn oracle_pareto_given(m: &PdModel, fixed: PlayerSet, group: PlayerSet) -> Vec<ProfileIndex> {
    let fixed = players_of(fixed);
    let members = players_of(group);
    m.profiles()
        .filter(|&s| {
            !m.profiles().any(|t| {
                same_on(m, s, t, &fixed)
                    && members.iter().all(|&x| m.preference(x).le(s, t))
                    && members.iter().any(|&x| m.preference(x).lt(s, t))
            })
        })
        .collect()
}

pub fn oracle_strong_pareto(m: &PdModel, group: PlayerSet) -> Vec<ProfileIndex> {
    oracle_pareto_given(m, m.vocab().complement(group), group)
}

pub fn oracle_ca1(m: &PdModel, group: PlayerSet) -> Vec<ProfileIndex> {
    let nash = oracle_nash(m, group);
    oracle_strong_pareto(m, group)
        .into_iter()
        .filter(|s| nash.contains(s))
        .collect()
}

pub fn oracle_ca2(m: &PdModel, group: PlayerSet) -> Vec<ProfileIndex> {
    let per_subgroup: Vec<Vec<ProfileIndex>> =
        group.subsets().map(|sub| oracle_strong_pareto(m, sub)).collect();
    m.profiles()
        .filter(|s| per_subgroup.iter().all(|ok| ok.contains(s)))
        .collect()
}

/// Every cover of `group` witnessing collective agency at `s`: families of
/// proper subsets, each Pareto optimal with the complement of `group`
/// fixed, whose union is `group`. Empty unless `s` is a Nash equilibrium.
pub fn oracle_covers(
    m: &PdModel,
    s: ProfileIndex,
    group: PlayerSet,
) -> Result<Vec<Vec<PlayerSet>>, OracleError> {
    if group.len() > MAX_ORACLE_CA {
        return Err(OracleError::TooLarge(group.len()));
    }
    if !oracle_nash(m, group).contains(&s) {
        return Ok(Vec::new());
    }
    let fixed = m.vocab().complement(group);
    let proper: Vec<PlayerSet> = group.subsets().filter(|&g| g != group).collect();
    let optimal: Vec<bool> = proper
        .iter()
        .map(|&g| oracle_pareto_given(m, fixed, g).contains(&s))
        .collect();
    let mut found = Vec::new();
    for family in 0u64..(1 << proper.len()) {
        let members: Vec<PlayerSet> = (0..proper.len())
            .filter(|i| family >> i & 1 == 1)
            .map(|i| proper[i])
            .collect();
        let mut union = PlayerSet::EMPTY;
        for g in &members {
            union = union.union(*g);
        }
        if union != group {
            continue;
        }
        if (0..proper.len()).all(|i| family >> i & 1 == 0 || optimal[i]) {
            found.push(members);
        }
    }
    Ok(found)
}

/// Profiles with at least one cover, found by exhaustive enumeration.
pub fn oracle_ca(m: &PdModel, group: PlayerSet) -> Result<Vec<ProfileIndex>, OracleError> {
    if group.len() > MAX_ORACLE_CA {
        return Err(OracleError::TooLarge(group.len()));
    }
    let mut out = Vec::new();
    for s in m.profiles() {
        if !oracle_covers(m, s, group)?.is_empty() {
            out.push(s);
        }
    }
    Ok(out)
}

fn reachable(m: &PdModel, s: ProfileIndex, q: &GroupQuery) -> Vec<ProfileIndex> {
    let eq = players_of(q.eq);
    let weak = players_of(q.weak);
    let strict = players_of(q.strict);
    m.profiles()
        .filter(|&t| {
            same_on(m, s, t, &eq)
                && weak.iter().all(|&x| m.preference(x).le(s, t))
                && strict.iter().all(|&x| m.preference(x).lt(s, t))
        })
        .collect()
}

/// Recursive evaluation straight from the truth conditions, recomputing
/// every reach set. Panics on formulas foreign to `m`.
pub fn reference_eval(m: &PdModel, s: ProfileIndex, f: &Formula) -> bool {
    match f {
        Formula::False => false,
        Formula::Atom { pred, args } => {
            let a = m.assignment(s);
            let tuple: Vec<_> = args.iter().map(|&x| a[x]).collect();
            m.interpretation(pred).is_some_and(|ext| ext.contains(&tuple))
        }
        Formula::Not(g) => !reference_eval(m, s, g),
        Formula::And(a, b) => reference_eval(m, s, a) && reference_eval(m, s, b),
        Formula::Modal(q, body) => reachable(m, s, q)
            .into_iter()
            .all(|t| reference_eval(m, t, body)),
        Formula::Dep(q, y) => reachable(m, s, q)
            .into_iter()
            .all(|t| m.assignment(t)[*y] == m.assignment(s)[*y]),
    }
}
