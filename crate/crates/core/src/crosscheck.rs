//! Agreement between the solvers, the defining formulas and the brute-force
//! oracles on a single model.

use crate::analysis::{formula_solution, solve, Concept};
use crate::formula::MAX_CA_EXPANSION;
use crate::model::{PdModel, PlayerSet, ProfileIndex};
use crate::testgen::{
    oracle_ca, oracle_ca1, oracle_ca2, oracle_nash, oracle_strong_pareto, oracle_weak_pareto,
};

pub const CONCEPTS: [Concept; 6] = [
    Concept::Nash,
    Concept::WeakPareto,
    Concept::StrongPareto,
    Concept::Ca,
    Concept::Ca1,
    Concept::Ca2,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub concept: Concept,
    pub group: PlayerSet,
    /// The route that disagrees with the direct solver.
    pub route: &'static str,
    pub direct: Vec<ProfileIndex>,
    pub other: Vec<ProfileIndex>,
}

fn oracle(m: &PdModel, c: Concept, g: PlayerSet) -> Option<Vec<ProfileIndex>> {
    Some(match c {
        Concept::Nash => oracle_nash(m, g),
        Concept::WeakPareto => oracle_weak_pareto(m, g),
        Concept::StrongPareto => oracle_strong_pareto(m, g),
        Concept::Ca => oracle_ca(m, g).ok()?,
        Concept::Ca1 => oracle_ca1(m, g),
        Concept::Ca2 => oracle_ca2(m, g),
        Concept::ParetoGiven(_) => return None,
    })
}

/// Compares every route for every concept and every group of at most
/// `max_group` players. Returns the disagreements and the number of
/// comparisons made.
pub fn compare_solvers(m: &PdModel, max_group: usize) -> (Vec<Mismatch>, usize) {
    let mut out = Vec::new();
    let mut compared = 0;
    for g in m.vocab().all_players().subsets().filter(|g| g.len() <= max_group) {
        for c in CONCEPTS {
            let direct: Vec<_> = solve(m, c, g)
                .expect("groups come from the model")
                .solutions
                .ones()
                .collect();
            let mut record = |route: &'static str, other: Vec<ProfileIndex>| {
                compared += 1;
                if other != direct {
                    out.push(Mismatch {
                        concept: c,
                        group: g,
                        route,
                        direct: direct.clone(),
                        other,
                    });
                }
            };
            if c != Concept::Ca || g.len() <= MAX_CA_EXPANSION {
                let route = if c == Concept::Ca { "disjunction" } else { "formula" };
                record(route, formula_solution(m, c, g).expect("formula binds").ones().collect());
            }
            if let Some(o) = oracle(m, c, g) {
                record("oracle", o);
            }
        }
    }
    (out, compared)
}
