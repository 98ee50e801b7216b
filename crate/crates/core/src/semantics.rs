//! Truth of bound formulas at strategy profiles.
//!
//! Evaluation works on extensions: each subformula is mapped to the set of
//! profiles where it holds, so one pass answers the question for every
//! profile at once. Atoms, modalities and dependence atoms are memoized
//! per call, which keeps the large cover disjunctions of `ca` cheap.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::formula::Formula;
use crate::model::{GroupQuery, ModelError, PdModel, ProfileIndex, ProfileSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("formula applies `{pred}` to {got} players but its arity is {expected}")]
    Arity {
        pred: String,
        expected: usize,
        got: usize,
    },
}

/// Truth value at one profile, with a witness profile for the outermost
/// operator where one makes sense: a reachable counterexample for a false
/// modality or dependence atom, a reachable example for a true dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalResult {
    pub value: bool,
    pub witness: Option<ProfileIndex>,
}

/// Checks that every player, group and predicate in `f` exists in `m`.
pub fn check_bound(m: &PdModel, f: &Formula) -> Result<(), EvalError> {
    m.vocab().check_group(f.players())?;
    check_atoms(m, f)
}

fn check_atoms(m: &PdModel, f: &Formula) -> Result<(), EvalError> {
    match f {
        Formula::Atom { pred, args } => {
            let expected = m.vocab().arity(pred)?;
            if expected != args.len() {
                return Err(EvalError::Arity {
                    pred: pred.clone(),
                    expected,
                    got: args.len(),
                });
            }
            Ok(())
        }
        Formula::Not(g) | Formula::Modal(_, g) => check_atoms(m, g),
        Formula::And(a, b) => {
            check_atoms(m, a)?;
            check_atoms(m, b)
        }
        Formula::False | Formula::Dep(..) => Ok(()),
    }
}

/// Evaluator bound to one model. Reach sets are cached across calls.
pub struct Evaluator<'m> {
    model: &'m PdModel,
    reach: HashMap<GroupQuery, Vec<ProfileSet>>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m PdModel) -> Self {
        Evaluator {
            model,
            reach: HashMap::new(),
        }
    }

    pub fn model(&self) -> &'m PdModel {
        self.model
    }

    /// Reach sets of every profile under `q`.
    pub fn reach_rows(&mut self, q: &GroupQuery) -> &[ProfileSet] {
        let m = self.model;
        self.reach
            .entry(*q)
            .or_insert_with(|| m.profiles().map(|s| m.reach(s, q)).collect())
    }

    /// The set of profiles where `f` holds.
    pub fn extension(&mut self, f: &Formula) -> Result<ProfileSet, EvalError> {
        check_bound(self.model, f)?;
        let mut memo = HashMap::new();
        Ok(self.ext(f, &mut memo))
    }

    fn empty(&self) -> ProfileSet {
        FixedBitSet::with_capacity(self.model.profile_count())
    }

    fn ext<'f>(&mut self, f: &'f Formula, memo: &mut HashMap<&'f Formula, ProfileSet>) -> ProfileSet {
        match f {
            Formula::False => self.empty(),
            Formula::Not(g) => {
                let mut out = self.ext(g, memo);
                out.toggle_range(..);
                out
            }
            Formula::And(a, b) => {
                let mut out = self.ext(a, memo);
                if out.is_clear() {
                    return out;
                }
                out.intersect_with(&self.ext(b, memo));
                out
            }
            _ => {
                if let Some(hit) = memo.get(f) {
                    return hit.clone();
                }
                let out = self.leaf(f, memo);
                memo.insert(f, out.clone());
                out
            }
        }
    }

    fn leaf<'f>(&mut self, f: &'f Formula, memo: &mut HashMap<&'f Formula, ProfileSet>) -> ProfileSet {
        let m = self.model;
        let mut out = self.empty();
        match f {
            Formula::Atom { pred, args } => {
                if let Some(ext) = m.interpretation(pred) {
                    for s in m.profiles() {
                        let a = m.assignment(s);
                        let tuple: Vec<_> = args.iter().map(|&x| a[x]).collect();
                        if ext.contains(&tuple) {
                            out.insert(s);
                        }
                    }
                }
            }
            Formula::Modal(q, body) => {
                let body = self.ext(body, memo);
                let rows = self.reach_rows(q);
                for (s, row) in rows.iter().enumerate() {
                    if row.is_subset(&body) {
                        out.insert(s);
                    }
                }
            }
            Formula::Dep(q, y) => {
                let y = *y;
                let rows = self.reach_rows(q);
                for (s, row) in rows.iter().enumerate() {
                    let own = m.assignment(s)[y];
                    if row.ones().all(|t| m.assignment(t)[y] == own) {
                        out.insert(s);
                    }
                }
            }
            Formula::False | Formula::Not(_) | Formula::And(..) => unreachable!(),
        }
        out
    }

    pub fn eval(&mut self, s: ProfileIndex, f: &Formula) -> Result<EvalResult, EvalError> {
        let m = self.model;
        if s >= m.profile_count() {
            return Err(ModelError::ProfileOutOfRange(s).into());
        }
        let value = self.extension(f)?.contains(s);
        let witness = if let Some((q, body)) = f.as_dual() {
            if value {
                let body = self.extension(body)?;
                self.reach_rows(q)[s].ones().find(|&t| body.contains(t))
            } else {
                None
            }
        } else {
            match f {
                Formula::Modal(q, body) if !value => {
                    let body = self.extension(body)?;
                    self.reach_rows(q)[s].ones().find(|&t| !body.contains(t))
                }
                Formula::Dep(q, y) if !value => {
                    let own = m.assignment(s)[*y];
                    self.reach_rows(q)[s]
                        .ones()
                        .find(|&t| m.assignment(t)[*y] != own)
                }
                _ => None,
            }
        };
        Ok(EvalResult { value, witness })
    }
}

pub fn eval(m: &PdModel, s: ProfileIndex, f: &Formula) -> Result<EvalResult, EvalError> {
    Evaluator::new(m).eval(s, f)
}

/// Truth at every profile, as the set of profiles where `f` holds.
pub fn eval_all(m: &PdModel, f: &Formula) -> Result<ProfileSet, EvalError> {
    Evaluator::new(m).extension(f)
}

/// True iff `f` holds at every profile of `m`.
pub fn valid(m: &PdModel, f: &Formula) -> Result<bool, EvalError> {
    let ext = eval_all(m, f)?;
    Ok(ext.count_ones(..) == m.profile_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::formula::{bind, parse};

    fn f(m: &PdModel, text: &str) -> Formula {
        bind(&parse(text).unwrap(), m.vocab()).unwrap()
    }

    fn holds_at(m: &PdModel, s: &str, text: &str) -> bool {
        eval(m, m.profile_index(s).unwrap(), &f(m, text)).unwrap().value
    }

    fn labels(m: &PdModel, set: &ProfileSet) -> Vec<String> {
        set.ones().map(|s| m.label(s).to_string()).collect()
    }

    #[test]
    fn rock_jazz_facts() {
        let m = fixtures::rock_jazz();
        let both = "([={E}; <={}; <{A}] false & [={A}; <={}; <{E}] false)";
        assert!(holds_at(&m, "RR", both));
        assert!(holds_at(&m, "JJ", both));
        assert!(holds_at(&m, "JJ", "[={}; <={}; <{E,A}] false"));
        assert!(!holds_at(&m, "RR", "[={}; <={}; <{E,A}] false"));
    }

    #[test]
    fn nash_extension() {
        let m = fixtures::rock_jazz();
        assert_eq!(labels(&m, &eval_all(&m, &f(&m, "na({E,A})")).unwrap()), ["RR", "JJ"]);
        assert_eq!(eval_all(&m, &Formula::truth()).unwrap().count_ones(..), 4);
    }

    #[test]
    fn global_modality_quantifies_over_all_profiles() {
        let m = fixtures::rock_jazz();
        // P holds exactly where Eve goes to the jazz club.
        assert!(!holds_at(&m, "JJ", "[={}; <={}; <{}] P(E)"));
        assert!(holds_at(&m, "JJ", "[={E}; <={}; <{}] P(E)"));
        assert!(holds_at(&m, "RR", "[={}; <={}; <{}] (P(E) | ~P(E))"));
    }

    #[test]
    fn prisoners_dilemma_claims() {
        let m = fixtures::prisoners_dilemma();
        assert!(holds_at(&m, "coop,coop", "pa({1,2})"));
        assert!(!holds_at(&m, "coop,coop", "pa({1})"));
        assert!(!holds_at(&m, "coop,coop", "pa({2})"));
        let m3 = fixtures::prisoners_dilemma_3();
        let ext = eval_all(&m3, &f(&m3, "(pa({1,2,3}) & na({1,2,3}))")).unwrap();
        assert_eq!(labels(&m3, &ext), ["conf,conf,observe"]);
    }

    #[test]
    fn witnesses() {
        let m = fixtures::rock_jazz();
        let r = eval(&m, 0, &f(&m, "[={}; <={}; <{E,A}] false")).unwrap();
        assert_eq!(r, EvalResult { value: false, witness: Some(3) });
        let r = eval(&m, 0, &f(&m, "dia[={}; <={}; <{E}] true")).unwrap();
        assert_eq!(r, EvalResult { value: true, witness: Some(3) });
        let r = eval(&m, 0, &f(&m, "dep[={}; <={}; <{}] E")).unwrap();
        assert_eq!(r, EvalResult { value: false, witness: Some(2) });
        let r = eval(&m, 0, &f(&m, "dep[={E}; <={}; <{}] E")).unwrap();
        assert_eq!(r, EvalResult { value: true, witness: None });
    }

    #[test]
    fn validity() {
        let m = fixtures::rock_jazz();
        assert!(valid(&m, &f(&m, "([={E}; <={A}; <{}] P(E) -> P(E))")).unwrap());
        assert!(valid(&m, &f(&m, "dep[={E}; <={}; <{}] E")).unwrap());
        assert!(!valid(&m, &f(&m, "P(E)")).unwrap());
    }

    #[test]
    fn foreign_inputs_rejected() {
        let m = fixtures::rock_jazz();
        assert!(matches!(eval(&m, 7, &Formula::False), Err(EvalError::Model(_))));
        let bad = Formula::Atom {
            pred: "P".into(),
            args: vec![0, 1],
        };
        assert!(matches!(eval_all(&m, &bad), Err(EvalError::Arity { .. })));
        let bad = Formula::Dep(GroupQuery::default(), 9);
        assert!(eval_all(&m, &bad).is_err());
    }
}
