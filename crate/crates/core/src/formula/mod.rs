//! Formulas: the bound core language, the surface language with macros,
//! and the translation between them.
//!
//! The core language has atoms, `false`, negation, conjunction, the
//! universal modality `[=X; <=X'; <X''] φ` and the dependence atom
//! `dep[=X; <=X'; <X''] y`. Everything else (disjunction, implication, the
//! dual modality and the game-theoretic operators) is surface syntax that
//! [`bind`] expands.

mod bind;
mod parse;
mod print;

use crate::model::{GroupQuery, Player, PlayerSet};

pub use bind::{bind, bind_with_warnings, covers, BindError, BindWarning, MAX_CA_EXPANSION};
pub use parse::{parse, ParseError};

/// A formula over a fixed vocabulary, with players resolved to indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    False,
    Atom { pred: String, args: Vec<Player> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Holds at `s` iff the body holds at every profile reachable under the query.
    Modal(GroupQuery, Box<Formula>),
    /// Holds at `s` iff every reachable profile agrees with `s` on the player.
    Dep(GroupQuery, Player),
}

impl Formula {
    pub fn truth() -> Formula {
        Formula::Not(Box::new(Formula::False))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// `¬(¬a ∧ ¬b)`
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `¬(a ∧ ¬b)`
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    pub fn modal(q: GroupQuery, body: Formula) -> Formula {
        Formula::Modal(q, Box::new(body))
    }

    /// The existential dual `¬[q]¬φ`.
    pub fn dual(q: GroupQuery, body: Formula) -> Formula {
        Formula::not(Formula::modal(q, Formula::not(body)))
    }

    /// Left-associated conjunction; the empty conjunction is `true`.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::truth)
    }

    /// Left-associated disjunction; the empty disjunction is `false`.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::False)
    }

    /// Disjunction as a balanced tree, for very long lists.
    pub fn balanced_disjunction(mut items: Vec<Formula>) -> Formula {
        match items.len() {
            0 => Formula::False,
            1 => items.pop().unwrap(),
            n => {
                let right = items.split_off(n / 2);
                Formula::or(
                    Formula::balanced_disjunction(items),
                    Formula::balanced_disjunction(right),
                )
            }
        }
    }

    pub fn is_truth(&self) -> bool {
        matches!(self, Formula::Not(inner) if **inner == Formula::False)
    }

    /// Splits `¬(a ∧ ¬b)`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match &**inner {
                Formula::And(a, nb) => match &**nb {
                    Formula::Not(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Splits `¬(¬a ∧ ¬b)`.
    pub fn as_disjunction(&self) -> Option<(&Formula, &Formula)> {
        let (na, b) = self.as_implication()?;
        match na {
            Formula::Not(a) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits `¬[q]¬φ`.
    pub fn as_dual(&self) -> Option<(&GroupQuery, &Formula)> {
        match self {
            Formula::Not(inner) => match &**inner {
                Formula::Modal(q, nb) => match &**nb {
                    Formula::Not(b) => Some((q, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Players whose actions the truth of the formula is taken to depend on:
    /// atom arguments, and the agreement group of each modality and
    /// dependence atom.
    pub fn free(&self) -> PlayerSet {
        match self {
            Formula::False => PlayerSet::EMPTY,
            Formula::Atom { args, .. } => args.iter().copied().collect(),
            Formula::Not(f) => f.free(),
            Formula::And(a, b) => a.free().union(b.free()),
            Formula::Modal(q, _) | Formula::Dep(q, _) => q.eq,
        }
    }

    /// Players whose actions actually determine truth at a profile. Unlike
    /// [`Formula::free`], a modality or dependence atom with a non-empty
    /// preference group depends on the whole profile, so it contributes
    /// every player.
    pub fn support(&self, all: PlayerSet) -> PlayerSet {
        match self {
            Formula::False => PlayerSet::EMPTY,
            Formula::Atom { args, .. } => args.iter().copied().collect(),
            Formula::Not(f) => f.support(all),
            Formula::And(a, b) => a.support(all).union(b.support(all)),
            Formula::Modal(q, _) | Formula::Dep(q, _) => {
                if q.weak.is_empty() && q.strict.is_empty() {
                    q.eq
                } else {
                    all
                }
            }
        }
    }

    /// Every player index mentioned anywhere in the formula.
    pub fn players(&self) -> PlayerSet {
        match self {
            Formula::False => PlayerSet::EMPTY,
            Formula::Atom { args, .. } => args.iter().copied().collect(),
            Formula::Not(f) => f.players(),
            Formula::And(a, b) => a.players().union(b.players()),
            Formula::Modal(q, f) => q.mentioned().union(f.players()),
            Formula::Dep(q, y) => q.mentioned().with(*y),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::False | Formula::Atom { .. } | Formula::Dep(..) => 1,
            Formula::Not(f) | Formula::Modal(_, f) => 1 + f.size(),
            Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// `∧_{x∈X} [=Y; <=X−{x}; <{x}] ⊥`: no profile fixing `Y` is weakly better
/// for all of `X` and strictly better for some member.
pub fn pareto_given(fixed: PlayerSet, group: PlayerSet) -> Formula {
    Formula::conjunction(group.iter().map(|x| {
        Formula::modal(
            GroupQuery::new(fixed, group.without(x), PlayerSet::singleton(x)),
            Formula::False,
        )
    }))
}

/// Strong Pareto optimality for `group`, with `V ∖ group` fixed.
pub fn pareto(all: PlayerSet, group: PlayerSet) -> Formula {
    pareto_given(all.difference(group), group)
}

/// Nash equilibrium for `group`: each member is Pareto optimal alone.
pub fn nash(all: PlayerSet, group: PlayerSet) -> Formula {
    Formula::conjunction(group.iter().map(|x| pareto(all, PlayerSet::singleton(x))))
}

/// Weak Pareto optimality: `[=V−X; <={}; <X] ⊥`.
pub fn weak_pareto(all: PlayerSet, group: PlayerSet) -> Formula {
    Formula::modal(
        GroupQuery::new(all.difference(group), PlayerSet::EMPTY, group),
        Formula::False,
    )
}

/// Pareto optimal Nash equilibrium.
pub fn ca1(all: PlayerSet, group: PlayerSet) -> Formula {
    Formula::and(pareto(all, group), nash(all, group))
}

/// Pareto optimality of every subgroup, the group itself included.
pub fn ca2(all: PlayerSet, group: PlayerSet) -> Formula {
    Formula::conjunction(group.subsets().map(|sub| pareto(all, sub)))
}

/// A group of players as written: a literal set or the complement of one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupExpr {
    pub complement: bool,
    pub members: Vec<String>,
}

impl GroupExpr {
    pub fn literal<S: Into<String>>(members: impl IntoIterator<Item = S>) -> Self {
        GroupExpr {
            complement: false,
            members: members.into_iter().map(Into::into).collect(),
        }
    }

    pub fn complement_of<S: Into<String>>(members: impl IntoIterator<Item = S>) -> Self {
        GroupExpr {
            complement: true,
            ..GroupExpr::literal(members)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QueryExpr {
    pub eq: GroupExpr,
    pub weak: GroupExpr,
    pub strict: GroupExpr,
}

/// Surface syntax: the core connectives plus sugar and macros, with players
/// still given by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MacroFormula {
    True,
    False,
    Atom { pred: String, args: Vec<String> },
    Not(Box<MacroFormula>),
    And(Box<MacroFormula>, Box<MacroFormula>),
    Or(Box<MacroFormula>, Box<MacroFormula>),
    Implies(Box<MacroFormula>, Box<MacroFormula>),
    Modal(QueryExpr, Box<MacroFormula>),
    Dual(QueryExpr, Box<MacroFormula>),
    Dep(QueryExpr, String),
    /// Conjunction of dependence atoms over a group of targets.
    DepAll(QueryExpr, GroupExpr),
    Pa(GroupExpr),
    /// `PaY(Y, X)`: Pareto optimality of `X` with `Y` fixed.
    PaY(GroupExpr, GroupExpr),
    Na(GroupExpr),
    Ca1(GroupExpr),
    Ca2(GroupExpr),
    Ca(GroupExpr),
    D(GroupExpr, String),
    DD(GroupExpr, Box<MacroFormula>),
}

impl MacroFormula {
    pub fn not(f: MacroFormula) -> Self {
        MacroFormula::Not(Box::new(f))
    }

    pub fn and(a: MacroFormula, b: MacroFormula) -> Self {
        MacroFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: MacroFormula, b: MacroFormula) -> Self {
        MacroFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: MacroFormula, b: MacroFormula) -> Self {
        MacroFormula::Implies(Box::new(a), Box::new(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> PlayerSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn free_of_atoms_and_modalities() {
        let pxy = Formula::Atom {
            pred: "P".into(),
            args: vec![0, 1],
        };
        assert_eq!(pxy.free(), set(&[0, 1]));
        let boxed = Formula::modal(
            GroupQuery::new(set(&[0]), set(&[1]), PlayerSet::EMPTY),
            Formula::Atom {
                pred: "P".into(),
                args: vec![1],
            },
        );
        assert_eq!(boxed.free(), set(&[0]));
        let nn = Formula::not(Formula::not(Formula::Atom {
            pred: "P".into(),
            args: vec![0],
        }));
        assert_eq!(nn.free(), set(&[0]));
        assert_eq!(Formula::Dep(GroupQuery::agreement(set(&[2])), 0).free(), set(&[2]));
    }

    #[test]
    fn support_widens_preference_modalities() {
        let all = set(&[0, 1, 2]);
        let pref = Formula::modal(
            GroupQuery::new(set(&[0]), set(&[1]), PlayerSet::EMPTY),
            Formula::False,
        );
        assert_eq!(pref.support(all), all);
        let plain = Formula::modal(GroupQuery::agreement(set(&[0])), Formula::False);
        assert_eq!(plain.support(all), set(&[0]));
    }

    #[test]
    fn sugar_shapes_are_recognised() {
        let a = Formula::Atom {
            pred: "A".into(),
            args: vec![],
        };
        let b = Formula::False;
        let imp = Formula::implies(a.clone(), b.clone());
        assert_eq!(imp.as_implication(), Some((&a, &b)));
        let or = Formula::or(a.clone(), b.clone());
        assert_eq!(or.as_disjunction(), Some((&a, &b)));
        let d = Formula::dual(GroupQuery::default(), a.clone());
        assert_eq!(d.as_dual(), Some((&GroupQuery::default(), &a)));
        assert!(Formula::conjunction([]).is_truth());
        assert_eq!(Formula::disjunction([]), Formula::False);
    }

    #[test]
    fn nash_and_pareto_agree_on_singletons() {
        let all = set(&[0, 1, 2]);
        for x in 0..3 {
            assert_eq!(nash(all, set(&[x])), pareto(all, set(&[x])));
        }
        assert!(pareto(all, PlayerSet::EMPTY).is_truth());
    }

    #[test]
    fn ca2_mentions_every_subgroup() {
        let all = set(&[0, 1, 2]);
        let x = set(&[0, 1]);
        let f = ca2(all, x);
        // pa(∅) = true, pa({0}), pa({1}) have one box each, pa({0,1}) has two.
        fn boxes(f: &Formula) -> usize {
            match f {
                Formula::Modal(..) => 1,
                Formula::Not(g) => boxes(g),
                Formula::And(a, b) => boxes(a) + boxes(b),
                _ => 0,
            }
        }
        assert_eq!(boxes(&f), 4);
        assert_eq!(boxes(&ca1(all, x)), 4);
    }
}
