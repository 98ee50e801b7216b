use thiserror::Error;

use super::{ca1, ca2, nash, pareto, pareto_given, Formula, GroupExpr, MacroFormula, QueryExpr};
use crate::model::{GroupQuery, ModelError, Player, PlayerSet, Vocabulary};

/// Largest group whose collective-agency formula is expanded into an
/// explicit disjunction over covers. The number of covers grows doubly
/// exponentially; larger groups go through `analysis::ca`.
pub const MAX_CA_EXPANSION: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BindError {
    #[error(transparent)]
    Vocabulary(#[from] ModelError),
    #[error("predicate `{pred}` has arity {expected}, applied to {got} players")]
    Arity {
        pred: String,
        expected: usize,
        got: usize,
    },
    #[error("ca over {size} players is too large to expand (limit {max}); use the native solver")]
    CaTooLarge { size: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BindWarning {
    /// `ca({})` holds everywhere: the empty family covers the empty group.
    CaEmptyGroup,
    /// `ca({x})` holds nowhere: no family of proper subsets covers a singleton.
    CaSingleton(String),
}

impl std::fmt::Display for BindWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BindWarning::CaEmptyGroup => f.write_str("ca({}) is vacuously true"),
            BindWarning::CaSingleton(x) => {
                write!(f, "ca({{{x}}}) is unsatisfiable: a singleton has no cover by proper subsets")
            }
        }
    }
}

/// All covers of `group`: families of proper subsets (the empty set
/// included) whose union is `group`, in ascending order of the family's
/// bitmask over the proper subsets.
pub fn covers(group: PlayerSet) -> impl Iterator<Item = Vec<PlayerSet>> {
    let proper: Vec<PlayerSet> = group.proper_subsets().collect();
    assert!(proper.len() < 64, "cover enumeration limited to groups of at most 6 players");
    let families = 1u64 << proper.len();
    (0..families).filter_map(move |mask| {
        let family: Vec<PlayerSet> = (0..proper.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| proper[i])
            .collect();
        let union = family.iter().fold(PlayerSet::EMPTY, |acc, s| acc.union(*s));
        (union == group).then_some(family)
    })
}

struct Binder<'a> {
    vocab: &'a Vocabulary,
    warnings: Vec<BindWarning>,
}

impl Binder<'_> {
    fn group(&self, g: &GroupExpr) -> Result<PlayerSet, BindError> {
        let set = self.vocab.group(g.members.iter().map(String::as_str))?;
        Ok(if g.complement {
            self.vocab.complement(set)
        } else {
            set
        })
    }

    fn player(&self, name: &str) -> Result<Player, BindError> {
        Ok(self.vocab.player_index(name)?)
    }

    fn query(&self, q: &QueryExpr) -> Result<GroupQuery, BindError> {
        Ok(GroupQuery::new(
            self.group(&q.eq)?,
            self.group(&q.weak)?,
            self.group(&q.strict)?,
        ))
    }

    fn collective_agency(&mut self, group: PlayerSet) -> Result<Formula, BindError> {
        let all = self.vocab.all_players();
        match group.len() {
            0 => self.warnings.push(BindWarning::CaEmptyGroup),
            1 => self.warnings.push(BindWarning::CaSingleton(
                self.vocab.player_name(group.iter().next().unwrap()).to_string(),
            )),
            n if n > MAX_CA_EXPANSION => {
                return Err(BindError::CaTooLarge {
                    size: n,
                    max: MAX_CA_EXPANSION,
                })
            }
            _ => {}
        }
        let fixed = all.difference(group);
        let disjuncts = covers(group)
            .map(|family| {
                Formula::and(
                    nash(all, group),
                    Formula::conjunction(family.into_iter().map(|sub| pareto_given(fixed, sub))),
                )
            })
            .collect();
        Ok(Formula::balanced_disjunction(disjuncts))
    }

    fn bind(&mut self, f: &MacroFormula) -> Result<Formula, BindError> {
        use MacroFormula as M;
        let all = self.vocab.all_players();
        Ok(match f {
            M::True => Formula::truth(),
            M::False => Formula::False,
            M::Atom { pred, args } => {
                let expected = self.vocab.arity(pred)?;
                if expected != args.len() {
                    return Err(BindError::Arity {
                        pred: pred.clone(),
                        expected,
                        got: args.len(),
                    });
                }
                Formula::Atom {
                    pred: pred.clone(),
                    args: args.iter().map(|a| self.player(a)).collect::<Result<_, _>>()?,
                }
            }
            M::Not(g) => Formula::not(self.bind(g)?),
            M::And(a, b) => Formula::and(self.bind(a)?, self.bind(b)?),
            M::Or(a, b) => Formula::or(self.bind(a)?, self.bind(b)?),
            M::Implies(a, b) => Formula::implies(self.bind(a)?, self.bind(b)?),
            M::Modal(q, g) => Formula::modal(self.query(q)?, self.bind(g)?),
            M::Dual(q, g) => Formula::dual(self.query(q)?, self.bind(g)?),
            M::Dep(q, y) => Formula::Dep(self.query(q)?, self.player(y)?),
            M::DepAll(q, ys) => {
                let q = self.query(q)?;
                Formula::conjunction(self.group(ys)?.iter().map(|y| Formula::Dep(q, y)))
            }
            M::Pa(g) => pareto(all, self.group(g)?),
            M::PaY(y, x) => pareto_given(self.group(y)?, self.group(x)?),
            M::Na(g) => nash(all, self.group(g)?),
            M::Ca1(g) => ca1(all, self.group(g)?),
            M::Ca2(g) => ca2(all, self.group(g)?),
            M::Ca(g) => {
                let g = self.group(g)?;
                self.collective_agency(g)?
            }
            M::D(g, y) => Formula::Dep(GroupQuery::agreement(self.group(g)?), self.player(y)?),
            M::DD(g, body) => Formula::modal(GroupQuery::agreement(self.group(g)?), self.bind(body)?),
        })
    }
}

/// Resolves names against `vocab` and expands every macro.
pub fn bind(f: &MacroFormula, vocab: &Vocabulary) -> Result<Formula, BindError> {
    bind_with_warnings(f, vocab).map(|(f, _)| f)
}

pub fn bind_with_warnings(
    f: &MacroFormula,
    vocab: &Vocabulary,
) -> Result<(Formula, Vec<BindWarning>), BindError> {
    let mut b = Binder {
        vocab,
        warnings: Vec::new(),
    };
    let out = b.bind(f)?;
    Ok((out, b.warnings))
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn vocab() -> Vocabulary {
        Vocabulary::new(["x", "y", "z"])
            .unwrap()
            .with_predicate("P", 2)
            .unwrap()
    }

    fn b(text: &str) -> Formula {
        bind(&parse(text).unwrap(), &vocab()).unwrap()
    }

    #[test]
    fn na_singleton_is_a_single_box() {
        let v = vocab();
        let x = PlayerSet::singleton(0);
        let expected = Formula::modal(
            GroupQuery::new(v.complement(x), PlayerSet::EMPTY, x),
            Formula::False,
        );
        assert_eq!(b("na({x})"), expected);
        assert_eq!(b("pa({x})"), expected);
        assert_eq!(b("pa(-{y,z})"), expected);
    }

    #[test]
    fn dd_and_d_are_agreement_queries() {
        assert_eq!(
            b("DD({x,y}) P(x,z)"),
            b("[={x,y}; <={}; <{}] P(x,z)")
        );
        assert_eq!(b("D({x}; y)"), b("dep[={x}; <={}; <{}] y"));
        assert_eq!(
            b("dep[={x}; <={}; <{}] {y,z}"),
            b("(dep[={x}; <={}; <{}] y & dep[={x}; <={}; <{}] z)")
        );
        assert!(b("dep[={x}; <={}; <{}] {}").is_truth());
    }

    #[test]
    fn ca_edge_cases() {
        let (f, w) = bind_with_warnings(&parse("ca({x})").unwrap(), &vocab()).unwrap();
        assert_eq!(f, Formula::False);
        assert_eq!(w, vec![BindWarning::CaSingleton("x".into())]);
        let (f, w) = bind_with_warnings(&parse("ca({})").unwrap(), &vocab()).unwrap();
        assert_eq!(w, vec![BindWarning::CaEmptyGroup]);
        assert_eq!(f, Formula::and(Formula::truth(), Formula::truth()));
    }

    #[test]
    fn cover_counts() {
        // Covers of a 2-set by {∅,{a},{b}}: {a,b} with or without ∅.
        assert_eq!(covers(PlayerSet::from_iter([0, 1])).count(), 2);
        assert_eq!(covers(PlayerSet::singleton(0)).count(), 0);
        assert_eq!(covers(PlayerSet::EMPTY).count(), 1);
        for c in covers(PlayerSet::from_iter([0, 1, 2])) {
            assert!(c.iter().all(|s| s.len() < 3));
        }
    }

    #[test]
    fn ca_expansion_limit() {
        let v = Vocabulary::new(["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(
            bind(&parse("ca({a,b,c,d,e})").unwrap(), &v),
            Err(BindError::CaTooLarge { size: 5, max: 4 })
        );
    }

    #[test]
    fn bind_errors() {
        let v = vocab();
        assert!(matches!(
            bind(&parse("P(x)").unwrap(), &v),
            Err(BindError::Arity { .. })
        ));
        assert!(matches!(
            bind(&parse("Q(x)").unwrap(), &v),
            Err(BindError::Vocabulary(ModelError::UnknownPredicate(_)))
        ));
        assert!(matches!(
            bind(&parse("pa({w})").unwrap(), &v),
            Err(BindError::Vocabulary(ModelError::UnknownPlayer(_)))
        ));
    }

    #[test]
    fn bind_is_idempotent_on_core_formulas() {
        let v = vocab();
        for text in ["(P(x,y) -> dia[={x}; <={y}; <{z}] ~P(y,x))", "ca({x,y})", "ca2({x,y,z})"] {
            let f = b(text);
            assert_eq!(bind(&f.to_macro(&v), &v).unwrap(), f);
        }
    }
}
