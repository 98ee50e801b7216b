//! Canonical printing. `parse(&f.to_string()) == Ok(f)` for every surface
//! formula built from non-keyword identifiers.
//!
//! The universal modality prints as `[...] φ` and its dual as `dia[...] φ`.

use std::fmt;

use super::{Formula, GroupExpr, MacroFormula, QueryExpr};
use crate::model::{GroupQuery, PlayerSet, Vocabulary};

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complement {
            f.write_str("-")?;
        }
        write!(f, "{{{}}}", self.members.join(","))
    }
}

impl fmt::Display for QueryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "={}; <={}; <{}", self.eq, self.weak, self.strict)
    }
}

fn chain(
    f: &mut fmt::Formatter<'_>,
    node: &MacroFormula,
    op: &str,
    split: fn(&MacroFormula) -> Option<(&MacroFormula, &MacroFormula)>,
) -> fmt::Result {
    let mut rights = Vec::new();
    let mut cur = node;
    while let Some((l, r)) = split(cur) {
        rights.push(r);
        cur = l;
    }
    write!(f, "({cur}")?;
    for r in rights.iter().rev() {
        write!(f, " {op} {r}")?;
    }
    f.write_str(")")
}

impl fmt::Display for MacroFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MacroFormula as M;
        match self {
            M::True => f.write_str("true"),
            M::False => f.write_str("false"),
            M::Atom { pred, args } => write!(f, "{pred}({})", args.join(",")),
            M::Not(g) => write!(f, "~{g}"),
            M::And(..) => chain(f, self, "&", |n| match n {
                M::And(a, b) => Some((a, b)),
                _ => None,
            }),
            M::Or(..) => chain(f, self, "|", |n| match n {
                M::Or(a, b) => Some((a, b)),
                _ => None,
            }),
            M::Implies(a, b) => write!(f, "({a} -> {b})"),
            M::Modal(q, g) => write!(f, "[{q}] {g}"),
            M::Dual(q, g) => write!(f, "dia[{q}] {g}"),
            M::Dep(q, y) => write!(f, "dep[{q}] {y}"),
            M::DepAll(q, ys) => write!(f, "dep[{q}] {ys}"),
            M::Pa(g) => write!(f, "pa({g})"),
            M::PaY(y, x) => write!(f, "paY({y};{x})"),
            M::Na(g) => write!(f, "na({g})"),
            M::Ca1(g) => write!(f, "ca1({g})"),
            M::Ca2(g) => write!(f, "ca2({g})"),
            M::Ca(g) => write!(f, "ca({g})"),
            M::D(g, y) => write!(f, "D({g}; {y})"),
            M::DD(g, body) => write!(f, "DD({g}) {body}"),
        }
    }
}

fn group_expr(v: &Vocabulary, g: PlayerSet) -> GroupExpr {
    GroupExpr::literal(v.group_names(g))
}

fn query_expr(v: &Vocabulary, q: &GroupQuery) -> QueryExpr {
    QueryExpr {
        eq: group_expr(v, q.eq),
        weak: group_expr(v, q.weak),
        strict: group_expr(v, q.strict),
    }
}

impl Formula {
    /// Surface form with `true`, `|`, `->` and `dia` restored. Binding the
    /// result gives back `self`.
    pub fn to_macro(&self, v: &Vocabulary) -> MacroFormula {
        use MacroFormula as M;
        if self.is_truth() {
            return M::True;
        }
        if let Some((a, b)) = self.as_disjunction() {
            // A dual antecedent reads better as `dia[...] φ -> ψ`.
            if self.as_implication().and_then(|(l, _)| l.as_dual()).is_none() {
                return M::or(a.to_macro(v), b.to_macro(v));
            }
        }
        if let Some((a, b)) = self.as_implication() {
            return M::implies(a.to_macro(v), b.to_macro(v));
        }
        if let Some((q, body)) = self.as_dual() {
            return M::Dual(query_expr(v, q), Box::new(body.to_macro(v)));
        }
        match self {
            Formula::False => M::False,
            Formula::Atom { pred, args } => M::Atom {
                pred: pred.clone(),
                args: args.iter().map(|&p| v.player_name(p).to_string()).collect(),
            },
            Formula::Not(g) => M::not(g.to_macro(v)),
            Formula::And(a, b) => M::and(a.to_macro(v), b.to_macro(v)),
            Formula::Modal(q, g) => M::Modal(query_expr(v, q), Box::new(g.to_macro(v))),
            Formula::Dep(q, y) => M::Dep(query_expr(v, q), v.player_name(*y).to_string()),
        }
    }

    pub fn display(&self, v: &Vocabulary) -> String {
        self.to_macro(v).to_string()
    }
}
