//! Axiom schemata as patterns over formula, group and player metavariables.

use std::collections::BTreeMap;
use std::fmt;

use crate::formula::Formula;
use crate::model::{GroupQuery, Player, PlayerSet};

/// A group built from group and player metavariables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GExpr {
    Var(&'static str),
    Empty,
    Single(&'static str),
    Union(Box<GExpr>, Box<GExpr>),
    Diff(Box<GExpr>, Box<GExpr>),
}

impl GExpr {
    pub fn union(a: GExpr, b: GExpr) -> GExpr {
        GExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn diff(a: GExpr, b: GExpr) -> GExpr {
        GExpr::Diff(Box::new(a), Box::new(b))
    }

    /// Value under `s`, or the first unbound variable.
    pub fn eval(&self, s: &Subst) -> Result<PlayerSet, &'static str> {
        Ok(match self {
            GExpr::Var(v) => *s.groups.get(v).ok_or(*v)?,
            GExpr::Empty => PlayerSet::EMPTY,
            GExpr::Single(x) => PlayerSet::singleton(*s.players.get(x).ok_or(*x)?),
            GExpr::Union(a, b) => a.eval(s)?.union(b.eval(s)?),
            GExpr::Diff(a, b) => a.eval(s)?.difference(b.eval(s)?),
        })
    }

    fn vars(&self, out: &mut Vec<&'static str>) {
        match self {
            GExpr::Var(v) => push_new(out, v),
            GExpr::Empty | GExpr::Single(_) => {}
            GExpr::Union(a, b) | GExpr::Diff(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

impl fmt::Display for GExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GExpr::Var(v) => f.write_str(v),
            GExpr::Empty => f.write_str("∅"),
            GExpr::Single(x) => write!(f, "{{{x}}}"),
            GExpr::Union(a, b) => write!(f, "{a}∪{b}"),
            GExpr::Diff(a, b) => write!(f, "{a}−{b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPat {
    pub eq: GExpr,
    pub weak: GExpr,
    pub strict: GExpr,
}

impl QPat {
    pub fn new(eq: GExpr, weak: GExpr, strict: GExpr) -> Self {
        QPat { eq, weak, strict }
    }

    /// `(X, X', X'')`, the query most schemata range over.
    pub fn standard() -> Self {
        QPat::new(GExpr::Var("X"), GExpr::Var("X'"), GExpr::Var("X''"))
    }

    fn eval(&self, s: &Subst) -> Result<GroupQuery, &'static str> {
        Ok(GroupQuery::new(self.eq.eval(s)?, self.weak.eval(s)?, self.strict.eval(s)?))
    }
}

impl fmt::Display for QPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "={}, ⪯{}, ≺{}", self.eq, self.weak, self.strict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pat {
    Meta(&'static str),
    False,
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Box(QPat, Box<Pat>),
    Dep(QPat, &'static str),
    /// Left-associated conjunction of `body` for each player of `over`, in
    /// ascending order; `true` when empty.
    BigAnd {
        over: GExpr,
        var: &'static str,
        body: Box<Pat>,
    },
    /// As [`Pat::BigAnd`] for disjunction; `false` when empty.
    BigOr {
        over: GExpr,
        var: &'static str,
        body: Box<Pat>,
    },
}

impl Pat {
    pub fn meta(name: &'static str) -> Pat {
        Pat::Meta(name)
    }

    pub fn not(p: Pat) -> Pat {
        Pat::Not(Box::new(p))
    }

    pub fn and(a: Pat, b: Pat) -> Pat {
        Pat::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Pat, b: Pat) -> Pat {
        Pat::not(Pat::and(a, Pat::not(b)))
    }

    pub fn or(a: Pat, b: Pat) -> Pat {
        Pat::not(Pat::and(Pat::not(a), Pat::not(b)))
    }

    pub fn boxed(q: QPat, body: Pat) -> Pat {
        Pat::Box(q, Box::new(body))
    }

    pub fn dual(q: QPat, body: Pat) -> Pat {
        Pat::not(Pat::boxed(q, Pat::not(body)))
    }

    /// `[q] Y`: the conjunction of `[q] y` over `y ∈ Y`.
    pub fn dep_all(q: QPat, over: GExpr) -> Pat {
        Pat::BigAnd {
            over,
            var: "y",
            body: Box::new(Pat::Dep(q, "y")),
        }
    }

    pub fn big_or(over: GExpr, var: &'static str, body: Pat) -> Pat {
        Pat::BigOr {
            over,
            var,
            body: Box::new(body),
        }
    }
}

fn push_new(out: &mut Vec<&'static str>, v: &'static str) {
    if !out.contains(&v) {
        out.push(v);
    }
}

/// A side condition on a substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Subset(GExpr, GExpr),
    Member(&'static str, GExpr),
    /// Every player the formula's truth depends on lies in the group, with
    /// preference modalities depending on all players.
    Supported(&'static str, GExpr),
    /// The same with the syntactic `Free` set, which ignores preference
    /// groups. Not sound; kept to exhibit the difference.
    FreeWithin(&'static str, GExpr),
}

impl Cond {
    pub fn holds(&self, s: &Subst, all: PlayerSet) -> Result<bool, &'static str> {
        Ok(match self {
            Cond::Subset(a, b) => a.eval(s)?.is_subset(b.eval(s)?),
            Cond::Member(x, g) => g.eval(s)?.contains(*s.players.get(x).ok_or(*x)?),
            Cond::Supported(m, g) => s.formulas.get(m).ok_or(*m)?.support(all).is_subset(g.eval(s)?),
            Cond::FreeWithin(m, g) => s.formulas.get(m).ok_or(*m)?.free().is_subset(g.eval(s)?),
        })
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cond::Subset(a, b) => write!(f, "{a} ⊆ {b}"),
            Cond::Member(x, g) => write!(f, "{x} ∈ {g}"),
            Cond::Supported(m, g) => write!(f, "Support({m}) ⊆ {g}"),
            Cond::FreeWithin(m, g) => write!(f, "Free({m}) ⊆ {g}"),
        }
    }
}

/// Values for the metavariables of a schema.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst {
    pub groups: BTreeMap<&'static str, PlayerSet>,
    pub players: BTreeMap<&'static str, Player>,
    pub formulas: BTreeMap<&'static str, Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: &'static str,
    pub pattern: Pat,
    pub conditions: Vec<Cond>,
}

/// Metavariables of a schema, in order of first occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetaVars {
    pub groups: Vec<&'static str>,
    /// Player variables not bound by a big conjunction or disjunction.
    pub players: Vec<&'static str>,
    pub formulas: Vec<&'static str>,
}

impl AxiomSchema {
    pub fn new(name: &'static str, pattern: Pat, conditions: Vec<Cond>) -> Self {
        AxiomSchema {
            name,
            pattern,
            conditions,
        }
    }

    pub fn metavars(&self) -> MetaVars {
        fn q(qp: &QPat, mv: &mut MetaVars, bound: &[&'static str]) {
            for g in [&qp.eq, &qp.weak, &qp.strict] {
                g_vars(g, mv, bound);
            }
        }
        fn g_vars(g: &GExpr, mv: &mut MetaVars, bound: &[&'static str]) {
            g.vars(&mut mv.groups);
            if let GExpr::Single(x) = g {
                if !bound.contains(x) {
                    push_new(&mut mv.players, x);
                }
            }
            if let GExpr::Union(a, b) | GExpr::Diff(a, b) = g {
                g_vars(a, mv, bound);
                g_vars(b, mv, bound);
            }
        }
        fn walk(p: &Pat, mv: &mut MetaVars, bound: &mut Vec<&'static str>) {
            match p {
                Pat::Meta(m) => push_new(&mut mv.formulas, m),
                Pat::False => {}
                Pat::Not(a) => walk(a, mv, bound),
                Pat::And(a, b) => {
                    walk(a, mv, bound);
                    walk(b, mv, bound);
                }
                Pat::Box(qp, a) => {
                    q(qp, mv, bound);
                    walk(a, mv, bound);
                }
                Pat::Dep(qp, y) => {
                    q(qp, mv, bound);
                    if !bound.contains(y) {
                        push_new(&mut mv.players, y);
                    }
                }
                Pat::BigAnd { over, var, body } | Pat::BigOr { over, var, body } => {
                    g_vars(over, mv, bound);
                    bound.push(var);
                    walk(body, mv, bound);
                    bound.pop();
                }
            }
        }
        let mut mv = MetaVars::default();
        walk(&self.pattern, &mut mv, &mut Vec::new());
        for c in &self.conditions {
            match c {
                Cond::Subset(a, b) => {
                    a.vars(&mut mv.groups);
                    b.vars(&mut mv.groups);
                }
                Cond::Member(x, g) => {
                    push_new(&mut mv.players, x);
                    g.vars(&mut mv.groups);
                }
                Cond::Supported(m, g) | Cond::FreeWithin(m, g) => {
                    push_new(&mut mv.formulas, m);
                    g.vars(&mut mv.groups);
                }
            }
        }
        mv
    }

    /// The instance under `s`, or the first unbound metavariable.
    pub fn instantiate(&self, s: &Subst) -> Result<Formula, &'static str> {
        instantiate(&self.pattern, &mut s.clone())
    }

    /// Checks every side condition; returns the first that fails.
    pub fn check_conditions(&self, s: &Subst, all: PlayerSet) -> Result<Option<&Cond>, &'static str> {
        for c in &self.conditions {
            if !c.holds(s, all)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

fn instantiate(p: &Pat, s: &mut Subst) -> Result<Formula, &'static str> {
    Ok(match p {
        Pat::Meta(m) => s.formulas.get(m).ok_or(*m)?.clone(),
        Pat::False => Formula::False,
        Pat::Not(a) => Formula::not(instantiate(a, s)?),
        Pat::And(a, b) => Formula::and(instantiate(a, s)?, instantiate(b, s)?),
        Pat::Box(q, a) => Formula::modal(q.eval(s)?, instantiate(a, s)?),
        Pat::Dep(q, y) => Formula::Dep(q.eval(s)?, *s.players.get(y).ok_or(*y)?),
        Pat::BigAnd { over, var, body } | Pat::BigOr { over, var, body } => {
            let set = over.eval(s)?;
            let saved = s.players.get(var).copied();
            let mut items = Vec::with_capacity(set.len());
            for x in set.iter() {
                s.players.insert(var, x);
                items.push(instantiate(body, s)?);
            }
            restore(s, var, saved);
            if matches!(p, Pat::BigAnd { .. }) {
                Formula::conjunction(items)
            } else {
                Formula::disjunction(items)
            }
        }
    })
}

fn restore(s: &mut Subst, var: &'static str, saved: Option<Player>) {
    match saved {
        Some(x) => s.players.insert(var, x),
        None => s.players.remove(var),
    };
}

/// Structural matching. `Err(v)` means the group variable `v` must be
/// fixed before this pattern can be decided.
pub(crate) fn match_pat(p: &Pat, f: &Formula, s: &mut Subst) -> Result<bool, &'static str> {
    Ok(match (p, f) {
        (Pat::Meta(m), _) => match s.formulas.get(m) {
            Some(bound) => bound == f,
            None => {
                s.formulas.insert(m, f.clone());
                true
            }
        },
        (Pat::False, Formula::False) => true,
        (Pat::Not(a), Formula::Not(g)) => match_pat(a, g, s)?,
        (Pat::And(a, b), Formula::And(x, y)) => match_pat(a, x, s)? && match_pat(b, y, s)?,
        (Pat::Box(qp, a), Formula::Modal(q, g)) => match_query(qp, q, s)? && match_pat(a, g, s)?,
        (Pat::Dep(qp, yv), Formula::Dep(q, y)) => match_query(qp, q, s)? && match_player(yv, *y, s),
        (Pat::BigAnd { over, var, body }, _) | (Pat::BigOr { over, var, body }, _) => {
            let set = over.eval(s)?;
            let conj = matches!(p, Pat::BigAnd { .. });
            let Some(items) = split_chain(f, set.len(), conj) else {
                return Ok(false);
            };
            let saved = s.players.get(var).copied();
            let mut ok = true;
            for (x, item) in set.iter().zip(items) {
                s.players.insert(var, x);
                if !match_pat(body, item, s)? {
                    ok = false;
                    break;
                }
            }
            restore(s, var, saved);
            ok
        }
        _ => false,
    })
}

fn match_player(v: &'static str, y: Player, s: &mut Subst) -> bool {
    match s.players.get(v) {
        Some(&bound) => bound == y,
        None => {
            s.players.insert(v, y);
            true
        }
    }
}

fn match_query(qp: &QPat, q: &GroupQuery, s: &mut Subst) -> Result<bool, &'static str> {
    Ok(match_group(&qp.eq, q.eq, s)?
        && match_group(&qp.weak, q.weak, s)?
        && match_group(&qp.strict, q.strict, s)?)
}

fn match_group(g: &GExpr, set: PlayerSet, s: &mut Subst) -> Result<bool, &'static str> {
    if let GExpr::Var(v) = g {
        if !s.groups.contains_key(v) {
            s.groups.insert(v, set);
            return Ok(true);
        }
    }
    Ok(g.eval(s)? == set)
}

/// Splits a left-associated chain of `n` conjuncts or disjuncts.
fn split_chain(f: &Formula, n: usize, conj: bool) -> Option<Vec<&Formula>> {
    match n {
        0 => {
            let empty = if conj { f.is_truth() } else { *f == Formula::False };
            empty.then(Vec::new)
        }
        1 => Some(vec![f]),
        _ => {
            let (l, r) = if conj {
                match f {
                    Formula::And(l, r) => (&**l, &**r),
                    _ => return None,
                }
            } else {
                f.as_disjunction()?
            };
            let mut items = split_chain(l, n - 1, conj)?;
            items.push(r);
            Some(items)
        }
    }
}
