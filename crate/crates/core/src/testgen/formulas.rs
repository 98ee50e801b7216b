use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Formula, GroupExpr, MacroFormula, QueryExpr};
use crate::model::{GroupQuery, PlayerSet, Vocabulary};

fn random_group<R: Rng>(rng: &mut R, all: PlayerSet) -> PlayerSet {
    all.iter().filter(|_| rng.gen_bool(0.4)).collect()
}

fn random_query<R: Rng>(rng: &mut R, all: PlayerSet) -> GroupQuery {
    GroupQuery::new(
        random_group(rng, all),
        random_group(rng, all),
        random_group(rng, all),
    )
}

/// A random core formula over `vocab` with at most `depth` nested
/// connectives.
pub fn random_formula<R: Rng>(rng: &mut R, vocab: &Vocabulary, depth: usize) -> Formula {
    let n = vocab.player_count();
    let all = vocab.all_players();
    let preds: Vec<(&String, &usize)> = vocab.predicates().iter().collect();
    let leaf = |rng: &mut R| -> Formula {
        match rng.gen_range(0..4) {
            0 => Formula::False,
            1 => Formula::Dep(random_query(rng, all), rng.gen_range(0..n)),
            _ if !preds.is_empty() => {
                let (pred, &arity) = *preds.choose(rng).unwrap();
                Formula::Atom {
                    pred: pred.clone(),
                    args: (0..arity).map(|_| rng.gen_range(0..n)).collect(),
                }
            }
            _ => Formula::truth(),
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..5) {
        0 => leaf(rng),
        1 => Formula::not(random_formula(rng, vocab, depth - 1)),
        2 => Formula::and(
            random_formula(rng, vocab, depth - 1),
            random_formula(rng, vocab, depth - 1),
        ),
        _ => Formula::modal(random_query(rng, all), random_formula(rng, vocab, depth - 1)),
    }
}

const NAMES: [&str; 5] = ["a", "b", "c", "x1", "y'"];
const PREDS: [&str; 3] = ["P", "Q", "R2"];

fn name<R: Rng>(rng: &mut R) -> String {
    NAMES.choose(rng).unwrap().to_string()
}

fn group_expr<R: Rng>(rng: &mut R) -> GroupExpr {
    let members: Vec<&str> = NAMES.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
    if rng.gen_bool(0.2) {
        GroupExpr::complement_of(members)
    } else {
        GroupExpr::literal(members)
    }
}

fn query_expr<R: Rng>(rng: &mut R) -> QueryExpr {
    QueryExpr {
        eq: group_expr(rng),
        weak: group_expr(rng),
        strict: group_expr(rng),
    }
}

/// A random surface formula using every constructor, for round-trip tests.
/// Names are fixed and never clash with keywords.
pub fn random_macro_formula<R: Rng>(rng: &mut R, depth: usize) -> MacroFormula {
    use MacroFormula as M;
    let leaf_kind = rng.gen_range(0..12);
    if depth == 0 || rng.gen_bool(0.25) {
        return match leaf_kind {
            0 => M::True,
            1 => M::False,
            2 => M::Dep(query_expr(rng), name(rng)),
            3 => M::DepAll(query_expr(rng), group_expr(rng)),
            4 => M::Pa(group_expr(rng)),
            5 => M::PaY(group_expr(rng), group_expr(rng)),
            6 => M::Na(group_expr(rng)),
            7 => M::Ca1(group_expr(rng)),
            8 => M::Ca2(group_expr(rng)),
            9 => M::Ca(group_expr(rng)),
            10 => M::D(group_expr(rng), name(rng)),
            _ => M::Atom {
                pred: PREDS.choose(rng).unwrap().to_string(),
                args: (0..rng.gen_range(0..3)).map(|_| name(rng)).collect(),
            },
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => M::not(random_macro_formula(rng, d)),
        1 => M::and(random_macro_formula(rng, d), random_macro_formula(rng, d)),
        2 => M::or(random_macro_formula(rng, d), random_macro_formula(rng, d)),
        3 => M::implies(random_macro_formula(rng, d), random_macro_formula(rng, d)),
        4 => M::Modal(query_expr(rng), Box::new(random_macro_formula(rng, d))),
        5 => M::Dual(query_expr(rng), Box::new(random_macro_formula(rng, d))),
        _ => M::DD(group_expr(rng), Box::new(random_macro_formula(rng, d))),
    }
}
