use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::schema::{AxiomSchema, Cond, GExpr, Subst};
use crate::formula::Formula;
use crate::model::{GroupQuery, PlayerSet, Vocabulary};

/// A depth-bounded pool of formulas for the formula metavariables: `false`,
/// `true`, atoms and dependence atoms at depth 0, then per level a few
/// negations, conjunctions and modalities over the previous level.
pub fn formula_pool(vocab: &Vocabulary, depth: usize, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = vocab.player_count();
    let all = vocab.all_players();
    let mut atoms = Vec::new();
    for (pred, &arity) in vocab.predicates() {
        let mut args = vec![0; arity];
        loop {
            atoms.push(Formula::Atom {
                pred: pred.clone(),
                args: args.clone(),
            });
            let Some(i) = (0..arity).rev().find(|&i| args[i] + 1 < n) else {
                break;
            };
            args[i] += 1;
            args[i + 1..].fill(0);
        }
    }
    atoms.shuffle(&mut rng);
    atoms.truncate(6);

    let random_query = |rng: &mut ChaCha8Rng| {
        let mut pick = || all.iter().filter(|_| rng.gen_bool(0.35)).collect::<PlayerSet>();
        GroupQuery::new(pick(), pick(), pick())
    };
    let mut pool = vec![Formula::False, Formula::truth()];
    pool.extend(atoms);
    for _ in 0..2 {
        let q = random_query(&mut rng);
        pool.push(Formula::Dep(q, rng.gen_range(0..n)));
    }
    for _ in 0..depth {
        let base = pool.clone();
        let pick = |rng: &mut ChaCha8Rng| base.choose(rng).unwrap().clone();
        let mut layer = Vec::new();
        for _ in 0..2 {
            layer.push(Formula::not(pick(&mut rng)));
        }
        layer.push(Formula::and(pick(&mut rng), pick(&mut rng)));
        for _ in 0..3 {
            let q = random_query(&mut rng);
            layer.push(Formula::modal(q, pick(&mut rng)));
        }
        pool.extend(layer);
    }
    pool.dedup();
    pool
}

/// Instances of one schema.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Instances {
    pub formulas: Vec<Formula>,
    /// Size of the unfiltered substitution space.
    pub space: u128,
    /// Set when the space exceeded the budget and was sampled.
    pub truncated: bool,
}

fn lower_bound_for(schema: &AxiomSchema, v: &'static str, s: &Subst, all: PlayerSet) -> PlayerSet {
    let mut lower = PlayerSet::EMPTY;
    for c in &schema.conditions {
        match c {
            Cond::Subset(a, GExpr::Var(b)) if *b == v => {
                if let Ok(a) = a.eval(s) {
                    lower = lower.union(a);
                }
            }
            Cond::Supported(m, GExpr::Var(b)) if *b == v => {
                if let Some(f) = s.formulas.get(m) {
                    lower = lower.union(f.support(all));
                }
            }
            Cond::FreeWithin(m, GExpr::Var(b)) if *b == v => {
                if let Some(f) = s.formulas.get(m) {
                    lower = lower.union(f.free());
                }
            }
            _ => {}
        }
    }
    lower
}

fn upper_bound_for(schema: &AxiomSchema, v: &'static str, s: &Subst, all: PlayerSet) -> PlayerSet {
    let mut upper = all;
    for c in &schema.conditions {
        if let Cond::Subset(GExpr::Var(a), b) = c {
            if *a == v {
                if let Ok(b) = b.eval(s) {
                    upper = upper.intersection(b);
                }
            }
        }
    }
    upper
}

fn random_between<R: Rng>(rng: &mut R, lower: PlayerSet, upper: PlayerSet) -> PlayerSet {
    upper
        .difference(lower)
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect::<PlayerSet>()
        .union(lower)
}

/// Instances of `schema` with group variables over subsets of `all`,
/// player variables over `all` and formula variables over `pool`. When the
/// space exceeds `budget` substitutions, `budget` of them are sampled
/// (seeded by `seed`), each drawn to respect subset conditions where it
/// can; any that still violate a condition are dropped.
pub fn enumerate_instances(
    schema: &AxiomSchema,
    all: PlayerSet,
    pool: &[Formula],
    budget: usize,
    seed: u64,
) -> Instances {
    let mv = schema.metavars();
    let players: Vec<_> = all.iter().collect();
    let subsets: Vec<PlayerSet> = all.subsets().collect();
    let radices: Vec<usize> = mv
        .formulas
        .iter()
        .map(|_| pool.len())
        .chain(mv.groups.iter().map(|_| subsets.len()))
        .chain(mv.players.iter().map(|_| players.len()))
        .collect();
    let space = radices.iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128));
    let mut out = Instances {
        space,
        truncated: space > budget as u128,
        ..Instances::default()
    };
    if radices.contains(&0) {
        return out;
    }

    let mut emit = |s: &Subst| {
        if let Ok(None) = schema.check_conditions(s, all) {
            out.formulas
                .push(schema.instantiate(s).expect("every metavariable is bound"));
        }
    };

    if !out.truncated {
        let mut digits = vec![0usize; radices.len()];
        loop {
            let mut s = Subst::default();
            let mut d = digits.iter();
            for m in &mv.formulas {
                s.formulas.insert(m, pool[*d.next().unwrap()].clone());
            }
            for g in &mv.groups {
                s.groups.insert(g, subsets[*d.next().unwrap()]);
            }
            for p in &mv.players {
                s.players.insert(p, players[*d.next().unwrap()]);
            }
            emit(&s);
            let Some(i) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < radices[i]) else {
                break;
            };
            digits[i] += 1;
            digits[i + 1..].fill(0);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let mut s = Subst::default();
            for m in &mv.formulas {
                s.formulas.insert(m, pool.choose(&mut rng).unwrap().clone());
            }
            for g in &mv.groups {
                let lower = lower_bound_for(schema, g, &s, all);
                let upper = upper_bound_for(schema, g, &s, all);
                let value = if lower.is_subset(upper) {
                    random_between(&mut rng, lower, upper)
                } else {
                    *subsets.choose(&mut rng).unwrap()
                };
                s.groups.insert(g, value);
            }
            for p in &mv.players {
                let member_of = schema.conditions.iter().find_map(|c| match c {
                    Cond::Member(x, g) if x == p => g.eval(&s).ok(),
                    _ => None,
                });
                let choices: Vec<_> = match member_of {
                    Some(g) if !g.is_empty() => g.iter().collect(),
                    _ => players.clone(),
                };
                s.players.insert(p, *choices.choose(&mut rng).unwrap());
            }
            emit(&s);
        }
    }
    out
}
