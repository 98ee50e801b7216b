use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpfd::model::{GroupQuery, Preorder};
use lpfd::semantics::Evaluator;
use lpfd::testgen::{self, random_formula, random_macro_formula, reference_eval, GenConfig};
use lpfd::{parse, Formula, PdModel, PlayerSet};

fn model(seed: u64) -> PdModel {
    let cfg = GenConfig {
        players: [1, 3],
        actions: [1, 3],
        seed,
        ..GenConfig::default()
    };
    testgen::generate(&cfg).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// Random query over `all`, together with one that contains it slot by slot.
fn nested_queries(all: PlayerSet, bits: [u64; 6]) -> (GroupQuery, GroupQuery) {
    let g = |b: u64| PlayerSet::from_bits(b & all.bits());
    let small = GroupQuery::new(g(bits[0]), g(bits[1]), g(bits[2]));
    let big = GroupQuery::new(
        small.eq.union(g(bits[3])),
        small.weak.union(g(bits[4])),
        small.strict.union(g(bits[5])),
    );
    (small, big)
}

fn valid(m: &PdModel, f: &Formula) -> bool {
    lpfd::semantics::valid(m, f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_macro_formulas_parse_back(seed: u64, depth in 0usize..5) {
        let ast = random_macro_formula(&mut rng(seed), depth);
        prop_assert_eq!(parse(&ast.to_string()).unwrap(), ast);
    }

    #[test]
    fn model_files_round_trip(seed: u64) {
        let m = model(seed);
        let text = m.to_toml();
        let back = PdModel::from_toml(&text).unwrap();
        prop_assert_eq!(back.to_toml(), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn preferences_are_preorders(seed: u64) {
        let m = model(seed);
        for p in m.preferences() {
            prop_assert!(p.is_reflexive() && p.is_transitive());
            for s in m.profiles() {
                for t in m.profiles() {
                    prop_assert_eq!(p.lt(s, t), p.le(s, t) && !p.le(t, s));
                }
            }
        }
    }

    #[test]
    fn closure_yields_a_preorder(pairs in prop::collection::vec((0usize..6, 0usize..6), 0..20)) {
        let p = Preorder::closure_of(6, pairs.iter().copied());
        prop_assert!(p.is_preorder());
        for &(s, t) in &pairs {
            prop_assert!(p.le(s, t));
        }
    }

    #[test]
    fn evaluator_matches_reference(seed: u64, fseed: u64) {
        let m = model(seed);
        let f = random_formula(&mut rng(fseed), m.vocab(), 3);
        let mut ev = Evaluator::new(&m);
        let ext = ev.extension(&f).unwrap();
        for s in m.profiles() {
            prop_assert_eq!(ext.contains(s), reference_eval(&m, s, &f), "{}", f.display(m.vocab()));
        }
    }

    #[test]
    fn boxes_weaken_as_queries_grow(seed: u64, fseed: u64, bits: [u64; 6]) {
        let m = model(seed);
        let phi = random_formula(&mut rng(fseed), m.vocab(), 2);
        let (small, big) = nested_queries(m.vocab().all_players(), bits);
        let f = Formula::implies(Formula::modal(small, phi.clone()), Formula::modal(big, phi));
        prop_assert!(valid(&m, &f));
    }

    #[test]
    fn boxes_without_strictness_are_factive(seed: u64, fseed: u64, bits: [u64; 6]) {
        let m = model(seed);
        let phi = random_formula(&mut rng(fseed), m.vocab(), 2);
        let (q, _) = nested_queries(m.vocab().all_players(), bits);
        let q = GroupQuery::new(q.eq, q.weak, PlayerSet::EMPTY);
        prop_assert!(valid(&m, &Formula::implies(Formula::modal(q, phi.clone()), phi)));
    }

    #[test]
    fn boxes_are_transitive(seed: u64, fseed: u64, bits: [u64; 6]) {
        let m = model(seed);
        let phi = random_formula(&mut rng(fseed), m.vocab(), 2);
        let (q, _) = nested_queries(m.vocab().all_players(), bits);
        let twice = Formula::modal(q, Formula::modal(q, phi.clone()));
        prop_assert!(valid(&m, &Formula::implies(Formula::modal(q, phi), twice)));
    }

    #[test]
    fn diamond_is_dual_to_box(seed: u64, fseed: u64, bits: [u64; 6]) {
        let m = model(seed);
        let phi = random_formula(&mut rng(fseed), m.vocab(), 2);
        let (q, _) = nested_queries(m.vocab().all_players(), bits);
        let mut ev = Evaluator::new(&m);
        let dia = ev.extension(&Formula::dual(q, phi.clone())).unwrap();
        let not_box_not = ev
            .extension(&Formula::not(Formula::modal(q, Formula::not(phi))))
            .unwrap();
        prop_assert_eq!(dia, not_box_not);
    }
}
