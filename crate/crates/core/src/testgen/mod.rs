//! Deterministic random models and independent brute-force oracles.
//!
//! Everything here is a pure function of the configuration and seed. The
//! oracles are written directly against the model's raw accessors and share
//! no code with [`crate::analysis`] or [`crate::semantics`].

mod formulas;
mod oracle;

pub use formulas::{random_formula, random_macro_formula};
pub use oracle::{
    oracle_ca, oracle_ca1, oracle_ca2, oracle_covers, oracle_nash, oracle_pareto_given,
    oracle_strong_pareto, oracle_weak_pareto, reference_eval, OracleError, MAX_ORACLE_CA,
};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Frame, ModelError, PdModel, Preorder, Vocabulary, MAX_PLAYERS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrefMode {
    /// Preferences induced by random integer utilities, hence total.
    Utility,
    /// Closures of random pairs, usually not total.
    RandomPreorder,
    /// Either of the above, chosen per model.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    /// Inclusive range for the number of players.
    pub players: [usize; 2],
    /// Inclusive range for the number of actions per player.
    pub actions: [usize; 2],
    /// Probability that a product profile is admissible.
    pub density: f64,
    pub preferences: PrefMode,
    /// Make random preorders total (random weak orders).
    pub total: bool,
    /// Inclusive range for the number of predicates.
    pub predicates: [usize; 2],
    pub max_arity: usize,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            players: [1, 4],
            actions: [1, 3],
            density: 0.8,
            preferences: PrefMode::Mixed,
            total: false,
            predicates: [0, 2],
            max_arity: 2,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("could not read configuration: {0}")]
    Config(String),
}

impl GenConfig {
    pub fn from_toml(text: &str) -> Result<Self, GenError> {
        toml::from_str(text).map_err(|e| GenError::Config(e.to_string()))
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenConfig {
            seed,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<(), GenError> {
        let bad = |msg: &str| Err(GenError::Infeasible(msg.to_string()));
        if self.players[0] == 0 || self.players[0] > self.players[1] {
            return bad("player range must be non-empty and start at 1");
        }
        if self.players[1] > MAX_PLAYERS {
            return bad("too many players");
        }
        if self.actions[0] == 0 || self.actions[0] > self.actions[1] || self.actions[1] > 10 {
            return bad("action range must lie within 1..=10");
        }
        if !(0.0..=1.0).contains(&self.density) {
            return bad("density must lie in [0, 1]");
        }
        if self.predicates[0] > self.predicates[1] || self.predicates[1] > 26 {
            return bad("predicate range must be non-empty and at most 26");
        }
        if self.predicates[1] > 0 && self.max_arity == 0 {
            return bad("predicates need a positive maximum arity");
        }
        Ok(())
    }
}

/// Seed of the `index`-th model derived from `seed`, for seed splitting.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.next_u64()
}

fn player_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("p{i}")
    }
}

/// Generates one model. The same configuration always gives the same model.
pub fn generate(cfg: &GenConfig) -> Result<PdModel, GenError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = rng.gen_range(cfg.players[0]..=cfg.players[1]);
    let vocab = Vocabulary::new((0..n).map(player_name))?;
    let actions: Vec<Vec<String>> = (0..n)
        .map(|_| {
            let k = rng.gen_range(cfg.actions[0]..=cfg.actions[1]);
            (0..k).map(|a| a.to_string()).collect()
        })
        .collect();

    let mut product: Vec<Vec<String>> = vec![Vec::new()];
    for list in &actions {
        product = product
            .into_iter()
            .flat_map(|p| {
                list.iter().map(move |a| {
                    let mut p = p.clone();
                    p.push(a.clone());
                    p
                })
            })
            .collect();
    }
    let mut admissible: Vec<Vec<String>> = product
        .iter()
        .filter(|_| rng.gen_bool(cfg.density))
        .cloned()
        .collect();
    if admissible.is_empty() {
        admissible.push(product[rng.gen_range(0..product.len())].clone());
    }
    let frame = Frame::new(vocab, &actions, Some(&admissible))?;
    let np = frame.profile_count();

    let utility = match cfg.preferences {
        PrefMode::Utility => true,
        PrefMode::RandomPreorder => false,
        PrefMode::Mixed => rng.gen_bool(0.5),
    };
    let prefs = (0..n)
        .map(|_| {
            if utility || cfg.total {
                let keys: Vec<u32> = (0..np).map(|_| rng.gen_range(0..np.max(2) as u32)).collect();
                Preorder::from_key(&keys)
            } else {
                let pairs: Vec<(usize, usize)> = (0..np)
                    .map(|_| (rng.gen_range(0..np), rng.gen_range(0..np)))
                    .collect();
                Preorder::closure_of(np, pairs)
            }
        })
        .collect();
    let mut model = PdModel::new(frame, prefs)?;

    let count = rng.gen_range(cfg.predicates[0]..=cfg.predicates[1]);
    for i in 0..count {
        let name = ((b'P' + i as u8) as char).to_string();
        let arity = rng.gen_range(1..=cfg.max_arity);
        let names = model.actions().to_vec();
        let mut tuples: Vec<Vec<String>> = vec![Vec::new()];
        for _ in 0..arity {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    names.iter().map(move |a| {
                        let mut t = t.clone();
                        t.push(a.clone());
                        t
                    })
                })
                .collect();
        }
        let chosen: Vec<Vec<String>> = tuples.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        model = model.with_predicate(&name, arity, &chosen)?;
    }
    Ok(model)
}

/// The `count` models derived from `cfg.seed` by seed splitting, each paired
/// with its own seed for replay.
pub fn generate_many(cfg: &GenConfig, count: usize) -> Result<Vec<(u64, PdModel)>, GenError> {
    (0..count as u64)
        .map(|i| {
            let seed = sub_seed(cfg.seed, i);
            Ok((seed, generate(&cfg.with_seed(seed))?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let cfg = GenConfig::default().with_seed(42);
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        let other = generate(&cfg.with_seed(43)).unwrap();
        let again = generate(&cfg.with_seed(43)).unwrap();
        assert_eq!(other, again);
    }

    #[test]
    fn utility_mode_is_total() {
        let cfg = GenConfig {
            preferences: PrefMode::Utility,
            ..GenConfig::default()
        };
        for seed in 0..30 {
            assert!(generate(&cfg.with_seed(seed)).unwrap().is_total());
        }
    }

    #[test]
    fn full_density_gives_full_product() {
        let cfg = GenConfig {
            density: 1.0,
            players: [3, 3],
            actions: [2, 2],
            ..GenConfig::default()
        };
        for seed in 0..10 {
            assert_eq!(generate(&cfg.with_seed(seed)).unwrap().profile_count(), 8);
        }
    }

    #[test]
    fn zero_density_forces_one_profile() {
        let cfg = GenConfig {
            density: 0.0,
            ..GenConfig::default()
        };
        assert_eq!(generate(&cfg).unwrap().profile_count(), 1);
    }

    #[test]
    fn random_preorders_are_often_partial() {
        let cfg = GenConfig {
            preferences: PrefMode::RandomPreorder,
            players: [2, 3],
            actions: [2, 3],
            ..GenConfig::default()
        };
        let partial = (0..50)
            .filter(|&s| !generate(&cfg.with_seed(s)).unwrap().is_total())
            .count();
        assert!(partial >= 25, "only {partial} of 50 non-total");
        let total = GenConfig { total: true, ..cfg };
        assert!((0..20).all(|s| generate(&total.with_seed(s)).unwrap().is_total()));
    }

    #[test]
    fn infeasible_configs() {
        let bad = GenConfig {
            players: [3, 2],
            ..GenConfig::default()
        };
        assert!(matches!(generate(&bad), Err(GenError::Infeasible(_))));
        let bad = GenConfig {
            density: 1.5,
            ..GenConfig::default()
        };
        assert!(generate(&bad).is_err());
    }

    #[test]
    fn config_from_toml() {
        let cfg = GenConfig::from_toml("players = [2, 2]\npreferences = \"random-preorder\"\nseed = 9\n").unwrap();
        assert_eq!(cfg.players, [2, 2]);
        assert_eq!(cfg.preferences, PrefMode::RandomPreorder);
        assert_eq!(cfg.actions, GenConfig::default().actions);
        assert!(GenConfig::from_toml("colour = 1").is_err());
    }

    #[test]
    fn split_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..100).map(|i| sub_seed(7, i)).collect();
        assert_eq!(seeds.len(), 100);
        let many = generate_many(&GenConfig::default(), 5).unwrap();
        assert_eq!(many[3].1, generate(&GenConfig::default().with_seed(many[3].0)).unwrap());
    }
}
