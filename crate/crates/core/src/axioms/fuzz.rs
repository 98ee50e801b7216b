use rayon::prelude::*;

use super::enumerate::{enumerate_instances, formula_pool};
use super::schema::AxiomSchema;
use super::all_schemas;
use crate::model::PdModel;
use crate::semantics::Evaluator;
use crate::testgen::{generate, sub_seed, GenConfig, GenError};

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub models: usize,
    pub seed: u64,
    /// Depth of the formula pool.
    pub depth: usize,
    /// Instances per schema per model before sampling kicks in.
    pub budget: usize,
    pub gen: GenConfig,
    pub schemas: Vec<AxiomSchema>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            models: 200,
            seed: 0,
            depth: 1,
            budget: 400,
            gen: GenConfig::default(),
            schemas: all_schemas(),
        }
    }
}

/// An instance that fails somewhere on a model.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Seed that regenerates the model with the run's generator settings.
    pub model_seed: u64,
    pub schema: &'static str,
    pub instance: String,
    pub profile: String,
    /// The model in file format, for replay.
    pub model: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModelCheckReport {
    pub instances: usize,
    pub truncated: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FuzzReport {
    pub models: usize,
    pub instances: usize,
    pub truncated: bool,
    pub violations: Vec<Violation>,
}

fn check_schema(
    m: &PdModel,
    model_seed: u64,
    schema: &AxiomSchema,
    depth: usize,
    budget: usize,
    seed: u64,
) -> ModelCheckReport {
    let all = m.vocab().all_players();
    let pool = formula_pool(m.vocab(), depth, seed);
    let inst = enumerate_instances(schema, all, &pool, budget, seed);
    let mut ev = Evaluator::new(m);
    let mut report = ModelCheckReport {
        instances: inst.formulas.len(),
        truncated: inst.truncated,
        violations: Vec::new(),
    };
    for f in &inst.formulas {
        let ext = ev.extension(f).expect("instances are built over the model's vocabulary");
        if let Some(s) = m.profiles().find(|&s| !ext.contains(s)) {
            report.violations.push(Violation {
                model_seed,
                schema: schema.name,
                instance: f.display(m.vocab()),
                profile: m.label(s).to_string(),
                model: m.to_toml(),
            });
        }
    }
    report
}

/// Checks every instance of `schemas` for validity on one model.
pub fn check_model(
    m: &PdModel,
    schemas: &[AxiomSchema],
    depth: usize,
    budget: usize,
    seed: u64,
) -> ModelCheckReport {
    let parts: Vec<ModelCheckReport> = schemas
        .par_iter()
        .enumerate()
        .map(|(i, s)| check_schema(m, seed, s, depth, budget, sub_seed(seed, i as u64)))
        .collect();
    let mut out = ModelCheckReport::default();
    for p in parts {
        out.instances += p.instances;
        out.truncated |= p.truncated;
        out.violations.extend(p.violations);
    }
    out
}

/// Generates `cfg.models` models by seed splitting and checks every schema
/// on each. Work is split over (model, schema) pairs; each pair has its own
/// seed, so the report does not depend on scheduling.
pub fn soundness_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport, GenError> {
    let models: Vec<(u64, PdModel)> = (0..cfg.models as u64)
        .into_par_iter()
        .map(|i| {
            let seed = sub_seed(cfg.seed, i);
            generate(&cfg.gen.with_seed(seed)).map(|m| (seed, m))
        })
        .collect::<Result<_, _>>()?;
    let tasks: Vec<(usize, usize)> = (0..models.len())
        .flat_map(|m| (0..cfg.schemas.len()).map(move |s| (m, s)))
        .collect();
    let parts: Vec<ModelCheckReport> = tasks
        .par_iter()
        .map(|&(mi, si)| {
            let (seed, m) = &models[mi];
            check_schema(m, *seed, &cfg.schemas[si], cfg.depth, cfg.budget, sub_seed(*seed, si as u64))
        })
        .collect();
    let mut out = FuzzReport {
        models: models.len(),
        ..FuzzReport::default()
    };
    for p in parts {
        out.instances += p.instances;
        out.truncated |= p.truncated;
        out.violations.extend(p.violations);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{agreement_persistence_free, corrupted_strict_is_weak, k_as_conjunction};
    use super::*;
    use crate::fixtures;

    fn small(schemas: Vec<AxiomSchema>) -> FuzzConfig {
        FuzzConfig {
            models: 20,
            seed: 11,
            budget: 150,
            gen: GenConfig {
                players: [1, 3],
                actions: [1, 2],
                ..GenConfig::default()
            },
            schemas,
            ..FuzzConfig::default()
        }
    }

    #[test]
    fn all_schemata_hold_on_small_models() {
        let r = soundness_fuzz(&small(all_schemas())).unwrap();
        assert_eq!(r.models, 20);
        assert!(r.instances > 1000);
        assert!(r.violations.is_empty(), "{:?}", r.violations.first());
    }

    #[test]
    fn mutants_are_caught() {
        for bad in [corrupted_strict_is_weak(), k_as_conjunction(), agreement_persistence_free()] {
            let r = soundness_fuzz(&small(vec![bad.clone()])).unwrap();
            assert!(!r.violations.is_empty(), "{}", bad.name);
        }
    }

    #[test]
    fn fixtures_satisfy_every_schema() {
        for m in [fixtures::rock_jazz(), fixtures::prisoners_dilemma_3()] {
            let r = check_model(&m, &all_schemas(), 1, 300, 4);
            assert!(r.violations.is_empty(), "{:?}", r.violations.first());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = small(vec![corrupted_strict_is_weak()]);
        assert_eq!(soundness_fuzz(&cfg).unwrap(), soundness_fuzz(&cfg).unwrap());
    }
}
