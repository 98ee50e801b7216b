//! Fuzzing the axiom schemata for validity on random models, and a broken
//! schema to show what a violation looks like.

use lpfd::axioms::{soundness_fuzz, FuzzConfig};
use lpfd::axioms::{all_schemas, corrupted_strict_is_weak};
use lpfd::testgen::GenConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gen = GenConfig {
        players: [1, 3],
        actions: [1, 2],
        ..GenConfig::default()
    };
    let cfg = FuzzConfig {
        models: 30,
        seed: 3,
        budget: 200,
        gen,
        ..FuzzConfig::default()
    };
    let names: Vec<_> = all_schemas().iter().map(|s| s.name).collect();
    println!("schemata: {}", names.join(" "));

    let r = soundness_fuzz(&cfg)?;
    println!(
        "{} models, {} instances, {} violations",
        r.models,
        r.instances,
        r.violations.len()
    );

    let bad = FuzzConfig {
        schemas: vec![corrupted_strict_is_weak()],
        ..cfg
    };
    let r = soundness_fuzz(&bad)?;
    if let Some(v) = r.violations.first() {
        println!("{} fails at {}:\n  {}", v.schema, v.profile, v.instance);
        println!("model seed {:#x}", v.model_seed);
    }
    Ok(())
}
