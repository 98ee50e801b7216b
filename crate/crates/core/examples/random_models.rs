//! Seeded random games, checked against the brute-force oracles.

use lpfd::analysis;
use lpfd::testgen::{self, oracle_nash, GenConfig, PrefMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = GenConfig {
        players: [2, 3],
        actions: [2, 3],
        preferences: PrefMode::Mixed,
        seed: 7,
        ..GenConfig::default()
    };
    for (seed, m) in testgen::generate_many(&cfg, 5)? {
        let all = m.vocab().all_players();
        let fast = analysis::nash(&m, all)?;
        let slow: Vec<_> = oracle_nash(&m, all);
        assert_eq!(fast.solutions.ones().collect::<Vec<_>>(), slow);
        println!(
            "seed {seed:#018x}: {} players, {} profiles, nash {:?}",
            m.vocab().player_count(),
            m.profile_count(),
            fast.solution_labels(&m)
        );
    }

    // Each sub-seed regenerates its model alone.
    let again = testgen::generate(&cfg.with_seed(testgen::sub_seed(7, 2)))?;
    println!("{}", again.to_toml());

    let (mismatches, compared) = lpfd::crosscheck::compare_solvers(&again, 3);
    println!("{compared} solver comparisons, {} mismatches", mismatches.len());
    Ok(())
}
