//! Solution concepts on the two-player coordination game.
//!
//! ```text
//! cargo run --example rock_jazz
//! ```

use lpfd::analysis::{self, Concept};
use lpfd::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = fixtures::rock_jazz();
    let both = m.vocab().all_players();

    for concept in [Concept::Nash, Concept::WeakPareto, Concept::StrongPareto] {
        let report = analysis::solve(&m, concept, both)?;
        print!("{}", report.to_human(&m));
    }

    // The same question asked through the logic.
    let f = lpfd::bind(&lpfd::parse("(na({E,A}) & pa({E,A}))")?, m.vocab())?;
    let holds = lpfd::semantics::eval_all(&m, &f)?;
    let labels: Vec<_> = holds.ones().map(|s| m.label(s)).collect();
    println!("na & pa: {}", labels.join(" "));
    Ok(())
}
