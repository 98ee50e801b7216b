//! Checking Hilbert-style derivations step by step.

use lpfd::axioms::{check_derivation, parse_derivation};

const PROOFS: [(&str, &str); 2] = [
    ("pa_monotonicity", include_str!("proofs/pa_monotonicity.lpfdproof")),
    ("cover_theorem", include_str!("proofs/cover_theorem.lpfdproof")),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, text) in PROOFS {
        let d = parse_derivation(text)?;
        let verdict = check_derivation(&d);
        println!("{name}: {} steps, accepted = {}", verdict.steps, verdict.accepted());
    }

    // A step citing monotonicity where the groups shrink is refused.
    let broken = PROOFS[1].1.replace("<={2,3}; <{1}", "<={2}; <{1}");
    let verdict = check_derivation(&parse_derivation(&broken)?);
    if let Some(f) = verdict.failure {
        println!("broken: step {} (line {}): {} ({})", f.step, f.line, f.reason, f.reason.kind());
    }
    Ok(())
}
