//! Collective agency in the prisoner's dilemma, with and without a third
//! party watching.

use lpfd::analysis::{self, Concept, Evidence};
use lpfd::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = fixtures::prisoners_dilemma();
    let v = m.vocab();
    let pair = v.all_players();
    for concept in [Concept::StrongPareto, Concept::Nash, Concept::Ca1] {
        print!("{}", analysis::solve(&m, concept, pair)?.to_human(&m));
    }
    for name in ["1", "2"] {
        let g = v.group([name])?;
        let fixed = v.complement(g);
        let r = analysis::pareto_given(&m, fixed, g)?;
        println!("{name} alone, other fixed: {}", r.solution_labels(&m).join(" "));
    }

    // Add the prosecutor. Collective agency needs a cover of the group by
    // Pareto optimal subgroups.
    let m3 = fixtures::prisoners_dilemma_3();
    let all = m3.vocab().all_players();
    let ca = analysis::ca(&m3, all)?;
    print!("{}", ca.to_human(&m3));
    for (s, ev) in ca.solutions.ones().zip(ca.evidence.iter().filter(|e| e.holds())) {
        if let Evidence::Cover(cover) = ev {
            let parts: Vec<String> = cover
                .iter()
                .map(|g| format!("{{{}}}", m3.vocab().group_names(*g).join(",")))
                .collect();
            println!("{} is covered by {}", m3.label(s), parts.join(" and "));
        }
    }
    Ok(())
}
