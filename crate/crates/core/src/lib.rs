//! Model checking and game analysis for a modal logic of preference and
//! functional dependence over finite strategic games.
//!
//! * [`model`]: players, strategy profiles, preference preorders, model files.
//! * [`formula`]: syntax, parser, printer and macro expansion.
//! * [`semantics`]: truth of formulas at profiles.
//! * [`analysis`]: Nash, Pareto and collective-agency solvers.
//! * [`axioms`]: axiom schemata, soundness fuzzing and a derivation checker.
//! * [`testgen`]: random models and independent brute-force oracles.

pub mod fixtures;
pub mod formula;
pub mod analysis;
pub mod axioms;
pub mod cli;
pub mod crosscheck;
pub mod model;
pub mod semantics;
pub mod testgen;

pub use formula::{bind, parse, Formula, MacroFormula};
pub use model::{GroupQuery, PdModel, PlayerSet, Vocabulary};
