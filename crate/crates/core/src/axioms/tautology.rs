//! Propositional tautology checking by truth tables. Atoms, modalities and
//! dependence atoms are opaque propositional variables.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::Formula;

pub const MAX_TAUTOLOGY_ATOMS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0} propositional atoms; at most {MAX_TAUTOLOGY_ATOMS} are supported")]
pub struct TooManyAtoms(pub usize);

fn collect<'f>(f: &'f Formula, atoms: &mut HashMap<&'f Formula, usize>) {
    match f {
        Formula::False => {}
        Formula::Not(g) => collect(g, atoms),
        Formula::And(a, b) => {
            collect(a, atoms);
            collect(b, atoms);
        }
        _ => {
            let next = atoms.len();
            atoms.entry(f).or_insert(next);
        }
    }
}

fn value(f: &Formula, atoms: &HashMap<&Formula, usize>, row: u32) -> bool {
    match f {
        Formula::False => false,
        Formula::Not(g) => !value(g, atoms, row),
        Formula::And(a, b) => value(a, atoms, row) && value(b, atoms, row),
        _ => row >> atoms[f] & 1 == 1,
    }
}

pub fn is_tautology(f: &Formula) -> Result<bool, TooManyAtoms> {
    let mut atoms = HashMap::new();
    collect(f, &mut atoms);
    if atoms.len() > MAX_TAUTOLOGY_ATOMS {
        return Err(TooManyAtoms(atoms.len()));
    }
    Ok((0..1u32 << atoms.len()).all(|row| value(f, &atoms, row)))
}
