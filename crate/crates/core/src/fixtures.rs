//! The bundled example games.

use crate::model::{ModelError, PdModel};

pub const ROCK_JAZZ: &str = include_str!("../examples/models/rockjazz.toml");
pub const PRISONERS_DILEMMA: &str = include_str!("../examples/models/pd1.toml");
pub const PRISONERS_DILEMMA_3: &str = include_str!("../examples/models/pd2.toml");

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 3] = ["rockjazz", "pd1", "pd2"];

pub fn by_name(name: &str) -> Option<Result<PdModel, ModelError>> {
    let text = match name {
        "rockjazz" => ROCK_JAZZ,
        "pd1" => PRISONERS_DILEMMA,
        "pd2" => PRISONERS_DILEMMA_3,
        _ => return None,
    };
    Some(PdModel::from_toml(text))
}

pub fn rock_jazz() -> PdModel {
    PdModel::from_toml(ROCK_JAZZ).expect("bundled model")
}

pub fn prisoners_dilemma() -> PdModel {
    PdModel::from_toml(PRISONERS_DILEMMA).expect("bundled model")
}

/// The dilemma with the prosecutor added as player `3`.
pub fn prisoners_dilemma_3() -> PdModel {
    PdModel::from_toml(PRISONERS_DILEMMA_3).expect("bundled model")
}
