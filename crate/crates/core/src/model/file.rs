//! TOML model documents.
//!
//! ```toml
//! players = ["E", "A"]
//! actions = ["R", "J"]            # or a table of per-player lists
//! # profiles = [["R", "R"], ...]  # omitted: full product
//!
//! [preferences]
//! mode = "utility"                # or "preorder" with [preferences.pairs]
//! [preferences.utilities]
//! RR = [1, 1]
//!
//! [predicates.P]
//! arity = 1
//! tuples = [["J"]]
//! ```

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Frame, ModelError, PdModel, Utility, Vocabulary};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub players: Vec<String>,
    pub actions: ActionsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<Vec<String>>>,
    /// When `true`, loading fails unless every preference is total.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<bool>,
    pub preferences: PreferenceSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub predicates: BTreeMap<String, PredicateSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionsSpec {
    Shared(Vec<String>),
    PerPlayer(BTreeMap<String, Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum PreferenceSpec {
    /// Profile id to one utility per player, in player order.
    Utility { utilities: BTreeMap<String, Vec<UtilityValue>> },
    /// Per player, `(worse, better)` pairs of profile ids.
    Preorder { pairs: BTreeMap<String, Vec<(String, String)>> },
}

/// An integer, or a string holding an integer or a fraction `p/q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UtilityValue {
    Int(i64),
    Text(String),
}

impl UtilityValue {
    pub fn to_utility(&self) -> Result<Utility, ModelError> {
        match self {
            UtilityValue::Int(i) => Ok(Utility::from(*i)),
            UtilityValue::Text(t) => t
                .trim()
                .parse::<Utility>()
                .map_err(|_| ModelError::Format(format!("`{t}` is not an integer or fraction"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateSpec {
    pub arity: usize,
    #[serde(default)]
    pub tuples: Vec<Vec<String>>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        toml::from_str(text).map_err(|e| ModelError::Format(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("model documents always serialize")
    }

    pub fn build(&self) -> Result<PdModel, ModelError> {
        let vocab = Vocabulary::new(self.players.iter().cloned())?;
        let actions: Vec<Vec<String>> = match &self.actions {
            ActionsSpec::Shared(list) => vec![list.clone(); self.players.len()],
            ActionsSpec::PerPlayer(map) => {
                for name in map.keys() {
                    vocab.player_index(name)?;
                }
                self.players
                    .iter()
                    .map(|p| {
                        map.get(p)
                            .cloned()
                            .ok_or_else(|| ModelError::NoActions(p.clone()))
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        let frame = Frame::new(vocab, &actions, self.profiles.as_deref())?;
        let mut model = match &self.preferences {
            PreferenceSpec::Utility { utilities } => {
                let table = utilities
                    .iter()
                    .map(|(id, vals)| {
                        let vals = vals
                            .iter()
                            .map(UtilityValue::to_utility)
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok((id.clone(), vals))
                    })
                    .collect::<Result<HashMap<_, _>, ModelError>>()?;
                PdModel::from_payoff_table(frame, &table)?
            }
            PreferenceSpec::Preorder { pairs } => {
                for name in pairs.keys() {
                    frame.vocab().player_index(name)?;
                }
                let per_player: Vec<Vec<(String, String)>> = self
                    .players
                    .iter()
                    .map(|p| pairs.get(p).cloned().unwrap_or_default())
                    .collect();
                PdModel::from_explicit_preorder(frame, &per_player)?
            }
        };
        for (name, spec) in &self.predicates {
            model = model.with_predicate(name, spec.arity, &spec.tuples)?;
        }
        if self.total == Some(true) {
            for (p, pref) in model.preferences().iter().enumerate() {
                if !pref.is_total() {
                    return Err(ModelError::Format(format!(
                        "model is marked total but the preference of `{}` is not",
                        model.vocab().player_name(p)
                    )));
                }
            }
        }
        Ok(model)
    }

    /// Canonical export: explicit profiles and preorder pairs.
    pub fn from_model(m: &PdModel) -> Self {
        let v = m.vocab();
        let per_player: Vec<Vec<String>> = (0..v.player_count())
            .map(|p| m.player_actions(p).iter().map(|&a| m.actions()[a].clone()).collect())
            .collect();
        let actions = if per_player.windows(2).all(|w| w[0] == w[1]) {
            ActionsSpec::Shared(per_player[0].clone())
        } else {
            ActionsSpec::PerPlayer(v.players().iter().cloned().zip(per_player).collect())
        };
        let profiles = m
            .profiles()
            .map(|s| m.assignment(s).iter().map(|&a| m.actions()[a].clone()).collect())
            .collect();
        let pairs = v
            .players()
            .iter()
            .zip(m.preferences())
            .map(|(name, pref)| {
                let list = pref
                    .non_reflexive_pairs()
                    .into_iter()
                    .map(|(s, t)| (m.label(s).to_string(), m.label(t).to_string()))
                    .collect();
                (name.clone(), list)
            })
            .collect();
        let predicates = v
            .predicates()
            .iter()
            .map(|(name, &arity)| {
                let tuples = m
                    .interpretation(name)
                    .map(|ext| {
                        ext.iter()
                            .map(|tup| tup.iter().map(|&a| m.actions()[a].clone()).collect())
                            .collect()
                    })
                    .unwrap_or_default();
                (name.clone(), PredicateSpec { arity, tuples })
            })
            .collect();
        ModelFile {
            players: v.players().to_vec(),
            actions,
            profiles: Some(profiles),
            total: Some(m.is_total()),
            preferences: PreferenceSpec::Preorder { pairs },
            predicates,
        }
    }
}

impl PdModel {
    pub fn from_toml(text: &str) -> Result<Self, ModelError> {
        ModelFile::parse(text)?.build()
    }

    pub fn to_toml(&self) -> String {
        ModelFile::from_model(self).to_toml()
    }
}
