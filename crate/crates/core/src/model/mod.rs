//! Vocabularies, preference-dependence models and the three relation
//! families (`=_X`, `⪯_X`, `≺_X`) that every truth condition is built on.

mod file;
mod players;
mod preorder;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use thiserror::Error;

pub use file::{ActionsSpec, ModelFile, PredicateSpec, PreferenceSpec, UtilityValue};
pub use players::{Player, PlayerSet, MAX_PLAYERS};
pub use preorder::Preorder;

/// Index of an action in the model's global action list.
pub type Action = usize;

/// Index of a profile in the model's canonical profile order.
pub type ProfileIndex = usize;

/// Exact utility value. Payoff tables compare these, never floats.
pub type Utility = Ratio<i64>;

/// Set of profiles, indexed by `ProfileIndex`.
pub type ProfileSet = FixedBitSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("vocabulary declares no players")]
    NoPlayers,
    #[error("vocabulary declares {0} players; at most {max} are supported", max = MAX_PLAYERS)]
    TooManyPlayers(usize),
    #[error("duplicate player `{0}`")]
    DuplicatePlayer(String),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("player group {0:?} mentions players outside the vocabulary")]
    GroupOutOfRange(PlayerSet),
    #[error("duplicate predicate `{0}`")]
    DuplicatePredicate(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{pred}` has arity {expected}, got a tuple of length {got}")]
    ArityMismatch { pred: String, expected: usize, got: usize },
    #[error("player `{0}` has no actions")]
    NoActions(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("action `{action}` is not available to player `{player}`")]
    ActionNotAvailable { player: String, action: String },
    #[error("model has no strategy profiles")]
    NoProfiles,
    #[error("profile has {got} actions but there are {expected} players")]
    ProfileLength { expected: usize, got: usize },
    #[error("duplicate profile `{0}`")]
    DuplicateProfile(String),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("profile index {0} is not in the model")]
    ProfileOutOfRange(ProfileIndex),
    #[error("preference of player `{0}` is not reflexive and transitive")]
    NotAPreorder(String),
    #[error("preference relation of player `{player}` has size {got}, expected {expected}")]
    PreferenceSize { player: String, expected: usize, got: usize },
    #[error("expected {expected} preference relations, got {got}")]
    PreferenceCount { expected: usize, got: usize },
    #[error("missing utility for player `{player}` at profile `{profile}`")]
    MissingUtility { profile: String, player: String },
    #[error("model file: {0}")]
    Format(String),
}

/// Players and predicate symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    players: Vec<String>,
    predicates: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(players: impl IntoIterator<Item = S>) -> Result<Self, ModelError> {
        let players: Vec<String> = players.into_iter().map(Into::into).collect();
        if players.is_empty() {
            return Err(ModelError::NoPlayers);
        }
        if players.len() > MAX_PLAYERS {
            return Err(ModelError::TooManyPlayers(players.len()));
        }
        let mut seen = BTreeSet::new();
        for p in &players {
            if !seen.insert(p.as_str()) {
                return Err(ModelError::DuplicatePlayer(p.clone()));
            }
        }
        Ok(Vocabulary {
            players,
            predicates: BTreeMap::new(),
        })
    }

    pub fn with_predicate(mut self, name: impl Into<String>, arity: usize) -> Result<Self, ModelError> {
        let name = name.into();
        if self.predicates.contains_key(&name) {
            return Err(ModelError::DuplicatePredicate(name));
        }
        self.predicates.insert(name, arity);
        Ok(self)
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn all_players(&self) -> PlayerSet {
        PlayerSet::full(self.players.len())
    }

    pub fn player_index(&self, name: &str) -> Result<Player, ModelError> {
        self.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| ModelError::UnknownPlayer(name.to_string()))
    }

    pub fn player_name(&self, p: Player) -> &str {
        &self.players[p]
    }

    pub fn group<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<PlayerSet, ModelError> {
        names.into_iter().map(|n| self.player_index(n)).collect()
    }

    pub fn group_names(&self, group: PlayerSet) -> Vec<String> {
        group.iter().map(|p| self.players[p].clone()).collect()
    }

    /// `V ∖ group`.
    pub fn complement(&self, group: PlayerSet) -> PlayerSet {
        self.all_players().difference(group)
    }

    pub fn check_group(&self, group: PlayerSet) -> Result<(), ModelError> {
        if group.is_subset(self.all_players()) {
            Ok(())
        } else {
            Err(ModelError::GroupOutOfRange(group))
        }
    }

    pub fn predicates(&self) -> &BTreeMap<String, usize> {
        &self.predicates
    }

    pub fn arity(&self, pred: &str) -> Result<usize, ModelError> {
        self.predicates
            .get(pred)
            .copied()
            .ok_or_else(|| ModelError::UnknownPredicate(pred.to_string()))
    }
}

/// The three subscripts of a modality or dependence atom:
/// agreement group, weak-preference group and strict-preference group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupQuery {
    pub eq: PlayerSet,
    pub weak: PlayerSet,
    pub strict: PlayerSet,
}

impl GroupQuery {
    pub fn new(eq: PlayerSet, weak: PlayerSet, strict: PlayerSet) -> Self {
        GroupQuery { eq, weak, strict }
    }

    /// `(X, ∅, ∅)`, the pure dependence subscript.
    pub fn agreement(eq: PlayerSet) -> Self {
        GroupQuery::new(eq, PlayerSet::EMPTY, PlayerSet::EMPTY)
    }

    pub fn mentioned(&self) -> PlayerSet {
        self.eq.union(self.weak).union(self.strict)
    }

    /// Componentwise inclusion.
    pub fn is_within(&self, other: &GroupQuery) -> bool {
        self.eq.is_subset(other.eq)
            && self.weak.is_subset(other.weak)
            && self.strict.is_subset(other.strict)
    }
}

/// Players, their available actions and the admissible strategy profiles.
///
/// Profiles are kept in canonical order: the product order of per-player
/// action lists with the first player most significant, restricted to the
/// admissible ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    vocab: Vocabulary,
    actions: Vec<String>,
    player_actions: Vec<Vec<Action>>,
    profiles: Vec<Vec<Action>>,
    labels: Vec<String>,
}

impl Frame {
    /// `actions[i]` lists the actions of player `i`. `admissible == None`
    /// means the full product.
    pub fn new<S: AsRef<str>>(
        vocab: Vocabulary,
        actions: &[Vec<S>],
        admissible: Option<&[Vec<S>]>,
    ) -> Result<Self, ModelError> {
        let n = vocab.player_count();
        if actions.len() != n {
            return Err(ModelError::Format(format!(
                "{} action lists for {} players",
                actions.len(),
                n
            )));
        }
        let mut global: Vec<String> = Vec::new();
        let mut player_actions = Vec::with_capacity(n);
        for (p, list) in actions.iter().enumerate() {
            if list.is_empty() {
                return Err(ModelError::NoActions(vocab.player_name(p).to_string()));
            }
            let mut mine = Vec::new();
            for a in list {
                let a = a.as_ref();
                let idx = match global.iter().position(|g| g == a) {
                    Some(i) => i,
                    None => {
                        global.push(a.to_string());
                        global.len() - 1
                    }
                };
                if !mine.contains(&idx) {
                    mine.push(idx);
                }
            }
            player_actions.push(mine);
        }

        let product = cartesian(&player_actions);
        let profiles = match admissible {
            None => product,
            Some(list) => {
                let mut chosen = BTreeSet::new();
                for prof in list {
                    if prof.len() != n {
                        return Err(ModelError::ProfileLength {
                            expected: n,
                            got: prof.len(),
                        });
                    }
                    let mut idxs = Vec::with_capacity(n);
                    for (p, a) in prof.iter().enumerate() {
                        let a = a.as_ref();
                        let idx = global
                            .iter()
                            .position(|g| g == a)
                            .ok_or_else(|| ModelError::UnknownAction(a.to_string()))?;
                        if !player_actions[p].contains(&idx) {
                            return Err(ModelError::ActionNotAvailable {
                                player: vocab.player_name(p).to_string(),
                                action: a.to_string(),
                            });
                        }
                        idxs.push(idx);
                    }
                    if !chosen.insert(idxs.clone()) {
                        let names: Vec<&str> = prof.iter().map(AsRef::as_ref).collect();
                        return Err(ModelError::DuplicateProfile(names.join(",")));
                    }
                }
                product.into_iter().filter(|p| chosen.contains(p)).collect()
            }
        };
        if profiles.is_empty() {
            return Err(ModelError::NoProfiles);
        }
        let compact = global.iter().all(|a| a.chars().count() == 1);
        let labels = profiles
            .iter()
            .map(|p| {
                let names: Vec<&str> = p.iter().map(|&a| global[a].as_str()).collect();
                if compact {
                    names.concat()
                } else {
                    names.join(",")
                }
            })
            .collect();
        Ok(Frame {
            vocab,
            actions: global,
            player_actions,
            profiles,
            labels,
        })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn profile_count(&self) -> usize {
        self.profiles.len()
    }

    pub fn label(&self, s: ProfileIndex) -> &str {
        &self.labels[s]
    }

    /// Looks a profile up by its label, or by comma-separated action names.
    pub fn profile_index(&self, id: &str) -> Result<ProfileIndex, ModelError> {
        let id = id.trim();
        if let Some(i) = self.labels.iter().position(|l| l == id) {
            return Ok(i);
        }
        let parts: Vec<&str> = id.split(',').map(str::trim).collect();
        self.profiles
            .iter()
            .position(|p| {
                p.len() == parts.len()
                    && p.iter().zip(&parts).all(|(&a, name)| self.actions[a] == *name)
            })
            .ok_or_else(|| ModelError::UnknownProfile(id.to_string()))
    }
}

fn cartesian(lists: &[Vec<Action>]) -> Vec<Vec<Action>> {
    let mut out: Vec<Vec<Action>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

/// A preference-dependence model: a frame, one preorder per player and an
/// interpretation of the predicates. Immutable once built.
#[derive(Clone, Debug)]
pub struct PdModel {
    frame: Frame,
    prefs: Vec<Preorder>,
    interp: BTreeMap<String, BTreeSet<Vec<Action>>>,
    // Row caches: same[x][s] = {t | s(x) = t(x)}, strict[x][s] = {t | s ≺_x t}.
    same: Vec<Vec<ProfileSet>>,
    strict: Vec<Vec<ProfileSet>>,
    total: bool,
}

impl PartialEq for PdModel {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.prefs == other.prefs && self.interp == other.interp
    }
}

impl PdModel {
    /// Builds a model from explicit relations, rejecting any that is not a
    /// preorder.
    pub fn new(frame: Frame, prefs: Vec<Preorder>) -> Result<Self, ModelError> {
        let n = frame.vocab.player_count();
        if prefs.len() != n {
            return Err(ModelError::PreferenceCount {
                expected: n,
                got: prefs.len(),
            });
        }
        for (p, pref) in prefs.iter().enumerate() {
            if pref.len() != frame.profile_count() {
                return Err(ModelError::PreferenceSize {
                    player: frame.vocab.player_name(p).to_string(),
                    expected: frame.profile_count(),
                    got: pref.len(),
                });
            }
            if !pref.is_preorder() {
                return Err(ModelError::NotAPreorder(frame.vocab.player_name(p).to_string()));
            }
        }
        let np = frame.profile_count();
        let same = (0..n)
            .map(|x| {
                (0..np)
                    .map(|s| {
                        let mut row = FixedBitSet::with_capacity(np);
                        for t in 0..np {
                            if frame.profiles[s][x] == frame.profiles[t][x] {
                                row.insert(t);
                            }
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let strict = prefs
            .iter()
            .map(|pref| (0..np).map(|s| pref.strict_row(s)).collect())
            .collect();
        let total = prefs.iter().all(Preorder::is_total);
        Ok(PdModel {
            frame,
            prefs,
            interp: BTreeMap::new(),
            same,
            strict,
            total,
        })
    }

    /// Preferences induced by utilities: `s ⪯_x t` iff `u_x(s) <= u_x(t)`.
    /// `utilities` maps a profile id to one value per player.
    pub fn from_payoff_table(
        frame: Frame,
        utilities: &HashMap<String, Vec<Utility>>,
    ) -> Result<Self, ModelError> {
        let n = frame.vocab.player_count();
        let mut by_profile: Vec<Option<&Vec<Utility>>> = vec![None; frame.profile_count()];
        for (id, values) in utilities {
            let s = frame.profile_index(id)?;
            if values.len() != n {
                return Err(ModelError::Format(format!(
                    "profile `{id}` has {} utilities for {n} players",
                    values.len()
                )));
            }
            by_profile[s] = Some(values);
        }
        let mut prefs = Vec::with_capacity(n);
        for x in 0..n {
            let keys = by_profile
                .iter()
                .enumerate()
                .map(|(s, u)| {
                    u.map(|u| u[x]).ok_or_else(|| ModelError::MissingUtility {
                        profile: frame.label(s).to_string(),
                        player: frame.vocab.player_name(x).to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            prefs.push(Preorder::from_key(&keys));
        }
        PdModel::new(frame, prefs)
    }

    /// Each player's preference is the reflexive-transitive closure of the
    /// given `(worse, better)` pairs of profile ids.
    pub fn from_explicit_preorder<S: AsRef<str>>(
        frame: Frame,
        pairs: &[Vec<(S, S)>],
    ) -> Result<Self, ModelError> {
        let n = frame.vocab.player_count();
        if pairs.len() != n {
            return Err(ModelError::PreferenceCount {
                expected: n,
                got: pairs.len(),
            });
        }
        let np = frame.profile_count();
        let prefs = pairs
            .iter()
            .map(|list| {
                let idx = list
                    .iter()
                    .map(|(a, b)| Ok((frame.profile_index(a.as_ref())?, frame.profile_index(b.as_ref())?)))
                    .collect::<Result<Vec<_>, ModelError>>()?;
                Ok(Preorder::closure_of(np, idx))
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        PdModel::new(frame, prefs)
    }

    /// Declares a predicate and its extension, given as tuples of action
    /// names. Predicates never interpreted this way are empty.
    pub fn with_predicate<S: AsRef<str>>(
        mut self,
        name: &str,
        arity: usize,
        tuples: &[Vec<S>],
    ) -> Result<Self, ModelError> {
        self.frame.vocab = self.frame.vocab.clone().with_predicate(name, arity)?;
        let mut ext = BTreeSet::new();
        for tup in tuples {
            if tup.len() != arity {
                return Err(ModelError::ArityMismatch {
                    pred: name.to_string(),
                    expected: arity,
                    got: tup.len(),
                });
            }
            let idx = tup
                .iter()
                .map(|a| self.action_index(a.as_ref()))
                .collect::<Result<Vec<_>, _>>()?;
            ext.insert(idx);
        }
        self.interp.insert(name.to_string(), ext);
        Ok(self)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.frame.vocab
    }

    pub fn actions(&self) -> &[String] {
        &self.frame.actions
    }

    pub fn action_index(&self, name: &str) -> Result<Action, ModelError> {
        self.frame
            .actions
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| ModelError::UnknownAction(name.to_string()))
    }

    pub fn player_actions(&self, p: Player) -> &[Action] {
        &self.frame.player_actions[p]
    }

    pub fn profile_count(&self) -> usize {
        self.frame.profile_count()
    }

    pub fn profiles(&self) -> impl Iterator<Item = ProfileIndex> {
        0..self.profile_count()
    }

    /// The assignment of actions to players at `s`, in player order.
    pub fn assignment(&self, s: ProfileIndex) -> &[Action] {
        &self.frame.profiles[s]
    }

    pub fn label(&self, s: ProfileIndex) -> &str {
        self.frame.label(s)
    }

    pub fn profile_index(&self, id: &str) -> Result<ProfileIndex, ModelError> {
        self.frame.profile_index(id)
    }

    pub fn preference(&self, p: Player) -> &Preorder {
        &self.prefs[p]
    }

    pub fn preferences(&self) -> &[Preorder] {
        &self.prefs
    }

    pub fn interpretation(&self, pred: &str) -> Option<&BTreeSet<Vec<Action>>> {
        self.interp.get(pred)
    }

    /// True when every player's preference is total.
    pub fn is_total(&self) -> bool {
        self.total
    }

    fn check_profile(&self, s: ProfileIndex) -> Result<(), ModelError> {
        if s < self.profile_count() {
            Ok(())
        } else {
            Err(ModelError::ProfileOutOfRange(s))
        }
    }

    fn check_args(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> Result<(), ModelError> {
        self.check_profile(s)?;
        self.check_profile(t)?;
        self.vocab().check_group(group)
    }

    /// `s =_X t`: same action for every member of `X`.
    pub fn agree(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> Result<bool, ModelError> {
        self.check_args(s, t, group)?;
        Ok(self.agrees(s, t, group))
    }

    /// `s ⪯_X t`.
    pub fn weak_pref_all(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> Result<bool, ModelError> {
        self.check_args(s, t, group)?;
        Ok(self.weakly_below(s, t, group))
    }

    /// `s ≺_X t`: strictly below for each member, not the strict part of `⪯_X`.
    pub fn strict_pref_all(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> Result<bool, ModelError> {
        self.check_args(s, t, group)?;
        Ok(self.strictly_below(s, t, group))
    }

    pub(crate) fn agrees(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> bool {
        let (a, b) = (&self.frame.profiles[s], &self.frame.profiles[t]);
        group.iter().all(|x| a[x] == b[x])
    }

    pub(crate) fn weakly_below(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> bool {
        group.iter().all(|x| self.prefs[x].le(s, t))
    }

    pub(crate) fn strictly_below(&self, s: ProfileIndex, t: ProfileIndex, group: PlayerSet) -> bool {
        group.iter().all(|x| self.prefs[x].lt(s, t))
    }

    /// `{t | s =_X t, s ⪯_X' t, s ≺_X'' t}`.
    pub fn reach_set(&self, s: ProfileIndex, query: &GroupQuery) -> Result<ProfileSet, ModelError> {
        self.check_profile(s)?;
        self.vocab().check_group(query.mentioned())?;
        Ok(self.reach(s, query))
    }

    pub(crate) fn reach(&self, s: ProfileIndex, query: &GroupQuery) -> ProfileSet {
        let np = self.profile_count();
        let mut out = FixedBitSet::with_capacity(np);
        out.insert_range(..);
        for x in query.eq.iter() {
            out.intersect_with(&self.same[x][s]);
        }
        for x in query.weak.iter() {
            out.intersect_with(self.prefs[x].row(s));
        }
        for x in query.strict.iter() {
            out.intersect_with(&self.strict[x][s]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(m: &PdModel, names: &[&str]) -> PlayerSet {
        m.vocab().group(names.iter().copied()).unwrap()
    }

    fn ids(m: &PdModel, bits: &ProfileSet) -> Vec<String> {
        bits.ones().map(|s| m.label(s).to_string()).collect()
    }

    #[test]
    fn rock_jazz_profiles_follow_declaration_order() {
        let m = fixtures::rock_jazz();
        let labels: Vec<_> = m.profiles().map(|s| m.label(s).to_string()).collect();
        assert_eq!(labels, ["RR", "RJ", "JR", "JJ"]);
        assert!(m.is_total());
    }

    #[test]
    fn agreement() {
        let m = fixtures::rock_jazz();
        let (rr, rj, jr, jj) = (0, 1, 2, 3);
        assert!(m.agree(rr, rj, set(&m, &["E"])).unwrap());
        assert!(m.agree(rr, jj, PlayerSet::EMPTY).unwrap());
        assert!(!m.agree(rr, jr, set(&m, &["E"])).unwrap());
        assert_eq!(
            m.agree(rr, rj, PlayerSet::singleton(5)),
            Err(ModelError::GroupOutOfRange(PlayerSet::singleton(5)))
        );
    }

    #[test]
    fn preference_chain() {
        // s2 ≃ s3 ≺ s1 ≺ s4 for both players.
        let m = fixtures::rock_jazz();
        let both = set(&m, &["E", "A"]);
        let e = set(&m, &["E"]);
        assert!(m.weak_pref_all(0, 3, both).unwrap());
        assert!(m.weak_pref_all(2, 2, both).unwrap());
        assert!(!m.weak_pref_all(3, 0, e).unwrap());
        assert!(m.strict_pref_all(0, 3, both).unwrap());
        assert!(!m.strict_pref_all(3, 3, e).unwrap());
        assert!(!m.strict_pref_all(1, 2, e).unwrap());
        assert!(m.weak_pref_all(1, 2, e).unwrap() && m.weak_pref_all(2, 1, e).unwrap());
    }

    #[test]
    fn reach_sets() {
        let m = fixtures::rock_jazz();
        let e = set(&m, &["E"]);
        let a = set(&m, &["A"]);
        let q = GroupQuery::new(e, PlayerSet::EMPTY, a);
        assert_eq!(m.reach_set(0, &q).unwrap().count_ones(..), 0);
        let all = m.reach_set(0, &GroupQuery::default()).unwrap();
        assert_eq!(ids(&m, &all), ["RR", "RJ", "JR", "JJ"]);
        let q = GroupQuery::new(PlayerSet::EMPTY, PlayerSet::EMPTY, e.union(a));
        assert_eq!(ids(&m, &m.reach_set(0, &q).unwrap()), ["JJ"]);
        assert_eq!(m.reach_set(9, &q), Err(ModelError::ProfileOutOfRange(9)));
    }

    #[test]
    fn payoff_table_three_players() {
        let m = fixtures::prisoners_dilemma_3();
        assert_eq!(m.profile_count(), 4);
        assert_eq!(m.player_actions(2).len(), 1);
        assert_eq!(m.label(3), "conf,conf,observe");
        assert_eq!(m.profile_index("conf, conf, observe").unwrap(), 3);
    }

    #[test]
    fn constant_utilities_are_indifferent() {
        let v = Vocabulary::new(["a", "b"]).unwrap();
        let frame = Frame::new(v, &[vec!["x", "y"], vec!["x", "y"]], None).unwrap();
        let utils: HashMap<String, Vec<Utility>> = ["xx", "xy", "yx", "yy"]
            .iter()
            .map(|id| (id.to_string(), vec![Utility::from(3), Utility::from(3)]))
            .collect();
        let m = PdModel::from_payoff_table(frame, &utils).unwrap();
        for s in m.profiles() {
            for t in m.profiles() {
                assert!(m.weak_pref_all(s, t, m.vocab().all_players()).unwrap());
            }
        }
    }

    #[test]
    fn missing_utility_is_reported() {
        let v = Vocabulary::new(["a"]).unwrap();
        let frame = Frame::new(v, &[vec!["x", "y"]], None).unwrap();
        let utils: HashMap<String, Vec<Utility>> = [("x".to_string(), vec![Utility::from(1)])].into();
        assert_eq!(
            PdModel::from_payoff_table(frame, &utils).unwrap_err(),
            ModelError::MissingUtility {
                profile: "y".into(),
                player: "a".into()
            }
        );
    }

    #[test]
    fn explicit_preorder_closure_and_totality() {
        let v = Vocabulary::new(["p"]).unwrap();
        let frame = Frame::new(v, &[vec!["a", "b", "c"]], None).unwrap();
        let m = PdModel::from_explicit_preorder(frame.clone(), &[vec![("a", "b"), ("b", "c")]]).unwrap();
        assert!(m.weak_pref_all(0, 2, PlayerSet::singleton(0)).unwrap());
        assert!(m.is_total());
        let m = PdModel::from_explicit_preorder(frame, &[Vec::<(&str, &str)>::new()]).unwrap();
        assert!(!m.is_total());
    }

    #[test]
    fn non_transitive_relation_rejected() {
        let v = Vocabulary::new(["p"]).unwrap();
        let frame = Frame::new(v, &[vec!["a", "b", "c"]], None).unwrap();
        let raw = Preorder::from_relation(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        assert_eq!(
            PdModel::new(frame, vec![raw]).unwrap_err(),
            ModelError::NotAPreorder("p".into())
        );
    }

    #[test]
    fn admissible_subset_and_errors() {
        let v = Vocabulary::new(["a", "b"]).unwrap();
        let acts = [vec!["x", "y"], vec!["x", "y"]];
        let f = Frame::new(v.clone(), &acts, Some(&[vec!["y", "y"], vec!["x", "x"]])).unwrap();
        assert_eq!(f.profile_count(), 2);
        assert_eq!(f.label(0), "xx");
        assert_eq!(
            Frame::new(v.clone(), &acts, Some(&[])).unwrap_err(),
            ModelError::NoProfiles
        );
        assert!(matches!(
            Frame::new(v, &acts, Some(&[vec!["x", "z"]])),
            Err(ModelError::UnknownAction(_))
        ));
        assert_eq!(Vocabulary::new(Vec::<String>::new()), Err(ModelError::NoPlayers));
    }

    #[test]
    fn predicate_interpretation_checks_arity() {
        let m = fixtures::rock_jazz();
        assert!(matches!(
            m.clone().with_predicate("Q", 2, &[vec!["R"]]),
            Err(ModelError::ArityMismatch { .. })
        ));
        let m = m.with_predicate("Q", 1, &[vec!["R"]]).unwrap();
        assert_eq!(m.interpretation("Q").unwrap().len(), 1);
    }
}
