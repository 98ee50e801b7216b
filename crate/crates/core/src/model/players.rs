use std::fmt;

/// Index of a player in declaration order.
pub type Player = usize;

/// Maximum number of players a vocabulary may declare.
pub const MAX_PLAYERS: usize = 64;

/// A finite set of players, stored as a bitmask over declaration indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerSet(u64);

impl PlayerSet {
    pub const EMPTY: PlayerSet = PlayerSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PlayerSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_PLAYERS);
        if n == MAX_PLAYERS {
            PlayerSet(u64::MAX)
        } else {
            PlayerSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: Player) -> Self {
        assert!(p < MAX_PLAYERS);
        PlayerSet(1 << p)
    }

    pub fn contains(self, p: Player) -> bool {
        p < MAX_PLAYERS && self.0 & (1 << p) != 0
    }

    pub fn insert(&mut self, p: Player) {
        *self = self.with(p);
    }

    pub fn with(self, p: Player) -> Self {
        self.union(Self::singleton(p))
    }

    pub fn without(self, p: Player) -> Self {
        self.difference(Self::singleton(p))
    }

    pub fn union(self, other: Self) -> Self {
        PlayerSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PlayerSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        PlayerSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Player> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// All subsets in ascending bitmask order, starting with the empty set
    /// and ending with `self`.
    pub fn subsets(self) -> impl Iterator<Item = PlayerSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(PlayerSet(cur))
        })
    }

    /// Subsets other than `self` itself.
    pub fn proper_subsets(self) -> impl Iterator<Item = PlayerSet> {
        self.subsets().filter(move |s| *s != self)
    }
}

impl FromIterator<Player> for PlayerSet {
    fn from_iter<I: IntoIterator<Item = Player>>(iter: I) -> Self {
        let mut s = PlayerSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
