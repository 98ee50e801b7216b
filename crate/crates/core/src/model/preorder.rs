use fixedbitset::FixedBitSet;

/// A binary relation over profile indices `0..n`, stored row-wise:
/// `row(s)` holds every `t` with `s ≤ t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    rows: Vec<FixedBitSet>,
}

impl Preorder {
    /// Only reflexive pairs.
    pub fn discrete(n: usize) -> Self {
        let rows = (0..n)
            .map(|s| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert(s);
                r
            })
            .collect();
        Preorder { rows }
    }

    /// Reflexive-transitive closure of `pairs`. Indices must be `< n`.
    pub fn closure_of(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut p = Self::discrete(n);
        for (s, t) in pairs {
            p.rows[s].insert(t);
        }
        p.close();
        p
    }

    /// Total preorder induced by a key: `s ≤ t` iff `key(s) <= key(t)`.
    pub fn from_key<K: PartialOrd>(keys: &[K]) -> Self {
        let n = keys.len();
        let rows = (0..n)
            .map(|s| {
                let mut r = FixedBitSet::with_capacity(n);
                for t in 0..n {
                    if keys[s] <= keys[t] {
                        r.insert(t);
                    }
                }
                r
            })
            .collect();
        Preorder { rows }
    }

    /// Raw relation without closing. Use `is_preorder` to validate.
    pub fn from_relation(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (s, t) in pairs {
            rows[s].insert(t);
        }
        Preorder { rows }
    }

    fn close(&mut self) {
        // Warshall: if s ≤ k then s inherits everything above k.
        let n = self.rows.len();
        for k in 0..n {
            let above_k = self.rows[k].clone();
            for s in 0..n {
                if self.rows[s].contains(k) {
                    self.rows[s].union_with(&above_k);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn le(&self, s: usize, t: usize) -> bool {
        self.rows[s].contains(t)
    }

    /// `s < t`: `s ≤ t` and not `t ≤ s`.
    pub fn lt(&self, s: usize, t: usize) -> bool {
        self.le(s, t) && !self.le(t, s)
    }

    pub fn row(&self, s: usize) -> &FixedBitSet {
        &self.rows[s]
    }

    /// Profiles strictly above `s`.
    pub fn strict_row(&self, s: usize) -> FixedBitSet {
        let mut r = self.rows[s].clone();
        for t in self.rows[s].ones() {
            if self.le(t, s) {
                r.set(t, false);
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|s| self.le(s, s))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        (0..n).all(|s| {
            self.rows[s]
                .ones()
                .all(|k| self.rows[k].is_subset(&self.rows[s]))
        })
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|s| (0..n).all(|t| self.le(s, t) || self.le(t, s)))
    }

    /// All pairs `(s, t)` with `s ≤ t` and `s != t`, in row-major order.
    pub fn non_reflexive_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.rows.iter().enumerate() {
            out.extend(row.ones().filter(|&t| t != s).map(|t| (s, t)));
        }
        out
    }
}
