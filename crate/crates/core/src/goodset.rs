use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set any exact oracle in this crate accepts.
pub const MAX_GOODS: usize = 24;

/// A subset of goods `0..m` stored as a bitmask. Iteration is ascending by index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodSet(u32);

impl GoodSet {
    pub const EMPTY: GoodSet = GoodSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        GoodSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_GOODS);
        GoodSet(((1u64 << m) - 1) as u32)
    }

    pub fn singleton(g: usize) -> Self {
        GoodSet(1 << g)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(goods: I) -> Self {
        goods.into_iter().fold(GoodSet::EMPTY, |s, g| s.with(g))
    }

    pub fn contains(self, g: usize) -> bool {
        g < 32 && self.0 & (1 << g) != 0
    }

    pub fn with(self, g: usize) -> Self {
        GoodSet(self.0 | (1 << g))
    }

    pub fn without(self, g: usize) -> Self {
        GoodSet(self.0 & !(1 << g))
    }

    pub fn union(self, other: GoodSet) -> Self {
        GoodSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GoodSet) -> Self {
        GoodSet(self.0 & other.0)
    }

    pub fn difference(self, other: GoodSet) -> Self {
        GoodSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GoodSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: GoodSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Index one past the largest member (0 for the empty set).
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let g = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(g)
        })
    }

    /// The `k` smallest members (all of them when `k >= len`).
    pub fn take_lowest(self, k: usize) -> Self {
        GoodSet::from_indices(self.iter().take(k))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for GoodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for GoodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for GoodSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        GoodSet::from_indices(iter)
    }
}

impl Serialize for GoodSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for GoodSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let goods = Vec::<usize>::deserialize(d)?;
        if let Some(&g) = goods.iter().find(|&&g| g >= MAX_GOODS) {
            return Err(serde::de::Error::custom(format!(
                "good index {g} out of range (max {})",
                MAX_GOODS - 1
            )));
        }
        Ok(GoodSet::from_indices(goods))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = GoodSet::from_indices([0, 2, 5]);
        let b = GoodSet::from_indices([2, 3]);
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert_eq!(a.len(), 3);
        assert!(GoodSet::from_indices([2]).is_subset(b));
        assert!(!a.is_disjoint(b));
        assert_eq!(a.span(), 6);
        assert_eq!(a.take_lowest(2).to_vec(), vec![0, 2]);
        assert_eq!(GoodSet::full(24).len(), 24);
        assert_eq!(GoodSet::full(0), GoodSet::EMPTY);
    }

    #[test]
    fn serializes_as_index_list() {
        let s = GoodSet::from_indices([4, 1]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,4]");
        let back: GoodSet = serde_json::from_str("[4,1]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<GoodSet>("[24]").is_err());
        assert_eq!(s.to_string(), "{1,4}");
    }
}
