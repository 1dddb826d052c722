use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A subset `I` of the simple roots, stored as a bitmask over 0-based indices.
///
/// Displayed and serialized with 1-based indices (`{1,3}`), matching the
/// command-line syntax `1,3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicSubset {
    mask: u64,
}

/// Largest rank whose subsets fit in the mask.
pub const MAX_RANK: usize = 64;

impl ParabolicSubset {
    pub fn empty() -> Self {
        Self { mask: 0 }
    }

    /// All of `Δ` for a root system of the given rank.
    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_RANK);
        Self {
            mask: if rank == MAX_RANK { u64::MAX } else { (1u64 << rank) - 1 },
        }
    }

    /// From 0-based indices; rejects duplicates and out-of-range indices.
    pub fn from_indices(indices: &[usize], rank: usize) -> Result<Self> {
        let mut mask = 0u64;
        for &i in indices {
            if i >= rank {
                return Err(Error::InvalidParabolic(format!(
                    "index {} out of range 1..={rank}",
                    i + 1
                )));
            }
            if mask & (1 << i) != 0 {
                return Err(Error::InvalidParabolic(format!("duplicate index {}", i + 1)));
            }
            mask |= 1 << i;
        }
        Ok(Self { mask })
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        Self { mask }
    }

    /// Parses comma-separated 1-based indices (`"1,3"`). The empty string,
    /// `-` and `∅` denote the empty subset.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "-" || text == "∅" {
            return Ok(Self::empty());
        }
        let indices = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| {
                        Error::InvalidParabolic(format!(
                            "`{t}` is not a 1-based simple root index"
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(&indices, rank)
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RANK && self.mask & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// 0-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_RANK).filter(move |&i| self.contains(i))
    }

    pub fn intersection(self, other: Self) -> Self {
        Self { mask: self.mask & other.mask }
    }

    pub fn union(self, other: Self) -> Self {
        Self { mask: self.mask | other.mask }
    }

    pub fn difference(self, other: Self) -> Self {
        Self { mask: self.mask & !other.mask }
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn with(self, i: usize) -> Self {
        Self { mask: self.mask | (1 << i) }
    }

    pub fn without(self, i: usize) -> Self {
        Self { mask: self.mask & !(1 << i) }
    }

    /// Every subset of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Self> {
        // Standard submask walk, reversed into ascending order.
        let mut all = Vec::with_capacity(1 << self.len().min(20));
        let mut sub = self.mask;
        loop {
            all.push(Self { mask: sub });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.mask;
        }
        all.into_iter().rev()
    }

    pub(crate) fn check_rank(self, rank: usize) -> Result<()> {
        if self.is_subset_of(Self::full(rank)) {
            Ok(())
        } else {
            Err(Error::InvalidParabolic(format!(
                "{self} is not a subset of the {rank} simple roots"
            )))
        }
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for ParabolicSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.indices().map(|i| i + 1).collect();
        one_based.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParabolicSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let one_based = Vec::<usize>::deserialize(d)?;
        if one_based.contains(&0) {
            return Err(serde::de::Error::custom("simple root indices are 1-based"));
        }
        let zero_based: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
        Self::from_indices(&zero_based, MAX_RANK).map_err(serde::de::Error::custom)
    }
}
