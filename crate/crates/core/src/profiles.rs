//! Tangency profiles: multisets of positive contact orders with the
//! distinguished fiber `E₀`.
//!
//! A profile is stored in canonical non-increasing order, so two profiles
//! compare equal exactly when they agree as multisets. The integer `k` is
//! identified with the profile `1^k`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("tangency orders must be positive, found 0")]
    ZeroEntry,
    #[error("cannot remove an entry from the empty profile")]
    Empty,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangencyProfile(Vec<u32>);

impl TangencyProfile {
    pub fn new(mut entries: Vec<u32>) -> Result<Self, ProfileError> {
        if entries.contains(&0) {
            return Err(ProfileError::ZeroEntry);
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TangencyProfile(entries))
    }

    pub fn empty() -> Self {
        TangencyProfile(Vec::new())
    }

    /// The profile `1^k`.
    pub fn ones(k: usize) -> Self {
        TangencyProfile(vec![1; k])
    }

    pub fn single(n: u32) -> Result<Self, ProfileError> {
        Self::new(vec![n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Number of entries, written `|α|`.
    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// Sum of entries, written `m(α)`.
    pub fn multiplicity(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every entry equals one, i.e. the profile is `1^k`.
    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&x| x == 1)
    }

    /// Multiset union.
    pub fn sum(&self, other: &TangencyProfile) -> TangencyProfile {
        let mut entries = self.0.clone();
        entries.extend_from_slice(&other.0);
        entries.sort_unstable_by(|a, b| b.cmp(a));
        TangencyProfile(entries)
    }

    pub fn with_entry(&self, n: u32) -> Result<TangencyProfile, ProfileError> {
        Ok(self.sum(&TangencyProfile::single(n)?))
    }

    fn counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &x in &self.0 {
            *counts.entry(x).or_insert(0) += 1;
        }
        counts
    }

    pub fn is_subprofile_of(&self, other: &TangencyProfile) -> bool {
        let theirs = other.counts();
        self.counts()
            .iter()
            .all(|(v, c)| theirs.get(v).is_some_and(|t| t >= c))
    }

    /// Multiset difference `self − sub`, or `None` when `sub` is not
    /// contained in `self`.
    pub fn complement(&self, sub: &TangencyProfile) -> Option<TangencyProfile> {
        let mut counts = self.counts();
        for &x in &sub.0 {
            let c = counts.get_mut(&x)?;
            if *c == 0 {
                return None;
            }
            *c -= 1;
        }
        let mut entries: Vec<u32> = counts
            .into_iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c))
            .collect();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Some(TangencyProfile(entries))
    }

    /// Removes one copy of `n`, if present.
    pub fn without_entry(&self, n: u32) -> Option<TangencyProfile> {
        let pos = self.0.iter().position(|&x| x == n)?;
        let mut entries = self.0.clone();
        entries.remove(pos);
        Some(TangencyProfile(entries))
    }

    /// Distinct entry values in decreasing order.
    pub fn distinct_entries(&self) -> Vec<u32> {
        let mut values = self.0.clone();
        values.dedup();
        values
    }

    /// All sub-multisets, including the empty and the full profile, in
    /// canonical order.
    pub fn subprofiles(&self) -> Vec<TangencyProfile> {
        let counts: Vec<(u32, usize)> = self.counts().into_iter().rev().collect();
        let mut out = vec![Vec::new()];
        for (value, count) in counts {
            let mut next = Vec::with_capacity(out.len() * (count + 1));
            for prefix in &out {
                for k in 0..=count {
                    let mut p: Vec<u32> = prefix.clone();
                    p.extend(std::iter::repeat_n(value, k));
                    next.push(p);
                }
            }
            out = next;
        }
        let mut profiles: Vec<TangencyProfile> = out.into_iter().map(TangencyProfile).collect();
        profiles.sort();
        profiles
    }

    /// One profile per distinct entry value, each with that value removed once.
    pub fn remove_one_entry(&self) -> Result<Vec<TangencyProfile>, ProfileError> {
        if self.is_empty() {
            return Err(ProfileError::Empty);
        }
        let mut out: Vec<TangencyProfile> = self
            .distinct_entries()
            .into_iter()
            .filter_map(|v| self.without_entry(v))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// All integer partitions of `m`, each as a profile, in reverse
/// lexicographic order starting from `(m)`.
pub fn enumerate_profiles(m: u32) -> Vec<TangencyProfile> {
    partitions_bounded(m, m, usize::MAX)
}

/// Partitions of `m` with at most `max_parts` parts.
pub fn partitions_with_at_most(m: u32, max_parts: usize) -> Vec<TangencyProfile> {
    partitions_bounded(m, m, max_parts)
}

fn partitions_bounded(m: u32, largest: u32, max_parts: usize) -> Vec<TangencyProfile> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(m, largest, max_parts, &mut current, &mut out);
    out
}

fn fill(
    remaining: u32,
    largest: u32,
    max_parts: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<TangencyProfile>,
) {
    if remaining == 0 {
        out.push(TangencyProfile(current.clone()));
        return;
    }
    if current.len() == max_parts {
        return;
    }
    for part in (1..=largest.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, max_parts, current, out);
        current.pop();
    }
}

impl fmt::Display for TangencyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for TangencyProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TangencyProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<u32>::deserialize(deserializer)?;
        TangencyProfile::new(entries).map_err(serde::de::Error::custom)
    }
}
