//! The two-level frequency ledger: how often each source mentioned an item,
//! and how often all sources together did.

use alloc::collections::BTreeMap;
use alloc::string::String;

use serde::{Deserialize, Deserializer, Serialize};

/// Per-source mention counts. `total` and `source_count` are derived from
/// the per-source map and kept in step by every mutator; zero entries are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Frequency {
    per_source: BTreeMap<String, u64>,
    #[serde(skip)]
    total: u64,
}

impl Frequency {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut f = Frequency::new();
        for (s, n) in counts {
            f.add(s, n);
        }
        f
    }

    pub fn add(&mut self, source: impl Into<String>, n: u64) {
        if n == 0 {
            return;
        }
        *self.per_source.entry(source.into()).or_insert(0) += n;
        self.total += n;
    }

    /// Pointwise sum.
    pub fn absorb(&mut self, other: &Frequency) {
        for (s, n) in &other.per_source {
            self.add(s.clone(), *n);
        }
    }

    pub fn per_source(&self) -> &BTreeMap<String, u64> {
        &self.per_source
    }

    pub fn count_for(&self, source: &str) -> u64 {
        self.per_source.get(source).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn source_count(&self) -> u64 {
        self.per_source.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Recomputes both derived views from scratch and compares.
    pub fn is_consistent(&self) -> bool {
        let sum: u64 = self.per_source.values().sum();
        sum == self.total && self.per_source.values().all(|&n| n > 0)
    }
}

impl<'de> Deserialize<'de> for Frequency {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            per_source: BTreeMap<String, u64>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(Frequency::from_counts(raw.per_source))
    }
}
