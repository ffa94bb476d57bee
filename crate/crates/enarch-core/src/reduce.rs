//! Merge rules and frequency thresholds.
//!
//! Reduction always merges first and thresholds second: folding synonyms
//! can lift a record over the thresholds, never the other way round.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::extract::{ConceptRecord, InteractionKey, InteractionRecord, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MergeKind {
    /// Grammatical variants the normalizer does not catch.
    Morphological,
    /// Same meaning in general ("motion" and "movement").
    GeneralSynonym,
    /// Same meaning only in the context of the explained system.
    ContextualSynonym,
}

impl MergeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            MergeKind::Morphological => "morphological",
            MergeKind::GeneralSynonym => "general",
            MergeKind::ContextualSynonym => "contextual",
        }
    }
}

impl fmt::Display for MergeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MergeKind::Morphological => "Morphological",
            MergeKind::GeneralSynonym => "GeneralSynonym",
            MergeKind::ContextualSynonym => "ContextualSynonym",
        };
        f.write_str(s)
    }
}

/// Which label the merged record keeps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanonicalPolicy {
    /// A member, or a fresh label.
    ExplicitLabel(String),
    /// The one member listed in the setting lexicon.
    SettingSpecific,
    /// The declared abstract member.
    Abstract(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("merge rule needs at least two members, got {0}")]
    TooFewMembers(usize),
    #[error("merge rule lists `{0}` twice")]
    DuplicateMember(String),
    #[error("abstract label `{0}` is not a member of its rule")]
    AbstractNotMember(String),
    #[error("label `{label}` appears in merge rules {first} and {second}")]
    RuleConflict {
        label: String,
        first: usize,
        second: usize,
    },
    #[error("merge rule {rule}: setting-specific policy needs exactly one member in the setting lexicon, found {found:?}")]
    AmbiguousCanonical { rule: usize, found: Vec<String> },
    #[error("thresholds must be at least 1 (min_total={min_total}, min_sources={min_sources})")]
    InvalidThresholds { min_total: u64, min_sources: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeRule {
    kind: MergeKind,
    members: Vec<String>,
    policy: CanonicalPolicy,
}

impl MergeRule {
    pub fn new(
        kind: MergeKind,
        members: Vec<String>,
        policy: CanonicalPolicy,
    ) -> Result<Self, ReduceError> {
        if members.len() < 2 {
            return Err(ReduceError::TooFewMembers(members.len()));
        }
        let mut seen = BTreeSet::new();
        for m in &members {
            if !seen.insert(m.as_str()) {
                return Err(ReduceError::DuplicateMember(m.clone()));
            }
        }
        if let CanonicalPolicy::Abstract(a) = &policy {
            if !seen.contains(a.as_str()) {
                return Err(ReduceError::AbstractNotMember(a.clone()));
            }
        }
        Ok(MergeRule {
            kind,
            members,
            policy,
        })
    }

    pub fn kind(&self) -> MergeKind {
        self.kind
    }

    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn policy(&self) -> &CanonicalPolicy {
        &self.policy
    }
}

/// A validated rule table: every label belongs to at most one rule and each
/// rule resolves to a single canonical label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<MergeRule>,
    canonical: Vec<String>,
    /// member label → rule index
    index: BTreeMap<String, usize>,
}

impl RuleSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(rules: Vec<MergeRule>, setting_lexicon: &BTreeSet<String>) -> Result<Self, ReduceError> {
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        for (i, rule) in rules.iter().enumerate() {
            for m in &rule.members {
                if let Some(&first) = index.get(m) {
                    return Err(ReduceError::RuleConflict {
                        label: m.clone(),
                        first,
                        second: i,
                    });
                }
                index.insert(m.clone(), i);
            }
        }
        let mut canonical = Vec::with_capacity(rules.len());
        let mut targets: BTreeMap<String, usize> = BTreeMap::new();
        for (i, rule) in rules.iter().enumerate() {
            let target = match &rule.policy {
                CanonicalPolicy::ExplicitLabel(l) | CanonicalPolicy::Abstract(l) => l.clone(),
                CanonicalPolicy::SettingSpecific => {
                    let found: Vec<String> = rule
                        .members
                        .iter()
                        .filter(|m| setting_lexicon.contains(*m))
                        .cloned()
                        .collect();
                    if found.len() != 1 {
                        return Err(ReduceError::AmbiguousCanonical { rule: i, found });
                    }
                    found[0].clone()
                }
            };
            // a fresh target must not be claimed by another rule
            if let Some(&other) = index.get(&target) {
                if other != i {
                    return Err(ReduceError::RuleConflict {
                        label: target,
                        first: other,
                        second: i,
                    });
                }
            }
            if let Some(&other) = targets.get(&target) {
                return Err(ReduceError::RuleConflict {
                    label: target,
                    first: other,
                    second: i,
                });
            }
            targets.insert(target.clone(), i);
            canonical.push(target);
        }
        Ok(RuleSet {
            rules,
            canonical,
            index,
        })
    }

    pub fn rules(&self) -> &[MergeRule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Canonical label of rule `i`.
    pub fn canonical(&self, i: usize) -> &str {
        &self.canonical[i]
    }

    /// The rule a label belongs to, if any.
    pub fn rule_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Where a label ends up after merging.
    pub fn resolve<'a>(&'a self, label: &'a str) -> &'a str {
        match self.index.get(label) {
            Some(&i) => &self.canonical[i],
            None => label,
        }
    }

    pub fn resolve_key(&self, key: &InteractionKey) -> InteractionKey {
        InteractionKey::new(
            self.resolve(&key.subject).to_string(),
            key.relation,
            self.resolve(&key.object).to_string(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    min_total: u64,
    min_sources: u64,
}

impl Thresholds {
    pub fn new(min_total: u64, min_sources: u64) -> Result<Self, ReduceError> {
        if min_total == 0 || min_sources == 0 {
            return Err(ReduceError::InvalidThresholds {
                min_total,
                min_sources,
            });
        }
        Ok(Thresholds {
            min_total,
            min_sources,
        })
    }

    pub fn min_total(&self) -> u64 {
        self.min_total
    }

    pub fn min_sources(&self) -> u64 {
        self.min_sources
    }

    pub fn admits(&self, total: u64, sources: u64) -> bool {
        total >= self.min_total && sources >= self.min_sources
    }
}

impl Default for Thresholds {
    /// Dropped below three mentions in total or below two sources.
    fn default() -> Self {
        Thresholds {
            min_total: 3,
            min_sources: 2,
        }
    }
}

/// Folds every rule's members into one record, summing per-source counts
/// pointwise, and re-keys interactions through the fold. Interactions that
/// collapse into a self-loop are removed.
pub fn apply_merges(tally: &Tally, rules: &RuleSet) -> Tally {
    let mut concepts: BTreeMap<String, ConceptRecord> = BTreeMap::new();
    for (label, rec) in tally.concepts() {
        let target = rules.resolve(label);
        match concepts.get_mut(target) {
            Some(existing) => existing.absorb(rec),
            None => {
                let mut r = rec.clone();
                r.set_label(target.to_string());
                concepts.insert(target.to_string(), r);
            }
        }
    }
    let mut interactions: BTreeMap<InteractionKey, InteractionRecord> = BTreeMap::new();
    for (key, rec) in tally.interactions() {
        let k = rules.resolve_key(key);
        if k.subject == k.object {
            continue;
        }
        match interactions.get_mut(&k) {
            Some(existing) => existing.absorb(rec),
            None => {
                let mut r = rec.clone();
                r.set_key(k.clone());
                interactions.insert(k, r);
            }
        }
    }
    Tally::from_maps(concepts, interactions)
}

/// Keeps records with `total ≥ min_total` and `sources ≥ min_sources`;
/// interactions also need both endpoints to survive.
pub fn apply_thresholds(tally: &Tally, t: &Thresholds) -> Tally {
    let concepts: BTreeMap<String, ConceptRecord> = tally
        .concepts()
        .iter()
        .filter(|(_, r)| t.admits(r.total_count(), r.source_count()))
        .map(|(k, r)| (k.clone(), r.clone()))
        .collect();
    let interactions = tally
        .interactions()
        .iter()
        .filter(|(k, r)| {
            t.admits(r.total_count(), r.source_count())
                && concepts.contains_key(&k.subject)
                && concepts.contains_key(&k.object)
        })
        .map(|(k, r)| (k.clone(), r.clone()))
        .collect();
    Tally::from_maps(concepts, interactions)
}

/// Merge, then threshold.
pub fn reduce(tally: &Tally, rules: &RuleSet, t: &Thresholds) -> (Tally, ReductionReport) {
    let merged = apply_merges(tally, rules);
    let reduced = apply_thresholds(&merged, t);
    let report = reduction_report(tally, &reduced, rules, t);
    (reduced, report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropReason {
    BelowMinTotal { total: u64, min_total: u64 },
    BelowMinSources { sources: u64, min_sources: u64 },
    DanglingEndpoint { label: String },
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropReason::BelowMinTotal { total, min_total } => {
                write!(f, "total_count {total} < min_total {min_total}")
            }
            DropReason::BelowMinSources {
                sources,
                min_sources,
            } => write!(f, "source_count {sources} < min_sources {min_sources}"),
            DropReason::DanglingEndpoint { label } => write!(f, "endpoint `{label}` was dropped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "event")]
pub enum ReductionEvent {
    MergedConcept {
        from: String,
        into: String,
        kind: MergeKind,
        total: u64,
    },
    MergedInteraction {
        from: InteractionKey,
        into: InteractionKey,
        total: u64,
    },
    /// Both endpoints were folded into the same label.
    CollapsedInteraction { from: InteractionKey, total: u64 },
    DroppedConcept {
        label: String,
        total: u64,
        sources: u64,
        reasons: Vec<DropReason>,
    },
    DroppedInteraction {
        key: InteractionKey,
        total: u64,
        sources: u64,
        reasons: Vec<DropReason>,
    },
}

impl fmt::Display for ReductionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn reasons(f: &mut fmt::Formatter<'_>, rs: &[DropReason]) -> fmt::Result {
            for (i, r) in rs.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                write!(f, "{r}")?;
            }
            Ok(())
        }
        match self {
            ReductionEvent::MergedConcept { from, into, kind, .. } => {
                write!(f, "merged {from} into {into} ({kind})")
            }
            ReductionEvent::MergedInteraction { from, into, .. } => {
                write!(f, "merged interaction {from} into {into}")
            }
            ReductionEvent::CollapsedInteraction { from, total } => {
                write!(f, "removed interaction {from} (endpoints merged into one concept; total_count {total})")
            }
            ReductionEvent::DroppedConcept {
                label, reasons: rs, ..
            } => {
                write!(f, "dropped {label} (")?;
                reasons(f, rs)?;
                f.write_str(")")
            }
            ReductionEvent::DroppedInteraction { key, reasons: rs, .. } => {
                write!(f, "dropped interaction {key} (")?;
                reasons(f, rs)?;
                f.write_str(")")
            }
        }
    }
}

/// Audit trail of a reduction: each merged or dropped record with the rule
/// or threshold responsible.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub events: Vec<ReductionEvent>,
}

impl ReductionReport {
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Explains how `before` (a raw tally) became `after` under the given rules
/// and thresholds.
pub fn reduction_report(
    before: &Tally,
    after: &Tally,
    rules: &RuleSet,
    t: &Thresholds,
) -> ReductionReport {
    let mut events = Vec::new();
    for (label, rec) in before.concepts() {
        if let Some(i) = rules.rule_of(label) {
            let into = rules.canonical(i);
            if into != label {
                events.push(ReductionEvent::MergedConcept {
                    from: label.clone(),
                    into: into.to_string(),
                    kind: rules.rules()[i].kind(),
                    total: rec.total_count(),
                });
            }
        }
    }
    for (key, rec) in before.interactions() {
        let into = rules.resolve_key(key);
        if into.subject == into.object {
            events.push(ReductionEvent::CollapsedInteraction {
                from: key.clone(),
                total: rec.total_count(),
            });
        } else if &into != key {
            events.push(ReductionEvent::MergedInteraction {
                from: key.clone(),
                into,
                total: rec.total_count(),
            });
        }
    }

    let merged = apply_merges(before, rules);
    let below = |total: u64, sources: u64| {
        let mut rs = Vec::new();
        if total < t.min_total() {
            rs.push(DropReason::BelowMinTotal {
                total,
                min_total: t.min_total(),
            });
        }
        if sources < t.min_sources() {
            rs.push(DropReason::BelowMinSources {
                sources,
                min_sources: t.min_sources(),
            });
        }
        rs
    };
    for (label, rec) in merged.concepts() {
        if after.concept(label).is_none() {
            events.push(ReductionEvent::DroppedConcept {
                label: label.clone(),
                total: rec.total_count(),
                sources: rec.source_count(),
                reasons: below(rec.total_count(), rec.source_count()),
            });
        }
    }
    for (key, rec) in merged.interactions() {
        if after.interaction(key).is_some() {
            continue;
        }
        let mut reasons = below(rec.total_count(), rec.source_count());
        for end in [&key.subject, &key.object] {
            if after.concept(end).is_none() {
                reasons.push(DropReason::DanglingEndpoint { label: end.clone() });
            }
        }
        events.push(ReductionEvent::DroppedInteraction {
            key: key.clone(),
            total: rec.total_count(),
            sources: rec.source_count(),
            reasons,
        });
    }
    ReductionReport { events }
}
