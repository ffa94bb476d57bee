//! Expert map × lay map → knowledge areas A–D and the explanandum.
//!
//! | area | meaning                                   | side   |
//! |------|-------------------------------------------|--------|
//! | A    | irrelevant to the enabling architecture   | lay    |
//! | B    | known, same context and interpretation    | both   |
//! | C    | misunderstood, wrong context/assumptions  | both   |
//! | D    | missing from the lay mental model         | expert |
//!
//! The explanandum is C ∪ D on the expert side. Whether a pair of elements
//! is known or misunderstood is an analyst's verdict supplied as
//! [`AlignmentRecord`]s; [`default_alignments`] bootstraps exact label
//! matches.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::cmap::ConceptMap;
pub use crate::cmap::Element;
use crate::corpus::{Corpus, Phase, Role};
use crate::extract::{concept_labels, ExtractConfig};
use crate::reduce::RuleSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Aligned,
    Misconceived,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Aligned => "aligned",
            Verdict::Misconceived => "misconceived",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Area {
    /// Irrelevant: only in the lay map.
    A,
    /// Known.
    B,
    /// Misunderstood.
    C,
    /// Missing: only in the expert map.
    D,
}

impl Area {
    pub const ALL: [Area; 4] = [Area::A, Area::B, Area::C, Area::D];

    pub fn is_explanandum(self) -> bool {
        matches!(self, Area::C | Area::D)
    }

    pub fn name(self) -> &'static str {
        match self {
            Area::A => "irrelevant",
            Area::B => "known",
            Area::C => "misunderstood",
            Area::D => "missing",
        }
    }
}

impl fmt::Display for Area {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Area::A => "A",
            Area::B => "B",
            Area::C => "C",
            Area::D => "D",
        };
        f.write_str(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Expert,
    Lay,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Expert => "expert",
            Side::Lay => "lay",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthesisError {
    #[error("{side} label `{label}` in alignment is not in the {side} map")]
    UnknownLabelInAlignment { side: Side, label: String },
    #[error("alignment pair ({expert}, {lay}) is listed more than once")]
    ConflictingVerdicts { expert: String, lay: String },
    #[error("alignment record needs at least one label")]
    EmptyAlignment,
    #[error("alignment verdict on ({0}) needs both an expert and a lay label")]
    VerdictWithoutPair(String),
    #[error("alignment pairs a concept with an edge: ({expert}, {lay})")]
    KindMismatch { expert: String, lay: String },
    #[error("expected a {expected} map, got a {actual} map")]
    RoleMismatch { expected: Role, actual: Role },
}

/// One analyst judgement linking an expert element to a lay element.
/// One-sided records carry probe notes and do not affect classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentRecord {
    expert: Option<Element>,
    lay: Option<Element>,
    verdict: Option<Verdict>,
    evidence: String,
}

impl AlignmentRecord {
    pub fn new(
        expert: Option<Element>,
        lay: Option<Element>,
        verdict: Option<Verdict>,
        evidence: impl Into<String>,
    ) -> Result<Self, SynthesisError> {
        match (&expert, &lay) {
            (None, None) => return Err(SynthesisError::EmptyAlignment),
            (Some(e), Some(l)) if e.is_concept() != l.is_concept() => {
                return Err(SynthesisError::KindMismatch {
                    expert: e.to_string(),
                    lay: l.to_string(),
                })
            }
            (Some(one), None) | (None, Some(one)) if verdict.is_some() => {
                return Err(SynthesisError::VerdictWithoutPair(one.to_string()))
            }
            _ => {}
        }
        Ok(AlignmentRecord {
            expert,
            lay,
            verdict,
            evidence: evidence.into(),
        })
    }

    pub fn pair(expert: Element, lay: Element, verdict: Verdict) -> Result<Self, SynthesisError> {
        Self::new(Some(expert), Some(lay), Some(verdict), "")
    }

    pub fn concepts(expert: &str, lay: &str, verdict: Verdict) -> Self {
        AlignmentRecord {
            expert: Some(Element::concept(expert)),
            lay: Some(Element::concept(lay)),
            verdict: Some(verdict),
            evidence: String::new(),
        }
    }

    pub fn with_evidence(mut self, evidence: impl Into<String>) -> Self {
        self.evidence = evidence.into();
        self
    }

    pub fn expert(&self) -> Option<&Element> {
        self.expert.as_ref()
    }

    pub fn lay(&self) -> Option<&Element> {
        self.lay.as_ref()
    }

    pub fn verdict(&self) -> Option<Verdict> {
        self.verdict
    }

    pub fn evidence(&self) -> &str {
        &self.evidence
    }

    fn judged_pair(&self) -> Option<(&Element, &Element, Verdict)> {
        match (&self.expert, &self.lay, self.verdict) {
            (Some(e), Some(l), Some(v)) => Some((e, l, v)),
            _ => None,
        }
    }
}

mod pairs {
    use alloc::collections::BTreeMap;
    use alloc::vec::Vec;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{Area, Element};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        element: Element,
        area: Area,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<Element, Area>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m
            .iter()
            .map(|(e, a)| Entry {
                element: e.clone(),
                area: *a,
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Element, Area>, D::Error> {
        let v: Vec<Entry> = Vec::deserialize(d)?;
        let mut m = BTreeMap::new();
        for e in v {
            if m.insert(e.element, e.area).is_some() {
                return Err(serde::de::Error::custom("element assigned twice"));
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(with = "pairs")]
    pub expert_assignments: BTreeMap<Element, Area>,
    #[serde(with = "pairs")]
    pub lay_assignments: BTreeMap<Element, Area>,
    pub alignment_used: Vec<AlignmentRecord>,
    /// Edge pairs known because both endpoints and the relation align.
    pub derived_edge_pairs: Vec<(Element, Element)>,
    pub diagnostics: Vec<String>,
}

impl Classification {
    pub fn area(&self, side: Side, element: &Element) -> Option<Area> {
        match side {
            Side::Expert => self.expert_assignments.get(element).copied(),
            Side::Lay => self.lay_assignments.get(element).copied(),
        }
    }

    pub fn side(&self, side: Side) -> &BTreeMap<Element, Area> {
        match side {
            Side::Expert => &self.expert_assignments,
            Side::Lay => &self.lay_assignments,
        }
    }

    pub fn elements_in(&self, side: Side, area: Area) -> BTreeSet<Element> {
        self.side(side)
            .iter()
            .filter(|(_, a)| **a == area)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Expert elements in C or D.
    pub fn explanandum_elements(&self) -> BTreeSet<Element> {
        self.expert_assignments
            .iter()
            .filter(|(_, a)| a.is_explanandum())
            .map(|(e, _)| e.clone())
            .collect()
    }
}

fn check_alignments(
    expert: &ConceptMap,
    lay: &ConceptMap,
    alignments: &[AlignmentRecord],
) -> Result<(), SynthesisError> {
    let mut pairs = BTreeSet::new();
    for rec in alignments {
        if let Some(e) = &rec.expert {
            if !expert.contains(e) {
                return Err(SynthesisError::UnknownLabelInAlignment {
                    side: Side::Expert,
                    label: e.to_string(),
                });
            }
        }
        if let Some(l) = &rec.lay {
            if !lay.contains(l) {
                return Err(SynthesisError::UnknownLabelInAlignment {
                    side: Side::Lay,
                    label: l.to_string(),
                });
            }
        }
        if let (Some(e), Some(l)) = (&rec.expert, &rec.lay) {
            if !pairs.insert((e, l)) {
                return Err(SynthesisError::ConflictingVerdicts {
                    expert: e.to_string(),
                    lay: l.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Assigns every element of both maps to exactly one area.
///
/// 1. Pairs judged misconceived → C on both sides.
/// 2. Pairs judged aligned → B on both sides (C wins if an element is in both).
/// 3. An unassigned edge whose endpoints are aligned concept pairs and whose
///    relation matches a lay edge → B on both sides.
/// 4. Remaining expert elements → D, remaining lay elements → A.
///
/// The result does not depend on the order of `alignments`.
pub fn classify(
    expert: &ConceptMap,
    lay: &ConceptMap,
    alignments: &[AlignmentRecord],
) -> Result<Classification, SynthesisError> {
    check_alignments(expert, lay, alignments)?;
    let mut ex: BTreeMap<Element, Area> = BTreeMap::new();
    let mut ly: BTreeMap<Element, Area> = BTreeMap::new();

    for (e, l, v) in alignments.iter().filter_map(AlignmentRecord::judged_pair) {
        if v == Verdict::Misconceived {
            ex.insert(e.clone(), Area::C);
            ly.insert(l.clone(), Area::C);
        }
    }
    let mut aligned_concepts: BTreeSet<(&str, &str)> = BTreeSet::new();
    for (e, l, v) in alignments.iter().filter_map(AlignmentRecord::judged_pair) {
        if v == Verdict::Aligned {
            ex.entry(e.clone()).or_insert(Area::B);
            ly.entry(l.clone()).or_insert(Area::B);
            if let (Element::Concept(a), Element::Concept(b)) = (e, l) {
                aligned_concepts.insert((a, b));
            }
        }
    }

    let mut derived = Vec::new();
    for ee in expert.edges() {
        for le in lay.edges() {
            if ee.relation == le.relation
                && aligned_concepts.contains(&(ee.subject.as_str(), le.subject.as_str()))
                && aligned_concepts.contains(&(ee.object.as_str(), le.object.as_str()))
            {
                let (a, b) = (ee.element(), le.element());
                ex.entry(a.clone()).or_insert(Area::B);
                ly.entry(b.clone()).or_insert(Area::B);
                derived.push((a, b));
            }
        }
    }

    let mut diagnostics = Vec::new();
    for el in expert.elements() {
        ex.entry(el).or_insert(Area::D);
    }
    for el in lay.elements() {
        if let Element::Concept(label) = &el {
            if ex.get(&el) == Some(&Area::D) && !ly.contains_key(&el) {
                diagnostics.push(format!(
                    "`{label}` is in both maps but unaligned: expert side D, lay side A"
                ));
            }
        }
        ly.entry(el).or_insert(Area::A);
    }

    Ok(Classification {
        expert_assignments: ex,
        lay_assignments: ly,
        alignment_used: alignments.to_vec(),
        derived_edge_pairs: derived,
        diagnostics,
    })
}

/// Aligned records for every concept label present in both maps.
pub fn default_alignments(expert: &ConceptMap, lay: &ConceptMap) -> Vec<AlignmentRecord> {
    expert
        .nodes()
        .iter()
        .filter(|n| lay.node(&n.label).is_some())
        .map(|n| {
            AlignmentRecord::concepts(&n.label, &n.label, Verdict::Aligned)
                .with_evidence("exact label match")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingEntry {
    pub element: Element,
    pub total_count: u64,
    pub source_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisunderstandingEntry {
    pub expert: Element,
    pub lay: Element,
    pub evidence: String,
    pub total_count: u64,
}

/// What has to be explained: missing elements (D) and misunderstandings (C)
/// with their lay-side counterparts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplanandumReport {
    pub missing: Vec<MissingEntry>,
    pub misunderstood: Vec<MisunderstandingEntry>,
}

impl ExplanandumReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.misunderstood.is_empty()
    }

    /// Expert elements named by the report.
    pub fn elements(&self) -> BTreeSet<Element> {
        self.missing
            .iter()
            .map(|m| m.element.clone())
            .chain(self.misunderstood.iter().map(|m| m.expert.clone()))
            .collect()
    }
}

impl fmt::Display for ExplanandumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Missing (D): {}", self.missing.len())?;
        for m in &self.missing {
            writeln!(
                f,
                "  {} (total {}, sources {})",
                m.element, m.total_count, m.source_count
            )?;
        }
        writeln!(f, "Misunderstood (C): {}", self.misunderstood.len())?;
        for m in &self.misunderstood {
            write!(f, "  {} <-> {} (total {})", m.expert, m.lay, m.total_count)?;
            if !m.evidence.is_empty() {
                write!(f, ": {}", m.evidence)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Entries ordered by expert-side total count (descending), then element.
pub fn explanandum(classification: &Classification, expert: &ConceptMap) -> ExplanandumReport {
    let counts = |e: &Element| expert.counts(e).unwrap_or((0, 0));
    let mut missing: Vec<MissingEntry> = classification
        .expert_assignments
        .iter()
        .filter(|(_, a)| **a == Area::D)
        .map(|(e, _)| {
            let (total_count, source_count) = counts(e);
            MissingEntry {
                element: e.clone(),
                total_count,
                source_count,
            }
        })
        .collect();
    missing.sort_by(|a, b| b.total_count.cmp(&a.total_count).then_with(|| a.element.cmp(&b.element)));

    let mut misunderstood: Vec<MisunderstandingEntry> = classification
        .alignment_used
        .iter()
        .filter_map(AlignmentRecord::judged_pair)
        .filter(|(_, _, v)| *v == Verdict::Misconceived)
        .map(|(e, l, _)| MisunderstandingEntry {
            expert: e.clone(),
            lay: l.clone(),
            evidence: String::new(),
            total_count: counts(e).0,
        })
        .collect();
    // evidence lookup kept separate so ordering ignores it
    for m in &mut misunderstood {
        if let Some(rec) = classification
            .alignment_used
            .iter()
            .find(|r| r.expert.as_ref() == Some(&m.expert) && r.lay.as_ref() == Some(&m.lay))
        {
            m.evidence = rec.evidence.clone();
        }
    }
    misunderstood.sort_by(|a, b| {
        b.total_count
            .cmp(&a.total_count)
            .then_with(|| a.expert.cmp(&b.expert))
            .then_with(|| a.lay.cmp(&b.lay))
    });
    ExplanandumReport {
        missing,
        misunderstood,
    }
}

/// Change between two lay maps of the same participants.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseDelta {
    pub added_concepts: Vec<String>,
    pub removed_concepts: Vec<String>,
    pub persisting_concepts: Vec<String>,
    pub added_edges: Vec<Element>,
    pub removed_edges: Vec<Element>,
    pub persisting_edges: Vec<Element>,
}

impl PhaseDelta {
    /// No concept or edge was added or removed.
    pub fn is_empty(&self) -> bool {
        self.added_concepts.is_empty()
            && self.removed_concepts.is_empty()
            && self.added_edges.is_empty()
            && self.removed_edges.is_empty()
    }
}

impl fmt::Display for PhaseDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sections: [(&str, Vec<String>); 6] = [
            ("added concepts", self.added_concepts.clone()),
            ("removed concepts", self.removed_concepts.clone()),
            ("persisting concepts", self.persisting_concepts.clone()),
            ("added edges", self.added_edges.iter().map(|e| e.to_string()).collect()),
            ("removed edges", self.removed_edges.iter().map(|e| e.to_string()).collect()),
            ("persisting edges", self.persisting_edges.iter().map(|e| e.to_string()).collect()),
        ];
        for (title, items) in sections {
            writeln!(f, "{title}: {}", items.len())?;
            for i in items {
                writeln!(f, "  {i}")?;
            }
        }
        Ok(())
    }
}

pub fn phase_delta(pre: &ConceptMap, post: &ConceptMap) -> Result<PhaseDelta, SynthesisError> {
    for m in [pre, post] {
        if m.role() != Role::Lay {
            return Err(SynthesisError::RoleMismatch {
                expected: Role::Lay,
                actual: m.role(),
            });
        }
    }
    let concepts = |m: &ConceptMap| -> BTreeSet<String> { m.nodes().iter().map(|n| n.label.clone()).collect() };
    let edges = |m: &ConceptMap| -> BTreeSet<Element> { m.edges().iter().map(|e| e.element()).collect() };
    let (c0, c1) = (concepts(pre), concepts(post));
    let (e0, e1) = (edges(pre), edges(post));
    Ok(PhaseDelta {
        added_concepts: c1.difference(&c0).cloned().collect(),
        removed_concepts: c0.difference(&c1).cloned().collect(),
        persisting_concepts: c0.intersection(&c1).cloned().collect(),
        added_edges: e1.difference(&e0).cloned().collect(),
        removed_edges: e0.difference(&e1).cloned().collect(),
        persisting_edges: e0.intersection(&e1).cloned().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeEntry {
    pub label: String,
    pub mentioned_by: Vec<String>,
    /// Nobody mentioned the concept.
    pub flagged: bool,
}

/// Which recall-phase lay sources mentioned each expert concept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeCoverage {
    pub sources: Vec<String>,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeCoverage {
    pub fn entry(&self, label: &str) -> Option<&ProbeEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

impl fmt::Display for ProbeCoverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.sources.len();
        for e in &self.entries {
            write!(f, "{}: {}/{}", e.label, e.mentioned_by.len(), n)?;
            if e.flagged {
                f.write_str(" [never mentioned]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A lay source covers an expert concept when one of its candidate concept
/// labels, after folding through the merge rules, equals the expert label.
/// Documents outside the recall phase are ignored.
pub fn probe_coverage(
    expert: &ConceptMap,
    lay_corpus: &Corpus,
    cfg: &ExtractConfig,
    rules: &RuleSet,
) -> ProbeCoverage {
    if expert.is_empty() {
        return ProbeCoverage::default();
    }
    let mut sources = Vec::new();
    let mut mentioned: BTreeMap<&str, Vec<String>> =
        expert.nodes().iter().map(|n| (n.label.as_str(), Vec::new())).collect();
    for doc in lay_corpus.documents().iter().filter(|d| d.phase() == Phase::Recall) {
        sources.push(doc.source_id().to_string());
        let labels: BTreeSet<String> = doc
            .statements()
            .iter()
            .flat_map(|s| concept_labels(&s.text, cfg))
            .map(|l| rules.resolve(&l).to_string())
            .collect();
        for (label, by) in mentioned.iter_mut() {
            if labels.contains(*label) {
                by.push(doc.source_id().to_string());
            }
        }
    }
    let entries = mentioned
        .into_iter()
        .map(|(label, mentioned_by)| ProbeEntry {
            label: label.to_string(),
            flagged: mentioned_by.is_empty(),
            mentioned_by,
        })
        .collect();
    ProbeCoverage { sources, entries }
}
