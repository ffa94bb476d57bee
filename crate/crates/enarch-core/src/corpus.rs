//! Role- and phase-tagged explanation corpora.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Who wrote a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Expert,
    Lay,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Expert => "expert",
            Role::Lay => "lay",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s {
            "expert" => Some(Role::Expert),
            "lay" => Some(Role::Lay),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Study phase. Experts answer once (`Single`); lay users are asked before
/// the interaction, during the video recall and after.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Single,
    Pre,
    Recall,
    Post,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::Single, Phase::Pre, Phase::Recall, Phase::Post];

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Single => "single",
            Phase::Pre => "pre",
            Phase::Recall => "recall",
            Phase::Post => "post",
        }
    }

    pub fn parse(s: &str) -> Option<Phase> {
        match s {
            "single" => Some(Phase::Single),
            "pre" => Some(Phase::Pre),
            "recall" => Some(Phase::Recall),
            "post" => Some(Phase::Post),
            _ => None,
        }
    }

    pub fn allowed_for(self, role: Role) -> bool {
        match role {
            Role::Expert => self == Phase::Single,
            Role::Lay => self != Phase::Single,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How document bodies were cut into statements at ingest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMode {
    /// One statement per record line (bullet-style answers).
    #[default]
    Lines,
    /// Each record line is a block, cut at `.`, `?`, `!` and `;`.
    Sentences,
}

impl SplitMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitMode::Lines => "lines",
            SplitMode::Sentences => "sentences",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("duplicate source id `{0}`")]
    DuplicateSourceId(String),
    #[error("document `{source_id}`: role {role} cannot have phase {phase}")]
    InvalidRolePhaseCombination {
        source_id: String,
        role: Role,
        phase: Phase,
    },
    #[error("document `{source_id}`: statement {index} is empty")]
    EmptyStatement { source_id: String, index: usize },
    #[error("document `{source_id}`: statement indices must strictly increase (got {index} after {previous})")]
    NonIncreasingIndex {
        source_id: String,
        index: usize,
        previous: usize,
    },
    #[error("source id must be a non-empty token without whitespace, got `{0}`")]
    InvalidSourceId(String),
    #[error("corpus mixes expert and lay documents")]
    MixedRoles,
}

/// The co-occurrence window for interaction extraction: one sentence or bullet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub index: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceDocument {
    source_id: String,
    role: Role,
    phase: Phase,
    statements: Vec<Statement>,
    /// Carried through untouched (self-rated knowledge, education, ...).
    meta: BTreeMap<String, String>,
}

impl SourceDocument {
    pub fn new(
        source_id: impl Into<String>,
        role: Role,
        phase: Phase,
        statements: Vec<Statement>,
        meta: BTreeMap<String, String>,
    ) -> Result<Self, CorpusError> {
        let source_id = source_id.into();
        if source_id.is_empty() || source_id.chars().any(char::is_whitespace) {
            return Err(CorpusError::InvalidSourceId(source_id));
        }
        if !phase.allowed_for(role) {
            return Err(CorpusError::InvalidRolePhaseCombination {
                source_id,
                role,
                phase,
            });
        }
        let mut previous: Option<usize> = None;
        for st in &statements {
            if st.text.trim().is_empty() {
                return Err(CorpusError::EmptyStatement {
                    source_id,
                    index: st.index,
                });
            }
            if let Some(prev) = previous {
                if st.index <= prev {
                    return Err(CorpusError::NonIncreasingIndex {
                        source_id,
                        index: st.index,
                        previous: prev,
                    });
                }
            }
            previous = Some(st.index);
        }
        Ok(SourceDocument {
            source_id,
            role,
            phase,
            statements,
            meta,
        })
    }

    /// Builds a document from statement texts, numbering them from zero.
    pub fn from_texts<I, S>(
        source_id: impl Into<String>,
        role: Role,
        phase: Phase,
        texts: I,
    ) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let statements = texts
            .into_iter()
            .enumerate()
            .map(|(index, t)| Statement {
                index,
                text: t.into(),
            })
            .collect();
        Self::new(source_id, role, phase, statements, BTreeMap::new())
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    label: String,
    split: SplitMode,
    documents: Vec<SourceDocument>,
}

impl Corpus {
    pub fn new(
        label: impl Into<String>,
        split: SplitMode,
        documents: Vec<SourceDocument>,
    ) -> Result<Self, CorpusError> {
        let mut seen = BTreeSet::new();
        for doc in &documents {
            if !seen.insert(doc.source_id.as_str()) {
                return Err(CorpusError::DuplicateSourceId(doc.source_id.clone()));
            }
        }
        Ok(Corpus {
            label: label.into(),
            split,
            documents,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn split_mode(&self) -> SplitMode {
        self.split
    }

    pub fn documents(&self) -> &[SourceDocument] {
        &self.documents
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    /// The single role shared by every document, `None` for an empty corpus.
    pub fn role(&self) -> Result<Option<Role>, CorpusError> {
        let mut role = None;
        for doc in &self.documents {
            match role {
                None => role = Some(doc.role),
                Some(r) if r != doc.role => return Err(CorpusError::MixedRoles),
                _ => {}
            }
        }
        Ok(role)
    }

    /// Phases present, in canonical order.
    pub fn phases(&self) -> Vec<Phase> {
        let set: BTreeSet<Phase> = self.documents.iter().map(|d| d.phase).collect();
        set.into_iter().collect()
    }

    /// Splits a mixed corpus into its expert and lay parts.
    pub fn split_by_role(&self) -> (Corpus, Corpus) {
        let pick = |role: Role| Corpus {
            label: self.label.clone(),
            split: self.split,
            documents: self
                .documents
                .iter()
                .filter(|d| d.role == role)
                .cloned()
                .collect(),
        };
        (pick(Role::Expert), pick(Role::Lay))
    }
}

/// Keeps the documents of one phase, in their original order.
pub fn filter_phase(corpus: &Corpus, phase: Phase) -> Corpus {
    Corpus {
        label: corpus.label.clone(),
        split: corpus.split,
        documents: corpus
            .documents
            .iter()
            .filter(|d| d.phase == phase)
            .cloned()
            .collect(),
    }
}

/// Cuts a block of prose into sentences at `.`, `?`, `!` and `;`.
///
/// A `.` only ends a sentence when followed by whitespace or the end of the
/// block, so decimals like `0.5` stay intact. Empty pieces are dropped.
pub fn split_sentences(block: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut chars = block.chars().peekable();
    while let Some(c) = chars.next() {
        current.push(c);
        let ends = match c {
            '?' | '!' | ';' => true,
            '.' => chars.peek().is_none_or(|n| n.is_whitespace()),
            _ => false,
        };
        if ends {
            let t = current.trim();
            if !t.is_empty() {
                out.push(t.to_string());
            }
            current.clear();
        }
    }
    let t = current.trim();
    if !t.is_empty() {
        out.push(t.to_string());
    }
    out
}
