//! Rule-based reduction of explanation corpora into concept maps, and the
//! A–D knowledge-area synthesis of an expert map against a lay-user map.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, hashing and
//! the command line live in the `enarch` companion crate.
//!
//! Pipeline, in order:
//!
//! 1. [`corpus`]: role/phase tagged documents split into statements.
//! 2. [`extract`]: function-word stripping, plural folding, n-gram concept
//!    spotting and ⟨concept, verb, concept⟩ interaction spotting, with a
//!    per-source and a corpus-wide frequency ledger.
//! 3. [`reduce`]: synonym merge rules, then the frequency thresholds.
//! 4. [`cmap`]: the typed concept map and its DOT export ([`dot`] also holds
//!    a small DOT grammar checker).
//! 5. [`synthesis`]: classification into areas A–D, the explanandum, phase
//!    deltas and probe coverage.

#![no_std]

extern crate alloc;

pub mod cmap;
pub mod corpus;
pub mod dot;
pub mod extract;
pub mod freq;
pub mod reduce;
pub mod synthesis;

pub use cmap::{ConceptMap, ConceptNode, Edge, EdgeRelation, EdgeStyle, MapError};
pub use corpus::{Corpus, CorpusError, Phase, Role, SourceDocument, SplitMode, Statement};
pub use extract::{
    ConceptRecord, ExtractConfig, ExtractError, InteractionKey, InteractionRecord, Lexeme,
    Normalizer, Relation, RelationLexicon, Stoplist, Tally,
};
pub use freq::Frequency;
pub use reduce::{
    CanonicalPolicy, MergeKind, MergeRule, ReduceError, ReductionReport, RuleSet, Thresholds,
};
pub use synthesis::{
    AlignmentRecord, Area, Classification, Element, ExplanandumReport, PhaseDelta, ProbeCoverage,
    SynthesisError, Verdict,
};
