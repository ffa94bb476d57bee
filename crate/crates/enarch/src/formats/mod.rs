//! Line-oriented text formats and the JSON/CSV artifact formats.

use std::fs;
use std::path::Path;

use enarch_core::{CorpusError, ReduceError, SynthesisError};

pub mod alignment;
pub mod corpus;
pub mod json;
pub mod lists;
pub mod tally_csv;

pub use alignment::{parse_alignment, write_alignment_skeleton};
pub use corpus::{load_corpus, parse_corpus, write_corpus};
pub use json::{export_json, import_json, MapDocument, SCHEMA_VERSION};
pub use lists::{parse_lexicon, parse_merge_rules, parse_part_of, parse_setting, parse_stoplist};
pub use tally_csv::write_tally_csv;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}: malformed record: {reason}")]
    MalformedRecord {
        origin: String,
        line: usize,
        reason: String,
    },
    #[error("{origin}:{line}: {source}")]
    Corpus {
        origin: String,
        line: usize,
        #[source]
        source: CorpusError,
    },
    #[error("{origin}:{line}: {source}")]
    Rule {
        origin: String,
        line: usize,
        #[source]
        source: ReduceError,
    },
    #[error("{origin}:{line}: {source}")]
    Alignment {
        origin: String,
        line: usize,
        #[source]
        source: SynthesisError,
    },
    #[error("{origin}: schema violation at {pointer}: {reason}")]
    SchemaViolation {
        origin: String,
        pointer: String,
        reason: String,
    },
}

impl FormatError {
    pub(crate) fn malformed(origin: &str, line: usize, reason: impl Into<String>) -> Self {
        FormatError::MalformedRecord {
            origin: origin.to_string(),
            line,
            reason: reason.into(),
        }
    }

    /// Line number, for errors that point into a text file.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::MalformedRecord { line, .. }
            | FormatError::Corpus { line, .. }
            | FormatError::Rule { line, .. }
            | FormatError::Alignment { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(text.strip_prefix('\u{feff}').map(str::to_string).unwrap_or(text))
}

/// Numbered lines with `#` comments and surrounding whitespace removed;
/// blank lines skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let body = body.trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}
