//! Corpus files.
//!
//! ```text
//! #doc E1 role=expert phase=single
//! #meta education=phd
//! The algorithm has weights.
//! \# a statement that starts with a hash
//! ```
//!
//! `#doc` opens a document, `#meta key=value` attaches metadata to the open
//! document, any other line starting with `#` is a comment and blank lines
//! are ignored. Every other line is one statement; with
//! [`SplitMode::Sentences`] each line is split into sentences first. A
//! leading backslash is dropped, so `\#...` is a statement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use enarch_core::corpus::split_sentences;
use enarch_core::{Corpus, CorpusError, Phase, Role, SourceDocument, SplitMode, Statement};

use super::{read_text, FormatError};

struct OpenDoc {
    line: usize,
    source_id: String,
    role: Role,
    phase: Phase,
    meta: BTreeMap<String, String>,
    texts: Vec<String>,
}

impl OpenDoc {
    fn finish(self, origin: &str) -> Result<SourceDocument, FormatError> {
        let statements = self
            .texts
            .into_iter()
            .enumerate()
            .map(|(index, text)| Statement { index, text })
            .collect();
        SourceDocument::new(self.source_id, self.role, self.phase, statements, self.meta).map_err(|source| {
            FormatError::Corpus {
                origin: origin.to_string(),
                line: self.line,
                source,
            }
        })
    }
}

fn parse_header(origin: &str, line: usize, rest: &str) -> Result<OpenDoc, FormatError> {
    let mut parts = rest.split_whitespace();
    let source_id = parts
        .next()
        .ok_or_else(|| FormatError::malformed(origin, line, "#doc needs a source id"))?;
    if source_id.contains('=') {
        return Err(FormatError::malformed(
            origin,
            line,
            format!("#doc needs a source id before `{source_id}`"),
        ));
    }
    let (mut role, mut phase) = (None, None);
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| FormatError::malformed(origin, line, format!("expected key=value, got `{kv}`")))?;
        match k {
            "role" if role.is_none() => {
                role = Some(Role::parse(v).ok_or_else(|| {
                    FormatError::malformed(origin, line, format!("unknown role `{v}` (expected expert or lay)"))
                })?)
            }
            "phase" if phase.is_none() => {
                phase = Some(Phase::parse(v).ok_or_else(|| {
                    FormatError::malformed(
                        origin,
                        line,
                        format!("unknown phase `{v}` (expected single, pre, recall or post)"),
                    )
                })?)
            }
            "role" | "phase" => return Err(FormatError::malformed(origin, line, format!("`{k}` given twice"))),
            _ => return Err(FormatError::malformed(origin, line, format!("unknown #doc field `{k}`"))),
        }
    }
    let role = role.ok_or_else(|| FormatError::malformed(origin, line, "#doc is missing role="))?;
    let phase = phase.ok_or_else(|| FormatError::malformed(origin, line, "#doc is missing phase="))?;
    Ok(OpenDoc {
        line,
        source_id: source_id.to_string(),
        role,
        phase,
        meta: BTreeMap::new(),
        texts: Vec::new(),
    })
}

/// Parses corpus text. `origin` names the input in diagnostics and becomes
/// the corpus label.
pub fn parse_corpus(text: &str, origin: &str, split: SplitMode) -> Result<Corpus, FormatError> {
    let mut docs = Vec::new();
    let mut ids = BTreeSet::new();
    let mut open: Option<OpenDoc> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let keyword = rest.split_whitespace().next().unwrap_or("");
            let after = rest[keyword.len()..].trim();
            match keyword {
                "doc" => {
                    if let Some(d) = open.take() {
                        docs.push(d.finish(origin)?);
                    }
                    let d = parse_header(origin, line, after)?;
                    if !ids.insert(d.source_id.clone()) {
                        return Err(FormatError::Corpus {
                            origin: origin.to_string(),
                            line,
                            source: CorpusError::DuplicateSourceId(d.source_id),
                        });
                    }
                    open = Some(d);
                }
                "meta" => {
                    let d = open
                        .as_mut()
                        .ok_or_else(|| FormatError::malformed(origin, line, "#meta before the first #doc"))?;
                    let (k, v) = after
                        .split_once('=')
                        .ok_or_else(|| FormatError::malformed(origin, line, "#meta needs key=value"))?;
                    let k = k.trim();
                    if k.is_empty() {
                        return Err(FormatError::malformed(origin, line, "#meta key is empty"));
                    }
                    d.meta.insert(k.to_string(), v.trim().to_string());
                }
                _ => {}
            }
            continue;
        }
        let body = trimmed.strip_prefix('\\').unwrap_or(trimmed).trim();
        if body.is_empty() {
            continue;
        }
        let d = open
            .as_mut()
            .ok_or_else(|| FormatError::malformed(origin, line, "statement before the first #doc"))?;
        match split {
            SplitMode::Lines => d.texts.push(body.to_string()),
            SplitMode::Sentences => d.texts.extend(split_sentences(body)),
        }
    }
    if let Some(d) = open.take() {
        docs.push(d.finish(origin)?);
    }
    if docs.is_empty() {
        return Err(FormatError::malformed(origin, last_line.max(1), "no documents"));
    }
    Corpus::new(origin, split, docs).map_err(|source| FormatError::Corpus {
        origin: origin.to_string(),
        line: 1,
        source,
    })
}

pub fn load_corpus(path: &Path, split: SplitMode) -> Result<Corpus, FormatError> {
    let text = read_text(path)?;
    let origin = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_corpus(&text, &origin, split)
}

/// Canonical text form: one statement per line, documents separated by a
/// blank line, metadata in key order. Line breaks inside a statement or a
/// metadata value are written as spaces.
pub fn write_corpus(corpus: &Corpus) -> String {
    let flat = |s: &str| s.split(['\n', '\r']).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    for (i, d) in corpus.documents().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "#doc {} role={} phase={}", d.source_id(), d.role(), d.phase());
        for (k, v) in d.meta() {
            let _ = writeln!(out, "#meta {}={}", flat(k), flat(v));
        }
        for s in d.statements() {
            let text = flat(s.text.trim());
            if text.starts_with('#') || text.starts_with('\\') {
                out.push('\\');
            }
            out.push_str(&text);
            out.push('\n');
        }
    }
    out
}
