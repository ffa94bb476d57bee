//! Alignment files.
//!
//! ```text
//! align: randomness = randomness aligned # both mention noise
//! align: reward = rating misconceived # treats reward as a grade
//! align: (algorithm | has | weight) = (algorithm | has | weight) aligned
//! align: learning = - # expert-only note
//! ```
//!
//! `-` marks an absent side; one-sided records are notes and carry no
//! verdict. Text after `#` is the evidence. Lines starting with `#` are
//! comments.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use enarch_core::{AlignmentRecord, ConceptMap, Element, ExtractConfig, Verdict};

use super::FormatError;

fn parse_side(s: &str, cfg: &ExtractConfig) -> Result<Option<Element>, String> {
    let s = s.trim();
    if s == "-" {
        return Ok(None);
    }
    if s.is_empty() {
        return Err("empty label (use `-` for an absent side)".into());
    }
    match Element::parse(s).ok_or_else(|| format!("cannot parse element `{s}`"))? {
        Element::Concept(l) => {
            let label = cfg.normalize_label(&l);
            if label.is_empty() {
                return Err(format!("`{s}` normalizes to an empty label"));
            }
            Ok(Some(Element::Concept(label)))
        }
        Element::Edge {
            subject,
            relation,
            object,
        } => Ok(Some(Element::Edge {
            subject: cfg.normalize_label(&subject),
            relation,
            object: cfg.normalize_label(&object),
        })),
    }
}

pub fn parse_alignment(text: &str, origin: &str, cfg: &ExtractConfig) -> Result<Vec<AlignmentRecord>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let body = trimmed
            .strip_prefix("align:")
            .ok_or_else(|| FormatError::malformed(origin, line, "expected `align: expert = lay [verdict]`"))?;
        let (body, evidence) = match body.split_once('#') {
            Some((b, e)) => (b.trim(), e.trim()),
            None => (body.trim(), ""),
        };
        let (expert, rest) = body
            .split_once('=')
            .ok_or_else(|| FormatError::malformed(origin, line, "missing `=` between expert and lay side"))?;
        let rest = rest.trim();
        let (lay, verdict) = match rest.rsplit_once(char::is_whitespace) {
            Some((l, "aligned")) => (l, Some(Verdict::Aligned)),
            Some((l, "misconceived")) => (l, Some(Verdict::Misconceived)),
            _ => (rest, None),
        };
        let expert = parse_side(expert, cfg).map_err(|r| FormatError::malformed(origin, line, r))?;
        let lay = parse_side(lay, cfg).map_err(|r| FormatError::malformed(origin, line, r))?;
        if expert.is_some() && lay.is_some() && verdict.is_none() {
            return Err(FormatError::malformed(
                origin,
                line,
                "a pair needs a verdict (aligned or misconceived)",
            ));
        }
        let rec = AlignmentRecord::new(expert, lay, verdict, evidence).map_err(|source| FormatError::Alignment {
            origin: origin.to_string(),
            line,
            source,
        })?;
        out.push(rec);
    }
    Ok(out)
}

fn write_side(out: &mut String, e: Option<&Element>) {
    match e {
        Some(e) => {
            let _ = write!(out, "{e}");
        }
        None => out.push('-'),
    }
}

pub fn write_record(out: &mut String, rec: &AlignmentRecord) {
    out.push_str("align: ");
    write_side(out, rec.expert());
    out.push_str(" = ");
    write_side(out, rec.lay());
    if let Some(v) = rec.verdict() {
        let _ = write!(out, " {}", v.as_str());
    }
    if !rec.evidence().is_empty() {
        let _ = write!(out, " # {}", rec.evidence());
    }
    out.push('\n');
}

/// Editable starting point: the given records, then every concept label
/// that no record mentions, as comments.
pub fn write_alignment_skeleton(
    expert: &ConceptMap,
    lay: &ConceptMap,
    records: &[AlignmentRecord],
    config_hash: &str,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# config_hash: {config_hash}");
    let _ = writeln!(out, "# expert map: {}  lay map: {}", expert.map_id(), lay.map_id());
    out.push_str("# verdicts: aligned | misconceived; `-` marks an absent side\n");
    for r in records {
        write_record(&mut out, r);
    }
    let used = |side: fn(&AlignmentRecord) -> Option<&Element>| -> BTreeSet<String> {
        records
            .iter()
            .filter_map(side)
            .filter_map(|e| match e {
                Element::Concept(l) => Some(l.clone()),
                Element::Edge { .. } => None,
            })
            .collect()
    };
    let (ex_used, lay_used) = (used(AlignmentRecord::expert), used(AlignmentRecord::lay));
    for n in expert.nodes().iter().filter(|n| !ex_used.contains(&n.label)) {
        let _ = writeln!(out, "# unmatched expert: {}", n.label);
    }
    for n in lay.nodes().iter().filter(|n| !lay_used.contains(&n.label)) {
        let _ = writeln!(out, "# unmatched lay: {}", n.label);
    }
    out
}
