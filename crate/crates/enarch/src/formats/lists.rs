//! Small rule files: stoplist, relation lexicon, setting lexicon, merge
//! rules and part-of annotations. All of them allow `#` comments and blank
//! lines. Labels in the setting lexicon, merge rules and part-of files are
//! normalized the same way extracted concepts are.

use std::collections::BTreeSet;

use enarch_core::reduce::ReduceError;
use enarch_core::{CanonicalPolicy, ExtractConfig, MergeKind, MergeRule, Relation, RelationLexicon, RuleSet, Stoplist};

use super::{content_lines, FormatError};

/// One word per line.
pub fn parse_stoplist(text: &str, origin: &str) -> Result<Stoplist, FormatError> {
    let mut out = Stoplist::new();
    for (line, body) in content_lines(text) {
        if body.split_whitespace().count() != 1 {
            return Err(FormatError::malformed(origin, line, "expected a single word"));
        }
        out.insert(body);
    }
    Ok(out)
}

/// `verb relation` per line, relation one of has, gets, produces, does.
pub fn parse_lexicon(text: &str, origin: &str) -> Result<RelationLexicon, FormatError> {
    let mut out = RelationLexicon::new();
    for (line, body) in content_lines(text) {
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [verb, rel] = fields[..] else {
            return Err(FormatError::malformed(origin, line, "expected `verb<TAB>relation`"));
        };
        let relation = Relation::parse(rel).ok_or_else(|| {
            FormatError::malformed(
                origin,
                line,
                format!("unknown relation `{rel}` (expected has, gets, produces or does)"),
            )
        })?;
        out.insert(&verb.to_lowercase(), relation)
            .map_err(|e| FormatError::malformed(origin, line, e.to_string()))?;
    }
    Ok(out)
}

/// One label per line.
pub fn parse_setting(text: &str, cfg: &ExtractConfig) -> BTreeSet<String> {
    content_lines(text).map(|(_, l)| cfg.normalize_label(l)).collect()
}

/// `child -> parent` per line.
pub fn parse_part_of(text: &str, origin: &str, cfg: &ExtractConfig) -> Result<Vec<(String, String)>, FormatError> {
    let mut out = Vec::new();
    for (line, body) in content_lines(text) {
        let (child, parent) = body
            .split_once("->")
            .ok_or_else(|| FormatError::malformed(origin, line, "expected `child -> parent`"))?;
        let (child, parent) = (cfg.normalize_label(child), cfg.normalize_label(parent));
        if child.is_empty() || parent.is_empty() {
            return Err(FormatError::malformed(origin, line, "empty label"));
        }
        if child == parent {
            return Err(FormatError::malformed(origin, line, format!("`{child}` is part of itself")));
        }
        out.push((child, parent));
    }
    Ok(out)
}

/// ```text
/// general: motion, movement -> movement
/// contextual: behavior, action -> setting
/// morphological: analyse, analysis -> abstract: analysis
/// ```
///
/// The target after `->` is a label (a member or a fresh one), `setting`
/// (the member found in the setting lexicon) or `abstract: <member>`.
pub fn parse_merge_rules(
    text: &str,
    origin: &str,
    cfg: &ExtractConfig,
    setting: &BTreeSet<String>,
) -> Result<RuleSet, FormatError> {
    let mut rules = Vec::new();
    let mut lines = Vec::new();
    for (line, body) in content_lines(text) {
        let (kind, rest) = body
            .split_once(':')
            .ok_or_else(|| FormatError::malformed(origin, line, "expected `<kind>: members -> target`"))?;
        let kind = match kind.trim() {
            "morphological" => MergeKind::Morphological,
            "general" => MergeKind::GeneralSynonym,
            "contextual" => MergeKind::ContextualSynonym,
            other => {
                return Err(FormatError::malformed(
                    origin,
                    line,
                    format!("unknown merge kind `{other}` (expected morphological, general or contextual)"),
                ))
            }
        };
        let (members, target) = rest
            .split_once("->")
            .ok_or_else(|| FormatError::malformed(origin, line, "missing `-> target`"))?;
        let members: Vec<String> = members.split(',').map(|m| cfg.normalize_label(m)).collect();
        if members.iter().any(String::is_empty) {
            return Err(FormatError::malformed(origin, line, "empty member label"));
        }
        let target = target.trim();
        let policy = if target == "setting" {
            CanonicalPolicy::SettingSpecific
        } else if let Some(a) = target.strip_prefix("abstract:") {
            CanonicalPolicy::Abstract(cfg.normalize_label(a))
        } else {
            let label = cfg.normalize_label(target);
            if label.is_empty() {
                return Err(FormatError::malformed(origin, line, "empty target label"));
            }
            CanonicalPolicy::ExplicitLabel(label)
        };
        let rule = MergeRule::new(kind, members, policy).map_err(|source| FormatError::Rule {
            origin: origin.to_string(),
            line,
            source,
        })?;
        rules.push(rule);
        lines.push(line);
    }
    RuleSet::new(rules, setting).map_err(|source| {
        let rule = match &source {
            ReduceError::RuleConflict { second, .. } => *second,
            ReduceError::AmbiguousCanonical { rule, .. } => *rule,
            _ => 0,
        };
        FormatError::Rule {
            origin: origin.to_string(),
            line: lines.get(rule).copied().unwrap_or(1),
            source,
        }
    })
}
