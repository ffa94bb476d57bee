//! Plural and inflection folding.
//!
//! A token is lowercased, looked up in an exception table (irregular
//! plurals), and otherwise run through an ordered suffix table where the
//! first matching row wins. The result is looked up in the exception table
//! once more, so `childrens` lands on `child` and not on `children`.
//!
//! English suffix table, in match order:
//!
//! | suffix | becomes | min. length |
//! |--------|---------|-------------|
//! | `ies`  | `y`     | 5           |
//! | `sses` | `ss`    | 5           |
//! | `shes` | `sh`    | 5           |
//! | `ches` | `ch`    | 5           |
//! | `xes`  | `x`     | 4           |
//! | `ss`   | (keep)  | -           |
//! | `us`   | (keep)  | -           |
//! | `is`   | (keep)  | -           |
//! | `s`    | (drop)  | 4           |

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

const ENGLISH_EXCEPTIONS: &str = include_str!("../../data/english_irregular_plurals.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    /// `None` keeps the word unchanged and stops the table walk.
    pub replacement: Option<String>,
    /// Minimum word length in characters for the row to apply.
    pub min_len: usize,
}

impl SuffixRule {
    pub fn replace(suffix: &str, replacement: &str, min_len: usize) -> Self {
        SuffixRule {
            suffix: suffix.to_string(),
            replacement: Some(replacement.to_string()),
            min_len,
        }
    }

    pub fn keep(suffix: &str) -> Self {
        SuffixRule {
            suffix: suffix.to_string(),
            replacement: None,
            min_len: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizerError {
    #[error("exception table line {line}: expected `plural<TAB>singular`")]
    MalformedException { line: usize },
    #[error("exception `{from}` -> `{to}` is not stable: `{to}` normalizes to `{again}`")]
    UnstableException {
        from: String,
        to: String,
        again: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalizer {
    rules: Vec<SuffixRule>,
    exceptions: BTreeMap<String, String>,
}

impl Normalizer {
    /// Builds a normalizer and checks that every exception target is a fixed
    /// point, which is what makes `normalize` idempotent.
    pub fn new(
        rules: Vec<SuffixRule>,
        exceptions: BTreeMap<String, String>,
    ) -> Result<Self, NormalizerError> {
        let n = Normalizer { rules, exceptions };
        for (from, to) in &n.exceptions {
            let again = n.normalize(to);
            if &again != to {
                return Err(NormalizerError::UnstableException {
                    from: from.clone(),
                    to: to.clone(),
                    again,
                });
            }
        }
        Ok(n)
    }

    pub fn english() -> Self {
        let exceptions = parse_exception_table(ENGLISH_EXCEPTIONS)
            .expect("bundled exception table is well-formed");
        Normalizer::new(english_suffix_rules(), exceptions)
            .expect("bundled exception table is stable")
    }

    pub fn normalize(&self, token: &str) -> String {
        let lower = token.to_lowercase();
        if let Some(s) = self.exceptions.get(&lower) {
            return s.clone();
        }
        let folded = self.apply_rules(lower);
        match self.exceptions.get(&folded) {
            Some(s) => s.clone(),
            None => folded,
        }
    }

    fn apply_rules(&self, word: String) -> String {
        let len = word.chars().count();
        for rule in &self.rules {
            if len < rule.min_len || !word.ends_with(rule.suffix.as_str()) {
                continue;
            }
            return match &rule.replacement {
                None => word,
                Some(rep) => {
                    let mut out = String::from(&word[..word.len() - rule.suffix.len()]);
                    out.push_str(rep);
                    out
                }
            };
        }
        word
    }
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer::english()
    }
}

pub fn english_suffix_rules() -> Vec<SuffixRule> {
    alloc::vec![
        SuffixRule::replace("ies", "y", 5),
        SuffixRule::replace("sses", "ss", 5),
        SuffixRule::replace("shes", "sh", 5),
        SuffixRule::replace("ches", "ch", 5),
        SuffixRule::replace("xes", "x", 4),
        SuffixRule::keep("ss"),
        SuffixRule::keep("us"),
        SuffixRule::keep("is"),
        SuffixRule::replace("s", "", 4),
    ]
}

/// `plural<TAB>singular` lines; blank lines and `#` comments skipped.
pub fn parse_exception_table(text: &str) -> Result<BTreeMap<String, String>, NormalizerError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split('\t').map(str::trim).filter(|p| !p.is_empty());
        match (parts.next(), parts.next(), parts.next()) {
            (Some(from), Some(to), None) => {
                out.insert(from.to_lowercase(), to.to_lowercase());
            }
            _ => return Err(NormalizerError::MalformedException { line: i + 1 }),
        }
    }
    Ok(out)
}
