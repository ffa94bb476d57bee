use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use core::fmt;

use serde::{Deserialize, Serialize};

/// The interaction vocabulary of the concept map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Has,
    Gets,
    Produces,
    Does,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::Has, Relation::Gets, Relation::Produces, Relation::Does];

    /// The identity verb, which is also the edge label in rendered maps.
    pub fn word(self) -> &'static str {
        match self {
            Relation::Has => "has",
            Relation::Gets => "gets",
            Relation::Produces => "produces",
            Relation::Does => "does",
        }
    }

    /// Accepts the identity verb or the variant name, case-insensitively.
    pub fn parse(s: &str) -> Option<Relation> {
        match s.to_ascii_lowercase().as_str() {
            "has" => Some(Relation::Has),
            "gets" => Some(Relation::Gets),
            "produces" => Some(Relation::Produces),
            "does" => Some(Relation::Does),
            _ => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("verb `{verb}` already maps to `{existing}`, cannot also map to `{requested}`")]
pub struct ConflictingVerb {
    pub verb: String,
    pub existing: Relation,
    pub requested: Relation,
}

/// Verb lemma → relation. The four identity verbs are always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLexicon {
    verbs: BTreeMap<String, Relation>,
}

impl RelationLexicon {
    pub fn new() -> Self {
        let verbs = Relation::ALL
            .iter()
            .map(|r| (r.word().to_string(), *r))
            .collect();
        RelationLexicon { verbs }
    }

    pub fn insert(&mut self, verb: &str, relation: Relation) -> Result<(), ConflictingVerb> {
        let verb = verb.to_lowercase();
        match self.verbs.get(&verb) {
            Some(&existing) if existing != relation => Err(ConflictingVerb {
                verb,
                existing,
                requested: relation,
            }),
            _ => {
                self.verbs.insert(verb, relation);
                Ok(())
            }
        }
    }

    pub fn get(&self, verb: &str) -> Option<Relation> {
        self.verbs.get(verb).copied()
    }

    pub fn verbs(&self) -> impl Iterator<Item = (&str, Relation)> {
        self.verbs.iter().map(|(v, r)| (v.as_str(), *r))
    }

    pub fn len(&self) -> usize {
        self.verbs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verbs.is_empty()
    }
}

impl Default for RelationLexicon {
    fn default() -> Self {
        Self::new()
    }
}

/// Function words removed before concept spotting. Entries are lowercased.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stoplist {
    words: BTreeSet<String>,
}

impl Stoplist {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, word: &str) {
        self.words.insert(word.to_lowercase());
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for Stoplist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut s = Stoplist::new();
        for w in iter {
            s.insert(w.as_ref());
        }
        s
    }
}
