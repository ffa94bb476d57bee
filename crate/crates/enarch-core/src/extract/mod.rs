//! Statements → concept mentions and relation-typed interaction mentions.
//!
//! A statement is tokenized and every word classified as a relation verb
//! (via the [`RelationLexicon`]), a function word (via the [`Stoplist`]) or a
//! content lexeme. Maximal runs of content lexemes yield the concept
//! candidates: every n-gram of the run up to `ngram_max` words. Function
//! words, relation verbs and punctuation all end a run, so "weights of the
//! algorithm" never fuses into one concept.
//!
//! Interactions come from two local patterns inside one statement:
//!
//! * ⟨concept⟩ ⟨verb⟩ ⟨concept⟩. Each verb takes the nearest concept mention
//!   on its left as subject and the nearest on its right as object, skipping
//!   function words but not punctuation. A mention next to the verb is the
//!   longest run suffix (subject) or prefix (object) that is a known concept.
//!   When a coordinating conjunction sits between the verb and its left
//!   neighbour ("has weights and has randomness") the verb reuses the subject
//!   of the previous verb in the statement.
//! * ⟨X⟩ `of` ⟨Y⟩ emits (Y, has, X).

mod lexicon;
mod normalize;
mod tokenize;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, SourceDocument};
use crate::freq::Frequency;

pub use lexicon::{ConflictingVerb, Relation, RelationLexicon, Stoplist};
pub use normalize::{
    english_suffix_rules, parse_exception_table, Normalizer, NormalizerError, SuffixRule,
};
pub use tokenize::{tokenize, RawToken};

/// Words that carry a subject over to the next verb.
const COORDINATORS: [&str; 3] = ["and", "or", "but"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("ngram_max must be at least 1")]
    NgramMaxZero,
    #[error("relation verb `{0}` must not be in the stoplist")]
    RelationVerbInStoplist(String),
    #[error("interaction {0} refers to a concept missing from the tally")]
    DanglingInteraction(InteractionKey),
    #[error("record `{0}` has an inconsistent frequency ledger")]
    InconsistentLedger(String),
}

/// A content token and its normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexeme {
    pub surface: String,
    pub canon: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractConfig {
    stoplist: Stoplist,
    lexicon: RelationLexicon,
    normalizer: Normalizer,
    ngram_max: usize,
}

impl ExtractConfig {
    pub const DEFAULT_NGRAM_MAX: usize = 3;

    pub fn new(
        stoplist: Stoplist,
        lexicon: RelationLexicon,
        normalizer: Normalizer,
        ngram_max: usize,
    ) -> Result<Self, ExtractError> {
        if ngram_max == 0 {
            return Err(ExtractError::NgramMaxZero);
        }
        if let Some((verb, _)) = lexicon.verbs().find(|(v, _)| stoplist.contains(v)) {
            return Err(ExtractError::RelationVerbInStoplist(verb.into()));
        }
        Ok(ExtractConfig {
            stoplist,
            lexicon,
            normalizer,
            ngram_max,
        })
    }

    pub fn stoplist(&self) -> &Stoplist {
        &self.stoplist
    }

    pub fn lexicon(&self) -> &RelationLexicon {
        &self.lexicon
    }

    pub fn normalizer(&self) -> &Normalizer {
        &self.normalizer
    }

    pub fn ngram_max(&self) -> usize {
        self.ngram_max
    }

    pub fn normalize(&self, token: &str) -> String {
        self.normalizer.normalize(token)
    }

    /// Normalizes every word of a multi-word label and rejoins with single
    /// spaces; used for labels coming from config files.
    pub fn normalize_label(&self, label: &str) -> String {
        let words: Vec<String> = label
            .split_whitespace()
            .map(|w| self.normalizer.normalize(w))
            .collect();
        words.join(" ")
    }

    fn classify(&self, text: &str) -> Vec<Tok> {
        tokenize(text)
            .into_iter()
            .map(|t| match t {
                RawToken::Punct => Tok::Punct,
                RawToken::Word(w) => {
                    let lower = w.to_lowercase();
                    let canon = self.normalizer.normalize(&lower);
                    if let Some(r) = self.lexicon.get(&lower).or_else(|| self.lexicon.get(&canon)) {
                        Tok::Verb(r, Lexeme { surface: w.into(), canon })
                    } else if self.stoplist.contains(&lower) || self.stoplist.contains(&canon) {
                        Tok::Stop(lower)
                    } else {
                        Tok::Content(Lexeme { surface: w.into(), canon })
                    }
                }
            })
            .collect()
    }

    /// Content tokens of a statement in order, relation verbs included,
    /// function words and punctuation dropped.
    pub fn strip_function_words(&self, text: &str) -> Vec<Lexeme> {
        self.classify(text)
            .into_iter()
            .filter_map(|t| match t {
                Tok::Content(l) | Tok::Verb(_, l) => Some(l),
                _ => None,
            })
            .collect()
    }
}

enum Tok {
    Content(Lexeme),
    Verb(Relation, Lexeme),
    Stop(String),
    Punct,
}

impl Tok {
    fn content(&self) -> Option<&Lexeme> {
        match self {
            Tok::Content(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptRecord {
    label: String,
    surface_forms: BTreeSet<String>,
    freq: Frequency,
}

impl ConceptRecord {
    pub fn new(label: impl Into<String>) -> Self {
        ConceptRecord {
            label: label.into(),
            surface_forms: BTreeSet::new(),
            freq: Frequency::new(),
        }
    }

    pub fn with_counts<I, S>(label: impl Into<String>, counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let label = label.into();
        let mut surface_forms = BTreeSet::new();
        surface_forms.insert(label.clone());
        ConceptRecord {
            label,
            surface_forms,
            freq: Frequency::from_counts(counts),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn surface_forms(&self) -> &BTreeSet<String> {
        &self.surface_forms
    }

    pub fn frequency(&self) -> &Frequency {
        &self.freq
    }

    pub fn per_source_counts(&self) -> &BTreeMap<String, u64> {
        self.freq.per_source()
    }

    pub fn total_count(&self) -> u64 {
        self.freq.total()
    }

    pub fn source_count(&self) -> u64 {
        self.freq.source_count()
    }

    pub(crate) fn set_label(&mut self, label: String) {
        self.label = label;
    }

    pub(crate) fn absorb(&mut self, other: &ConceptRecord) {
        self.freq.absorb(&other.freq);
        self.surface_forms.extend(other.surface_forms.iter().cloned());
    }

    fn mention(&mut self, source: &str, surface: String) {
        self.freq.add(source, 1);
        self.surface_forms.insert(surface);
    }
}

/// Identity of an interaction: ⟨subject, relation, object⟩.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InteractionKey {
    pub subject: String,
    pub relation: Relation,
    pub object: String,
}

impl InteractionKey {
    pub fn new(subject: impl Into<String>, relation: Relation, object: impl Into<String>) -> Self {
        InteractionKey {
            subject: subject.into(),
            relation,
            object: object.into(),
        }
    }
}

impl fmt::Display for InteractionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {} | {})", self.subject, self.relation, self.object)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionRecord {
    key: InteractionKey,
    freq: Frequency,
}

impl InteractionRecord {
    pub fn with_counts<I, S>(key: InteractionKey, counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        InteractionRecord {
            key,
            freq: Frequency::from_counts(counts),
        }
    }

    pub fn key(&self) -> &InteractionKey {
        &self.key
    }

    pub fn subject(&self) -> &str {
        &self.key.subject
    }

    pub fn relation(&self) -> Relation {
        self.key.relation
    }

    pub fn object(&self) -> &str {
        &self.key.object
    }

    pub fn frequency(&self) -> &Frequency {
        &self.freq
    }

    pub fn per_source_counts(&self) -> &BTreeMap<String, u64> {
        self.freq.per_source()
    }

    pub fn total_count(&self) -> u64 {
        self.freq.total()
    }

    pub fn source_count(&self) -> u64 {
        self.freq.source_count()
    }

    pub(crate) fn set_key(&mut self, key: InteractionKey) {
        self.key = key;
    }

    pub(crate) fn absorb(&mut self, other: &InteractionRecord) {
        self.freq.absorb(&other.freq);
    }
}

/// Concept and interaction records keyed (and therefore ordered) by label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    concepts: BTreeMap<String, ConceptRecord>,
    interactions: BTreeMap<InteractionKey, InteractionRecord>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Checks the ledger of every record and that interaction endpoints
    /// exist; rejects self-loops as dangling too.
    pub fn from_records<C, I>(concepts: C, interactions: I) -> Result<Self, ExtractError>
    where
        C: IntoIterator<Item = ConceptRecord>,
        I: IntoIterator<Item = InteractionRecord>,
    {
        let mut t = Tally::new();
        for c in concepts {
            t.concepts
                .entry(c.label.clone())
                .and_modify(|e| e.absorb(&c))
                .or_insert(c);
        }
        for i in interactions {
            t.interactions
                .entry(i.key.clone())
                .and_modify(|e| e.absorb(&i))
                .or_insert(i);
        }
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_maps(
        concepts: BTreeMap<String, ConceptRecord>,
        interactions: BTreeMap<InteractionKey, InteractionRecord>,
    ) -> Self {
        Tally {
            concepts,
            interactions,
        }
    }

    pub fn validate(&self) -> Result<(), ExtractError> {
        for c in self.concepts.values() {
            if !c.freq.is_consistent() {
                return Err(ExtractError::InconsistentLedger(c.label.clone()));
            }
        }
        for i in self.interactions.values() {
            if !i.freq.is_consistent() {
                return Err(ExtractError::InconsistentLedger(alloc::format!("{}", i.key)));
            }
            let k = &i.key;
            if k.subject == k.object
                || !self.concepts.contains_key(&k.subject)
                || !self.concepts.contains_key(&k.object)
            {
                return Err(ExtractError::DanglingInteraction(k.clone()));
            }
        }
        Ok(())
    }

    pub fn concepts(&self) -> &BTreeMap<String, ConceptRecord> {
        &self.concepts
    }

    pub fn interactions(&self) -> &BTreeMap<InteractionKey, InteractionRecord> {
        &self.interactions
    }

    pub fn concept(&self, label: &str) -> Option<&ConceptRecord> {
        self.concepts.get(label)
    }

    pub fn interaction(&self, key: &InteractionKey) -> Option<&InteractionRecord> {
        self.interactions.get(key)
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.interactions.is_empty()
    }

    /// Pointwise fold of another tally into this one.
    pub fn absorb(&mut self, other: &Tally) {
        for (label, c) in &other.concepts {
            self.concepts
                .entry(label.clone())
                .and_modify(|e| e.absorb(c))
                .or_insert_with(|| c.clone());
        }
        for (key, i) in &other.interactions {
            self.interactions
                .entry(key.clone())
                .and_modify(|e| e.absorb(i))
                .or_insert_with(|| i.clone());
        }
    }

    pub fn concept_total(&self) -> u64 {
        self.concepts.values().map(ConceptRecord::total_count).sum()
    }

    pub fn interaction_total(&self) -> u64 {
        self.interactions.values().map(InteractionRecord::total_count).sum()
    }
}

/// Candidate n-grams of every content run in the document.
pub fn extract_concepts(doc: &SourceDocument, cfg: &ExtractConfig) -> BTreeMap<String, ConceptRecord> {
    let mut out: BTreeMap<String, ConceptRecord> = BTreeMap::new();
    for st in doc.statements() {
        let toks = cfg.classify(&st.text);
        for run in content_runs(&toks) {
            for (label, surface) in run_ngrams(run, cfg.ngram_max) {
                out.entry(label.clone())
                    .or_insert_with(|| ConceptRecord::new(label))
                    .mention(doc.source_id(), surface);
            }
        }
    }
    out
}

/// Interaction mentions whose endpoints are labels in `concepts`.
pub fn extract_interactions(
    doc: &SourceDocument,
    cfg: &ExtractConfig,
    concepts: &BTreeMap<String, ConceptRecord>,
) -> BTreeMap<InteractionKey, InteractionRecord> {
    let mut out: BTreeMap<InteractionKey, InteractionRecord> = BTreeMap::new();
    for st in doc.statements() {
        let toks = cfg.classify(&st.text);
        let found = statement_interactions(&toks, cfg.ngram_max, |l| concepts.contains_key(l));
        if found.is_empty() && content_runs(&toks).count() > 1 {
            log::debug!(
                "{}#{}: no relation pattern in `{}`",
                doc.source_id(),
                st.index,
                st.text
            );
        }
        for key in found {
            out.entry(key.clone())
                .or_insert_with(|| InteractionRecord {
                    key,
                    freq: Frequency::new(),
                })
                .freq
                .add(doc.source_id(), 1);
        }
    }
    out
}

/// Concepts and interactions of a single document.
pub fn extract_document(doc: &SourceDocument, cfg: &ExtractConfig) -> Tally {
    let concepts = extract_concepts(doc, cfg);
    let interactions = extract_interactions(doc, cfg, &concepts);
    Tally::from_maps(concepts, interactions)
}

/// Folds per-document tallies in source-id order.
pub fn fold_documents<I>(parts: I) -> Tally
where
    I: IntoIterator<Item = (String, Tally)>,
{
    let mut parts: Vec<(String, Tally)> = parts.into_iter().collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Tally::new();
    for (_, t) in &parts {
        out.absorb(t);
    }
    out
}

pub fn tally(corpus: &Corpus, cfg: &ExtractConfig) -> Tally {
    fold_documents(
        corpus
            .documents()
            .iter()
            .map(|d| (String::from(d.source_id()), extract_document(d, cfg))),
    )
}

/// Canonical labels of every concept candidate in a text, with repeats.
pub fn concept_labels(text: &str, cfg: &ExtractConfig) -> Vec<String> {
    let toks = cfg.classify(text);
    content_runs(&toks)
        .flat_map(|run| run_ngrams(run, cfg.ngram_max).into_iter().map(|(l, _)| l))
        .collect()
}

fn content_runs(toks: &[Tok]) -> impl Iterator<Item = &[Tok]> {
    toks.split(|t| t.content().is_none()).filter(|r| !r.is_empty())
}

fn run_ngrams(run: &[Tok], ngram_max: usize) -> Vec<(String, String)> {
    let lex: Vec<&Lexeme> = run.iter().filter_map(Tok::content).collect();
    let mut out = Vec::new();
    for n in 1..=ngram_max.min(lex.len()) {
        for w in lex.windows(n) {
            out.push((join(w.iter().map(|l| l.canon.as_str())), join(w.iter().map(|l| l.surface.as_str()))));
        }
    }
    out
}

fn join<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    let mut s = String::new();
    for (i, p) in parts.enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(p);
    }
    s
}

/// Start index of the content run containing `i`.
fn run_start(toks: &[Tok], i: usize) -> usize {
    let mut s = i;
    while s > 0 && toks[s - 1].content().is_some() {
        s -= 1;
    }
    s
}

fn run_end(toks: &[Tok], i: usize) -> usize {
    let mut e = i;
    while e + 1 < toks.len() && toks[e + 1].content().is_some() {
        e += 1;
    }
    e
}

/// Longest run suffix ending at `end` (inclusive) that is a known concept.
fn mention_ending_at(
    toks: &[Tok],
    end: usize,
    ngram_max: usize,
    is_concept: &impl Fn(&str) -> bool,
) -> Option<String> {
    let start = run_start(toks, end);
    let len = end + 1 - start;
    (1..=ngram_max.min(len)).rev().find_map(|n| {
        let label = join(toks[end + 1 - n..=end].iter().filter_map(|t| t.content().map(|l| l.canon.as_str())));
        is_concept(&label).then_some(label)
    })
}

/// Longest run prefix starting at `start` that is a known concept.
fn mention_starting_at(
    toks: &[Tok],
    start: usize,
    ngram_max: usize,
    is_concept: &impl Fn(&str) -> bool,
) -> Option<String> {
    let end = run_end(toks, start);
    let len = end + 1 - start;
    (1..=ngram_max.min(len)).rev().find_map(|n| {
        let label = join(toks[start..start + n].iter().filter_map(|t| t.content().map(|l| l.canon.as_str())));
        is_concept(&label).then_some(label)
    })
}

fn statement_interactions(
    toks: &[Tok],
    ngram_max: usize,
    is_concept: impl Fn(&str) -> bool,
) -> Vec<InteractionKey> {
    let mut out = Vec::new();
    let mut last_subject: Option<String> = None;
    for (v, tok) in toks.iter().enumerate() {
        match tok {
            Tok::Verb(relation, _) => {
                let mut coordinated = false;
                let mut left = None;
                for i in (0..v).rev() {
                    match &toks[i] {
                        Tok::Stop(w) => coordinated |= COORDINATORS.contains(&w.as_str()),
                        Tok::Content(_) => {
                            left = Some(i);
                            break;
                        }
                        _ => break,
                    }
                }
                let subject = match (&last_subject, coordinated) {
                    (Some(prev), true) => Some(prev.clone()),
                    _ => left.and_then(|i| mention_ending_at(toks, i, ngram_max, &is_concept)),
                };
                let right = toks[v + 1..]
                    .iter()
                    .position(|t| !matches!(t, Tok::Stop(_)))
                    .map(|p| v + 1 + p)
                    .filter(|&j| toks[j].content().is_some());
                let object = right.and_then(|j| mention_starting_at(toks, j, ngram_max, &is_concept));
                if let (Some(s), Some(o)) = (&subject, object) {
                    if *s != o {
                        out.push(InteractionKey::new(s.clone(), *relation, o));
                    }
                }
                if subject.is_some() {
                    last_subject = subject;
                }
            }
            Tok::Stop(w) if w == "of" && v > 0 && toks[v - 1].content().is_some() => {
                let Some(owned) = mention_ending_at(toks, v - 1, ngram_max, &is_concept) else {
                    continue;
                };
                let owner_start = toks[v + 1..]
                    .iter()
                    .position(|t| !matches!(t, Tok::Stop(_)))
                    .map(|p| v + 1 + p)
                    .filter(|&j| toks[j].content().is_some());
                if let Some(owner) =
                    owner_start.and_then(|j| mention_starting_at(toks, j, ngram_max, &is_concept))
                {
                    if owner != owned {
                        out.push(InteractionKey::new(owner, Relation::Has, owned));
                    }
                }
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Phase, Role};
    use alloc::vec;

    fn cfg() -> ExtractConfig {
        let stop: Stoplist = [
            "the", "an", "a", "of", "and", "are", "is", "in", "to", "or", "but", "its", "it", "s",
        ]
        .into_iter()
        .collect();
        let mut lex = RelationLexicon::new();
        lex.insert("have", Relation::Has).unwrap();
        lex.insert("receives", Relation::Gets).unwrap();
        ExtractConfig::new(stop, lex, Normalizer::english(), 3).unwrap()
    }

    fn doc(id: &str, texts: &[&str]) -> SourceDocument {
        SourceDocument::from_texts(id, Role::Expert, Phase::Single, texts.iter().copied()).unwrap()
    }

    fn canons(ls: Vec<Lexeme>) -> Vec<String> {
        ls.into_iter().map(|l| l.canon).collect()
    }

    #[test]
    fn strip_keeps_content_and_verbs() {
        let c = cfg();
        assert_eq!(
            canons(c.strip_function_words("The algorithm has an input")),
            vec!["algorithm", "has", "input"]
        );
        assert!(c.strip_function_words("").is_empty());
    }

    #[test]
    fn config_rejects_verb_in_stoplist() {
        let stop: Stoplist = ["has"].into_iter().collect();
        assert_eq!(
            ExtractConfig::new(stop, RelationLexicon::new(), Normalizer::english(), 3),
            Err(ExtractError::RelationVerbInStoplist("has".into()))
        );
        assert_eq!(
            ExtractConfig::new(Stoplist::new(), RelationLexicon::new(), Normalizer::english(), 0),
            Err(ExtractError::NgramMaxZero)
        );
    }

    #[test]
    fn multiword_concept_counted_per_source() {
        let c = cfg();
        let d = doc("E1", &["movement primitives are used", "Movement primitives are used"]);
        let concepts = extract_concepts(&d, &c);
        let mp = &concepts["movement primitive"];
        assert_eq!(mp.per_source_counts(), &BTreeMap::from([("E1".into(), 2)]));
        assert_eq!(mp.total_count(), 2);
        assert_eq!(mp.source_count(), 1);
        assert!(mp.surface_forms().contains("Movement primitives"));
        // every n-gram of the run is a candidate
        assert_eq!(concepts["movement"].total_count(), 2);
        assert_eq!(concepts["used"].total_count(), 2);
        assert!(!concepts.contains_key("primitive used"));
    }

    #[test]
    fn empty_document_has_no_concepts() {
        let d = doc("E1", &[]);
        assert!(extract_concepts(&d, &cfg()).is_empty());
    }

    #[test]
    fn two_sources_one_mention_each() {
        let c = cfg();
        let corpus = Corpus::new(
            "c",
            crate::corpus::SplitMode::Lines,
            vec![doc("E1", &["reward"]), doc("E2", &["reward"])],
        )
        .unwrap();
        let t = tally(&corpus, &c);
        let r = t.concept("reward").unwrap();
        assert_eq!((r.total_count(), r.source_count()), (2, 2));
    }

    fn interactions(text: &str) -> Vec<InteractionKey> {
        let c = cfg();
        let d = doc("E1", &[text]);
        let concepts = extract_concepts(&d, &c);
        extract_interactions(&d, &c, &concepts).into_keys().collect()
    }

    #[test]
    fn subject_verb_object() {
        assert_eq!(
            interactions("the algorithm gets input"),
            vec![InteractionKey::new("algorithm", Relation::Gets, "input")]
        );
        assert_eq!(
            interactions("the algorithm receives input"),
            vec![InteractionKey::new("algorithm", Relation::Gets, "input")]
        );
    }

    #[test]
    fn missing_object_emits_nothing() {
        assert!(interactions("the algorithm produces").is_empty());
        assert!(interactions("produces output").is_empty());
        assert!(interactions("the algorithm, produces output").is_empty());
    }

    #[test]
    fn coordinated_verbs_share_subject() {
        assert_eq!(
            interactions("algorithm has weights and has randomness"),
            vec![
                InteractionKey::new("algorithm", Relation::Has, "randomness"),
                InteractionKey::new("algorithm", Relation::Has, "weight"),
            ]
        );
    }

    #[test]
    fn chained_verbs_use_nearest_subject() {
        assert_eq!(
            interactions("robot has algorithm produces movement"),
            vec![
                InteractionKey::new("algorithm", Relation::Produces, "movement"),
                InteractionKey::new("robot", Relation::Has, "algorithm"),
            ]
        );
    }

    #[test]
    fn possessive_of_pattern() {
        assert_eq!(
            interactions("the weights of the algorithm"),
            vec![InteractionKey::new("algorithm", Relation::Has, "weight")]
        );
    }

    #[test]
    fn longest_known_mention_wins() {
        assert_eq!(
            interactions("movement primitives have a mean"),
            vec![InteractionKey::new("movement primitive", Relation::Has, "mean")]
        );
    }

    #[test]
    fn self_loop_not_emitted() {
        assert!(interactions("weight has weight").is_empty());
    }

    #[test]
    fn mentions_restricted_to_given_concepts() {
        let c = cfg();
        let d = doc("E1", &["the black box algorithm has weights"]);
        let mut concepts = extract_concepts(&d, &c);
        concepts.remove("black box algorithm");
        concepts.remove("box algorithm");
        let keys: Vec<_> = extract_interactions(&d, &c, &concepts).into_keys().collect();
        assert_eq!(keys, vec![InteractionKey::new("algorithm", Relation::Has, "weight")]);
    }

    #[test]
    fn duplicated_document_doubles_counts() {
        let c = cfg();
        let texts = ["the algorithm has weights", "weights of the algorithm", "reward"];
        let single = tally(
            &Corpus::new("s", Default::default(), vec![doc("A", &texts)]).unwrap(),
            &c,
        );
        let double = tally(
            &Corpus::new("d", Default::default(), vec![doc("A", &texts), doc("B", &texts)]).unwrap(),
            &c,
        );
        assert_eq!(single.concepts().len(), double.concepts().len());
        for (label, r) in double.concepts() {
            assert_eq!(r.total_count(), 2 * single.concept(label).unwrap().total_count());
            assert_eq!(r.source_count(), 2);
        }
        for (key, r) in double.interactions() {
            assert_eq!(r.total_count(), 2 * single.interaction(key).unwrap().total_count());
            assert_eq!(r.source_count(), 2);
        }
        double.validate().unwrap();
    }
}
