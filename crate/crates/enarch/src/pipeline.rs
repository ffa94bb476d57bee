//! In-memory composition of the stages: extraction fans out over documents,
//! everything after it runs sequentially.

use enarch_core::cmap::build_map;
use enarch_core::extract::{extract_document, fold_documents};
use enarch_core::reduce::reduce;
use enarch_core::{ConceptMap, Corpus, ExtractConfig, MapError, ReductionReport, Role, RuleSet, Tally, Thresholds};
use rayon::prelude::*;

/// Same result as the sequential tally: per-document tallies are folded in
/// source-id order whatever order the workers finish in.
pub fn parallel_tally(corpus: &Corpus, cfg: &ExtractConfig) -> Tally {
    let parts: Vec<Tally> = corpus.documents().par_iter().map(|d| extract_document(d, cfg)).collect();
    fold_documents(corpus.documents().iter().map(|d| d.source_id().to_string()).zip(parts))
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub raw: Tally,
    pub reduced: Tally,
    pub report: ReductionReport,
    pub map: ConceptMap,
    /// Part-of annotations with an endpoint missing from the map.
    pub skipped_part_of: Vec<(String, String)>,
}

pub fn reduce_corpus(
    corpus: &Corpus,
    cfg: &ExtractConfig,
    rules: &RuleSet,
    part_of: &[(String, String)],
    thresholds: Thresholds,
    map_id: &str,
    role: Role,
) -> Result<Reduction, MapError> {
    let raw = parallel_tally(corpus, cfg);
    let (reduced, report) = reduce(&raw, rules, &thresholds);
    let (map, skipped_part_of) = build_map(map_id, role, &reduced, part_of, thresholds)?;
    Ok(Reduction {
        raw,
        reduced,
        report,
        map,
        skipped_part_of,
    })
}
