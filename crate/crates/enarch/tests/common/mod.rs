#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use enarch::core::cmap::{ConceptNode, Edge};
use enarch::core::{AlignmentRecord, ConceptMap, EdgeRelation, Element, Role, Thresholds, Verdict};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Deterministic runner for `cases` cases.
pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

pub fn arb_label() -> impl Strategy<Value = String> {
    prop_oneof![
        6 => "[a-z]{1,8}",
        3 => "[a-z]{1,6} [a-z]{1,6}",
        1 => Just("node".to_string()),
        1 => Just("say \"hi\"".to_string()),
        1 => Just("naïve café".to_string()),
        1 => Just("back\\slash".to_string()),
        1 => Just("human-like learning".to_string()),
        1 => Just("3d".to_string()),
    ]
}

type RawEdge = (usize, usize, usize, u64, u64);

fn assemble(
    role: Role,
    min_total: u64,
    min_sources: u64,
    labels: Vec<String>,
    counts: Vec<(u64, u64)>,
    raw_edges: Vec<RawEdge>,
    provenance: BTreeMap<String, String>,
) -> ConceptMap {
    let n = labels.len();
    let nodes: Vec<ConceptNode> = labels
        .iter()
        .zip(counts.iter().cycle())
        .map(|(l, (t, s))| ConceptNode {
            label: l.clone(),
            total_count: min_total + t,
            source_count: min_sources + s,
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    if n >= 2 {
        for (a, b, r, t, s) in raw_edges {
            let (a, b) = (a % n, b % n);
            if a == b {
                continue;
            }
            let relation = EdgeRelation::ALL[r % EdgeRelation::ALL.len()];
            // part-of only points from a lower to a higher index: acyclic
            if relation == EdgeRelation::PartOf && a > b {
                continue;
            }
            if !seen.insert((a, b, relation)) {
                continue;
            }
            let (total_count, source_count) = if relation == EdgeRelation::PartOf {
                (0, 0)
            } else {
                (min_total + t, min_sources + s)
            };
            edges.push(Edge {
                subject: labels[a].clone(),
                relation,
                object: labels[b].clone(),
                total_count,
                source_count,
            });
        }
    }
    ConceptMap::from_parts(
        role.as_str(),
        role,
        Thresholds::new(min_total, min_sources).unwrap(),
        provenance,
        nodes,
        edges,
    )
    .expect("generated map is valid")
}

fn arb_map_from(role: Role, labels: impl Strategy<Value = BTreeSet<String>>) -> impl Strategy<Value = ConceptMap> {
    (
        1u64..5,
        1u64..4,
        labels,
        prop::collection::vec((0u64..6, 0u64..4), 1..12),
        prop::collection::vec((0usize..64, 0usize..64, 0usize..5, 0u64..5, 0u64..3), 0..24),
        prop::collection::btree_map("[a-z_]{1,12}", "[ -~]{0,20}", 0..4),
    )
        .prop_map(move |(mt, ms, labels, counts, edges, prov)| {
            assemble(role, mt, ms, labels.into_iter().collect(), counts, edges, prov)
        })
}

pub fn arb_map(role: Role) -> impl Strategy<Value = ConceptMap> {
    arb_map_from(role, prop::collection::btree_set(arb_label(), 0..12))
}

pub const SHARED_POOL: [&str; 14] = [
    "algorithm", "weight", "reward", "rating", "cup", "ball", "mean", "learning", "input", "noise",
    "goal", "speed", "policy", "trial",
];

/// Maps drawn from one small label pool, so they overlap.
pub fn arb_overlapping_map(role: Role) -> impl Strategy<Value = ConceptMap> {
    arb_map_from(
        role,
        prop::collection::btree_set(prop::sample::select(&SHARED_POOL[..]).prop_map(String::from), 0..10),
    )
}

/// Valid alignment records for the pair: no repeated pair, kinds match,
/// one-sided records carry no verdict.
pub fn alignments_for(expert: &ConceptMap, lay: &ConceptMap, picks: &[(usize, usize, u8, bool)]) -> Vec<AlignmentRecord> {
    let ex_c: Vec<Element> = expert.elements().filter(Element::is_concept).collect();
    let ly_c: Vec<Element> = lay.elements().filter(Element::is_concept).collect();
    let ex_e: Vec<Element> = expert.elements().filter(|e| !e.is_concept()).collect();
    let ly_e: Vec<Element> = lay.elements().filter(|e| !e.is_concept()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &(i, j, v, edge) in picks {
        let (xs, ys) = if edge { (&ex_e, &ly_e) } else { (&ex_c, &ly_c) };
        let verdict = match v % 4 {
            0 | 1 => Some(Verdict::Aligned),
            2 => Some(Verdict::Misconceived),
            _ => None,
        };
        let rec = match verdict {
            Some(verdict) => {
                if xs.is_empty() || ys.is_empty() {
                    continue;
                }
                let (e, l) = (xs[i % xs.len()].clone(), ys[j % ys.len()].clone());
                if !seen.insert((e.clone(), l.clone())) {
                    continue;
                }
                AlignmentRecord::pair(e, l, verdict).unwrap()
            }
            None => {
                if j % 2 == 0 && !xs.is_empty() {
                    AlignmentRecord::new(Some(xs[i % xs.len()].clone()), None, None, "note").unwrap()
                } else if !ys.is_empty() {
                    AlignmentRecord::new(None, Some(ys[j % ys.len()].clone()), None, "note").unwrap()
                } else {
                    continue;
                }
            }
        };
        out.push(rec);
    }
    out
}

pub fn arb_picks() -> impl Strategy<Value = Vec<(usize, usize, u8, bool)>> {
    prop::collection::vec((0usize..64, 0usize..64, 0u8..4, prop::bool::weighted(0.25)), 0..16)
}
