//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p enarch --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use enarch::config::{Overrides, Resolved};
use enarch::core::dot::{export_dot, parse_dot};
use enarch::core::extract::tally;
use enarch::core::reduce::{apply_merges, reduce, ReductionEvent};
use enarch::core::synthesis::{classify, explanandum, phase_delta, Side};
use enarch::core::{
    Area, CanonicalPolicy, ConceptRecord, Corpus, EdgeRelation, Element, ExtractConfig, InteractionKey,
    InteractionRecord, MergeKind, MergeRule, Normalizer, Phase, Relation, RelationLexicon, Role, RuleSet,
    SourceDocument, SplitMode, Stoplist, Tally, Thresholds, Verdict,
};
use enarch::formats::{self, export_json, import_json};
use enarch::pipeline::reduce_corpus;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

type Outcome = Result<String, String>;

fn run_cases<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, test)
        .map(|()| format!("{cases} cases"))
        .map_err(|e| e.to_string())
}

// 1 ------------------------------------------------------------------------

fn fixture_reproduction() -> Outcome {
    let start = Instant::now();
    let dir = fixtures();
    let res = Resolved::load(Some(&dir.join("enarch.toml")), &Overrides::default()).map_err(|e| e.to_string())?;
    let build = |file: &str, role: Role, t: Thresholds| -> Result<enarch::core::ConceptMap, String> {
        let corpus = formats::load_corpus(&dir.join(file), SplitMode::Lines).map_err(|e| e.to_string())?;
        reduce_corpus(&corpus, &res.extract, &res.rules, &res.part_of, t, role.as_str(), role)
            .map(|r| r.map)
            .map_err(|e| e.to_string())
    };
    let expert = build("expert.corpus", Role::Expert, res.config.thresholds.expert)?;
    let lay = build("lay.corpus", Role::Lay, res.config.thresholds.lay)?;
    let text = fs::read_to_string(dir.join("alignment.txt")).map_err(|e| e.to_string())?;
    let records = formats::parse_alignment(&text, "alignment.txt", &res.extract).map_err(|e| e.to_string())?;
    let c = classify(&expert, &lay, &records).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let mut expected: BTreeMap<(Side, &str), Area> = BTreeMap::new();
    for l in ["cup", "ball", "goal", "direction", "speed", "height"] {
        expected.insert((Side::Lay, l), Area::A);
    }
    for l in ["randomness", "parameter", "weight", "input"] {
        expected.insert((Side::Expert, l), Area::B);
        expected.insert((Side::Lay, l), Area::B);
    }
    expected.insert((Side::Expert, "reward"), Area::C);
    expected.insert((Side::Lay, "rating"), Area::C);
    expected.insert((Side::Expert, "knowledge"), Area::C);
    expected.insert((Side::Lay, "knowledge"), Area::C);
    for l in ["movement primitive", "mean", "learning", "function", "process"] {
        expected.insert((Side::Expert, l), Area::D);
    }
    let actual: BTreeMap<(Side, &str), Area> = expected
        .keys()
        .filter_map(|&(side, l)| c.area(side, &Element::concept(l)).map(|a| ((side, l), a)))
        .collect();
    if actual != expected {
        let diff: Vec<String> = expected
            .iter()
            .filter(|(k, v)| actual.get(k) != Some(v))
            .map(|(k, v)| format!("{:?} {}: expected {v}, got {:?}", k.0, k.1, actual.get(k)))
            .collect();
        return Err(diff.join("; "));
    }
    let pair_ok = c.alignment_used.iter().any(|r| {
        r.expert() == Some(&Element::concept("reward"))
            && r.lay() == Some(&Element::concept("rating"))
            && r.verdict() == Some(Verdict::Misconceived)
    });
    if !pair_ok {
        return Err("reward <-> rating is not a misconceived pair".into());
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} listed elements exact, {elapsed:.0?}", expected.len()))
}

// 2 ------------------------------------------------------------------------

const VOCAB: [&str; 11] = ["alpha", "beta", "gamma", "delta", "omega", "kappa", "the", "of", "and", "has", "gets"];
const BREAKERS: [&str; 5] = ["the", "of", "and", "has", "gets"];

fn small_config(ngram_max: usize) -> ExtractConfig {
    let mut stop = Stoplist::new();
    for w in ["the", "of", "and"] {
        stop.insert(w);
    }
    ExtractConfig::new(stop, RelationLexicon::new(), Normalizer::english(), ngram_max).unwrap()
}

/// Brute force: every n-gram (n ≤ 3) of every maximal run of content words.
fn oracle_ngrams(docs: &[Vec<Vec<usize>>]) -> BTreeMap<String, BTreeMap<String, u64>> {
    let mut out: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    for (d, statements) in docs.iter().enumerate() {
        let src = format!("D{d}");
        for words in statements {
            let mut runs: Vec<Vec<&str>> = vec![Vec::new()];
            for &w in words {
                let w = VOCAB[w];
                if BREAKERS.contains(&w) {
                    runs.push(Vec::new());
                } else {
                    runs.last_mut().unwrap().push(w);
                }
            }
            for run in runs {
                for start in 0..run.len() {
                    for end in start + 1..=(start + 3).min(run.len()) {
                        *out.entry(run[start..end].join(" ")).or_default().entry(src.clone()).or_default() += 1;
                    }
                }
            }
        }
    }
    out
}

fn threshold_semantics() -> Outcome {
    let docs = prop::collection::vec(
        prop::collection::vec(prop::collection::vec(0usize..VOCAB.len(), 1..8), 1..=10),
        1..=5,
    );
    let cfg = small_config(3);
    run_cases(200, (docs, 1u64..6, 1u64..5), |(docs, rt, rs)| {
        let corpus = Corpus::new(
            "random",
            SplitMode::Lines,
            docs.iter()
                .enumerate()
                .map(|(d, sts)| {
                    let texts = sts.iter().map(|ws| ws.iter().map(|&w| VOCAB[w]).collect::<Vec<_>>().join(" "));
                    SourceDocument::from_texts(format!("D{d}"), Role::Expert, Phase::Single, texts).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let raw = tally(&corpus, &cfg);
        let oracle = oracle_ngrams(&docs);
        for (t, s) in [(3, 2), (rt, rs)] {
            let th = Thresholds::new(t, s).unwrap();
            let (reduced, _) = reduce(&raw, &RuleSet::empty(), &th);
            let expected: BTreeMap<&str, &BTreeMap<String, u64>> = oracle
                .iter()
                .filter(|(_, per)| per.values().sum::<u64>() >= t && per.len() as u64 >= s)
                .map(|(l, per)| (l.as_str(), per))
                .collect();
            let actual: BTreeMap<&str, &BTreeMap<String, u64>> =
                reduced.concepts().iter().map(|(l, r)| (l.as_str(), r.per_source_counts())).collect();
            prop_assert_eq!(&actual, &expected, "thresholds ({}, {})", t, s);
            for (k, r) in reduced.interactions() {
                prop_assert!(r.total_count() >= t && r.source_count() >= s);
                prop_assert!(reduced.concept(&k.subject).is_some() && reduced.concept(&k.object).is_some());
            }
            for (k, r) in raw.interactions() {
                let keep = r.total_count() >= t
                    && r.source_count() >= s
                    && expected.contains_key(k.subject.as_str())
                    && expected.contains_key(k.object.as_str());
                prop_assert_eq!(reduced.interaction(k).is_some(), keep, "interaction {}", k);
            }
        }
        Ok(())
    })
}

// 3 ------------------------------------------------------------------------

const LABELS: [&str; 12] = ["l0", "l1", "l2", "l3", "l4", "l5", "l6", "l7", "l8", "l9", "l10", "l11"];
const SOURCES: [&str; 5] = ["s0", "s1", "s2", "s3", "s4"];

#[derive(Debug, Clone)]
struct MergeCase {
    concepts: Vec<(usize, Vec<(usize, u64)>)>,
    interactions: Vec<(usize, usize, usize, Vec<(usize, u64)>)>,
    /// label index → group number, groups with fewer than two members ignored
    grouping: Vec<Option<u8>>,
    policies: Vec<u8>,
}

fn arb_merge_case() -> impl Strategy<Value = MergeCase> {
    let counts = prop::collection::vec((0usize..SOURCES.len(), 1u64..5), 1..4);
    (
        prop::collection::vec((0usize..LABELS.len(), counts.clone()), 0..12),
        prop::collection::vec((0usize..LABELS.len(), 0usize..LABELS.len(), 0usize..4, counts), 0..12),
        prop::collection::vec(prop::option::weighted(0.6, 0u8..4), LABELS.len()),
        prop::collection::vec(0u8..4, 4),
    )
        .prop_map(|(concepts, interactions, grouping, policies)| MergeCase {
            concepts,
            interactions,
            grouping,
            policies,
        })
}

fn merge_conservation() -> Outcome {
    run_cases(500, arb_merge_case(), |case| {
        let mut concepts: BTreeMap<&str, BTreeMap<&str, u64>> = BTreeMap::new();
        for (l, cs) in &case.concepts {
            for (s, n) in cs {
                *concepts.entry(LABELS[*l]).or_default().entry(SOURCES[*s]).or_default() += n;
            }
        }
        let mut inters: BTreeMap<(usize, usize, usize), BTreeMap<&str, u64>> = BTreeMap::new();
        for (a, b, r, cs) in &case.interactions {
            if a == b {
                continue;
            }
            for &l in [a, b] {
                concepts.entry(LABELS[l]).or_default().entry(SOURCES[0]).or_insert(1);
            }
            for (s, n) in cs {
                *inters.entry((*a, *b, *r)).or_default().entry(SOURCES[*s]).or_default() += n;
            }
        }
        let tally = Tally::from_records(
            concepts
                .iter()
                .map(|(l, per)| ConceptRecord::with_counts(*l, per.iter().map(|(s, n)| (*s, *n)))),
            inters.iter().map(|((a, b, r), per)| {
                InteractionRecord::with_counts(
                    InteractionKey::new(LABELS[*a], Relation::ALL[*r], LABELS[*b]),
                    per.iter().map(|(s, n)| (*s, *n)),
                )
            }),
        )
        .unwrap();

        // rule table and the oracle's own label mapping
        let mut groups: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for (i, g) in case.grouping.iter().enumerate() {
            if let Some(g) = g {
                groups.entry(*g).or_default().push(i);
            }
        }
        let mut rules = Vec::new();
        let mut setting = BTreeSet::new();
        let mut canon: BTreeMap<&str, String> = BTreeMap::new();
        for (g, members) in groups.iter().filter(|(_, m)| m.len() >= 2) {
            let names: Vec<String> = members.iter().map(|&i| LABELS[i].to_string()).collect();
            let (policy, target) = match case.policies[*g as usize] {
                0 => (CanonicalPolicy::ExplicitLabel(names[0].clone()), names[0].clone()),
                1 => (CanonicalPolicy::ExplicitLabel(format!("fresh{g}")), format!("fresh{g}")),
                2 => (CanonicalPolicy::Abstract(names[names.len() - 1].clone()), names[names.len() - 1].clone()),
                _ => {
                    setting.insert(names[1].clone());
                    (CanonicalPolicy::SettingSpecific, names[1].clone())
                }
            };
            for m in members {
                canon.insert(LABELS[*m], target.clone());
            }
            rules.push(MergeRule::new(MergeKind::GeneralSynonym, names, policy).unwrap());
        }
        let rules = RuleSet::new(rules, &setting).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let resolve = |l: &str| canon.get(l).cloned().unwrap_or_else(|| l.to_string());

        let merged = apply_merges(&tally, &rules);
        prop_assert_eq!(merged.concept_total(), tally.concept_total());
        let mut expect_concepts: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        for (l, r) in tally.concepts() {
            for (s, n) in r.per_source_counts() {
                *expect_concepts.entry(resolve(l)).or_default().entry(s.clone()).or_default() += n;
            }
        }
        let got: BTreeMap<String, BTreeMap<String, u64>> =
            merged.concepts().iter().map(|(l, r)| (l.clone(), r.per_source_counts().clone())).collect();
        prop_assert_eq!(&got, &expect_concepts);

        let mut expect_inter: BTreeMap<InteractionKey, BTreeMap<String, u64>> = BTreeMap::new();
        let mut collapsed = 0u64;
        for (k, r) in tally.interactions() {
            let (s, o) = (resolve(&k.subject), resolve(&k.object));
            if s == o {
                collapsed += r.total_count();
                continue;
            }
            let e = expect_inter.entry(InteractionKey::new(s, k.relation, o)).or_default();
            for (src, n) in r.per_source_counts() {
                *e.entry(src.clone()).or_default() += n;
            }
        }
        let got: BTreeMap<InteractionKey, BTreeMap<String, u64>> = merged
            .interactions()
            .iter()
            .map(|(k, r)| (k.clone(), r.per_source_counts().clone()))
            .collect();
        prop_assert_eq!(&got, &expect_inter);
        prop_assert_eq!(merged.interaction_total() + collapsed, tally.interaction_total());

        let (_, report) = reduce(&tally, &rules, &Thresholds::new(1, 1).unwrap());
        let reported: u64 = report
            .events
            .iter()
            .filter_map(|e| match e {
                ReductionEvent::CollapsedInteraction { total, .. } => Some(*total),
                _ => None,
            })
            .sum();
        prop_assert_eq!(reported, collapsed);
        Ok(())
    })
}

// 4 ------------------------------------------------------------------------

fn partition_laws() -> Outcome {
    let strategy = (arb_overlapping_map(Role::Expert), arb_overlapping_map(Role::Lay), arb_picks());
    run_cases(500, strategy, |(expert, lay, picks)| {
        let records = alignments_for(&expert, &lay, &picks);
        let c = classify(&expert, &lay, &records).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let ex: BTreeSet<Element> = expert.elements().collect();
        let ly: BTreeSet<Element> = lay.elements().collect();
        prop_assert_eq!(&c.expert_assignments.keys().cloned().collect::<BTreeSet<_>>(), &ex);
        prop_assert_eq!(&c.lay_assignments.keys().cloned().collect::<BTreeSet<_>>(), &ly);
        prop_assert!(c.expert_assignments.values().all(|a| *a != Area::A), "A on expert side");
        prop_assert!(c.lay_assignments.values().all(|a| *a != Area::D), "D on lay side");
        let b = c.elements_in(Side::Expert, Area::B);
        let expected: BTreeSet<Element> = ex.difference(&b).cloned().collect();
        prop_assert_eq!(&c.explanandum_elements(), &expected);
        prop_assert_eq!(&explanandum(&c, &expert).elements(), &expected);
        Ok(())
    })
}

// 5 ------------------------------------------------------------------------

fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                walk(root, &p, out);
            } else {
                out.insert(p.strip_prefix(root).unwrap().to_path_buf(), fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

fn full_run(out: &Path) -> Result<(), String> {
    let dir = fixtures();
    let cfg = dir.join("enarch.toml");
    let bin = env!("CARGO_BIN_EXE_enarch");
    let steps: [Vec<PathBuf>; 3] = [
        vec!["reduce".into(), dir.join("expert.corpus")],
        vec!["reduce".into(), dir.join("lay.corpus")],
        vec!["synthesize".into(), out.join("expert/map.json"), out.join("lay/map.json")],
    ];
    for args in steps {
        let st = Command::new(bin)
            .args(&args)
            .arg("--config")
            .arg(&cfg)
            .arg("--out")
            .arg(out)
            .arg("--quiet")
            .env("ENARCH_NO_COLOR", "1")
            .output()
            .map_err(|e| e.to_string())?;
        if !st.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&st.stderr)));
        }
    }
    Ok(())
}

fn determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    full_run(a.path())?;
    full_run(b.path())?;
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    if ta.keys().collect::<Vec<_>>() != tb.keys().collect::<Vec<_>>() {
        return Err("different file sets".into());
    }
    let mut compared = 0;
    for (p, bytes) in &ta {
        if p.file_name().is_some_and(|n| n == "manifest.json") {
            // stage timings differ between runs; everything else must not
            let strip = |b: &[u8]| {
                let mut v: serde_json::Value = serde_json::from_slice(b).unwrap();
                v.as_object_mut().unwrap().remove("stages");
                v
            };
            if strip(bytes) != strip(&tb[p]) {
                return Err(format!("{} differs beyond stage timings", p.display()));
            }
        } else if bytes != &tb[p] {
            return Err(format!("{} differs", p.display()));
        }
        compared += 1;
    }
    if !ta.keys().any(|p| p.extension().is_some_and(|e| e == "dot")) {
        return Err("no DOT artifacts".into());
    }
    Ok(format!("{compared} files identical"))
}

// 6 ------------------------------------------------------------------------

fn check_dot(map: &enarch::core::ConceptMap, dot: &str) -> Result<(), String> {
    let g = parse_dot(dot).map_err(|e| format!("{e}\n{dot}"))?;
    if !g.directed {
        return Err("not a digraph".into());
    }
    let ids: BTreeSet<&str> = g.nodes.iter().map(|n| n.id.as_str()).collect();
    for n in map.nodes() {
        if !ids.contains(n.label.as_str()) {
            return Err(format!("node `{}` missing", n.label));
        }
    }
    if g.edges.len() != map.edges().len() {
        return Err(format!("{} DOT edges for {} map edges", g.edges.len(), map.edges().len()));
    }
    for e in map.edges() {
        let found: Vec<_> = g
            .edges
            .iter()
            .filter(|d| d.from == e.subject && d.to == e.object && d.attr("label") == Some(e.relation.word()))
            .collect();
        if found.len() != 1 {
            return Err(format!("edge {} not transcribed once", e.element()));
        }
        let style = found[0].attr("style");
        match e.relation {
            EdgeRelation::PartOf if style != Some("dashed") => return Err(format!("{} not dashed", e.element())),
            EdgeRelation::PartOf => {}
            _ => {
                if !matches!(style, None | Some("solid")) {
                    return Err(format!("{} not solid", e.element()));
                }
                if !["has", "gets", "produces", "does"].contains(&found[0].attr("label").unwrap_or("")) {
                    return Err(format!("{} has a bad label", e.element()));
                }
            }
        }
    }
    Ok(())
}

fn dot_validity() -> Outcome {
    let random = run_cases(300, (arb_map(Role::Expert), arb_map(Role::Lay), arb_picks()), |(ex, ly, picks)| {
        for m in [&ex, &ly] {
            let dot = export_dot(m, None).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check_dot(m, &dot).map_err(TestCaseError::fail)?;
        }
        let c = classify(&ex, &ly, &alignments_for(&ex, &ly, &picks)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for m in [&ex, &ly] {
            let dot = export_dot(m, Some(&c)).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check_dot(m, &dot).map_err(TestCaseError::fail)?;
        }
        Ok(())
    })?;
    let out = tempfile::tempdir().unwrap();
    full_run(out.path())?;
    let mut files = 0;
    for (map, dots) in [("expert", ["expert/map.dot", "synthesis/expert.dot"]), ("lay", ["lay/map.dot", "synthesis/lay.dot"])] {
        let text = fs::read_to_string(out.path().join(format!("{map}/map.json"))).unwrap();
        let (m, _) = import_json(&text, map).map_err(|e| e.to_string())?;
        for d in dots {
            check_dot(&m, &fs::read_to_string(out.path().join(d)).unwrap()).map_err(|e| format!("{d}: {e}"))?;
            files += 1;
        }
    }
    Ok(format!("{random} x 4 exports, {files} fixture files"))
}

// 7 ------------------------------------------------------------------------

fn json_round_trip() -> Outcome {
    run_cases(500, (arb_map(Role::Expert), arb_map(Role::Lay), arb_picks(), any::<bool>()), |(ex, ly, picks, with_c)| {
        let c = classify(&ex, &ly, &alignments_for(&ex, &ly, &picks)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let c = with_c.then_some(c);
        for m in [&ex, &ly] {
            let (back, back_c) = import_json(&export_json(m, c.as_ref()), "m").map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&back, m);
            prop_assert_eq!(&back_c, &c);
        }
        Ok(())
    })
}

// 8 ------------------------------------------------------------------------

fn phase_delta_oracle() -> Outcome {
    run_cases(100, (arb_overlapping_map(Role::Lay), arb_overlapping_map(Role::Lay)), |(pre, post)| {
        let d = phase_delta(&pre, &post).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let labels = |m: &enarch::core::ConceptMap| m.nodes().iter().map(|n| n.label.clone()).collect::<Vec<_>>();
        let edges = |m: &enarch::core::ConceptMap| m.edges().iter().map(|e| e.element()).collect::<Vec<_>>();
        fn minus<T: Clone + Ord + PartialEq>(a: &[T], b: &[T]) -> Vec<T> {
            let mut v: Vec<T> = a.iter().filter(|x| !b.contains(x)).cloned().collect();
            v.sort();
            v
        }
        fn both<T: Clone + Ord + PartialEq>(a: &[T], b: &[T]) -> Vec<T> {
            let mut v: Vec<T> = a.iter().filter(|x| b.contains(x)).cloned().collect();
            v.sort();
            v
        }
        let (c0, c1, e0, e1) = (labels(&pre), labels(&post), edges(&pre), edges(&post));
        prop_assert_eq!(&d.added_concepts, &minus(&c1, &c0));
        prop_assert_eq!(&d.removed_concepts, &minus(&c0, &c1));
        prop_assert_eq!(&d.persisting_concepts, &both(&c0, &c1));
        prop_assert_eq!(&d.added_edges, &minus(&e1, &e0));
        prop_assert_eq!(&d.removed_edges, &minus(&e0, &e1));
        prop_assert_eq!(&d.persisting_edges, &both(&e0, &e1));
        let self_delta = phase_delta(&pre, &pre).unwrap();
        prop_assert!(self_delta.is_empty());
        Ok(())
    })
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("fixture reproduction", fixture_reproduction),
        ("threshold semantics vs brute-force oracle", threshold_semantics),
        ("merge conservation", merge_conservation),
        ("classification partition laws", partition_laws),
        ("determinism of full runs", determinism),
        ("DOT validity", dot_validity),
        ("JSON round trip", json_round_trip),
        ("phase delta vs set-difference oracle", phase_delta_oracle),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {}. {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
