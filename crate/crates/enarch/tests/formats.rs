mod common;

use std::collections::BTreeMap;

use common::{runner, SHARED_POOL};
use enarch::config::{Overrides, Resolved};
use enarch::core::extract::tally;
use enarch::core::{AlignmentRecord, Corpus, EdgeRelation, Element, Phase, Role, SourceDocument, SplitMode, Statement, Verdict};
use enarch::formats::alignment::write_record;
use enarch::formats::{parse_alignment, parse_corpus, write_corpus, write_tally_csv};
use proptest::prelude::*;

fn bundled() -> Resolved {
    Resolved::load(None, &Overrides::default()).unwrap()
}

fn arb_document(id: usize) -> impl Strategy<Value = SourceDocument> {
    let role_phase = prop_oneof![
        Just((Role::Expert, Phase::Single)),
        Just((Role::Lay, Phase::Pre)),
        Just((Role::Lay, Phase::Recall)),
        Just((Role::Lay, Phase::Post)),
    ];
    (
        role_phase,
        prop::collection::vec("[ -~]{0,30}".prop_filter("non-blank", |s| !s.trim().is_empty()), 0..6),
        prop::collection::btree_map("[a-z_]{1,8}", "[!-~]{0,12}", 0..3),
    )
        .prop_map(move |((role, phase), texts, meta)| {
            let statements = texts
                .into_iter()
                .enumerate()
                .map(|(index, t)| Statement {
                    index,
                    text: t.trim().to_string(),
                })
                .collect();
            SourceDocument::new(format!("D{id}"), role, phase, statements, meta).unwrap()
        })
}

fn arb_corpus() -> impl Strategy<Value = Corpus> {
    (1usize..5)
        .prop_flat_map(|n| (0..n).map(arb_document).collect::<Vec<_>>())
        .prop_map(|docs| Corpus::new("c", SplitMode::Lines, docs).unwrap())
}

#[test]
fn corpus_text_round_trips() {
    runner(300)
        .run(&arb_corpus(), |corpus| {
            let text = write_corpus(&corpus);
            let back = parse_corpus(&text, "c", SplitMode::Lines).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(&back, &corpus);
            prop_assert_eq!(write_corpus(&back), text);
            Ok(())
        })
        .unwrap();
}

fn arb_element() -> impl Strategy<Value = Element> {
    let label = prop::sample::select(&SHARED_POOL[..]).prop_map(String::from);
    prop_oneof![
        3 => label.clone().prop_map(Element::Concept),
        1 => (label.clone(), prop::sample::select(&EdgeRelation::ALL[..]), label)
            .prop_map(|(s, r, o)| Element::edge(s, r, o)),
    ]
}

fn arb_record() -> impl Strategy<Value = AlignmentRecord> {
    let evidence = "[a-z#=()|-]([ a-z#=()|-]{0,18}[a-z#=()|-])?|";
    (arb_element(), arb_element(), 0u8..4, evidence).prop_filter_map("kinds differ", |(e, l, v, ev)| {
        let (e, l, verdict) = match v {
            0 => (Some(e), Some(l), Some(Verdict::Aligned)),
            1 => (Some(e), Some(l), Some(Verdict::Misconceived)),
            2 => (Some(e), None, None),
            _ => (None, Some(l), None),
        };
        AlignmentRecord::new(e, l, verdict, ev).ok()
    })
}

#[test]
fn alignment_records_round_trip() {
    let res = bundled();
    runner(300)
        .run(&prop::collection::vec(arb_record(), 0..8), |records| {
            let mut text = String::new();
            for r in &records {
                write_record(&mut text, r);
            }
            let back = parse_alignment(&text, "a", &res.extract).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(back, records);
            Ok(())
        })
        .unwrap();
}

#[test]
fn tally_csv_reads_back() {
    let res = bundled();
    let words = prop::sample::select(vec!["robot", "cup", "ball", "has", "gets", "the", "throws", "weights", "noise", "and"]);
    let doc = prop::collection::vec(prop::collection::vec(words, 1..8).prop_map(|w| w.join(" ")), 1..5);
    runner(200)
        .run(&prop::collection::vec(doc, 1..4), |docs| {
            let corpus = Corpus::new(
                "c",
                SplitMode::Lines,
                docs.iter()
                    .enumerate()
                    .map(|(i, t)| SourceDocument::from_texts(format!("S{i}"), Role::Expert, Phase::Single, t).unwrap())
                    .collect(),
            )
            .unwrap();
            let t = tally(&corpus, &res.extract);
            let text = write_tally_csv(&t, "abc");
            prop_assert!(text.starts_with("# config_hash=abc\n"));
            let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
            let mut concepts = 0;
            let mut interactions = 0;
            for row in rdr.records() {
                let row = row.unwrap();
                let per: BTreeMap<String, u64> = serde_json::from_str(&row[7]).unwrap();
                let (total, sources): (u64, u64) = (row[5].parse().unwrap(), row[6].parse().unwrap());
                prop_assert_eq!(per.values().sum::<u64>(), total);
                prop_assert_eq!(per.len() as u64, sources);
                match &row[1] {
                    "concept" => {
                        concepts += 1;
                        let c = t.concept(&row[0]).expect("concept row names a tallied concept");
                        prop_assert_eq!(c.per_source_counts(), &per);
                    }
                    "interaction" => {
                        interactions += 1;
                        prop_assert!(t.concept(&row[2]).is_some() && t.concept(&row[4]).is_some());
                    }
                    other => prop_assert!(false, "unknown kind {}", other),
                }
            }
            prop_assert_eq!(concepts, t.concepts().len());
            prop_assert_eq!(interactions, t.interactions().len());
            Ok(())
        })
        .unwrap();
}

#[test]
fn schema_matches_exported_shape() {
    use enarch::core::{ConceptMap, Thresholds};
    use serde_json::Value;

    let schema: Value = serde_json::from_str(include_str!("../schema/concept-map.v1.schema.json")).unwrap();
    let relations = &schema["$defs"]["relation"]["enum"];
    let words: Vec<Value> = EdgeRelation::ALL.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
    assert_eq!(relations.as_array().unwrap(), &words);

    let map = ConceptMap::from_parts("m", Role::Lay, Thresholds::new(1, 1).unwrap(), BTreeMap::new(), vec![], vec![]).unwrap();
    let doc: Value = serde_json::from_str(&enarch::formats::export_json(&map, None)).unwrap();
    let required = |v: &Value| -> Vec<String> {
        let mut r: Vec<String> = v["required"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
        r.sort();
        r
    };
    let keys = |v: &Value| -> Vec<String> { v.as_object().unwrap().keys().filter(|k| *k != "provenance").cloned().collect() };
    assert_eq!(required(&schema), keys(&doc));
    assert_eq!(required(&schema["$defs"]["map"]), keys(&doc["map"]));
}
