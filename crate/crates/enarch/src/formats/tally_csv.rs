//! Tally CSV: one row per concept and per interaction, preceded by a
//! `# config_hash=` comment line.

use enarch_core::Tally;

pub const HEADER: [&str; 8] = [
    "label",
    "kind",
    "subject",
    "relation",
    "object",
    "total_count",
    "source_count",
    "per_source",
];

pub fn write_tally_csv(tally: &Tally, config_hash: &str) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(HEADER).expect("write to memory");
    for c in tally.concepts().values() {
        let per = serde_json::to_string(c.per_source_counts()).expect("counts serialize");
        w.write_record([
            c.label(),
            "concept",
            "",
            "",
            "",
            &c.total_count().to_string(),
            &c.source_count().to_string(),
            &per,
        ])
        .expect("write to memory");
    }
    for r in tally.interactions().values() {
        let per = serde_json::to_string(r.per_source_counts()).expect("counts serialize");
        w.write_record([
            &r.key().to_string(),
            "interaction",
            r.subject(),
            r.relation().word(),
            r.object(),
            &r.total_count().to_string(),
            &r.source_count().to_string(),
            &per,
        ])
        .expect("write to memory");
    }
    let body = String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input");
    format!("# config_hash={config_hash}\n{body}")
}
