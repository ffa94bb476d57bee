//! The subcommands. Each one loads and validates all of its inputs before
//! touching the output directory, writes its artifacts, and writes the
//! manifest last.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use enarch_core::corpus::filter_phase;
use enarch_core::dot::export_dot;
use enarch_core::synthesis::{classify, default_alignments, explanandum, phase_delta, probe_coverage};
use enarch_core::{Area, Classification, ConceptMap, Corpus, Phase, Role, Thresholds};
use serde_json::json;

use crate::config::Resolved;
use crate::diag::{Diagnostics, Level};
use crate::formats::{self, export_json, import_json, load_corpus, write_alignment_skeleton, write_tally_csv};
use crate::hash::sha256_hex;
use crate::manifest::{RunDir, TOOL};
use crate::pipeline::{reduce_corpus, Reduction};

pub const CONFIG_HASH_KEY: &str = "config_hash";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0} needs at least two of the pre, recall and post phases, found {1}")]
    SinglePhaseCorpus(String, String),
    #[error("{path}: expected a map with role {expected}, got role {actual}")]
    WrongRole {
        path: String,
        expected: Role,
        actual: Role,
    },
    #[error("maps come from different configurations: {expert_path} has config_hash {expert}, {lay_path} has {lay}")]
    ConfigHashMismatch {
        expert_path: String,
        expert: String,
        lay_path: String,
        lay: String,
    },
    #[error("{0}: map has no config_hash in its provenance")]
    MissingConfigHash(String),
    #[error("{0} mixes expert and lay documents; use `synthesize --corpus` for mixed corpora")]
    MixedCorpus(String),
}

/// Console settings for the short human-readable summaries on stdout.
#[derive(Debug, Clone, Copy, Default)]
pub struct Console {
    pub color: bool,
    pub quiet: bool,
}

impl Console {
    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn say(&self, line: &str) {
        if !self.quiet {
            println!("{line}");
        }
    }
}

struct Input {
    name: String,
    text: String,
}

impl Input {
    fn read(path: &Path) -> Result<Self> {
        let text = formats::read_text(path)?;
        Ok(Input {
            name: display_name(path),
            text,
        })
    }

    fn sha(&self) -> String {
        sha256_hex(self.text.as_bytes())
    }
}

fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn base_inputs(res: &Resolved) -> BTreeMap<String, String> {
    res.file_hashes.iter().map(|(k, v)| (format!("config:{k}"), v.clone())).collect()
}

fn load_corpus_input(path: &Path, res: &Resolved) -> Result<(Corpus, Input)> {
    let input = Input::read(path)?;
    let corpus = formats::parse_corpus(&input.text, &input.name, res.config.split)?;
    Ok((corpus, input))
}

fn reduction_text(r: &Reduction, corpus: &Input, res: &Resolved, t: Thresholds) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# config_hash: {}", res.hash);
    let _ = writeln!(out, "# corpus: {} sha256={}", corpus.name, corpus.sha());
    let _ = writeln!(out, "# thresholds: min_total={} min_sources={}", t.min_total(), t.min_sources());
    let _ = writeln!(
        out,
        "before: {} concepts (total {}), {} interactions (total {})",
        r.raw.concepts().len(),
        r.raw.concept_total(),
        r.raw.interactions().len(),
        r.raw.interaction_total()
    );
    let _ = writeln!(
        out,
        "after: {} concepts (total {}), {} interactions (total {})",
        r.reduced.concepts().len(),
        r.reduced.concept_total(),
        r.reduced.interactions().len(),
        r.reduced.interaction_total()
    );
    out.push('\n');
    let _ = write!(out, "{}", r.report);
    for (c, p) in &r.skipped_part_of {
        let _ = writeln!(out, "skipped part-of {c} -> {p} (endpoint not in map)");
    }
    out
}

/// Reduces one corpus and writes `<prefix>tally.csv`, reduction report, map
/// JSON and DOT into `run`.
#[allow(clippy::too_many_arguments)]
fn write_reduction(
    run: &mut RunDir,
    prefix: &str,
    corpus: &Corpus,
    input: &Input,
    role: Role,
    map_id: &str,
    thresholds: Thresholds,
    res: &Resolved,
    diag: &mut Diagnostics,
) -> Result<ConceptMap> {
    let mut r = run
        .stage(&format!("{prefix}reduce"), |_| {
            reduce_corpus(corpus, &res.extract, &res.rules, &res.part_of, thresholds, map_id, role)
        })
        .with_context(|| format!("building the {map_id} map"))?;
    r.map.set_provenance(CONFIG_HASH_KEY, &res.hash);
    r.map.set_provenance("corpus", &input.name);
    r.map.set_provenance("corpus_sha256", input.sha());
    r.map.set_provenance("split", res.config.split.as_str());
    r.map.set_provenance("tool", TOOL);

    if r.map.is_empty() {
        diag.emit(
            Level::Warn,
            "empty_map",
            format!("no concept in {} reaches the thresholds", input.name),
            [("map", map_id.to_string()), ("min_total", thresholds.min_total().to_string()), ("min_sources", thresholds.min_sources().to_string())],
        );
    }
    for (c, p) in &r.skipped_part_of {
        diag.emit(
            Level::Info,
            "partof_skipped",
            format!("part-of annotation {c} -> {p} skipped: endpoint not in the {map_id} map"),
            [("child", c.clone()), ("parent", p.clone())],
        );
    }
    let dot = export_dot(&r.map, None)?;
    run.stage(&format!("{prefix}write"), |run| -> Result<()> {
        run.write(&format!("{prefix}tally.csv"), write_tally_csv(&r.raw, &res.hash))?;
        run.write(&format!("{prefix}reduction_report.txt"), reduction_text(&r, input, res, thresholds))?;
        run.write(&format!("{prefix}map.json"), export_json(&r.map, None))?;
        run.write(&format!("{prefix}map.dot"), dot)?;
        Ok(())
    })?;
    Ok(r.map)
}

pub struct ReduceOutcome {
    pub manifest: PathBuf,
    pub map: ConceptMap,
}

pub fn reduce(corpus_path: &Path, res: &Resolved, diag: &mut Diagnostics, console: Console) -> Result<ReduceOutcome> {
    let (corpus, input) = load_corpus_input(corpus_path, res)?;
    let role = corpus
        .role()
        .map_err(|_| RunError::MixedCorpus(input.name.clone()))?
        .expect("a loaded corpus has documents");
    let thresholds = match role {
        Role::Expert => res.config.thresholds.expert,
        Role::Lay => res.config.thresholds.lay,
    };
    let mut run = RunDir::open(&res.config.out.join(role.as_str()))?;
    let map = write_reduction(&mut run, "", &corpus, &input, role, role.as_str(), thresholds, res, diag)?;
    let mut inputs = base_inputs(res);
    inputs.insert(format!("corpus:{}", input.name), input.sha());
    let manifest = run.finish("reduce", &res.hash, inputs)?;
    console.say(&format!(
        "{} {} map: {} concepts, {} edges -> {}",
        console.paint("reduced", "1;32"),
        role,
        map.nodes().len(),
        map.edges().len(),
        manifest.parent().unwrap_or(Path::new(".")).display()
    ));
    Ok(ReduceOutcome { manifest, map })
}

fn load_map(path: &Path, expected: Role) -> Result<(ConceptMap, Input)> {
    let input = Input::read(path)?;
    let (map, _) = import_json(&input.text, &input.name)?;
    if map.role() != expected {
        bail!(RunError::WrongRole {
            path: input.name,
            expected,
            actual: map.role(),
        });
    }
    Ok((map, input))
}

fn config_hash_of(map: &ConceptMap, name: &str) -> Result<String> {
    map.provenance()
        .get(CONFIG_HASH_KEY)
        .cloned()
        .ok_or_else(|| anyhow!(RunError::MissingConfigHash(name.to_string())))
}

fn shared_hash(expert: &ConceptMap, ex: &Input, lay: &ConceptMap, ly: &Input) -> Result<String> {
    let (a, b) = (config_hash_of(expert, &ex.name)?, config_hash_of(lay, &ly.name)?);
    if a != b {
        bail!(RunError::ConfigHashMismatch {
            expert_path: ex.name.clone(),
            expert: a,
            lay_path: ly.name.clone(),
            lay: b,
        });
    }
    Ok(a)
}

fn warn_if_config_differs(hash: &str, res: &Resolved, diag: &mut Diagnostics) {
    if hash != res.hash {
        diag.emit(
            Level::Warn,
            "config_hash_differs",
            "maps were built under a different configuration than the current one",
            [("maps", hash.to_string()), ("current", res.hash.clone())],
        );
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// Where the two maps of a synthesis come from.
#[derive(Debug, Clone)]
pub enum SynthesisSource {
    Maps { expert: PathBuf, lay: PathBuf },
    /// A corpus holding both expert and lay documents; each side is reduced
    /// first, into `out/expert` and `out/lay`.
    Corpus(PathBuf),
}

pub struct SynthesizeOutcome {
    pub manifest: PathBuf,
    pub classification: Classification,
}

fn reduce_side(corpus: &Corpus, input: &Input, role: Role, res: &Resolved, diag: &mut Diagnostics) -> Result<ConceptMap> {
    let thresholds = match role {
        Role::Expert => res.config.thresholds.expert,
        Role::Lay => res.config.thresholds.lay,
    };
    let mut run = RunDir::open(&res.config.out.join(role.as_str()))?;
    let map = write_reduction(&mut run, "", corpus, input, role, role.as_str(), thresholds, res, diag)?;
    let mut inputs = base_inputs(res);
    inputs.insert(format!("corpus:{}", input.name), input.sha());
    run.finish("reduce", &res.hash, inputs)?;
    Ok(map)
}

pub fn synthesize(
    source: &SynthesisSource,
    alignment: Option<&Path>,
    res: &Resolved,
    diag: &mut Diagnostics,
    console: Console,
) -> Result<SynthesizeOutcome> {
    let mut inputs = base_inputs(res);
    let (expert, lay, hash) = match source {
        SynthesisSource::Maps { expert, lay } => {
            let (em, ei) = load_map(expert, Role::Expert)?;
            let (lm, li) = load_map(lay, Role::Lay)?;
            let hash = shared_hash(&em, &ei, &lm, &li)?;
            warn_if_config_differs(&hash, res, diag);
            inputs.insert(format!("expert_map:{}", ei.name), ei.sha());
            inputs.insert(format!("lay_map:{}", li.name), li.sha());
            (em, lm, hash)
        }
        SynthesisSource::Corpus(path) => {
            let (corpus, input) = load_corpus_input(path, res)?;
            let (ec, lc) = corpus.split_by_role();
            if ec.is_empty() || lc.is_empty() {
                bail!("{} must hold both expert and lay documents for a synthesis", input.name);
            }
            let em = reduce_side(&ec, &input, Role::Expert, res, diag)?;
            let lm = reduce_side(&lc, &input, Role::Lay, res, diag)?;
            inputs.insert(format!("corpus:{}", input.name), input.sha());
            (em, lm, res.hash.clone())
        }
    };

    let alignment_path = alignment.map(Path::to_path_buf).or_else(|| res.config.alignment.clone());
    let records = match &alignment_path {
        Some(p) => {
            let input = Input::read(p)?;
            let recs = formats::parse_alignment(&input.text, &input.name, &res.extract)?;
            inputs.insert(format!("alignment:{}", input.name), input.sha());
            if recs.is_empty() {
                diag.emit(
                    Level::Info,
                    "default_alignment",
                    format!("{} holds no records; aligning identical labels", input.name),
                    [("alignment", input.name.clone())],
                );
                default_alignments(&expert, &lay)
            } else {
                recs
            }
        }
        None => {
            diag.warn("default_alignment", "no alignment file configured; aligning identical labels");
            default_alignments(&expert, &lay)
        }
    };

    let mut run = RunDir::open(&res.config.out.join("synthesis"))?;
    let classification = run
        .stage("classify", |_| classify(&expert, &lay, &records))
        .context("classifying the maps")?;
    for note in &classification.diagnostics {
        diag.emit(Level::Info, "alignment_note", note.clone(), [("config_hash", hash.clone())]);
    }
    let report = explanandum(&classification, &expert);
    if report.is_empty() {
        diag.warn("empty_explanandum", "nothing to explain: every expert element is known");
    }
    let expert_dot = export_dot(&expert, Some(&classification))?;
    let lay_dot = export_dot(&lay, Some(&classification))?;
    run.stage("write", |run| -> Result<()> {
        run.write(
            "classification.json",
            pretty(&json!({"schema_version": formats::SCHEMA_VERSION, "config_hash": hash, "classification": classification})),
        )?;
        run.write("explanandum.json", pretty(&json!({"config_hash": hash, "explanandum": report})))?;
        run.write("explanandum.txt", format!("# config_hash: {hash}\n{report}"))?;
        run.write("expert.dot", &expert_dot)?;
        run.write("lay.dot", &lay_dot)?;
        Ok(())
    })?;
    let manifest = run.finish("synthesize", &hash, inputs)?;

    let count = |side, area| classification.elements_in(side, area).len();
    use enarch_core::synthesis::Side;
    console.say(&format!(
        "{}  {} {}  {} {}  {} {}  {} {}",
        console.paint("classified", "1;32"),
        console.paint("A", "38;5;166"),
        count(Side::Lay, Area::A),
        console.paint("B", "34"),
        count(Side::Expert, Area::B),
        console.paint("C", "1;36"),
        count(Side::Expert, Area::C),
        console.paint("D", "36"),
        count(Side::Expert, Area::D),
    ));
    Ok(SynthesizeOutcome {
        manifest,
        classification,
    })
}

pub fn bootstrap_align(expert: &Path, lay: &Path, res: &Resolved, diag: &mut Diagnostics, console: Console) -> Result<PathBuf> {
    let (em, ei) = load_map(expert, Role::Expert)?;
    let (lm, li) = load_map(lay, Role::Lay)?;
    let hash = shared_hash(&em, &ei, &lm, &li)?;
    warn_if_config_differs(&hash, res, diag);
    let records = default_alignments(&em, &lm);
    let text = write_alignment_skeleton(&em, &lm, &records, &hash);
    let mut run = RunDir::open(&res.config.out.join("bootstrap"))?;
    let path = run.write("alignment.txt", text)?;
    let mut inputs = base_inputs(res);
    inputs.insert(format!("expert_map:{}", ei.name), ei.sha());
    inputs.insert(format!("lay_map:{}", li.name), li.sha());
    run.finish("bootstrap-align", &hash, inputs)?;
    console.say(&format!(
        "{} {} exact matches -> {}",
        console.paint("wrote", "1;32"),
        records.len(),
        path.display()
    ));
    Ok(path)
}

const LAY_PHASES: [Phase; 3] = [Phase::Pre, Phase::Recall, Phase::Post];

pub fn phases(corpus_path: &Path, expert: Option<&Path>, res: &Resolved, diag: &mut Diagnostics, console: Console) -> Result<PathBuf> {
    let (corpus, input) = load_corpus_input(corpus_path, res)?;
    match corpus.role() {
        Ok(Some(Role::Lay)) => {}
        Ok(Some(actual)) => bail!(RunError::WrongRole {
            path: input.name,
            expected: Role::Lay,
            actual,
        }),
        Ok(None) | Err(_) => bail!(RunError::MixedCorpus(input.name)),
    }
    let present: Vec<Phase> = LAY_PHASES.into_iter().filter(|p| corpus.phases().contains(p)).collect();
    if present.len() < 2 {
        let found: Vec<&str> = present.iter().map(|p| p.as_str()).collect();
        bail!(RunError::SinglePhaseCorpus(input.name, found.join(", ")));
    }
    let expert = match expert {
        Some(p) => {
            let (m, i) = load_map(p, Role::Expert)?;
            let h = config_hash_of(&m, &i.name)?;
            warn_if_config_differs(&h, res, diag);
            Some((m, i))
        }
        None => None,
    };

    let mut run = RunDir::open(&res.config.out.join("phases"))?;
    let mut maps = Vec::new();
    for p in &present {
        let sub = filter_phase(&corpus, *p);
        let map = write_reduction(
            &mut run,
            &format!("{p}."),
            &sub,
            &input,
            Role::Lay,
            &format!("lay-{p}"),
            res.config.thresholds.phase,
            res,
            diag,
        )?;
        maps.push((*p, map));
    }
    let mut pairs: Vec<(usize, usize)> = (1..maps.len()).map(|i| (i - 1, i)).collect();
    if maps.len() > 2 {
        pairs.push((0, maps.len() - 1));
    }
    for (a, b) in pairs {
        let ((pa, ma), (pb, mb)) = (&maps[a], &maps[b]);
        let delta = phase_delta(ma, mb)?;
        if delta.is_empty() {
            diag.emit(
                Level::Info,
                "empty_delta",
                format!("no change between the {pa} and {pb} maps"),
                [("from", pa.to_string()), ("to", pb.to_string())],
            );
        }
        run.write(
            &format!("delta.{pa}-{pb}.json"),
            pretty(&json!({"config_hash": res.hash, "from": pa.as_str(), "to": pb.as_str(), "delta": delta})),
        )?;
        run.write(&format!("delta.{pa}-{pb}.txt"), format!("# config_hash: {}\n# {pa} -> {pb}\n{delta}", res.hash))?;
    }
    let mut inputs = base_inputs(res);
    inputs.insert(format!("corpus:{}", input.name), input.sha());
    if let Some((em, ei)) = &expert {
        inputs.insert(format!("expert_map:{}", ei.name), ei.sha());
        if present.contains(&Phase::Recall) {
            let cov = run.stage("probe", |_| probe_coverage(em, &corpus, &res.extract, &res.rules));
            let never: Vec<&str> = cov.entries.iter().filter(|e| e.flagged).map(|e| e.label.as_str()).collect();
            if !never.is_empty() {
                diag.emit(
                    Level::Warn,
                    "zero_probe_coverage",
                    format!("{} expert concepts were never mentioned during recall", never.len()),
                    [("labels", never.join(", "))],
                );
            }
            run.write(
                "probe_coverage.json",
                pretty(&json!({"config_hash": res.hash, "probe_coverage": cov})),
            )?;
            run.write("probe_coverage.txt", format!("# config_hash: {}\n{cov}", res.hash))?;
        } else {
            diag.warn("no_recall_documents", "an expert map was given but the corpus has no recall documents");
        }
    }
    let manifest = run.finish("phases", &res.hash, inputs)?;
    console.say(&format!(
        "{} {} phase maps -> {}",
        console.paint("wrote", "1;32"),
        maps.len(),
        manifest.parent().unwrap_or(Path::new(".")).display()
    ));
    Ok(manifest)
}

/// Lints inputs without writing anything: corpora, and map JSON files
/// (by `.json` extension). Every file is checked; the first error is
/// returned after all diagnostics have been emitted.
pub fn validate(paths: &[PathBuf], res: &Resolved, diag: &mut Diagnostics, console: Console) -> Result<()> {
    let mut failures = 0usize;
    for p in paths {
        let outcome: Result<String> = if p.extension().is_some_and(|e| e == "json") {
            Input::read(p).and_then(|i| {
                let (m, _) = import_json(&i.text, &i.name)?;
                Ok(format!("{} map, {} nodes, {} edges", m.role(), m.nodes().len(), m.edges().len()))
            })
        } else {
            load_corpus(p, res.config.split)
                .map(|c| format!("{} documents, phases {:?}", c.len(), c.phases().iter().map(|p| p.as_str()).collect::<Vec<_>>()))
                .map_err(Into::into)
        };
        match outcome {
            Ok(summary) => console.say(&format!("{} {}: {summary}", console.paint("ok", "32"), p.display())),
            Err(e) => {
                failures += 1;
                diag.emit(Level::Error, "invalid_input", format!("{e:#}"), [("path", p.display().to_string())]);
            }
        }
    }
    console.say(&format!("config_hash {}", res.hash));
    if failures > 0 {
        bail!("{failures} of {} inputs failed validation", paths.len());
    }
    Ok(())
}
