//! Run configuration (TOML) and its resolved, hashed form.
//!
//! ```toml
//! stoplist = "stoplist.txt"      # bundled list when absent
//! lexicon = "relations.tsv"      # bundled lexicon when absent
//! merges = "merges.txt"
//! setting = "setting.txt"
//! partof = "partof.txt"
//! alignment = "alignment.txt"
//! ngram_max = 3
//! split = "lines"                # or "sentences"
//! out = "out"
//!
//! [thresholds.expert]
//! min_total = 3
//! min_sources = 2
//! ```
//!
//! Paths are relative to the config file's directory. Thresholds exist for
//! `expert`, `lay` and `phase` (per-phase lay maps); each defaults to 3/2.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use enarch_core::{ExtractConfig, ExtractError, Normalizer, RelationLexicon, RuleSet, SplitMode, Stoplist, Thresholds};
use serde::Deserialize;
use serde_json::json;

use crate::formats::{self, FormatError};
use crate::hash::sha256_hex;

pub const BUNDLED_STOPLIST: &str = include_str!("../data/stoplist.txt");
pub const BUNDLED_LEXICON: &str = include_str!("../data/relations.tsv");

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config {path}: {message}")]
    Toml { path: String, message: String },
    #[error("config key `{key}`: file {path} does not exist")]
    MissingFile { key: &'static str, path: String },
    #[error("config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("config: {0}")]
    Extract(#[from] ExtractError),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    stoplist: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    merges: Option<PathBuf>,
    setting: Option<PathBuf>,
    partof: Option<PathBuf>,
    alignment: Option<PathBuf>,
    ngram_max: Option<usize>,
    split: Option<String>,
    out: Option<PathBuf>,
    #[serde(default)]
    thresholds: ThresholdsFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdsFile {
    expert: Option<ThresholdPair>,
    lay: Option<ThresholdPair>,
    phase: Option<ThresholdPair>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdPair {
    min_total: u64,
    min_sources: u64,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub min_total: Option<u64>,
    pub min_sources: Option<u64>,
    pub ngram_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub split: Option<SplitMode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdSet {
    pub expert: Thresholds,
    pub lay: Thresholds,
    pub phase: Thresholds,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub stoplist: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub merges: Option<PathBuf>,
    pub setting: Option<PathBuf>,
    pub partof: Option<PathBuf>,
    pub alignment: Option<PathBuf>,
    pub ngram_max: usize,
    pub split: SplitMode,
    pub thresholds: ThresholdSet,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            stoplist: None,
            lexicon: None,
            merges: None,
            setting: None,
            partof: None,
            alignment: None,
            ngram_max: ExtractConfig::DEFAULT_NGRAM_MAX,
            split: SplitMode::Lines,
            thresholds: ThresholdSet {
                expert: Thresholds::default(),
                lay: Thresholds::default(),
                phase: Thresholds::default(),
            },
            out: PathBuf::from("out"),
        }
    }
}

fn parse_split(s: &str) -> Result<SplitMode, ConfigError> {
    match s {
        "lines" => Ok(SplitMode::Lines),
        "sentences" => Ok(SplitMode::Sentences),
        other => Err(ConfigError::Invalid(format!(
            "split must be `lines` or `sentences`, got `{other}`"
        ))),
    }
}

impl RunConfig {
    /// Reads `path` (or starts from defaults), applies overrides and checks
    /// that every referenced file exists.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        let (file, base) = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                let file: ConfigFile = toml::from_str(&text).map_err(|e| ConfigError::Toml {
                    path: p.display().to_string(),
                    message: e.to_string(),
                })?;
                let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
                (file, base)
            }
            None => (ConfigFile::default(), PathBuf::new()),
        };
        let rel = |p: Option<PathBuf>| p.map(|p| base.join(p));
        let defaults = RunConfig::default();
        let pair = |p: Option<ThresholdPair>, d: Thresholds| -> Result<Thresholds, ConfigError> {
            let (mut t, mut s) = p.map_or((d.min_total(), d.min_sources()), |p| (p.min_total, p.min_sources));
            if let Some(v) = overrides.min_total {
                t = v;
            }
            if let Some(v) = overrides.min_sources {
                s = v;
            }
            Thresholds::new(t, s).map_err(|e| ConfigError::Invalid(e.to_string()))
        };
        let split = match (&overrides.split, &file.split) {
            (Some(s), _) => *s,
            (None, Some(s)) => parse_split(s)?,
            (None, None) => SplitMode::Lines,
        };
        let cfg = RunConfig {
            stoplist: rel(file.stoplist),
            lexicon: rel(file.lexicon),
            merges: rel(file.merges),
            setting: rel(file.setting),
            partof: rel(file.partof),
            alignment: rel(file.alignment),
            ngram_max: overrides.ngram_max.or(file.ngram_max).unwrap_or(defaults.ngram_max),
            split,
            thresholds: ThresholdSet {
                expert: pair(file.thresholds.expert, defaults.thresholds.expert)?,
                lay: pair(file.thresholds.lay, defaults.thresholds.lay)?,
                phase: pair(file.thresholds.phase, defaults.thresholds.phase)?,
            },
            out: overrides
                .out
                .clone()
                .or_else(|| file.out.map(|o| base.join(o)))
                .unwrap_or(defaults.out),
        };
        if cfg.ngram_max == 0 {
            return Err(ConfigError::Extract(ExtractError::NgramMaxZero));
        }
        for (key, p) in cfg.files() {
            if let Some(p) = p {
                if !p.is_file() {
                    return Err(ConfigError::MissingFile {
                        key,
                        path: p.display().to_string(),
                    });
                }
            }
        }
        Ok(cfg)
    }

    fn files(&self) -> [(&'static str, Option<&PathBuf>); 6] {
        [
            ("stoplist", self.stoplist.as_ref()),
            ("lexicon", self.lexicon.as_ref()),
            ("merges", self.merges.as_ref()),
            ("setting", self.setting.as_ref()),
            ("partof", self.partof.as_ref()),
            ("alignment", self.alignment.as_ref()),
        ]
    }
}

fn origin(p: &Path) -> String {
    p.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

/// Everything a run needs, parsed and validated, plus the config hash.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: RunConfig,
    pub extract: ExtractConfig,
    pub rules: RuleSet,
    pub setting: BTreeSet<String>,
    pub part_of: Vec<(String, String)>,
    /// sha256 of the canonical config form.
    pub hash: String,
    /// config key → sha256 of the file contents actually used.
    pub file_hashes: BTreeMap<String, String>,
}

impl Resolved {
    pub fn new(config: RunConfig) -> Result<Self, ConfigError> {
        let mut file_hashes = BTreeMap::new();
        let mut read = |key: &str, p: Option<&PathBuf>, bundled: Option<&str>| -> Result<Option<(String, String)>, ConfigError> {
            let (text, name) = match (p, bundled) {
                (Some(p), _) => (formats::read_text(p)?, origin(p)),
                (None, Some(b)) => (b.to_string(), format!("bundled {key}")),
                (None, None) => return Ok(None),
            };
            file_hashes.insert(key.to_string(), sha256_hex(text.as_bytes()));
            Ok(Some((text, name)))
        };
        let (stop_text, stop_name) = read("stoplist", config.stoplist.as_ref(), Some(BUNDLED_STOPLIST))?.expect("bundled");
        let (lex_text, lex_name) = read("lexicon", config.lexicon.as_ref(), Some(BUNDLED_LEXICON))?.expect("bundled");
        let merges = read("merges", config.merges.as_ref(), None)?;
        let setting_text = read("setting", config.setting.as_ref(), None)?;
        let partof = read("partof", config.partof.as_ref(), None)?;

        let stoplist: Stoplist = formats::parse_stoplist(&stop_text, &stop_name)?;
        let lexicon: RelationLexicon = formats::parse_lexicon(&lex_text, &lex_name)?;
        let extract = ExtractConfig::new(stoplist, lexicon, Normalizer::english(), config.ngram_max)?;
        let setting = setting_text
            .map(|(t, _)| formats::parse_setting(&t, &extract))
            .unwrap_or_default();
        let rules = match merges {
            Some((t, name)) => formats::parse_merge_rules(&t, &name, &extract, &setting)?,
            None => RuleSet::empty(),
        };
        let part_of = match partof {
            Some((t, name)) => formats::parse_part_of(&t, &name, &extract)?,
            None => Vec::new(),
        };
        let th = |t: Thresholds| json!({"min_total": t.min_total(), "min_sources": t.min_sources()});
        let canonical = json!({
            "format": 1,
            "ngram_max": config.ngram_max,
            "split": config.split.as_str(),
            "thresholds": {
                "expert": th(config.thresholds.expert),
                "lay": th(config.thresholds.lay),
                "phase": th(config.thresholds.phase),
            },
            "files": file_hashes,
        });
        let hash = sha256_hex(canonical.to_string().as_bytes());
        Ok(Resolved {
            config,
            extract,
            rules,
            setting,
            part_of,
            hash,
            file_hashes,
        })
    }

    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        Self::new(RunConfig::load(path, overrides)?)
    }
}
