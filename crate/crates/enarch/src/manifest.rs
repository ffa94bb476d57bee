//! Output directories and run manifests.
//!
//! A run takes a lock file in its output directory, removes any earlier
//! manifest, writes its artifacts and writes `manifest.json` last. A
//! directory holds a manifest only if the run that produced its artifacts
//! completed.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::hash::sha256_hex;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const LOCK_FILE: &str = ".enarch.lock";
pub const TOOL: &str = concat!("enarch ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub command: String,
    pub config_hash: String,
    /// input name → sha256
    pub inputs: BTreeMap<String, String>,
    /// artifact file name → sha256
    pub artifacts: BTreeMap<String, String>,
    pub stages: Vec<StageTiming>,
}

#[derive(Debug, thiserror::Error)]
pub enum RunDirError {
    #[error("output directory {0} is locked by another run (remove {1} if no run is active)")]
    Locked(String, String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> RunDirError + '_ {
    move |source| RunDirError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Exclusive handle on one output directory for the duration of a run.
#[derive(Debug)]
pub struct RunDir {
    dir: PathBuf,
    lock: PathBuf,
    artifacts: BTreeMap<String, String>,
    stages: Vec<StageTiming>,
}

impl RunDir {
    pub fn open(dir: &Path) -> Result<Self, RunDirError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let lock = dir.join(LOCK_FILE);
        match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
            }
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                return Err(RunDirError::Locked(dir.display().to_string(), lock.display().to_string()))
            }
            Err(e) => return Err(io_err(&lock)(e)),
        }
        let run = RunDir {
            dir: dir.to_path_buf(),
            lock,
            artifacts: BTreeMap::new(),
            stages: Vec::new(),
        };
        let manifest = dir.join(MANIFEST_FILE);
        match fs::remove_file(&manifest) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(io_err(&manifest)(e)),
        }
        Ok(run)
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    /// Writes through a temporary file and records the content hash.
    pub fn write(&mut self, name: &str, contents: impl AsRef<[u8]>) -> Result<PathBuf, RunDirError> {
        let bytes = contents.as_ref();
        let path = self.dir.join(name);
        let tmp = self.dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        self.artifacts.insert(name.to_string(), sha256_hex(bytes));
        Ok(path)
    }

    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.stages.push(StageTiming {
            stage: name.to_string(),
            micros: start.elapsed().as_micros() as u64,
        });
        out
    }

    pub fn artifacts(&self) -> &BTreeMap<String, String> {
        &self.artifacts
    }

    /// Writes the manifest and releases the lock.
    pub fn finish(
        self,
        command: &str,
        config_hash: &str,
        inputs: BTreeMap<String, String>,
    ) -> Result<PathBuf, RunDirError> {
        let manifest = RunManifest {
            tool: TOOL.to_string(),
            command: command.to_string(),
            config_hash: config_hash.to_string(),
            inputs,
            artifacts: self.artifacts.clone(),
            stages: self.stages.clone(),
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        let path = self.dir.join(MANIFEST_FILE);
        let tmp = self.dir.join(format!(".{MANIFEST_FILE}.tmp"));
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        Ok(path)
    }
}

impl Drop for RunDir {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.lock);
    }
}

pub fn read_manifest(path: &Path) -> anyhow::Result<RunManifest> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
