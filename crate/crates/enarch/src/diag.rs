//! Structured diagnostics: one JSON object per line on stderr, kept apart
//! from artifacts and reports.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Info,
    Warn,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub level: Level,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub context: BTreeMap<String, String>,
}

#[derive(Debug, Default)]
pub struct Diagnostics {
    echo: bool,
    pub records: Vec<Diagnostic>,
}

impl Diagnostics {
    /// Records and writes each diagnostic to stderr.
    pub fn stderr() -> Self {
        Diagnostics {
            echo: true,
            records: Vec::new(),
        }
    }

    /// Records only.
    pub fn silent() -> Self {
        Diagnostics::default()
    }

    pub fn emit<I, K, V>(&mut self, level: Level, code: &str, message: impl Into<String>, context: I)
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: ToString,
    {
        let d = Diagnostic {
            level,
            code: code.to_string(),
            message: message.into(),
            context: context.into_iter().map(|(k, v)| (k.into(), v.to_string())).collect(),
        };
        if self.echo {
            let line = serde_json::to_string(&d).expect("diagnostic serializes");
            let _ = writeln!(std::io::stderr().lock(), "{line}");
        }
        self.records.push(d);
    }

    pub fn warn(&mut self, code: &str, message: impl Into<String>) {
        self.emit(Level::Warn, code, message, std::iter::empty::<(String, String)>());
    }

    pub fn has(&self, code: &str) -> bool {
        self.records.iter().any(|d| d.code == code)
    }
}
