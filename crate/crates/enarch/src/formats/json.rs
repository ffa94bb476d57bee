//! Versioned JSON form of a concept map, optionally with its classification.
//! The schema ships as `schema/concept-map.v1.schema.json`.

use std::collections::BTreeMap;

use enarch_core::synthesis::Side;
use enarch_core::{Classification, ConceptMap, Role, Thresholds};
use enarch_core::cmap::{ConceptNode, Edge};
use serde::{Deserialize, Serialize};

use super::FormatError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapDocument {
    pub schema_version: u32,
    pub map: ConceptMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: u32,
    map: RawMap,
    #[serde(default)]
    classification: Option<Classification>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    map_id: String,
    role: Role,
    thresholds: RawThresholds,
    #[serde(default)]
    provenance: BTreeMap<String, String>,
    nodes: Vec<ConceptNode>,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThresholds {
    min_total: u64,
    min_sources: u64,
}

/// Pretty-printed, newline-terminated.
pub fn export_json(map: &ConceptMap, classification: Option<&Classification>) -> String {
    let doc = MapDocument {
        schema_version: SCHEMA_VERSION,
        map: map.clone(),
        classification: classification.cloned(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("map serializes");
    s.push('\n');
    s
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn violation(origin: &str, pointer: impl Into<String>, reason: impl Into<String>) -> FormatError {
    FormatError::SchemaViolation {
        origin: origin.to_string(),
        pointer: pointer.into(),
        reason: reason.into(),
    }
}

/// Parses and validates a map document. Violations name the offending value
/// with a JSON pointer.
pub fn import_json(text: &str, origin: &str) -> Result<(ConceptMap, Option<Classification>), FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let p = pointer(e.path());
        violation(origin, p, e.into_inner().to_string())
    })?;
    if raw.schema_version != SCHEMA_VERSION {
        return Err(violation(
            origin,
            "/schema_version",
            format!("unsupported version {} (expected {SCHEMA_VERSION})", raw.schema_version),
        ));
    }
    let m = raw.map;
    let thresholds = Thresholds::new(m.thresholds.min_total, m.thresholds.min_sources)
        .map_err(|e| violation(origin, "/map/thresholds", e.to_string()))?;
    let map = ConceptMap::from_parts(m.map_id, m.role, thresholds, m.provenance, m.nodes, m.edges).map_err(|e| {
        let p = match e.location() {
            Some((list, index, field)) => format!("/map/{list}/{index}/{field}"),
            None => "/map/edges".to_string(),
        };
        violation(origin, p, e.to_string())
    })?;
    if let Some(c) = &raw.classification {
        let side = match map.role() {
            Role::Expert => Side::Expert,
            Role::Lay => Side::Lay,
        };
        if let Some(el) = map.elements().find(|el| c.area(side, el).is_none()) {
            return Err(violation(
                origin,
                "/classification",
                format!("no area for map element {el}"),
            ));
        }
    }
    Ok((map, raw.classification))
}
