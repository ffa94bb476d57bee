//! The typed concept map.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Role;
use crate::extract::{Relation, Tally};
use crate::reduce::Thresholds;

/// Edge vocabulary: the four interaction relations plus hierarchical part-of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRelation {
    Has,
    Gets,
    Produces,
    Does,
    PartOf,
}

impl EdgeRelation {
    pub const ALL: [EdgeRelation; 5] = [
        EdgeRelation::Has,
        EdgeRelation::Gets,
        EdgeRelation::Produces,
        EdgeRelation::Does,
        EdgeRelation::PartOf,
    ];

    pub fn word(self) -> &'static str {
        match self {
            EdgeRelation::Has => "has",
            EdgeRelation::Gets => "gets",
            EdgeRelation::Produces => "produces",
            EdgeRelation::Does => "does",
            EdgeRelation::PartOf => "part of",
        }
    }

    pub fn parse(s: &str) -> Option<EdgeRelation> {
        match s {
            "part of" | "part_of" | "partof" => Some(EdgeRelation::PartOf),
            other => Relation::parse(other).map(EdgeRelation::from),
        }
    }

    pub fn style(self) -> EdgeStyle {
        match self {
            EdgeRelation::PartOf => EdgeStyle::Dashed,
            _ => EdgeStyle::Solid,
        }
    }
}

impl From<Relation> for EdgeRelation {
    fn from(r: Relation) -> Self {
        match r {
            Relation::Has => EdgeRelation::Has,
            Relation::Gets => EdgeRelation::Gets,
            Relation::Produces => EdgeRelation::Produces,
            Relation::Does => EdgeRelation::Does,
        }
    }
}

impl fmt::Display for EdgeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStyle {
    Solid,
    Dashed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptNode {
    pub label: String,
    pub total_count: u64,
    pub source_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub subject: String,
    pub relation: EdgeRelation,
    pub object: String,
    pub total_count: u64,
    pub source_count: u64,
}

impl Edge {
    pub fn style(&self) -> EdgeStyle {
        self.relation.style()
    }

    pub fn element(&self) -> Element {
        Element::edge(&self.subject, self.relation, &self.object)
    }

    fn sort_key(&self) -> (&str, &str, &str) {
        (&self.subject, &self.object, self.relation.word())
    }
}

/// A classifiable piece of a concept map: a concept node or an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Concept(String),
    Edge {
        subject: String,
        relation: EdgeRelation,
        object: String,
    },
}

impl Element {
    pub fn concept(label: impl Into<String>) -> Self {
        Element::Concept(label.into())
    }

    pub fn edge(subject: impl Into<String>, relation: EdgeRelation, object: impl Into<String>) -> Self {
        Element::Edge {
            subject: subject.into(),
            relation,
            object: object.into(),
        }
    }

    pub fn is_concept(&self) -> bool {
        matches!(self, Element::Concept(_))
    }

    /// Parses `label` or `(subject | relation | object)`.
    pub fn parse(s: &str) -> Option<Element> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split('|').map(str::trim).collect();
            if parts.len() != 3 || parts[0].is_empty() || parts[2].is_empty() {
                return None;
            }
            let relation = EdgeRelation::parse(parts[1])?;
            return Some(Element::edge(parts[0], relation, parts[2]));
        }
        if s.is_empty() || s.contains(['|', '(', ')']) {
            return None;
        }
        Some(Element::concept(s))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Concept(l) => f.write_str(l),
            Element::Edge {
                subject,
                relation,
                object,
            } => write!(f, "({subject} | {relation} | {object})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("node {index}: empty label")]
    EmptyLabel { index: usize },
    #[error("node {index}: duplicate label `{label}`")]
    DuplicateNode { index: usize, label: String },
    #[error("node {index} (`{label}`) is below the map thresholds")]
    NodeBelowThreshold { index: usize, label: String },
    #[error("edge {index}: endpoint `{label}` is not a node")]
    DanglingEdge {
        index: usize,
        field: &'static str,
        label: String,
    },
    #[error("edge {index}: self-loop on `{label}`")]
    SelfLoop { index: usize, label: String },
    #[error("edge {index}: duplicate edge")]
    DuplicateEdge { index: usize },
    #[error("edge {index} is below the map thresholds")]
    EdgeBelowThreshold { index: usize },
    #[error("part-of cycle: {}", .0.join(" -> "))]
    PartOfCycle(Vec<String>),
}

impl MapError {
    /// (`nodes` | `edges`, index, field) of the offending value, if it has one.
    pub fn location(&self) -> Option<(&'static str, usize, &'static str)> {
        match self {
            MapError::EmptyLabel { index } | MapError::DuplicateNode { index, .. } => {
                Some(("nodes", *index, "label"))
            }
            MapError::NodeBelowThreshold { index, .. } => Some(("nodes", *index, "total_count")),
            MapError::DanglingEdge { index, field, .. } => Some(("edges", *index, field)),
            MapError::SelfLoop { index, .. } => Some(("edges", *index, "object")),
            MapError::DuplicateEdge { index } => Some(("edges", *index, "relation")),
            MapError::EdgeBelowThreshold { index } => Some(("edges", *index, "total_count")),
            MapError::PartOfCycle(_) => None,
        }
    }
}

/// Concept nodes and typed edges, both kept in label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptMap {
    map_id: String,
    role: Role,
    thresholds: Thresholds,
    /// Free-form provenance (config hash, input hashes, ...).
    provenance: BTreeMap<String, String>,
    nodes: Vec<ConceptNode>,
    edges: Vec<Edge>,
}

impl ConceptMap {
    pub fn empty(map_id: impl Into<String>, role: Role, thresholds: Thresholds) -> Self {
        ConceptMap {
            map_id: map_id.into(),
            role,
            thresholds,
            provenance: BTreeMap::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Validates every map invariant and sorts nodes and edges. Error
    /// indices refer to the input order.
    pub fn from_parts(
        map_id: impl Into<String>,
        role: Role,
        thresholds: Thresholds,
        provenance: BTreeMap<String, String>,
        mut nodes: Vec<ConceptNode>,
        mut edges: Vec<Edge>,
    ) -> Result<Self, MapError> {
        let mut labels = BTreeSet::new();
        for (index, n) in nodes.iter().enumerate() {
            if n.label.is_empty() {
                return Err(MapError::EmptyLabel { index });
            }
            if !labels.insert(n.label.as_str()) {
                return Err(MapError::DuplicateNode {
                    index,
                    label: n.label.clone(),
                });
            }
            if !thresholds.admits(n.total_count, n.source_count) {
                return Err(MapError::NodeBelowThreshold {
                    index,
                    label: n.label.clone(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        for (index, e) in edges.iter().enumerate() {
            for (field, label) in [("subject", &e.subject), ("object", &e.object)] {
                if !labels.contains(label.as_str()) {
                    return Err(MapError::DanglingEdge {
                        index,
                        field,
                        label: label.clone(),
                    });
                }
            }
            if e.subject == e.object {
                return Err(MapError::SelfLoop {
                    index,
                    label: e.subject.clone(),
                });
            }
            if !seen.insert((e.subject.as_str(), e.relation, e.object.as_str())) {
                return Err(MapError::DuplicateEdge { index });
            }
            if e.relation != EdgeRelation::PartOf && !thresholds.admits(e.total_count, e.source_count) {
                return Err(MapError::EdgeBelowThreshold { index });
            }
        }
        check_part_of_acyclic(&edges)?;
        nodes.sort_by(|a, b| a.label.cmp(&b.label));
        edges.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(ConceptMap {
            map_id: map_id.into(),
            role,
            thresholds,
            provenance,
            nodes,
            edges,
        })
    }

    pub fn map_id(&self) -> &str {
        &self.map_id
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }

    pub fn provenance(&self) -> &BTreeMap<String, String> {
        &self.provenance
    }

    pub fn set_provenance(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.provenance.insert(key.into(), value.into());
    }

    pub fn nodes(&self) -> &[ConceptNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, label: &str) -> Option<&ConceptNode> {
        self.nodes
            .binary_search_by(|n| n.label.as_str().cmp(label))
            .ok()
            .map(|i| &self.nodes[i])
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, element: &Element) -> bool {
        match element {
            Element::Concept(l) => self.node(l).is_some(),
            Element::Edge {
                subject,
                relation,
                object,
            } => self
                .edges
                .iter()
                .any(|e| &e.subject == subject && e.relation == *relation && &e.object == object),
        }
    }

    /// Every node then every edge, in export order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.nodes
            .iter()
            .map(|n| Element::concept(n.label.clone()))
            .chain(self.edges.iter().map(Edge::element))
    }

    /// (total_count, source_count) of an element.
    pub fn counts(&self, element: &Element) -> Option<(u64, u64)> {
        match element {
            Element::Concept(l) => self.node(l).map(|n| (n.total_count, n.source_count)),
            Element::Edge {
                subject,
                relation,
                object,
            } => self
                .edges
                .iter()
                .find(|e| &e.subject == subject && e.relation == *relation && &e.object == object)
                .map(|e| (e.total_count, e.source_count)),
        }
    }
}

impl<'de> Deserialize<'de> for ConceptMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
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
        let raw = Raw::deserialize(d)?;
        let th = Thresholds::new(raw.thresholds.min_total, raw.thresholds.min_sources)
            .map_err(serde::de::Error::custom)?;
        ConceptMap::from_parts(raw.map_id, raw.role, th, raw.provenance, raw.nodes, raw.edges)
            .map_err(serde::de::Error::custom)
    }
}

fn check_part_of_acyclic(edges: &[Edge]) -> Result<(), MapError> {
    let mut parents: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for e in edges.iter().filter(|e| e.relation == EdgeRelation::PartOf) {
        parents.entry(&e.subject).or_default().push(&e.object);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: BTreeMap<&str, u8> = BTreeMap::new();
    let mut path: Vec<&str> = Vec::new();

    fn visit<'a>(
        node: &'a str,
        parents: &BTreeMap<&'a str, Vec<&'a str>>,
        state: &mut BTreeMap<&'a str, u8>,
        path: &mut Vec<&'a str>,
    ) -> Result<(), MapError> {
        match state.get(node).copied().unwrap_or(0) {
            2 => return Ok(()),
            1 => {
                let start = path.iter().position(|n| *n == node).unwrap_or(0);
                let mut cycle: Vec<String> = path[start..].iter().map(|s| s.to_string()).collect();
                cycle.push(node.to_string());
                return Err(MapError::PartOfCycle(cycle));
            }
            _ => {}
        }
        state.insert(node, 1);
        path.push(node);
        if let Some(ps) = parents.get(node) {
            for p in ps {
                visit(p, parents, state, path)?;
            }
        }
        path.pop();
        state.insert(node, 2);
        Ok(())
    }

    let starts: Vec<&str> = parents.keys().copied().collect();
    for n in starts {
        visit(n, &parents, &mut state, &mut path)?;
    }
    Ok(())
}

/// One node per reduced concept, one edge per reduced interaction, plus the
/// part-of annotations (`child`, `parent`) whose endpoints are both in the
/// map. Returns the map and the annotations that were skipped because an
/// endpoint is not a node.
pub fn build_map(
    map_id: impl Into<String>,
    role: Role,
    reduced: &Tally,
    part_of: &[(String, String)],
    thresholds: Thresholds,
) -> Result<(ConceptMap, Vec<(String, String)>), MapError> {
    let nodes: Vec<ConceptNode> = reduced
        .concepts()
        .values()
        .map(|c| ConceptNode {
            label: c.label().to_string(),
            total_count: c.total_count(),
            source_count: c.source_count(),
        })
        .collect();
    let mut edges: Vec<Edge> = reduced
        .interactions()
        .values()
        .map(|i| Edge {
            subject: i.subject().to_string(),
            relation: i.relation().into(),
            object: i.object().to_string(),
            total_count: i.total_count(),
            source_count: i.source_count(),
        })
        .collect();
    let mut skipped = Vec::new();
    let mut seen = BTreeSet::new();
    for (child, parent) in part_of {
        if reduced.concept(child).is_none() || reduced.concept(parent).is_none() {
            skipped.push((child.clone(), parent.clone()));
            continue;
        }
        if child == parent {
            return Err(MapError::PartOfCycle(alloc::vec![child.clone(), parent.clone()]));
        }
        if seen.insert((child.as_str(), parent.as_str())) {
            edges.push(Edge {
                subject: child.clone(),
                relation: EdgeRelation::PartOf,
                object: parent.clone(),
                total_count: 0,
                source_count: 0,
            });
        }
    }
    let map = ConceptMap::from_parts(map_id, role, thresholds, BTreeMap::new(), nodes, edges)?;
    Ok((map, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{ConceptRecord, InteractionKey, InteractionRecord};
    use alloc::vec;

    fn reduced(labels: &[&str], edges: &[(&str, Relation, &str)]) -> Tally {
        Tally::from_records(
            labels
                .iter()
                .map(|l| ConceptRecord::with_counts(*l, [("E1", 2), ("E2", 1)])),
            edges.iter().map(|(s, r, o)| {
                InteractionRecord::with_counts(InteractionKey::new(*s, *r, *o), [("E1", 2), ("E2", 1)])
            }),
        )
        .unwrap()
    }

    fn pairs(xs: &[(&str, &str)]) -> Vec<(String, String)> {
        xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn algorithm_has_weight() {
        let t = reduced(&["algorithm", "weight"], &[("algorithm", Relation::Has, "weight")]);
        let (m, skipped) = build_map("expert", Role::Expert, &t, &[], Thresholds::default()).unwrap();
        assert_eq!(m.nodes().len(), 2);
        assert_eq!(m.edges().len(), 1);
        assert_eq!(m.edges()[0].style(), EdgeStyle::Solid);
        assert!(skipped.is_empty());
    }

    #[test]
    fn empty_map_is_valid() {
        let (m, _) = build_map("e", Role::Expert, &Tally::new(), &[], Thresholds::default()).unwrap();
        assert!(m.is_empty());
        assert!(m.edges().is_empty());
    }

    #[test]
    fn part_of_cycle_rejected() {
        let t = reduced(&["a", "b"], &[]);
        let err = build_map("e", Role::Expert, &t, &pairs(&[("a", "b"), ("b", "a")]), Thresholds::default())
            .unwrap_err();
        assert!(matches!(err, MapError::PartOfCycle(_)));
        let err = build_map("e", Role::Expert, &t, &pairs(&[("a", "a")]), Thresholds::default()).unwrap_err();
        assert!(matches!(err, MapError::PartOfCycle(_)));
    }

    #[test]
    fn part_of_is_dashed_and_dag_allowed() {
        let t = reduced(&["apple", "fruit", "food"], &[]);
        let (m, skipped) = build_map(
            "e",
            Role::Expert,
            &t,
            &pairs(&[("apple", "fruit"), ("fruit", "food"), ("apple", "food"), ("pear", "fruit")]),
            Thresholds::default(),
        )
        .unwrap();
        assert_eq!(m.edges().len(), 3);
        assert!(m.edges().iter().all(|e| e.style() == EdgeStyle::Dashed));
        assert_eq!(skipped, pairs(&[("pear", "fruit")]));
    }

    #[test]
    fn isolated_nodes_kept() {
        let t = reduced(&["a", "b", "lonely"], &[("a", Relation::Gets, "b")]);
        let (m, _) = build_map("e", Role::Expert, &t, &[], Thresholds::default()).unwrap();
        assert!(m.node("lonely").is_some());
    }

    #[test]
    fn from_parts_reports_dangling_edge_location() {
        let err = ConceptMap::from_parts(
            "m",
            Role::Lay,
            Thresholds::new(1, 1).unwrap(),
            BTreeMap::new(),
            vec![ConceptNode { label: "a".into(), total_count: 1, source_count: 1 }],
            vec![Edge {
                subject: "a".into(),
                relation: EdgeRelation::Has,
                object: "ghost".into(),
                total_count: 1,
                source_count: 1,
            }],
        )
        .unwrap_err();
        assert_eq!(err.location(), Some(("edges", 0, "object")));
    }

    #[test]
    fn element_syntax() {
        assert_eq!(Element::parse("movement primitive"), Some(Element::concept("movement primitive")));
        let e = Element::parse("(algorithm | has | weight)").unwrap();
        assert_eq!(e, Element::edge("algorithm", EdgeRelation::Has, "weight"));
        assert_eq!(Element::parse(&alloc::format!("{e}")), Some(e));
        assert_eq!(
            Element::parse("(weight | part of | algorithm)"),
            Some(Element::edge("weight", EdgeRelation::PartOf, "algorithm"))
        );
        assert_eq!(Element::parse("(a | likes | b)"), None);
        assert_eq!(Element::parse(""), None);
    }
}
