//! Graphviz DOT export of concept maps, and a small DOT grammar checker.
//!
//! Export is deterministic: nodes and edges come out in label order,
//! interaction edges are solid and labelled with their relation word,
//! part-of edges are dashed. With a classification, nodes and edges take
//! the area palette below; on a lay map the expert-side missing concepts are
//! added as transparent "ghost" nodes in a `cluster_missing` subgraph.
//!
//! | area | fill                     | border    |
//! |------|--------------------------|-----------|
//! | A    | dark orange              | dark orange |
//! | B    | orange                   | blue      |
//! | C    | blue→orange gradient     | turquoise |
//! | D    | turquoise                | turquoise |
//! | D ghost | translucent turquoise | turquoise, dashed |

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::cmap::{ConceptMap, EdgeRelation, Element};
use crate::corpus::Role;
use crate::synthesis::{Area, Classification, Side};

pub const DARK_ORANGE: &str = "#c0570b";
pub const ORANGE: &str = "#f5a04a";
pub const BLUE: &str = "#1f5fa8";
pub const TURQUOISE: &str = "#30c5c5";
pub const TURQUOISE_TRANSPARENT: &str = "#30c5c566";

/// DOT attributes a classified element takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AreaStyle {
    pub fillcolor: &'static str,
    pub color: &'static str,
    pub penwidth: u8,
    pub edge_color: &'static str,
}

pub fn area_style(area: Area) -> AreaStyle {
    match area {
        Area::A => AreaStyle {
            fillcolor: DARK_ORANGE,
            color: DARK_ORANGE,
            penwidth: 1,
            edge_color: DARK_ORANGE,
        },
        Area::B => AreaStyle {
            fillcolor: ORANGE,
            color: BLUE,
            penwidth: 2,
            edge_color: BLUE,
        },
        Area::C => AreaStyle {
            fillcolor: "#1f5fa8:#f5a04a",
            color: TURQUOISE,
            penwidth: 3,
            edge_color: "#f5a04a:#30c5c5",
        },
        Area::D => AreaStyle {
            fillcolor: TURQUOISE,
            color: TURQUOISE,
            penwidth: 1,
            edge_color: TURQUOISE,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DotExportError {
    #[error("classification has no area for {0}")]
    IncompleteClassification(String),
}

const KEYWORDS: [&str; 6] = ["node", "edge", "graph", "digraph", "subgraph", "strict"];

/// Bare identifier when possible, otherwise a quoted string.
pub fn dot_id(s: &str) -> String {
    let bare = !s.is_empty()
        && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(s));
    if bare {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn quoted(s: &str) -> String {
    let id = dot_id(s);
    if id.starts_with('"') {
        id
    } else {
        format!("\"{id}\"")
    }
}

/// Renders a map. The classification side is picked from the map's role;
/// it must cover every node and edge.
pub fn export_dot(map: &ConceptMap, classification: Option<&Classification>) -> Result<String, DotExportError> {
    let side = match map.role() {
        Role::Expert => Side::Expert,
        Role::Lay => Side::Lay,
    };
    let area_of = |el: &Element| -> Result<Option<Area>, DotExportError> {
        match classification {
            None => Ok(None),
            Some(c) => c
                .area(side, el)
                .map(Some)
                .ok_or_else(|| DotExportError::IncompleteClassification(el.to_string())),
        }
    };

    let mut out = String::new();
    for (k, v) in map.provenance() {
        let _ = writeln!(out, "// {k}: {v}");
    }
    let _ = writeln!(out, "digraph {} {{", dot_id(map.map_id()));
    out.push_str("  graph [rankdir=LR];\n");
    out.push_str("  node [shape=box];\n");
    for n in map.nodes() {
        let el = Element::concept(n.label.clone());
        let _ = write!(out, "  {}", dot_id(&n.label));
        match area_of(&el)? {
            None => {}
            Some(a) => {
                let s = area_style(a);
                let _ = write!(
                    out,
                    " [style=filled, fillcolor={}, color={}, penwidth={}, tooltip={}]",
                    quoted(s.fillcolor),
                    quoted(s.color),
                    s.penwidth,
                    quoted(&format!("{a} {}", a.name()))
                );
            }
        }
        out.push_str(";\n");
    }
    for e in map.edges() {
        let _ = write!(
            out,
            "  {} -> {} [label={}",
            dot_id(&e.subject),
            dot_id(&e.object),
            quoted(e.relation.word())
        );
        if e.relation == EdgeRelation::PartOf {
            out.push_str(", style=dashed");
        }
        if let Some(a) = area_of(&e.element())? {
            let _ = write!(out, ", color={}", quoted(area_style(a).edge_color));
        }
        out.push_str("];\n");
    }
    if let (Some(c), Role::Lay) = (classification, map.role()) {
        let ghosts: BTreeSet<&str> = c
            .expert_assignments
            .iter()
            .filter_map(|(el, a)| match (el, a) {
                (Element::Concept(l), Area::D) => Some(l.as_str()),
                _ => None,
            })
            .collect();
        if !ghosts.is_empty() {
            out.push_str("  subgraph cluster_missing {\n");
            out.push_str("    label=\"missing (D)\";\n    style=dashed;\n");
            for g in ghosts {
                let _ = writeln!(
                    out,
                    "    {} [label={}, style=\"filled,dashed\", fillcolor={}, color={}];",
                    quoted(&format!("missing: {g}")),
                    quoted(g),
                    quoted(TURQUOISE_TRANSPARENT),
                    quoted(TURQUOISE)
                );
            }
            out.push_str("  }\n");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Parsed form of a DOT document, flattened over subgraphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DotGraph {
    pub strict: bool,
    pub directed: bool,
    pub id: Option<String>,
    pub nodes: Vec<DotNode>,
    pub edges: Vec<DotEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotNode {
    pub id: String,
    pub attrs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotEdge {
    pub from: String,
    pub to: String,
    pub attrs: Vec<(String, String)>,
}

impl DotEdge {
    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attrs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl DotNode {
    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attrs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("DOT syntax error at {line}:{col}: {message}")]
pub struct DotSyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tk {
    Id { text: String, quoted: bool },
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Colon,
    Eq,
    Arrow,
    Line,
}

struct Lexed {
    tok: Tk,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>, DotSyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, m: &str| DotSyntaxError {
        line,
        col,
        message: m.to_string(),
    };
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' && col == 1 {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(err(l0, c0, "unterminated comment"));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        let single = match c {
            '{' => Some(Tk::LBrace),
            '}' => Some(Tk::RBrace),
            '[' => Some(Tk::LBracket),
            ']' => Some(Tk::RBracket),
            ';' => Some(Tk::Semi),
            ',' => Some(Tk::Comma),
            ':' => Some(Tk::Colon),
            '=' => Some(Tk::Eq),
            _ => None,
        };
        if let Some(t) = single {
            bump!();
            out.push(Lexed { tok: t, line: l0, col: c0 });
            continue;
        }
        if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            let t = if chars[i + 1] == '>' { Tk::Arrow } else { Tk::Line };
            bump!();
            bump!();
            out.push(Lexed { tok: t, line: l0, col: c0 });
            continue;
        }
        if c == '"' {
            bump!();
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated string")),
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') if chars.get(i + 1) == Some(&'"') => {
                        text.push('"');
                        bump!();
                        bump!();
                    }
                    Some('\\') if chars.get(i + 1) == Some(&'\\') => {
                        text.push('\\');
                        bump!();
                        bump!();
                    }
                    Some(&ch) => {
                        text.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Lexed {
                tok: Tk::Id { text, quoted: true },
                line: l0,
                col: c0,
            });
            continue;
        }
        if c == '+' {
            // string concatenation: previous and next tokens must be quoted strings
            bump!();
            out.push(Lexed {
                tok: Tk::Id { text: "+".into(), quoted: false },
                line: l0,
                col: c0,
            });
            continue;
        }
        if c == '<' {
            let mut depth = 0usize;
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated HTML string")),
                    Some('<') => depth += 1,
                    Some('>') => {
                        depth -= 1;
                        if depth == 0 {
                            bump!();
                            break;
                        }
                    }
                    _ => {}
                }
                text.push(chars[i]);
                bump!();
            }
            out.push(Lexed {
                tok: Tk::Id { text, quoted: true },
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' || !c.is_ascii() {
            let mut text = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || !chars[i].is_ascii()) {
                text.push(chars[i]);
                bump!();
            }
            out.push(Lexed {
                tok: Tk::Id { text, quoted: false },
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_digit() || c == '.' || (c == '-' && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit() || *n == '.')) {
            let mut text = String::new();
            text.push(c);
            bump!();
            let mut dot = c == '.';
            while i < chars.len() && (chars[i].is_ascii_digit() || (chars[i] == '.' && !dot)) {
                dot |= chars[i] == '.';
                text.push(chars[i]);
                bump!();
            }
            if text == "-" || text == "." || text == "-." {
                return Err(err(l0, c0, "malformed numeral"));
            }
            out.push(Lexed {
                tok: Tk::Id { text, quoted: false },
                line: l0,
                col: c0,
            });
            continue;
        }
        return Err(err(l0, c0, &format!("unexpected character `{c}`")));
    }
    merge_concatenations(out)
}

fn merge_concatenations(toks: Vec<Lexed>) -> Result<Vec<Lexed>, DotSyntaxError> {
    let mut out: Vec<Lexed> = Vec::with_capacity(toks.len());
    let mut it = toks.into_iter().peekable();
    while let Some(t) = it.next() {
        if matches!(&t.tok, Tk::Id { text, quoted: false } if text == "+") {
            let prev_ok = matches!(out.last(), Some(Lexed { tok: Tk::Id { quoted: true, .. }, .. }));
            let next = it.next();
            match (prev_ok, next) {
                (true, Some(Lexed { tok: Tk::Id { text: rhs, quoted: true }, .. })) => {
                    if let Some(Lexed { tok: Tk::Id { text, .. }, .. }) = out.last_mut() {
                        text.push_str(&rhs);
                    }
                }
                _ => {
                    return Err(DotSyntaxError {
                        line: t.line,
                        col: t.col,
                        message: "`+` must join two quoted strings".into(),
                    })
                }
            }
            continue;
        }
        out.push(t);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    directed: bool,
    graph: DotGraph,
    last_was_subgraph: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tk> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tk> {
        self.toks.get(self.pos + k).map(|l| &l.tok)
    }

    fn error(&self, message: &str) -> DotSyntaxError {
        let (line, col) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some(l) => (l.line, l.col),
            None => (1, 1),
        };
        DotSyntaxError {
            line,
            col,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, t: Tk, what: &str) -> Result<(), DotSyntaxError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn is_keyword(&self, k: usize, kw: &str) -> bool {
        matches!(self.peek_at(k), Some(Tk::Id { text, quoted: false }) if text.eq_ignore_ascii_case(kw))
    }

    fn id(&mut self) -> Result<String, DotSyntaxError> {
        match self.peek() {
            Some(Tk::Id { text, quoted }) => {
                if !*quoted && KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(text)) {
                    return Err(self.error(&format!("keyword `{text}` used as identifier")));
                }
                let t = text.clone();
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error("expected identifier")),
        }
    }

    fn graph(&mut self) -> Result<(), DotSyntaxError> {
        if self.is_keyword(0, "strict") {
            self.graph.strict = true;
            self.pos += 1;
        }
        if self.is_keyword(0, "digraph") {
            self.directed = true;
        } else if !self.is_keyword(0, "graph") {
            return Err(self.error("expected `graph` or `digraph`"));
        }
        self.pos += 1;
        self.graph.directed = self.directed;
        if matches!(self.peek(), Some(Tk::Id { .. })) {
            self.graph.id = Some(self.id()?);
        }
        self.expect(Tk::LBrace, "`{`")?;
        self.stmt_list()?;
        self.expect(Tk::RBrace, "`}`")?;
        if self.pos != self.toks.len() {
            return Err(self.error("trailing input after graph"));
        }
        Ok(())
    }

    /// Returns the node ids mentioned in the list (for subgraph edge ends).
    fn stmt_list(&mut self) -> Result<Vec<String>, DotSyntaxError> {
        let mut ids = Vec::new();
        while !matches!(self.peek(), Some(Tk::RBrace) | None) {
            self.stmt(&mut ids)?;
            if self.peek() == Some(&Tk::Semi) {
                self.pos += 1;
            }
        }
        Ok(ids)
    }

    fn stmt(&mut self, ids: &mut Vec<String>) -> Result<(), DotSyntaxError> {
        if self.is_keyword(0, "graph") || self.is_keyword(0, "node") || self.is_keyword(0, "edge") {
            self.pos += 1;
            if self.peek() != Some(&Tk::LBracket) {
                return Err(self.error("expected `[` after attribute statement keyword"));
            }
            self.attr_list()?;
            return Ok(());
        }
        if matches!(self.peek(), Some(Tk::Id { .. })) && self.peek_at(1) == Some(&Tk::Eq) {
            self.id()?;
            self.pos += 1;
            self.id()?;
            return Ok(());
        }
        let first = self.endpoint()?;
        ids.extend(first.iter().cloned());
        if matches!(self.peek(), Some(Tk::Arrow) | Some(Tk::Line)) {
            let mut ends = alloc::vec![first];
            while let Some(op) = self.peek().cloned() {
                match op {
                    Tk::Arrow | Tk::Line => {
                        if (op == Tk::Arrow) != self.directed {
                            return Err(self.error("edge operator does not match graph type"));
                        }
                        self.pos += 1;
                        let e = self.endpoint()?;
                        ids.extend(e.iter().cloned());
                        ends.push(e);
                    }
                    _ => break,
                }
            }
            let attrs = if self.peek() == Some(&Tk::LBracket) {
                self.attr_list()?
            } else {
                Vec::new()
            };
            for w in ends.windows(2) {
                for from in &w[0] {
                    for to in &w[1] {
                        self.graph.edges.push(DotEdge {
                            from: from.clone(),
                            to: to.clone(),
                            attrs: attrs.clone(),
                        });
                    }
                }
            }
        } else if first.len() == 1 && !self.last_was_subgraph {
            let attrs = if self.peek() == Some(&Tk::LBracket) {
                self.attr_list()?
            } else {
                Vec::new()
            };
            self.graph.nodes.push(DotNode {
                id: first[0].clone(),
                attrs,
            });
        }
        Ok(())
    }

    fn endpoint(&mut self) -> Result<Vec<String>, DotSyntaxError> {
        self.last_was_subgraph = false;
        if self.is_keyword(0, "subgraph") || self.peek() == Some(&Tk::LBrace) {
            if self.is_keyword(0, "subgraph") {
                self.pos += 1;
                if matches!(self.peek(), Some(Tk::Id { .. })) {
                    self.id()?;
                }
            }
            self.expect(Tk::LBrace, "`{`")?;
            let ids = self.stmt_list()?;
            self.expect(Tk::RBrace, "`}`")?;
            self.last_was_subgraph = true;
            return Ok(ids);
        }
        let id = self.id()?;
        if self.peek() == Some(&Tk::Colon) {
            self.pos += 1;
            self.id()?;
            if self.peek() == Some(&Tk::Colon) {
                self.pos += 1;
                self.id()?;
            }
        }
        Ok(alloc::vec![id])
    }

    fn attr_list(&mut self) -> Result<Vec<(String, String)>, DotSyntaxError> {
        let mut attrs = Vec::new();
        while self.peek() == Some(&Tk::LBracket) {
            self.pos += 1;
            while self.peek() != Some(&Tk::RBracket) {
                let k = self.id()?;
                self.expect(Tk::Eq, "`=` in attribute")?;
                let v = self.id()?;
                attrs.push((k, v));
                if matches!(self.peek(), Some(Tk::Comma) | Some(Tk::Semi)) {
                    self.pos += 1;
                }
                if self.peek().is_none() {
                    return Err(self.error("unterminated attribute list"));
                }
            }
            self.pos += 1;
        }
        Ok(attrs)
    }
}

impl Parser {
    fn new(toks: Vec<Lexed>) -> Self {
        Parser {
            toks,
            pos: 0,
            directed: false,
            graph: DotGraph::default(),
            last_was_subgraph: false,
        }
    }
}

/// Parses a DOT document under the standard grammar (graph/digraph, node,
/// edge and attribute statements, subgraphs, ports, comments, quoted, HTML
/// and numeral IDs, `+` string concatenation).
pub fn parse_dot(src: &str) -> Result<DotGraph, DotSyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser::new(toks);
    p.graph()?;
    Ok(p.graph)
}

pub fn validate_dot(src: &str) -> Result<(), DotSyntaxError> {
    parse_dot(src).map(|_| ())
}
