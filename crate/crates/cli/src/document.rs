//! Plain-text graph documents.
//!
//! ```text
//! quadmap 1
//! # comment
//! v u a b
//! e u a + 1
//! e a b - 2
//! r u 1 3 2
//! ```
//!
//! `v` declares vertices (otherwise inferred in order of first use), `e` adds
//! an edge `tail head sign [label]`, `r` gives a vertex's rotation as edge
//! labels in cyclic order. Amalgamation documents wrap graphs in `part <name>`
//! blocks and end with `shared: <vertex labels>`.

use std::collections::HashMap;
use std::fmt::Write;

use quadmap::amalgamation::AmalgamationSpec;
use quadmap::{Edge, Sign, SignedGraph, SignedRotationSystem};

use crate::error::CliError;

pub const HEADER: &str = "quadmap 1";

/// One signed graph with optional per-vertex rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: SignedGraph,
    pub rotation: Vec<Option<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Graph(GraphDocument),
    Parts { parts: Vec<(String, GraphDocument)>, shared: Vec<String> },
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

#[derive(Default)]
struct Builder {
    vertices: Vec<String>,
    declared: bool,
    vindex: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_lines: Vec<usize>,
    rotations: Vec<(usize, String, Vec<String>)>,
}

impl Builder {
    fn vertex(&mut self, line: usize, name: &str) -> Result<usize, CliError> {
        if let Some(&i) = self.vindex.get(name) {
            return Ok(i);
        }
        if self.declared {
            return Err(parse_error(line, format!("undeclared vertex {name:?}")));
        }
        self.vindex.insert(name.to_string(), self.vertices.len());
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    fn line(&mut self, line: usize, tokens: &[&str]) -> Result<(), CliError> {
        match tokens[0] {
            "v" => {
                if self.declared || !self.vertices.is_empty() {
                    return Err(parse_error(line, "vertex declaration must come first and only once"));
                }
                for name in &tokens[1..] {
                    if self.vindex.insert(name.to_string(), self.vertices.len()).is_some() {
                        return Err(parse_error(line, format!("duplicate vertex {name:?}")));
                    }
                    self.vertices.push(name.to_string());
                }
                self.declared = true;
            }
            "e" => {
                if !(4..=5).contains(&tokens.len()) {
                    return Err(parse_error(line, "expected `e <tail> <head> <+|-> [label]`"));
                }
                let sign = match tokens[3] {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    other => return Err(parse_error(line, format!("sign must be + or -, found {other:?}"))),
                };
                let tail = self.vertex(line, tokens[1])?;
                let head = self.vertex(line, tokens[2])?;
                let label = tokens.get(4).map_or_else(|| (self.edges.len() + 1).to_string(), |l| l.to_string());
                self.edges.push(Edge { tail, head, sign, label });
                self.edge_lines.push(line);
            }
            "r" => {
                if tokens.len() < 2 {
                    return Err(parse_error(line, "expected `r <vertex> <edge labels>`"));
                }
                let labels = tokens[2..].iter().map(|s| s.to_string()).collect();
                self.rotations.push((line, tokens[1].to_string(), labels));
            }
            other => return Err(parse_error(line, format!("unknown directive {other:?}"))),
        }
        Ok(())
    }

    fn finish(self, line: usize) -> Result<GraphDocument, CliError> {
        if self.vertices.is_empty() {
            return Err(parse_error(line, "graph has no vertices"));
        }
        let edge_lines: Vec<(String, usize)> =
            self.edges.iter().map(|e| e.label.clone()).zip(self.edge_lines).collect();
        let graph = SignedGraph::new(self.vertices, self.edges).map_err(|e| {
            let at = match &e {
                quadmap::Error::Loop { edge, .. }
                | quadmap::Error::ParallelEdge { second: edge, .. }
                | quadmap::Error::DuplicateLabel { label: edge, .. } => edge_line(&edge_lines, edge).unwrap_or(line),
                _ => line,
            };
            parse_error(at, e.to_string())
        })?;
        let mut rotation = vec![None; graph.n()];
        for (l, v, labels) in self.rotations {
            let vi = graph.vertex_index(&v).map_err(|e| parse_error(l, e.to_string()))?;
            if rotation[vi].is_some() {
                return Err(parse_error(l, format!("second rotation for vertex {v:?}")));
            }
            let mut edges = Vec::with_capacity(labels.len());
            for lab in &labels {
                let e = graph.edge_index(lab).map_err(|e| parse_error(l, e.to_string()))?;
                if !graph.edge(e).touches(vi) {
                    return Err(parse_error(l, format!("edge {lab} is not incident to {v}")));
                }
                edges.push(e);
            }
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            if sorted != graph.incident(vi) {
                return Err(parse_error(l, format!("rotation at {v} must list each incident edge exactly once")));
            }
            rotation[vi] = Some(edges);
        }
        Ok(GraphDocument { graph, rotation })
    }
}

fn edge_line(lines: &[(String, usize)], label: &str) -> Option<usize> {
    lines.iter().rev().find(|(l, _)| l == label).map(|&(_, n)| n)
}

/// Parses a graph or amalgamation document.
pub fn parse_document(text: &str) -> Result<Document, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(parse_error(n, format!("expected header {HEADER:?}, found {other:?}"))),
        None => return Err(parse_error(1, "empty document")),
    }
    let mut single = Builder::default();
    let mut parts: Vec<(String, usize, Builder)> = Vec::new();
    let mut shared: Option<Vec<String>> = None;
    let mut last = 1;
    for (n, l) in lines {
        last = n;
        if shared.is_some() {
            return Err(parse_error(n, "nothing may follow the shared line"));
        }
        if let Some(rest) = l.strip_prefix("shared:") {
            if parts.is_empty() {
                return Err(parse_error(n, "shared line outside an amalgamation document"));
            }
            shared = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens[0] == "part" {
            if tokens.len() != 2 {
                return Err(parse_error(n, "expected `part <name>`"));
            }
            if !single.vertices.is_empty() || !single.rotations.is_empty() {
                return Err(parse_error(n, "part block after top-level graph lines"));
            }
            if parts.iter().any(|(name, _, _)| name == tokens[1]) {
                return Err(parse_error(n, format!("duplicate part {:?}", tokens[1])));
            }
            parts.push((tokens[1].to_string(), n, Builder::default()));
            continue;
        }
        match parts.last_mut() {
            Some((_, _, b)) => b.line(n, &tokens)?,
            None => single.line(n, &tokens)?,
        }
    }
    if parts.is_empty() {
        return single.finish(last).map(Document::Graph);
    }
    let shared = shared.ok_or_else(|| parse_error(last, "amalgamation document needs a `shared:` line"))?;
    let parts = parts.into_iter().map(|(name, n, b)| b.finish(n).map(|g| (name, g))).collect::<Result<_, _>>()?;
    Ok(Document::Parts { parts, shared })
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, CliError> {
    match parse_document(text)? {
        Document::Graph(g) => Ok(g),
        Document::Parts { .. } => Err(CliError::Usage("expected a single graph, found part blocks".into())),
    }
}

impl GraphDocument {
    /// Rotation system with the document's signature. Vertices of degree at
    /// most 2 have a unique cyclic order and may omit their `r` line.
    pub fn rotation_system(&self) -> Result<SignedRotationSystem, CliError> {
        let g = &self.graph;
        let mut rot = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            match &self.rotation[v] {
                Some(r) => rot.push(r.clone()),
                None if g.degree(v) <= 2 => rot.push(g.incident(v).to_vec()),
                None => {
                    return Err(CliError::Usage(format!("missing rotation for vertex {}", g.vertices()[v])));
                }
            }
        }
        Ok(SignedRotationSystem::with_graph_signature(g, rot)?)
    }

    pub fn from_rotation_system(graph: SignedGraph, srs: &SignedRotationSystem) -> Self {
        let rotation = srs.rotation().iter().map(|r| Some(r.clone())).collect();
        GraphDocument { graph, rotation }
    }

    fn write_body(&self, out: &mut String) {
        let g = &self.graph;
        let _ = writeln!(out, "v {}", g.vertices().join(" "));
        for e in g.edges() {
            let _ = writeln!(out, "e {} {} {} {}", g.vertices()[e.tail], g.vertices()[e.head], e.sign, e.label);
        }
        for (v, r) in self.rotation.iter().enumerate() {
            if let Some(r) = r {
                let _ = write!(out, "r {}", g.vertices()[v]);
                for &e in r {
                    let _ = write!(out, " {}", g.edge(e).label);
                }
                out.push('\n');
            }
        }
    }
}

/// Canonical text form; parsing it gives back an equal document.
pub fn serialize(doc: &Document) -> String {
    let mut out = format!("{HEADER}\n");
    match doc {
        Document::Graph(g) => g.write_body(&mut out),
        Document::Parts { parts, shared } => {
            for (name, g) in parts {
                let _ = writeln!(out, "part {name}");
                g.write_body(&mut out);
            }
            let _ = writeln!(out, "shared: {}", shared.join(" "));
        }
    }
    out
}

/// Builds an amalgamation spec from a parts document.
pub fn amalgamation_spec(doc: &Document) -> Result<AmalgamationSpec, CliError> {
    match doc {
        Document::Parts { parts, shared } => {
            Ok(AmalgamationSpec::new(parts.iter().map(|(_, g)| g.graph.clone()).collect(), shared.clone())?)
        }
        Document::Graph(_) => Err(CliError::Usage("expected part blocks and a shared line".into())),
    }
}

/// Graphs of a corpus document: the single graph, or every part.
pub fn corpus_graphs(doc: &Document) -> Vec<SignedGraph> {
    match doc {
        Document::Graph(g) => vec![g.graph.clone()],
        Document::Parts { parts, .. } => parts.iter().map(|(_, g)| g.graph.clone()).collect(),
    }
}
