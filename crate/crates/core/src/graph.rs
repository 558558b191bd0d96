//! Simple signed graphs.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An edge stored with an orientation: `tail` is its lower (+) end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
    pub label: String,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    #[serde(skip)]
    incidence: Vec<Vec<usize>>,
}

impl SignedGraph {
    /// Validates simplicity, indices and label uniqueness.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut vseen = HashMap::new();
        for v in &vertices {
            if vseen.insert(v.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel { kind: "vertex", label: v.clone() });
            }
        }
        let mut eseen = HashMap::new();
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= vertices.len() {
                    return Err(Error::VertexOutOfRange { edge: e.label.clone(), vertex: v });
                }
            }
            if eseen.insert(e.label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel { kind: "edge", label: e.label.clone() });
            }
            if e.tail == e.head {
                return Err(Error::Loop { edge: e.label.clone(), vertex: vertices[e.tail].clone() });
            }
            let key = (e.tail.min(e.head), e.tail.max(e.head));
            if let Some(&j) = pairs.get(&key) {
                return Err(Error::ParallelEdge { first: edges[j].label.clone(), second: e.label.clone() });
            }
            pairs.insert(key, i);
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.tail].push(i);
            incidence[e.head].push(i);
        }
        Ok(SignedGraph { vertices, edges, incidence })
    }

    /// Vertices named `0..n`, edges labelled `1..=m` in order, all positive.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| i.to_string()).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| Edge { tail: t, head: h, sign: Sign::Pos, label: (i + 1).to_string() })
            .collect();
        SignedGraph::new(vertices, edges)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    /// Incident edge indices in increasing order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_index(&self, label: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.label == label).ok_or_else(|| Error::UnknownEdge(label.to_string()))
    }

    pub fn signature(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    pub fn is_all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.sign == Sign::Pos)
    }

    /// Same graph with a replacement signature.
    pub fn with_signature(&self, signature: &[Sign]) -> Result<Self> {
        if signature.len() != self.m() {
            return Err(Error::SignatureLength { expected: self.m(), got: signature.len() });
        }
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(signature) {
            e.sign = s;
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in self.incident(v) {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Membership mask of a vertex subset given by indices.
    pub fn mask(&self, subset: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n()];
        for &v in subset {
            if v >= self.n() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            mask[v] = true;
        }
        Ok(mask)
    }
}
