//! Signed rotation systems and switching.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

/// Cyclic edge order per vertex plus the twist indicator.
///
/// Each cyclic order is stored starting at its smallest edge index, so two
/// systems are equal exactly when their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedRotationSystem {
    rotation: Vec<Vec<usize>>,
    signature: Vec<Sign>,
}

fn canonical(mut cycle: Vec<usize>) -> Vec<usize> {
    if let Some(pos) = cycle.iter().enumerate().min_by_key(|(_, &e)| e).map(|(i, _)| i) {
        cycle.rotate_left(pos);
    }
    cycle
}

impl SignedRotationSystem {
    pub fn new(g: &SignedGraph, rotation: Vec<Vec<usize>>, signature: Vec<Sign>) -> Result<Self> {
        if rotation.len() != g.n() {
            return Err(Error::Rotation {
                vertex: format!("#{}", rotation.len()),
                reason: format!("expected {} vertex rotations", g.n()),
            });
        }
        if signature.len() != g.m() {
            return Err(Error::SignatureLength { expected: g.m(), got: signature.len() });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.incident(v) {
                return Err(Error::Rotation {
                    vertex: g.vertices()[v].clone(),
                    reason: "must list every incident edge exactly once".into(),
                });
            }
        }
        let rotation = rotation.into_iter().map(canonical).collect();
        Ok(SignedRotationSystem { rotation, signature })
    }

    /// Rotation system carrying the graph's own signature.
    pub fn with_graph_signature(g: &SignedGraph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        SignedRotationSystem::new(g, rotation, g.signature())
    }

    /// Each vertex's incident edges in increasing index order.
    pub fn sorted(g: &SignedGraph) -> Self {
        SignedRotationSystem {
            rotation: (0..g.n()).map(|v| g.incident(v).to_vec()).collect(),
            signature: g.signature(),
        }
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn at(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn signature(&self) -> &[Sign] {
        &self.signature
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.signature[e]
    }

    /// Reverses the rotation at `v` and negates the signs of its incident edges.
    pub fn switch(&self, g: &SignedGraph, v: usize) -> Result<Self> {
        if v >= self.rotation.len() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let mut out = self.clone();
        let mut rev = out.rotation[v].clone();
        rev.reverse();
        out.rotation[v] = canonical(rev);
        for &e in g.incident(v) {
            out.signature[e] = out.signature[e].flip();
        }
        Ok(out)
    }

    /// Applies a switch at every vertex of `set`.
    pub fn switch_set(&self, g: &SignedGraph, set: &[usize]) -> Result<Self> {
        set.iter().try_fold(self.clone(), |acc, &v| acc.switch(g, v))
    }
}

/// Whether some set of vertex switches turns `a` into `b`.
///
/// Vertices whose rotation differs from its reverse are forced in or out of
/// the switch set; the remaining free vertices are searched exhaustively.
pub fn switch_equivalent(
    g: &SignedGraph,
    a: &SignedRotationSystem,
    b: &SignedRotationSystem,
    cap: usize,
) -> Result<bool> {
    if g.n() > cap {
        return Err(Error::SwitchCap(g.n(), cap));
    }
    let mut forced: Vec<Option<bool>> = vec![None; g.n()];
    for (v, slot) in forced.iter_mut().enumerate() {
        let same = a.at(v) == b.at(v);
        let mut rev = a.at(v).to_vec();
        rev.reverse();
        let reversed = canonical(rev) == b.at(v);
        match (same, reversed) {
            (false, false) => return Ok(false),
            (true, false) => *slot = Some(false),
            (false, true) => *slot = Some(true),
            (true, true) => {}
        }
    }
    let free: Vec<usize> = (0..g.n()).filter(|&v| forced[v].is_none()).collect();
    for bits in 0u64..(1u64 << free.len()) {
        let mut inset: Vec<bool> = forced.iter().map(|f| f.unwrap_or(false)).collect();
        for (i, &v) in free.iter().enumerate() {
            inset[v] = bits >> i & 1 == 1;
        }
        let signs_match = g.edges().iter().enumerate().all(|(e, edge)| {
            let flipped = inset[edge.tail] != inset[edge.head];
            let s = if flipped { a.sign(e).flip() } else { a.sign(e) };
            s == b.sign(e)
        });
        if signs_match {
            return Ok(true);
        }
    }
    Ok(false)
}
