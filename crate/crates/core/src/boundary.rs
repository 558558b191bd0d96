//! Boundary arcs of a vertex set, exterior/interior permutations, and the
//! face count `‖Ext ∘ Int‖`.
//!
//! A face meeting `∂(U)` is cut by its boundary crossings into passages
//! (stretches of the face walk inside `U`, from an entering crossing to the
//! next leaving one). Every arc has two sides and each side lies in exactly
//! one passage, so arcs and passages form disjoint even cycles. Matching each
//! cycle through the right side of its smallest arc assigns every passage one
//! anchor arc; when every passage joins a right side to a left side this is
//! simply "the arc whose right side lies in the passage".
//!
//! * `Int(a)` is the other arc of the passage anchored at `a`: walk `Pγ` from
//!   the entering corner of `a`'s anchored side to the first boundary corner.
//! * `Ext(f)` is the anchor of the passage that follows, in the face's chosen
//!   direction, the passage in which `f` is not the anchor.
//!
//! `Ext ∘ Int` therefore steps from one passage anchor to the next along each
//! face, and its cycles are exactly the faces meeting `∂(U)`.
//!
//! Each face is walked in the direction in which most of its passages are
//! entered through their anchored side, ties going to the orbit holding the
//! smallest quadricell. For a single vertex `u` this makes `Int` the inverse
//! of the rotation at `u`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::map::QuadricellMap;
use crate::perm::Perm;
use crate::quadricell::{End, Quadricell, Side};

const NONE: usize = usize::MAX;

/// `∂(U)`: edges with exactly one end in `U`, oriented out of `U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundarySet {
    /// Vertex indices of `U`, sorted.
    pub source: Vec<usize>,
    /// Edge indices of the arcs, sorted.
    pub arcs: Vec<usize>,
    /// Edge labels of the arcs.
    pub labels: Vec<String>,
    #[serde(skip)]
    in_u: Vec<bool>,
    #[serde(skip)]
    stored_tail_in_u: Vec<bool>,
    #[serde(skip)]
    arc_of_edge: Vec<usize>,
}

/// Computes `∂(U)` for vertex indices `u`.
pub fn boundary(g: &SignedGraph, u: &[usize]) -> Result<BoundarySet> {
    let in_u = g.mask(u)?;
    let mut source: Vec<usize> = u.to_vec();
    source.sort_unstable();
    source.dedup();
    let mut arcs = Vec::new();
    let mut labels = Vec::new();
    let mut stored_tail_in_u = Vec::new();
    let mut arc_of_edge = vec![NONE; g.m()];
    for (i, e) in g.edges().iter().enumerate() {
        if in_u[e.tail] != in_u[e.head] {
            arc_of_edge[i] = arcs.len();
            arcs.push(i);
            labels.push(e.label.clone());
            stored_tail_in_u.push(in_u[e.tail]);
        }
    }
    Ok(BoundarySet { source, arcs, labels, in_u, stored_tail_in_u, arc_of_edge })
}

impl BoundarySet {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.in_u[v]
    }

    /// Arc position of an edge, if it is a boundary edge.
    pub fn arc_position(&self, edge: usize) -> Option<usize> {
        self.arc_of_edge.get(edge).copied().filter(|&a| a != NONE)
    }

    /// Side and end relative to the arc's own orientation (tail in `U`).
    /// An entering corner has end `−`, a leaving corner end `+`.
    pub fn relative(&self, arc: usize, q: Quadricell) -> (Side, End) {
        if self.stored_tail_in_u[arc] {
            (q.side(), q.end())
        } else {
            (q.side().flip(), q.end().flip())
        }
    }

    /// Inverse of [`BoundarySet::relative`].
    pub fn quadricell(&self, arc: usize, side: Side, end: End) -> Quadricell {
        let q = Quadricell::new(self.arcs[arc], side, end);
        if self.stored_tail_in_u[arc] {
            q
        } else {
            q.gamma()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WalkKind {
    Exterior,
    Interior,
}

/// One walk along a face that defines an `Ext` or `Int` value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkTrace {
    pub kind: WalkKind,
    pub start: Quadricell,
    /// Quadricells visited after `start`, one per application of `Pγ`.
    pub steps: Vec<Quadricell>,
    pub step_count: usize,
    pub terminal: Quadricell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryPermutations {
    pub arcs: Vec<usize>,
    pub labels: Vec<String>,
    pub ext: Perm,
    pub int: Perm,
    pub ext_traces: Vec<WalkTrace>,
    pub int_traces: Vec<WalkTrace>,
    /// The side through which each arc anchors its passage.
    pub anchor_side: Vec<Side>,
    /// Whether `Ext` is unchanged when every face is walked the other way.
    pub ext_delta_invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryCount {
    pub count: usize,
    /// Set when `∂(U)` is empty and the count is 0 by convention.
    pub vacuous: bool,
    pub composite: Perm,
}

#[derive(Debug, Clone, Copy)]
struct Passage {
    /// Reference-orbit order: entering side, then leaving side.
    sides: [(usize, Side); 2],
    face: usize,
}

/// Passage structure of all faces meeting the boundary.
struct Passages {
    passages: Vec<Passage>,
    /// Passage holding each arc side, indexed `[arc][side]`.
    of_side: Vec<[usize; 2]>,
    /// Per face: the two orbit ids and its passages in reference order.
    faces: Vec<([usize; 2], Vec<usize>)>,
    orbit_id: Vec<usize>,
}

fn side_index(s: Side) -> usize {
    s as usize
}

fn passages(m: &QuadricellMap, b: &BoundarySet) -> Result<Passages> {
    let (orbits, mirror) = m.p_gamma_orbits();
    let mut orbit_id = vec![0; m.size()];
    for (i, o) in orbits.iter().enumerate() {
        for q in o {
            orbit_id[q.index()] = i;
        }
    }
    let mut out = Passages { passages: Vec::new(), of_side: vec![[NONE; 2]; b.len()], faces: Vec::new(), orbit_id };
    for (i, o) in orbits.iter().enumerate() {
        let j = mirror[i];
        if j <= i {
            continue;
        }
        let crossings: Vec<(usize, Side, End)> = o
            .iter()
            .filter_map(|&q| b.arc_position(q.edge()).map(|a| (a, b.relative(a, q))))
            .map(|(a, (s, e))| (a, s, e))
            .collect();
        if crossings.is_empty() {
            continue;
        }
        let first_in = crossings
            .iter()
            .position(|c| c.2 == End::Minus)
            .ok_or_else(|| Error::Invariant("face leaves U without entering".into()))?;
        let face = out.faces.len();
        let mut ids = Vec::new();
        let k = crossings.len();
        for t in (0..k).step_by(2) {
            let cin = crossings[(first_in + t) % k];
            let cout = crossings[(first_in + t + 1) % k];
            if cin.2 != End::Minus || cout.2 != End::Plus {
                return Err(Error::Invariant("boundary crossings do not alternate".into()));
            }
            let id = out.passages.len();
            for (a, s) in [(cin.0, cin.1), (cout.0, cout.1)] {
                if out.of_side[a][side_index(s)] != NONE {
                    return Err(Error::Invariant("arc side lies in two passages".into()));
                }
                out.of_side[a][side_index(s)] = id;
            }
            out.passages.push(Passage { sides: [(cin.0, cin.1), (cout.0, cout.1)], face });
            ids.push(id);
        }
        out.faces.push(([i, j], ids));
    }
    if out.of_side.iter().flatten().any(|&p| p == NONE) {
        return Err(Error::Invariant("arc side outside every passage".into()));
    }
    Ok(out)
}

fn other_side(p: &Passage, arc: usize, side: Side) -> (usize, Side) {
    if p.sides[0] == (arc, side) {
        p.sides[1]
    } else {
        p.sides[0]
    }
}

/// Anchor matching: for each arc, its anchored side; for each passage, its anchor arc.
fn anchors(ps: &Passages, arcs: usize, first: Side) -> (Vec<Side>, Vec<usize>) {
    let mut side_of = vec![None; arcs];
    let mut anchor_of = vec![NONE; ps.passages.len()];
    for a0 in 0..arcs {
        if side_of[a0].is_some() {
            continue;
        }
        let (mut a, mut s) = (a0, first);
        loop {
            let p = ps.of_side[a][side_index(s)];
            side_of[a] = Some(s);
            anchor_of[p] = a;
            let (b, t) = other_side(&ps.passages[p], a, s);
            if side_of[b].is_some() {
                break;
            }
            a = b;
            s = t.flip();
        }
    }
    (side_of.into_iter().map(|s| s.expect("every arc is matched")).collect(), anchor_of)
}

struct Layout {
    anchor_side: Vec<Side>,
    anchor_of: Vec<usize>,
    /// Chosen orbit per face and successor per passage.
    chosen_orbit: Vec<usize>,
    next: Vec<usize>,
}

fn layout(ps: &Passages, arcs: usize, first: Side, reverse: bool) -> Layout {
    let (anchor_side, anchor_of) = anchors(ps, arcs, first);
    let mut chosen_orbit = Vec::with_capacity(ps.faces.len());
    let mut next = vec![NONE; ps.passages.len()];
    for (orbits, ids) in &ps.faces {
        let entered_by_anchor = ids
            .iter()
            .filter(|&&p| {
                let (a, s) = ps.passages[p].sides[0];
                anchor_of[p] == a && anchor_side[a] == s
            })
            .count();
        let reference = entered_by_anchor * 2 >= ids.len();
        let reference = reference != reverse;
        chosen_orbit.push(if reference { orbits[0] } else { orbits[1] });
        let k = ids.len();
        for t in 0..k {
            next[ids[t]] = if reference { ids[(t + 1) % k] } else { ids[(t + k - 1) % k] };
        }
    }
    Layout { anchor_side, anchor_of, chosen_orbit, next }
}

fn walk_limit(m: &QuadricellMap) -> usize {
    2 * m.size() + 2
}

fn int_walk(m: &QuadricellMap, b: &BoundarySet, ps: &Passages, lay: &Layout, a: usize) -> Result<(usize, WalkTrace)> {
    let s = lay.anchor_side[a];
    let start = b.quadricell(a, s, End::Minus);
    let mut steps = Vec::new();
    let mut x = start;
    loop {
        x = m.p_gamma(x);
        steps.push(x);
        if let Some(t) = b.arc_position(x.edge()) {
            let p = ps.of_side[a][side_index(s)];
            let expected = other_side(&ps.passages[p], a, s).0;
            if t != expected {
                return Err(Error::Invariant("interior walk left its passage".into()));
            }
            let trace = WalkTrace { kind: WalkKind::Interior, start, step_count: steps.len(), terminal: x, steps };
            return Ok((t, trace));
        }
        if steps.len() > walk_limit(m) {
            return Err(Error::Invariant("interior walk did not terminate".into()));
        }
    }
}

fn ext_walk(m: &QuadricellMap, b: &BoundarySet, ps: &Passages, lay: &Layout, f: usize) -> Result<(usize, WalkTrace)> {
    let t = lay.anchor_side[f].flip();
    let p = ps.of_side[f][side_index(t)];
    let orbit = lay.chosen_orbit[ps.passages[p].face];
    let start = [End::Minus, End::Plus]
        .into_iter()
        .map(|e| b.quadricell(f, t, e))
        .find(|q| ps.orbit_id[q.index()] == orbit)
        .ok_or_else(|| Error::Invariant("side missing from its face orbit".into()))?;
    let mut left = b.relative(f, start).1 == End::Plus;
    let mut steps = Vec::new();
    let mut x = start;
    loop {
        x = m.p_gamma(x);
        steps.push(x);
        if let Some(g) = b.arc_position(x.edge()) {
            let (side, end) = b.relative(g, x);
            if left && lay.anchor_side[g] == side {
                let expected = lay.anchor_of[lay.next[p]];
                if g != expected {
                    return Err(Error::Invariant("exterior walk missed the next anchor".into()));
                }
                let trace = WalkTrace { kind: WalkKind::Exterior, start, step_count: steps.len(), terminal: x, steps };
                return Ok((g, trace));
            }
            if end == End::Plus {
                left = true;
            }
        }
        if steps.len() > walk_limit(m) {
            return Err(Error::Invariant("exterior walk did not terminate".into()));
        }
    }
}

fn to_perm(images: Vec<usize>, what: &str) -> Result<Perm> {
    Perm::from_images(images).map_err(|e| Error::Invariant(format!("{what} is not a bijection: {e}")))
}

fn check_signs(m: &QuadricellMap, b: &BoundarySet) -> Result<()> {
    if let Some(srs) = m.source() {
        for (&e, label) in b.arcs.iter().zip(&b.labels) {
            if srs.sign(e) == Sign::Neg {
                return Err(Error::TwistedBoundary(label.clone()));
            }
        }
    }
    Ok(())
}

fn compute(m: &QuadricellMap, b: &BoundarySet, first: Side) -> Result<BoundaryPermutations> {
    check_signs(m, b)?;
    let ps = passages(m, b)?;
    let lay = layout(&ps, b.len(), first, false);
    let mut int = Vec::with_capacity(b.len());
    let mut int_traces = Vec::with_capacity(b.len());
    let mut ext = Vec::with_capacity(b.len());
    let mut ext_traces = Vec::with_capacity(b.len());
    for a in 0..b.len() {
        let (t, tr) = int_walk(m, b, &ps, &lay, a)?;
        int.push(t);
        int_traces.push(tr);
        let (s, tr) = ext_walk(m, b, &ps, &lay, a)?;
        ext.push(s);
        ext_traces.push(tr);
    }
    let flipped = layout(&ps, b.len(), first, true);
    let mut ext_delta_invariant = true;
    for (a, &image) in ext.iter().enumerate() {
        if ext_walk(m, b, &ps, &flipped, a)?.0 != image {
            ext_delta_invariant = false;
            break;
        }
    }
    let ext = to_perm(ext, "Ext")?;
    let int = to_perm(int, "Int")?;
    let forward = ext.compose(&int).cycle_count();
    if forward != int.compose(&ext).cycle_count() {
        return Err(Error::Invariant("‖Ext∘Int‖ differs from ‖Int∘Ext‖".into()));
    }
    Ok(BoundaryPermutations {
        arcs: b.arcs.clone(),
        labels: b.labels.clone(),
        ext,
        int,
        ext_traces,
        int_traces,
        anchor_side: lay.anchor_side,
        ext_delta_invariant,
    })
}

/// `Ext` and `Int` together with their walk traces.
pub fn boundary_permutations(m: &QuadricellMap, b: &BoundarySet) -> Result<BoundaryPermutations> {
    compute(m, b, Side::Right)
}

/// The exterior permutation and its traces.
pub fn ext_permutation(m: &QuadricellMap, b: &BoundarySet) -> Result<(Perm, Vec<WalkTrace>)> {
    let bp = boundary_permutations(m, b)?;
    Ok((bp.ext, bp.ext_traces))
}

/// The interior permutation and its traces.
pub fn int_permutation(m: &QuadricellMap, b: &BoundarySet) -> Result<(Perm, Vec<WalkTrace>)> {
    let bp = boundary_permutations(m, b)?;
    Ok((bp.int, bp.int_traces))
}

/// `‖Ext ∘ Int‖`, with `Int` applied first. Empty boundaries give a vacuous 0.
pub fn boundary_face_count(m: &QuadricellMap, b: &BoundarySet) -> Result<BoundaryCount> {
    if b.is_empty() {
        return Ok(BoundaryCount { count: 0, vacuous: true, composite: Perm::identity(0) });
    }
    let bp = boundary_permutations(m, b)?;
    let composite = bp.ext.compose(&bp.int);
    Ok(BoundaryCount { count: composite.cycle_count(), vacuous: false, composite })
}

/// Faces meeting `∂(U)`, counted directly from the traced faces.
pub fn boundary_face_count_oracle(m: &QuadricellMap, b: &BoundarySet) -> Result<usize> {
    let surface = m.trace_faces()?;
    Ok(surface.faces.iter().filter(|f| f.edges.iter().any(|&e| b.arc_position(e).is_some())).count())
}

/// The same construction with left and right exchanged; returns `(Ext, Int, ‖Ext∘Int‖)`.
pub fn ext_int_alternative(m: &QuadricellMap, b: &BoundarySet) -> Result<(Perm, Perm, usize)> {
    let bp = compute(m, b, Side::Left)?;
    let count = bp.ext.compose(&bp.int).cycle_count();
    Ok((bp.ext, bp.int, count))
}

/// For independent `U`: `Int` equals the product over `u ∈ U` of the inverse rotation at `u`.
pub fn int_factorization_check(m: &QuadricellMap, g: &SignedGraph, b: &BoundarySet) -> Result<bool> {
    if let Some(e) = g.edges().iter().find(|e| b.contains_vertex(e.tail) && b.contains_vertex(e.head)) {
        return Err(Error::NotIndependent(e.label.clone()));
    }
    let srs = m.source().ok_or_else(|| Error::Invariant("map carries no rotation system".into()))?;
    let (int, _) = int_permutation(m, b)?;
    let mut product = vec![NONE; b.len()];
    for &u in &b.source {
        let rot = srs.at(u);
        for (i, &e) in rot.iter().enumerate() {
            let prev = rot[(i + rot.len() - 1) % rot.len()];
            let (a, p) = (b.arc_position(e), b.arc_position(prev));
            match (a, p) {
                (Some(a), Some(p)) => product[a] = p,
                _ => return Err(Error::Invariant("edge at an independent vertex is not a boundary arc".into())),
            }
        }
    }
    Ok(product == int.images())
}

impl BoundaryPermutations {
    /// True when no step before the terminal satisfies the walk's stopping rule.
    pub fn is_minimal(&self, b: &BoundarySet, trace: &WalkTrace) -> bool {
        let prefix = &trace.steps[..trace.steps.len() - 1];
        if trace.steps.last() != Some(&trace.terminal) || trace.step_count != trace.steps.len() {
            return false;
        }
        match trace.kind {
            WalkKind::Interior => prefix.iter().all(|q| b.arc_position(q.edge()).is_none()),
            WalkKind::Exterior => {
                let arc = match b.arc_position(trace.start.edge()) {
                    Some(a) => a,
                    None => return false,
                };
                let mut left = b.relative(arc, trace.start).1 == End::Plus;
                for &q in prefix {
                    if let Some(g) = b.arc_position(q.edge()) {
                        let (side, end) = b.relative(g, q);
                        if left && self.anchor_side[g] == side {
                            return false;
                        }
                        if end == End::Plus {
                            left = true;
                        }
                    }
                }
                true
            }
        }
    }
}
