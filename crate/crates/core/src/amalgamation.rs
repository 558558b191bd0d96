//! Vertex amalgamation of signed graphs over a shared vertex set, the
//! average-genus bound, and the face decomposition behind it.

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::boundary::{boundary, boundary_face_count};
use crate::error::{Error, Result};
use crate::graph::{Edge, Sign, SignedGraph};
use crate::map::build_map;
use crate::random::{genus_distribution, harmonic_sum, RotationSpace};
use crate::rotation::SignedRotationSystem;

/// Parts `Σ^1 … Σ^k`, each containing every shared label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamationSpec {
    parts: Vec<SignedGraph>,
    shared: Vec<String>,
    /// `shared_index[i][j]`: vertex index of shared label `j` in part `i`.
    shared_index: Vec<Vec<usize>>,
}

impl AmalgamationSpec {
    pub fn new(parts: Vec<SignedGraph>, shared: Vec<String>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Amalgamation("at least two parts are required".into()));
        }
        let mut sorted = shared.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != shared.len() {
            return Err(Error::Amalgamation("shared labels repeat".into()));
        }
        let shared_index = parts
            .iter()
            .enumerate()
            .map(|(i, g)| {
                shared
                    .iter()
                    .map(|s| {
                        g.vertex_index(s)
                            .map_err(|_| Error::Amalgamation(format!("part {} lacks shared vertex {s}", i + 1)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AmalgamationSpec { parts, shared, shared_index })
    }

    pub fn parts(&self) -> &[SignedGraph] {
        &self.parts
    }

    pub fn shared(&self) -> &[String] {
        &self.shared
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn l(&self) -> usize {
        self.shared.len()
    }

    pub fn shared_vertex(&self, part: usize, j: usize) -> usize {
        self.shared_index[part][j]
    }

    /// `d_{i,j}`: degree of shared vertex `j` in part `i`.
    pub fn part_degree(&self, i: usize, j: usize) -> usize {
        self.parts[i].degree(self.shared_index[i][j])
    }

    /// `d_j = Σ_i d_{i,j}`.
    pub fn amalgam_degree(&self, j: usize) -> usize {
        (0..self.k()).map(|i| self.part_degree(i, j)).sum()
    }

    /// Errors with the offending edge if some part joins two shared vertices.
    pub fn check_independent(&self) -> Result<()> {
        for (i, g) in self.parts.iter().enumerate() {
            let shared: Vec<bool> = (0..g.n()).map(|v| self.shared_index[i].contains(&v)).collect();
            if let Some(e) = g.edges().iter().find(|e| shared[e.tail] && shared[e.head]) {
                return Err(Error::NotIndependent(format!("{} in part {}", e.label, i + 1)));
            }
        }
        Ok(())
    }
}

/// The amalgamated graph with maps back to the parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgam {
    pub graph: SignedGraph,
    /// `vertex_map[i][w]`: amalgam vertex of vertex `w` of part `i`.
    pub vertex_map: Vec<Vec<usize>>,
    /// `edge_map[i][e]`: amalgam edge of edge `e` of part `i`.
    pub edge_map: Vec<Vec<usize>>,
    /// Amalgam indices of the shared vertices, in label order.
    pub shared_vertices: Vec<usize>,
}

/// Identifies the copies of the shared vertices. Other labels are prefixed
/// with their 1-based part number, as in `2:w`.
pub fn amalgamate(spec: &AmalgamationSpec) -> Result<Amalgam> {
    let mut vertices: Vec<String> = spec.shared.clone();
    let mut vertex_map = Vec::new();
    for (i, g) in spec.parts.iter().enumerate() {
        let mut map = Vec::with_capacity(g.n());
        for (w, label) in g.vertices().iter().enumerate() {
            match spec.shared_index[i].iter().position(|&s| s == w) {
                Some(j) => map.push(j),
                None => {
                    map.push(vertices.len());
                    vertices.push(format!("{}:{label}", i + 1));
                }
            }
        }
        vertex_map.push(map);
    }
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    for (i, g) in spec.parts.iter().enumerate() {
        let mut map = Vec::with_capacity(g.m());
        for e in g.edges() {
            map.push(edges.len());
            edges.push(Edge {
                tail: vertex_map[i][e.tail],
                head: vertex_map[i][e.head],
                sign: e.sign,
                label: format!("{}:{}", i + 1, e.label),
            });
        }
        edge_map.push(map);
    }
    let graph = SignedGraph::new(vertices, edges).map_err(|e| Error::Amalgamation(e.to_string()))?;
    Ok(Amalgam { graph, vertex_map, edge_map, shared_vertices: (0..spec.l()).collect() })
}

/// The three sides of the two-sided average-genus bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// `−Σ_j h_{d_j}` over amalgam degrees.
    pub lower: BigRational,
    /// `γ_avg(Σ) − Σ_i γ_avg(Σ^i) − (k−1)(l−2)`.
    pub middle: BigRational,
    /// `Σ_i Σ_j h_{d_{i,j}}`.
    pub upper: BigRational,
    pub amalgam_average: BigRational,
    pub part_averages: Vec<BigRational>,
    pub holds: (bool, bool),
}

/// Exact averages of the amalgam and every part, assembled into the bound.
pub fn theorem4_report(spec: &AmalgamationSpec, cap: u64) -> Result<BoundReport> {
    spec.check_independent()?;
    let am = amalgamate(spec)?;
    let jobs: Vec<&SignedGraph> = std::iter::once(&am.graph).chain(spec.parts.iter()).collect();
    let averages =
        jobs.into_par_iter().map(|g| genus_distribution(g, cap).map(|d| d.average())).collect::<Result<Vec<_>>>()?;
    let amalgam_average = averages[0].clone();
    let part_averages = averages[1..].to_vec();
    let (k, l) = (spec.k() as i64, spec.l() as i64);
    let correction = BigRational::from_integer(((k - 1) * (l - 2)).into());
    let middle = part_averages.iter().fold(amalgam_average.clone(), |acc, a| acc - a) - correction;
    let lower = -(0..spec.l()).map(|j| harmonic_sum(spec.amalgam_degree(j))).sum::<BigRational>();
    let mut upper = BigRational::zero();
    for i in 0..spec.k() {
        for j in 0..spec.l() {
            upper += harmonic_sum(spec.part_degree(i, j));
        }
    }
    let holds = (lower <= middle, middle <= upper);
    Ok(BoundReport { lower, middle, upper, amalgam_average, part_averages, holds })
}

/// Face bookkeeping for one rotation system of the amalgam.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub total_faces: usize,
    pub boundary_count: usize,
    /// Faces of the amalgam avoiding the shared vertices.
    pub outside_faces: usize,
    /// Per part, faces of the induced embedding avoiding the shared vertices.
    pub part_outside_faces: Vec<usize>,
    /// Outside faces coincide edge-for-edge with the parts' outside faces.
    pub faces_match: bool,
    pub holds: bool,
}

/// Rotation of part `i` induced by deleting the other parts' edges.
pub fn induced_rotation(
    spec: &AmalgamationSpec,
    am: &Amalgam,
    srs: &SignedRotationSystem,
    i: usize,
) -> Result<SignedRotationSystem> {
    let g = &spec.parts[i];
    let mut back = vec![usize::MAX; am.graph.m()];
    for (e, &ae) in am.edge_map[i].iter().enumerate() {
        back[ae] = e;
    }
    let rotation = (0..g.n())
        .map(|w| srs.at(am.vertex_map[i][w]).iter().filter(|&&ae| back[ae] != usize::MAX).map(|&ae| back[ae]).collect())
        .collect();
    let signature = am.edge_map[i].iter().map(|&ae| srs.sign(ae)).collect();
    SignedRotationSystem::new(g, rotation, signature)
}

/// Checks `ρ(Σ, R) = ‖Ext∘Int‖ + |F|` and `|F| = Σ_i |F^i|` for one rotation.
pub fn face_decomposition_check(
    spec: &AmalgamationSpec,
    am: &Amalgam,
    srs: &SignedRotationSystem,
) -> Result<DecompositionReport> {
    spec.check_independent()?;
    let map = build_map(srs, &am.graph)?;
    let b = boundary(&am.graph, &am.shared_vertices)?;
    let boundary_count = boundary_face_count(&map, &b)?.count;
    let surface = map.trace_faces()?;
    let mut outside: Vec<Vec<usize>> = surface
        .faces
        .iter()
        .filter(|f| f.edges.iter().all(|&e| b.arc_position(e).is_none()))
        .map(|f| f.edges.clone())
        .collect();
    let mut part_outside = Vec::new();
    let mut counts = Vec::new();
    for i in 0..spec.k() {
        let g = &spec.parts[i];
        let induced = induced_rotation(spec, am, srs, i)?;
        let pb = boundary(g, &spec.shared_index[i])?;
        let faces = build_map(&induced, g)?.trace_faces()?;
        let mut n = 0;
        for f in &faces.faces {
            if f.edges.iter().all(|&e| pb.arc_position(e).is_none()) {
                let mut mapped: Vec<usize> = f.edges.iter().map(|&e| am.edge_map[i][e]).collect();
                mapped.sort_unstable();
                part_outside.push(mapped);
                n += 1;
            }
        }
        counts.push(n);
    }
    outside.sort();
    part_outside.sort();
    let faces_match = outside == part_outside;
    let holds = surface.face_count == boundary_count + outside.len()
        && outside.len() == counts.iter().sum::<usize>()
        && faces_match;
    Ok(DecompositionReport {
        total_faces: surface.face_count,
        boundary_count,
        outside_faces: outside.len(),
        part_outside_faces: counts,
        faces_match,
        holds,
    })
}

/// Copy of the spec with every edge at a shared vertex made positive.
pub fn with_positive_boundary(spec: &AmalgamationSpec) -> Result<AmalgamationSpec> {
    let parts = spec
        .parts
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let sig: Vec<Sign> = g
                .edges()
                .iter()
                .map(|e| {
                    let at_shared = spec.shared_index[i].contains(&e.tail) || spec.shared_index[i].contains(&e.head);
                    if at_shared {
                        Sign::Pos
                    } else {
                        e.sign
                    }
                })
                .collect();
            g.with_signature(&sig)
        })
        .collect::<Result<Vec<_>>>()?;
    AmalgamationSpec::new(parts, spec.shared.clone())
}

/// Random connected part on `n` vertices whose first `l` vertices are the
/// shared labels `u1…ul`, kept pairwise non-adjacent.
fn random_part<R: Rng>(rng: &mut R, l: usize, n: usize, part: usize) -> SignedGraph {
    let mut vertices: Vec<String> = (1..=l).map(|j| format!("u{j}")).collect();
    vertices.extend((l..n).map(|w| format!("w{}_{}", part + 1, w - l + 1)));
    let free: Vec<usize> = (l..n).collect();
    let mut pairs = Vec::new();
    for (t, &w) in free.iter().enumerate().skip(1) {
        pairs.push((*free[..t].choose(rng).expect("nonempty"), w));
    }
    for u in 0..l {
        pairs.push((*free.choose(rng).expect("nonempty"), u));
    }
    for a in 0..n {
        for b in a + 1..n {
            let allowed = !(a < l && b < l);
            let present = pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
            if allowed && !present && rng.random_bool(0.3) {
                pairs.push((a, b));
            }
        }
    }
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(e, &(t, h))| Edge {
            tail: t,
            head: h,
            sign: if rng.random_bool(0.5) { Sign::Pos } else { Sign::Neg },
            label: (e + 1).to_string(),
        })
        .collect();
    SignedGraph::new(vertices, edges).expect("generated part is simple")
}

/// Random spec with `k ≤ max_k` parts, `l ≤ max_l` shared vertices, parts of
/// at most `max_vertices` vertices, independent shared set, and amalgam
/// sample space at most `omega_cap`.
pub fn random_spec<R: Rng>(
    rng: &mut R,
    max_k: usize,
    max_l: usize,
    max_vertices: usize,
    omega_cap: u64,
) -> AmalgamationSpec {
    loop {
        let k = rng.random_range(2..=max_k.max(2));
        let l = rng.random_range(1..=max_l.min(max_vertices - 1));
        let parts: Vec<SignedGraph> = (0..k)
            .map(|i| {
                let n = rng.random_range(l + 1..=max_vertices);
                random_part(rng, l, n, i)
            })
            .collect();
        let shared = (1..=l).map(|j| format!("u{j}")).collect();
        let spec = AmalgamationSpec::new(parts, shared).expect("generated spec is valid");
        let Ok(am) = amalgamate(&spec) else { continue };
        if RotationSpace::new(&am.graph).checked_len(omega_cap).is_ok() {
            return spec;
        }
    }
}
