//! Quadricell maps `(α, β, P)`, their validation, and face tracing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::quadricell::{parse_quadricell, End, Quadricell, Side};
use crate::rotation::SignedRotationSystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricellMap {
    p: Vec<u32>,
    n: usize,
    connected_graph: bool,
    source: Option<SignedRotationSystem>,
}

/// Per-condition outcome of the four map axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `a, αa, βa, γa` pairwise distinct.
    pub distinct_quadricell: bool,
    /// `αP = P⁻¹α`.
    pub alpha_reverses_p: bool,
    /// The `P`-orbits through `a` and `αa` differ.
    pub alpha_orbits_distinct: bool,
    /// `⟨α, β, P⟩` is transitive.
    pub transitive: bool,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.distinct_quadricell && self.alpha_reverses_p && self.alpha_orbits_distinct && self.transitive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// The `Pγ` orbit holding the smaller quadricell of the pair.
    pub walk: Vec<Quadricell>,
    /// The paired orbit, traversing the same face in reverse.
    pub mirror: Vec<Quadricell>,
    /// Edge indices along `walk`, sorted, with multiplicity.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingSurface {
    pub face_count: usize,
    pub euler_genus: usize,
    pub orientable: bool,
    pub faces: Vec<Face>,
}

/// Forward symbol of edge `e` at vertex `v` in the bi-rotation of `v`.
fn forward_symbol(g: &SignedGraph, srs: &SignedRotationSystem, v: usize, e: usize) -> Quadricell {
    let edge = g.edge(e);
    if edge.tail == v {
        Quadricell::new(e, Side::Right, End::Plus)
    } else if srs.sign(e) == Sign::Pos {
        Quadricell::new(e, Side::Left, End::Minus)
    } else {
        Quadricell::new(e, Side::Right, End::Minus)
    }
}

/// Builds `P` from a signed rotation system.
///
/// Each vertex contributes a forward cycle of its edge-end symbols in
/// rotation order and the `α`-image of that cycle traversed backwards.
pub fn build_map(srs: &SignedRotationSystem, g: &SignedGraph) -> Result<QuadricellMap> {
    if srs.rotation().len() != g.n() || srs.signature().len() != g.m() {
        return Err(Error::Rotation {
            vertex: "*".into(),
            reason: "rotation system does not belong to this graph".into(),
        });
    }
    let mut p = vec![u32::MAX; 4 * g.m()];
    let mut fw = Vec::new();
    for v in 0..g.n() {
        let rot = srs.at(v);
        if rot.len() != g.degree(v) || rot.iter().any(|&e| !g.edge(e).touches(v)) {
            return Err(Error::Rotation {
                vertex: g.vertices()[v].clone(),
                reason: "rotation does not match incidence".into(),
            });
        }
        fw.clear();
        fw.extend(rot.iter().map(|&e| forward_symbol(g, srs, v, e)));
        let k = fw.len();
        for i in 0..k {
            p[fw[i].index()] = fw[(i + 1) % k].0;
            p[fw[(i + 1) % k].alpha().index()] = fw[i].alpha().0;
        }
    }
    debug_assert!(p.iter().all(|&x| x != u32::MAX));
    Ok(QuadricellMap { p, n: g.n(), connected_graph: g.is_connected(), source: Some(srs.clone()) })
}

/// Minimal union-find over `0..n`.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

impl QuadricellMap {
    /// Wraps an arbitrary `P` on `4m` quadricells, e.g. a transcribed permutation.
    pub fn from_raw(n: usize, p: Vec<Quadricell>) -> Result<Self> {
        if !p.len().is_multiple_of(4) {
            return Err(Error::Permutation("size is not a multiple of 4".into()));
        }
        let mut seen = vec![false; p.len()];
        for q in &p {
            if q.index() >= p.len() || std::mem::replace(&mut seen[q.index()], true) {
                return Err(Error::Permutation(format!("bad image {}", q.0)));
            }
        }
        let mut map = QuadricellMap { p: p.iter().map(|q| q.0).collect(), n, connected_graph: true, source: None };
        map.connected_graph = map.validate().transitive;
        Ok(map)
    }

    /// Parses cycle notation over quadricell names, e.g. `(1^{r_+}2^{r_+})(2^{l_+}1^{l_+})…`.
    /// Quadricells not listed are fixed.
    pub fn parse_p<S: AsRef<str>>(n: usize, text: &str, labels: &[S]) -> Result<Self> {
        let size = 4 * labels.len();
        let mut p: Vec<Option<Quadricell>> = vec![None; size];
        for cycle in text.split('(').skip(1) {
            let body = cycle.split(')').next().ok_or_else(|| Error::Permutation("unbalanced parentheses".into()))?;
            let mut items = Vec::new();
            let mut token = String::new();
            for c in body.chars() {
                token.push(c);
                if c == '}' || ((c == '+' || c == '-') && !token.contains('{')) {
                    let q = parse_quadricell(&token, labels)
                        .ok_or_else(|| Error::Permutation(format!("bad quadricell {token:?}")))?;
                    items.push(q);
                    token.clear();
                }
            }
            for (i, &q) in items.iter().enumerate() {
                if p[q.index()].replace(items[(i + 1) % items.len()]).is_some() {
                    return Err(Error::Permutation(format!("{} listed twice", q.display(labels))));
                }
            }
        }
        let p = p.iter().enumerate().map(|(i, q)| q.unwrap_or(Quadricell(i as u32))).collect();
        QuadricellMap::from_raw(n, p)
    }

    pub fn size(&self) -> usize {
        self.p.len()
    }

    pub fn edge_count(&self) -> usize {
        self.p.len() / 4
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> Option<&SignedRotationSystem> {
        self.source.as_ref()
    }

    pub fn p(&self, q: Quadricell) -> Quadricell {
        Quadricell(self.p[q.index()])
    }

    /// `Pγ`: γ first, then P.
    pub fn p_gamma(&self, q: Quadricell) -> Quadricell {
        Quadricell(self.p[q.gamma().index()])
    }

    /// `γP`: P first, then γ.
    pub fn gamma_p(&self, q: Quadricell) -> Quadricell {
        self.p(q).gamma()
    }

    pub fn quadricells(&self) -> impl Iterator<Item = Quadricell> {
        (0..self.p.len() as u32).map(Quadricell)
    }

    /// Disjoint cycles of `P` in superscript notation, each starting at its smallest quadricell.
    pub fn p_cycles_string<S: AsRef<str>>(&self, labels: &[S]) -> String {
        let mut seen = vec![false; self.size()];
        let mut out = String::new();
        for q in self.quadricells() {
            if seen[q.index()] {
                continue;
            }
            out.push('(');
            let mut x = q;
            while !seen[x.index()] {
                seen[x.index()] = true;
                out.push_str(&x.display(labels).to_string());
                x = self.p(x);
            }
            out.push(')');
        }
        out
    }

    /// Checks the four map axioms independently.
    pub fn validate(&self) -> ValidationReport {
        let size = self.size();
        let qs = || self.quadricells();
        let distinct_quadricell = qs().all(|a| {
            let o = [a, a.alpha(), a.beta(), a.gamma()];
            (0..4).all(|i| (i + 1..4).all(|j| o[i] != o[j]))
        });
        let mut p_inv = vec![0u32; size];
        for q in qs() {
            p_inv[self.p(q).index()] = q.0;
        }
        let alpha_reverses_p = qs().all(|a| self.p(a).alpha() == Quadricell(p_inv[a.alpha().index()]));
        let mut orbit = vec![usize::MAX; size];
        let mut next = 0;
        for q in qs() {
            if orbit[q.index()] != usize::MAX {
                continue;
            }
            let mut x = q;
            while orbit[x.index()] == usize::MAX {
                orbit[x.index()] = next;
                x = self.p(x);
            }
            next += 1;
        }
        let alpha_orbits_distinct = qs().all(|a| orbit[a.index()] != orbit[a.alpha().index()]);
        let mut dsu = Dsu::new(size);
        for q in qs() {
            dsu.union(q.index(), q.alpha().index());
            dsu.union(q.index(), q.beta().index());
            dsu.union(q.index(), self.p(q).index());
        }
        let transitive = size == 0 || dsu.classes() == 1;
        ValidationReport { distinct_quadricell, alpha_reverses_p, alpha_orbits_distinct, transitive }
    }

    /// Number of orbits of `⟨P, γ⟩`.
    pub fn p_gamma_group_orbits(&self) -> usize {
        let mut dsu = Dsu::new(self.size());
        for q in self.quadricells() {
            dsu.union(q.index(), q.gamma().index());
            dsu.union(q.index(), self.p(q).index());
        }
        dsu.classes()
    }

    /// Orientable iff `⟨P, γ⟩` has exactly two orbits.
    pub fn orientable(&self) -> bool {
        self.size() == 0 || self.p_gamma_group_orbits() == 2
    }

    /// Orbit count of `Pγ` without allocating face records.
    pub fn p_gamma_orbit_count(&self, seen: &mut Vec<bool>) -> usize {
        seen.clear();
        seen.resize(self.size(), false);
        let mut count = 0;
        for start in 0..self.p.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.p[x ^ 3] as usize;
            }
        }
        count
    }

    /// Face count; an edgeless single vertex bounds one face.
    pub fn face_count(&self) -> usize {
        if self.size() == 0 {
            return 1;
        }
        self.p_gamma_orbit_count(&mut Vec::new()) / 2
    }

    /// Euler genus from Euler's formula, for a connected graph.
    pub fn euler_genus(&self) -> Result<usize> {
        self.genus_from_faces(self.face_count())
    }

    pub(crate) fn genus_from_faces(&self, faces: usize) -> Result<usize> {
        let g = 2 - self.n as i64 + self.edge_count() as i64 - faces as i64;
        usize::try_from(g).map_err(|_| Error::Invariant(format!("negative Euler genus {g}")))
    }

    /// All `Pγ` orbits with, for each, the index of its mirror orbit.
    pub fn p_gamma_orbits(&self) -> (Vec<Vec<Quadricell>>, Vec<usize>) {
        let mut id = vec![usize::MAX; self.size()];
        let mut orbits = Vec::new();
        for q in self.quadricells() {
            if id[q.index()] != usize::MAX {
                continue;
            }
            let mut o = Vec::new();
            let mut x = q;
            while id[x.index()] == usize::MAX {
                id[x.index()] = orbits.len();
                o.push(x);
                x = self.p_gamma(x);
            }
            orbits.push(o);
        }
        let mirror = orbits.iter().map(|o| id[o[0].beta().index()]).collect();
        (orbits, mirror)
    }

    /// Traces all faces and derives Euler genus and orientability.
    pub fn trace_faces(&self) -> Result<EmbeddingSurface> {
        if !self.connected_graph || !self.validate().transitive {
            return Err(Error::Disconnected);
        }
        let (orbits, mirror) = self.p_gamma_orbits();
        let mut faces = Vec::new();
        for (i, o) in orbits.iter().enumerate() {
            let j = mirror[i];
            if j == i {
                return Err(Error::Invariant("a face orbit is its own mirror".into()));
            }
            if i < j {
                let mut edges: Vec<usize> = o.iter().map(|q| q.edge()).collect();
                edges.sort_unstable();
                faces.push(Face { walk: o.clone(), mirror: orbits[j].clone(), edges });
            }
        }
        let face_count = if self.size() == 0 { 1 } else { faces.len() };
        let euler_genus = self.genus_from_faces(face_count)?;
        let orientable = self.orientable();
        if orientable && euler_genus % 2 == 1 {
            return Err(Error::Invariant("orientable surface with odd Euler genus".into()));
        }
        Ok(EmbeddingSurface { face_count, euler_genus, orientable, faces })
    }
}

/// Orientability of a map.
pub fn orientability(m: &QuadricellMap) -> bool {
    m.orientable()
}

/// Validation report of a map.
pub fn validate_map(m: &QuadricellMap) -> ValidationReport {
    m.validate()
}

/// Face tracing of a map.
pub fn trace_faces(m: &QuadricellMap) -> Result<EmbeddingSurface> {
    m.trace_faces()
}
