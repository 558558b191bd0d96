//! Seeded sweeps that check the counting theorem, Euler invariants,
//! switching invariance, the harmonic bounds, and Monte Carlo soundness.
//!
//! Instance `i` of a seeded sweep draws from `ChaCha8Rng` seeded with the
//! sweep seed on stream `i`, so results do not depend on scheduling.

use num_rational::BigRational;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::amalgamation::{
    amalgamate, face_decomposition_check, random_spec, theorem4_report, with_positive_boundary, AmalgamationSpec,
};
use crate::boundary::{
    boundary, boundary_face_count, boundary_face_count_oracle, boundary_permutations, ext_int_alternative,
    int_factorization_check,
};
use crate::corpus::{connected_graphs, signature_samples};
use crate::error::Result;
use crate::graph::{Sign, SignedGraph};
use crate::map::{build_map, QuadricellMap};
use crate::random::{random_ppp, sample_genus, stahl_bound_check, RotationSpace};
use crate::rotation::SignedRotationSystem;

pub fn instance_rng(seed: u64, instance: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    rng
}

/// Compact replayable description of a signed rotation system.
pub fn describe(g: &SignedGraph, srs: &SignedRotationSystem) -> String {
    let edges: Vec<String> =
        g.edges().iter().enumerate().map(|(i, e)| format!("{}{}{}", e.tail, srs.sign(i).symbol(), e.head)).collect();
    let rot: Vec<String> =
        srs.rotation().iter().map(|r| r.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",")).collect();
    format!("edges [{}] rotation [{}]", edges.join(" "), rot.join(" | "))
}

#[derive(Debug, Clone, Serialize)]
pub struct CountingConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub signatures_per_graph: usize,
    pub seed: u64,
    pub rotation_cap: u64,
}

impl Default for CountingConfig {
    fn default() -> Self {
        CountingConfig { max_vertices: 5, max_edges: 8, signatures_per_graph: 8, seed: 1, rotation_cap: 100_000 }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CountingReport {
    pub graphs: usize,
    /// (graph, signature, rotation, U) instances checked, vacuous ones included.
    pub instances: u64,
    pub embeddings: u64,
    pub count_mismatches: Vec<String>,
    pub variant_mismatches: Vec<String>,
    pub non_minimal_walks: Vec<String>,
    pub factorization_failures: Vec<String>,
    pub factorization_checks: u64,
    pub euler_violations: Vec<String>,
    pub ext_delta_invariant: u64,
    pub ext_delta_checked: u64,
    pub errors: Vec<String>,
}

impl CountingReport {
    pub fn counting_ok(&self) -> bool {
        self.count_mismatches.is_empty() && self.errors.is_empty()
    }

    pub fn euler_ok(&self) -> bool {
        self.euler_violations.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.counting_ok()
            && self.euler_ok()
            && self.variant_mismatches.is_empty()
            && self.non_minimal_walks.is_empty()
            && self.factorization_failures.is_empty()
    }

    fn absorb(mut self, other: CountingReport) -> CountingReport {
        self.graphs += other.graphs;
        self.instances += other.instances;
        self.embeddings += other.embeddings;
        self.count_mismatches.extend(other.count_mismatches);
        self.variant_mismatches.extend(other.variant_mismatches);
        self.non_minimal_walks.extend(other.non_minimal_walks);
        self.factorization_failures.extend(other.factorization_failures);
        self.factorization_checks += other.factorization_checks;
        self.euler_violations.extend(other.euler_violations);
        self.ext_delta_invariant += other.ext_delta_invariant;
        self.ext_delta_checked += other.ext_delta_checked;
        self.errors.extend(other.errors);
        self
    }
}

/// Euler-formula and parity checks on one embedding.
pub fn euler_check(g: &SignedGraph, map: &QuadricellMap) -> std::result::Result<(), String> {
    let s = map.trace_faces().map_err(|e| e.to_string())?;
    let lhs = g.n() as i64 - g.m() as i64 + s.face_count as i64;
    if lhs != 2 - s.euler_genus as i64 {
        return Err(format!("Euler formula fails: n-m+r = {lhs}, genus {}", s.euler_genus));
    }
    if s.orientable && s.euler_genus % 2 == 1 {
        return Err(format!("orientable with odd genus {}", s.euler_genus));
    }
    let all_positive = map.source().is_some_and(|r| r.signature().iter().all(|&x| x == Sign::Pos));
    if all_positive && !s.orientable {
        return Err("all-positive signature traced as nonorientable".into());
    }
    Ok(())
}

fn check_subset(g: &SignedGraph, srs: &SignedRotationSystem, u: &[usize], rep: &mut CountingReport) -> Result<()> {
    let map = build_map(srs, g)?;
    let b = boundary(g, u)?;
    let tag = || format!("{} U={u:?}", describe(g, srs));
    let count = boundary_face_count(&map, &b)?;
    let oracle = boundary_face_count_oracle(&map, &b)?;
    rep.instances += 1;
    if count.count != oracle {
        rep.count_mismatches.push(format!("{}: count {} oracle {oracle}", tag(), count.count));
    }
    if b.is_empty() {
        return Ok(());
    }
    let bp = boundary_permutations(&map, &b)?;
    rep.ext_delta_checked += 1;
    rep.ext_delta_invariant += bp.ext_delta_invariant as u64;
    if let Some(t) = bp.ext_traces.iter().chain(&bp.int_traces).find(|t| !bp.is_minimal(&b, t)) {
        rep.non_minimal_walks.push(format!("{}: {:?} walk from {}", tag(), t.kind, t.start.0));
    }
    let (_, _, alt) = ext_int_alternative(&map, &b)?;
    if alt != count.count {
        rep.variant_mismatches.push(format!("{}: variant {alt} main {}", tag(), count.count));
    }
    let independent = g.edges().iter().all(|e| !(b.contains_vertex(e.tail) && b.contains_vertex(e.head)));
    if independent {
        rep.factorization_checks += 1;
        if !int_factorization_check(&map, g, &b)? {
            rep.factorization_failures.push(tag());
        }
    }
    Ok(())
}

fn sweep_graph(gi: usize, g: &SignedGraph, cfg: &CountingConfig) -> CountingReport {
    let mut rep = CountingReport { graphs: 1, ..Default::default() };
    let mut rng = instance_rng(cfg.seed, gi as u64);
    let space = RotationSpace::new(g);
    let len = match space.checked_len(cfg.rotation_cap) {
        Ok(len) => len,
        Err(e) => {
            rep.errors.push(format!("graph {gi}: {e}"));
            return rep;
        }
    };
    let n = g.n();
    for base in signature_samples(g, cfg.signatures_per_graph, &mut rng) {
        for index in 0..len {
            let rotation = space.rotation(index);
            let srs = SignedRotationSystem::new(g, rotation.clone(), base.clone()).expect("valid rotation");
            match build_map(&srs, g) {
                Ok(map) => {
                    rep.embeddings += 1;
                    if let Err(e) = euler_check(g, &map) {
                        rep.euler_violations.push(format!("{}: {e}", describe(g, &srs)));
                    }
                }
                Err(e) => rep.errors.push(e.to_string()),
            }
            for mask in 1u32..1 << n {
                let u: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let sig: Vec<Sign> = g
                    .edges()
                    .iter()
                    .zip(&base)
                    .map(|(e, &s)| if (mask >> e.tail & 1) != (mask >> e.head & 1) { Sign::Pos } else { s })
                    .collect();
                let srs = SignedRotationSystem::new(g, rotation.clone(), sig).expect("valid rotation");
                if let Err(e) = check_subset(g, &srs, &u, &mut rep) {
                    rep.errors.push(format!("{} U={u:?}: {e}", describe(g, &srs)));
                }
            }
        }
    }
    rep
}

/// Counting theorem against the face oracle over the whole small-graph corpus,
/// plus Euler invariants, walk minimality, variant agreement and the
/// factorization of `Int` for independent sets.
pub fn verify_counting(cfg: &CountingConfig) -> CountingReport {
    verify_counting_on(&connected_graphs(cfg.max_vertices, cfg.max_edges), cfg)
}

/// The counting sweep over a caller-supplied corpus; size limits in `cfg` are ignored.
pub fn verify_counting_on(graphs: &[SignedGraph], cfg: &CountingConfig) -> CountingReport {
    graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| sweep_graph(i, g, cfg))
        .reduce(CountingReport::default, CountingReport::absorb)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SwitchingReport {
    pub instances: u64,
    pub violations: Vec<String>,
}

/// Random (graph, rotation, switch sequence) triples; genus and face count
/// must not change.
pub fn verify_switching(instances: u64, seed: u64) -> SwitchingReport {
    let corpus: Vec<SignedGraph> = connected_graphs(5, 8).into_iter().filter(|g| g.m() > 0).collect();
    let violations: Vec<String> = (0..instances)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = instance_rng(seed, i);
            let g = corpus.choose(&mut rng).expect("corpus is nonempty");
            let sig: Vec<Sign> = (0..g.m()).map(|_| if rng.random_bool(0.5) { Sign::Neg } else { Sign::Pos }).collect();
            let mut rot = Vec::new();
            RotationSpace::new(g).sample(&mut rng, &mut rot);
            let srs = SignedRotationSystem::new(g, rot, sig).expect("valid rotation");
            let len = rng.random_range(1..=6);
            let seq: Vec<usize> = (0..len).map(|_| rng.random_range(0..g.n())).collect();
            let switched = srs.switch_set(g, &seq).expect("vertices exist");
            let before = build_map(&srs, g).and_then(|m| Ok((m.face_count(), m.euler_genus()?)));
            let after = build_map(&switched, g).and_then(|m| Ok((m.face_count(), m.euler_genus()?)));
            match (before, after) {
                (Ok(a), Ok(b)) if a == b => None,
                (a, b) => Some(format!("{} switches {seq:?}: {a:?} vs {b:?}", describe(g, &srs))),
            }
        })
        .collect();
    SwitchingReport { instances, violations }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct StahlSweepReport {
    pub instances: u64,
    pub violations: Vec<String>,
    pub max_ratio: f64,
}

/// Random permutation-partition pairs with `k ≤ 3` classes of size `≤ 4`.
pub fn verify_stahl(instances: u64, seed: u64) -> Result<StahlSweepReport> {
    let results: Vec<(bool, f64, String)> = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(seed, i);
            let pp = random_ppp(&mut rng, 3, 4);
            let r = stahl_bound_check(&pp, u64::MAX)?;
            let ratio = to_f64(&r.mean_regions) / to_f64(&r.bound);
            let desc =
                format!("P={:?} classes={:?} mu={} bound={}", pp.p().images(), pp.classes(), r.mean_regions, r.bound);
            Ok((r.holds, ratio, desc))
        })
        .collect::<Result<_>>()?;
    let violations = results.iter().filter(|r| !r.0).map(|r| r.2.clone()).collect();
    let max_ratio = results.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(StahlSweepReport { instances, violations, max_ratio })
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AmalgamationSweepReport {
    pub instances: u64,
    pub rotations_checked: u64,
    pub bound_violations: Vec<String>,
    pub decomposition_violations: Vec<String>,
}

impl AmalgamationSweepReport {
    fn absorb(&mut self, other: AmalgamationSweepReport) {
        self.instances += other.instances;
        self.rotations_checked += other.rotations_checked;
        self.bound_violations.extend(other.bound_violations);
        self.decomposition_violations.extend(other.decomposition_violations);
    }

    pub fn passed(&self) -> bool {
        self.bound_violations.is_empty() && self.decomposition_violations.is_empty()
    }
}

/// Random specs: the two-sided bound with exact averages, and the face
/// decomposition for every rotation system of the amalgam (boundary edges
/// made positive for the latter).
pub fn verify_amalgamation(instances: u64, seed: u64, omega_cap: u64) -> Result<AmalgamationSweepReport> {
    let mut rep = AmalgamationSweepReport::default();
    for i in 0..instances {
        let mut rng = instance_rng(seed, i);
        let spec = random_spec(&mut rng, 3, 3, 5, omega_cap);
        rep.absorb(verify_amalgamation_spec(&spec, omega_cap, &format!("spec {i}"))?);
    }
    Ok(rep)
}

/// Bound and decomposition checks for one spec; `tag` prefixes reported violations.
pub fn verify_amalgamation_spec(spec: &AmalgamationSpec, omega_cap: u64, tag: &str) -> Result<AmalgamationSweepReport> {
    let mut rep = AmalgamationSweepReport { instances: 1, ..Default::default() };
    let bound = theorem4_report(spec, omega_cap)?;
    if !(bound.holds.0 && bound.holds.1) {
        rep.bound_violations
            .push(format!("{tag}: lower {} middle {} upper {}", bound.lower, bound.middle, bound.upper));
    }
    let positive = with_positive_boundary(spec)?;
    let am = amalgamate(&positive)?;
    let space = RotationSpace::new(&am.graph);
    let len = space.checked_len(omega_cap)?;
    rep.decomposition_violations = (0..len)
        .into_par_iter()
        .filter_map(|r| {
            let srs = match SignedRotationSystem::with_graph_signature(&am.graph, space.rotation(r)) {
                Ok(srs) => srs,
                Err(e) => return Some(format!("{tag} rotation {r}: {e}")),
            };
            match face_decomposition_check(&positive, &am, &srs) {
                Ok(d) if d.holds => None,
                Ok(d) => Some(format!("{tag} {}: {d:?}", describe(&am.graph, &srs))),
                Err(e) => Some(format!("{tag} {}: {e}", describe(&am.graph, &srs))),
            }
        })
        .collect();
    rep.rotations_checked = len;
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub runs: u64,
    pub samples: u64,
    pub within_three_se: u64,
    pub exact: f64,
}

/// Runs `runs` independent seeds and counts estimates within 3 standard errors.
pub fn verify_monte_carlo(
    g: &SignedGraph,
    exact: &BigRational,
    runs: u64,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    let exact = to_f64(exact);
    let mut within = 0;
    for r in 0..runs {
        let d = sample_genus(g, samples, seed.wrapping_add(r))?;
        let meta = d.sample_meta.expect("sampled mode carries metadata");
        if (meta.estimate - exact).abs() <= 3.0 * meta.standard_error {
            within += 1;
        }
    }
    Ok(MonteCarloReport { runs, samples, within_three_se: within, exact })
}
