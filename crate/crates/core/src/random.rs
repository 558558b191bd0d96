//! The sample space of rotation systems, Euler-genus distributions, and
//! random embeddings of permutation-partition pairs.
//!
//! Sampling uses `ChaCha8Rng`. Samples are drawn in blocks of
//! [`SAMPLE_BLOCK`]; block `b` uses the generator seeded with the user seed
//! and switched to stream `b`. Inside a block, samples are drawn in order and,
//! per sample, vertices in index order, each shuffling its non-anchor edge-ends
//! with a Fisher-Yates shuffle. Results do not depend on the thread count.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::map::build_map;
use crate::perm::{cycle_count, Perm};
use crate::rotation::SignedRotationSystem;

pub const DEFAULT_CAP: u64 = 10_000_000;
pub const SAMPLE_BLOCK: u64 = 1024;

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Writes the `rank`-th permutation of `items` (sorted) in lexicographic order into `out`.
fn unrank_lex(items: &[usize], mut rank: u64, out: &mut Vec<usize>) {
    let mut pool: Vec<usize> = items.to_vec();
    out.clear();
    for i in (0..pool.len()).rev() {
        let f = factorial(i);
        let pick = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(pick));
    }
}

/// Mixed-radix indexing of all rotation systems of a graph.
///
/// Each vertex keeps its smallest incident edge first and permutes the rest
/// lexicographically; vertex 0 is the most significant digit.
#[derive(Debug, Clone)]
pub struct RotationSpace {
    incident: Vec<Vec<usize>>,
    radix: Vec<u64>,
    total: BigUint,
}

impl RotationSpace {
    pub fn new(g: &SignedGraph) -> Self {
        let incident: Vec<Vec<usize>> = (0..g.n()).map(|v| g.incident(v).to_vec()).collect();
        let radix: Vec<u64> = incident.iter().map(|inc| factorial(inc.len().saturating_sub(1))).collect();
        let total = radix.iter().fold(BigUint::one(), |acc, &r| acc * r);
        RotationSpace { incident, radix, total }
    }

    /// `∏_v (d_v − 1)!` exactly.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// The size as `u64` if it does not exceed `cap`.
    pub fn checked_len(&self, cap: u64) -> Result<u64> {
        match self.total.to_u64() {
            Some(n) if n <= cap => Ok(n),
            _ => Err(Error::CapExceeded { size: self.total.to_string(), cap }),
        }
    }

    /// Writes the rotation with the given index into `out`.
    pub fn fill(&self, mut index: u64, out: &mut Vec<Vec<usize>>) {
        out.resize(self.incident.len(), Vec::new());
        let mut digits = vec![0u64; self.radix.len()];
        for v in (0..self.radix.len()).rev() {
            digits[v] = index % self.radix[v];
            index /= self.radix[v];
        }
        let mut tail = Vec::new();
        for (v, inc) in self.incident.iter().enumerate() {
            let slot = &mut out[v];
            slot.clear();
            if let Some((&anchor, rest)) = inc.split_first() {
                unrank_lex(rest, digits[v], &mut tail);
                slot.push(anchor);
                slot.extend_from_slice(&tail);
            }
        }
    }

    pub fn rotation(&self, index: u64) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.fill(index, &mut out);
        out
    }

    /// Uniform random rotation: each vertex shuffles its non-anchor ends.
    pub fn sample<R: Rng>(&self, rng: &mut R, out: &mut Vec<Vec<usize>>) {
        out.resize(self.incident.len(), Vec::new());
        for (slot, inc) in out.iter_mut().zip(&self.incident) {
            slot.clear();
            slot.extend_from_slice(inc);
            if slot.len() > 2 {
                slot[1..].shuffle(rng);
            }
        }
    }
}

/// All rotation systems of `g` with its signature held fixed, in index order.
pub fn enumerate_rotation_systems(
    g: &SignedGraph,
    cap: u64,
) -> Result<impl Iterator<Item = SignedRotationSystem> + '_> {
    let space = RotationSpace::new(g);
    let len = space.checked_len(cap)?;
    Ok((0..len).map(move |i| {
        SignedRotationSystem::with_graph_signature(g, space.rotation(i)).expect("enumerated rotations are valid")
    }))
}

/// Euler genus of `g` under the given rotation and its own signature.
pub fn genus_of(g: &SignedGraph, rotation: Vec<Vec<usize>>) -> Result<usize> {
    let srs = SignedRotationSystem::with_graph_signature(g, rotation)?;
    build_map(&srs, g)?.euler_genus()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleMeta {
    pub seed: u64,
    pub samples: u64,
    pub estimate: f64,
    pub standard_error: f64,
}

/// Histogram of Euler genus over Ω (exhaustive) or over drawn samples.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingDistribution {
    pub histogram: BTreeMap<usize, u64>,
    /// `|Ω| = ∏_v (d_v − 1)!`.
    pub total: BigUint,
    pub mode: Mode,
    pub sample_meta: Option<SampleMeta>,
}

impl EmbeddingDistribution {
    /// Exact mean over the histogram weights.
    pub fn average(&self) -> BigRational {
        let weight: u64 = self.histogram.values().sum();
        if weight == 0 {
            return BigRational::zero();
        }
        let sum: BigUint = self.histogram.iter().map(|(&k, &c)| BigUint::from(k) * c).sum();
        BigRational::new(sum.into(), BigUint::from(weight).into())
    }
}

fn merge(mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

const CHUNK: u64 = 4096;

/// Exact distribution by enumerating Ω; work is sharded in contiguous index ranges.
pub fn genus_distribution(g: &SignedGraph, cap: u64) -> Result<EmbeddingDistribution> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let space = RotationSpace::new(g);
    let len = space.checked_len(cap)?;
    let chunks = len.div_ceil(CHUNK);
    let histogram = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<BTreeMap<usize, u64>> {
            let mut h = BTreeMap::new();
            let mut rot = Vec::new();
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                space.fill(i, &mut rot);
                *h.entry(genus_of(g, rot.clone())?).or_default() += 1;
            }
            Ok(h)
        })
        .try_reduce(BTreeMap::new, |a, b| Ok(merge(a, b)))?;
    Ok(EmbeddingDistribution { histogram, total: space.total().clone(), mode: Mode::Exhaustive, sample_meta: None })
}

/// Monte Carlo estimate of the average Euler genus from `n` uniform samples.
pub fn sample_genus(g: &SignedGraph, n: u64, seed: u64) -> Result<EmbeddingDistribution> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let space = RotationSpace::new(g);
    let blocks = n.div_ceil(SAMPLE_BLOCK);
    let histogram = (0..blocks)
        .into_par_iter()
        .map(|b| -> Result<BTreeMap<usize, u64>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut h = BTreeMap::new();
            let mut rot = Vec::new();
            for _ in b * SAMPLE_BLOCK..((b + 1) * SAMPLE_BLOCK).min(n) {
                space.sample(&mut rng, &mut rot);
                *h.entry(genus_of(g, rot.clone())?).or_default() += 1;
            }
            Ok(h)
        })
        .try_reduce(BTreeMap::new, |a, b| Ok(merge(a, b)))?;
    let count = n as f64;
    let mean = histogram.iter().map(|(&k, &c)| k as f64 * c as f64).sum::<f64>() / count;
    let var = if n > 1 {
        histogram.iter().map(|(&k, &c)| c as f64 * (k as f64 - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    let meta = SampleMeta { seed, samples: n, estimate: mean, standard_error: (var / count).sqrt() };
    Ok(EmbeddingDistribution { histogram, total: space.total().clone(), mode: Mode::Sampled, sample_meta: Some(meta) })
}

/// `h_0 = 0`, `h_1 = 1`, `h_d = 1 + 1 + 1/2 + … + 1/(d−1)`.
pub fn harmonic_sum(d: usize) -> BigRational {
    let mut h = BigRational::zero();
    if d >= 1 {
        h += BigRational::one();
    }
    for i in 1..d {
        h += BigRational::new(1.into(), i.into());
    }
    h
}

/// A permutation with a partition of its ground set into classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationPartitionPair {
    p: Perm,
    classes: Vec<Vec<usize>>,
}

impl PermutationPartitionPair {
    pub fn new(p: Perm, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; p.len()];
        for c in &mut classes {
            if c.is_empty() {
                return Err(Error::Partition("empty class".into()));
            }
            c.sort_unstable();
            for &x in c.iter() {
                if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Partition(format!("point {x} missing from ground set or repeated")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Partition("classes do not cover the ground set".into()));
        }
        Ok(PermutationPartitionPair { p, classes })
    }

    pub fn p(&self) -> &Perm {
        &self.p
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Number of full-cycle assignments, `∏ (d_i − 1)!`.
    pub fn assignments(&self) -> BigUint {
        self.classes.iter().fold(BigUint::one(), |acc, c| acc * factorial(c.len() - 1))
    }

    /// Regions `‖P ∘ Q‖` where class `i` is cycled in the order `orders[i]`.
    fn regions(&self, orders: &[Vec<usize>], q: &mut [usize], pq: &mut [usize]) -> usize {
        for ord in orders {
            for (i, &x) in ord.iter().enumerate() {
                q[x] = ord[(i + 1) % ord.len()];
            }
        }
        for (x, slot) in pq.iter_mut().enumerate() {
            *slot = self.p.apply(q[x]);
        }
        cycle_count(pq)
    }
}

/// Exact mean number of regions over all full-cycle assignments.
pub fn ppp_mean_regions(pp: &PermutationPartitionPair, cap: u64) -> Result<BigRational> {
    let total = pp.assignments();
    let len = match total.to_u64() {
        Some(n) if n <= cap => n,
        _ => return Err(Error::CapExceeded { size: total.to_string(), cap }),
    };
    let radix: Vec<u64> = pp.classes.iter().map(|c| factorial(c.len() - 1)).collect();
    let n = pp.p.len();
    let sum: u64 = (0..len)
        .into_par_iter()
        .map_init(
            || (vec![0; n], vec![0; n], vec![Vec::new(); pp.classes.len()], Vec::new()),
            |(q, pq, orders, tail), mut index| {
                for (i, c) in pp.classes.iter().enumerate().rev() {
                    unrank_lex(&c[1..], index % radix[i], tail);
                    index /= radix[i];
                    orders[i].clear();
                    orders[i].push(c[0]);
                    orders[i].extend_from_slice(tail);
                }
                pp.regions(orders, q, pq) as u64
            },
        )
        .sum();
    Ok(BigRational::new(BigUint::from(sum).into(), total.into()))
}

/// Monte Carlo mean number of regions; returns `(estimate, standard error)`.
pub fn ppp_mean_regions_sampled(pp: &PermutationPartitionPair, samples: u64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pp.p.len();
    let (mut q, mut pq) = (vec![0; n], vec![0; n]);
    let mut orders: Vec<Vec<usize>> = pp.classes.clone();
    let (mut s1, mut s2) = (0.0, 0.0);
    for _ in 0..samples {
        for o in orders.iter_mut() {
            if o.len() > 2 {
                o[1..].shuffle(&mut rng);
            }
        }
        let r = pp.regions(&orders, &mut q, &mut pq) as f64;
        s1 += r;
        s2 += r * r;
    }
    let k = samples.max(1) as f64;
    let mean = s1 / k;
    let var = if samples > 1 { (s2 - k * mean * mean) / (k - 1.0) } else { 0.0 };
    (mean, (var.max(0.0) / k).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StahlReport {
    pub mean_regions: BigRational,
    pub bound: BigRational,
    pub holds: bool,
}

/// Compares the exact mean region count with `Σ h_{d_i}`.
pub fn stahl_bound_check(pp: &PermutationPartitionPair, cap: u64) -> Result<StahlReport> {
    let mean_regions = ppp_mean_regions(pp, cap)?;
    let bound: BigRational = pp.class_sizes().into_iter().map(harmonic_sum).sum();
    let holds = mean_regions <= bound;
    Ok(StahlReport { mean_regions, bound, holds })
}

/// Random pair with `1..=max_classes` classes of sizes `1..=max_size` and a uniform `P`.
pub fn random_ppp<R: Rng>(rng: &mut R, max_classes: usize, max_size: usize) -> PermutationPartitionPair {
    let k = rng.random_range(1..=max_classes);
    let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(1..=max_size)).collect();
    let n: usize = sizes.iter().sum();
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut classes = Vec::new();
    let mut at = 0;
    for s in sizes {
        classes.push(points[at..at + s].to_vec());
        at += s;
    }
    PermutationPartitionPair::new(Perm::from_images(images).expect("shuffle is a bijection"), classes)
        .expect("random partition is valid")
}
