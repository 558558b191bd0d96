//! Small graph corpora: all connected simple graphs up to isomorphism and
//! seeded signatures.

use itertools::Itertools;
use rand::Rng;

use crate::graph::{Sign, SignedGraph};

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut seen = 1u32;
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (seen >> a & 1) != (seen >> b & 1) {
                seen |= 1 << a | 1 << b;
                changed = true;
            }
        }
    }
    seen == (1u32 << n) - 1
}

/// Smallest edge mask over all vertex relabelings.
fn canonical_mask(n: usize, pairs: &[(usize, usize)], index: &[Vec<usize>], mask: u32) -> u32 {
    (0..n)
        .permutations(n)
        .map(|perm| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u32, |acc, (_, &(a, b))| acc | 1 << index[perm[a]][perm[b]])
        })
        .min()
        .unwrap_or(0)
}

/// Every connected simple graph with `1..=max_n` vertices and at most
/// `max_m` edges, one per isomorphism class. Vertices are `0..n`, edges are
/// labelled `1..=m` and oriented from the smaller vertex.
pub fn connected_graphs(max_n: usize, max_m: usize) -> Vec<SignedGraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs = pair_list(n);
        let mut index = vec![vec![0; n]; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            index[a][b] = i;
            index[b][a] = i;
        }
        let mut reps: Vec<u32> = (0u32..1 << pairs.len())
            .filter(|m| m.count_ones() as usize <= max_m)
            .filter(|&m| connected_mask(n, &pairs, m))
            .filter(|&m| canonical_mask(n, &pairs, &index, m) == m)
            .collect();
        reps.sort_by_key(|m| (m.count_ones(), *m));
        for m in reps {
            let chosen: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect();
            out.push(SignedGraph::from_pairs(n, &chosen).expect("corpus graphs are simple"));
        }
    }
    out
}

/// `count` signatures: the first all positive, the rest uniform.
pub fn signature_samples<R: Rng>(g: &SignedGraph, count: usize, rng: &mut R) -> Vec<Vec<Sign>> {
    (0..count)
        .map(|i| (0..g.m()).map(|_| if i > 0 && rng.random_bool(0.5) { Sign::Neg } else { Sign::Pos }).collect())
        .collect()
}
