mod common;

use common::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use quadmap::random::{enumerate_rotation_systems, harmonic_sum, ppp_mean_regions, stahl_bound_check, RotationSpace};
use quadmap::{genus_distribution, sample_genus, Edge, Mode, Perm, PermutationPartitionPair, Sign, SignedGraph};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn harmonic_values() {
    assert_eq!(harmonic_sum(0), q(0, 1));
    assert_eq!(harmonic_sum(1), q(1, 1));
    assert_eq!(harmonic_sum(2), q(2, 1));
    assert_eq!(harmonic_sum(4), q(17, 6));
    assert_eq!(harmonic_sum(6), q(197, 60));
}

#[test]
fn tree_has_average_zero() {
    let g = SignedGraph::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
    let d = genus_distribution(&g, 1000).unwrap();
    assert_eq!(d.total, BigUint::from(2u32));
    assert_eq!(d.histogram.into_iter().collect::<Vec<_>>(), vec![(0, 2)]);
}

#[test]
fn triangle_with_negative_edge_has_average_one() {
    let g = SignedGraph::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            Edge { tail: 0, head: 1, sign: Sign::Pos, label: "1".into() },
            Edge { tail: 1, head: 2, sign: Sign::Pos, label: "2".into() },
            Edge { tail: 0, head: 2, sign: Sign::Neg, label: "3".into() },
        ],
    )
    .unwrap();
    let d = genus_distribution(&g, 10).unwrap();
    assert_eq!(d.average(), q(1, 1));
    assert_eq!(d.histogram.into_iter().collect::<Vec<_>>(), vec![(1, 1)]);
}

#[test]
fn k4_exhaustive_distribution() {
    let d = genus_distribution(&k4(), 1000).unwrap();
    assert_eq!(d.mode, Mode::Exhaustive);
    assert_eq!(d.total, BigUint::from(16u32));
    assert_eq!(d.histogram.clone().into_iter().collect::<Vec<_>>(), vec![(0, 2), (2, 14)]);
    assert_eq!(d.average(), q(7, 4));
}

#[test]
fn rotation_space_sizes() {
    let (g, _) = b3(&["1", "2", "3", "4", "5", "6"]);
    assert_eq!(RotationSpace::new(&g).total(), &BigUint::from(120u32));
    let k4 = k4();
    let all: Vec<_> = enumerate_rotation_systems(&k4, 100).unwrap().collect();
    assert_eq!(all.len(), 16);
    let mut dedup = all.clone();
    dedup.sort_by(|a, b| a.rotation().cmp(b.rotation()));
    dedup.dedup();
    assert_eq!(dedup.len(), 16);
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(genus_distribution(&k4(), 15), Err(quadmap::Error::CapExceeded { .. })));
}

#[test]
fn sampling_is_deterministic_and_close() {
    let a = sample_genus(&k4(), 5000, 7).unwrap();
    let b = sample_genus(&k4(), 5000, 7).unwrap();
    assert_eq!(a, b);
    let meta = a.sample_meta.unwrap();
    assert_eq!(a.histogram.values().sum::<u64>(), 5000);
    assert!((meta.estimate - 1.75).abs() < 4.0 * meta.standard_error + 1e-9);
}

#[test]
fn single_class_identity_has_one_region() {
    let pp = PermutationPartitionPair::new(Perm::identity(4), vec![vec![0, 1, 2, 3]]).unwrap();
    assert_eq!(ppp_mean_regions(&pp, 100).unwrap(), q(1, 1));
}

#[test]
fn stahl_bound_on_small_pairs() {
    let p = Perm::from_cycles(6, &[vec![0, 3], vec![1, 4, 5]]).unwrap();
    let pp = PermutationPartitionPair::new(p, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
    let r = stahl_bound_check(&pp, 100).unwrap();
    assert_eq!(r.bound, q(4, 1) + q(1, 1));
    assert!(r.holds);
}

#[test]
fn singleton_classes_count_cycles_of_p() {
    let p = Perm::from_cycles(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
    let pp = PermutationPartitionPair::new(p, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
    assert_eq!(ppp_mean_regions(&pp, 10).unwrap(), q(3, 1));
}
