use num_rational::BigRational;
use quadmap::amalgamation::{
    face_decomposition_check, induced_rotation, random_spec, with_positive_boundary, AmalgamationSpec,
};
use quadmap::random::RotationSpace;
use quadmap::{amalgamate, theorem4_report, Edge, Sign, SignedGraph, SignedRotationSystem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> SignedGraph {
    let vi = |name: &str| vertices.iter().position(|v| *v == name).unwrap();
    SignedGraph::new(
        vertices.iter().map(|v| v.to_string()).collect(),
        edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| Edge { tail: vi(t), head: vi(h), sign: Sign::Pos, label: (i + 1).to_string() })
            .collect(),
    )
    .unwrap()
}

fn path() -> SignedGraph {
    graph(&["u1", "x", "u2"], &[("u1", "x"), ("x", "u2")])
}

#[test]
fn two_paths_make_a_square() {
    let spec = AmalgamationSpec::new(vec![path(), path()], vec!["u1".into(), "u2".into()]).unwrap();
    let am = amalgamate(&spec).unwrap();
    assert_eq!((am.graph.n(), am.graph.m()), (4, 4));
    let r = theorem4_report(&spec, 1000).unwrap();
    assert_eq!((r.lower, r.middle, r.upper), (q(-4, 1), q(0, 1), q(4, 1)));
    assert_eq!(r.holds, (true, true));
}

#[test]
fn bowtie_bound() {
    let tri = graph(&["u", "a", "b"], &[("u", "a"), ("a", "b"), ("u", "b")]);
    let spec = AmalgamationSpec::new(vec![tri.clone(), tri], vec!["u".into()]).unwrap();
    let r = theorem4_report(&spec, 1000).unwrap();
    assert_eq!(r.amalgam_average, q(2, 3));
    assert_eq!(r.middle, q(5, 3));
    assert_eq!(r.lower, q(-17, 6));
    assert_eq!(r.upper, q(4, 1));
    assert_eq!(r.holds, (true, true));
}

#[test]
fn glued_stars_decompose_for_every_rotation() {
    let star = graph(&["u1", "u2", "c", "x"], &[("c", "u1"), ("c", "u2"), ("c", "x")]);
    let spec = AmalgamationSpec::new(vec![star.clone(), star.clone(), star], vec!["u1".into(), "u2".into()]).unwrap();
    let r = theorem4_report(&spec, 10_000).unwrap();
    assert_eq!(r.holds, (true, true));
    let am = amalgamate(&spec).unwrap();
    let space = RotationSpace::new(&am.graph);
    for i in 0..space.checked_len(10_000).unwrap() {
        let srs = SignedRotationSystem::with_graph_signature(&am.graph, space.rotation(i)).unwrap();
        let d = face_decomposition_check(&spec, &am, &srs).unwrap();
        assert!(d.holds, "{d:?}");
        assert_eq!(d.total_faces, d.boundary_count + d.outside_faces);
    }
}

#[test]
fn induced_rotation_drops_foreign_edges() {
    let spec = AmalgamationSpec::new(vec![path(), path()], vec!["u1".into(), "u2".into()]).unwrap();
    let am = amalgamate(&spec).unwrap();
    let srs = SignedRotationSystem::sorted(&am.graph);
    for i in 0..2 {
        let part = induced_rotation(&spec, &am, &srs, i).unwrap();
        for (v, rot) in part.rotation().iter().enumerate() {
            assert_eq!(rot.len(), spec.parts()[i].degree(v));
        }
    }
}

#[test]
fn adjacent_shared_vertices_are_rejected() {
    let g = graph(&["u1", "u2"], &[("u1", "u2")]);
    let spec = AmalgamationSpec::new(vec![g.clone(), g], vec!["u1".into(), "u2".into()]);
    assert!(spec.is_err() || spec.unwrap().check_independent().is_err());
}

#[test]
fn random_specs_satisfy_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let spec = random_spec(&mut rng, 3, 3, 5, 20_000);
        spec.check_independent().unwrap();
        let r = theorem4_report(&spec, 20_000).unwrap();
        assert_eq!(r.holds, (true, true), "{r:?}");
        let positive = with_positive_boundary(&spec).unwrap();
        assert!(amalgamate(&positive).unwrap().graph.is_connected());
    }
}
