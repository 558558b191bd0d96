#![allow(dead_code)]

use quadmap::{Edge, Sign, SignedGraph, SignedRotationSystem};

pub const B3_P: &str = "(1^{r_+}2^{r_+}3^{r_+}4^{r_+}5^{r_+}6^{r_+})(6^{l_+}5^{l_+}4^{l_+}3^{l_+}2^{l_+}1^{l_+})(7^{r_+}1^{l_-})(7^{l_+}1^{r_-})(7^{l_-}2^{l_-})(7^{r_-}2^{r_-})(8^{r_+}3^{l_-})(8^{l_+}3^{r_-})(8^{l_-}4^{r_-})(8^{r_-}4^{l_-})(9^{r_+}5^{l_-})(9^{l_+}5^{r_-})(9^{l_-}6^{l_-})(9^{r_-}6^{r_-})";

pub const B3_RPRIME_P: &str = "(1^{r_+}3^{r_+}2^{r_+}4^{r_+}5^{r_+}6^{r_+})(6^{l_+}5^{l_+}4^{l_+}2^{l_+}3^{l_+}1^{l_+})(7^{r_+}1^{l_-})(7^{l_+}1^{r_-})(7^{l_-}2^{l_-})(7^{r_-}2^{r_-})(8^{r_+}3^{l_-})(8^{l_+}3^{r_-})(8^{l_-}4^{r_-})(8^{r_-}4^{l_-})(9^{r_+}5^{l_-})(9^{l_+}5^{r_-})(9^{l_-}6^{l_-})(9^{r_-}6^{r_-})";

/// Untwisted six-vertex example with the entry for edge 3 at `E` read as `3^{l_-}`.
pub const H6_UNTWISTED_P: &str = "(2^{r_+}3^{r_+}9^{l_-})(3^{l_+}2^{l_+}9^{r_-})(1^{r_+}9^{r_+}4^{r_+})(1^{l_+}4^{l_+}9^{l_+})(6^{r_-}2^{r_-}7^{r_-})(6^{l_-}7^{l_-}2^{l_-})(6^{r_+}1^{l_-}5^{l_-})(6^{l_+}5^{r_-}1^{r_-})(7^{r_+}8^{r_+}3^{l_-})(7^{l_+}3^{r_-}8^{l_+})(5^{r_+}4^{l_-}8^{l_-})(5^{l_+}8^{r_-}4^{r_-})";

pub fn build(
    vertices: &[&str],
    edges: &[(&str, &str, i8, &str)],
    rotations: &[(&str, &[&str])],
) -> (SignedGraph, SignedRotationSystem) {
    let vindex = |name: &str| vertices.iter().position(|v| *v == name).expect("known vertex");
    let edges: Vec<Edge> = edges
        .iter()
        .map(|&(t, h, s, label)| Edge {
            tail: vindex(t),
            head: vindex(h),
            sign: if s < 0 { Sign::Neg } else { Sign::Pos },
            label: label.to_string(),
        })
        .collect();
    let g = SignedGraph::new(vertices.iter().map(|v| v.to_string()).collect(), edges).unwrap();
    let mut rot = vec![Vec::new(); g.n()];
    for &(v, labels) in rotations {
        rot[vindex(v)] = labels.iter().map(|l| g.edge_index(l).unwrap()).collect();
    }
    let srs = SignedRotationSystem::with_graph_signature(&g, rot).unwrap();
    (g, srs)
}

/// Star `u → v1..v6` with chords `v1v2`, `v3v4` (negative) and `v5v6`.
pub fn b3(u_rotation: &[&str]) -> (SignedGraph, SignedRotationSystem) {
    build(
        &["u", "v1", "v2", "v3", "v4", "v5", "v6"],
        &[
            ("u", "v1", 1, "1"),
            ("u", "v2", 1, "2"),
            ("u", "v3", 1, "3"),
            ("u", "v4", 1, "4"),
            ("u", "v5", 1, "5"),
            ("u", "v6", 1, "6"),
            ("v1", "v2", 1, "7"),
            ("v3", "v4", -1, "8"),
            ("v5", "v6", 1, "9"),
        ],
        &[
            ("u", u_rotation),
            ("v1", &["7", "1"]),
            ("v2", &["7", "2"]),
            ("v3", &["8", "3"]),
            ("v4", &["8", "4"]),
            ("v5", &["9", "5"]),
            ("v6", &["9", "6"]),
        ],
    )
}

/// Six-vertex example; `negative` lists the negative edge labels.
pub fn h6(negative: &[&str]) -> (SignedGraph, SignedRotationSystem) {
    let sign = |l: &str| if negative.contains(&l) { -1 } else { 1 };
    build(
        &["A", "B", "C", "D", "E", "F"],
        &[
            ("B", "D", sign("1"), "1"),
            ("A", "C", sign("2"), "2"),
            ("A", "E", sign("3"), "3"),
            ("B", "F", sign("4"), "4"),
            ("F", "D", sign("5"), "5"),
            ("D", "C", sign("6"), "6"),
            ("E", "C", sign("7"), "7"),
            ("E", "F", sign("8"), "8"),
            ("B", "A", sign("9"), "9"),
        ],
        &[
            ("A", &["2", "3", "9"]),
            ("B", &["1", "9", "4"]),
            ("C", &["6", "7", "2"]),
            ("D", &["6", "1", "5"]),
            ("E", &["7", "8", "3"]),
            ("F", &["5", "4", "8"]),
        ],
    )
}

pub fn k4() -> SignedGraph {
    SignedGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Canonical cycle set of a cycle string, for order-free comparison.
pub fn cycle_set(p: &quadmap::Perm) -> Vec<Vec<usize>> {
    let mut c = p.cycles();
    c.sort();
    c
}
