//! Worked clusters used by tests, the self-test command and the examples.

use crate::constellation::{Cluster, Constellation, Label};

fn lab(v: u8) -> Label {
    Label::new(v).unwrap()
}

fn build(edges: &[(usize, usize, u8)], mults: &[u64]) -> Cluster {
    let edges: Vec<(usize, usize, Label)> =
        edges.iter().map(|&(c, p, l)| (c, p, lab(l))).collect();
    let constellation = Constellation::build(&edges, 1).unwrap();
    Cluster::new(constellation, mults.to_vec()).unwrap()
}

/// One point of multiplicity `m` at the origin.
pub fn single_point(m: u64) -> Cluster {
    build(&[], &[m])
}

/// Chain cluster: the root has multiplicity `root_mult`, every further point
/// hangs off the previous one via `(label, multiplicity)`.
pub fn chain(root_mult: u64, rest: &[(u8, u64)]) -> Cluster {
    let edges: Vec<(usize, usize, u8)> = rest
        .iter()
        .enumerate()
        .map(|(k, &(l, _))| (k + 2, k + 1, l))
        .collect();
    let mut mults = vec![root_mult];
    mults.extend(rest.iter().map(|&(_, m)| m));
    build(&edges, &mults)
}

/// Five-point cluster whose associated complete ideal has the ten generators
/// `x^6, y^3, z^4, x^3y, x^2y^2, yz^2, y^2z, x^3z, xz^2, xyz`.
pub fn five_point() -> Cluster {
    build(
        &[(2, 1, 1), (3, 1, 3), (4, 2, 1), (5, 2, 2)],
        &[3, 2, 1, 1, 1],
    )
}

/// Nine-point cluster with a candidate pole of order two; its zeta function
/// has denominator roots
/// `{-3/14, -47/192, -43/168, -5/19, -1, -25/103, -1/4}`.
pub fn nine_point() -> Cluster {
    build(
        &[
            (2, 1, 2),
            (3, 2, 1),
            (4, 3, 1),
            (5, 3, 2),
            (6, 4, 3),
            (7, 6, 2),
            (8, 5, 3),
            (9, 8, 3),
        ],
        &[14, 5, 3, 2, 1, 1, 1, 1, 1],
    )
}

/// Eight-point cluster whose complete ideal has 21 monomial generators; the
/// point of multiplicity 3 carries a double-branch zero configuration.
pub fn ideal_fixture_21() -> Cluster {
    build(
        &[
            (2, 1, 1),
            (3, 2, 1),
            (4, 2, 2),
            (5, 3, 3),
            (6, 5, 3),
            (7, 4, 3),
            (8, 7, 1),
        ],
        &[5, 3, 1, 2, 1, 1, 1, 1],
    )
}

/// Five-point chain whose complete ideal has 28 monomial generators; the
/// point of multiplicity 2 carries a staircase zero configuration.
pub fn ideal_fixture_28() -> Cluster {
    build(
        &[(2, 1, 3), (3, 2, 1), (4, 3, 2), (5, 4, 3)],
        &[6, 3, 2, 1, 1],
    )
}

/// Euclidean chain cluster with weights `19, 5, 5, 5, 4, 1, 1, 1, 1`.
pub fn euclidean_chain() -> Cluster {
    chain(
        19,
        &[
            (1, 5),
            (2, 5),
            (2, 5),
            (2, 4),
            (3, 1),
            (2, 1),
            (2, 1),
            (2, 1),
        ],
    )
}

/// Bi-Euclidean cluster with weights `88, 17, 12` and branches
/// `(5, 2, 2, 1, 1)` and `(5)`, starting at the second point.
pub fn bi_euclidean() -> Cluster {
    build(
        &[
            (2, 1, 2),
            (3, 2, 1),
            (4, 3, 2),
            (5, 3, 3),
            (6, 4, 3),
            (7, 6, 2),
            (8, 7, 2),
            (9, 8, 3),
        ],
        &[88, 17, 12, 5, 5, 2, 2, 1, 1],
    )
}
