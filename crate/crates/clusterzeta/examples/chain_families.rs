//! Euclidean and bi-Euclidean chain clusters and the product equality.
//!
//! At a point with exactly one immediate successor, the product of the two
//! multiplicities dominates the sum of squares over the proximate points;
//! equality holds exactly for the two structured families recognised here.

use clusterzeta::{
    fixtures, random_idealistic_cluster, recognize_bi_euclidean, recognize_euclidean, Analysis,
};

fn equality_sides(a: &Analysis, i: usize) -> Option<(u64, u64)> {
    let children: Vec<usize> = a.constellation().children(i).map(|(_, k)| k).collect();
    let [k] = children.as_slice() else { return None };
    let lhs = a.multiplicity(i) * a.multiplicity(*k);
    let rhs = a
        .prox()
        .sources(i)
        .iter()
        .map(|&j| a.multiplicity(j).pow(2))
        .sum();
    Some((lhs, rhs))
}

fn main() {
    let a = Analysis::new(fixtures::euclidean_chain()).unwrap();
    let (lhs, rhs) = equality_sides(&a, 1).unwrap();
    println!(
        "Euclidean chain 19, 5, 5, 5, 4, 1, 1, 1, 1: m_i * m_k = {lhs}, sum of squares = {rhs}"
    );
    println!("  recognised as Euclidean: {}", recognize_euclidean(&a, 1));

    let a = Analysis::new(fixtures::bi_euclidean()).unwrap();
    let (lhs, rhs) = equality_sides(&a, 2).unwrap();
    println!("\nbi-Euclidean cluster 88 | 17, 12, branches (5,2,2,1,1) and (5):");
    println!("  m_i * m_k = {lhs}, sum of squares = {rhs}");
    println!(
        "  recognised as bi-Euclidean: {}",
        recognize_bi_euclidean(&a, 2)
    );

    // Sample the inequality across a corpus: equality happens exactly at
    // recognised points.
    let mut strict = 0;
    let mut equal = 0;
    for seed in 0..400 {
        let a = Analysis::new(random_idealistic_cluster(7, seed)).unwrap();
        for i in a.points() {
            let Some((lhs, rhs)) = equality_sides(&a, i) else {
                continue;
            };
            let structural = recognize_euclidean(&a, i) || recognize_bi_euclidean(&a, i);
            assert!(lhs >= rhs);
            assert_eq!(lhs == rhs, structural);
            if lhs == rhs {
                equal += 1;
            } else {
                strict += 1;
            }
        }
    }
    println!(
        "\ncorpus of 400 random clusters: {strict} strict inequalities, {equal} equality cases, \
         all matching the recognisers"
    );
}
