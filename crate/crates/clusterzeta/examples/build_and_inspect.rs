//! Build a cluster from edges and inspect its derived combinatorics:
//! cones, valuation vectors, proximity relations and numerical data.

use clusterzeta::{Analysis, Cluster, Constellation, Label};

fn main() {
    // The five-point cluster: the root carries multiplicity 3, two points
    // sit on the first exceptional plane, two more on the second.
    let lab = |v| Label::new(v).unwrap();
    let edges = [
        (2, 1, lab(1)),
        (3, 1, lab(3)),
        (4, 2, lab(1)),
        (5, 2, lab(2)),
    ];
    let constellation = Constellation::build(&edges, 1).unwrap();
    let cluster = Cluster::new(constellation, vec![3, 2, 1, 1, 1]).unwrap();
    let a = Analysis::new(cluster).unwrap();

    println!("point  parent  label  m   w           nu  N   level  proximate to");
    for j in a.points() {
        let c = a.constellation();
        let w = a.prox().w(j);
        println!(
            "{:<6} {:<7} {:<6} {:<3} ({},{},{})     {:<3} {:<3} {:<6} {:?}",
            j,
            c.parent(j).map_or("-".into(), |p| p.to_string()),
            c.edge_label(j).map_or("-".into(), |l| l.to_string()),
            a.multiplicity(j),
            w[0],
            w[1],
            w[2],
            a.numerical().nu(j),
            a.numerical().n(j),
            a.prox().level(j),
            a.prox().targets(j),
        );
    }

    println!("\ncone generators of the last point:");
    for v in a.prox().cone_vectors(5) {
        println!("  ({}, {}, {})", v[0], v[1], v[2]);
    }

    println!("\nlinear proximities:");
    for j in a.points() {
        for &i in a.prox().lin_targets(j) {
            println!("  {j} ->> {i}");
        }
    }
}
