//! Check the linear proximity inequalities and the Rees criterion.
//!
//! A cluster is idealistic exactly when every point carries at least as
//! much multiplicity as each pair of its outgoing rays demands; the Rees
//! excess `m_i^2 - sum of m_j^2` then decides which induced valuations are
//! Rees for the associated complete ideal.

use clusterzeta::{fixtures, rees_flags, Analysis};

fn main() {
    let cluster = fixtures::five_point();
    let report = cluster.validate_idealistic();
    println!("five-point cluster idealistic: {}", report.idealistic);
    for e in report.entries.iter().filter(|e| e.point == 1) {
        println!(
            "  slack at point 1 for labels {{{}, {}}}: {}",
            e.pair.0, e.pair.1, e.slack
        );
    }

    let a = Analysis::new(cluster).unwrap();
    for flag in rees_flags(&a).unwrap() {
        println!(
            "  point {}: excess {} -> {}",
            flag.point,
            flag.d,
            if flag.is_rees { "Rees" } else { "not Rees" }
        );
    }

    for j in 2..=5 {
        println!(
            "  point {j} is a switch point: {}",
            a.cluster().is_switch_point(j).unwrap()
        );
    }

    // A weight vector that asks too much of the root.
    let bad = fixtures::chain(1, &[(1, 2)]);
    let report = bad.validate_idealistic();
    println!("\nchain with weights (1, 2) idealistic: {}", report.idealistic);
    if let Some(v) = report.first_violation() {
        println!(
            "  first violation at point {} for labels {{{}, {}}}: slack {}",
            v.point, v.pair.0, v.pair.1, v.slack
        );
    }
}
