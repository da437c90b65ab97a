//! The local topological zeta function, its twists and its poles.
//!
//! Every pole is of the form `-nu_j/N_j` for a divisor of the resolution,
//! but not every candidate is a pole: the example shows the exact
//! cancellation at -5/4 on the five-point cluster and the surviving
//! candidates of the nine-point cluster.

use num_bigint::BigInt;
use num_rational::BigRational;

use clusterzeta::ratzeta::{pole_report, z_top, z_top_r};
use clusterzeta::{fixtures, Analysis};

fn main() {
    let a = Analysis::new(fixtures::single_point(2)).unwrap();
    println!("quadratic cone: Z = {}", z_top(&a));
    println!("  twist r = 2: {}", z_top_r(&a, 2));
    println!("  twist r = 5: {}", z_top_r(&a, 5));

    let a = Analysis::new(fixtures::five_point()).unwrap();
    let z = z_top(&a);
    let report = pole_report(&a, &z);
    println!("\nfive-point cluster: Z = {z}");
    println!(
        "  candidates: {}",
        report
            .candidates
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let s0 = -BigRational::new(BigInt::from(5), BigInt::from(4));
    println!(
        "  -5/4 is a candidate but {} a pole (the four strata carrying its factor telescope)",
        if report.is_pole(&s0) { "IS" } else { "not" }
    );
    for p in &report.poles {
        println!("  pole {} of order {} with leading coefficient {}", p.s0, p.order, p.leading);
    }

    let a = Analysis::new(fixtures::nine_point()).unwrap();
    let z = z_top(&a);
    let report = pole_report(&a, &z);
    println!("\nnine-point cluster: Z = {z}");
    for p in &report.poles {
        println!("  pole {} of order {}", p.s0, p.order);
    }
    println!(
        "  candidates that cancel: {}",
        report
            .candidates
            .iter()
            .filter(|c| !report.is_pole(c))
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
}
