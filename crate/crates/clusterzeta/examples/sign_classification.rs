//! Classify the sign of `chi(E_i)` by structural pattern matching.
//!
//! Negative values occur exactly at pencil configurations (patterns C1 to
//! C3: a terminal successor of equal multiplicity with the right labels
//! above); zeros form eight further families (C4 to C11).  The sign itself
//! always comes from the stratum formula; the matchers are independent.

use clusterzeta::strata::classify_sign;
use clusterzeta::{fixtures, Analysis};

fn show(name: &str, cl: clusterzeta::Cluster) {
    let a = Analysis::new(cl).unwrap();
    println!("{name}:");
    for i in a.points() {
        let c = classify_sign(&a, i);
        let patterns: Vec<&str> = c.patterns.iter().map(|p| p.name()).collect();
        println!(
            "  point {i}: chi = {:<3} {:?} {}",
            c.chi,
            c.sign,
            if patterns.is_empty() {
                String::new()
            } else {
                format!("via {}", patterns.join(", "))
            }
        );
    }
}

fn main() {
    show("equal chain (4, 4)", fixtures::chain(4, &[(1, 4)]));
    show("quadratic cone", fixtures::single_point(2));
    show("five-point cluster", fixtures::five_point());
    show("28-generator chain", fixtures::ideal_fixture_28());
    show("21-generator cluster", fixtures::ideal_fixture_21());
    show("nine-point cluster", fixtures::nine_point());
}
