//! Euler characteristics of the strata of the resolution.
//!
//! The table lists every index set that can carry a nonzero stratum; the
//! sum over all entries containing a divisor recovers the Euler
//! characteristic of that divisor (a plane blown up in the points proximate
//! to it), and `chi(E_i) = D - R + T` gives a second route to the diagonal
//! values.

use clusterzeta::strata::{drt, strata_table};
use clusterzeta::{fixtures, Analysis};

fn main() {
    let a = Analysis::new(fixtures::five_point()).unwrap();
    let table = strata_table(&a);

    println!("stratum table of the five-point cluster:");
    for (indices, chi) in table.iter() {
        println!("  chi{indices:?} = {chi}");
    }

    println!("\npartition identity:");
    for i in a.points() {
        println!(
            "  sum over strata containing {i}: {} = 3 + {} proximate points",
            table.chi_sum_containing(i),
            a.prox().sources(i).len()
        );
    }

    println!("\nD - R + T decomposition:");
    for i in a.points() {
        let d = drt(&a, i);
        println!(
            "  point {i}: D = {}, R = {}, T = {}, chi = {}",
            d.d,
            d.r,
            d.t,
            d.chi()
        );
    }
}
