//! The complete monomial ideal of a cluster, its Newton polyhedron and a
//! general element.

use clusterzeta::monomial::{
    general_element, ideal_generators, is_complete, monomial_string, newton_polyhedron,
};
use clusterzeta::{fixtures, Analysis};

fn main() {
    let a = Analysis::new(fixtures::five_point()).unwrap();
    let ideal = ideal_generators(&a).unwrap();
    let monomials: Vec<String> = ideal
        .generators
        .iter()
        .map(|&g| monomial_string(g))
        .collect();
    println!("five-point cluster ideal ({} generators):", monomials.len());
    println!("  ({})", monomials.join(", "));
    println!(
        "  complete: {}",
        is_complete(&ideal.generators, &a).unwrap()
    );

    let np = newton_polyhedron(&a).unwrap();
    for f in &np.facets {
        println!(
            "  inequality of point {}: {} (Rees excess {}){}",
            f.point,
            if f.essential { "facet with lattice witness" } else { "no lattice witness" },
            f.d,
            f.witness
                .map(|w| format!(", witness {w:?}"))
                .unwrap_or_default()
        );
    }

    // Dropping the generator xyz loses completeness: (1,1,1) satisfies every
    // inequality but no remaining generator divides it.
    let pruned: Vec<[u64; 3]> = ideal
        .generators
        .iter()
        .copied()
        .filter(|&g| g != [1, 1, 1])
        .collect();
    println!(
        "  without xyz the ideal is complete: {}",
        is_complete(&pruned, &a).unwrap()
    );

    let element = general_element(&a, 7).unwrap();
    let terms: Vec<String> = element
        .iter()
        .map(|(g, c)| format!("({c}){}", monomial_string(*g)))
        .collect();
    println!("\na general element (seed 7):\n  {}", terms.join(" + "));

    let a = Analysis::new(fixtures::ideal_fixture_28()).unwrap();
    let ideal = ideal_generators(&a).unwrap();
    println!(
        "\n28-generator chain ideal: {} minimal generators, complete: {}",
        ideal.generators.len(),
        is_complete(&ideal.generators, &a).unwrap()
    );
}
