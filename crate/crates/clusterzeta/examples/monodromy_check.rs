//! Eigenvalues of monodromy and the two conjectures.
//!
//! The characteristic polynomial of the monodromy at the origin comes out
//! of the resolution as a product of cyclotomic polynomials; a pole
//! `-a/b` of the zeta function induces the eigenvalue `exp(-2 pi i a/b)`
//! exactly when the chi-sum over the divisors with `b | N_j` is nonzero.

use clusterzeta::monodromy::{
    acampo, check_holomorphy, check_monodromy, eigenvalue_criterion,
    positive_chi_eigenvalue_checks,
};
use clusterzeta::{fixtures, Analysis};

fn main() {
    // The equal chain of multiplicity 3 carries x^6 + y^3 + z^3.
    let a = Analysis::new(fixtures::chain(3, &[(1, 3)])).unwrap();
    let cp = acampo(&a);
    let product: Vec<String> = cp
        .exponents()
        .iter()
        .map(|(d, e)| format!("Phi_{d}^{e}"))
        .collect();
    println!("equal chain: characteristic polynomial {}", product.join(" "));
    println!("  Milnor number {}", cp.milnor_number());
    println!("  eigenvalue orders {:?}", cp.eigenvalue_orders().unwrap());

    let report = check_monodromy(&a);
    for p in &report.poles {
        println!(
            "  pole {}: chi-sum over J_{} is {} -> eigenvalue {}",
            p.s0, p.b, p.chi_sum, p.eigenvalue
        );
    }
    println!("  monodromy verdict: {}", report.verdict);

    let r_max = a.points().map(|j| a.numerical().n(j)).max().unwrap();
    let hol = check_holomorphy(&a, r_max).unwrap();
    println!(
        "  holomorphy of twists up to {}: {} ({} orders checked)",
        r_max,
        hol.verdict,
        hol.checks.iter().filter(|c| !c.exempt).count()
    );

    // The nine-point cluster: the order-two candidate -1/4 cancels from the
    // zeta function, yet its eigenvalue exists anyway through N = 192.
    let a = Analysis::new(fixtures::nine_point()).unwrap();
    let (j4, sum) = eigenvalue_criterion(&a, 4);
    let ns: Vec<u64> = j4.iter().map(|&j| a.numerical().n(j)).collect();
    println!("\nnine-point cluster: J_4 has N values {ns:?} with chi-sum {sum}");
    for c in positive_chi_eigenvalue_checks(&a) {
        println!(
            "  positive chi at point {}: ratio sum {}, order sum {} -> {}",
            c.point, c.ratio_sum, c.order_sum, c.verdict
        );
    }
}
