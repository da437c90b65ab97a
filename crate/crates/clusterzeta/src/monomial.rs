//! The complete monomial ideal attached to a cluster.
//!
//! A monomial `x^A` passes through the cluster iff `<w_j, A> >= v_j` for
//! every point, where `w_j` is the valuation vector and `v_j = N_j`.  The
//! module enumerates the minimal generators of the ideal of all such
//! monomials, decides which inequalities cut facets of the Newton
//! polyhedron (with an integer witness), checks completeness, and emits a
//! general element with seeded pseudo-random coefficients.
//!
//! All lattice work happens inside the box `[0, B]^3` with `B = max v_j`;
//! since every `w_j` is componentwise positive, clamping a lattice point to
//! the box keeps it inside the region, so the box sees every minimal
//! generator and every covering failure.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constellation::Analysis;
use crate::error::{Error, Result};

/// Default ceiling for the lattice bound `B`; raise it through
/// `CLUSTERZETA_BOUND_CEILING` in the command-line tool.
pub const DEFAULT_BOUND_CEILING: u64 = 10_000;

/// One defining inequality `<w, A> >= v` of the region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inequality {
    pub point: usize,
    pub w: [i64; 3],
    pub v: u64,
}

impl Inequality {
    pub fn satisfied_by(&self, a: [u64; 3]) -> bool {
        self.value_at(a) >= self.v as i128
    }

    fn value_at(&self, a: [u64; 3]) -> i128 {
        (0..3).map(|k| self.w[k] as i128 * a[k] as i128).sum()
    }
}

/// Minimal monomial generators together with the defining inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    /// Exponent vectors in graded-lexicographic order.
    pub generators: Vec<[u64; 3]>,
    pub inequalities: Vec<Inequality>,
}

/// Facet status of one defining inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetStatus {
    pub point: usize,
    /// True when dropping the inequality admits a new lattice point.
    pub essential: bool,
    /// A lattice point violating only this inequality, when one exists.
    pub witness: Option<[u64; 3]>,
    /// The Rees excess `m_i^2 - sum of m_j^2 over j -> i`.
    pub d: i64,
    pub is_rees: bool,
}

/// Facet analysis of the Newton polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub facets: Vec<FacetStatus>,
}

fn inequalities(a: &Analysis) -> Vec<Inequality> {
    a.points()
        .map(|j| Inequality {
            point: j,
            w: a.prox().w(j),
            v: a.numerical().n(j),
        })
        .collect()
}

fn bound(a: &Analysis, ceiling: u64) -> Result<u64> {
    let b = a.points().map(|j| a.numerical().n(j)).max().unwrap();
    if b > ceiling {
        Err(Error::BoundOverflow { bound: b, ceiling })
    } else {
        Ok(b)
    }
}

/// Smallest `z` with `(x, y, z)` in the region, for every column of the box.
fn column_floor(ineqs: &[Inequality], b: u64) -> Vec<Vec<u64>> {
    let n = b as usize + 1;
    let mut floor = vec![vec![0u64; n]; n];
    for (x, row) in floor.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let mut z = 0u64;
            for q in ineqs {
                let rest = q.v as i128 - q.w[0] as i128 * x as i128 - q.w[1] as i128 * y as i128;
                if rest > 0 {
                    let need = (rest + q.w[2] as i128 - 1) / q.w[2] as i128;
                    z = z.max(need as u64);
                }
            }
            *cell = z;
        }
    }
    floor
}

/// Minimal generators with the default bound ceiling.
pub fn ideal_generators(a: &Analysis) -> Result<MonomialIdeal> {
    ideal_generators_with_ceiling(a, DEFAULT_BOUND_CEILING)
}

/// Minimal generators of the ideal of monomials satisfying all
/// inequalities.
pub fn ideal_generators_with_ceiling(a: &Analysis, ceiling: u64) -> Result<MonomialIdeal> {
    let ineqs = inequalities(a);
    let b = bound(a, ceiling)?;
    let floor = column_floor(&ineqs, b);
    let n = b as usize + 1;
    let mut generators = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let z = floor[x][y];
            // The column floor is monotone, so a candidate is minimal iff
            // both neighbouring columns sit strictly higher.
            let minimal = (x == 0 || floor[x - 1][y] > z) && (y == 0 || floor[x][y - 1] > z);
            if minimal {
                generators.push([x as u64, y as u64, z]);
            }
        }
    }
    generators.sort_by_key(|g| (g.iter().sum::<u64>(), std::cmp::Reverse(*g)));
    debug_assert!(generators
        .iter()
        .all(|&g| ineqs.iter().all(|q| q.satisfied_by(g))));
    Ok(MonomialIdeal {
        generators,
        inequalities: ineqs,
    })
}

/// Facet essentiality of every inequality, with Rees flags for comparison.
pub fn newton_polyhedron(a: &Analysis) -> Result<NewtonPolyhedron> {
    newton_polyhedron_with_ceiling(a, DEFAULT_BOUND_CEILING)
}

pub fn newton_polyhedron_with_ceiling(a: &Analysis, ceiling: u64) -> Result<NewtonPolyhedron> {
    let ineqs = inequalities(a);
    let b = bound(a, ceiling)?;
    let n = b as usize + 1;
    let rees = crate::constellation::rees_flags(a)?;
    // For each column, the largest and second largest z demanded by the
    // inequalities; dropping inequality j then floors the column at the
    // second maximum whenever j alone attains the maximum.
    let need = |q: &Inequality, x: usize, y: usize| -> u64 {
        let rest = q.v as i128 - q.w[0] as i128 * x as i128 - q.w[1] as i128 * y as i128;
        if rest > 0 {
            ((rest + q.w[2] as i128 - 1) / q.w[2] as i128) as u64
        } else {
            0
        }
    };
    let mut witnesses: Vec<Option<[u64; 3]>> = vec![None; ineqs.len()];
    for x in 0..n {
        for y in 0..n {
            let mut best = (0u64, usize::MAX);
            let mut second = 0u64;
            for (idx, q) in ineqs.iter().enumerate() {
                let z = need(q, x, y);
                if z > best.0 {
                    second = best.0;
                    best = (z, idx);
                } else if z > second {
                    second = z;
                }
            }
            for (idx, q) in ineqs.iter().enumerate() {
                if witnesses[idx].is_some() {
                    continue;
                }
                let without = if idx == best.1 { second } else { best.0 };
                let point = [x as u64, y as u64, without];
                if !q.satisfied_by(point) {
                    witnesses[idx] = Some(point);
                }
            }
        }
    }
    let facets = ineqs
        .iter()
        .enumerate()
        .map(|(idx, q)| {
            let flag = rees[q.point - 1];
            FacetStatus {
                point: q.point,
                essential: witnesses[idx].is_some(),
                witness: witnesses[idx],
                d: flag.d,
                is_rees: flag.is_rees,
            }
        })
        .collect();
    Ok(NewtonPolyhedron { facets })
}

/// True iff the ideal generated by `generators` contains every lattice
/// point of the cluster's region.
pub fn is_complete(generators: &[[u64; 3]], a: &Analysis) -> Result<bool> {
    is_complete_with_ceiling(generators, a, DEFAULT_BOUND_CEILING)
}

pub fn is_complete_with_ceiling(
    generators: &[[u64; 3]],
    a: &Analysis,
    ceiling: u64,
) -> Result<bool> {
    let ineqs = inequalities(a);
    let b = bound(a, ceiling)?;
    let n = b as usize + 1;
    let floor = column_floor(&ineqs, b);
    // Smallest generated z per column, by monotone closure.
    let mut cover = vec![vec![u64::MAX; n]; n];
    for g in generators {
        let (x, y) = (g[0] as usize, g[1] as usize);
        if x < n && y < n {
            cover[x][y] = cover[x][y].min(g[2]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let mut c = cover[x][y];
            if x > 0 {
                c = c.min(cover[x - 1][y]);
            }
            if y > 0 {
                c = c.min(cover[x][y - 1]);
            }
            cover[x][y] = c;
            if floor[x][y] < c {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A general element: one term per minimal generator with deterministic,
/// seeded nonzero rational coefficients.  Genericity of the coefficients is
/// not certified.
pub fn general_element(a: &Analysis, seed: u64) -> Result<Vec<([u64; 3], BigRational)>> {
    let ideal = ideal_generators(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ideal
        .generators
        .into_iter()
        .map(|g| {
            let mut num = 0i64;
            while num == 0 {
                num = rng.gen_range(-9..=9);
            }
            let den = rng.gen_range(1..=3i64);
            (g, BigRational::new(BigInt::from(num), BigInt::from(den)))
        })
        .collect())
}

/// Renders an exponent vector as a monomial in `x, y, z`.
pub fn monomial_string(e: [u64; 3]) -> String {
    if e == [0, 0, 0] {
        return "1".to_string();
    }
    let mut out = String::new();
    for (v, name) in e.iter().zip(["x", "y", "z"]) {
        match v {
            0 => {}
            1 => out.push_str(name),
            _ => out.push_str(&format!("{name}^{v}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::constellation::Analysis;
    use crate::fixtures;

    fn analysis(cl: crate::constellation::Cluster) -> Analysis {
        Analysis::new(cl).unwrap()
    }

    fn exponents(gens: &[&str]) -> Vec<[u64; 3]> {
        // Parses "x^6", "xyz", "x^2y^2" style monomials.
        gens.iter()
            .map(|g| {
                let mut e = [0u64; 3];
                let bytes = g.as_bytes();
                let mut k = 0;
                while k < bytes.len() {
                    let var = match bytes[k] {
                        b'x' => 0,
                        b'y' => 1,
                        b'z' => 2,
                        other => panic!("bad monomial char {other}"),
                    };
                    k += 1;
                    let mut exp = 1u64;
                    if k < bytes.len() && bytes[k] == b'^' {
                        k += 1;
                        let mut num = 0u64;
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            num = num * 10 + (bytes[k] - b'0') as u64;
                            k += 1;
                        }
                        exp = num;
                    }
                    e[var] += exp;
                }
                e
            })
            .collect()
    }

    #[test]
    fn five_point_generators() {
        let a = analysis(fixtures::five_point());
        let ideal = ideal_generators(&a).unwrap();
        let mut expected = exponents(&[
            "x^6", "y^3", "z^4", "x^3y", "x^2y^2", "yz^2", "y^2z", "x^3z", "xz^2", "xyz",
        ]);
        expected.sort();
        let mut got = ideal.generators.clone();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn generators_form_an_antichain() {
        for cl in [
            fixtures::five_point(),
            fixtures::ideal_fixture_21(),
            fixtures::ideal_fixture_28(),
            fixtures::nine_point(),
        ] {
            let a = analysis(cl);
            let gens = ideal_generators(&a).unwrap().generators;
            for (x, g) in gens.iter().enumerate() {
                for (y, h) in gens.iter().enumerate() {
                    if x != y {
                        assert!(
                            (0..3).any(|k| g[k] < h[k]),
                            "{g:?} divides {h:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_cone_generators() {
        let a = analysis(fixtures::single_point(2));
        let ideal = ideal_generators(&a).unwrap();
        let mut got = ideal.generators.clone();
        got.sort();
        let mut expected = exponents(&["x^2", "xy", "y^2", "xz", "yz", "z^2"]);
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn completeness() {
        let a = analysis(fixtures::five_point());
        let ideal = ideal_generators(&a).unwrap();
        assert!(is_complete(&ideal.generators, &a).unwrap());
        // Dropping xyz leaves (1,1,1) uncovered.
        let pruned: Vec<[u64; 3]> = ideal
            .generators
            .iter()
            .copied()
            .filter(|&g| g != [1, 1, 1])
            .collect();
        assert!(!is_complete(&pruned, &a).unwrap());
        let a = analysis(fixtures::single_point(1));
        assert!(is_complete(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], &a).unwrap());
    }

    #[test]
    fn facets_and_rees() {
        let a = analysis(fixtures::five_point());
        let np = newton_polyhedron(&a).unwrap();
        // All five inequalities are Rees; the witness search certifies three
        // of them and leaves the first two as logged boundary degeneracies
        // (their facets carry no box lattice point missed by the others).
        assert!(np.facets.iter().all(|f| f.is_rees));
        let essential: Vec<usize> = np
            .facets
            .iter()
            .filter(|f| f.essential)
            .map(|f| f.point)
            .collect();
        assert_eq!(essential, vec![3, 4, 5]);
        for f in &np.facets {
            assert!(!f.essential || f.is_rees, "witness against non-Rees");
        }
        // Equal chain: the first inequality is redundant (D = 0).
        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        let np = newton_polyhedron(&a).unwrap();
        assert!(!np.facets[0].essential);
        assert_eq!(np.facets[0].d, 0);
        assert!(np.facets[1].essential);
        // Single point: one facet, the plane x + y + z = m.
        let a = analysis(fixtures::single_point(3));
        let np = newton_polyhedron(&a).unwrap();
        assert!(np.facets[0].essential);
    }

    #[test]
    fn bound_ceiling() {
        let a = analysis(fixtures::five_point());
        assert!(matches!(
            ideal_generators_with_ceiling(&a, 3),
            Err(Error::BoundOverflow { bound: 9, ceiling: 3 })
        ));
    }

    #[test]
    fn general_element_is_deterministic() {
        let a = analysis(fixtures::single_point(2));
        let e1 = general_element(&a, 11).unwrap();
        let e2 = general_element(&a, 11).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1.len(), 6);
        assert!(e1.iter().all(|(g, c)| g.iter().sum::<u64>() == 2 && !c.is_zero()));
        let e3 = general_element(&a, 12).unwrap();
        assert_ne!(e1, e3);
    }
}
