//! Eigenvalues of monodromy via the resolution.
//!
//! For a surface germ with an isolated singularity resolved by blowing up
//! the constellation, the characteristic polynomial of the monodromy action
//! on middle cohomology is
//!
//! ```text
//!   prod over j of (1 - t^(N_j))^chi(E_j)  /  (1 - t)
//! ```
//!
//! which this module keeps in factored cyclotomic form: the exponent of the
//! d-th cyclotomic polynomial is the sum of `chi(E_j)` over the divisors
//! whose `N_j` is divisible by `d`, minus one at `d = 1`.
//!
//! A number `exp(2 pi i s0)` with `s0 = -a/b` in lowest terms is an
//! eigenvalue at the origin iff the `chi` of the divisors whose `N_j` is
//! divisible by `b` do not sum to zero; away from the origin only the
//! eigenvalue 1 occurs.  The checkers below run that criterion over the
//! actual poles of the zeta function and its twists.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::constellation::Analysis;
use crate::error::{Error, Result};
use crate::ratzeta::{pole_report, z_top, z_top_r_with_table};
use crate::strata::{chi_single, strata_table};

/// Integer exponent map `d -> e_d` representing `prod Phi_d(t)^(e_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicProduct {
    exponents: BTreeMap<u64, i64>,
    milnor: i64,
}

impl CyclotomicProduct {
    /// Nonzero exponents.
    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    /// Degree of the characteristic polynomial: the Milnor number.
    pub fn milnor_number(&self) -> i64 {
        self.milnor
    }

    /// Orders of the roots: `{d : e_d > 0}` together with 1, the order of
    /// the eigenvalue present at every smooth point of the hypersurface.
    pub fn eigenvalue_orders(&self) -> Result<BTreeSet<u64>> {
        if let Some((&d, &e)) = self.exponents.iter().find(|(_, &e)| e < 0) {
            return Err(Error::NegativeExponent {
                order: d,
                exponent: e,
            });
        }
        let mut orders: BTreeSet<u64> = self
            .exponents
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(&d, _)| d)
            .collect();
        orders.insert(1);
        Ok(orders)
    }

    /// Expands the product to dense integer coefficients (constant first).
    pub fn expand(&self) -> Result<Vec<BigInt>> {
        let mut cache: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
        let mut out = vec![BigInt::from(1)];
        for (&d, &e) in &self.exponents {
            if e < 0 {
                return Err(Error::NegativeExponent {
                    order: d,
                    exponent: e,
                });
            }
            let phi = cyclotomic(d, &mut cache);
            for _ in 0..e {
                out = int_poly_mul(&out, &phi);
            }
        }
        Ok(out)
    }
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials, panicking on nonzero remainder.
fn int_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dlead = den.last().unwrap().clone();
    let mut quot = vec![BigInt::from(0); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let q = &rem[k + den.len() - 1] / &dlead;
        quot[k] = q.clone();
        for (j, d) in den.iter().enumerate() {
            let v = &rem[k + j] - &q * d;
            rem[k + j] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    quot
}

/// The d-th cyclotomic polynomial as integer coefficients.
fn cyclotomic(d: u64, cache: &mut BTreeMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&d) {
        return p.clone();
    }
    // t^d - 1 divided by the cyclotomic polynomials of the proper divisors.
    let mut p = vec![BigInt::from(0); d as usize + 1];
    p[0] = BigInt::from(-1);
    p[d as usize] = BigInt::from(1);
    for e in 1..d {
        if d.is_multiple_of(e) {
            let phi = cyclotomic(e, cache);
            p = int_poly_div(&p, &phi);
        }
    }
    cache.insert(d, p.clone());
    p
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            if k != n / k {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// Characteristic polynomial of the monodromy at the origin, in factored
/// cyclotomic form.
pub fn acampo(a: &Analysis) -> CyclotomicProduct {
    let nd = a.numerical();
    let chis: Vec<i64> = a.points().map(|j| chi_single(a, j)).collect();
    let mut exponents: BTreeMap<u64, i64> = BTreeMap::new();
    let mut milnor: i64 = -1;
    for j in a.points() {
        let chi = chis[j - 1];
        milnor += chi * nd.n(j) as i64;
        for d in divisors(nd.n(j)) {
            *exponents.entry(d).or_insert(0) += chi;
        }
    }
    *exponents.entry(1).or_insert(0) -= 1;
    exponents.retain(|_, e| *e != 0);
    CyclotomicProduct { exponents, milnor }
}

/// The eigenvalue criterion for one pole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleCheck {
    pub s0: BigRational,
    /// Reduced denominator of `s0`.
    pub b: u64,
    /// Divisors `j` with `b | N_j`.
    pub j_set: Vec<usize>,
    pub chi_sum: i64,
    pub eigenvalue: bool,
}

/// Eigenvalue verdicts for every pole of the zeta function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub poles: Vec<PoleCheck>,
    pub verdict: bool,
}

fn j_set(a: &Analysis, b: u64) -> Vec<usize> {
    a.points().filter(|&j| a.numerical().n(j).is_multiple_of(b)).collect()
}

fn chi_sum_over(a: &Analysis, set: &[usize]) -> i64 {
    set.iter().map(|&j| chi_single(a, j)).sum()
}

/// The eigenvalue criterion for an arbitrary reduced denominator `b`:
/// the divisors whose `N` is divisible by `b` and their chi sum.
pub fn eigenvalue_criterion(a: &Analysis, b: u64) -> (Vec<usize>, i64) {
    let set = j_set(a, b);
    let sum = chi_sum_over(a, &set);
    (set, sum)
}

/// Checks that every pole of the zeta function induces an eigenvalue of
/// monodromy.
pub fn check_monodromy(a: &Analysis) -> ConjectureReport {
    let z = z_top(a);
    let report = pole_report(a, &z);
    let mut poles = Vec::new();
    for pole in &report.poles {
        let b = pole.s0.denom().abs().to_u64().unwrap();
        let set = j_set(a, b);
        let chi_sum = chi_sum_over(a, &set);
        // b = 1 always passes: 1 is an eigenvalue at smooth points of the
        // hypersurface.
        let eigenvalue = b == 1 || chi_sum != 0;
        poles.push(PoleCheck {
            s0: pole.s0.clone(),
            b,
            j_set: set,
            chi_sum,
            eigenvalue,
        });
    }
    let verdict = poles.iter().all(|p| p.eigenvalue);
    ConjectureReport { poles, verdict }
}

/// One twist order in the holomorphy check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolomorphyCheck {
    pub r: u64,
    /// True when `r` divides some eigenvalue order, so the conjecture makes
    /// no claim.
    pub exempt: bool,
    /// True when the twist has no poles (trivially true for exempt `r`).
    pub pole_free: bool,
}

/// Holomorphy verdicts for every twist order up to `r_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolomorphyReport {
    pub r_max: u64,
    pub checks: Vec<HolomorphyCheck>,
    pub verdict: bool,
}

/// For every `r` in `2..=r_max` dividing no eigenvalue order, checks that
/// the twist has no poles.
pub fn check_holomorphy(a: &Analysis, r_max: u64) -> Result<HolomorphyReport> {
    let orders = acampo(a).eigenvalue_orders()?;
    let table = strata_table(a);
    let nd = a.numerical();
    let mut checks = Vec::new();
    for r in 2..=r_max {
        let exempt = orders.iter().any(|&d| d % r == 0);
        if exempt {
            checks.push(HolomorphyCheck {
                r,
                exempt,
                pole_free: true,
            });
            continue;
        }
        // The twist is an empty sum unless r divides some N_j.  As a sum of
        // proper fractions it is proper, so having no poles is the same as
        // vanishing identically; the vanishing test is the sharper one.
        let relevant = a.points().any(|j| nd.n(j).is_multiple_of(r));
        let pole_free = if relevant {
            let f = z_top_r_with_table(a, &table, r);
            debug_assert_eq!(f.is_zero(), pole_report(a, &f).poles.is_empty());
            f.is_zero()
        } else {
            true
        };
        checks.push(HolomorphyCheck {
            r,
            exempt,
            pole_free,
        });
    }
    let verdict = checks.iter().all(|c| c.pole_free);
    Ok(HolomorphyReport {
        r_max,
        checks,
        verdict,
    })
}

/// Eigenvalue witnesses attached to a divisor with positive `chi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveChiCheck {
    pub point: usize,
    pub chi: i64,
    /// Reduced denominator of `nu_j / N_j` and the chi-sum over its `J_b`.
    pub ratio_b: u64,
    pub ratio_sum: i64,
    /// Chi-sum over `{i : N_j | N_i}`.
    pub order_sum: i64,
    pub verdict: bool,
}

/// Verdict list for every divisor with `chi(E_j) > 0`: both
/// `exp(-2 pi i nu_j / N_j)` and `exp(2 pi i / N_j)` must be eigenvalues.
pub fn positive_chi_eigenvalue_checks(a: &Analysis) -> Vec<PositiveChiCheck> {
    let nd = a.numerical();
    let mut out = Vec::new();
    for j in a.points() {
        let chi = chi_single(a, j);
        if chi <= 0 {
            continue;
        }
        let ratio = BigRational::new(BigInt::from(nd.nu(j)), BigInt::from(nd.n(j)));
        let b = ratio.denom().to_u64().unwrap();
        let ratio_sum = chi_sum_over(a, &j_set(a, b));
        let order_set: Vec<usize> = a
            .points()
            .filter(|&i| nd.n(i).is_multiple_of(nd.n(j)))
            .collect();
        let order_sum = chi_sum_over(a, &order_set);
        out.push(PositiveChiCheck {
            point: j,
            chi,
            ratio_b: b,
            ratio_sum,
            order_sum,
            verdict: ratio_sum != 0 && order_sum != 0,
        });
    }
    out
}

/// Compensation data for a divisor with `chi(E_t) < 0`: the maximal chain of
/// equal multiplicities absorbing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCompensation {
    pub t: usize,
    /// Chain points after `t` with the same multiplicity, in order.
    pub chain: Vec<usize>,
    /// Last chain point with the multiplicity of `t`.
    pub l: usize,
    pub chi_t: i64,
    pub chi_l: i64,
}

/// For a point with negative `chi`, follows the equal-multiplicity chain
/// that the sign classification guarantees.
pub fn chain_compensation(a: &Analysis, t: usize) -> Option<ChainCompensation> {
    let chi_t = chi_single(a, t);
    if chi_t >= 0 {
        return None;
    }
    let c = a.constellation();
    let m = a.multiplicity(t);
    let (label, first) = c
        .children(t)
        .find(|&(_, k)| a.multiplicity(k) == m)?;
    let mut chain = vec![first];
    let mut cur = first;
    while let Some(next) = c.child(cur, label) {
        if a.multiplicity(next) != m {
            break;
        }
        chain.push(next);
        cur = next;
    }
    let l = *chain.last().unwrap();
    Some(ChainCompensation {
        t,
        chain,
        l,
        chi_t,
        chi_l: chi_single(a, l),
    })
}
