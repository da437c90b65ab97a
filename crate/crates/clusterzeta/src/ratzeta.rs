//! Exact rational-function arithmetic over `Q` and the local topological
//! zeta function.
//!
//! The zeta function of a cluster is the finite sum over the candidate
//! strata
//!
//! ```text
//!   Z(s) = sum over I of chi(E_I) * prod over i in I of 1 / (N_i s + nu_i)
//! ```
//!
//! with `(nu_0, N_0) = (1, 1)` for the strict transform.  Index sets that
//! miss every exceptional divisor meet the fibre over the origin in the
//! empty set and contribute nothing.
//!
//! [`RationalFunctionQ`] keeps the denominator as a multiset of literal
//! linear factors `(N s + nu)` so the candidate-pole bookkeeping of the
//! numerical data survives reduction; distinct factors with equal roots are
//! never merged.  All coefficients are exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constellation::Analysis;
use crate::strata::{strata_table, StratumTable};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly(vec![c])
        }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    /// The linear factor `n s + nu`.
    pub fn linear(n: u64, nu: u64) -> Poly {
        Poly(vec![
            BigRational::from(BigInt::from(nu)),
            BigRational::from(BigInt::from(n)),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.0
    }

    fn normalize(mut self) -> Poly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = vec![BigRational::zero(); self.0.len().max(other.0.len())];
        for (k, c) in self.0.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.0.iter().enumerate() {
            out[k] += c;
        }
        Poly(out).normalize()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).normalize()
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    /// Exact division by the linear factor `n s + nu`; `None` unless the
    /// remainder vanishes.
    pub fn div_linear(&self, n: u64, nu: u64) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let n = BigRational::from(BigInt::from(n));
        let nu = BigRational::from(BigInt::from(nu));
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - 1];
        for k in (1..rem.len()).rev() {
            let q = &rem[k] / &n;
            rem[k - 1] = &rem[k - 1] - &q * &nu;
            quot[k - 1] = q;
        }
        if rem[0].is_zero() {
            Some(Poly(quot).normalize())
        } else {
            None
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}")?;
                    }
                    if k == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rational function with a factored denominator: a polynomial numerator
/// over a multiset of linear factors `(N s + nu)`.
///
/// Reduced form: no remaining factor divides the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionQ {
    numerator: Poly,
    factors: BTreeMap<(u64, u64), u32>,
}

impl RationalFunctionQ {
    pub fn zero() -> RationalFunctionQ {
        RationalFunctionQ {
            numerator: Poly::zero(),
            factors: BTreeMap::new(),
        }
    }

    pub fn new(numerator: Poly, factors: BTreeMap<(u64, u64), u32>) -> RationalFunctionQ {
        RationalFunctionQ { numerator, factors }.reduced()
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    /// Remaining denominator factors `(N, nu) -> multiplicity`.
    pub fn denominator_factors(&self) -> &BTreeMap<(u64, u64), u32> {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn reduced(mut self) -> RationalFunctionQ {
        if self.numerator.is_zero() {
            self.factors.clear();
            return self;
        }
        let keys: Vec<(u64, u64)> = self.factors.keys().copied().collect();
        for key in keys {
            while self.factors.get(&key).is_some_and(|&m| m > 0) {
                match self.numerator.div_linear(key.0, key.1) {
                    Some(q) => {
                        self.numerator = q;
                        let m = self.factors.get_mut(&key).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.factors.remove(&key);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn denominator_degree(&self) -> usize {
        self.factors.values().map(|&m| m as usize).sum()
    }

    /// Multiset of denominator roots `-nu/N` of the reduced form.
    pub fn denominator_roots(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        for (&(n, nu), &mult) in &self.factors {
            let root = -BigRational::new(BigInt::from(nu), BigInt::from(n));
            for _ in 0..mult {
                out.push(root.clone());
            }
        }
        out.sort();
        out
    }

    /// Exact evaluation; `None` where a denominator factor vanishes.
    pub fn evaluate(&self, s: &BigRational) -> Option<BigRational> {
        let mut denom = BigRational::one();
        for (&(n, nu), &mult) in &self.factors {
            let v = Poly::linear(n, nu).eval(s);
            if v.is_zero() {
                return None;
            }
            for _ in 0..mult {
                denom *= &v;
            }
        }
        Some(self.numerator.eval(s) / denom)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / ", self.numerator)?;
        for (&(n, nu), &mult) in &self.factors {
            let factor = if n == 1 {
                format!("(s + {nu})")
            } else {
                format!("({n}s + {nu})")
            };
            if mult == 1 {
                write!(f, "{factor}")?;
            } else {
                write!(f, "{factor}^{mult}")?;
            }
        }
        Ok(())
    }
}

/// One pole of a reduced rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pole {
    /// Location, in lowest terms.
    pub s0: BigRational,
    pub order: u32,
    /// Leading Laurent coefficient `lim (s - s0)^order f(s)`.
    pub leading: BigRational,
}

/// Poles of a zeta function together with the candidate list `-nu_j/N_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleReport {
    pub poles: Vec<Pole>,
    pub candidates: Vec<BigRational>,
}

impl PoleReport {
    pub fn is_pole(&self, s0: &BigRational) -> bool {
        self.poles.iter().any(|p| &p.s0 == s0)
    }

    pub fn order_of(&self, s0: &BigRational) -> u32 {
        self.poles
            .iter()
            .find(|p| &p.s0 == s0)
            .map_or(0, |p| p.order)
    }
}

/// Candidate poles `-nu_j / N_j` over all divisors, deduplicated, sorted by
/// increasing absolute value then denominator.
pub fn candidate_poles(a: &Analysis) -> Vec<BigRational> {
    let nd = a.numerical();
    let mut out: Vec<BigRational> = nd
        .pairs()
        .map(|(_, nu, n)| -BigRational::new(BigInt::from(nu), BigInt::from(n)))
        .collect();
    out.sort_by(sort_key);
    out.dedup();
    out
}

fn sort_key(x: &BigRational, y: &BigRational) -> std::cmp::Ordering {
    x.abs()
        .cmp(&y.abs())
        .then_with(|| x.denom().cmp(y.denom()))
        .then_with(|| x.cmp(y))
}

/// Poles with orders and leading Laurent coefficients of a reduced rational
/// function; `candidates` is attached to the report unchanged.
pub fn poles(f: &RationalFunctionQ, candidates: Vec<BigRational>) -> PoleReport {
    let mut grouped: BTreeMap<BigRational, Vec<(u64, u64, u32)>> = BTreeMap::new();
    for (&(n, nu), &mult) in f.denominator_factors() {
        let root = -BigRational::new(BigInt::from(nu), BigInt::from(n));
        grouped.entry(root).or_default().push((n, nu, mult));
    }
    let mut out = Vec::new();
    for (s0, factors) in &grouped {
        let order: u32 = factors.iter().map(|&(_, _, m)| m).sum();
        // f = num / prod factors; each factor at s0 is N (s - s0), so the
        // leading coefficient divides by prod N^mult and the other factors
        // evaluated at s0.
        let mut denom = BigRational::one();
        for &(n, _, mult) in factors {
            for _ in 0..mult {
                denom *= BigRational::from(BigInt::from(n));
            }
        }
        for (&(n, nu), &mult) in f.denominator_factors() {
            let root = -BigRational::new(BigInt::from(nu), BigInt::from(n));
            if &root == s0 {
                continue;
            }
            let v = Poly::linear(n, nu).eval(s0);
            for _ in 0..mult {
                denom *= &v;
            }
        }
        out.push(Pole {
            s0: s0.clone(),
            order,
            leading: f.numerator().eval(s0) / denom,
        });
    }
    out.sort_by(|p, q| sort_key(&p.s0, &q.s0));
    PoleReport {
        poles: out,
        candidates,
    }
}

/// Convenience: pole report of a cluster's zeta function.
pub fn pole_report(a: &Analysis, f: &RationalFunctionQ) -> PoleReport {
    poles(f, candidate_poles(a))
}

fn assemble(
    a: &Analysis,
    table: &StratumTable,
    keep: impl Fn(&[usize]) -> bool,
) -> RationalFunctionQ {
    let nd = a.numerical();
    let entries: Vec<(&[usize], i64)> = table
        .iter()
        .filter(|(k, chi)| *chi != 0 && keep(k))
        .collect();
    let mut denom_indices: Vec<usize> = entries.iter().flat_map(|(k, _)| k.iter().copied()).collect();
    denom_indices.sort_unstable();
    denom_indices.dedup();
    // Integer arithmetic for the common-denominator numerator; rationals
    // only appear once reduction starts dividing factors out.
    let mut numerator = vec![BigInt::from(0)];
    for (key, chi) in &entries {
        let mut term = vec![BigInt::from(*chi)];
        for &t in &denom_indices {
            if !key.contains(&t) {
                let (n, nu) = (nd.n(t), nd.nu(t));
                let mut out = vec![BigInt::from(0); term.len() + 1];
                for (k, c) in term.iter().enumerate() {
                    out[k + 1] += c * n;
                    out[k] += c * nu;
                }
                term = out;
            }
        }
        if numerator.len() < term.len() {
            numerator.resize(term.len(), BigInt::from(0));
        }
        for (k, c) in term.into_iter().enumerate() {
            numerator[k] += c;
        }
    }
    let numerator = Poly(
        numerator
            .into_iter()
            .map(BigRational::from)
            .collect::<Vec<_>>(),
    )
    .normalize();
    let mut factors = BTreeMap::new();
    for &t in &denom_indices {
        *factors.entry((nd.n(t), nd.nu(t))).or_insert(0) += 1;
    }
    RationalFunctionQ::new(numerator, factors)
}

/// The local topological zeta function of the cluster, fully reduced.
pub fn z_top(a: &Analysis) -> RationalFunctionQ {
    z_top_r(a, 1)
}

/// The twist restricted to strata all of whose divisors have `N_i`
/// divisible by `r`; `r = 1` recovers the zeta function itself.
pub fn z_top_r(a: &Analysis, r: u64) -> RationalFunctionQ {
    assert!(r >= 1);
    let table = strata_table(a);
    z_top_r_with_table(a, &table, r)
}

/// As [`z_top_r`], reusing a precomputed stratum table.
pub fn z_top_r_with_table(a: &Analysis, table: &StratumTable, r: u64) -> RationalFunctionQ {
    let nd = a.numerical();
    assemble(a, table, |key| key.iter().all(|&i| nd.n(i).is_multiple_of(r)))
}

/// Independent evaluation of the defining sum at a sample point, term by
/// term with plain rational arithmetic; `None` at a candidate pole.
pub fn evaluate_sum(a: &Analysis, table: &StratumTable, r: u64, s: &BigRational) -> Option<BigRational> {
    let nd = a.numerical();
    let mut total = BigRational::zero();
    for (key, chi) in table.iter() {
        if chi == 0 || key.iter().any(|&i| !nd.n(i).is_multiple_of(r)) {
            continue;
        }
        let mut term = BigRational::from(BigInt::from(chi));
        for &i in key {
            let v = Poly::linear(nd.n(i), nd.nu(i)).eval(s);
            if v.is_zero() {
                return None;
            }
            term /= v;
        }
        total += term;
    }
    Some(total)
}

/// Result used by the acceptance suite: reduced roots as strings for
/// readable assertions.
pub fn root_strings(f: &RationalFunctionQ) -> Vec<String> {
    f.denominator_roots()
        .iter()
        .map(|r| r.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constellation::Analysis;
    use crate::fixtures;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn poly_div_linear() {
        // (2s + 3)(s + 1) = 2s^2 + 5s + 3
        let p = Poly::linear(2, 3).mul(&Poly::linear(1, 1));
        let q = p.div_linear(2, 3).unwrap();
        assert_eq!(q, Poly::linear(1, 1));
        assert!(p.div_linear(1, 2).is_none());
    }

    #[test]
    fn smooth_germ() {
        let a = Analysis::new(fixtures::single_point(1)).unwrap();
        let z = z_top(&a);
        assert_eq!(z.to_string(), "(1) / (s + 1)");
        assert_eq!(z.denominator_roots(), vec![rat(-1, 1)]);
    }

    #[test]
    fn quadratic_germ() {
        let a = Analysis::new(fixtures::single_point(2)).unwrap();
        let z = z_top(&a);
        assert_eq!(z.to_string(), "(s + 3) / (s + 1)(2s + 3)");
        let report = pole_report(&a, &z);
        assert_eq!(
            report.poles.iter().map(|p| (p.s0.clone(), p.order)).collect::<Vec<_>>(),
            vec![(rat(-1, 1), 1), (rat(-3, 2), 1)]
        );
    }

    #[test]
    fn twists_of_quadratic_germ() {
        let a = Analysis::new(fixtures::single_point(2)).unwrap();
        let z2 = z_top_r(&a, 2);
        assert_eq!(z2.to_string(), "(1) / (2s + 3)");
        let z5 = z_top_r(&a, 5);
        assert!(z5.is_zero());
        assert_eq!(z_top_r(&a, 1), z_top(&a));
    }

    #[test]
    fn five_point_candidate_not_pole() {
        let a = Analysis::new(fixtures::five_point()).unwrap();
        let z = z_top(&a);
        let report = pole_report(&a, &z);
        let minus_five_quarters = rat(-5, 4);
        assert!(report.candidates.contains(&minus_five_quarters));
        assert!(!report.is_pole(&minus_five_quarters));
    }

    #[test]
    fn nine_point_roots() {
        // The candidate -1/4 arises from two divisors (36,9) and (52,13) and
        // the candidate -25/103 from a non-Rees divisor; both cancel exactly
        // in the reduced form, leaving five simple poles.
        let a = Analysis::new(fixtures::nine_point()).unwrap();
        let z = z_top(&a);
        let mut expected = vec![
            rat(-3, 14),
            rat(-47, 192),
            rat(-43, 168),
            rat(-5, 19),
            rat(-1, 1),
        ];
        expected.sort();
        assert_eq!(z.denominator_roots(), expected);
        let report = pole_report(&a, &z);
        assert!(report.candidates.contains(&rat(-1, 4)));
        assert!(report.candidates.contains(&rat(-25, 103)));
        assert!(!report.is_pole(&rat(-1, 4)));
        assert!(!report.is_pole(&rat(-25, 103)));
        assert!(!report.is_pole(&rat(-15, 56)));
        assert!(!report.is_pole(&rat(-29, 112)));
        assert!(report.poles.iter().all(|p| p.order == 1));
    }

    #[test]
    fn reduction_agrees_with_term_sum() {
        for cl in [
            fixtures::five_point(),
            fixtures::nine_point(),
            fixtures::ideal_fixture_21(),
        ] {
            let a = Analysis::new(cl).unwrap();
            let table = strata_table(&a);
            let z = z_top(&a);
            for k in 1..=5i64 {
                let s = rat(k, 7);
                assert_eq!(z.evaluate(&s), evaluate_sum(&a, &table, 1, &s));
            }
        }
    }

    #[test]
    fn zero_function_has_no_poles() {
        let report = poles(&RationalFunctionQ::zero(), Vec::new());
        assert!(report.poles.is_empty());
    }

    #[test]
    fn proper_degree() {
        for cl in [fixtures::five_point(), fixtures::nine_point()] {
            let a = Analysis::new(cl).unwrap();
            let z = z_top(&a);
            assert!(z.numerator().degree().unwrap() < z.denominator_degree());
        }
    }
}
