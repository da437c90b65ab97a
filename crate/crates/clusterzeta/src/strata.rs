//! Euler characteristics of the strata of the resolution.
//!
//! Write `E_0` for the strict transform and `E_1, ..., E_r` for the
//! exceptional divisors of the resolution obtained by blowing up the
//! constellation.  For an index set `I`, the stratum `E_I` consists of the
//! points lying on exactly the divisors in `I`.  Only five shapes of `I` can
//! carry nonzero Euler characteristic:
//!
//! * `{i}` exceptional,
//! * `{0, i}`,
//! * `{i, j}` with `j -> i`,
//! * `{0, i, j}` with `j -> i`,
//! * `{i, j, k}` with `k -> i` and `k -> j`;
//!
//! every other stratum is empty or fibred in tori.  The closed formulas for
//! these five cases are implemented here verbatim, together with the
//! alternative decomposition `chi(E_i) = D - R + T` and the structural
//! classification of the sign of `chi(E_i)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constellation::{Analysis, Label, LabelSet};
use crate::error::{Error, Result};

/// Map from a sorted index set `I` to `chi(E_I)`, over the candidate shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumTable {
    entries: BTreeMap<Vec<usize>, i64>,
}

impl StratumTable {
    pub fn chi(&self, indices: &[usize]) -> i64 {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sum of `chi(E_I)` over all table entries containing `point`.
    ///
    /// This is the Euler characteristic of the full divisor `E_point`, a
    /// projective plane blown up in the points proximate to it.
    pub fn chi_sum_containing(&self, point: usize) -> i64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.contains(&point))
            .map(|(_, &v)| v)
            .sum()
    }
}

fn m(a: &Analysis, j: usize) -> i64 {
    a.multiplicity(j) as i64
}

/// `sum of m_k over k -> i and k ->> j`.
fn load(a: &Analysis, i: usize, j: usize) -> i64 {
    a.prox()
        .sources(i)
        .iter()
        .filter(|&&k| a.prox().is_linearly_proximate(k, j))
        .map(|&k| m(a, k))
        .sum()
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Children of `i` that share no proximity target with `i`.
fn detached_children(a: &Analysis, i: usize) -> i64 {
    a.constellation()
        .children(i)
        .filter(|&(_, k)| {
            !a.prox()
                .targets(i)
                .iter()
                .any(|&l| a.prox().is_proximate(k, l))
        })
        .count() as i64
}

/// `chi(E_I)` for `I = {i}`, `i` exceptional.
pub fn chi_single(a: &Analysis, i: usize) -> i64 {
    let px = a.prox();
    let mi = m(a, i);
    let mut chi = 3 + mi * (mi - 3);
    for &j in px.sources(i) {
        chi -= m(a, j) * (m(a, j) - 1);
        chi += m(a, j) - load(a, i, j);
    }
    for &j in px.targets(i) {
        chi += mi - load(a, j, i);
    }
    let b = px.targets(i).len() as i64;
    chi - detached_children(a, i) - 2 * b + binom2(b)
}

/// `chi(E_I)` for `I = {i, j}` with `j -> i`, both exceptional.
pub fn chi_pair_exc(a: &Analysis, i: usize, j: usize) -> Result<i64> {
    if !a.prox().is_proximate(j, i) {
        return Err(Error::NotProximate { from: j, to: i });
    }
    let px = a.prox();
    let c = a.constellation();
    // Children of j proximate to i split the line E_i cap E_j; those also
    // proximate to a third common target pinch it back.
    let further: Vec<usize> = c
        .children(j)
        .map(|(_, k)| k)
        .filter(|&k| px.is_proximate(k, i))
        .collect();
    let a_ij = further.len() as i64;
    let b_ij = px.targets(j).iter().filter(|&&k| k != i).count() as i64;
    let c_ij = further
        .iter()
        .filter(|&&k| {
            px.targets(j)
                .iter()
                .any(|&l| l != i && px.is_proximate(k, l))
        })
        .count() as i64;
    Ok(2 - (m(a, j) - load(a, i, j)) - a_ij - b_ij + c_ij)
}

/// `chi(E_I)` for `I = {0, i}`.
pub fn chi_strict_pair(a: &Analysis, i: usize) -> i64 {
    let px = a.prox();
    let mi = m(a, i);
    let mut chi = mi * (3 - mi);
    for &j in px.sources(i) {
        chi += m(a, j) * (m(a, j) - 1);
        chi -= m(a, j) - load(a, i, j);
    }
    for &j in px.targets(i) {
        chi -= mi - load(a, j, i);
    }
    chi
}

/// `chi(E_I)` for `I = {0, i, j}` with `j -> i`.
pub fn chi_strict_triple(a: &Analysis, i: usize, j: usize) -> Result<i64> {
    if !a.prox().is_proximate(j, i) {
        return Err(Error::NotProximate { from: j, to: i });
    }
    Ok(m(a, j) - load(a, i, j))
}

/// `chi(E_I)` for `I = {i, j, k}` with `k -> i` and `k -> j`.
pub fn chi_triple_exc(a: &Analysis, i: usize, j: usize, k: usize) -> Result<i64> {
    for t in [i, j] {
        if !a.prox().is_proximate(k, t) {
            return Err(Error::NotProximate { from: k, to: t });
        }
    }
    let blown = a
        .points()
        .filter(|&l| {
            a.prox().is_proximate(l, i)
                && a.prox().is_proximate(l, j)
                && a.prox().is_proximate(l, k)
        })
        .count() as i64;
    Ok(1 - blown)
}

/// Fills the full table of candidate strata.
pub fn strata_table(a: &Analysis) -> StratumTable {
    let mut entries = BTreeMap::new();
    for i in a.points() {
        entries.insert(vec![i], chi_single(a, i));
        entries.insert(vec![0, i], chi_strict_pair(a, i));
    }
    for j in a.points() {
        for &i in a.prox().targets(j) {
            entries.insert(vec![i, j], chi_pair_exc(a, i, j).unwrap());
            entries.insert(vec![0, i, j], chi_strict_triple(a, i, j).unwrap());
        }
        let targets: Vec<usize> = a.prox().targets(j).iter().copied().collect();
        for (x, &i1) in targets.iter().enumerate() {
            for &i2 in &targets[x + 1..] {
                entries.insert(vec![i1, i2, j], chi_triple_exc(a, i1, i2, j).unwrap());
            }
        }
    }
    StratumTable { entries }
}

/// One linear-proximity slack and its hatted value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSlack {
    pub pair: (Label, Label),
    pub r: i64,
    /// `r` if the third label does not appear below the point, else 0.
    pub hatted: i64,
}

/// The decomposition `chi(E_i) = D - R + T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drt {
    pub point: usize,
    pub d: i64,
    pub r: i64,
    pub t: i64,
    pub slacks: [PairSlack; 3],
}

impl Drt {
    pub fn chi(&self) -> i64 {
        self.d - self.r + self.t
    }
}

/// Computes `D`, `R` and `T` at a point.
pub fn drt(a: &Analysis, i: usize) -> Drt {
    let px = a.prox();
    let mi = m(a, i);
    let d = mi * mi
        - px.sources(i)
            .iter()
            .map(|&j| m(a, j) * m(a, j))
            .sum::<i64>();
    let below = px.labels_below(i);
    let mut slacks = Vec::with_capacity(3);
    for (x, y) in [
        (Label::ALL[0], Label::ALL[1]),
        (Label::ALL[0], Label::ALL[2]),
        (Label::ALL[1], Label::ALL[2]),
    ] {
        let r = mi
            - a.cluster().m_sum(i, x, y).unwrap() as i64
            - a.cluster().m_sum(i, y, x).unwrap() as i64;
        let hatted = if below.contains(Label::third(x, y)) {
            0
        } else {
            r
        };
        slacks.push(PairSlack {
            pair: (x, y),
            r,
            hatted,
        });
    }
    let r = slacks.iter().map(|s| s.hatted).sum();
    let b = px.targets(i).len() as i64;
    let detached = detached_children(a, i);
    // Only the point counts of the geometric configurations can occur.
    assert!(
        matches!(
            (b, detached),
            (0, 0..=3) | (1, 0..=1) | (2, 0) | (3, 0)
        ),
        "unexpected proximity/successor combination ({b}, {detached}) at point {i}"
    );
    let t = 3 - detached - 2 * b + binom2(b);
    Drt {
        point: i,
        d,
        r,
        t,
        slacks: [slacks[0], slacks[1], slacks[2]],
    }
}

/// Sign of `chi(E_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Structural configurations forcing `chi(E_i) < 0` (`C1`-`C3`) or
/// `chi(E_i) = 0` (`C4`-`C11`), matched up to permutation of the labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum Pattern {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8A,
    C8B,
    C9A,
    C9B,
    C10,
    C11A,
    C11B,
}

impl Pattern {
    pub fn is_negative(self) -> bool {
        matches!(self, Pattern::C1 | Pattern::C2 | Pattern::C3)
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::C1 => "C1",
            Pattern::C2 => "C2",
            Pattern::C3 => "C3",
            Pattern::C4 => "C4",
            Pattern::C5 => "C5",
            Pattern::C6 => "C6",
            Pattern::C7 => "C7",
            Pattern::C8A => "C8A",
            Pattern::C8B => "C8B",
            Pattern::C9A => "C9A",
            Pattern::C9B => "C9B",
            Pattern::C10 => "C10",
            Pattern::C11A => "C11A",
            Pattern::C11B => "C11B",
        }
    }
}

/// Sign of `chi(E_i)` together with every matched pattern.
///
/// The sign always comes from the stratum formula; the patterns are
/// independent structural matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignClassification {
    pub point: usize,
    pub chi: i64,
    pub sign: Sign,
    pub patterns: Vec<Pattern>,
}

/// The single child of equal multiplicity, if any.
fn equal_child(a: &Analysis, i: usize) -> Option<Label> {
    a.constellation()
        .children(i)
        .find(|&(_, c)| a.multiplicity(c) == a.multiplicity(i))
        .map(|(l, _)| l)
}

fn labels_equal(set: LabelSet, labels: &[Label]) -> bool {
    set.len() == labels.len() && labels.iter().all(|&l| set.contains(l))
}

/// Walks `start(via^t)` while multiplicities stay 1; returns the number of
/// existing points on the ray (including `start`) or `None` when a
/// multiplicity exceeds 1.
fn unit_ray(a: &Analysis, start: usize, via: Label) -> Option<u64> {
    let mut count = 0;
    let mut cur = Some(start);
    while let Some(p) = cur {
        if a.multiplicity(p) != 1 {
            return None;
        }
        count += 1;
        cur = a.constellation().child(p, via);
    }
    Some(count)
}

fn match_patterns(a: &Analysis, i: usize) -> Vec<Pattern> {
    let c = a.constellation();
    let px = a.prox();
    let mi = a.multiplicity(i);
    let below = px.labels_below(i);
    let children: Vec<(Label, usize)> = c.children(i).collect();
    let mut out = Vec::new();

    // Terminal equal-multiplicity successor: the configuration in E_i is a
    // pencil of lines through one point.
    if let Some(alpha) = equal_child(a, i) {
        if below.is_empty() {
            if mi >= 3 {
                out.push(Pattern::C1);
            } else if mi == 2 {
                out.push(Pattern::C5);
            }
        } else if below.contains(alpha) {
            out.push(Pattern::C7);
        } else if below.len() == 1 {
            out.push(if mi == 1 { Pattern::C6 } else { Pattern::C2 });
        } else {
            out.push(Pattern::C3);
        }
    }

    // Free point of multiplicity 1 on one or two divisors.
    if children.is_empty() && mi == 1 && (1..=2).contains(&px.targets(i).len()) {
        out.push(Pattern::C4);
    }

    // Double branch splitting the multiplicity into two Euclidean chains.
    if let [(beta, u), (gamma, w)] = children.as_slice() {
        let (beta, u, gamma, w) = (*beta, *u, *gamma, *w);
        if a.multiplicity(u) + a.multiplicity(w) == mi
            && branch_is_euclidean(a, i, u, beta)
            && branch_is_euclidean(a, i, w, gamma)
        {
            if labels_equal(below, &[beta]) || labels_equal(below, &[gamma]) {
                out.push(Pattern::C8A);
            } else if below.len() >= 2 {
                out.push(Pattern::C8B);
            }
        }
    }

    // Staircase: successor of multiplicity m_i - 1 followed by a unit chain.
    if let [(alpha, p)] = children.as_slice() {
        let (alpha, p) = (*alpha, *p);
        if mi >= 2 && a.multiplicity(p) == mi - 1 {
            let visible: Vec<(Label, usize)> =
                c.children(p).filter(|&(l, _)| l != alpha).collect();
            match visible.as_slice() {
                [(b, x)] => {
                    let (b, x) = (*b, *x);
                    let cc = Label::third(alpha, b);
                    if unit_ray(a, x, cc) == Some(mi - 1) {
                        if labels_equal(below, &[cc]) {
                            out.push(Pattern::C9A);
                        } else if labels_equal(below, &[b, cc]) {
                            out.push(Pattern::C9B);
                        }
                    }
                }
                [(b, x), (cc, y)] => {
                    let (b, x, cc, y) = (*b, *x, *cc, *y);
                    let count = unit_ray(a, x, cc).unwrap_or(0) + unit_ray(a, y, b).unwrap_or(0);
                    if count == mi - 1 && labels_equal(below, &[b, cc]) {
                        out.push(Pattern::C10);
                    }
                }
                _ => {}
            }
        }
    }

    // Unit branch next to a nearly full successor carrying a unit hook.
    if children.len() == 2 {
        for (sel, other) in [(0, 1), (1, 0)] {
            let (a_lab, u) = children[sel];
            let (b_lab, p) = children[other];
            if a.multiplicity(u) != 1 || mi < 2 || a.multiplicity(p) != mi - 1 {
                continue;
            }
            let cc = Label::third(a_lab, b_lab);
            if !matches!(unit_ray(a, u, cc), Some(k) if k <= mi) {
                continue;
            }
            let hook = match c.child(p, cc) {
                Some(x) => unit_ray(a, x, a_lab).unwrap_or(0),
                None => 0,
            };
            if hook != mi - 1 {
                continue;
            }
            if labels_equal(below, &[a_lab]) {
                out.push(Pattern::C11A);
            } else if labels_equal(below, &[a_lab, cc]) {
                out.push(Pattern::C11B);
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

/// Chain `[m_i; branch]` entered from `point` via `first`, tested for the
/// Euclidean shape on its visible part.
fn branch_is_euclidean(a: &Analysis, point: usize, start: usize, first: Label) -> bool {
    match crate::constellation::visible_chain(a.cluster(), start, first, first) {
        Some(chain) => crate::constellation::is_euclidean_chain(a.multiplicity(point), &chain),
        None => false,
    }
}

/// Classifies the sign of `chi(E_i)` and reports all matched patterns.
pub fn classify_sign(a: &Analysis, i: usize) -> SignClassification {
    let chi = chi_single(a, i);
    let sign = match chi.cmp(&0) {
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => Sign::Zero,
        std::cmp::Ordering::Greater => Sign::Positive,
    };
    SignClassification {
        point: i,
        chi,
        sign,
        patterns: match_patterns(a, i),
    }
}

/// True iff every label pair `{a, b}` has at least three points on the rays
/// `Q_i(a, b^t)` and `Q_i(b, a^t)`; this forces `chi(E_i) > 0`.
pub fn lemma_finite_predicate(a: &Analysis, i: usize) -> bool {
    let c = a.constellation();
    let ray_count = |start: Label, via: Label| -> usize {
        let mut n = 0;
        let mut cur = c.child(i, start);
        while let Some(p) = cur {
            n += 1;
            cur = c.child(p, via);
        }
        n
    };
    [
        (Label::ALL[0], Label::ALL[1]),
        (Label::ALL[0], Label::ALL[2]),
        (Label::ALL[1], Label::ALL[2]),
    ]
    .into_iter()
    .all(|(x, y)| ray_count(x, y) + ray_count(y, x) >= 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constellation::Analysis;
    use crate::fixtures;

    fn analysis(cl: crate::constellation::Cluster) -> Analysis {
        Analysis::new(cl).unwrap()
    }

    #[test]
    fn chi_single_examples() {
        let a = analysis(fixtures::five_point());
        assert_eq!(chi_single(&a, 1), 2);
        assert_eq!(chi_single(&a, 2), 1);
        assert_eq!(chi_single(&a, 3), 0);
        assert_eq!(chi_single(&a, 4), 0);
        assert_eq!(chi_single(&a, 5), 0);
        let a = analysis(fixtures::single_point(2));
        assert_eq!(chi_single(&a, 1), 1);
        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        assert_eq!(chi_single(&a, 1), -1);
        assert_eq!(chi_single(&a, 2), 4);
    }

    #[test]
    fn chi_pair_examples() {
        let a = analysis(fixtures::five_point());
        assert_eq!(chi_pair_exc(&a, 1, 2).unwrap(), 0);
        assert_eq!(chi_pair_exc(&a, 1, 3).unwrap(), 1);
        assert!(chi_pair_exc(&a, 1, 4).is_err());
        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        assert_eq!(chi_pair_exc(&a, 1, 2).unwrap(), -1);
    }

    #[test]
    fn chi_strict_examples() {
        let a = analysis(fixtures::single_point(2));
        assert_eq!(chi_strict_pair(&a, 1), 2);
        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        assert_eq!(chi_strict_pair(&a, 1), 3);
        assert_eq!(chi_strict_pair(&a, 2), -3);
        let a = analysis(fixtures::five_point());
        assert_eq!(chi_strict_triple(&a, 1, 2).unwrap(), 1);
        assert_eq!(chi_strict_triple(&a, 2, 4).unwrap(), 1);
        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        assert_eq!(chi_strict_triple(&a, 1, 2).unwrap(), 3);
    }

    #[test]
    fn chi_triple_examples() {
        let a = analysis(fixtures::five_point());
        assert_eq!(chi_triple_exc(&a, 1, 2, 5).unwrap(), 1);
        let a = analysis(fixtures::nine_point());
        let nd = a.numerical();
        let find = |n: u64| (1..=9).find(|&j| nd.n(j) == n).unwrap();
        let (i, j, k) = (find(36), find(52), find(103));
        assert_eq!(chi_triple_exc(&a, i, j, k).unwrap(), 0);
    }

    #[test]
    fn tables_for_small_fixtures() {
        let a = analysis(fixtures::single_point(2));
        let t = strata_table(&a);
        assert_eq!(t.chi(&[1]), 1);
        assert_eq!(t.chi(&[0, 1]), 2);
        assert_eq!(t.len(), 2);

        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        let t = strata_table(&a);
        assert_eq!(t.chi(&[1]), -1);
        assert_eq!(t.chi(&[2]), 4);
        assert_eq!(t.chi(&[0, 1]), 3);
        assert_eq!(t.chi(&[0, 2]), -3);
        assert_eq!(t.chi(&[1, 2]), -1);
        assert_eq!(t.chi(&[0, 1, 2]), 3);

        let a = analysis(fixtures::five_point());
        let t = strata_table(&a);
        assert_eq!(t.chi(&[3]), 0);
        assert_eq!(t.chi(&[0, 3]), 1);
        assert_eq!(t.chi(&[1, 3]), 1);
        assert_eq!(t.chi(&[0, 1, 3]), 1);
    }

    #[test]
    fn partition_identity_on_fixtures() {
        for cl in [
            fixtures::five_point(),
            fixtures::nine_point(),
            fixtures::ideal_fixture_21(),
            fixtures::ideal_fixture_28(),
            fixtures::euclidean_chain(),
            fixtures::bi_euclidean(),
        ] {
            let a = analysis(cl);
            let t = strata_table(&a);
            for i in a.points() {
                assert_eq!(
                    t.chi_sum_containing(i),
                    3 + a.prox().sources(i).len() as i64,
                    "point {i}"
                );
            }
        }
    }

    #[test]
    fn drt_examples() {
        let a = analysis(fixtures::five_point());
        let d1 = drt(&a, 1);
        assert_eq!((d1.d, d1.r, d1.t), (3, 2, 1));
        assert_eq!(d1.chi(), 2);
        let d2 = drt(&a, 2);
        assert_eq!((d2.d, d2.r, d2.t), (2, 1, 0));
        assert_eq!(d2.chi(), 1);
        let a = analysis(fixtures::chain(3, &[(1, 3)]));
        let d1 = drt(&a, 1);
        assert_eq!((d1.d, d1.r, d1.t), (0, 3, 2));
        assert_eq!(d1.chi(), -1);
    }

    #[test]
    fn dual_path_on_fixtures() {
        for cl in [
            fixtures::five_point(),
            fixtures::nine_point(),
            fixtures::ideal_fixture_21(),
            fixtures::ideal_fixture_28(),
            fixtures::euclidean_chain(),
            fixtures::bi_euclidean(),
        ] {
            let a = analysis(cl);
            for i in a.points() {
                assert_eq!(chi_single(&a, i), drt(&a, i).chi(), "point {i}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        let a = analysis(fixtures::chain(4, &[(1, 4)]));
        let c = classify_sign(&a, 1);
        assert_eq!(c.sign, Sign::Negative);
        assert_eq!(c.patterns, vec![Pattern::C1]);

        let a = analysis(fixtures::single_point(2));
        let c = classify_sign(&a, 1);
        assert_eq!(c.sign, Sign::Positive);
        assert!(c.patterns.is_empty());

        let a = analysis(fixtures::five_point());
        let c = classify_sign(&a, 3);
        assert_eq!(c.sign, Sign::Zero);
        assert_eq!(c.patterns, vec![Pattern::C4]);

        // Chain 6 -3- 3 -1- 2 -2- 1 -3- 1: the point of multiplicity 2 is a
        // staircase zero.
        let a = analysis(fixtures::ideal_fixture_28());
        let c = classify_sign(&a, 3);
        assert_eq!(c.sign, Sign::Zero);
        assert!(c.patterns.contains(&Pattern::C9B), "{:?}", c.patterns);

        // The multiplicity-3 point of the 21-generator cluster is a
        // double-branch zero.
        let a = analysis(fixtures::ideal_fixture_21());
        let c = classify_sign(&a, 2);
        assert_eq!(c.sign, Sign::Zero);
        assert!(
            c.patterns.contains(&Pattern::C8A) || c.patterns.contains(&Pattern::C8B),
            "{:?}",
            c.patterns
        );
    }

    #[test]
    fn lemma_finite_examples() {
        let a = analysis(fixtures::single_point(3));
        assert!(!lemma_finite_predicate(&a, 1));
        let a = analysis(fixtures::five_point());
        assert!(!lemma_finite_predicate(&a, 1));
    }

    #[test]
    fn exhaustive_small_cluster_classification() {
        // Every idealistic cluster on at most 4 points with multiplicities
        // up to 6: the sign of chi must agree with pattern membership and
        // with D - R + T, and the partition identity must hold.
        let mut trees: Vec<Vec<(usize, usize, u8)>> = vec![vec![]];
        for _ in 2..=4 {
            let mut next = Vec::new();
            for t in &trees {
                let j = t.len() + 2;
                for p in 1..j {
                    for l in 1..=3u8 {
                        if t.iter().any(|&(_, tp, tl)| tp == p && tl == l) {
                            continue;
                        }
                        let mut t2 = t.clone();
                        t2.push((j, p, l));
                        next.push(t2);
                    }
                }
            }
            trees.extend(next.clone());
            trees = trees
                .into_iter()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
        }
        let mut checked = 0usize;
        for t in &trees {
            let r = t.len() + 1;
            let edges: Vec<(usize, usize, crate::constellation::Label)> = t
                .iter()
                .map(|&(c, p, l)| (c, p, crate::constellation::Label::new(l).unwrap()))
                .collect();
            let cons = crate::constellation::Constellation::build(&edges, 1).unwrap();
            let mut mults = vec![1u64; r];
            loop {
                let cl =
                    crate::constellation::Cluster::new(cons.clone(), mults.clone()).unwrap();
                if cl.validate_idealistic().idealistic {
                    let a = Analysis::new(cl).unwrap();
                    let table = strata_table(&a);
                    for i in a.points() {
                        let c = classify_sign(&a, i);
                        let has_negative = c.patterns.iter().any(|p| p.is_negative());
                        let has_zero = c.patterns.iter().any(|p| !p.is_negative());
                        assert_eq!(
                            c.sign == Sign::Negative,
                            has_negative,
                            "negative patterns at point {i} of {t:?} m={mults:?}: {c:?}"
                        );
                        assert_eq!(
                            c.sign == Sign::Zero,
                            has_zero,
                            "zero patterns at point {i} of {t:?} m={mults:?}: {c:?}"
                        );
                        assert_eq!(c.chi, drt(&a, i).chi(), "{t:?} m={mults:?}");
                        assert_eq!(
                            table.chi_sum_containing(i),
                            3 + a.prox().sources(i).len() as i64,
                            "partition at {i} of {t:?} m={mults:?}"
                        );
                        if lemma_finite_predicate(&a, i) {
                            assert!(c.chi > 0, "{t:?} m={mults:?}");
                        }
                    }
                    checked += 1;
                }
                // next multiplicity vector
                let mut k = 0;
                loop {
                    if k == r {
                        break;
                    }
                    if mults[k] < 6 {
                        mults[k] += 1;
                        break;
                    }
                    mults[k] = 1;
                    k += 1;
                }
                if k == r {
                    break;
                }
            }
        }
        assert!(checked > 5000, "checked only {checked} clusters");
    }
}
