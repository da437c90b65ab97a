//! Toric constellations and clusters in dimension 3.
//!
//! A constellation is a finite sequence of infinitely near points obtained by
//! successive point blowups of the origin of `C^3`, each point a
//! 0-dimensional torus orbit.  Such constellations are in bijection with
//! rooted trees whose edges carry labels in `{1, 2, 3}`, distinct among
//! siblings: the label selects the affine chart (equivalently, the cone of
//! the star subdivision) in which the next point is created.
//!
//! A cluster attaches a multiplicity to every point.  This module derives
//! the combinatorial data every other module consumes:
//!
//! * cones and valuation vectors `w_j` via star subdivision,
//! * the proximity relation `j -> i` (point `Q_j` lies on the strict
//!   transform of `E_i`; toric criterion: `w_i` generates the cone of `Q_j`),
//! * linear proximity `j ->> i` (the path word from `Q_i` to `Q_j` is
//!   `a b^t` with `a != b`),
//! * numerical data `(nu_j, N_j)` of the induced embedded resolution,
//! * the linear proximity inequalities characterising idealistic clusters,
//! * Rees flags `m_i^2 > sum of m_j^2 over j -> i`,
//! * recognisers for the Euclidean / bi-Euclidean chain families and switch
//!   points,
//! * a seeded random generator producing idealistic clusters.
//!
//! Everything is immutable after construction; operations are pure.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Chart label in `{1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u8);

impl Label {
    pub fn new(value: u8) -> Result<Label> {
        if (1..=3).contains(&value) {
            Ok(Label(value))
        } else {
            Err(Error::SyntaxError {
                line: 0,
                message: format!("label {value} not in 1..=3"),
            })
        }
    }

    pub const ALL: [Label; 3] = [Label(1), Label(2), Label(3)];

    pub fn value(self) -> u8 {
        self.0
    }

    /// Slot index 0..=2 used for cone generators and child tables.
    pub(crate) fn slot(self) -> usize {
        (self.0 - 1) as usize
    }

    /// The two labels different from `self`.
    pub fn others(self) -> [Label; 2] {
        match self.0 {
            1 => [Label(2), Label(3)],
            2 => [Label(1), Label(3)],
            _ => [Label(1), Label(2)],
        }
    }

    /// The label different from both arguments; `a` and `b` must differ.
    pub fn third(a: Label, b: Label) -> Label {
        debug_assert_ne!(a, b);
        Label((1 + 2 + 3) - a.0 - b.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Subset of `{1, 2, 3}` as a bitmask; used for "labels below a point".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LabelSet(u8);

impl LabelSet {
    pub fn empty() -> LabelSet {
        LabelSet(0)
    }

    pub fn insert(&mut self, label: Label) {
        self.0 |= 1 << label.slot();
    }

    pub fn contains(self, label: Label) -> bool {
        self.0 & (1 << label.slot()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Label> {
        Label::ALL.into_iter().filter(move |l| self.contains(*l))
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<T: IntoIterator<Item = Label>>(iter: T) -> Self {
        let mut s = LabelSet::empty();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

#[derive(Debug, Clone)]
struct Node {
    parent: Option<usize>,
    label: Option<Label>,
    children: [Option<usize>; 3],
}

/// Labeled 3-nary tree encoding a toric constellation.
///
/// Points are numbered `1..=len()` in creation order; the root is point 1.
/// Every non-root point has `parent < index`.
#[derive(Debug, Clone)]
pub struct Constellation {
    nodes: Vec<Node>,
}

impl Constellation {
    /// Builds a constellation from `(child, parent, label)` edges.
    ///
    /// The ids `1..=edges.len() + 1` must each occur exactly once as a child
    /// or as the root.
    pub fn build(edges: &[(usize, usize, Label)], root: usize) -> Result<Constellation> {
        let r = edges.len() + 1;
        let check = |id: usize| -> Result<usize> {
            if id == 0 || id > r {
                Err(Error::Disconnected { point: id })
            } else {
                Ok(id)
            }
        };
        check(root)?;
        let mut nodes: Vec<Option<Node>> = vec![None; r];
        nodes[root - 1] = Some(Node {
            parent: None,
            label: None,
            children: [None; 3],
        });
        for &(child, parent, label) in edges {
            check(child)?;
            check(parent)?;
            if parent >= child {
                return Err(Error::ParentAfterChild { child, parent });
            }
            if nodes[child - 1].is_some() {
                // The id already has a parent (or is the root): some other id
                // must then be parentless.
                let second = (1..=r)
                    .find(|id| !edges.iter().any(|e| e.0 == *id) && *id != root)
                    .unwrap_or(child);
                return Err(Error::MultipleRoots {
                    first: root,
                    second,
                });
            }
            nodes[child - 1] = Some(Node {
                parent: Some(parent),
                label: Some(label),
                children: [None; 3],
            });
        }
        if let Some(missing) = nodes.iter().position(|n| n.is_none()) {
            return Err(Error::Disconnected { point: missing + 1 });
        }
        let mut nodes: Vec<Node> = nodes.into_iter().map(Option::unwrap).collect();
        // Parents precede children, so one ascending pass wires the child
        // tables and catches sibling label clashes.
        for child in 1..=r {
            let (parent, label) = match &nodes[child - 1] {
                Node {
                    parent: Some(p),
                    label: Some(l),
                    ..
                } => (*p, *l),
                _ => continue,
            };
            let slot = &mut nodes[parent - 1].children[label.slot()];
            if slot.is_some() {
                return Err(Error::DuplicateSiblingLabel { parent, label });
            }
            *slot = Some(child);
        }
        Ok(Constellation { nodes })
    }

    /// Single-point constellation.
    pub fn point() -> Constellation {
        Constellation::build(&[], 1).unwrap()
    }

    /// Number of points `r`; a constellation always has at least its root.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Point ids in creation order.
    pub fn points(&self) -> impl Iterator<Item = usize> {
        1..=self.nodes.len()
    }

    pub fn parent(&self, point: usize) -> Option<usize> {
        self.nodes[point - 1].parent
    }

    /// Label of the edge from the parent into `point` (`None` for the root).
    pub fn edge_label(&self, point: usize) -> Option<Label> {
        self.nodes[point - 1].label
    }

    pub fn child(&self, point: usize, label: Label) -> Option<usize> {
        self.nodes[point - 1].children[label.slot()]
    }

    pub fn children(&self, point: usize) -> impl Iterator<Item = (Label, usize)> + '_ {
        let node = &self.nodes[point - 1];
        Label::ALL
            .into_iter()
            .filter_map(move |l| node.children[l.slot()].map(|c| (l, c)))
    }

    /// Terminal point of the chain starting at `point` coded by `word`,
    /// if every step exists.
    pub fn chain_point(&self, point: usize, word: &[Label]) -> Option<usize> {
        let mut cur = point;
        for &l in word {
            cur = self.child(cur, l)?;
        }
        Some(cur)
    }

    /// Edge labels on the path from the root to `point`.
    pub fn path_labels(&self, point: usize) -> Vec<Label> {
        let mut labels = Vec::new();
        let mut cur = point;
        while let Some(p) = self.parent(cur) {
            labels.push(self.edge_label(cur).unwrap());
            cur = p;
        }
        labels.reverse();
        labels
    }
}

/// Constellation plus one multiplicity per point.
#[derive(Debug, Clone)]
pub struct Cluster {
    constellation: Constellation,
    multiplicities: Vec<u64>,
}

/// Slack of one linear proximity inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlackEntry {
    pub point: usize,
    pub pair: (Label, Label),
    /// `m_i - M(i, a, b) - M(i, b, a)`; idealistic means every slack >= 0.
    pub slack: i64,
}

/// Result of checking all linear proximity inequalities.
#[derive(Debug, Clone)]
pub struct IdealisticReport {
    pub entries: Vec<SlackEntry>,
    pub idealistic: bool,
}

impl IdealisticReport {
    pub fn first_violation(&self) -> Option<&SlackEntry> {
        self.entries.iter().find(|e| e.slack < 0)
    }
}

impl Cluster {
    pub fn new(constellation: Constellation, multiplicities: Vec<u64>) -> Result<Cluster> {
        if multiplicities.len() != constellation.len() {
            return Err(Error::MultiplicityCount {
                expected: constellation.len(),
                got: multiplicities.len(),
            });
        }
        Ok(Cluster {
            constellation,
            multiplicities,
        })
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.constellation.len()
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        self.constellation.points()
    }

    pub fn multiplicity(&self, point: usize) -> u64 {
        self.multiplicities[point - 1]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// Errors unless every multiplicity is >= 1.
    pub fn require_positive(&self) -> Result<()> {
        match self.points().find(|&j| self.multiplicity(j) == 0) {
            Some(point) => Err(Error::NonPositiveMultiplicity { point }),
            None => Ok(()),
        }
    }

    /// `M(i, a, b)`: sum of multiplicities over the existing points
    /// `Q_i(a, b^t)`, `t >= 0`.
    pub fn m_sum(&self, point: usize, a: Label, b: Label) -> Result<u64> {
        if a == b {
            return Err(Error::EqualLabels);
        }
        let mut total = 0u64;
        let mut cur = self.constellation.child(point, a);
        while let Some(p) = cur {
            total += self.multiplicity(p);
            cur = self.constellation.child(p, b);
        }
        Ok(total)
    }

    /// Evaluates every linear proximity inequality
    /// `M(i, a, b) + M(i, b, a) <= m_i`.
    pub fn validate_idealistic(&self) -> IdealisticReport {
        let mut entries = Vec::new();
        for i in self.points() {
            for (a, b) in [
                (Label(1), Label(2)),
                (Label(1), Label(3)),
                (Label(2), Label(3)),
            ] {
                let used = self.m_sum(i, a, b).unwrap() + self.m_sum(i, b, a).unwrap();
                entries.push(SlackEntry {
                    point: i,
                    pair: (a, b),
                    slack: self.multiplicity(i) as i64 - used as i64,
                });
            }
        }
        let idealistic = entries.iter().all(|e| e.slack >= 0);
        IdealisticReport {
            entries,
            idealistic,
        }
    }

    /// True iff `point` is a switch point: `Q = P(a)` and some child `Q(b)`
    /// with `b != a` exists.
    pub fn is_switch_point(&self, point: usize) -> Result<bool> {
        let a = self
            .constellation
            .edge_label(point)
            .ok_or(Error::RootHasNoSwitchStatus)?;
        Ok(self
            .constellation
            .children(point)
            .any(|(label, _)| label != a))
    }
}

/// Generator of a 3-dimensional cone of the subdivided fan: either one of the
/// standard basis rays or the valuation vector of an already blown-up point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeGenerator {
    Axis(usize),
    Exceptional(usize),
}

/// Cone of the fan in which a point sits, tracked by generator provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cone {
    pub generators: [ConeGenerator; 3],
}

/// Derived incidence data of a constellation.
#[derive(Debug, Clone)]
pub struct ProximityData {
    cones: Vec<Cone>,
    w: Vec<[i64; 3]>,
    prox_targets: Vec<BTreeSet<usize>>,
    prox_sources: Vec<BTreeSet<usize>>,
    lin_targets: Vec<BTreeSet<usize>>,
    lin_sources: Vec<BTreeSet<usize>>,
    levels: Vec<usize>,
    labels_below: Vec<LabelSet>,
}

/// Computes cones, valuation vectors and the proximity relations.
///
/// The star subdivision rule: the child created with label `a` inherits the
/// parent cone with the generator in slot `a` replaced by the parent's
/// valuation vector.  `Q_j` is proximate to `Q_i` exactly when `w_i`
/// generates the cone of `Q_j`.
pub fn derive_proximity(c: &Constellation) -> ProximityData {
    let r = c.len();
    let mut cones: Vec<Cone> = Vec::with_capacity(r);
    let mut w: Vec<[i64; 3]> = Vec::with_capacity(r);
    let mut levels = Vec::with_capacity(r);
    let mut labels_below = Vec::with_capacity(r);
    for j in c.points() {
        let cone = match c.parent(j) {
            None => Cone {
                generators: [
                    ConeGenerator::Axis(0),
                    ConeGenerator::Axis(1),
                    ConeGenerator::Axis(2),
                ],
            },
            Some(p) => {
                let label = c.edge_label(j).unwrap();
                let mut g = cones[p - 1].generators;
                g[label.slot()] = ConeGenerator::Exceptional(p);
                Cone { generators: g }
            }
        };
        let vec_of = |g: ConeGenerator| -> [i64; 3] {
            match g {
                ConeGenerator::Axis(k) => {
                    let mut e = [0; 3];
                    e[k] = 1;
                    e
                }
                ConeGenerator::Exceptional(i) => w[i - 1],
            }
        };
        let mut wj = [0i64; 3];
        for g in cone.generators {
            let v = vec_of(g);
            for k in 0..3 {
                wj[k] += v[k];
            }
        }
        debug_assert!(wj.iter().all(|&x| x >= 1));
        match c.parent(j) {
            None => {
                levels.push(0);
                labels_below.push(LabelSet::empty());
            }
            Some(p) => {
                levels.push(levels[p - 1] + 1);
                let mut below = labels_below[p - 1];
                below.insert(c.edge_label(j).unwrap());
                labels_below.push(below);
            }
        }
        cones.push(cone);
        w.push(wj);
    }

    let mut prox_targets = vec![BTreeSet::new(); r];
    let mut prox_sources = vec![BTreeSet::new(); r];
    for j in c.points() {
        for g in cones[j - 1].generators {
            if let ConeGenerator::Exceptional(i) = g {
                prox_targets[j - 1].insert(i);
                prox_sources[i - 1].insert(j);
            }
        }
    }

    let mut lin_targets = vec![BTreeSet::new(); r];
    let mut lin_sources = vec![BTreeSet::new(); r];
    for i in c.points() {
        for a in Label::ALL {
            for b in a.others() {
                let mut cur = c.child(i, a);
                while let Some(j) = cur {
                    lin_targets[j - 1].insert(i);
                    lin_sources[i - 1].insert(j);
                    cur = c.child(j, b);
                }
            }
        }
    }

    ProximityData {
        cones,
        w,
        prox_targets,
        prox_sources,
        lin_targets,
        lin_sources,
        levels,
        labels_below,
    }
}

impl ProximityData {
    pub fn cone(&self, point: usize) -> &Cone {
        &self.cones[point - 1]
    }

    /// Integer generator vectors of the cone of `point`.
    pub fn cone_vectors(&self, point: usize) -> [[i64; 3]; 3] {
        let vec_of = |g: ConeGenerator| match g {
            ConeGenerator::Axis(k) => {
                let mut e = [0; 3];
                e[k] = 1;
                e
            }
            ConeGenerator::Exceptional(i) => self.w[i - 1],
        };
        self.cones[point - 1].generators.map(vec_of)
    }

    /// Valuation vector `w_j`.
    pub fn w(&self, point: usize) -> [i64; 3] {
        self.w[point - 1]
    }

    /// True iff `j -> i` (`Q_j` lies on the strict transform of `E_i`).
    pub fn is_proximate(&self, j: usize, i: usize) -> bool {
        self.prox_targets[j - 1].contains(&i)
    }

    /// Points `i` with `j -> i`.
    pub fn targets(&self, j: usize) -> &BTreeSet<usize> {
        &self.prox_targets[j - 1]
    }

    /// Points `j` with `j -> i`.
    pub fn sources(&self, i: usize) -> &BTreeSet<usize> {
        &self.prox_sources[i - 1]
    }

    /// True iff `j ->> i` (linear proximity).
    pub fn is_linearly_proximate(&self, j: usize, i: usize) -> bool {
        self.lin_targets[j - 1].contains(&i)
    }

    pub fn lin_targets(&self, j: usize) -> &BTreeSet<usize> {
        &self.lin_targets[j - 1]
    }

    pub fn lin_sources(&self, i: usize) -> &BTreeSet<usize> {
        &self.lin_sources[i - 1]
    }

    pub fn level(&self, point: usize) -> usize {
        self.levels[point - 1]
    }

    /// Labels appearing on the path from the root to `point`.
    pub fn labels_below(&self, point: usize) -> LabelSet {
        self.labels_below[point - 1]
    }
}

/// Numerical data `(nu_j, N_j)` of the divisors `E_0, ..., E_r`.
///
/// Index 0 is the strict transform with `(nu, N) = (1, 1)`.  For exceptional
/// divisors, `N_j = m_j + sum of N_i over j -> i` and
/// `nu_j = 3 + sum of (nu_i - 1) over j -> i`, which equals the 1-norm of the
/// valuation vector `w_j`.
#[derive(Debug, Clone)]
pub struct NumericalData {
    nu: Vec<u64>,
    n: Vec<u64>,
}

impl NumericalData {
    pub fn nu(&self, divisor: usize) -> u64 {
        self.nu[divisor]
    }

    pub fn n(&self, divisor: usize) -> u64 {
        self.n[divisor]
    }

    /// Number of exceptional divisors `r`.
    pub fn exceptional_count(&self) -> usize {
        self.n.len() - 1
    }

    /// All `(nu_j, N_j)` pairs indexed by divisor, starting at the strict
    /// transform.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u64, u64)> + '_ {
        (0..self.n.len()).map(move |j| (j, self.nu[j], self.n[j]))
    }
}

/// Computes the numerical data of a cluster.
pub fn numerical_data(cl: &Cluster, px: &ProximityData) -> Result<NumericalData> {
    cl.require_positive()?;
    let r = cl.len();
    let mut nu = vec![1u64; r + 1];
    let mut n = vec![1u64; r + 1];
    for j in cl.points() {
        let mut nj = cl.multiplicity(j);
        let mut nuj = 3u64;
        for &i in px.targets(j) {
            nj += n[i];
            nuj += nu[i] - 1;
        }
        n[j] = nj;
        nu[j] = nuj;
        let l1: i64 = px.w(j).iter().sum();
        assert_eq!(
            nuj as i64, l1,
            "nu must equal the 1-norm of the valuation vector"
        );
    }
    Ok(NumericalData { nu, n })
}

/// A cluster bundled with its derived proximity and numerical data, validated
/// for analysis: all multiplicities positive and all linear proximity
/// inequalities satisfied.
#[derive(Debug, Clone)]
pub struct Analysis {
    cluster: Cluster,
    prox: ProximityData,
    numerical: NumericalData,
}

impl Analysis {
    pub fn new(cluster: Cluster) -> Result<Analysis> {
        cluster.require_positive()?;
        let report = cluster.validate_idealistic();
        if let Some(v) = report.first_violation() {
            return Err(Error::IdealisticViolation {
                point: v.point,
                pair: v.pair,
                slack: v.slack,
            });
        }
        let prox = derive_proximity(cluster.constellation());
        let numerical = numerical_data(&cluster, &prox)?;
        Ok(Analysis {
            cluster,
            prox,
            numerical,
        })
    }

    pub fn cluster(&self) -> &Cluster {
        &self.cluster
    }

    pub fn constellation(&self) -> &Constellation {
        self.cluster.constellation()
    }

    pub fn prox(&self) -> &ProximityData {
        &self.prox
    }

    pub fn numerical(&self) -> &NumericalData {
        &self.numerical
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.cluster.len()
    }

    pub fn points(&self) -> impl Iterator<Item = usize> {
        self.cluster.points()
    }

    pub fn multiplicity(&self, point: usize) -> u64 {
        self.cluster.multiplicity(point)
    }
}

/// Rees flag of one point: `d = m_i^2 - sum of m_j^2 over j -> i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReesFlag {
    pub point: usize,
    pub d: i64,
    /// The induced valuation is Rees for the associated complete ideal iff
    /// `d > 0`.
    pub is_rees: bool,
}

/// Computes `D_i` and the Rees flag for every point.
///
/// For idealistic clusters `D_i >= 0` always holds; a negative value reports
/// an `IdealisticViolation`.
pub fn rees_flags(a: &Analysis) -> Result<Vec<ReesFlag>> {
    a.points()
        .map(|i| {
            let m = a.multiplicity(i) as i64;
            let sub: i64 = a
                .prox()
                .sources(i)
                .iter()
                .map(|&j| {
                    let mj = a.multiplicity(j) as i64;
                    mj * mj
                })
                .sum();
            let d = m * m - sub;
            if d < 0 {
                return Err(Error::IdealisticViolation {
                    point: i,
                    pair: (Label(1), Label(2)),
                    slack: d,
                });
            }
            Ok(ReesFlag {
                point: i,
                d,
                is_rees: d > 0,
            })
        })
        .collect()
}

/// Shape test for the subtractive-Euclidean chain pattern.
///
/// `chain[k] = (multiplicity, incoming label)` for the k-th point after the
/// start.  The multiplicities must group into runs `n_2^(h_1) ... n_l^(h_levels)`
/// obeying `n_j = h_j n_(j+1) + n_(j+2)` (terminal `n_(l-1) = h_(l-1) n_l`),
/// and the labels must be: one initial label, then per-run labels strictly
/// alternating between the remaining two (a run's label covers its internal
/// edges and the edge into the next run).
pub(crate) fn is_euclidean_chain(start_mult: u64, chain: &[(u64, Label)]) -> bool {
    if chain.is_empty() || start_mult == 0 {
        return false;
    }
    let mut runs: Vec<(u64, u64)> = Vec::new();
    for &(m, _) in chain {
        if m == 0 {
            return false;
        }
        match runs.last_mut() {
            Some((v, h)) if *v == m => *h += 1,
            _ => runs.push((m, 1)),
        }
    }
    if runs.windows(2).any(|w| w[0].0 <= w[1].0) {
        return false;
    }
    let l = runs.len();
    let mut n: Vec<u64> = Vec::with_capacity(l + 1);
    n.push(start_mult);
    n.extend(runs.iter().map(|&(v, _)| v));
    for j in 0..l {
        let h = runs[j].1;
        let rem = if j + 2 <= l { n[j + 2] } else { 0 };
        if n[j] != h * n[j + 1] + rem {
            return false;
        }
    }
    let alpha = chain[0].1;
    if chain.len() == 1 {
        return true;
    }
    let beta = chain[1].1;
    if beta == alpha {
        return false;
    }
    let gamma = Label::third(alpha, beta);
    // run_of[k] = index of the run containing chain point k
    let mut run_of = Vec::with_capacity(chain.len());
    let mut idx = 0usize;
    let mut left = runs[0].1;
    for _ in chain {
        if left == 0 {
            idx += 1;
            left = runs[idx].1;
        }
        run_of.push(idx);
        left -= 1;
    }
    for k in 1..chain.len() {
        let block = if run_of[k] > run_of[k - 1] {
            run_of[k] - 1 // edge into a new run belongs to the previous block
        } else {
            run_of[k]
        };
        let expected = if block % 2 == 0 { beta } else { gamma };
        if chain[k].1 != expected {
            return false;
        }
    }
    true
}

/// Follows the part of the subtree of `start` relevant to the proximities of
/// the point whose subtree this is: children labeled `exclude` (the first
/// letter of every path into the subtree) leave all such relations and are
/// ignored.  `entry` is the label recorded for `start` itself.  Returns the
/// visible chain of `(multiplicity, incoming label)` or `None` if it
/// branches.
pub(crate) fn visible_chain(
    cl: &Cluster,
    start: usize,
    entry: Label,
    exclude: Label,
) -> Option<Vec<(u64, Label)>> {
    let c = cl.constellation();
    let mut out = vec![(cl.multiplicity(start), entry)];
    let mut cur = start;
    loop {
        let visible: Vec<(Label, usize)> =
            c.children(cur).filter(|&(l, _)| l != exclude).collect();
        match visible.as_slice() {
            [] => return Some(out),
            [(l, child)] => {
                out.push((cl.multiplicity(*child), *l));
                cur = *child;
            }
            _ => return None,
        }
    }
}

/// True iff the cluster is a Euclidean chain cluster starting in `point`:
/// the part of the subtree relevant to the proximities of `point` is a chain
/// whose multiplicities run the subtractive Euclidean algorithm with the
/// alternating label layout.  Matching is label-permutation invariant.
pub fn recognize_euclidean(a: &Analysis, point: usize) -> bool {
    let c = a.constellation();
    let children: Vec<(Label, usize)> = c.children(point).collect();
    let [(alpha, k)] = children.as_slice() else {
        return false;
    };
    match visible_chain(a.cluster(), *k, *alpha, *alpha) {
        Some(chain) => is_euclidean_chain(a.multiplicity(point), &chain),
        None => false,
    }
}

/// True iff the cluster is a bi-Euclidean cluster starting in `point`:
/// one successor carrying two branches whose reduced-weight chains are both
/// Euclidean.  Matching is label-permutation invariant.
pub fn recognize_bi_euclidean(a: &Analysis, point: usize) -> bool {
    let c = a.constellation();
    let cl = a.cluster();
    let children: Vec<(Label, usize)> = c.children(point).collect();
    let [(alpha, k)] = children.as_slice() else {
        return false;
    };
    let (alpha, k) = (*alpha, *k);
    let visible: Vec<(Label, usize)> = c.children(k).filter(|&(l, _)| l != alpha).collect();
    let [(beta, u), (gamma, w)] = visible.as_slice() else {
        return false;
    };
    let (beta, u, gamma, w) = (*beta, *u, *gamma, *w);
    let Some(chain_u) = visible_chain(cl, u, beta, alpha) else {
        return false;
    };
    let Some(chain_w) = visible_chain(cl, w, gamma, alpha) else {
        return false;
    };
    // Reduced weights subtract the opposite branch's initial counter-run.
    let s_u = cl.m_sum(k, beta, gamma).unwrap();
    let s_w = cl.m_sum(k, gamma, beta).unwrap();
    let m1 = a.multiplicity(point) as i64;
    let m2 = a.multiplicity(k) as i64;
    let euclidean_with = |start: i64, second: i64, branch: &[(u64, Label)]| -> bool {
        if start <= 0 || second <= 0 {
            return false;
        }
        let mut chain = Vec::with_capacity(branch.len() + 1);
        chain.push((second as u64, alpha));
        chain.extend_from_slice(branch);
        is_euclidean_chain(start as u64, &chain)
    };
    euclidean_with(m1 - s_w as i64, m2 - s_w as i64, &chain_u)
        && euclidean_with(m1 - s_u as i64, m2 - s_u as i64, &chain_w)
}

/// Deterministic random idealistic cluster.
///
/// A random labeled tree with distinct sibling labels is drawn first; then
/// multiplicities are assigned in reverse creation order as the largest
/// linear-proximity load plus a small random slack (slack at least 1 where
/// the load is 0, so every multiplicity is positive).
pub fn random_idealistic_cluster(point_count: usize, seed: u64) -> Cluster {
    assert!(point_count >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, Label)> = Vec::new();
    let mut free: Vec<(usize, Label)> = Label::ALL.into_iter().map(|l| (1, l)).collect();
    for j in 2..=point_count {
        let pick = rng.gen_range(0..free.len());
        let (parent, label) = free.swap_remove(pick);
        edges.push((j, parent, label));
        free.extend(Label::ALL.into_iter().map(|l| (j, l)));
    }
    let constellation = Constellation::build(&edges, 1).unwrap();
    let ray_sum = |mults: &[u64], i: usize, a: Label, b: Label| -> u64 {
        let mut total = 0;
        let mut cur = constellation.child(i, a);
        while let Some(p) = cur {
            total += mults[p - 1];
            cur = constellation.child(p, b);
        }
        total
    };
    let mut mults = vec![0u64; point_count];
    for i in (1..=point_count).rev() {
        let mut load = 0u64;
        for (a, b) in [
            (Label(1), Label(2)),
            (Label(1), Label(3)),
            (Label(2), Label(3)),
        ] {
            load = load.max(ray_sum(&mults, i, a, b) + ray_sum(&mults, i, b, a));
        }
        let slack = if load == 0 {
            rng.gen_range(1..=3)
        } else {
            rng.gen_range(0..=3)
        };
        mults[i - 1] = load + slack;
    }
    let cluster = Cluster::new(constellation, mults).unwrap();
    debug_assert!(cluster.validate_idealistic().idealistic);
    cluster
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lab(v: u8) -> Label {
        Label::new(v).unwrap()
    }

    #[test]
    fn build_rejects_invalid_trees() {
        let e = Constellation::build(&[(2, 1, lab(1)), (3, 1, lab(1))], 1);
        assert_eq!(
            e.unwrap_err(),
            Error::DuplicateSiblingLabel {
                parent: 1,
                label: lab(1)
            }
        );
        let e = Constellation::build(&[(2, 3, lab(1)), (3, 1, lab(1))], 1);
        assert_eq!(e.unwrap_err(), Error::ParentAfterChild { child: 2, parent: 3 });
        let e = Constellation::build(&[(2, 1, lab(1)), (2, 1, lab(2))], 1);
        assert!(matches!(e.unwrap_err(), Error::MultipleRoots { .. }));
        let e = Constellation::build(&[(2, 1, lab(1)), (5, 2, lab(1))], 1);
        assert!(matches!(e.unwrap_err(), Error::Disconnected { .. }));
    }

    #[test]
    fn five_point_valuations_and_proximity() {
        let a = Analysis::new(fixtures::five_point()).unwrap();
        let px = a.prox();
        assert_eq!(px.w(1), [1, 1, 1]);
        assert_eq!(px.w(2), [1, 2, 2]);
        assert_eq!(px.w(3), [2, 2, 1]);
        assert_eq!(px.w(4), [1, 3, 3]);
        assert_eq!(px.w(5), [2, 3, 4]);
        let pairs: Vec<(usize, usize)> = a
            .points()
            .flat_map(|j| px.targets(j).iter().map(move |&i| (j, i)).collect::<Vec<_>>())
            .collect();
        assert_eq!(pairs, vec![(2, 1), (3, 1), (4, 2), (5, 1), (5, 2)]);
        assert_eq!(px.level(1), 0);
        assert_eq!(px.level(5), 2);
        assert_eq!(
            px.labels_below(5).iter().collect::<Vec<_>>(),
            vec![lab(1), lab(2)]
        );
    }

    #[test]
    fn proximity_matches_path_word_rule() {
        // j -> i iff the path word from i to j is one letter followed by a
        // word avoiding that letter.
        for seed in 0..40 {
            let cl = random_idealistic_cluster(9, seed);
            let c = cl.constellation();
            let px = derive_proximity(c);
            for j in c.points() {
                for i in c.points() {
                    if i == j {
                        continue;
                    }
                    let mut word = Vec::new();
                    let mut cur = j;
                    let mut reaches = false;
                    while let Some(p) = c.parent(cur) {
                        word.push(c.edge_label(cur).unwrap());
                        if p == i {
                            reaches = true;
                            break;
                        }
                        cur = p;
                    }
                    word.reverse();
                    let by_word =
                        reaches && word[1..].iter().all(|&l| l != word[0]);
                    assert_eq!(px.is_proximate(j, i), by_word);
                }
            }
        }
    }

    #[test]
    fn single_point_data() {
        let cl = fixtures::single_point(2);
        let a = Analysis::new(cl).unwrap();
        assert_eq!(a.prox().w(1), [1, 1, 1]);
        assert!(a.prox().targets(1).is_empty());
        assert_eq!(a.numerical().nu(1), 3);
        assert_eq!(a.numerical().n(1), 2);
    }

    #[test]
    fn five_point_numerical_data() {
        let a = Analysis::new(fixtures::five_point()).unwrap();
        let nd = a.numerical();
        assert_eq!((nd.nu(0), nd.n(0)), (1, 1));
        let n: Vec<u64> = (1..=5).map(|j| nd.n(j)).collect();
        assert_eq!(n, vec![3, 5, 4, 6, 9]);
        let nu: Vec<u64> = (1..=5).map(|j| nd.nu(j)).collect();
        assert_eq!(nu, vec![3, 5, 5, 7, 9]);
    }

    #[test]
    fn nine_point_numerical_data() {
        let a = Analysis::new(fixtures::nine_point()).unwrap();
        let nd = a.numerical();
        let pairs: BTreeSet<(u64, u64)> = (1..=9).map(|j| (nd.n(j), nd.nu(j))).collect();
        for want in [
            (14, 3),
            (19, 5),
            (36, 9),
            (52, 13),
            (103, 25),
            (192, 47),
            (168, 43),
        ] {
            assert!(pairs.contains(&want), "missing numerical data {want:?}");
        }
        // The point with N = 192 is proximate exactly to those with
        // N in {36, 103, 52}.
        let k = (1..=9).find(|&j| nd.n(j) == 192).unwrap();
        let target_ns: BTreeSet<u64> =
            a.prox().targets(k).iter().map(|&i| nd.n(i)).collect();
        assert_eq!(target_ns, BTreeSet::from([36, 52, 103]));
    }

    #[test]
    fn m_sums_on_five_point() {
        let cl = fixtures::five_point();
        assert_eq!(cl.m_sum(1, lab(1), lab(2)).unwrap(), 3);
        assert_eq!(cl.m_sum(1, lab(2), lab(1)).unwrap(), 0);
        assert_eq!(cl.m_sum(2, lab(1), lab(3)).unwrap(), 1);
        assert_eq!(cl.m_sum(1, lab(1), lab(1)), Err(Error::EqualLabels));
    }

    #[test]
    fn idealistic_validation() {
        let report = fixtures::five_point().validate_idealistic();
        assert!(report.idealistic);
        let q1: Vec<i64> = report
            .entries
            .iter()
            .filter(|e| e.point == 1)
            .map(|e| e.slack)
            .collect();
        assert_eq!(q1, vec![0, 0, 2]);
        assert!(fixtures::single_point(7).validate_idealistic().idealistic);
        let bad = fixtures::chain(1, &[(1, 2)]);
        let report = bad.validate_idealistic();
        assert!(!report.idealistic);
        assert_eq!(report.first_violation().unwrap().point, 1);
    }

    #[test]
    fn rees_flags_on_fixtures() {
        let a = Analysis::new(fixtures::five_point()).unwrap();
        let flags = rees_flags(&a).unwrap();
        assert_eq!(flags[0].d, 3);
        assert!(flags[0].is_rees);
        assert_eq!(flags[1].d, 2);
        assert!(flags[1].is_rees);
        let a = Analysis::new(fixtures::chain(3, &[(1, 3)])).unwrap();
        let flags = rees_flags(&a).unwrap();
        assert_eq!(flags[0].d, 0);
        assert!(!flags[0].is_rees);
    }

    #[test]
    fn switch_points() {
        let cl = fixtures::five_point();
        assert!(cl.is_switch_point(2).unwrap());
        assert!(!cl.is_switch_point(4).unwrap());
        assert_eq!(cl.is_switch_point(1), Err(Error::RootHasNoSwitchStatus));
        let chain = fixtures::chain(1, &[(1, 1), (1, 1)]);
        assert!(!chain.is_switch_point(2).unwrap());
    }

    #[test]
    fn euclidean_recognition() {
        let a = Analysis::new(fixtures::euclidean_chain()).unwrap();
        assert!(recognize_euclidean(&a, 1));
        assert!(!recognize_bi_euclidean(&a, 1));
        let single = Analysis::new(fixtures::single_point(4)).unwrap();
        assert!(!recognize_euclidean(&single, 1));
        // Equal two-point chain is the h = 1 instance.
        let two = Analysis::new(fixtures::chain(5, &[(1, 5)])).unwrap();
        assert!(recognize_euclidean(&two, 1));
        // 4 = 1 * 2 + 2 breaks the remainder condition.
        let broken = Analysis::new(fixtures::chain(4, &[(1, 2), (2, 1)])).unwrap();
        assert!(!recognize_euclidean(&broken, 1));
    }

    #[test]
    fn bi_euclidean_recognition() {
        let a = Analysis::new(fixtures::bi_euclidean()).unwrap();
        assert!(recognize_bi_euclidean(&a, 2));
        assert!(!recognize_euclidean(&a, 2));
    }

    #[test]
    fn random_clusters_are_deterministic_and_idealistic() {
        for seed in 0..50 {
            let a = random_idealistic_cluster(8, seed);
            let b = random_idealistic_cluster(8, seed);
            assert_eq!(a.multiplicities(), b.multiplicities());
            for j in a.points() {
                assert_eq!(
                    a.constellation().parent(j),
                    b.constellation().parent(j)
                );
            }
            assert!(a.validate_idealistic().idealistic);
            assert!(a.require_positive().is_ok());
        }
        let one = random_idealistic_cluster(1, 9);
        assert!((1..=4).contains(&one.multiplicity(1)));
    }
}
