//! Cluster files, command dispatch and report rendering.
//!
//! A cluster file is UTF-8 text; each non-blank, non-comment line is a
//! point record
//!
//! ```text
//!   <id> <parent-id|-> <label|-> <mult>
//! ```
//!
//! with ids `1..r` in increasing order, `parent < id`, labels in `{1,2,3}`
//! and the root written with `-` for both parent and label.  A line holding
//! only `---` separates clusters in a multi-cluster stream.
//!
//! Commands return exit code 0 on success with all verdicts true, 1 on a
//! verdict failure (non-idealistic input, conjecture failure), and 2 on
//! usage or parse errors.  `--json` renders one JSON object per cluster,
//! newline-delimited; exact rationals are rendered as `"a/b"` strings.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constellation::{
    random_idealistic_cluster, rees_flags, Analysis, Cluster, Constellation, Label,
};
use crate::error::{Error, Result};
use crate::monodromy::{acampo, check_holomorphy, check_monodromy};
use crate::monomial::{
    general_element, ideal_generators_with_ceiling, is_complete_with_ceiling, monomial_string,
    newton_polyhedron_with_ceiling, DEFAULT_BOUND_CEILING,
};
use crate::ratzeta::{pole_report, z_top_r, RationalFunctionQ};
use crate::strata::{classify_sign, drt, strata_table, Sign};
use crate::verify;

/// Parses one cluster from cluster-file text.
pub fn parse_cluster_file(text: &str) -> Result<Cluster> {
    let mut edges: Vec<(usize, usize, Label)> = Vec::new();
    let mut mults: Vec<u64> = Vec::new();
    let mut children: BTreeMap<(usize, Label), usize> = BTreeMap::new();
    let mut root_seen = false;
    let mut next_id = 1usize;
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [id, parent, label, mult] = tokens.as_slice() else {
            return Err(Error::SyntaxError {
                line: lineno,
                message: format!("expected 4 fields, got {}", tokens.len()),
            });
        };
        let id: usize = id.parse().map_err(|_| Error::SyntaxError {
            line: lineno,
            message: format!("bad id {id:?}"),
        })?;
        if id != next_id {
            return Err(Error::OrderViolation { line: lineno });
        }
        next_id += 1;
        let mult: u64 = mult.parse().map_err(|_| Error::SyntaxError {
            line: lineno,
            message: format!("bad multiplicity {mult:?}"),
        })?;
        match (*parent, *label) {
            ("-", "-") => {
                if root_seen {
                    return Err(Error::SyntaxError {
                        line: lineno,
                        message: "second root record".to_string(),
                    });
                }
                if id != 1 {
                    return Err(Error::OrderViolation { line: lineno });
                }
                root_seen = true;
            }
            ("-", _) | (_, "-") => {
                return Err(Error::SyntaxError {
                    line: lineno,
                    message: "parent and label must both be '-' for the root".to_string(),
                });
            }
            (p, l) => {
                let parent: usize = p.parse().map_err(|_| Error::SyntaxError {
                    line: lineno,
                    message: format!("bad parent {p:?}"),
                })?;
                let label: u8 = l.parse().map_err(|_| Error::SyntaxError {
                    line: lineno,
                    message: format!("bad label {l:?}"),
                })?;
                let label = Label::new(label).map_err(|_| Error::SyntaxError {
                    line: lineno,
                    message: format!("label {l} not in 1..=3"),
                })?;
                if parent >= id {
                    return Err(Error::OrderViolation { line: lineno });
                }
                if children.insert((parent, label), id).is_some() {
                    return Err(Error::LabelClash { line: lineno });
                }
                edges.push((id, parent, label));
            }
        }
        mults.push(mult);
    }
    if !root_seen {
        return Err(Error::SyntaxError {
            line: 0,
            message: "no root record".to_string(),
        });
    }
    let constellation = Constellation::build(&edges, 1)?;
    Cluster::new(constellation, mults)
}

/// Parses a stream of clusters separated by `---` lines.
pub fn parse_cluster_stream(text: &str) -> Result<Vec<Cluster>> {
    let mut clusters = Vec::new();
    let mut chunk = String::new();
    for line in text.lines().chain(std::iter::once("---")) {
        if line.trim() == "---" {
            if chunk.lines().any(|l| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }) {
                clusters.push(parse_cluster_file(&chunk)?);
            }
            chunk.clear();
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    if clusters.is_empty() {
        return Err(Error::SyntaxError {
            line: 0,
            message: "empty input".to_string(),
        });
    }
    Ok(clusters)
}

/// Renders a cluster in the file format.
pub fn render_cluster_file(cl: &Cluster) -> String {
    let c = cl.constellation();
    let mut out = String::new();
    for j in cl.points() {
        match (c.parent(j), c.edge_label(j)) {
            (Some(p), Some(l)) => {
                out.push_str(&format!("{j} {p} {l} {}\n", cl.multiplicity(j)))
            }
            _ => out.push_str(&format!("{j} - - {}\n", cl.multiplicity(j))),
        }
    }
    out
}

fn ratio_string(r: &BigRational) -> String {
    r.to_string()
}

// ---------------------------------------------------------------------------
// JSON report types.  Field names are stable; rationals are "a/b" strings.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackRecord {
    pub point: usize,
    pub pair: [u8; 2],
    pub slack: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub idealistic: bool,
    pub slacks: Vec<SlackRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: Option<u8>,
    pub mult: u64,
    pub w: [i64; 3],
    pub nu: u64,
    pub n: u64,
    pub level: usize,
    pub proximate_to: Vec<usize>,
    pub linearly_proximate_to: Vec<usize>,
    pub labels_below: Vec<u8>,
    pub rees_excess: i64,
    pub is_rees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericalReport {
    pub points: Vec<PointReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumEntry {
    pub indices: Vec<usize>,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrtEntry {
    pub point: usize,
    pub d: i64,
    pub r: i64,
    pub t: i64,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrataReport {
    pub entries: Vec<StratumEntry>,
    pub decomposition: Vec<DrtEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub point: usize,
    pub chi: i64,
    pub sign: Sign,
    pub patterns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub twist: u64,
    pub numerator: Vec<String>,
    pub denominator_factors: Vec<(u64, u64, u32)>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub s0: String,
    pub order: u32,
    pub leading: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolesReport {
    pub twist: u64,
    pub poles: Vec<PoleRecord>,
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyPoleRecord {
    pub s0: String,
    pub b: u64,
    pub chi_sum: i64,
    pub eigenvalue: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub exponents: Vec<(u64, i64)>,
    pub milnor: i64,
    pub orders: Vec<u64>,
    pub poles: Vec<MonodromyPoleRecord>,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolomorphyRecord {
    pub r: u64,
    pub exempt: bool,
    pub pole_free: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolomorphyJson {
    pub r_max: u64,
    pub failing: Vec<u64>,
    pub checked: Vec<HolomorphyRecord>,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub point: usize,
    pub essential: bool,
    pub witness: Option<[u64; 3]>,
    pub rees_excess: i64,
    pub is_rees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralElementReport {
    pub seed: u64,
    pub terms: Vec<(String, [u64; 3])>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealReport {
    pub generators: Vec<[u64; 3]>,
    pub monomials: Vec<String>,
    pub complete: bool,
    pub facets: Vec<FacetRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub general: Option<GeneralElementReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecordJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub label: Option<u8>,
    pub mult: u64,
}

/// Structured result of one command on one cluster.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerical_data: Option<NumericalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strata: Option<StrataReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Vec<ClassificationEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<ZetaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poles: Option<PolesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holomorphy: Option<HolomorphyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointRecordJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
}

fn zeta_report(f: &RationalFunctionQ, twist: u64) -> ZetaReport {
    ZetaReport {
        twist,
        numerator: f
            .numerator()
            .coefficients()
            .iter()
            .map(ratio_string)
            .collect(),
        denominator_factors: f
            .denominator_factors()
            .iter()
            .map(|(&(n, nu), &m)| (n, nu, m))
            .collect(),
        display: f.to_string(),
    }
}

fn poles_json(a: &Analysis, f: &RationalFunctionQ, twist: u64) -> PolesReport {
    let report = pole_report(a, f);
    PolesReport {
        twist,
        poles: report
            .poles
            .iter()
            .map(|p| PoleRecord {
                s0: ratio_string(&p.s0),
                order: p.order,
                leading: ratio_string(&p.leading),
            })
            .collect(),
        candidates: report.candidates.iter().map(ratio_string).collect(),
    }
}

fn monodromy_json(a: &Analysis) -> Result<MonodromyReport> {
    let cp = acampo(a);
    let orders = cp.eigenvalue_orders()?;
    let report = check_monodromy(a);
    Ok(MonodromyReport {
        exponents: cp.exponents().iter().map(|(&d, &e)| (d, e)).collect(),
        milnor: cp.milnor_number(),
        orders: orders.into_iter().collect(),
        poles: report
            .poles
            .iter()
            .map(|p| MonodromyPoleRecord {
                s0: ratio_string(&p.s0),
                b: p.b,
                chi_sum: p.chi_sum,
                eigenvalue: p.eigenvalue,
            })
            .collect(),
        verdict: report.verdict,
    })
}

fn holomorphy_json(a: &Analysis) -> Result<HolomorphyJson> {
    let r_max = a.points().map(|j| a.numerical().n(j)).max().unwrap();
    let report = check_holomorphy(a, r_max)?;
    Ok(HolomorphyJson {
        r_max,
        failing: report
            .checks
            .iter()
            .filter(|c| !c.pole_free)
            .map(|c| c.r)
            .collect(),
        checked: report
            .checks
            .iter()
            .filter(|c| !c.exempt)
            .map(|c| HolomorphyRecord {
                r: c.r,
                exempt: c.exempt,
                pole_free: c.pole_free,
            })
            .collect(),
        verdict: report.verdict,
    })
}

fn bound_ceiling() -> u64 {
    std::env::var("CLUSTERZETA_BOUND_CEILING")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BOUND_CEILING)
}

// ---------------------------------------------------------------------------
// Command implementations.
// ---------------------------------------------------------------------------

struct Options {
    json: bool,
    twist: u64,
    general_seed: Option<u64>,
    points: usize,
    seed: u64,
    count: usize,
    file: Option<String>,
}

fn usage(err: &mut dyn Write) {
    let _ = writeln!(
        err,
        "usage: clusterzeta [--json] <command> [options] [file]\n\
         commands:\n\
         \x20 validate [file]            check the linear proximity inequalities\n\
         \x20 info [file]                numerical data and proximity relations\n\
         \x20 chi [file]                 stratum table and D - R + T decomposition\n\
         \x20 classify [file]            signs of chi(E_i) with matched patterns\n\
         \x20 zeta [--r R] [file]        topological zeta function (twist R)\n\
         \x20 poles [--r R] [file]       poles with orders and residue leads\n\
         \x20 monodromy [file]           characteristic polynomial and eigenvalue checks\n\
         \x20 check [file]               monodromy + holomorphy verdicts\n\
         \x20 ideal [--general S] [file] complete ideal, facets, general element\n\
         \x20 random --points K --seed S [--count M]   emit random idealistic clusters\n\
         \x20 selftest                   run fixtures and invariant suites\n\
         a file of '-' or no file reads stdin; '---' lines separate clusters"
    );
}

fn read_input(file: &Option<String>) -> std::io::Result<String> {
    match file.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
        Some(path) => std::fs::read_to_string(path),
    }
}

fn analyse(cluster: &Cluster) -> std::result::Result<Analysis, Box<Report>> {
    match Analysis::new(cluster.clone()) {
        Ok(a) => Ok(a),
        Err(_) => {
            let report = validation_report(cluster);
            Err(Box::new(Report {
                validation: Some(report),
                verdict: Some(false),
                ..Report::default()
            }))
        }
    }
}

fn validation_report(cluster: &Cluster) -> ValidationReport {
    let r = cluster.validate_idealistic();
    let positive = cluster.require_positive().is_ok();
    ValidationReport {
        idealistic: r.idealistic && positive,
        slacks: r
            .entries
            .iter()
            .map(|e| SlackRecord {
                point: e.point,
                pair: [e.pair.0.value(), e.pair.1.value()],
                slack: e.slack,
            })
            .collect(),
    }
}

fn run_on_cluster(command: &str, cluster: &Cluster, opts: &Options) -> Result<Report> {
    let mut report = Report::default();
    if command == "validate" {
        let v = validation_report(cluster);
        report.verdict = Some(v.idealistic);
        report.validation = Some(v);
        return Ok(report);
    }
    let a = match analyse(cluster) {
        Ok(a) => a,
        Err(r) => return Ok(*r),
    };
    match command {
        "info" => {
            let rees = rees_flags(&a)?;
            let points = a
                .points()
                .map(|j| PointReport {
                    id: j,
                    parent: a.constellation().parent(j),
                    label: a.constellation().edge_label(j).map(Label::value),
                    mult: a.multiplicity(j),
                    w: a.prox().w(j),
                    nu: a.numerical().nu(j),
                    n: a.numerical().n(j),
                    level: a.prox().level(j),
                    proximate_to: a.prox().targets(j).iter().copied().collect(),
                    linearly_proximate_to: a.prox().lin_targets(j).iter().copied().collect(),
                    labels_below: a.prox().labels_below(j).iter().map(Label::value).collect(),
                    rees_excess: rees[j - 1].d,
                    is_rees: rees[j - 1].is_rees,
                })
                .collect();
            report.numerical_data = Some(NumericalReport { points });
            report.verdict = Some(true);
        }
        "chi" => {
            let table = strata_table(&a);
            report.strata = Some(StrataReport {
                entries: table
                    .iter()
                    .map(|(k, chi)| StratumEntry {
                        indices: k.to_vec(),
                        chi,
                    })
                    .collect(),
                decomposition: a
                    .points()
                    .map(|i| {
                        let d = drt(&a, i);
                        DrtEntry {
                            point: i,
                            d: d.d,
                            r: d.r,
                            t: d.t,
                            chi: d.chi(),
                        }
                    })
                    .collect(),
            });
            report.verdict = Some(true);
        }
        "classify" => {
            report.classification = Some(
                a.points()
                    .map(|i| {
                        let c = classify_sign(&a, i);
                        ClassificationEntry {
                            point: i,
                            chi: c.chi,
                            sign: c.sign,
                            patterns: c.patterns.iter().map(|p| p.name().to_string()).collect(),
                        }
                    })
                    .collect(),
            );
            report.verdict = Some(true);
        }
        "zeta" => {
            let f = z_top_r(&a, opts.twist);
            report.zeta = Some(zeta_report(&f, opts.twist));
            report.verdict = Some(true);
        }
        "poles" => {
            let f = z_top_r(&a, opts.twist);
            report.poles = Some(poles_json(&a, &f, opts.twist));
            report.verdict = Some(true);
        }
        "monodromy" => {
            let m = monodromy_json(&a)?;
            report.verdict = Some(m.verdict);
            report.monodromy = Some(m);
        }
        "check" => {
            let m = monodromy_json(&a)?;
            let h = holomorphy_json(&a)?;
            let f = z_top_r(&a, 1);
            report.poles = Some(poles_json(&a, &f, 1));
            report.verdict = Some(m.verdict && h.verdict);
            report.monodromy = Some(m);
            report.holomorphy = Some(h);
        }
        "ideal" => {
            let ceiling = bound_ceiling();
            let ideal = ideal_generators_with_ceiling(&a, ceiling)?;
            let complete = is_complete_with_ceiling(&ideal.generators, &a, ceiling)?;
            let np = newton_polyhedron_with_ceiling(&a, ceiling)?;
            let general = match opts.general_seed {
                Some(seed) => {
                    let terms = general_element(&a, seed)?;
                    let display = terms
                        .iter()
                        .map(|(g, c)| format!("({}){}", c, monomial_string(*g)))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    Some(GeneralElementReport {
                        seed,
                        terms: terms
                            .into_iter()
                            .map(|(g, c)| (ratio_string(&c), g))
                            .collect(),
                        display,
                    })
                }
                None => None,
            };
            report.ideal = Some(IdealReport {
                monomials: ideal.generators.iter().map(|&g| monomial_string(g)).collect(),
                generators: ideal.generators,
                complete,
                facets: np
                    .facets
                    .iter()
                    .map(|f| FacetRecord {
                        point: f.point,
                        essential: f.essential,
                        witness: f.witness,
                        rees_excess: f.d,
                        is_rees: f.is_rees,
                    })
                    .collect(),
                general,
            });
            report.verdict = Some(complete);
        }
        other => {
            return Err(Error::SyntaxError {
                line: 0,
                message: format!("unknown command {other}"),
            })
        }
    }
    Ok(report)
}

fn render_text(out: &mut dyn Write, report: &Report) -> std::io::Result<()> {
    if let Some(v) = &report.validation {
        writeln!(
            out,
            "idealistic: {}",
            if v.idealistic { "yes" } else { "no" }
        )?;
        for s in &v.slacks {
            if s.slack < 0 {
                writeln!(
                    out,
                    "  violation at point {} pair {{{},{}}}: slack {}",
                    s.point, s.pair[0], s.pair[1], s.slack
                )?;
            }
        }
    }
    if let Some(n) = &report.numerical_data {
        for p in &n.points {
            writeln!(
                out,
                "point {}: parent {}, label {}, m = {}, w = ({},{},{}), nu = {}, N = {}, level {}, -> {:?}, ->> {:?}, labels below {:?}, D = {}{}",
                p.id,
                p.parent.map_or("-".to_string(), |x| x.to_string()),
                p.label.map_or("-".to_string(), |x| x.to_string()),
                p.mult,
                p.w[0],
                p.w[1],
                p.w[2],
                p.nu,
                p.n,
                p.level,
                p.proximate_to,
                p.linearly_proximate_to,
                p.labels_below,
                p.rees_excess,
                if p.is_rees { " (Rees)" } else { "" },
            )?;
        }
    }
    if let Some(s) = &report.strata {
        for e in &s.entries {
            writeln!(out, "chi{:?} = {}", e.indices, e.chi)?;
        }
        for d in &s.decomposition {
            writeln!(
                out,
                "point {}: D = {}, R = {}, T = {}, chi = {}",
                d.point, d.d, d.r, d.t, d.chi
            )?;
        }
    }
    if let Some(cs) = &report.classification {
        for c in cs {
            writeln!(
                out,
                "point {}: chi = {} ({:?}){}",
                c.point,
                c.chi,
                c.sign,
                if c.patterns.is_empty() {
                    String::new()
                } else {
                    format!(", patterns {}", c.patterns.join(" "))
                }
            )?;
        }
    }
    if let Some(z) = &report.zeta {
        writeln!(out, "Z^({}) = {}", z.twist, z.display)?;
    }
    if let Some(p) = &report.poles {
        writeln!(out, "candidates: {}", p.candidates.join(", "))?;
        if p.poles.is_empty() {
            writeln!(out, "no poles")?;
        }
        for pole in &p.poles {
            writeln!(
                out,
                "pole {} of order {}, leading coefficient {}",
                pole.s0, pole.order, pole.leading
            )?;
        }
    }
    if let Some(m) = &report.monodromy {
        let poly = m
            .exponents
            .iter()
            .map(|(d, e)| format!("Phi_{d}^{e}"))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(
            out,
            "characteristic polynomial: {} (degree {})",
            if poly.is_empty() { "1" } else { &poly },
            m.milnor
        )?;
        writeln!(out, "eigenvalue orders: {:?}", m.orders)?;
        for p in &m.poles {
            writeln!(
                out,
                "pole {}: b = {}, chi sum = {} -> {}",
                p.s0,
                p.b,
                p.chi_sum,
                if p.eigenvalue { "eigenvalue" } else { "NOT an eigenvalue" }
            )?;
        }
        writeln!(
            out,
            "monodromy verdict: {}",
            if m.verdict { "pass" } else { "FAIL" }
        )?;
    }
    if let Some(h) = &report.holomorphy {
        writeln!(
            out,
            "holomorphy up to r = {}: {} ({} twist orders checked)",
            h.r_max,
            if h.verdict { "pass" } else { "FAIL" },
            h.checked.len()
        )?;
        if !h.failing.is_empty() {
            writeln!(out, "  failing twists: {:?}", h.failing)?;
        }
    }
    if let Some(i) = &report.ideal {
        writeln!(out, "generators ({}): {}", i.monomials.len(), i.monomials.join(", "))?;
        writeln!(out, "complete: {}", if i.complete { "yes" } else { "no" })?;
        for f in &i.facets {
            writeln!(
                out,
                "inequality of point {}: {}{}",
                f.point,
                if f.essential { "facet" } else { "redundant" },
                if f.is_rees { " (Rees)" } else { "" }
            )?;
        }
        if let Some(g) = &i.general {
            writeln!(out, "general element (seed {}): {}", g.seed, g.display)?;
        }
    }
    if let Some(points) = &report.points {
        for p in points {
            match (p.parent, p.label) {
                (Some(parent), Some(label)) => {
                    writeln!(out, "{} {} {} {}", p.id, parent, label, p.mult)?
                }
                _ => writeln!(out, "{} - - {}", p.id, p.mult)?,
            }
        }
    }
    Ok(())
}

fn emit(out: &mut dyn Write, report: &Report, json: bool) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string(report).unwrap())
    } else {
        render_text(out, report)
    }
}

fn cluster_points_json(cl: &Cluster) -> Vec<PointRecordJson> {
    cl.points()
        .map(|j| PointRecordJson {
            id: j,
            parent: cl.constellation().parent(j),
            label: cl.constellation().edge_label(j).map(Label::value),
            mult: cl.multiplicity(j),
        })
        .collect()
}

fn run_selftest(out: &mut dyn Write) -> std::io::Result<i32> {
    use crate::fixtures;
    let mut ok = true;
    let mut check = |name: &str, pass: bool, out: &mut dyn Write| -> std::io::Result<()> {
        ok &= pass;
        writeln!(out, "{} {}", if pass { "ok  " } else { "FAIL" }, name)
    };
    let fixture_list: Vec<(&str, Cluster)> = vec![
        ("single smooth point", fixtures::single_point(1)),
        ("quadratic cone", fixtures::single_point(2)),
        ("five-point cluster", fixtures::five_point()),
        ("nine-point cluster", fixtures::nine_point()),
        ("21-generator cluster", fixtures::ideal_fixture_21()),
        ("28-generator cluster", fixtures::ideal_fixture_28()),
        ("Euclidean chain", fixtures::euclidean_chain()),
        ("bi-Euclidean cluster", fixtures::bi_euclidean()),
        ("equal chain", fixtures::chain(3, &[(1, 3)])),
    ];
    for (name, cl) in fixture_list {
        let pass = match Analysis::new(cl) {
            Ok(a) => {
                verify::check_cluster(&a).is_ok() && verify::check_rees_facets(&a, 500).is_ok()
            }
            Err(_) => false,
        };
        check(&format!("fixture invariants: {name}"), pass, out)?;
    }
    let corpus = verify::corpus_report(150, 10, 20240, 300);
    check("random corpus invariants (150 clusters)", corpus.ok(), out)?;
    for f in corpus.failures.iter().take(5) {
        writeln!(out, "     {f}")?;
    }
    writeln!(
        out,
        "lattice checks: {} run, {} skipped, {} degeneracies",
        corpus.lattice_checked, corpus.lattice_skipped, corpus.degeneracies
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn parse_options(args: &[String], err: &mut dyn Write) -> Option<(String, Options)> {
    let mut opts = Options {
        json: false,
        twist: 1,
        general_seed: None,
        points: 0,
        seed: 0,
        count: 1,
        file: None,
    };
    let mut command = None;
    let mut it = args.iter().peekable();
    let grab = |it: &mut std::iter::Peekable<std::slice::Iter<String>>,
                    name: &str|
     -> Option<String> {
        match it.next() {
            Some(v) => Some(v.clone()),
            None => {
                let _ = writeln!(std::io::stderr(), "missing value for {name}");
                None
            }
        }
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => opts.json = true,
            "--r" => opts.twist = grab(&mut it, "--r")?.parse().ok()?,
            "--general" => opts.general_seed = Some(grab(&mut it, "--general")?.parse().ok()?),
            "--points" => opts.points = grab(&mut it, "--points")?.parse().ok()?,
            "--seed" => opts.seed = grab(&mut it, "--seed")?.parse().ok()?,
            "--count" => opts.count = grab(&mut it, "--count")?.parse().ok()?,
            "--help" | "-h" => {
                usage(err);
                return None;
            }
            other if other.starts_with("--") => {
                let _ = writeln!(err, "unknown flag {other}");
                return None;
            }
            other if command.is_none() => command = Some(other.to_string()),
            other => {
                if opts.file.is_some() {
                    let _ = writeln!(err, "unexpected argument {other}");
                    return None;
                }
                opts.file = Some(other.to_string());
            }
        }
    }
    match command {
        Some(c) => Some((c, opts)),
        None => {
            usage(err);
            None
        }
    }
}

/// Runs a command line; returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some((command, opts)) = parse_options(args, err) else {
        return 2;
    };
    if opts.twist == 0 {
        let _ = writeln!(err, "--r must be at least 1");
        return 2;
    }
    match command.as_str() {
        "selftest" => {
            return run_selftest(out).unwrap_or(2);
        }
        "random" => {
            if opts.points == 0 {
                let _ = writeln!(err, "random requires --points K (at least 1)");
                return 2;
            }
            for k in 0..opts.count {
                let cl = random_idealistic_cluster(opts.points, opts.seed.wrapping_add(k as u64));
                if opts.json {
                    let report = Report {
                        points: Some(cluster_points_json(&cl)),
                        verdict: Some(true),
                        ..Report::default()
                    };
                    let _ = writeln!(out, "{}", serde_json::to_string(&report).unwrap());
                } else {
                    if k > 0 {
                        let _ = writeln!(out, "---");
                    }
                    let _ = write!(out, "{}", render_cluster_file(&cl));
                }
            }
            return 0;
        }
        _ => {}
    }
    let text = match read_input(&opts.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "cannot read input: {e}");
            return 2;
        }
    };
    let clusters = match parse_cluster_stream(&text) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "parse error: {e}");
            return 2;
        }
    };
    let mut exit = 0;
    for (k, cluster) in clusters.iter().enumerate() {
        match run_on_cluster(&command, cluster, &opts) {
            Ok(report) => {
                if !opts.json && k > 0 {
                    let _ = writeln!(out, "---");
                }
                let _ = emit(out, &report, opts.json);
                if report.verdict == Some(false) {
                    exit = exit.max(1);
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
        }
    }
    exit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parse_five_point_file() {
        let text = "1 - - 3\n2 1 1 2\n3 1 3 1\n4 2 1 1\n5 2 2 1\n";
        let cl = parse_cluster_file(text).unwrap();
        assert_eq!(cl.len(), 5);
        assert_eq!(cl.multiplicities(), fixtures::five_point().multiplicities());
        assert_eq!(render_cluster_file(&cl), text);
    }

    #[test]
    fn parse_single_point() {
        let cl = parse_cluster_file("# comment\n\n1 - - 2\n").unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl.multiplicity(1), 2);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_cluster_file("1 - - 3\n2 1 1 2\n3 1 1 1\n").unwrap_err(),
            Error::LabelClash { line: 3 }
        );
        assert_eq!(
            parse_cluster_file("1 - - 3\n3 1 1 2\n").unwrap_err(),
            Error::OrderViolation { line: 2 }
        );
        assert!(matches!(
            parse_cluster_file("1 - - 3\n2 1 5 2\n").unwrap_err(),
            Error::SyntaxError { line: 2, .. }
        ));
        assert!(matches!(
            parse_cluster_file("hello\n").unwrap_err(),
            Error::SyntaxError { line: 1, .. }
        ));
    }

    #[test]
    fn stream_parsing() {
        let text = "1 - - 2\n---\n1 - - 3\n2 1 1 3\n";
        let clusters = parse_cluster_stream(text).unwrap();
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[1].len(), 2);
    }

    #[test]
    fn run_zeta_text() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let dir = std::env::temp_dir().join("clusterzeta-test-zeta.clus");
        std::fs::write(&dir, "1 - - 2\n").unwrap();
        let code = run(
            &["zeta".to_string(), dir.display().to_string()],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("(s + 3) / (s + 1)(2s + 3)"), "{text}");
    }

    #[test]
    fn json_reports_round_trip() {
        let fixture = fixtures::five_point();
        let opts = Options {
            json: true,
            twist: 1,
            general_seed: Some(7),
            points: 0,
            seed: 0,
            count: 1,
            file: None,
        };
        for command in ["validate", "info", "chi", "classify", "zeta", "poles", "monodromy", "check", "ideal"] {
            let report = run_on_cluster(command, &fixture, &opts).unwrap();
            let json = serde_json::to_string(&report).unwrap();
            let back: Report = serde_json::from_str(&json).unwrap();
            assert_eq!(report, back, "{command}");
        }
    }

    #[test]
    fn verdict_failure_on_non_idealistic_input() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let path = std::env::temp_dir().join("clusterzeta-test-bad.clus");
        std::fs::write(&path, "1 - - 1\n2 1 1 2\n").unwrap();
        let code = run(
            &["check".to_string(), path.display().to_string()],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 1);
    }
}
