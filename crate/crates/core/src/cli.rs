//! Report builders behind the command-line tool.
//!
//! Every command produces a [`Report`]: normalized inputs, a JSON result
//! block, a list of verification checks and, where the result is a flat
//! per-vertex table, the rows used by the text and CSV renderers. The JSON
//! form is deterministic apart from `timing_ms`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bruhat_graph::{level_face, level_function, moment_point, AscentGraph, BruhatEdgeSet};
use crate::error::{Error, Result};
use crate::lattice;
use crate::permutation::{BruhatInterval, Permutation};
use crate::poincare::{a_polynomial, betti_from_fvector, richardson_polynomial, smoothness_report, IntPolynomial};
use crate::polytope::{bip_edges_combinatorial, convex_hull_with_limits, moment_vertices, HullLimits, LatticePolytope};
use crate::retraction::{
    ascending_face, default_height, export_steps, h_retraction, orient_by_h, poincare_from_retraction,
    search_retraction, smooth_step_certificate, RetractionSequence,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Default `--max-n` for commands that build a convex hull.
pub const DEFAULT_MAX_N_HULL: usize = 6;
/// Default `--max-n` for purely combinatorial commands.
pub const DEFAULT_MAX_N_COMBINATORIAL: usize = 8;

/// Counterexamples kept per failing check.
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            outcome: if passed { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        }
    }

    fn skip(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            outcome: Outcome::Skip,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verification: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    /// Headline lines for the text renderer.
    #[serde(skip)]
    pub summary: Vec<(String, String)>,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            results: Value::Null,
            verification: Vec::new(),
            timing_ms: None,
            summary: Vec::new(),
            table: None,
        }
    }

    /// False if any check failed; skipped checks do not count.
    pub fn passed(&self) -> bool {
        self.verification.iter().all(|c| c.outcome != Outcome::Fail)
    }

    /// 0 on success, 2 if a check failed.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        if let Value::Object(map) = &self.inputs {
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", plain(v));
            }
        }
        if !self.summary.is_empty() {
            out.push('\n');
            let width = self.summary.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &self.summary {
                let _ = writeln!(out, "{k:<width$}  {v}");
            }
        }
        if let Some(table) = &self.table {
            out.push('\n');
            out.push_str(&aligned(table));
        }
        if !self.verification.is_empty() {
            out.push_str("\nchecks\n");
            for c in &self.verification {
                let tag = match c.outcome {
                    Outcome::Pass => "PASS",
                    Outcome::Fail => "FAIL",
                    Outcome::Skip => "SKIP",
                };
                let _ = writeln!(out, "  {tag} {}: {}", c.name, c.detail);
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "\n{ms} ms");
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let table = self
            .table
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("csv output for `{}`", self.command)))?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.header)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(plain).join(","),
        other => other.to_string(),
    }
}

fn aligned(table: &Table) -> String {
    let mut widths: Vec<usize> = table.header.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .join("  ")
            .trim_end()
            .to_string()
            + "\n"
    };
    let mut out = line(&table.header);
    for row in &table.rows {
        out.push_str(&line(row));
    }
    out
}

fn tuple(xs: &[i64]) -> String {
    format!("({})", xs.iter().join(","))
}

fn guard(w: &Permutation, max_n: usize) -> Result<()> {
    if w.n() > max_n {
        return Err(Error::GuardExceeded {
            what: "rank n (raise with --max-n)",
            actual: w.n(),
            limit: max_n,
        });
    }
    Ok(())
}

fn check_height_len(a: &[i64], n: usize) -> Result<()> {
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: a.len(),
        });
    }
    Ok(())
}

/// `A_w(t)`, `P(Y_w, t)` and the per-vertex table `(u, μ(u), h(μ(u)),
/// a_w(u))` sorted by height. The height vector must be strictly decreasing
/// so that ascending edges are the ones with `u(i) < u(j)`.
pub fn poincare_report(w: &Permutation, hvec: Option<&[i64]>, max_n: usize) -> Result<Report> {
    guard(w, max_n)?;
    let n = w.n();
    let a = hvec.map_or_else(|| default_height(n), <[i64]>::to_vec);
    check_height_len(&a, n)?;
    if a.windows(2).any(|p| p[0] <= p[1]) {
        return Err(Error::InvalidHeight(format!(
            "{a:?} is not strictly decreasing"
        )));
    }
    let iv = BruhatInterval::below(w)?;
    let mut rows = Vec::with_capacity(iv.len());
    let mut mismatches = Vec::new();
    for u in iv.members() {
        let es = BruhatEdgeSet::new(u, w)?;
        let mu = moment_point(u);
        let h = lattice::dot(&a, &mu);
        let rising = es
            .reduced
            .iter()
            .filter(|&&e| lattice::dot(&a, &moment_point(&es.neighbour(e))) > h)
            .count();
        if rising != es.ascent_count() {
            mismatches.push(u.to_string());
        }
        rows.push((h, mu, u.clone(), es.ascent_count()));
    }
    rows.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    let aw = IntPolynomial::from_exponents(rows.iter().map(|r| r.3));
    let direct = a_polynomial(w)?;
    let p = aw.at_t_squared();

    let mut report = Report::new("poincare", json!({ "w": w.to_string(), "hvec": a }));
    report.results = json!({
        "interval_size": iv.len(),
        "a_polynomial": aw,
        "poincare_polynomial": p,
        "rows": rows.iter().map(|(h, mu, u, asc)| json!({
            "u": u.to_string(), "mu": mu, "h": h, "a": asc,
        })).collect::<Vec<_>>(),
    });
    report.summary = vec![
        ("A_w(t)".into(), aw.to_string()),
        ("P(Y_w, t)".into(), p.to_string()),
        ("|[id, w]|".into(), iv.len().to_string()),
    ];
    report.table = Some(Table {
        header: ["u", "mu", "h", "a"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|(h, mu, u, asc)| vec![u.to_string(), tuple(mu), h.to_string(), asc.to_string()])
            .collect(),
    });
    report.verification = vec![
        Check::new(
            "value-at-one",
            aw.eval(1) == iv.len() as i64,
            format!("A_w(1) = {}, |[id, w]| = {}", aw.eval(1), iv.len()),
        ),
        Check::new(
            "ascents-rise-in-height",
            mismatches.is_empty(),
            if mismatches.is_empty() {
                "a_w(u) counts the neighbours of u with larger h".to_string()
            } else {
                format!("mismatch at {}", mismatches.join(", "))
            },
        ),
        Check::new("table-matches-sum", aw == direct, format!("direct sum {direct}")),
    ];
    Ok(report)
}

/// Step rows; `permutations` adds the `u` column and labels the vertex `mu`.
fn step_table(q: &LatticePolytope, seq: &RetractionSequence, a: &[i64], permutations: bool) -> Table {
    let steps = export_steps(q, seq, Some(a));
    let header: &[&str] = if permutations {
        &["step", "u", "mu", "h", "dim", "face_size"]
    } else {
        &["step", "vertex", "h", "dim", "face_size"]
    };
    Table {
        header: header.iter().map(|h| h.to_string()).collect(),
        rows: steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut row = vec![(i + 1).to_string()];
                if permutations {
                    row.push(point_to_perm(&s.vertex).map_or_else(String::new, |u| u.to_string()));
                }
                row.extend([
                    tuple(&s.vertex),
                    s.height.map_or_else(String::new, |h| h.to_string()),
                    s.step_dim.to_string(),
                    s.face.len().to_string(),
                ]);
                row
            })
            .collect(),
    }
}

/// The permutation `u` with `ū = x`, if `x` is a permutation word.
fn point_to_perm(x: &[i64]) -> Option<Permutation> {
    let word: Vec<usize> = x.iter().map(|&c| usize::try_from(c).ok()).collect::<Option<_>>()?;
    Permutation::new(word).ok().map(|p| p.inverse())
}

/// A retraction sequence of the hull of `{ū : v ≤ u ≤ w}`, which is
/// `Q_{v⁻¹,w⁻¹}`: induced by the height `hvec`, or found by search.
pub fn retraction_report(
    v: &Permutation,
    w: &Permutation,
    hvec: Option<&[i64]>,
    search: bool,
    max_n: usize,
    limits: &HullLimits,
) -> Result<Report> {
    guard(w, max_n)?;
    let n = w.n();
    let a = hvec.map_or_else(|| default_height(n), <[i64]>::to_vec);
    check_height_len(&a, n)?;
    let iv = BruhatInterval::new(v, w)?;
    let q = convex_hull_with_limits(&moment_vertices(&iv), limits)?;
    let simple = (0..q.vertices().len())
        .filter(|&i| q.classify_vertex(i).is_ok_and(|c| c.is_simple))
        .count();

    let mut report = Report::new(
        "retraction",
        json!({ "v": v.to_string(), "w": w.to_string(), "hvec": a, "search": search }),
    );
    let polytope = json!({
        "vertices": q.vertices().len(),
        "dim": q.dim(),
        "fvector": q.fvector(),
        "simple_vertices": simple,
    });
    report.summary = vec![
        ("vertices".into(), q.vertices().len().to_string()),
        ("dim".into(), q.dim().to_string()),
        ("f-vector".into(), format!("{:?}", q.fvector())),
        ("simple vertices".into(), simple.to_string()),
    ];

    let seq = if search {
        search_retraction(&q)?
    } else {
        Some(h_retraction(&q, &a)?)
    };
    let Some(seq) = seq else {
        report.results = json!({ "polytope": polytope, "sequence": Value::Null });
        report.summary.push(("sequence".into(), "no retraction sequence exists".into()));
        report.verification.push(Check::new(
            "retraction-exists",
            false,
            "exhaustive search found no retraction sequence",
        ));
        return Ok(report);
    };

    let p = poincare_from_retraction(&seq);
    let certificate = smooth_step_certificate(&q, &seq);
    report.results = json!({
        "polytope": polytope,
        "sequence": {
            "source": seq.source,
            "steps": export_steps(&q, &seq, Some(&a)),
        },
        "poincare_polynomial": p,
        "smooth_step_certificate": certificate,
    });
    report.summary.push(("P(t)".into(), p.to_string()));
    report.summary.push(("smooth steps".into(), certificate.to_string()));
    report.table = Some(step_table(&q, &seq, &a, true));
    report.verification.push(Check::new(
        "retraction-exists",
        true,
        format!("{} steps", seq.len()),
    ));
    report.verification.push(Check::new(
        "value-at-one",
        p.eval(1) == q.vertices().len() as i64,
        format!("P(1) = {}", p.eval(1)),
    ));
    if v.is_identity() {
        let expected = a_polynomial(w)?.at_t_squared();
        report.verification.push(Check::new(
            "matches-a-polynomial",
            p == expected,
            format!("A_w(t^2) = {expected}"),
        ));
    }
    Ok(report)
}

/// Ascent polynomial `A_{v,w}(t)` from the oriented hull skeleton.
pub fn richardson_report(v: &Permutation, w: &Permutation, max_n: usize, limits: &HullLimits) -> Result<Report> {
    guard(w, max_n)?;
    let r = richardson_polynomial(v, w, limits)?;
    let mut report = Report::new("richardson", json!({ "v": v.to_string(), "w": w.to_string() }));
    let p = r.polynomial.at_t_squared();
    report.results = json!({
        "a_polynomial": r.polynomial,
        "retraction_exists": r.retraction_exists,
        "poincare_polynomial": if r.retraction_exists { json!(p) } else { Value::Null },
    });
    report.summary = vec![
        ("A_{v,w}(t)".into(), r.polynomial.to_string()),
        ("retraction from h".into(), r.retraction_exists.to_string()),
        (
            "P(Y_{v,w}, t)".into(),
            if r.retraction_exists {
                p.to_string()
            } else {
                "withheld (no height-induced retraction)".into()
            },
        ),
    ];
    Ok(report)
}

/// Per-vertex smoothness of `Q_{id,w⁻¹}` and descending-edge ranks.
pub fn smoothness_cmd_report(w: &Permutation, max_n: usize, limits: &HullLimits) -> Result<Report> {
    guard(w, max_n)?;
    let s = smoothness_report(w, limits)?;
    let mut report = Report::new("smoothness", json!({ "w": w.to_string() }));
    report.summary = vec![
        ("all smooth".into(), s.all_smooth.to_string()),
        ("smooth at w".into(), s.smooth_at_top.to_string()),
        ("descending independent at w".into(), s.top_descending_independent.to_string()),
        ("descending independent everywhere".into(), s.all_descending_independent.to_string()),
        (
            "palindromic".into(),
            s.palindromic.map_or_else(|| "n/a".into(), |b| b.to_string()),
        ),
    ];
    report.table = Some(Table {
        header: ["u", "mu", "simple", "smooth", "desc_edges", "desc_rank"]
            .map(String::from)
            .to_vec(),
        rows: s
            .vertices
            .iter()
            .map(|x| {
                vec![
                    x.u.to_string(),
                    tuple(&x.point),
                    x.is_simple.to_string(),
                    x.is_smooth.to_string(),
                    x.descending_edges.to_string(),
                    x.descending_rank.to_string(),
                ]
            })
            .collect(),
    });
    report.results = serde_json::to_value(&s)?;
    Ok(report)
}

/// Retraction-sequence existence for every pair `v ≤ w` in `S_n`: by the
/// default height function and by exhaustive search. Searches that exceed
/// the memo cap are reported as `unknown`.
pub fn survey_report(n: usize, max_n: usize, limits: &HullLimits) -> Result<Report> {
    if n > max_n {
        return Err(Error::GuardExceeded {
            what: "rank n (raise with --max-n)",
            actual: n,
            limit: max_n,
        });
    }
    let all: Vec<Permutation> = Permutation::all(n)?.collect();
    let a = default_height(n);
    let mut rows = Vec::new();
    let (mut by_h, mut by_search, mut all_simple, mut undecided) = (0, 0, 0, 0);
    let mut disagreements = Vec::new();
    for w in &all {
        for v in BruhatInterval::below(w)?.members() {
            let iv = BruhatInterval::new(v, w)?;
            let q = convex_hull_with_limits(&moment_vertices(&iv), limits)?;
            let simple = (0..q.vertices().len())
                .filter(|&i| q.classify_vertex(i).is_ok_and(|c| c.is_simple))
                .count();
            let h = h_retraction(&q, &a).is_ok();
            let found = match search_retraction(&q) {
                Ok(seq) => Some(seq.is_some()),
                Err(Error::SearchCap(_)) => None,
                Err(e) => return Err(e),
            };
            by_h += usize::from(h);
            by_search += usize::from(found == Some(true));
            undecided += usize::from(found.is_none());
            all_simple += usize::from(simple == q.vertices().len());
            if h && found == Some(false) {
                disagreements.push(format!("v={v} w={w}"));
            }
            rows.push(vec![
                v.to_string(),
                w.to_string(),
                q.vertices().len().to_string(),
                simple.to_string(),
                h.to_string(),
                found.map_or_else(|| "unknown".to_string(), |f| f.to_string()),
            ]);
        }
    }
    let mut report = Report::new("survey", json!({ "n": n, "hvec": a }));
    report.results = json!({
        "pairs": rows.len(),
        "simple_polytopes": all_simple,
        "height_retractions": by_h,
        "search_retractions": by_search,
        "search_cap_exceeded": undecided,
        "without_retraction": rows.iter().filter(|r| r[5] == "false").map(|r| [r[0].clone(), r[1].clone()]).collect::<Vec<_>>(),
    });
    report.summary = vec![
        ("pairs v <= w".into(), rows.len().to_string()),
        ("simple polytopes".into(), all_simple.to_string()),
        ("retraction from h".into(), by_h.to_string()),
        ("retraction by search".into(), by_search.to_string()),
        ("search cap exceeded".into(), undecided.to_string()),
    ];
    report.verification.push(Check::new(
        "search-finds-height-sequences",
        disagreements.is_empty(),
        if disagreements.is_empty() {
            "every height-induced sequence is also found by search".to_string()
        } else {
            disagreements.join("; ")
        },
    ));
    report.table = Some(Table {
        header: ["v", "w", "vertices", "simple", "h_retraction", "search_retraction"]
            .map(String::from)
            .to_vec(),
        rows,
    });
    Ok(report)
}

pub enum VerifyScope {
    /// Every `w ∈ S_4`.
    S4,
    Permutation(Permutation),
    /// A polytope read from JSON; the string is echoed into the report.
    Polytope(String, LatticePolytope),
}

/// Accumulates one check over many cases.
struct Tally {
    order: Vec<&'static str>,
    cases: BTreeMap<&'static str, (usize, usize, Vec<String>)>,
}

impl Tally {
    fn new() -> Self {
        Self {
            order: Vec::new(),
            cases: BTreeMap::new(),
        }
    }

    fn record(&mut self, name: &'static str, ok: bool, case: impl FnOnce() -> String) {
        if !self.cases.contains_key(name) {
            self.order.push(name);
        }
        let entry = self.cases.entry(name).or_default();
        entry.0 += 1;
        if !ok {
            entry.1 += 1;
            if entry.2.len() < MAX_COUNTEREXAMPLES {
                entry.2.push(case());
            }
        }
    }

    /// Marks a check as seen without recording a case.
    fn touch(&mut self, name: &'static str) {
        if !self.cases.contains_key(name) {
            self.order.push(name);
            self.cases.insert(name, (0, 0, Vec::new()));
        }
    }

    fn into_checks(self) -> Vec<Check> {
        self.order
            .into_iter()
            .map(|name| {
                let (total, failed, examples) = &self.cases[name];
                if *total == 0 {
                    Check::skip(name, "no applicable cases")
                } else if *failed == 0 {
                    Check::new(name, true, format!("{total} cases"))
                } else {
                    Check::new(
                        name,
                        false,
                        format!("{failed} of {total} cases failed: {}", examples.join("; ")),
                    )
                }
            })
            .collect()
    }
}

/// Runs every cross-check on `[id, w]` and `Q_{id,w⁻¹}`, returning
/// `P(Y_w, t)`.
fn verify_permutation(w: &Permutation, limits: &HullLimits, tally: &mut Tally) -> Result<IntPolynomial> {
    let n = w.n();
    let iv = BruhatInterval::below(w)?;
    let aw = a_polynomial(w)?;
    let p = aw.at_t_squared();
    let q = convex_hull_with_limits(&moment_vertices(&iv), limits)?;
    let a = default_height(n);

    tally.record("value-at-one", aw.eval(1) == iv.len() as i64, || format!("w={w}"));
    tally.record(
        "skeleton-oracle",
        bip_edges_combinatorial(w)? == q.skeleton(),
        || format!("w={w}"),
    );
    tally.record(
        "face-lattice",
        q.face_lattice_closed() && q.satisfies_euler_relation(),
        || format!("w={w} f={:?}", q.fvector()),
    );
    tally.record("degree-equals-dimension", aw.degree() == Some(q.dim()), || {
        format!("w={w} deg={:?} dim={}", aw.degree(), q.dim())
    });

    tally.touch("h-retraction");
    tally.touch("retraction-poincare");
    tally.touch("smooth-step-certificate");
    match h_retraction(&q, &a) {
        Ok(seq) => {
            tally.record("h-retraction", true, String::new);
            let from_seq = poincare_from_retraction(&seq);
            tally.record("retraction-poincare", from_seq == p, || {
                format!("w={w} sequence {from_seq} vs {p}")
            });
            tally.record("smooth-step-certificate", smooth_step_certificate(&q, &seq), || {
                format!("w={w}")
            });
        }
        Err(e) => tally.record("h-retraction", false, || format!("w={w}: {e}")),
    }

    tally.touch("search-retraction");
    match search_retraction(&q)? {
        Some(seq) => {
            let from_seq = poincare_from_retraction(&seq);
            tally.record("search-retraction", from_seq == p, || {
                format!("w={w} search gives {from_seq}")
            });
        }
        None => tally.record("search-retraction", false, || format!("w={w}: none found")),
    }

    tally.touch("betti-smooth");
    if q.is_smooth() {
        let b = betti_from_fvector(&q.fvector(), q.dim());
        tally.record("betti-smooth", b.as_ref().is_ok_and(|b| *b == p), || {
            format!("w={w} betti {b:?} vs {p}")
        });
    }

    let skel = orient_by_h(&q, &a)?;
    for u in iv.members() {
        let es = BruhatEdgeSet::new(u, w)?;
        let case = || format!("u={u} w={w}");
        tally.record("out-degree-at-most-one", es.plus_degrees_bounded(), case);
        tally.record("no-intermediate-values", es.no_intermediate_values(), case);
        tally.record("ascending-independent", es.plus_directions_independent(), case);
        let graph = AscentGraph::new(&es);
        tally.record("non-crossing-ascents", graph.as_ref().is_ok_and(|g| g.non_crossing()), case);
        let level = level_function(&es);
        tally.record("level-function", level.as_ref().is_ok_and(|f| f.satisfies(&es)), case);

        // the face cut out by the level function is the hull face spanned
        // by the ascending edges
        let vi = q.vertex_index(&moment_point(u));
        let hull_face = vi.and_then(|vi| ascending_face(&q, &skel, vi).ok());
        let matches = match (level, hull_face) {
            (Ok(f), Some(face)) => level_face(&es, &f, &iv).is_ok_and(|members| {
                let mut pts: Vec<Vec<i64>> = members.iter().map(moment_point).collect();
                pts.sort();
                let mut expected: Vec<Vec<i64>> = q
                    .face(face)
                    .vertices
                    .iter()
                    .map(|&i| q.vertices()[i].coords().to_vec())
                    .collect();
                expected.sort();
                pts == expected
            }),
            _ => false,
        };
        tally.record("level-face-matches-hull", matches, case);
    }
    Ok(p)
}

fn verify_polytope(q: &LatticePolytope, hvec: Option<&[i64]>, report: &mut Report) -> Result<()> {
    let mut checks = vec![Check::new(
        "face-lattice",
        q.face_lattice_closed() && q.satisfies_euler_relation(),
        format!("f = {:?}", q.fvector()),
    )];
    let mut results = serde_json::Map::new();
    results.insert("fvector".into(), json!(q.fvector()));
    results.insert("dim".into(), json!(q.dim()));
    report.summary.push(("f-vector".into(), format!("{:?}", q.fvector())));

    let mut from_h = None;
    let a = hvec.map_or_else(|| default_height(q.ambient_dim()), <[i64]>::to_vec);
    check_height_len(&a, q.ambient_dim())?;
    report.inputs["hvec"] = json!(a);
    match orient_by_h(q, &a) {
        Ok(skel) => {
            let mut asc = skel.ascents.clone();
            asc.sort_unstable_by(|x, y| y.cmp(x));
            results.insert("asc".into(), json!(asc));
            report.summary.push(("asc multiset".into(), format!("{asc:?}")));
            match h_retraction(q, &a) {
                Ok(seq) => {
                    let p = poincare_from_retraction(&seq);
                    checks.push(Check::new("h-retraction", true, format!("P = {p}")));
                    report.table = Some(step_table(q, &seq, &a, false));
                    results.insert(
                        "h_sequence".into(),
                        json!({ "steps": export_steps(q, &seq, Some(&a)), "poincare_polynomial": p }),
                    );
                    from_h = Some(p);
                }
                Err(e) => checks.push(Check::new("h-retraction", false, e.to_string())),
            }
        }
        Err(e) if hvec.is_none() => checks.push(Check::skip("h-retraction", format!("default height: {e}"))),
        Err(e) => return Err(e),
    }

    let found = search_retraction(q)?;
    let from_search = found.as_ref().map(poincare_from_retraction);
    match &from_search {
        Some(p) => {
            checks.push(Check::new("search-retraction", true, format!("P = {p}")));
            report.summary.push(("P(t)".into(), p.to_string()));
        }
        None => {
            checks.push(Check::new("search-retraction", false, "no retraction sequence exists"));
            report.summary.push(("P(t)".into(), "no retraction sequence exists".into()));
        }
    }
    results.insert("poincare_polynomial".into(), json!(from_search));
    if let (Some(x), Some(y)) = (&from_h, &from_search) {
        checks.push(Check::new("search-agrees-with-h", x == y, format!("{x} vs {y}")));
    }
    if q.is_smooth() {
        let b = betti_from_fvector(&q.fvector(), q.dim());
        let ok = match (&b, &from_search) {
            (Ok(b), Some(p)) => b == p,
            _ => false,
        };
        checks.push(Check::new("betti-smooth", ok, format!("{b:?}")));
    } else {
        checks.push(Check::skip("betti-smooth", "polytope is not smooth"));
    }
    report.results = Value::Object(results);
    report.verification = checks;
    Ok(())
}

pub fn verify_report(scope: &VerifyScope, hvec: Option<&[i64]>, max_n: usize, limits: &HullLimits) -> Result<Report> {
    match scope {
        VerifyScope::S4 | VerifyScope::Permutation(_) => {
            let ws: Vec<Permutation> = match scope {
                VerifyScope::Permutation(w) => {
                    guard(w, max_n)?;
                    vec![w.clone()]
                }
                _ => Permutation::all(4)?.collect(),
            };
            let inputs = match scope {
                VerifyScope::Permutation(w) => json!({ "w": w.to_string() }),
                _ => json!({ "scope": "S4" }),
            };
            let mut report = Report::new("verify", inputs);
            let mut tally = Tally::new();
            let mut polys = Vec::with_capacity(ws.len());
            for w in &ws {
                let p = verify_permutation(w, limits, &mut tally)?;
                polys.push(json!({ "w": w.to_string(), "poincare_polynomial": p }));
            }
            report.results = json!({ "cases": ws.len(), "polynomials": polys });
            report.verification = tally.into_checks();
            let passed = report.verification.iter().filter(|c| c.outcome == Outcome::Pass).count();
            report.summary = vec![
                ("cases".into(), ws.len().to_string()),
                ("checks passed".into(), format!("{passed}/{}", report.verification.len())),
            ];
            Ok(report)
        }
        VerifyScope::Polytope(name, q) => {
            let mut report = Report::new("verify", json!({ "polytope": name, "hvec": hvec }));
            verify_polytope(q, hvec, &mut report)?;
            Ok(report)
        }
    }
}
