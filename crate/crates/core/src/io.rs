//! Family files and report rendering.
//!
//! Families are stored as `{"n": 7, "k": 3, "edges": [[1,2,3], ...]}` with
//! 1-based vertices. Reports render deterministically as JSON (sorted keys),
//! CSV (fixed columns) or a plain-text table.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::certificates::{Check, CrossCertificate, EkrCertificate, Side, WitnessReport};
use crate::error::{Error, Result};
use crate::exact::{to_decimal_string, to_fraction_string};
use crate::family::Family;
use crate::fractional::{FractionalKind, FractionalSolution, ThresholdReport};
use crate::matching::{Branch, DegreeMatching, Matching};
use crate::search::{ScanKind, ScanRecord, ScanReport, Verdict};
use crate::spectral::{KneserSpectrum, LevelMasses, SpectralMass};
use crate::subset::{unrank_colex_unchecked, KSubset, Vertex};
use crate::Rational;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    n: u32,
    k: u32,
    edges: Vec<Vec<i64>>,
}

/// Parses and validates a family file.
pub fn parse_family(bytes: &[u8]) -> Result<Family> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("not UTF-8: {e}")))?;
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (n, k) = (file.n, file.k);
    let mut family = Family::empty(n, k).map_err(|e| Error::Parse(e.to_string()))?;
    for (i, edge) in file.edges.iter().enumerate() {
        if edge.len() != k as usize {
            return Err(Error::Parse(format!(
                "edge {} has {} vertices but the family is {k}-uniform",
                i + 1,
                edge.len()
            )));
        }
        let mut vs = Vec::with_capacity(edge.len());
        for &v in edge {
            if v < 1 || v > n as i64 {
                return Err(Error::Parse(format!("edge {} uses vertex {v} outside [1, {n}]", i + 1)));
            }
            vs.push(v as Vertex);
        }
        let e = KSubset::from_vertices(&vs)
            .map_err(|_| Error::Parse(format!("edge {} repeats a vertex", i + 1)))?;
        if !family.insert(e).map_err(|err| Error::Parse(err.to_string()))? {
            return Err(Error::Parse(format!("duplicate edge {e:?}")));
        }
    }
    Ok(family)
}

pub fn read_family(path: &Path) -> Result<Family> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_family(&bytes)
}

pub fn family_value(f: &Family) -> Value {
    json!({ "n": f.n(), "k": f.k(), "edges": f.edges_lex() })
}

/// Canonical single-line JSON: sorted keys, edges in lexicographic order.
pub fn serialize_family(f: &Family) -> String {
    let mut s = serde_json::to_string(&family_value(f)).expect("plain JSON values");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A rendered-ready report: a JSON body, a fixed-column table for CSV and
/// text, and summary lines for text.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub body: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<(String, String)>,
    /// Whether the text rendering includes the table.
    pub text_table: bool,
}

impl Report {
    fn new(kind: &str, header: Vec<&'static str>) -> Self {
        let mut body = Map::new();
        body.insert("report".into(), Value::from(kind));
        Report {
            body: Value::Object(body),
            header,
            rows: Vec::new(),
            summary: vec![("report".into(), kind.into())],
            text_table: true,
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.body.as_object_mut().expect("object body").insert(key.into(), value);
    }

    /// Sets a JSON field and a matching summary line.
    fn field(&mut self, key: &str, value: Value, text: impl Into<String>) {
        self.set(key, value);
        self.summary.push((key.into(), text.into()));
    }

    fn rational(&mut self, key: &str, r: &Rational) {
        self.field(key, rational_value(r), rational_text(r));
    }
}

pub fn rational_value(r: &Rational) -> Value {
    let decimal: f64 = to_decimal_string(r).parse().unwrap_or(f64::NAN);
    json!({ "exact": to_fraction_string(r), "decimal": decimal })
}

fn rational_text(r: &Rational) -> String {
    let exact = to_fraction_string(r);
    if r.is_integer() {
        exact
    } else {
        format!("{exact} (~{})", to_decimal_string(r))
    }
}

fn edge_text(e: KSubset) -> String {
    let vs: Vec<String> = e.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", vs.join(","))
}

fn edges_text(f: &Family) -> String {
    f.edges_lex()
        .iter()
        .map(|e| format!("{{{}}}", e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a report. Identical reports give identical bytes.
pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&report.body).expect("plain JSON values");
            out.push(b'\n');
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.header).expect("in-memory write");
            for row in &report.rows {
                w.write_record(row).expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let width = report.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &report.summary {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    if report.rows.is_empty() || !report.text_table {
        return out;
    }
    out.push('\n');
    let mut widths: Vec<usize> = report.header.iter().map(|h| h.len()).collect();
    for row in &report.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(report.header.clone()));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    for row in &report.rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Rounds to 10 significant digits, matching the rational decimal fields.
fn round_sig(x: f64) -> f64 {
    format!("{x:.9e}").parse().unwrap_or(x)
}

fn side_value(s: &Side) -> Value {
    match s {
        Side::Exact(r) => rational_value(r),
        _ => json!({ "exact": s.to_string(), "decimal": round_sig(s.approx()) }),
    }
}

fn check_value(c: &Check) -> Value {
    json!({
        "label": c.label,
        "lhs": side_value(&c.lhs),
        "relation": c.relation.to_string(),
        "rhs": side_value(&c.rhs),
        "outcome": c.outcome.to_string(),
        "holds": c.holds(),
    })
}

const CHECK_HEADER: [&str; 7] = ["inequality", "lhs", "relation", "rhs", "outcome", "lhs_decimal", "rhs_decimal"];

fn check_row(c: &Check) -> Vec<String> {
    vec![
        c.label.to_string(),
        c.lhs.to_string(),
        c.relation.to_string(),
        c.rhs.to_string(),
        c.outcome.to_string(),
        round_sig(c.lhs.approx()).to_string(),
        round_sig(c.rhs.approx()).to_string(),
    ]
}

fn add_checks(r: &mut Report, checks: &[&Check]) {
    r.set("checks", Value::Array(checks.iter().map(|c| check_value(c)).collect()));
    r.rows = checks.iter().map(|c| check_row(c)).collect();
}

pub fn ekr_report(c: &EkrCertificate) -> Report {
    let mut r = Report::new("certify-ekr", CHECK_HEADER.to_vec());
    r.field("n", c.n.into(), c.n.to_string());
    r.field("k", c.k.into(), c.k.to_string());
    r.field("e", c.e.into(), c.e.to_string());
    r.field("min_degree", c.min_degree.into(), c.min_degree.to_string());
    r.rational("f0", &c.masses.f0);
    r.rational("f1", &c.masses.f1);
    r.rational("residual", &c.masses.residual);
    r.rational("threshold", &c.threshold);
    r.field("star_count", c.star_count.to_string().into(), c.star_count.to_string());
    r.rational("lower_bound_rhs", &c.lower_bound_rhs);
    r.rational("upper_bound_rhs", &c.upper_bound_rhs);
    r.field("degree_condition", c.degree_condition.into(), c.degree_condition.to_string());
    r.field("witness_vertex", c.witness.witness_vertex.into(), c.witness.witness_vertex.to_string());
    r.field("dichotomy", c.dichotomy.to_string().into(), c.dichotomy.to_string());
    r.field("is_star", c.is_star.into(), c.is_star.to_string());
    let holds: Map<String, Value> = c.checks.iter().map(|x| (x.label.to_string(), x.holds().into())).collect();
    r.set("holds", Value::Object(holds));
    r.field("all_hold", c.all_hold().into(), c.all_hold().to_string());
    add_checks(&mut r, &c.checks.iter().collect::<Vec<_>>());
    r
}

pub fn witness_report(f: &Family, w: &WitnessReport) -> Report {
    let mut r = Report::new("certify-witness", CHECK_HEADER.to_vec());
    r.field("n", f.n().into(), f.n().to_string());
    r.field("k", f.k().into(), f.k().to_string());
    r.field("e", f.edge_count().into(), f.edge_count().to_string());
    r.field("witness_vertex", w.witness_vertex.into(), w.witness_vertex.to_string());
    r.rational("lhs", &w.lhs);
    r.rational("rhs_squared", &w.rhs_squared);
    r.rational("f1", &w.f1);
    r.field("outcome", w.outcome.to_string().into(), w.outcome.to_string());
    r.field("holds", w.outcome.holds().into(), w.outcome.holds().to_string());
    add_checks(&mut r, &[&w.check()]);
    r
}

pub fn cross_report(c: &CrossCertificate) -> Report {
    let mut r = Report::new("certify-cross", CHECK_HEADER.to_vec());
    r.field("n", c.n.into(), c.n.to_string());
    r.field("k", c.k.into(), c.k.to_string());
    r.field("b_size", c.b_size.into(), c.b_size.to_string());
    r.field("c_size", c.c_size.into(), c.c_size.to_string());
    r.field("b_min_degree", c.b_min_degree.into(), c.b_min_degree.to_string());
    r.field("c_min_degree", c.c_min_degree.into(), c.c_min_degree.to_string());
    r.rational("b_mass", &c.b_mass);
    r.rational("c_mass", &c.c_mass);
    r.field("ineq10_holds", c.ineq10_holds().into(), c.ineq10_holds().to_string());
    r.field("product_bound_holds", c.product_bound_holds().into(), c.product_bound_holds().to_string());
    add_checks(&mut r, &[&c.tail_bound, &c.ineq10, &c.product_bound]);
    r
}

const SPECTRUM_HEADER: [&str; 5] = ["j", "eigenvalue", "multiplicity", "mass", "mass_decimal"];

fn spectrum_base(spectrum: &KneserSpectrum, f: &Family) -> Report {
    let mut r = Report::new("spectrum", SPECTRUM_HEADER.to_vec());
    r.field("n", spectrum.n.into(), spectrum.n.to_string());
    r.field("k", spectrum.k.into(), spectrum.k.to_string());
    r.field("e", f.edge_count().into(), f.edge_count().to_string());
    r
}

fn spectrum_rows(r: &mut Report, spectrum: &KneserSpectrum, masses: &[Option<&Rational>]) {
    let mut levels = Vec::new();
    for (level, mass) in spectrum.levels.iter().zip(masses) {
        let mut obj = json!({
            "j": level.j,
            "eigenvalue": level.eigenvalue.to_string(),
            "multiplicity": level.multiplicity.to_string(),
        });
        if let Some(m) = mass {
            obj["mass"] = rational_value(m);
        }
        levels.push(obj);
        r.rows.push(vec![
            level.j.to_string(),
            level.eigenvalue.to_string(),
            level.multiplicity.to_string(),
            mass.map(to_fraction_string).unwrap_or_default(),
            mass.map(to_decimal_string).unwrap_or_default(),
        ]);
    }
    r.set("levels", Value::Array(levels));
}

/// Eigenvalues with the first two masses and the combined remainder.
pub fn spectrum_report(spectrum: &KneserSpectrum, f: &Family, m: &LevelMasses) -> Report {
    let mut r = spectrum_base(spectrum, f);
    r.rational("f0", &m.f0);
    r.rational("f1", &m.f1);
    r.rational("residual", &m.residual);
    let mut masses: Vec<Option<&Rational>> = vec![Some(&m.f0), Some(&m.f1)];
    masses.resize(spectrum.levels.len(), None);
    spectrum_rows(&mut r, spectrum, &masses);
    r
}

/// Every eigenspace mass.
pub fn spectrum_full_report(spectrum: &KneserSpectrum, f: &Family, m: &SpectralMass) -> Report {
    let mut r = spectrum_base(spectrum, f);
    r.rational("total", &m.total);
    r.field("quadratic_form", m.quad_form.to_string().into(), m.quad_form.to_string());
    let sum = m.spectral_sum(spectrum);
    r.rational("spectral_sum", &sum);
    let ok = m.is_consistent(f, spectrum);
    r.field("consistent", ok.into(), ok.to_string());
    let masses: Vec<Option<&Rational>> = m.masses.iter().map(Some).collect();
    spectrum_rows(&mut r, spectrum, &masses);
    r
}

fn matching_value(m: &Matching) -> Value {
    Value::Array(m.edges().iter().map(|e| json!(e.elements())).collect())
}

pub fn matching_report(nu: usize, m: &Matching) -> Report {
    let mut r = Report::new("matching", vec!["edge"]);
    r.field("matching_number", nu.into(), nu.to_string());
    r.set("witness", matching_value(m));
    r.rows = m.edges().iter().map(|&e| vec![edge_text(e)]).collect();
    r
}

pub fn fractional_report(f: &Family, x: &FractionalSolution) -> Report {
    let (kind, item) = match x.kind {
        FractionalKind::Matching => ("fractional-matching", "edge"),
        FractionalKind::Cover => ("fractional-cover", "vertex"),
    };
    let mut r = Report::new(kind, vec![item, "weight", "weight_decimal"]);
    r.rational("objective", &x.objective);
    let label = |key: u64, kind: FractionalKind| match kind {
        FractionalKind::Matching => edge_text(unrank_colex_unchecked(key, f.k(), f.n())),
        FractionalKind::Cover => key.to_string(),
    };
    let other = match x.kind {
        FractionalKind::Matching => FractionalKind::Cover,
        FractionalKind::Cover => FractionalKind::Matching,
    };
    let weights = |map: &std::collections::BTreeMap<u64, Rational>, kind| {
        Value::Array(
            map.iter()
                .filter(|(_, w)| **w != Rational::default())
                .map(|(&key, w)| json!({ "item": label(key, kind), "weight": rational_value(w) }))
                .collect(),
        )
    };
    r.set("weights", weights(&x.weights, x.kind));
    r.set("certificate", weights(&x.certificate, other));
    r.rows = x
        .weights
        .iter()
        .filter(|(_, w)| **w != Rational::default())
        .map(|(&key, w)| vec![label(key, x.kind), to_fraction_string(w), to_decimal_string(w)])
        .collect();
    r
}

fn branch_text(b: &Branch) -> String {
    match b {
        Branch::Single => "single".into(),
        Branch::Pair => "pair".into(),
        Branch::HighDegree { vertex } => format!("high-degree({vertex})"),
        Branch::Rainbow { vertices } => format!(
            "rainbow({})",
            vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        ),
        Branch::Extend => "extend".into(),
    }
}

pub fn degree_matching_report(s: usize, d: &DegreeMatching) -> Report {
    let mut r = Report::new("matching-by-degree", vec!["s", "active_vertices", "branch"]);
    r.field("s", s.into(), s.to_string());
    r.field("outside_guarantee", d.outside_guarantee.into(), d.outside_guarantee.to_string());
    r.field("matching", matching_value(&d.matching), {
        d.matching.edges().iter().map(|&e| edge_text(e)).collect::<Vec<_>>().join(" ")
    });
    r.set(
        "trace",
        Value::Array(
            d.trace
                .iter()
                .map(|t| json!({ "s": t.s, "active": t.active.elements(), "branch": branch_text(&t.branch) }))
                .collect(),
        ),
    );
    r.rows = d
        .trace
        .iter()
        .map(|t| vec![t.s.to_string(), t.active.len().to_string(), branch_text(&t.branch)])
        .collect();
    r
}

pub fn threshold_report(t: &ThresholdReport) -> Report {
    let mut r = Report::new("fractional-threshold", vec![]);
    r.field("n", t.n.into(), t.n.to_string());
    r.field("k", t.k.into(), t.k.to_string());
    r.field("d", t.d.into(), t.d.to_string());
    r.field("s", t.s.into(), t.s.to_string());
    r.field("threshold", t.threshold.to_string().into(), t.threshold.to_string());
    r.field("min_degree", t.min_degree.into(), t.min_degree.to_string());
    r.rational("nu_star", &t.nu_star);
    r.field("holds", t.holds.into(), t.holds.to_string());
    r
}

fn record_value(rec: &ScanRecord) -> Value {
    let mut v = json!({
        "index": rec.index,
        "family": family_value(&rec.family),
        "value": rec.value,
        "is_star": rec.is_star,
        "same_center_stars": rec.same_center_stars,
    });
    if let Some(p) = &rec.partner {
        v["partner"] = family_value(p);
    }
    if let Some(nu) = rec.matching_number {
        v["matching_number"] = nu.into();
    }
    v
}

fn record_row(rec: &ScanRecord) -> Vec<String> {
    vec![
        rec.index.to_string(),
        rec.family.edge_count().to_string(),
        edges_text(&rec.family),
        rec.partner.as_ref().map(edges_text).unwrap_or_default(),
        rec.value.to_string(),
        rec.is_star.to_string(),
        rec.same_center_stars.to_string(),
        rec.matching_number.map(|m| m.to_string()).unwrap_or_default(),
    ]
}

pub fn scan_report(s: &ScanReport) -> Report {
    let kind = match s.kind {
        ScanKind::Ekr => "scan-ekr",
        ScanKind::Cross => "scan-cross",
        ScanKind::Conjecture => "scan-conjecture",
    };
    let header = vec!["index", "edges", "family", "partner", "value", "is_star", "same_center_stars", "matching_number"];
    let mut r = Report::new(kind, header);
    r.field("n", s.n.into(), s.n.to_string());
    r.field("k", s.k.into(), s.k.to_string());
    if let Some(sv) = s.s {
        r.field("s", sv.into(), sv.to_string());
    }
    r.field("families_examined", s.families_examined.into(), s.families_examined.to_string());
    if s.kind == ScanKind::Cross {
        r.field("skipped", s.skipped.into(), s.skipped.to_string());
    }
    r.field("bound", s.bound.to_string().into(), s.bound.to_string());
    let best = s.best.as_ref().map(|b| b.value);
    r.field("best_value", best.into(), best.map_or("none".into(), |b| b.to_string()));
    r.field("maximizers", s.maximizers.into(), s.maximizers.to_string());
    r.field("maximizers_are_stars", s.maximizers_are_stars.into(), s.maximizers_are_stars.to_string());
    r.field("max_other", s.max_other.into(), s.max_other.map_or("none".into(), |m| m.to_string()));
    r.field("counterexamples", s.counterexamples.len().into(), s.counterexamples.len().to_string());
    let verdict = match s.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::ReportOnly => "report-only",
    };
    r.field("verdict", verdict.into(), verdict);
    if let Some(b) = &s.best {
        r.set("best", record_value(b));
        r.summary.push(("best".into(), edges_text(&b.family)));
    }
    r.set("counterexample_records", Value::Array(s.counterexamples.iter().map(record_value).collect()));
    r.set("records", Value::Array(s.records.iter().map(record_value).collect()));
    r.rows = s.records.iter().map(record_row).collect();
    r.text_table = false;
    r
}
