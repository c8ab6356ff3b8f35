//! Group-spec files, analysis reports, and their serializations.
//!
//! Spec files are JSON objects tagged by `kind`, for example
//! `{"kind":"metacyclic","m":12,"n":2,"r":5}`. Reports are JSON with a fixed
//! key order, or a plain-text summary. Apart from the `timing_ms` fields,
//! rendering is deterministic.

use std::fmt::Write as _;

use serde::Serialize;

use crate::characterizations::{verify_equivalences_in, Analysis, TheoremReport, VerifyConfig};
use crate::constructors::GroupSpec;
use crate::corpus::{CorpusResult, TheoremSummary, WitnessLabel};
use crate::cut::{classify_with, decide_cut};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::ProfileSummary;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: u8 = 0;
pub const EXIT_EXPECTATION_MISMATCH: u8 = 2;
pub const EXIT_PARSE_ERROR: u8 = 64;
pub const EXIT_ORDER_CAP: u8 = 65;
pub const EXIT_DISAGREEMENT: u8 = 70;

/// Process exit status for an error raised while reading or building a group.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::OrderCapExceeded { .. } => EXIT_ORDER_CAP,
        Error::Parse { .. }
        | Error::InvalidParameters(_)
        | Error::InvalidMetacyclicParameters { .. }
        | Error::NotAPrime(_)
        | Error::NotAPermutation { .. }
        | Error::NotAGroup(_)
        | Error::NotNormal
        | Error::ElementOutOfRange { .. } => EXIT_PARSE_ERROR,
        Error::CenterTooLarge { .. } | Error::HypothesisViolated(_) => EXIT_DISAGREEMENT,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Parses and validates a group-spec document.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

/// Canonical single-line JSON for a descriptor.
pub fn render_spec(spec: &GroupSpec) -> String {
    serde_json::to_string(spec).expect("descriptors serialize")
}

/// The Cayley table of `g` as a `table` descriptor.
pub fn table_spec(g: &FiniteGroup) -> GroupSpec {
    GroupSpec::Table {
        order: g.order() as u64,
        table: g.cayley_table(),
    }
}

/// Order, commutativity, exponent and cut verdict of a derived group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub cut: bool,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupSummary {
            order: g.order(),
            abelian: g.is_abelian(),
            exponent: g.exponent(),
            cut: decide_cut(g).has_cut,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub group: GroupSpec,
    pub order: usize,
    pub pi: Vec<u64>,
    pub structure: ProfileSummary,
    pub cut: bool,
    pub inverse_semi_rational: bool,
    pub rational: bool,
    pub central_height_label: Option<u8>,
    pub witnesses: Vec<WitnessLabel>,
    pub center: GroupSummary,
    pub central_quotient: GroupSummary,
    pub theorems: Vec<TheoremSummary>,
    pub timing_ms: f64,
}

/// Full analysis of one group. `timing_ms` is left at zero for the caller.
pub fn build_report(spec: &GroupSpec, g: &FiniteGroup, config: &VerifyConfig) -> ReportDocument {
    let a = Analysis::new(g);
    let cls = classify_with(g, &a.verdict);
    let center = g.center();
    let quotient = g.quotient(&center).expect("the center is normal");
    let reports = verify_equivalences_in(&a, config);
    ReportDocument {
        tool_version: TOOL_VERSION.into(),
        group: spec.clone(),
        order: g.order(),
        pi: a.profile.pi.clone(),
        structure: a.profile.summary(),
        cut: cls.cut,
        inverse_semi_rational: cls.inverse_semi_rational,
        rational: cls.rational,
        central_height_label: cls.central_height_label,
        witnesses: a
            .verdict
            .witnesses
            .iter()
            .map(|w| WitnessLabel {
                element: g.label(w.element),
                exponent: w.exponent,
            })
            .collect(),
        center: GroupSummary::of(&center.to_group()),
        central_quotient: GroupSummary::of(&quotient),
        theorems: reports.iter().map(TheoremSummary::from).collect(),
        timing_ms: 0.0,
    }
}

fn opt_bool(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

fn summary_line(s: &GroupSummary) -> String {
    format!(
        "order={} abelian={} exponent={} cut={}",
        s.order, s.abelian, s.exponent, s.cut
    )
}

fn cut_line(cut: bool, witnesses: &[WitnessLabel]) -> String {
    match witnesses.first() {
        Some(w) if !cut => format!("cut: false  witness: ({}, j={})", w.element, w.exponent),
        _ => format!("cut: {cut}"),
    }
}

pub fn render_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("reports serialize") + "\n",
        Format::Text => {
            let mut out = String::new();
            let s = &doc.structure;
            let _ = writeln!(out, "group: {}", render_spec(&doc.group));
            let _ = writeln!(out, "order: {}", doc.order);
            let _ = writeln!(out, "pi: {:?}", doc.pi);
            let _ = writeln!(
                out,
                "structure: solvable={} nilpotent={} class={} eppo={} real_group={} exponent={}",
                s.solvable,
                s.nilpotent,
                s.nilpotency_class
                    .map_or_else(|| "-".to_string(), |c| c.to_string()),
                s.eppo,
                s.real_group,
                s.exponent
            );
            let _ = writeln!(out, "{}", cut_line(doc.cut, &doc.witnesses));
            let _ = writeln!(out, "witnesses: {}", doc.witnesses.len());
            let _ = writeln!(out, "inverse_semi_rational: {}", doc.inverse_semi_rational);
            let _ = writeln!(out, "rational: {}", doc.rational);
            let _ = writeln!(
                out,
                "central_height: {}",
                doc.central_height_label
                    .map_or_else(|| "-".to_string(), |c| c.to_string())
            );
            let _ = writeln!(out, "center: {}", summary_line(&doc.center));
            let _ = writeln!(
                out,
                "central_quotient: {}",
                summary_line(&doc.central_quotient)
            );
            let _ = writeln!(out, "theorems:");
            for t in &doc.theorems {
                let _ = writeln!(
                    out,
                    "  {:<34} applicable={:<5} predicted={:<5} agrees={}",
                    t.name,
                    t.applicable,
                    opt_bool(t.predicted),
                    opt_bool(t.agrees)
                );
            }
            let _ = writeln!(out, "time: {:.3} ms", doc.timing_ms);
            out
        }
    }
}

/// Full characterization reports, including per-class traces.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyDocument {
    pub tool_version: String,
    pub group: GroupSpec,
    pub order: usize,
    pub cut: bool,
    pub reports: Vec<TheoremReport>,
    pub disagreements: usize,
}

pub fn render_verify(doc: &VerifyDocument, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("reports serialize") + "\n",
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "group: {}", render_spec(&doc.group));
            let _ = writeln!(out, "order: {}", doc.order);
            let _ = writeln!(out, "cut: {}", doc.cut);
            for r in &doc.reports {
                let _ = writeln!(
                    out,
                    "{}: applicable={} predicted={} agrees={}",
                    r.name,
                    r.applicable,
                    opt_bool(r.predicted),
                    opt_bool(r.agrees_with_decider)
                );
                for t in &r.trace {
                    let _ = writeln!(
                        out,
                        "    {:<16} o={:<4} {:<5} {}",
                        t.label, t.order, t.holds, t.clause
                    );
                }
                for n in &r.notes {
                    let _ = writeln!(out, "    note: {n}");
                }
            }
            let _ = writeln!(out, "disagreements: {}", doc.disagreements);
            out
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusDocument<'a> {
    pub tool_version: &'a str,
    #[serde(flatten)]
    pub result: &'a CorpusResult,
}

pub fn render_corpus(result: &CorpusResult, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = CorpusDocument {
                tool_version: TOOL_VERSION,
                result,
            };
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<28} {:>6} {:<5} {:<8} {:<6} theorems (applicable/agree)",
                "id", "order", "cut", "rational", "oracle"
            );
            for e in &result.entries {
                if let Some(err) = &e.error {
                    let status = if e.skipped { "skipped" } else { "error" };
                    let _ = writeln!(out, "{:<28} {status}: {err}", e.id);
                    continue;
                }
                let cls = e
                    .classification
                    .as_ref()
                    .expect("analyzed entries are classified");
                let applicable = e.theorems.iter().filter(|t| t.applicable).count();
                let agree = e.theorems.iter().filter(|t| t.agrees == Some(true)).count();
                let _ = writeln!(
                    out,
                    "{:<28} {:>6} {:<5} {:<8} {:<6} {applicable}/{agree}",
                    e.id,
                    e.order.unwrap_or(0),
                    cls.cut,
                    cls.rational,
                    opt_bool(e.oracle_agrees),
                );
                for m in e
                    .expectation_mismatches
                    .iter()
                    .chain(&e.invariant_violations)
                {
                    let _ = writeln!(out, "    ! {m}");
                }
            }
            let c = &result.counters;
            let _ = writeln!(
                out,
                "two-group sums: {} pairs, {} disagreements",
                c.two_group_pairs, c.two_group_pair_disagreements
            );
            let _ = writeln!(
                out,
                "class-2 sums: {} pairs, {} failures",
                c.class2_pairs, c.class2_pair_failures
            );
            let _ = writeln!(
                out,
                "analyzed: {}  skipped: {}  errors: {}  agreements: {}  disagreements: {}  oracle disagreements: {}  expectation mismatches: {}  invariant violations: {}",
                c.groups_analyzed,
                c.skipped,
                c.errors,
                c.agreements,
                c.disagreements,
                c.oracle_disagreements,
                c.expectation_mismatches,
                c.invariant_violations
            );
            let _ = writeln!(out, "time: {:.1} ms", result.timing_ms);
            out
        }
    }
}
