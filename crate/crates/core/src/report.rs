//! Text and JSON rendering of every report type.
//!
//! Each report has a fixed key set in JSON; optional values serialize as
//! `null` rather than disappearing. Rationals are exact strings, bounds are
//! floats.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::{CheckOutcome, Generated};
use crate::certifier::{CertificationReport, InclusionRow};
use crate::dynamics::{
    BoundViolation, DynamicsReport, FuzzSummary, Iterate, IterationTrace, Orbit, Start,
    TheoremCheck, Termination,
};
use crate::format::write_instance;
use crate::instance::Instance;
use crate::space::{PointId, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

fn labels(inst: &Instance, points: &[PointId]) -> Vec<String> {
    points.iter().map(|p| inst.label(*p).to_string()).collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- validate

#[derive(Serialize)]
struct ViolationJson<'a> {
    axiom: &'a str,
    points: Vec<&'a str>,
    detail: &'a str,
}

#[derive(Serialize)]
struct ValidationJson<'a> {
    valid: bool,
    points: usize,
    violations: Vec<ViolationJson<'a>>,
}

pub fn render_validation(
    point_labels: &[String],
    report: &ValidationReport,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => json(&ValidationJson {
            valid: report.is_ok(),
            points: point_labels.len(),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationJson {
                    axiom: v.axiom.name(),
                    points: v.indices.iter().map(|i| point_labels[*i].as_str()).collect(),
                    detail: &v.detail,
                })
                .collect(),
        }),
        OutputFormat::Text => {
            if report.is_ok() {
                format!("valid metric on {} points\n", point_labels.len())
            } else {
                format!("invalid metric\n{report}\n")
            }
        }
    }
}

// ----------------------------------------------------------------- certify

#[derive(Serialize)]
struct CertifyJson {
    class: &'static str,
    semantics: &'static str,
    constant: String,
    threshold: String,
    verdict: &'static str,
    witness: Option<Vec<String>>,
    sampled: bool,
}

fn certify_json(inst: &Instance, r: &CertificationReport) -> CertifyJson {
    CertifyJson {
        class: r.class.id(),
        semantics: r.semantics.id(),
        constant: r.constant.to_string(),
        threshold: r.threshold.to_string(),
        verdict: r.verdict.id(),
        witness: r.witness.as_deref().map(|w| labels(inst, w)),
        sampled: r.sampled,
    }
}

fn certify_text(out: &mut String, inst: &Instance, r: &CertificationReport) {
    let witness = match &r.witness {
        Some(w) => format!("({})", labels(inst, w).join(", ")),
        None => "none".to_string(),
    };
    let _ = writeln!(out, "class      {}", r.class);
    let _ = writeln!(out, "semantics  {}", r.semantics);
    let _ = writeln!(out, "constant   {}", r.constant);
    let _ = writeln!(out, "threshold  {}", r.threshold);
    let _ = writeln!(out, "verdict    {}", r.verdict);
    let _ = writeln!(out, "witness    {witness}");
    let _ = writeln!(out, "sampled    {}", r.sampled);
}

pub fn render_certifications(
    inst: &Instance,
    reports: &[CertificationReport],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            json(&reports.iter().map(|r| certify_json(inst, r)).collect::<Vec<_>>())
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                certify_text(&mut out, inst, r);
            }
            out
        }
    }
}

// ---------------------------------------------------------------- dynamics

#[derive(Serialize)]
struct PeriodicJson {
    point: String,
    period: usize,
}

#[derive(Serialize)]
struct OrbitJson {
    point: String,
    tail: Option<usize>,
    cycle: Option<usize>,
    escapes_after: Option<usize>,
}

#[derive(Serialize)]
struct DynamicsJson {
    fixed_points: Vec<String>,
    periodic: Vec<PeriodicJson>,
    orbits: Vec<OrbitJson>,
    max_period: usize,
    sampled: bool,
}

pub fn render_dynamics(inst: &Instance, d: &DynamicsReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&DynamicsJson {
            fixed_points: labels(inst, &d.fixed_points),
            periodic: d
                .periodic
                .iter()
                .map(|(p, period)| PeriodicJson {
                    point: inst.label(*p).to_string(),
                    period: *period,
                })
                .collect(),
            orbits: d
                .orbits
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    let point = inst.label(PointId(i)).to_string();
                    match o {
                        Orbit::Cycle { tail, cycle } => OrbitJson {
                            point,
                            tail: Some(*tail),
                            cycle: Some(*cycle),
                            escapes_after: None,
                        },
                        Orbit::Escapes { steps } => OrbitJson {
                            point,
                            tail: None,
                            cycle: None,
                            escapes_after: Some(*steps),
                        },
                    }
                })
                .collect(),
            max_period: d.max_period,
            sampled: inst.is_sampled(),
        }),
        OutputFormat::Text => {
            let mut out = String::new();
            let set = |ps: &[PointId]| format!("{{{}}}", labels(inst, ps).join(", "));
            let _ = writeln!(out, "fixed points  {}", set(&d.fixed_points));
            for period in 2..=d.max_period {
                let ps = d.with_period(period);
                if !ps.is_empty() {
                    let _ = writeln!(out, "period {period}      {}", set(&ps));
                }
            }
            let _ = writeln!(out, "orbits");
            let width = inst.space().labels().iter().map(|l| l.len()).max().unwrap_or(1);
            for (i, o) in d.orbits.iter().enumerate() {
                let label = inst.label(PointId(i));
                let _ = match o {
                    Orbit::Cycle { tail, cycle } => {
                        writeln!(out, "  {label:<width$}  tail {tail}, cycle {cycle}")
                    }
                    Orbit::Escapes { steps } => {
                        writeln!(out, "  {label:<width$}  leaves the sample after {steps} steps")
                    }
                };
            }
            out
        }
    }
}

// ------------------------------------------------------------------- trace

fn iterate_name(inst: &Instance, a: &Iterate) -> String {
    match a {
        Iterate::Point(p) => inst.label(*p).to_string(),
        Iterate::Coord(x) => x.to_string(),
    }
}

#[derive(Serialize)]
struct TraceRowJson {
    index: usize,
    iterate: String,
    step: Option<String>,
    bound: Option<f64>,
}

#[derive(Serialize)]
struct TraceJson {
    start: String,
    termination: &'static str,
    termination_index: Option<usize>,
    cycle_length: Option<usize>,
    lambda0: Option<String>,
    k: Option<String>,
    k0: Option<String>,
    bound_class: Option<&'static str>,
    bound_constant: Option<String>,
    rows: Vec<TraceRowJson>,
}

pub fn render_trace(inst: &Instance, t: &IterationTrace, format: OutputFormat) -> String {
    let start = match &t.start {
        Start::Point(p) => inst.label(*p).to_string(),
        Start::Coord(x) => x.to_string(),
    };
    let (termination_index, cycle_length) = match t.termination {
        Termination::FixedPointHit { index } | Termination::ToleranceMet { index } => {
            (Some(index), None)
        }
        Termination::CycleDetected { length } => (None, Some(length)),
        Termination::BudgetExhausted => (None, None),
    };
    let rows: Vec<TraceRowJson> = t
        .iterates
        .iter()
        .enumerate()
        .map(|(i, a)| TraceRowJson {
            index: i,
            iterate: iterate_name(inst, a),
            step: t.steps.get(i).map(|s| s.to_string()),
            bound: t.bounds.get(i).copied().flatten(),
        })
        .collect();
    match format {
        OutputFormat::Json => json(&TraceJson {
            start,
            termination: t.termination.id(),
            termination_index,
            cycle_length,
            lambda0: t.preamble.as_ref().map(|p| p.lambda0.to_string()),
            k: t.preamble.as_ref().map(|p| p.k.to_string()),
            k0: t.k0.as_ref().map(|k| k.to_string()),
            bound_class: t.bound_class.as_ref().map(|(c, _)| c.id()),
            bound_constant: t.bound_class.as_ref().map(|(_, r)| r.to_string()),
            rows,
        }),
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "start        {start}");
            let detail = match (termination_index, cycle_length) {
                (Some(i), _) => format!(" at index {i}"),
                (_, Some(l)) => format!(" of length {l}"),
                _ => String::new(),
            };
            let _ = writeln!(out, "termination  {}{detail}", t.termination.id());
            if let Some(p) = &t.preamble {
                let k0 = t.k0.as_ref().map(|k| k.to_string()).unwrap_or_default();
                let _ = writeln!(out, "lambda0      {}", p.lambda0);
                let _ = writeln!(out, "k            {} (k0 = {k0})", p.k);
            }
            if let Some((class, constant)) = &t.bound_class {
                let _ = writeln!(out, "bound        {class} with constant {constant}");
            }
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| {
                    [
                        r.index.to_string(),
                        r.iterate.clone(),
                        r.step.clone().unwrap_or_else(|| "-".into()),
                        r.bound.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            let header = ["n", "iterate", "step", "bound"].map(String::from);
            let mut widths = header.clone().map(|h| h.len());
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            for row in std::iter::once(&header).chain(&cells) {
                let line = row
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ");
                let _ = writeln!(out, "{}", line.trim_end());
            }
            out
        }
    }
}

// -------------------------------------------------------------- inclusions

#[derive(Serialize)]
struct InclusionJson {
    id: &'static str,
    premise_class: &'static str,
    premise: String,
    hypothesis: String,
    hypothesis_holds: bool,
    conclusion_class: &'static str,
    observed: String,
    bound: Option<String>,
    inequality: Option<bool>,
    conclusion_holds: bool,
    consistent: bool,
}

pub fn render_inclusions(rows: &[InclusionRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(
            &rows
                .iter()
                .map(|r| InclusionJson {
                    id: r.id,
                    premise_class: r.premise_class.id(),
                    premise: r.premise.to_string(),
                    hypothesis: r.hypothesis.clone(),
                    hypothesis_holds: r.hypothesis_holds,
                    conclusion_class: r.conclusion_class.id(),
                    observed: r.observed.to_string(),
                    bound: r.bound.as_ref().map(|b| b.to_string()),
                    inequality: r.inequality,
                    conclusion_holds: r.conclusion_holds,
                    consistent: r.consistent,
                })
                .collect::<Vec<_>>(),
        ),
        OutputFormat::Text => {
            let mut out = String::new();
            for r in rows {
                let bound = match (&r.bound, r.inequality) {
                    (Some(b), Some(ok)) => format!(", implied bound {b} ({})", if ok { "met" } else { "violated" }),
                    _ => String::new(),
                };
                let _ = writeln!(
                    out,
                    "{}: {} = {} (hypothesis {}: {}) -> {} = {}{bound}; {}",
                    r.id,
                    r.premise_class,
                    r.premise,
                    r.hypothesis,
                    r.hypothesis_holds,
                    r.conclusion_class,
                    r.observed,
                    if r.consistent { "consistent" } else { "INCONSISTENT" },
                );
            }
            out
        }
    }
}

// ----------------------------------------------------------------- verdict

#[derive(Serialize)]
struct TheoremJson {
    theorem: &'static str,
    class: &'static str,
    semantics: &'static str,
    member: bool,
    outcome: &'static str,
    detail: String,
}

pub fn render_theorems(checks: &[TheoremCheck], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(
            &checks
                .iter()
                .map(|c| TheoremJson {
                    theorem: c.kind.id(),
                    class: c.class.id(),
                    semantics: c.semantics.id(),
                    member: c.member,
                    outcome: c.outcome.id(),
                    detail: c.detail.clone(),
                })
                .collect::<Vec<_>>(),
        ),
        OutputFormat::Text => {
            let mut out = String::new();
            for c in checks {
                let _ = writeln!(
                    out,
                    "{:<16} {:<12} {:<36} {:<24} {}",
                    c.class.id(),
                    c.semantics.id(),
                    c.kind.id(),
                    c.outcome.id(),
                    c.detail
                );
            }
            out
        }
    }
}

#[derive(Serialize)]
struct TallyJson {
    class: &'static str,
    members: usize,
    bound_checks: usize,
    moving_checks: usize,
    violations: usize,
}

#[derive(Serialize)]
struct ViolationRowJson {
    class: &'static str,
    constant: String,
    start: String,
    n: usize,
    actual: String,
    bound: f64,
    instance: String,
}

#[derive(Serialize)]
struct CounterexampleJson {
    theorem: String,
    class: String,
    instance: String,
}

#[derive(Serialize)]
struct FuzzJson {
    seed: u64,
    attempts: usize,
    member_instances: usize,
    theorem_checks: usize,
    holds: usize,
    observations: usize,
    counterexamples: Vec<CounterexampleJson>,
    bounds: Vec<TallyJson>,
    bound_violations: Vec<ViolationRowJson>,
    clean: bool,
}

fn violation_json(v: &BoundViolation) -> ViolationRowJson {
    ViolationRowJson {
        class: v.class.id(),
        constant: v.constant.to_string(),
        start: v.start.clone(),
        n: v.n,
        actual: v.actual.to_string(),
        bound: v.bound,
        instance: v.instance.clone(),
    }
}

pub fn render_fuzz(s: &FuzzSummary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&FuzzJson {
            seed: s.seed,
            attempts: s.attempts,
            member_instances: s.member_instances,
            theorem_checks: s.theorem_checks,
            holds: s.holds,
            observations: s.observations,
            counterexamples: s
                .counterexamples
                .iter()
                .map(|(t, c, i)| CounterexampleJson {
                    theorem: t.clone(),
                    class: c.clone(),
                    instance: i.clone(),
                })
                .collect(),
            bounds: s
                .per_class
                .iter()
                .map(|(class, t)| TallyJson {
                    class,
                    members: t.members,
                    bound_checks: t.bound_checks,
                    moving_checks: t.moving_checks,
                    violations: t.violations,
                })
                .collect(),
            bound_violations: s.bound_violations.iter().map(violation_json).collect(),
            clean: s.clean(),
        }),
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "seed {} attempts {} per size", s.seed, s.attempts);
            let _ = writeln!(out, "member instances  {}", s.member_instances);
            let _ = writeln!(
                out,
                "theorem checks    {} ({} hold, {} observations, {} counterexamples)",
                s.theorem_checks,
                s.holds,
                s.observations,
                s.counterexamples.len()
            );
            for (theorem, class, instance) in &s.counterexamples {
                let _ = writeln!(out, "counterexample: {theorem} for {class}\n{instance}");
            }
            for (class, t) in &s.per_class {
                let _ = writeln!(
                    out,
                    "bound {class:<16} {} members, {} checks ({} before the limit), {} violations",
                    t.members, t.bound_checks, t.moving_checks, t.violations
                );
            }
            for v in &s.bound_violations {
                let _ = writeln!(
                    out,
                    "violation: {} constant {} from {} at n = {}: distance {} > bound {}\n{}",
                    v.class, v.constant, v.start, v.n, v.actual, v.bound, v.instance
                );
            }
            out
        }
    }
}

// ----------------------------------------------------------------- example

#[derive(Serialize)]
struct ExpectationJson {
    expected: String,
    actual: String,
    holds: bool,
}

#[derive(Serialize)]
struct ExampleJson {
    id: &'static str,
    params: String,
    instance: String,
    expectations: Vec<ExpectationJson>,
}

/// The instance in file format, followed by the expectation table as
/// comment lines so the output re-parses.
pub fn render_example(g: &Generated, outcomes: &[CheckOutcome], format: OutputFormat) -> String {
    let instance = write_instance(&g.instance);
    match format {
        OutputFormat::Json => json(&ExampleJson {
            id: g.id.id(),
            params: g.params.describe(g.id),
            instance,
            expectations: outcomes
                .iter()
                .map(|o| ExpectationJson {
                    expected: o.expectation.to_string(),
                    actual: o.actual.clone(),
                    holds: o.holds,
                })
                .collect(),
        }),
        OutputFormat::Text => {
            let mut out = String::new();
            let params = g.params.describe(g.id);
            if params.is_empty() {
                let _ = writeln!(out, "# example {}", g.id);
            } else {
                let _ = writeln!(out, "# example {} ({params})", g.id);
            }
            out.push_str(&instance);
            let _ = writeln!(out, "# expected results");
            for o in outcomes {
                let mark = if o.holds { "ok" } else { "MISMATCH" };
                let _ = writeln!(out, "#   {:<8} {}", mark, o.expectation);
                if !o.holds {
                    let _ = writeln!(out, "#            got {}", o.actual);
                }
            }
            out
        }
    }
}
