//! Machine checks of the fixed-point theorems on a concrete map.
//!
//! For every four-point class and both semantics the map is certified; when
//! it is a member, the theorem conclusions are tested against the exact orbit
//! structure. A failure under universal semantics contradicts a proven
//! statement and is reported as a counterexample. Under cyclic_best the
//! proofs do not apply, so failures are only observations.

use super::{analyze_dynamics, DynamicsReport, DEFAULT_MAX_PERIOD};
use crate::certifier::{certify_with, CertificationReport, ContractionClass, Execution, Semantics};
use crate::error::Result;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    /// No points of prime period 2 or 3 implies a fixed point exists.
    Existence,
    /// At most three fixed points.
    AtMostThree,
    /// A fixed point excludes having both period-2 and period-3 points.
    ConverseBoth,
    /// Stronger reading: a fixed point excludes period-2 and period-3
    /// points separately. Not proven, so never a counterexample.
    ConverseEach,
    /// A fixed point excludes period-3 points.
    NoPeriodThree,
}

impl TheoremKind {
    pub fn id(self) -> &'static str {
        match self {
            TheoremKind::Existence => "fixed_point_existence",
            TheoremKind::AtMostThree => "at_most_three_fixed_points",
            TheoremKind::ConverseBoth => "fixed_point_excludes_periods_2_and_3",
            TheoremKind::ConverseEach => "fixed_point_excludes_period_2_or_3",
            TheoremKind::NoPeriodThree => "fixed_point_excludes_period_3",
        }
    }

    fn proven(self) -> bool {
        self != TheoremKind::ConverseEach
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The class or the theorem hypothesis does not apply.
    NotApplicable,
    Holds,
    Counterexample,
    Observation,
}

impl Outcome {
    pub fn id(self) -> &'static str {
        match self {
            Outcome::NotApplicable => "not_applicable",
            Outcome::Holds => "holds",
            Outcome::Counterexample => "counterexample",
            Outcome::Observation => "observation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub kind: TheoremKind,
    pub class: ContractionClass,
    pub semantics: Semantics,
    pub member: bool,
    pub outcome: Outcome,
    pub detail: String,
}

fn kinds(class: ContractionClass) -> &'static [TheoremKind] {
    match class {
        ContractionClass::QuadPerimetric => &[
            TheoremKind::Existence,
            TheoremKind::AtMostThree,
            TheoremKind::ConverseBoth,
            TheoremKind::ConverseEach,
        ],
        _ => &[
            TheoremKind::Existence,
            TheoremKind::AtMostThree,
            TheoremKind::NoPeriodThree,
        ],
    }
}

/// `None` when the theorem hypothesis fails.
fn check(kind: TheoremKind, dyn_: &DynamicsReport) -> (Option<bool>, String) {
    let fix = dyn_.fixed_points.len();
    let p2 = dyn_.has_period(2);
    let p3 = dyn_.has_period(3);
    let summary = format!("|Fix| = {fix}, period 2: {p2}, period 3: {p3}");
    let (applies, holds) = match kind {
        TheoremKind::Existence => (!p2 && !p3, fix > 0),
        TheoremKind::AtMostThree => (true, fix <= 3),
        TheoremKind::ConverseBoth => (fix > 0, !(p2 && p3)),
        TheoremKind::ConverseEach => (fix > 0, !p2 && !p3),
        TheoremKind::NoPeriodThree => (fix > 0, !p3),
    };
    (applies.then_some(holds), summary)
}

/// Evaluates every theorem conclusion for every four-point class.
pub fn theorem_verdict(inst: &Instance) -> Result<Vec<TheoremCheck>> {
    theorem_verdict_with(inst, Execution::default())
}

pub fn theorem_verdict_with(inst: &Instance, execution: Execution) -> Result<Vec<TheoremCheck>> {
    let dynamics = analyze_dynamics(inst, DEFAULT_MAX_PERIOD)?;
    let mut checks = Vec::new();
    for class in ContractionClass::QUAD {
        for semantics in [Semantics::Universal, Semantics::CyclicBest] {
            let report: CertificationReport = certify_with(class, inst, semantics, execution)?;
            let member = report.is_member();
            for &kind in kinds(class) {
                let (holds, summary) = check(kind, &dynamics);
                let outcome = match (member, holds) {
                    (false, _) | (true, None) => Outcome::NotApplicable,
                    (true, Some(true)) => Outcome::Holds,
                    (true, Some(false)) if semantics == Semantics::Universal && kind.proven() => {
                        Outcome::Counterexample
                    }
                    (true, Some(false)) => Outcome::Observation,
                };
                let detail = if member {
                    format!("constant {}; {summary}", report.constant)
                } else {
                    format!("not a member (constant {})", report.constant)
                };
                checks.push(TheoremCheck {
                    kind,
                    class,
                    semantics,
                    member,
                    outcome,
                    detail,
                });
            }
        }
    }
    Ok(checks)
}
