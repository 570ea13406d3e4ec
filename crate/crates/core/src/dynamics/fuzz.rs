//! Seeded sweep over random universal members: theorem conclusions and
//! bound soundness on every orbit.

use std::collections::BTreeMap;

use super::bounds::{apriori_bound, first_index, within_bound};
use super::picard::{picard_iterate, Iterate, Start, Termination};
use super::random::random_member_search;
use super::verdict::{theorem_verdict_with, Outcome};
use crate::certifier::{ContractionClass, Execution};
use crate::error::Result;
use crate::format::write_instance;
use crate::instance::Instance;
use crate::rational::{int, Rational};
use crate::space::PointId;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundViolation {
    pub class: ContractionClass,
    pub constant: Rational,
    pub start: String,
    pub n: usize,
    pub actual: Rational,
    pub bound: f64,
    /// The instance in the text file format.
    pub instance: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassTally {
    pub members: usize,
    pub bound_checks: usize,
    /// Checks where the iterate had not yet reached the limit.
    pub moving_checks: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FuzzSummary {
    pub seed: u64,
    pub attempts: usize,
    /// Distinct instances that are a universal member of some four-point class.
    pub member_instances: usize,
    pub theorem_checks: usize,
    pub holds: usize,
    pub observations: usize,
    /// `(theorem id, class id, instance text)` for every counterexample.
    pub counterexamples: Vec<(String, String, String)>,
    pub per_class: BTreeMap<&'static str, ClassTally>,
    /// First violations per class, at most a few each.
    pub bound_violations: Vec<BoundViolation>,
}

impl FuzzSummary {
    pub fn total_violations(&self) -> usize {
        self.per_class.values().map(|t| t.violations).sum()
    }

    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty() && self.total_violations() == 0
    }
}

const KEPT_VIOLATIONS: usize = 3;

/// Bounds are checked for every `n` up to the end of the orbit and at least
/// up to this index; past the end of the orbit `a_n` is the limit itself.
const HORIZON: usize = 8;

/// Runs `attempts` draws for every size in `sizes`, with seed `seed + n`.
pub fn fuzz_theorems(
    seed: u64,
    sizes: impl IntoIterator<Item = usize>,
    attempts: usize,
) -> Result<FuzzSummary> {
    let mut summary = FuzzSummary {
        seed,
        attempts,
        ..FuzzSummary::default()
    };
    for class in ContractionClass::QUAD {
        summary.per_class.insert(class.id(), ClassTally::default());
    }
    for n in sizes {
        let mut last_attempt = None;
        for hit in random_member_search(seed.wrapping_add(n as u64), n, attempts)? {
            if last_attempt != Some(hit.attempt) {
                last_attempt = Some(hit.attempt);
                summary.member_instances += 1;
                check_theorems(&hit.instance, &mut summary)?;
            }
            let constant = hit
                .report
                .constant
                .finite()
                .cloned()
                .expect("members have finite constants");
            check_bounds(&hit.instance, hit.class, &constant, &mut summary)?;
        }
    }
    Ok(summary)
}

fn check_theorems(inst: &Instance, summary: &mut FuzzSummary) -> Result<()> {
    for check in theorem_verdict_with(inst, Execution::Serial)? {
        match check.outcome {
            Outcome::NotApplicable => continue,
            Outcome::Holds => summary.holds += 1,
            Outcome::Observation => summary.observations += 1,
            Outcome::Counterexample => summary.counterexamples.push((
                check.kind.id().to_string(),
                check.class.id().to_string(),
                write_instance(inst),
            )),
        }
        summary.theorem_checks += 1;
    }
    Ok(())
}

fn check_bounds(
    inst: &Instance,
    class: ContractionClass,
    constant: &Rational,
    summary: &mut FuzzSummary,
) -> Result<()> {
    let tally = summary.per_class.get_mut(class.id()).expect("quad class");
    tally.members += 1;
    for start in 0..inst.len() {
        let trace = picard_iterate(inst, Start::Point(PointId(start)), &int(0), inst.len() + 2)?;
        let Termination::FixedPointHit { .. } = trace.termination else {
            continue;
        };
        let Some(preamble) = trace.preamble.as_ref() else {
            continue;
        };
        let limit = match trace.limit() {
            Some(Iterate::Point(p)) => *p,
            _ => continue,
        };
        let last = trace.iterates.len() - 1;
        for n in first_index(class)..=last.max(HORIZON) {
            let Iterate::Point(p) = &trace.iterates[n.min(last)] else { continue };
            let bound = apriori_bound(class, constant, preamble, n)?;
            let actual = inst.distance(*p, limit)?;
            if *p != limit {
                tally.moving_checks += 1;
            }
            tally.bound_checks += 1;
            if !within_bound(&actual, bound) {
                tally.violations += 1;
                let kept = summary
                    .bound_violations
                    .iter()
                    .filter(|v| v.class == class)
                    .count();
                if kept < KEPT_VIOLATIONS {
                    summary.bound_violations.push(BoundViolation {
                        class,
                        constant: constant.clone(),
                        start: inst.label(PointId(start)).to_string(),
                        n,
                        actual: actual.clone(),
                        bound,
                        instance: write_instance(inst),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_deterministic() {
        let a = fuzz_theorems(3, 4..=5, 200).unwrap();
        let b = fuzz_theorems(3, 4..=5, 200).unwrap();
        assert_eq!(a, b);
        assert!(a.member_instances > 0);
        assert!(a.counterexamples.is_empty());
    }
}
