//! Orbits, periodic points, Picard iteration and fixed-point theorem checks.

mod bounds;
mod fuzz;
mod picard;
pub mod random;
mod verdict;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::space::PointId;

pub use bounds::{apriori_bound, step_factor, within_bound, Preamble, BOUND_SLACK};
pub use fuzz::{fuzz_theorems, BoundViolation, ClassTally, FuzzSummary};
pub use picard::{picard_iterate, IterationTrace, Iterate, Start, Termination};
pub use verdict::{theorem_verdict, theorem_verdict_with, Outcome, TheoremCheck, TheoremKind};

pub const DEFAULT_MAX_PERIOD: usize = 6;

/// Where the forward orbit of a point ends up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    /// Reaches a cycle of length `cycle` after `tail` steps.
    Cycle { tail: usize, cycle: usize },
    /// The image after `steps` applications lies outside the sample.
    Escapes { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsReport {
    pub fixed_points: Vec<PointId>,
    /// Points of prime period `2..=max_period`, in index order.
    pub periodic: Vec<(PointId, usize)>,
    pub orbits: Vec<Orbit>,
    pub max_period: usize,
}

impl DynamicsReport {
    pub fn with_period(&self, period: usize) -> Vec<PointId> {
        if period == 1 {
            return self.fixed_points.clone();
        }
        self.periodic
            .iter()
            .filter(|(_, p)| *p == period)
            .map(|(q, _)| *q)
            .collect()
    }

    pub fn has_period(&self, period: usize) -> bool {
        !self.with_period(period).is_empty()
    }
}

/// Exact orbit structure of every point.
pub fn analyze_dynamics(inst: &Instance, max_period: usize) -> Result<DynamicsReport> {
    if max_period < 3 {
        return Err(Error::Parameter(format!(
            "max_period must be at least 3, got {max_period}"
        )));
    }
    let n = inst.len();
    let mut orbits = Vec::with_capacity(n);
    for start in 0..n {
        // position of each visited point along this walk
        let mut seen = vec![usize::MAX; n];
        let mut p = start;
        let mut step = 0;
        let orbit = loop {
            if seen[p] != usize::MAX {
                break Orbit::Cycle {
                    tail: seen[p],
                    cycle: step - seen[p],
                };
            }
            seen[p] = step;
            match inst.next(PointId(p)) {
                Some(q) => p = q.0,
                None => break Orbit::Escapes { steps: step },
            }
            step += 1;
        };
        orbits.push(orbit);
    }
    let mut fixed_points = Vec::new();
    let mut periodic = Vec::new();
    for (i, orbit) in orbits.iter().enumerate() {
        if let Orbit::Cycle { tail: 0, cycle } = *orbit {
            if cycle == 1 {
                fixed_points.push(PointId(i));
            } else if cycle <= max_period {
                periodic.push((PointId(i), cycle));
            }
        }
    }
    Ok(DynamicsReport {
        fixed_points,
        periodic,
        orbits,
        max_period,
    })
}
