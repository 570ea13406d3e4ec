//! Picard iteration `a_{n+1} = T a_n` with exact step distances.
//!
//! Table maps iterate over points of the space. Piecewise maps iterate over
//! exact coordinates of the ambient line, so a sampled space can be followed
//! past the edge of its sample.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use super::bounds::{apriori_bound, first_index, Preamble};
use crate::certifier::ContractionClass;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::map::SelfMap;
use crate::rational::Rational;
use crate::space::PointId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Start {
    Point(PointId),
    Coord(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Iterate {
    Point(PointId),
    Coord(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// `a_index` is a fixed point; the trace ends with `a_{index+1} = a_index`.
    FixedPointHit { index: usize },
    CycleDetected { length: usize },
    /// `d(a_index, a_{index+1}) <= tolerance`.
    ToleranceMet { index: usize },
    BudgetExhausted,
}

impl Termination {
    pub fn id(self) -> &'static str {
        match self {
            Termination::FixedPointHit { .. } => "fixed_point_hit",
            Termination::CycleDetected { .. } => "cycle_detected",
            Termination::ToleranceMet { .. } => "tolerance_met",
            Termination::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub start: Start,
    pub iterates: Vec<Iterate>,
    /// `steps[i] = d(a_i, a_{i+1})`.
    pub steps: Vec<Rational>,
    /// `None` when the orbit cannot be continued to `a_4`.
    pub preamble: Option<Preamble>,
    pub k0: Option<Rational>,
    /// Bound on `d(a_n, a*)` per iterate, once [`IterationTrace::attach_bounds`]
    /// has run.
    pub bounds: Vec<Option<f64>>,
    pub bound_class: Option<(ContractionClass, Rational)>,
    pub termination: Termination,
}

struct Stepper<'a> {
    inst: &'a Instance,
}

impl Stepper<'_> {
    fn advance(&self, a: &Iterate) -> Result<Iterate> {
        match a {
            Iterate::Point(p) => Ok(Iterate::Point(self.inst.apply(*p)?)),
            Iterate::Coord(x) => self
                .inst
                .map()
                .image_coord(x)
                .map(Iterate::Coord)
                .ok_or_else(|| Error::OutsideDomain(x.clone())),
        }
    }

    fn distance(&self, a: &Iterate, b: &Iterate) -> Rational {
        match (a, b) {
            (Iterate::Point(p), Iterate::Point(q)) => self.inst.d(p.0, q.0),
            (Iterate::Coord(x), Iterate::Coord(y)) => (x - y).abs(),
            _ => unreachable!("iterates share one mode"),
        }
    }
}

pub fn picard_iterate(
    inst: &Instance,
    start: Start,
    tolerance: &Rational,
    budget: usize,
) -> Result<IterationTrace> {
    if budget == 0 {
        return Err(Error::Parameter("budget must be at least 1".into()));
    }
    if tolerance.is_negative() {
        return Err(Error::Parameter("tolerance must be nonnegative".into()));
    }
    let coordinate_mode = matches!(inst.map(), SelfMap::Piecewise(_));
    let first = match (&start, coordinate_mode) {
        (Start::Point(p), false) => {
            inst.distance(*p, *p)?;
            Iterate::Point(*p)
        }
        (Start::Point(p), true) => {
            inst.distance(*p, *p)?;
            let line = inst.space().as_line().ok_or(Error::PiecewiseNeedsLine)?;
            Iterate::Coord(line.coord(p.0).clone())
        }
        (Start::Coord(x), true) => Iterate::Coord(x.clone()),
        (Start::Coord(_), false) => {
            return Err(Error::Parameter(
                "coordinate starts need a piecewise map on a line space".into(),
            ))
        }
    };
    let stepper = Stepper { inst };
    let mut iterates = vec![first];
    let mut steps = Vec::new();
    let mut seen: HashMap<Iterate, usize> = HashMap::new();
    seen.insert(iterates[0].clone(), 0);
    let termination = loop {
        let i = iterates.len() - 1;
        if steps.len() == budget {
            break Termination::BudgetExhausted;
        }
        let next = stepper.advance(&iterates[i])?;
        let step = stepper.distance(&iterates[i], &next);
        let hit = next == iterates[i];
        let revisit = seen.get(&next).copied();
        steps.push(step.clone());
        iterates.push(next.clone());
        if hit {
            break Termination::FixedPointHit { index: i };
        }
        if let Some(j) = revisit {
            break Termination::CycleDetected { length: i + 1 - j };
        }
        if &step <= tolerance {
            break Termination::ToleranceMet { index: i };
        }
        seen.insert(next, i + 1);
    };

    // a_0..a_4, continuing past the end of the trace where needed
    let mut prefix: Vec<Iterate> = iterates.iter().take(5).cloned().collect();
    let mut extendable = true;
    while prefix.len() < 5 {
        match stepper.advance(prefix.last().expect("non-empty")) {
            Ok(next) => prefix.push(next),
            Err(_) => {
                extendable = false;
                break;
            }
        }
    }
    let (preamble, k0) = if extendable {
        let k: Vec<Rational> = prefix
            .windows(2)
            .map(|w| stepper.distance(&w[0], &w[1]))
            .collect();
        let lambda0 = &k[0] + &k[1] + &k[2] + stepper.distance(&prefix[3], &prefix[0]);
        let kmax = k[1..4].iter().max().cloned().unwrap_or_else(Rational::zero);
        (
            Some(Preamble {
                lambda0,
                k: kmax,
            }),
            Some(k[0].clone()),
        )
    } else {
        (None, None)
    };
    let bounds = vec![None; iterates.len()];
    Ok(IterationTrace {
        start,
        iterates,
        steps,
        preamble,
        k0,
        bounds,
        bound_class: None,
        termination,
    })
}

impl IterationTrace {
    /// Number of applications of the map.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The fixed point reached, if any.
    pub fn limit(&self) -> Option<&Iterate> {
        match self.termination {
            Termination::FixedPointHit { .. } => self.iterates.last(),
            _ => None,
        }
    }

    /// Fills in `bounds` for the given class and certified constant.
    pub fn attach_bounds(&mut self, class: ContractionClass, constant: &Rational) -> Result<()> {
        let preamble = self.preamble.clone().ok_or_else(|| {
            Error::Parameter("the orbit cannot be continued to a_4, so no bound applies".into())
        })?;
        // validates class and constant once
        apriori_bound(class, constant, &preamble, first_index(class))?;
        self.bounds = (0..self.iterates.len())
            .map(|n| apriori_bound(class, constant, &preamble, n).ok())
            .collect();
        self.bound_class = Some((class, constant.clone()));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{Domain, Piece};
    use crate::rational::{int, ratio};
    use crate::space::{LineSpace, TabulatedSpace};

    #[test]
    fn four_point_line_reaches_zero() {
        let line = LineSpace::new(vec![int(0), ratio(1, 3), ratio(2, 3), int(1)]).unwrap();
        let inst = Instance::new(line, SelfMap::table([0, 0, 1, 2])).unwrap();
        let t = picard_iterate(&inst, Start::Point(PointId(3)), &int(0), 100).unwrap();
        let labels: Vec<_> = t
            .iterates
            .iter()
            .map(|a| match a {
                Iterate::Point(p) => inst.label(*p).to_string(),
                Iterate::Coord(x) => x.to_string(),
            })
            .collect();
        assert_eq!(labels, ["1", "2/3", "1/3", "0", "0"]);
        assert_eq!(t.termination, Termination::FixedPointHit { index: 3 });
        let pre = t.preamble.clone().unwrap();
        assert_eq!(pre.lambda0, int(2));
        assert_eq!(pre.k, ratio(1, 3));
    }

    #[test]
    fn discrete_two_cycle() {
        let space = TabulatedSpace::discrete(["a", "b", "c", "d"]).unwrap();
        let inst = Instance::new(space, SelfMap::table([2, 2, 1, 1])).unwrap();
        let t = picard_iterate(&inst, Start::Point(PointId(0)), &int(0), 100).unwrap();
        assert_eq!(t.termination, Termination::CycleDetected { length: 2 });
        assert_eq!(t.iterates.len(), 4);
    }

    #[test]
    fn identity_stops_at_once() {
        let space = TabulatedSpace::discrete(["a", "b"]).unwrap();
        let inst = Instance::new(space, SelfMap::identity(2)).unwrap();
        let t = picard_iterate(&inst, Start::Point(PointId(1)), &int(0), 10).unwrap();
        assert_eq!(t.termination, Termination::FixedPointHit { index: 0 });
        assert_eq!(t.steps, vec![int(0)]);
    }

    #[test]
    fn coordinate_mode_runs_past_the_sample() {
        let line = LineSpace::new(vec![int(0), ratio(1, 2), int(1)]).unwrap().sampled();
        let half = Piece::new(
            Domain::Interval {
                lo: int(0),
                hi: int(1),
            },
            ratio(1, 2),
            int(0),
        );
        let inst = Instance::new(line, SelfMap::Piecewise(vec![half])).unwrap();
        let t = picard_iterate(&inst, Start::Point(PointId(2)), &ratio(1, 1000), 100).unwrap();
        assert_eq!(t.termination, Termination::ToleranceMet { index: 9 });
        assert_eq!(t.iterates[10], Iterate::Coord(ratio(1, 1024)));
        let t = picard_iterate(&inst, Start::Coord(int(1)), &int(0), 5).unwrap();
        assert_eq!(t.termination, Termination::BudgetExhausted);
        assert_eq!(t.len(), 5);
    }
}
