//! Inclusions between classes, checked as inequalities between computed
//! universal constants.

use num_traits::One;

use super::{certify_with, Constant, ContractionClass, Execution, Semantics};
use crate::error::Result;
use crate::instance::Instance;
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionRow {
    pub id: &'static str,
    pub premise_class: ContractionClass,
    pub premise: Constant,
    pub hypothesis: String,
    pub hypothesis_holds: bool,
    pub conclusion_class: ContractionClass,
    pub observed: Constant,
    /// Upper bound the premise constant implies for the conclusion constant.
    pub bound: Option<Rational>,
    /// `None` when the bound is not applicable (infinite premise or failed
    /// hypothesis).
    pub inequality: Option<bool>,
    pub conclusion_holds: bool,
    pub consistent: bool,
}

struct Rule {
    id: &'static str,
    premise: ContractionClass,
    /// Premise constant must lie strictly below this.
    hypothesis_below: Rational,
    conclusion: ContractionClass,
    bound: fn(&Rational) -> Rational,
    /// Whether the inequality is only claimed under the hypothesis.
    bound_needs_hypothesis: bool,
}

fn rules() -> Vec<Rule> {
    use ContractionClass::*;
    vec![
        Rule {
            id: "kannan_to_quad_kannan",
            premise: Kannan,
            hypothesis_below: ratio(1, 4),
            conclusion: QuadKannan,
            bound: |d| int(2) * d,
            bound_needs_hypothesis: false,
        },
        Rule {
            id: "quad_perimetric_to_quad_kannan",
            premise: QuadPerimetric,
            hypothesis_below: ratio(1, 5),
            conclusion: QuadKannan,
            bound: |a| int(2) * a / (Rational::one() - a),
            bound_needs_hypothesis: true,
        },
        Rule {
            id: "chatterjea_to_quad_chatterjea",
            premise: Chatterjea,
            hypothesis_below: ratio(1, 7),
            conclusion: QuadChatterjea,
            bound: |l| l.clone(),
            bound_needs_hypothesis: false,
        },
        Rule {
            id: "quad_perimetric_to_quad_chatterjea",
            premise: QuadPerimetric,
            hypothesis_below: ratio(1, 8),
            conclusion: QuadChatterjea,
            bound: |a| a / (Rational::one() - a),
            bound_needs_hypothesis: true,
        },
        Rule {
            id: "banach_to_quad_perimetric",
            premise: Banach,
            hypothesis_below: int(1),
            conclusion: QuadPerimetric,
            bound: |a| a.clone(),
            bound_needs_hypothesis: false,
        },
    ]
}

pub fn check_inclusions(inst: &Instance) -> Result<Vec<InclusionRow>> {
    check_inclusions_with(inst, Execution::default())
}

pub fn check_inclusions_with(inst: &Instance, execution: Execution) -> Result<Vec<InclusionRow>> {
    let constant = |class| -> Result<Constant> {
        Ok(certify_with(class, inst, Semantics::Universal, execution)?.constant)
    };
    let mut rows = Vec::new();
    for rule in rules() {
        let premise = constant(rule.premise)?;
        let observed = constant(rule.conclusion)?;
        let hypothesis_holds = premise.is_below(&rule.hypothesis_below);
        let bound = match premise.finite() {
            Some(c) if hypothesis_holds || !rule.bound_needs_hypothesis => Some((rule.bound)(c)),
            _ => None,
        };
        let inequality = bound
            .as_ref()
            .map(|b| observed <= Constant::Finite(b.clone()));
        let conclusion_holds = observed.is_below(&rule.conclusion.threshold());
        let consistent = inequality != Some(false) && (!hypothesis_holds || conclusion_holds);
        rows.push(InclusionRow {
            id: rule.id,
            premise_class: rule.premise,
            premise,
            hypothesis: format!("{} < {}", rule.premise, rule.hypothesis_below),
            hypothesis_holds,
            conclusion_class: rule.conclusion,
            observed,
            bound,
            inequality,
            conclusion_holds,
            consistent,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{Domain, Piece, SelfMap};
    use crate::space::LineSpace;

    #[test]
    fn halving_map_satisfies_every_row() {
        let coords = vec![int(0), ratio(1, 8), ratio(1, 4), ratio(1, 2), int(1)];
        let line = LineSpace::new(coords).unwrap().sampled();
        let half = Piece::new(
            Domain::Interval {
                lo: int(0),
                hi: int(1),
            },
            ratio(1, 2),
            int(0),
        );
        let inst = Instance::new(line, SelfMap::Piecewise(vec![half])).unwrap();
        let rows = check_inclusions(&inst).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.consistent), "{rows:#?}");
        let banach = rows.iter().find(|r| r.id == "banach_to_quad_perimetric").unwrap();
        assert_eq!(banach.premise, Constant::Finite(ratio(1, 2)));
        assert_eq!(banach.inequality, Some(true));
    }
}
