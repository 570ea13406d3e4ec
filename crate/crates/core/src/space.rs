//! Finite metric spaces with exact distances.
//!
//! Two backends: [`TabulatedSpace`] stores an explicit distance matrix,
//! [`LineSpace`] stores rational coordinates on the real line and measures
//! `|x - y|`. Both are immutable once built.

use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense index of a point, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

impl PointId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for PointId {
    fn from(index: usize) -> Self {
        PointId(index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    ZeroDiagonal,
    Symmetry,
    Positivity,
    Triangle,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ZeroDiagonal => "zero-diagonal",
            Axiom::Symmetry => "symmetry",
            Axiom::Positivity => "positivity",
            Axiom::Triangle => "triangle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// `[i]` for the diagonal, `[i, j]` for pairs, `[i, j, k]` for a
    /// triangle violation `d(i, k) > d(i, j) + d(j, k)`.
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.axiom.name(), v.detail)?;
        }
        Ok(())
    }
}

pub(crate) fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for label in labels {
        if label.is_empty()
            || label
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '#' | '[' | ']'))
        {
            return Err(Error::InvalidLabel(label.clone()));
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(())
}

/// Checks the four metric axioms and lists every failing pair or triple.
///
/// Structural problems (non-square matrix, negative entries, bad labels) are
/// errors rather than violations.
pub fn validate_metric(labels: &[String], matrix: &[Vec<Rational>]) -> Result<ValidationReport> {
    let n = matrix.len();
    if labels.len() != n {
        return Err(Error::LabelCount {
            labels: labels.len(),
            points: n,
        });
    }
    check_labels(labels)?;
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if matrix[i][j].is_negative() {
                return Err(Error::NegativeEntry {
                    first: labels[i].clone(),
                    second: labels[j].clone(),
                    value: matrix[i][j].clone(),
                });
            }
        }
    }

    let mut violations = Vec::new();
    for i in 0..n {
        if !matrix[i][i].is_zero() {
            violations.push(Violation {
                axiom: Axiom::ZeroDiagonal,
                indices: vec![i],
                detail: format!("d({0},{0}) = {1}", labels[i], matrix[i][i]),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if matrix[i][j] != matrix[j][i] {
                violations.push(Violation {
                    axiom: Axiom::Symmetry,
                    indices: vec![i, j],
                    detail: format!(
                        "d({a},{b}) = {} but d({b},{a}) = {}",
                        matrix[i][j],
                        matrix[j][i],
                        a = labels[i],
                        b = labels[j]
                    ),
                });
            }
            if matrix[i][j].is_zero() || matrix[j][i].is_zero() {
                violations.push(Violation {
                    axiom: Axiom::Positivity,
                    indices: vec![i, j],
                    detail: format!("d({},{}) = 0 for distinct points", labels[i], labels[j]),
                });
            }
        }
    }
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let detour = &matrix[i][j] + &matrix[j][k];
                if matrix[i][k] > detour {
                    violations.push(Violation {
                        axiom: Axiom::Triangle,
                        indices: vec![i, j, k],
                        detail: format!(
                            "d({a},{c}) = {} > d({a},{b}) + d({b},{c}) = {}",
                            matrix[i][k],
                            detour,
                            a = labels[i],
                            b = labels[j],
                            c = labels[k]
                        ),
                    });
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

impl TabulatedSpace {
    /// Builds a space from a distance matrix, refusing anything that is not a
    /// metric.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let report = validate_metric(&labels, &matrix)?;
        if !report.is_ok() {
            return Err(Error::InvalidMetric(report));
        }
        Ok(TabulatedSpace {
            labels,
            dist: matrix,
        })
    }

    /// Discrete metric: every pair of distinct points at distance one.
    pub fn discrete<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::zero()
                        } else {
                            crate::rational::int(1)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(labels, matrix)
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSpace {
    labels: Vec<String>,
    coords: Vec<Rational>,
    sampled: bool,
}

impl LineSpace {
    /// Points labelled by their own coordinates, sorted ascending.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let labels = coords.iter().map(|c| c.to_string()).collect();
        Self::with_labels(labels, coords)
    }

    /// Labelled points; the pairs are reordered so coordinates ascend.
    pub fn with_labels(labels: Vec<String>, coords: Vec<Rational>) -> Result<Self> {
        if labels.len() != coords.len() {
            return Err(Error::LabelCount {
                labels: labels.len(),
                points: coords.len(),
            });
        }
        let mut pairs: Vec<(String, Rational)> = labels.into_iter().zip(coords).collect();
        pairs.sort_by(|a, b| a.1.cmp(&b.1));
        if let Some(w) = pairs.windows(2).find(|w| w[0].1 == w[1].1) {
            return Err(Error::DuplicateCoordinate(w[0].1.clone()));
        }
        let labels: Vec<String> = pairs.iter().map(|p| p.0.clone()).collect();
        check_labels(&labels)?;
        let (labels, coords) = pairs.into_iter().unzip();
        Ok(LineSpace {
            labels,
            coords,
            sampled: false,
        })
    }

    /// Marks the space as a finite sample of a larger ambient space.
    pub fn sampled(mut self) -> Self {
        self.sampled = true;
        self
    }

    pub fn is_sampled(&self) -> bool {
        self.sampled
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn position(&self, coord: &Rational) -> Option<usize> {
        self.coords.binary_search(coord).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    Tabulated(TabulatedSpace),
    Line(LineSpace),
}

impl From<TabulatedSpace> for Space {
    fn from(space: TabulatedSpace) -> Self {
        Space::Tabulated(space)
    }
}

impl From<LineSpace> for Space {
    fn from(space: LineSpace) -> Self {
        Space::Line(space)
    }
}

impl Space {
    pub fn len(&self) -> usize {
        self.labels().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Space::Tabulated(s) => &s.labels,
            Space::Line(s) => &s.labels,
        }
    }

    pub fn label(&self, p: PointId) -> &str {
        &self.labels()[p.0]
    }

    pub fn point(&self, label: &str) -> Result<PointId> {
        self.labels()
            .iter()
            .position(|l| l == label)
            .map(PointId)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, Space::Line(s) if s.sampled)
    }

    pub fn as_line(&self) -> Option<&LineSpace> {
        match self {
            Space::Line(s) => Some(s),
            Space::Tabulated(_) => None,
        }
    }

    pub fn distance(&self, p: PointId, q: PointId) -> Result<Rational> {
        let n = self.len();
        for id in [p, q] {
            if id.0 >= n {
                return Err(Error::PointOutOfRange { index: id.0, len: n });
            }
        }
        Ok(self.dist(p.0, q.0))
    }

    /// Unchecked distance by raw index.
    pub(crate) fn dist(&self, i: usize, j: usize) -> Rational {
        match self {
            Space::Tabulated(s) => s.dist[i][j].clone(),
            Space::Line(s) => (&s.coords[i] - &s.coords[j]).abs(),
        }
    }

    /// Materialises the full distance matrix.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.dist(i, j)).collect())
            .collect()
    }

    pub fn to_tabulated(&self) -> TabulatedSpace {
        TabulatedSpace {
            labels: self.labels().to_vec(),
            dist: self.matrix(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn labels(names: &str) -> Vec<String> {
        names.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn discrete_metric_is_valid() {
        let space = TabulatedSpace::discrete(["a", "b", "c", "d"]).unwrap();
        let report = validate_metric(&space.labels, space.matrix()).unwrap();
        assert!(report.is_ok());
    }

    #[test]
    fn triangle_violation_is_named() {
        let m = vec![
            vec![int(0), int(5), int(1)],
            vec![int(5), int(0), int(1)],
            vec![int(1), int(1), int(0)],
        ];
        let report = validate_metric(&labels("a b c"), &m).unwrap();
        assert!(!report.is_ok());
        // d(a,b) = 5 > d(a,c) + d(c,b), seen from both ends of the long side.
        let triangles: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.axiom == Axiom::Triangle)
            .map(|v| v.indices.clone())
            .collect();
        assert_eq!(triangles, vec![vec![0, 2, 1], vec![1, 2, 0]]);
        assert!(report.to_string().contains("d(a,b) = 5 > d(a,c) + d(c,b) = 2"));
    }

    #[test]
    fn every_violation_is_listed() {
        let m = vec![
            vec![int(1), int(2), int(0)],
            vec![int(3), int(0), int(1)],
            vec![int(0), int(1), int(0)],
        ];
        let report = validate_metric(&labels("a b c"), &m).unwrap();
        let axioms: Vec<_> = report.violations.iter().map(|v| v.axiom).collect();
        assert!(axioms.contains(&Axiom::ZeroDiagonal));
        assert!(axioms.contains(&Axiom::Symmetry));
        assert!(axioms.contains(&Axiom::Positivity));
        assert!(axioms.contains(&Axiom::Triangle));
    }

    #[test]
    fn structural_errors_are_not_violations() {
        let ragged = vec![vec![int(0), int(1)], vec![int(1)]];
        assert!(matches!(
            validate_metric(&labels("a b"), &ragged),
            Err(Error::NotSquare { row: 1, .. })
        ));
        let negative = vec![vec![int(0), int(-1)], vec![int(-1), int(0)]];
        assert!(matches!(
            validate_metric(&labels("a b"), &negative),
            Err(Error::NegativeEntry { .. })
        ));
        let dup = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert!(matches!(
            validate_metric(&labels("a a"), &dup),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn construction_refuses_non_metrics() {
        let m = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        assert!(matches!(
            TabulatedSpace::new(labels("a b"), m),
            Err(Error::InvalidMetric(_))
        ));
    }

    #[test]
    fn single_point_space() {
        let space = TabulatedSpace::new(labels("p"), vec![vec![int(0)]]).unwrap();
        assert_eq!(Space::from(space).len(), 1);
        let line = LineSpace::new(vec![int(0)]).unwrap();
        assert_eq!(Space::from(line).len(), 1);
    }

    #[test]
    fn line_space_sorts_and_measures() {
        let line = LineSpace::new(vec![int(1), ratio(2, 3), int(0), ratio(1, 3)]).unwrap();
        assert_eq!(line.labels, labels("0 1/3 2/3 1"));
        let space = Space::from(line);
        assert_eq!(space.distance(PointId(0), PointId(3)).unwrap(), int(1));
        assert_eq!(space.distance(PointId(2), PointId(1)).unwrap(), ratio(1, 3));
        assert!(matches!(
            space.distance(PointId(0), PointId(4)),
            Err(Error::PointOutOfRange { index: 4, len: 4 })
        ));
    }

    #[test]
    fn line_space_rejects_duplicates() {
        assert!(matches!(
            LineSpace::new(vec![int(0), ratio(1, 2), ratio(2, 4)]),
            Err(Error::DuplicateCoordinate(_))
        ));
    }

    #[test]
    fn materialised_line_space_validates() {
        let coords = vec![int(-1), ratio(-2, 3), ratio(-1, 3), int(0), ratio(1, 7), int(3)];
        let space = Space::from(LineSpace::new(coords).unwrap());
        let report = validate_metric(space.labels(), &space.matrix()).unwrap();
        assert!(report.is_ok());
        let tab = space.to_tabulated();
        assert!(validate_metric(&tab.labels, tab.matrix()).unwrap().is_ok());
    }
}
