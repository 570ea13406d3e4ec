use thiserror::Error;

use crate::format::ParseError;
use crate::rational::Rational;
use crate::space::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn number_word(n: &usize) -> String {
    match n {
        2 => "two".into(),
        3 => "three".into(),
        4 => "four".into(),
        _ => n.to_string(),
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("negative distance {value} between {first} and {second}")]
    NegativeEntry {
        first: String,
        second: String,
        value: Rational,
    },
    #[error("{labels} labels given for {points} points")]
    LabelCount { labels: usize, points: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}`: labels must be non-empty and contain no whitespace, `#`, `[` or `]`")]
    InvalidLabel(String),
    #[error("metric axioms violated:\n{0}")]
    InvalidMetric(ValidationReport),
    #[error("duplicate coordinate {0}")]
    DuplicateCoordinate(Rational),
    #[error("point index {index} out of range for a space of {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("unknown point `{0}`")]
    UnknownLabel(String),
    #[error("map table has {got} entries for a space of {expected} points")]
    MapLength { got: usize, expected: usize },
    #[error("map not closed: image of {label} is {image}, which is not a point of the space")]
    NotClosed { label: String, image: Rational },
    #[error("no piece of the map covers {label} (coordinate {coord})")]
    Uncovered { label: String, coord: Rational },
    #[error("no piece of the map covers coordinate {0}")]
    OutsideDomain(Rational),
    #[error("piecewise maps are only defined on line spaces")]
    PiecewiseNeedsLine,
    #[error("tuple repeats point {0}")]
    RepeatedPoint(String),
    #[error("{class} takes tuples of {arity} points, got {got}")]
    WrongArity {
        class: &'static str,
        arity: usize,
        got: usize,
    },
    #[error("{class} is defined on spaces with at least {} points, this space has {points}", number_word(.arity))]
    TooFewPoints {
        class: &'static str,
        arity: usize,
        points: usize,
    },
    #[error("bound undefined for {class}: constant {constant} is not below {threshold}")]
    BoundUndefined {
        class: &'static str,
        constant: String,
        threshold: Rational,
    },
    #[error("bound for {class} needs n >= {min}, got {n}")]
    BoundIndex {
        class: &'static str,
        min: usize,
        n: usize,
    },
    #[error("no a-priori bound is associated with {0}")]
    NoBound(&'static str),
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
