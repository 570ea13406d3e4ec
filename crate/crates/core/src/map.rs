//! Self-maps: explicit index tables or piecewise rational-affine rules.

use crate::rational::Rational;
use crate::space::PointId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// Finite set of coordinates.
    Set(Vec<Rational>),
    /// Closed interval `[lo, hi]`.
    Interval { lo: Rational, hi: Rational },
}

impl Domain {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Domain::Set(points) => points.contains(x),
            Domain::Interval { lo, hi } => lo <= x && x <= hi,
        }
    }
}

/// `x ↦ slope·x + offset` on `domain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub domain: Domain,
    pub slope: Rational,
    pub offset: Rational,
}

impl Piece {
    pub fn new(domain: Domain, slope: Rational, offset: Rational) -> Self {
        Piece {
            domain,
            slope,
            offset,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfMap {
    Table(Vec<PointId>),
    /// Evaluated by the first piece whose domain contains the coordinate.
    Piecewise(Vec<Piece>),
}

impl SelfMap {
    pub fn table(targets: impl IntoIterator<Item = usize>) -> Self {
        SelfMap::Table(targets.into_iter().map(PointId).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::table(0..n)
    }

    pub fn constant(n: usize, target: usize) -> Self {
        Self::table(std::iter::repeat_n(target, n))
    }

    /// Image coordinate under a piecewise map; `None` outside every piece or
    /// for table maps.
    pub fn image_coord(&self, x: &Rational) -> Option<Rational> {
        match self {
            SelfMap::Table(_) => None,
            SelfMap::Piecewise(pieces) => pieces
                .iter()
                .find(|piece| piece.domain.contains(x))
                .map(|piece| piece.eval(x)),
        }
    }
}
