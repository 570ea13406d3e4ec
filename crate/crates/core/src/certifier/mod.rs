//! Tight contraction constants by exact enumeration.
//!
//! Every class compares a left side built from image distances `d(Tp, Tq)`
//! with a right side built from base distances `d(p, q)`, displacements
//! `d(p, Tp)` or cross distances `d(p, Tq)`. The tight constant is the
//! largest ratio over the tuples that constrain it.

mod enumerate;
mod inclusions;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{int, ratio as rat, Rational};
use crate::space::PointId;

pub use inclusions::{check_inclusions, check_inclusions_with, InclusionRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContractionClass {
    Banach,
    Kannan,
    Chatterjea,
    TriPerimetric,
    GenKannan,
    GenChatterjea,
    QuadPerimetric,
    QuadKannan,
    QuadChatterjea,
}

impl ContractionClass {
    pub const ALL: [ContractionClass; 9] = [
        ContractionClass::Banach,
        ContractionClass::Kannan,
        ContractionClass::Chatterjea,
        ContractionClass::TriPerimetric,
        ContractionClass::GenKannan,
        ContractionClass::GenChatterjea,
        ContractionClass::QuadPerimetric,
        ContractionClass::QuadKannan,
        ContractionClass::QuadChatterjea,
    ];

    pub const QUAD: [ContractionClass; 3] = [
        ContractionClass::QuadPerimetric,
        ContractionClass::QuadKannan,
        ContractionClass::QuadChatterjea,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ContractionClass::Banach => "banach",
            ContractionClass::Kannan => "kannan",
            ContractionClass::Chatterjea => "chatterjea",
            ContractionClass::TriPerimetric => "tri_perimetric",
            ContractionClass::GenKannan => "gen_kannan",
            ContractionClass::GenChatterjea => "gen_chatterjea",
            ContractionClass::QuadPerimetric => "quad_perimetric",
            ContractionClass::QuadKannan => "quad_kannan",
            ContractionClass::QuadChatterjea => "quad_chatterjea",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            ContractionClass::Banach | ContractionClass::Kannan | ContractionClass::Chatterjea => 2,
            ContractionClass::TriPerimetric
            | ContractionClass::GenKannan
            | ContractionClass::GenChatterjea => 3,
            _ => 4,
        }
    }

    /// Membership requires the constant to be strictly below this value.
    pub fn threshold(self) -> Rational {
        match self {
            ContractionClass::Banach => int(1),
            ContractionClass::Kannan => rat(1, 2),
            ContractionClass::Chatterjea => rat(1, 2),
            ContractionClass::TriPerimetric => int(1),
            ContractionClass::GenKannan => rat(2, 3),
            ContractionClass::GenChatterjea => rat(1, 3),
            ContractionClass::QuadPerimetric => int(1),
            ContractionClass::QuadKannan => rat(1, 2),
            ContractionClass::QuadChatterjea => rat(1, 7),
        }
    }

    pub fn is_quad(self) -> bool {
        self.arity() == 4
    }
}

impl fmt::Display for ContractionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ContractionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        ContractionClass::ALL
            .into_iter()
            .find(|c| c.id() == key)
            .ok_or_else(|| Error::Parameter(format!("unknown contraction class `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    /// Every ordered tuple of distinct points is charged.
    Universal,
    /// Each 4-set is charged only through its best dihedral ordering class.
    CyclicBest,
}

impl Semantics {
    pub const BOTH: [Semantics; 2] = [Semantics::CyclicBest, Semantics::Universal];

    pub fn id(self) -> &'static str {
        match self {
            Semantics::Universal => "universal",
            Semantics::CyclicBest => "cyclic_best",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "universal" => Ok(Semantics::Universal),
            "cyclic_best" | "cyclic-best" => Ok(Semantics::CyclicBest),
            other => Err(Error::Parameter(format!("unknown semantics `{other}`"))),
        }
    }
}

/// A tight constant: a rational, or `+inf` when some tuple has a positive
/// left side against a zero right side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constant {
    Finite(Rational),
    Infinite,
}

impl Constant {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Constant::Finite(r) => Some(r),
            Constant::Infinite => None,
        }
    }

    pub fn is_below(&self, bound: &Rational) -> bool {
        matches!(self, Constant::Finite(r) if r < bound)
    }
}

impl Ord for Constant {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Constant::Finite(a), Constant::Finite(b)) => a.cmp(b),
            (Constant::Finite(_), Constant::Infinite) => Ordering::Less,
            (Constant::Infinite, Constant::Finite(_)) => Ordering::Greater,
            (Constant::Infinite, Constant::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Constant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Finite(r) => write!(f, "{r}"),
            Constant::Infinite => f.write_str("inf"),
        }
    }
}

/// Left side over right side for one tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Rational),
    Infinite,
    /// Both sides vanish, so the tuple says nothing about the constant.
    Unconstrained,
}

impl Ratio {
    pub(crate) fn from_sides(lhs: Rational, rhs: Rational) -> Ratio {
        if rhs.is_zero() {
            if lhs.is_zero() {
                Ratio::Unconstrained
            } else {
                Ratio::Infinite
            }
        } else {
            Ratio::Finite(lhs / rhs)
        }
    }

    pub fn constant(&self) -> Option<Constant> {
        match self {
            Ratio::Finite(r) => Some(Constant::Finite(r.clone())),
            Ratio::Infinite => Some(Constant::Infinite),
            Ratio::Unconstrained => None,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(r) => write!(f, "{r}"),
            Ratio::Infinite => f.write_str("inf"),
            Ratio::Unconstrained => f.write_str("unconstrained"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NotMember,
    /// Below threshold on a finite sample of a larger space.
    InconclusiveSampled,
}

impl Verdict {
    pub fn id(self) -> &'static str {
        match self {
            Verdict::Member => "member",
            Verdict::NotMember => "not_member",
            Verdict::InconclusiveSampled => "inconclusive_sampled",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport {
    pub class: ContractionClass,
    pub semantics: Semantics,
    pub constant: Constant,
    pub threshold: Rational,
    pub verdict: Verdict,
    /// Tuple realising the constant; `None` when no tuple constrains.
    pub witness: Option<Vec<PointId>>,
    pub sampled: bool,
}

impl CertificationReport {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

/// How the tuple scan is scheduled. Both give identical reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Left and right sides of the defining inequality for one ordered tuple.
pub(crate) fn sides(class: ContractionClass, inst: &Instance, t: &[usize]) -> (Rational, Rational) {
    use ContractionClass::*;
    let img = |i: usize, j: usize| inst.d_images(t[i], t[j]);
    let base = |i: usize, j: usize| inst.d(t[i], t[j]);
    let cross = |i: usize, j: usize| inst.d_to_image(t[i], t[j]);
    let disp = |k: usize| (0..k).map(|i| cross(i, i)).sum::<Rational>();
    match class {
        Banach => (img(0, 1), base(0, 1)),
        Kannan => (img(0, 1), disp(2)),
        Chatterjea => (img(0, 1), cross(0, 1) + cross(1, 0)),
        TriPerimetric => (
            img(0, 1) + img(1, 2) + img(2, 0),
            base(0, 1) + base(1, 2) + base(2, 0),
        ),
        GenKannan => (img(0, 1) + img(1, 2) + img(2, 0), disp(3)),
        GenChatterjea => (
            img(0, 1) + img(1, 2) + img(2, 0),
            cross(0, 1) + cross(0, 2) + cross(1, 0) + cross(1, 2) + cross(2, 0) + cross(2, 1),
        ),
        QuadPerimetric => (
            img(0, 1) + img(1, 2) + img(2, 3) + img(3, 0),
            base(0, 1) + base(1, 2) + base(2, 3) + base(3, 0),
        ),
        QuadKannan => (img(0, 1) + img(1, 2) + img(2, 3) + img(3, 0), disp(4)),
        QuadChatterjea => (
            img(0, 1) + img(1, 2) + img(2, 3) + img(3, 0),
            cross(0, 1)
                + cross(0, 3)
                + cross(1, 0)
                + cross(1, 2)
                + cross(2, 1)
                + cross(2, 3)
                + cross(3, 2)
                + cross(3, 0),
        ),
    }
}

/// Exact ratio of the class inequality at one ordered tuple.
pub fn ratio(class: ContractionClass, inst: &Instance, tuple: &[PointId]) -> Result<Ratio> {
    if tuple.len() != class.arity() {
        return Err(Error::WrongArity {
            class: class.id(),
            arity: class.arity(),
            got: tuple.len(),
        });
    }
    for (i, p) in tuple.iter().enumerate() {
        if p.0 >= inst.len() {
            return Err(Error::PointOutOfRange {
                index: p.0,
                len: inst.len(),
            });
        }
        if tuple[..i].contains(p) {
            return Err(Error::RepeatedPoint(inst.label(*p).to_string()));
        }
    }
    let idx: Vec<usize> = tuple.iter().map(|p| p.0).collect();
    let (lhs, rhs) = sides(class, inst, &idx);
    Ok(Ratio::from_sides(lhs, rhs))
}

pub fn certify(
    class: ContractionClass,
    inst: &Instance,
    semantics: Semantics,
) -> Result<CertificationReport> {
    certify_with(class, inst, semantics, Execution::default())
}

pub fn certify_with(
    class: ContractionClass,
    inst: &Instance,
    semantics: Semantics,
    execution: Execution,
) -> Result<CertificationReport> {
    if inst.len() < class.arity() {
        return Err(Error::TooFewPoints {
            class: class.id(),
            arity: class.arity(),
            points: inst.len(),
        });
    }
    let best = enumerate::scan(class, inst, semantics, execution);
    let (constant, witness) = match best {
        Some((c, w)) => (c, Some(w.into_iter().map(PointId).collect())),
        None => (Constant::Finite(Rational::zero()), None),
    };
    let threshold = class.threshold();
    let sampled = inst.is_sampled();
    let verdict = if !constant.is_below(&threshold) {
        Verdict::NotMember
    } else if sampled {
        Verdict::InconclusiveSampled
    } else {
        Verdict::Member
    };
    Ok(CertificationReport {
        class,
        semantics,
        constant,
        threshold,
        verdict,
        witness,
        sampled,
    })
}
