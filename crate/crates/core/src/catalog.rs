//! Built-in example instances with their expected results.
//!
//! Each generator returns the instance together with a table of
//! expectations: exact constants and verdicts per class and semantics, and
//! fixed and periodic point sets. [`Expectation::check`] evaluates one entry
//! against the certifier and the orbit analysis.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::certifier::{
    certify_with, ratio, Constant, ContractionClass, Execution, Ratio, Semantics, Verdict,
};
use crate::dynamics::{analyze_dynamics, DEFAULT_MAX_PERIOD};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::map::{Domain, Piece, SelfMap};
use crate::rational::{int, parse_rational, ratio as rat, Rational};
use crate::space::{LineSpace, PointId, TabulatedSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleId {
    E3_4,
    E3_5,
    E3_6,
    E3_9,
    E3_10,
    E3_11,
    E4_5,
    E4_8,
    E4_9,
    E4_10,
    E5_5,
}

impl ExampleId {
    pub const ALL: [ExampleId; 11] = [
        ExampleId::E3_4,
        ExampleId::E3_5,
        ExampleId::E3_6,
        ExampleId::E3_9,
        ExampleId::E3_10,
        ExampleId::E3_11,
        ExampleId::E4_5,
        ExampleId::E4_8,
        ExampleId::E4_9,
        ExampleId::E4_10,
        ExampleId::E5_5,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExampleId::E3_4 => "E3.4",
            ExampleId::E3_5 => "E3.5",
            ExampleId::E3_6 => "E3.6",
            ExampleId::E3_9 => "E3.9",
            ExampleId::E3_10 => "E3.10",
            ExampleId::E3_11 => "E3.11",
            ExampleId::E4_5 => "E4.5",
            ExampleId::E4_8 => "E4.8",
            ExampleId::E4_9 => "E4.9",
            ExampleId::E4_10 => "E4.10",
            ExampleId::E5_5 => "E5.5",
        }
    }

    /// Parameter keys the generator reads.
    pub fn param_keys(self) -> &'static [&'static str] {
        match self {
            ExampleId::E3_10 => &["c", "N"],
            ExampleId::E3_11 => &["J"],
            ExampleId::E4_8 => &["k", "m"],
            _ => &[],
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches(['E', 'e']);
        ExampleId::ALL
            .into_iter()
            .find(|e| &e.id()[1..] == key)
            .ok_or_else(|| Error::Parameter(format!("unknown example `{s}`")))
    }
}

/// Generator parameters. Unused keys are ignored by examples that do not
/// read them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    /// Gap scale of the halving ladder.
    pub c: Rational,
    /// Last ladder index kept by the truncation.
    pub n: usize,
    /// Dyadic depth of the `[0, 1]` sample.
    pub j: u32,
    /// Divisor of the map `x -> x / k`.
    pub k: Rational,
    /// Number of grid points in `[0, 1]`.
    pub m: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            c: int(1),
            n: 12,
            j: 4,
            k: int(6),
            m: 20,
        }
    }
}

impl Params {
    /// Applies one `key=value` assignment.
    pub fn set(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Parameter(format!("expected key=value, got `{assignment}`")))?;
        let bad = |e: &dyn fmt::Display| Error::Parameter(format!("bad value for `{key}`: {e}"));
        match key.trim() {
            "c" => self.c = parse_rational(value).map_err(|e| bad(&e))?,
            "k" => self.k = parse_rational(value).map_err(|e| bad(&e))?,
            "N" => self.n = value.trim().parse().map_err(|e| bad(&e))?,
            "J" => self.j = value.trim().parse().map_err(|e| bad(&e))?,
            "m" => self.m = value.trim().parse().map_err(|e| bad(&e))?,
            other => return Err(Error::Parameter(format!("unknown parameter `{other}`"))),
        }
        Ok(())
    }

    pub fn describe(&self, id: ExampleId) -> String {
        id.param_keys()
            .iter()
            .map(|key| match *key {
                "c" => format!("c={}", self.c),
                "N" => format!("N={}", self.n),
                "J" => format!("J={}", self.j),
                "k" => format!("k={}", self.k),
                _ => format!("m={}", self.m),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Exact(Constant),
    AtLeast(Rational),
    Below(Rational),
}

impl Target {
    fn admits(&self, c: &Constant) -> bool {
        match self {
            Target::Exact(e) => e == c,
            Target::AtLeast(r) => c >= &Constant::Finite(r.clone()),
            Target::Below(r) => c.is_below(r),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Exact(c) => write!(f, "{c}"),
            Target::AtLeast(r) => write!(f, ">= {r}"),
            Target::Below(r) => write!(f, "< {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Certify {
        class: ContractionClass,
        semantics: Semantics,
        constant: Target,
        verdict: Verdict,
        witness: Option<Vec<String>>,
    },
    FixedPoints(Vec<String>),
    Periodic { period: usize, points: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub expectation: Expectation,
    pub actual: String,
    pub holds: bool,
}

impl Expectation {
    pub fn check(&self, inst: &Instance, execution: Execution) -> Result<CheckOutcome> {
        let labels = |ps: &[PointId]| ps.iter().map(|p| inst.label(*p).to_string()).collect::<Vec<_>>();
        let (actual, holds) = match self {
            Expectation::Certify {
                class,
                semantics,
                constant,
                verdict,
                witness,
            } => {
                let rep = certify_with(*class, inst, *semantics, execution)?;
                let got_witness = rep.witness.as_deref().map(labels);
                let witness_ok = witness.is_none() || witness == &got_witness;
                let shown = match &got_witness {
                    Some(w) => format!("{} {} ({})", rep.constant, rep.verdict, w.join(", ")),
                    None => format!("{} {}", rep.constant, rep.verdict),
                };
                (
                    shown,
                    constant.admits(&rep.constant) && rep.verdict == *verdict && witness_ok,
                )
            }
            Expectation::FixedPoints(expected) => {
                let dynamics = analyze_dynamics(inst, DEFAULT_MAX_PERIOD)?;
                let got = labels(&dynamics.fixed_points);
                (format!("{{{}}}", got.join(", ")), &got == expected)
            }
            Expectation::Periodic { period, points } => {
                let dynamics = analyze_dynamics(inst, DEFAULT_MAX_PERIOD.max(*period))?;
                let got = labels(&dynamics.with_period(*period));
                (format!("{{{}}}", got.join(", ")), &got == points)
            }
        };
        Ok(CheckOutcome {
            expectation: self.clone(),
            actual,
            holds,
        })
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Certify {
                class,
                semantics,
                constant,
                verdict,
                witness,
            } => {
                write!(f, "{class} {semantics}: {constant} {verdict}")?;
                if let Some(w) = witness {
                    write!(f, " ({})", w.join(", "))?;
                }
                Ok(())
            }
            Expectation::FixedPoints(ps) => write!(f, "fixed points: {{{}}}", ps.join(", ")),
            Expectation::Periodic { period, points } => {
                write!(f, "prime period {period}: {{{}}}", points.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub id: ExampleId,
    pub params: Params,
    pub instance: Instance,
    pub expectations: Vec<Expectation>,
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn exact(
    class: ContractionClass,
    semantics: Semantics,
    value: Constant,
    verdict: Verdict,
    witness: Option<&[&str]>,
) -> Expectation {
    Expectation::Certify {
        class,
        semantics,
        constant: Target::Exact(value),
        verdict,
        witness: witness.map(strings),
    }
}

fn fin(r: Rational) -> Constant {
    Constant::Finite(r)
}

/// Symmetric table with `default` off the diagonal and the listed overrides.
fn table(labels: &[&str], default: i64, overrides: &[(&str, &str, i64)]) -> Result<TabulatedSpace> {
    let n = labels.len();
    let mut m = vec![vec![int(default); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::zero();
    }
    let at = |l: &str| labels.iter().position(|x| *x == l).expect("known label");
    for (a, b, v) in overrides {
        let (i, j) = (at(a), at(b));
        m[i][j] = int(*v);
        m[j][i] = int(*v);
    }
    TabulatedSpace::new(strings(labels), m)
}

fn constant_pieces(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> SelfMap {
    SelfMap::Piecewise(
        pairs
            .into_iter()
            .map(|(x, y)| Piece::new(Domain::Set(vec![x]), Rational::zero(), y))
            .collect(),
    )
}

fn unit_interval() -> Domain {
    Domain::Interval {
        lo: Rational::zero(),
        hi: Rational::one(),
    }
}

pub fn generate(id: ExampleId, params: &Params) -> Result<Generated> {
    use ContractionClass::*;
    use Semantics::{CyclicBest, Universal};
    use Verdict::*;
    let (instance, expectations) = match id {
        ExampleId::E3_4 => {
            let space = TabulatedSpace::discrete(["w", "x", "y", "z"])?;
            let inst = Instance::new(space, SelfMap::table([1, 1, 2, 3]))?;
            (
                inst,
                vec![
                    exact(QuadPerimetric, CyclicBest, fin(rat(3, 4)), Member, None),
                    exact(QuadPerimetric, Universal, fin(int(1)), NotMember, Some(&["w", "y", "x", "z"])),
                    Expectation::FixedPoints(strings(&["x", "y", "z"])),
                    Expectation::Periodic { period: 2, points: vec![] },
                    Expectation::Periodic { period: 3, points: vec![] },
                ],
            )
        }
        ExampleId::E3_5 => {
            let space = TabulatedSpace::discrete(["a", "b", "c", "d"])?;
            let inst = Instance::new(space, SelfMap::table([2, 2, 1, 1]))?;
            (
                inst,
                vec![
                    exact(QuadPerimetric, CyclicBest, fin(rat(1, 2)), Member, None),
                    exact(QuadPerimetric, Universal, fin(int(1)), NotMember, None),
                    Expectation::FixedPoints(vec![]),
                    Expectation::Periodic { period: 2, points: strings(&["b", "c"]) },
                ],
            )
        }
        ExampleId::E3_6 => {
            let space = TabulatedSpace::discrete(["p", "q", "r", "s"])?;
            let inst = Instance::new(space, SelfMap::table([2, 2, 3, 1]))?;
            (
                inst,
                vec![
                    exact(QuadPerimetric, CyclicBest, fin(rat(3, 4)), Member, None),
                    exact(QuadPerimetric, Universal, fin(int(1)), NotMember, None),
                    Expectation::FixedPoints(vec![]),
                    Expectation::Periodic { period: 3, points: strings(&["q", "r", "s"]) },
                ],
            )
        }
        ExampleId::E3_9 => {
            let line = LineSpace::new(vec![int(0), rat(1, 3), rat(2, 3), int(1)])?;
            let inst = Instance::new(line, SelfMap::table([0, 0, 1, 2]))?;
            (
                inst,
                vec![
                    exact(QuadPerimetric, CyclicBest, fin(rat(2, 3)), Member, None),
                    exact(QuadPerimetric, Universal, fin(rat(3, 4)), Member, None),
                    exact(Banach, Universal, fin(int(1)), NotMember, Some(&["1/3", "2/3"])),
                    exact(TriPerimetric, Universal, fin(int(1)), NotMember, Some(&["1/3", "2/3", "1"])),
                    Expectation::FixedPoints(strings(&["0"])),
                    Expectation::Periodic { period: 2, points: vec![] },
                    Expectation::Periodic { period: 3, points: vec![] },
                ],
            )
        }
        ExampleId::E3_10 => {
            let inst = halving_ladder(&params.c, params.n)?;
            // both constants are the same for every N >= 8 and every c
            (
                inst,
                vec![
                    exact(Banach, Universal, fin(int(1)), NotMember, Some(&["x0", "x1"])),
                    exact(TriPerimetric, Universal, fin(int(1)), NotMember, Some(&["x0", "x1", "x2"])),
                    exact(QuadPerimetric, CyclicBest, fin(rat(7, 8)), InconclusiveSampled, Some(&["x0", "x1", "x2", "x5"])),
                    exact(QuadPerimetric, Universal, fin(rat(9, 10)), InconclusiveSampled, Some(&["x0", "x2", "x1", "x5"])),
                    Expectation::FixedPoints(strings(&["x*"])),
                ],
            )
        }
        ExampleId::E3_11 => {
            let depth = params.j;
            if !(1..=10).contains(&depth) {
                return Err(Error::Parameter(format!("J must be between 1 and 10, got {depth}")));
            }
            let denom = 1i64 << depth;
            let mut coords = vec![int(-1), rat(-2, 3), rat(-1, 3)];
            coords.extend((0..=denom).map(|j| rat(j, denom)));
            let line = LineSpace::new(coords)?.sampled();
            let mut pieces = vec![Piece::new(unit_interval(), rat(1, 2), Rational::zero())];
            if let SelfMap::Piecewise(rest) = constant_pieces([
                (rat(-1, 3), int(0)),
                (rat(-2, 3), rat(-1, 3)),
                (int(-1), rat(-2, 3)),
            ]) {
                pieces.extend(rest);
            }
            let inst = Instance::new(line, SelfMap::Piecewise(pieces))?;
            (
                inst,
                vec![
                    exact(Banach, Universal, fin(int(1)), NotMember, Some(&["-1", "-2/3"])),
                    exact(TriPerimetric, Universal, fin(int(1)), NotMember, Some(&["-1", "-2/3", "-1/3"])),
                    exact(QuadPerimetric, CyclicBest, fin(rat(2, 3)), InconclusiveSampled, None),
                    exact(QuadPerimetric, Universal, fin(rat(3, 4)), InconclusiveSampled, None),
                    Expectation::FixedPoints(strings(&["0"])),
                ],
            )
        }
        ExampleId::E4_5 => {
            let space = table(&["a", "b", "c", "d"], 1, &[("a", "d", 8), ("b", "d", 8), ("c", "d", 8)])?;
            let inst = Instance::new(space, SelfMap::table([0, 1, 2, 0]))?;
            (
                inst,
                vec![
                    exact(QuadKannan, CyclicBest, fin(rat(3, 8)), Member, None),
                    exact(QuadKannan, Universal, fin(rat(1, 2)), NotMember, Some(&["a", "b", "d", "c"])),
                    Expectation::FixedPoints(strings(&["a", "b", "c"])),
                ],
            )
        }
        ExampleId::E4_8 => {
            let (k, m) = (&params.k, params.m);
            if k <= &int(1) {
                return Err(Error::Parameter(format!("k must exceed 1, got {k}")));
            }
            if m < 4 {
                return Err(Error::Parameter(format!("m must be at least 4, got {m}")));
            }
            let step = m as i64 - 1;
            let line = LineSpace::new((0..=step).map(|j| rat(j, step)).collect())?.sampled();
            let inst = Instance::new(
                line,
                SelfMap::Piecewise(vec![Piece::new(unit_interval(), Rational::one() / k, Rational::zero())]),
            )?;
            // a = 1, d = 0 and b, c as small as the grid allows
            let km1 = k - Rational::one();
            let cyclic = int(2) * int(step) / (&km1 * int(m as i64 + 2));
            let verdict = if cyclic >= rat(1, 2) { NotMember } else { InconclusiveSampled };
            (
                inst,
                vec![
                    exact(QuadKannan, CyclicBest, fin(cyclic), verdict, None),
                    Expectation::Certify {
                        class: QuadKannan,
                        semantics: CyclicBest,
                        constant: Target::Below(int(2) / km1),
                        verdict,
                        witness: None,
                    },
                    Expectation::FixedPoints(strings(&["0"])),
                ],
            )
        }
        ExampleId::E4_9 => {
            let space = table(&["a", "b", "c", "d"], 3, &[("a", "b", 1)])?;
            let inst = Instance::new(space, SelfMap::table([0, 1, 1, 0]))?;
            (
                inst,
                vec![
                    exact(Kannan, Universal, Constant::Infinite, NotMember, Some(&["a", "b"])),
                    Expectation::Certify {
                        class: GenKannan,
                        semantics: Universal,
                        constant: Target::AtLeast(rat(2, 3)),
                        verdict: NotMember,
                        witness: None,
                    },
                    exact(QuadKannan, CyclicBest, fin(rat(1, 3)), Member, None),
                    exact(QuadKannan, Universal, fin(rat(2, 3)), NotMember, None),
                    Expectation::FixedPoints(strings(&["a", "b"])),
                    Expectation::Periodic { period: 2, points: vec![] },
                    Expectation::Periodic { period: 3, points: vec![] },
                ],
            )
        }
        ExampleId::E4_10 => {
            let space = table(&["p", "q", "r", "s"], 3, &[("p", "r", 1)])?;
            let inst = Instance::new(space, SelfMap::table([2, 3, 0, 2]))?;
            (
                inst,
                vec![
                    exact(QuadKannan, CyclicBest, fin(rat(7, 8)), NotMember, None),
                    exact(QuadKannan, Universal, fin(int(1)), NotMember, None),
                    Expectation::FixedPoints(vec![]),
                    Expectation::Periodic { period: 2, points: strings(&["p", "r"]) },
                ],
            )
        }
        ExampleId::E5_5 => {
            let space = table(&["w", "x", "y", "z"], 1, &[("w", "x", 10), ("w", "y", 10), ("w", "z", 10)])?;
            let inst = Instance::new(space, SelfMap::table([1, 1, 2, 3]))?;
            (
                inst,
                vec![
                    exact(QuadChatterjea, CyclicBest, fin(rat(3, 25)), Member, None),
                    exact(QuadChatterjea, Universal, fin(rat(2, 13)), NotMember, Some(&["w", "y", "x", "z"])),
                    Expectation::FixedPoints(strings(&["x", "y", "z"])),
                    Expectation::Periodic { period: 3, points: vec![] },
                ],
            )
        }
    };
    Ok(Generated {
        id,
        params: params.clone(),
        instance,
        expectations,
    })
}

/// Gap between `x_a` and `x_{a+1}`: `c / 2^floor(a/3)`.
fn gap(c: &Rational, a: usize) -> Rational {
    c / Rational::from_integer(num_bigint::BigInt::from(1u8) << (a / 3))
}

fn ladder_coords(c: &Rational, upto: usize) -> Vec<Rational> {
    let mut coords = Vec::with_capacity(upto + 1);
    let mut x = Rational::zero();
    for a in 0..=upto {
        coords.push(x.clone());
        x += gap(c, a);
    }
    coords
}

fn ladder_labels(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("x{i}")).chain(["x*".to_string()]).collect()
}

fn check_ladder(c: &Rational, n: usize) -> Result<()> {
    if !c.is_positive() {
        return Err(Error::Parameter(format!("c must be positive, got {c}")));
    }
    if n < 8 {
        return Err(Error::Parameter(format!("N must be at least 8, got {n}")));
    }
    Ok(())
}

/// Points `x_0..x_N` on the line at the partial sums of the gaps, plus the
/// limit `x*` at `6c`. The map shifts `x_n` to `x_{n+1}`; the image of
/// `x_N` is the exact coordinate of `x_{N+1}`, outside the truncation, so the
/// space is flagged sampled.
pub fn halving_ladder(c: &Rational, n: usize) -> Result<Instance> {
    check_ladder(c, n)?;
    let coords = ladder_coords(c, n + 1);
    let limit = int(6) * c;
    let mut points = coords[..=n].to_vec();
    points.push(limit.clone());
    let line = LineSpace::with_labels(ladder_labels(n), points)?.sampled();
    let map = constant_pieces(
        coords
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .chain([(limit.clone(), limit)]),
    );
    Instance::new(line, map)
}

/// The ladder metric evaluated case by case, without the line embedding:
/// consecutive gaps, sums of gaps, `6c` minus a sum for the limit point.
pub fn halving_ladder_table(c: &Rational, n: usize) -> Result<TabulatedSpace> {
    check_ladder(c, n)?;
    let sum = |from: usize, to: usize| (from..to).map(|a| gap(c, a)).sum::<Rational>();
    let star = n + 1;
    let d = |i: usize, j: usize| -> Rational {
        let (i, j) = (i.min(j), i.max(j));
        if i == j {
            Rational::zero()
        } else if j == star {
            int(6) * c - sum(0, i)
        } else if j == i + 1 {
            gap(c, i)
        } else {
            sum(i, j)
        }
    };
    let matrix = (0..=star).map(|i| (0..=star).map(|j| d(i, j)).collect()).collect();
    TabulatedSpace::new(ladder_labels(n), matrix)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRow {
    pub k: usize,
    pub value: Rational,
    pub predicted: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderDiagnostics {
    /// Ratio on `(x_k, x_l, x_m, x*)`, which does not depend on `l, m`.
    pub r_k: Vec<LadderRow>,
    /// Largest ratio on `(x_k, x_l, x_m, x_n)`, with the `(k, n)` attaining it.
    pub max_r_kn: Rational,
    pub argmax_r_kn: (usize, usize),
    pub within_eleven_twelfths: bool,
}

impl LadderDiagnostics {
    pub fn predictions_hold(&self) -> bool {
        self.r_k.iter().all(|r| r.value == r.predicted)
    }
}

pub fn predicted_r_k(k: usize) -> Rational {
    match k % 3 {
        0 => rat(5, 6),
        1 => rat(4, 5),
        _ => rat(3, 4),
    }
}

pub fn ratio_ladder_diagnostics(c: &Rational, n: usize) -> Result<LadderDiagnostics> {
    let inst = halving_ladder(c, n)?;
    let star = PointId(n + 1);
    let quad = |t: [usize; 4], last: PointId| -> Result<Rational> {
        let tuple = [PointId(t[0]), PointId(t[1]), PointId(t[2]), last];
        match ratio(ContractionClass::QuadPerimetric, &inst, &tuple)? {
            Ratio::Finite(r) => Ok(r),
            other => Err(Error::Parameter(format!("unexpected ratio {other} on the ladder"))),
        }
    };
    let mut r_k = Vec::new();
    for k in 0..=n - 2 {
        let value = quad([k, k + 1, k + 2, 0], star)?;
        r_k.push(LadderRow {
            k,
            value,
            predicted: predicted_r_k(k),
        });
    }
    let mut best: Option<(Rational, (usize, usize))> = None;
    for k in 0..=n - 3 {
        for last in k + 3..=n {
            let value = quad([k, k + 1, k + 2, 0], PointId(last))?;
            if best.as_ref().is_none_or(|(b, _)| &value > b) {
                best = Some((value, (k, last)));
            }
        }
    }
    let (max_r_kn, argmax_r_kn) = best.expect("N >= 8 leaves room for quadruples");
    Ok(LadderDiagnostics {
        r_k,
        within_eleven_twelfths: max_r_kn <= rat(11, 12),
        max_r_kn,
        argmax_r_kn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        for id in ExampleId::ALL {
            assert_eq!(id.id().parse::<ExampleId>().unwrap(), id);
        }
        assert_eq!("4.10".parse::<ExampleId>().unwrap(), ExampleId::E4_10);
        assert!("E4.1".parse::<ExampleId>().is_err());
    }

    #[test]
    fn params_parse() {
        let mut p = Params::default();
        p.set("c=1/2").unwrap();
        p.set("N=30").unwrap();
        assert_eq!((p.c.clone(), p.n), (rat(1, 2), 30));
        assert!(p.set("q=1").is_err());
        assert!(p.set("c=0.(3)").is_err());
    }

    #[test]
    fn ladder_distances() {
        let inst = halving_ladder(&int(1), 12).unwrap();
        let x = |l: &str| inst.point(l).unwrap();
        assert_eq!(inst.distance(x("x0"), x("x3")).unwrap(), int(3));
        assert_eq!(inst.distance(x("x3"), x("x*")).unwrap(), int(3));
        assert_eq!(inst.distance(x("x0"), x("x*")).unwrap(), int(6));
        let table = halving_ladder_table(&int(1), 12).unwrap();
        assert_eq!(table.matrix(), inst.space().matrix().as_slice());
    }

    #[test]
    fn ladder_ratios() {
        let diag = ratio_ladder_diagnostics(&int(1), 12).unwrap();
        assert!(diag.predictions_hold());
        assert_eq!(diag.r_k[3].value, rat(5, 6));
        assert_eq!(diag.r_k[2].value, rat(3, 4));
        assert!(diag.within_eleven_twelfths);
    }

    #[test]
    fn default_expectations_hold() {
        for id in ExampleId::ALL {
            let g = generate(id, &Params::default()).unwrap();
            for e in &g.expectations {
                let o = e.check(&g.instance, Execution::Serial).unwrap();
                assert!(o.holds, "{id}: expected {e}, got {}", o.actual);
            }
        }
    }
}
