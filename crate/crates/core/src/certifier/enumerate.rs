//! The tuple scan behind `certify`.
//!
//! All distances the classes need live in three tables: `d(i, j)`,
//! `d(Ti, Tj)` and `d(i, Tj)`. They are scaled by the common denominator so
//! the scan compares integer fractions by cross-multiplication. Tables whose
//! entries fit comfortably use `i128`; anything larger falls back to
//! `BigInt`.
//!
//! Arity-4 ratios are invariant under the dihedral group, so each 4-set
//! `a < b < c < d` is visited through three representatives `(a,b,c,d)`,
//! `(a,b,d,c)`, `(a,c,b,d)`; each is the lexicographic minimum of its class.
//! Arity-2 and arity-3 ratios are fully symmetric, so sorted tuples suffice.

use std::cmp::Ordering;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Constant, ContractionClass, Execution, Semantics};
use crate::instance::Instance;
use crate::rational::Rational;

pub(crate) trait Weight:
    Clone + Ord + Zero + Send + Sync + Add<Output = Self> + Mul<Output = Self>
{
    fn from_big(value: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Weight for i128 {
    fn from_big(value: &BigInt) -> Self {
        value.to_i128().expect("entry checked to fit")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Weight for BigInt {
    fn from_big(value: &BigInt) -> Self {
        value.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `lhs / rhs` with both sides nonnegative.
#[derive(Clone, Debug)]
struct Frac<W> {
    lhs: W,
    rhs: W,
}

impl<W: Weight> Frac<W> {
    fn unconstrained(&self) -> bool {
        self.lhs.is_zero() && self.rhs.is_zero()
    }

    fn infinite(&self) -> bool {
        self.rhs.is_zero() && !self.lhs.is_zero()
    }

    /// Total order: unconstrained < finite values < infinite.
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |f: &Self| {
            if f.unconstrained() {
                0
            } else if f.infinite() {
                2
            } else {
                1
            }
        };
        match (rank(self), rank(other)) {
            (1, 1) => (self.lhs.clone() * other.rhs.clone()).cmp(&(other.lhs.clone() * self.rhs.clone())),
            (a, b) => a.cmp(&b),
        }
    }

    fn constant(&self) -> Constant {
        if self.infinite() {
            Constant::Infinite
        } else {
            Constant::Finite(Rational::new(self.lhs.to_big(), self.rhs.to_big()))
        }
    }
}

struct Tables<W> {
    n: usize,
    base: Vec<W>,
    img: Vec<W>,
    cross: Vec<W>,
}

impl<W: Weight> Tables<W> {
    #[inline]
    fn base(&self, i: usize, j: usize) -> W {
        self.base[i * self.n + j].clone()
    }

    #[inline]
    fn img(&self, i: usize, j: usize) -> W {
        self.img[i * self.n + j].clone()
    }

    #[inline]
    fn cross(&self, i: usize, j: usize) -> W {
        self.cross[i * self.n + j].clone()
    }

    fn perimeter(&self, t: &[usize], f: impl Fn(&Self, usize, usize) -> W) -> W {
        let k = t.len();
        (0..k).fold(W::zero(), |acc, i| acc + f(self, t[i], t[(i + 1) % k]))
    }

    fn displacement(&self, t: &[usize]) -> W {
        t.iter().fold(W::zero(), |acc, &i| acc + self.cross(i, i))
    }

    fn eval(&self, class: ContractionClass, t: &[usize]) -> Frac<W> {
        use ContractionClass::*;
        let lhs = if t.len() == 2 {
            self.img(t[0], t[1])
        } else {
            self.perimeter(t, Self::img)
        };
        let rhs = match class {
            Banach => self.base(t[0], t[1]),
            TriPerimetric | QuadPerimetric => self.perimeter(t, Self::base),
            Kannan | GenKannan | QuadKannan => self.displacement(t),
            Chatterjea => self.cross(t[0], t[1]) + self.cross(t[1], t[0]),
            GenChatterjea => {
                let mut sum = W::zero();
                for &i in t {
                    for &j in t {
                        if i != j {
                            sum = sum + self.cross(i, j);
                        }
                    }
                }
                sum
            }
            QuadChatterjea => {
                // each cyclic neighbour pair in both directions
                let mut sum = W::zero();
                for i in 0..4 {
                    let (p, q) = (t[i], t[(i + 1) % 4]);
                    sum = sum + self.cross(p, q) + self.cross(q, p);
                }
                sum
            }
        };
        Frac { lhs, rhs }
    }
}

fn raw_tables(inst: &Instance) -> [Vec<Rational>; 3] {
    let n = inst.len();
    let mut base = Vec::with_capacity(n * n);
    let mut img = Vec::with_capacity(n * n);
    let mut cross = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            base.push(inst.d(i, j));
            img.push(inst.d_images(i, j));
            cross.push(inst.d_to_image(i, j));
        }
    }
    [base, img, cross]
}

fn scale(tables: &[Vec<Rational>; 3]) -> [Vec<BigInt>; 3] {
    let mut lcm = BigInt::one();
    for r in tables.iter().flatten() {
        lcm = lcm.lcm(r.denom());
    }
    tables
        .clone()
        .map(|t| t.iter().map(|r| r.numer() * (&lcm / r.denom())).collect())
}

fn build<W: Weight>(n: usize, scaled: &[Vec<BigInt>; 3]) -> Tables<W> {
    let conv = |v: &Vec<BigInt>| v.iter().map(W::from_big).collect();
    Tables {
        n,
        base: conv(&scaled[0]),
        img: conv(&scaled[1]),
        cross: conv(&scaled[2]),
    }
}

/// Largest ratio and its lexicographically smallest witness, or `None` when
/// no tuple constrains.
pub(crate) fn scan(
    class: ContractionClass,
    inst: &Instance,
    semantics: Semantics,
    execution: Execution,
) -> Option<(Constant, Vec<usize>)> {
    let n = inst.len();
    let scaled = scale(&raw_tables(inst));
    // Up to eight summed entries, then one product: 8e18 squared stays
    // below i128::MAX.
    let limit = BigInt::from(10u64.pow(18));
    let small = scaled.iter().flatten().all(|v| v <= &limit);
    if small {
        run(&build::<i128>(n, &scaled), class, semantics, execution)
    } else {
        run(&build::<BigInt>(n, &scaled), class, semantics, execution)
    }
}

type Best<W> = Option<(Frac<W>, Vec<usize>)>;

fn better<W: Weight>(a: Best<W>, b: Best<W>) -> Best<W> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => match a.0.cmp(&b.0) {
            Ordering::Greater => Some(a),
            Ordering::Less => Some(b),
            Ordering::Equal => Some(if a.1 <= b.1 { a } else { b }),
        },
    }
}

fn offer<W: Weight>(best: &mut Best<W>, frac: Frac<W>, tuple: &[usize]) {
    if frac.unconstrained() {
        return;
    }
    let replace = match best {
        None => true,
        Some((f, w)) => match frac.cmp(f) {
            Ordering::Greater => true,
            Ordering::Equal => tuple < w.as_slice(),
            Ordering::Less => false,
        },
    };
    if replace {
        *best = Some((frac, tuple.to_vec()));
    }
}

/// Every tuple whose sorted form starts with `a < b`.
fn scan_head<W: Weight>(
    t: &Tables<W>,
    class: ContractionClass,
    semantics: Semantics,
    a: usize,
    b: usize,
) -> Best<W> {
    let n = t.n;
    let mut best: Best<W> = None;
    match class.arity() {
        2 => offer(&mut best, t.eval(class, &[a, b]), &[a, b]),
        3 => {
            for c in b + 1..n {
                offer(&mut best, t.eval(class, &[a, b, c]), &[a, b, c]);
            }
        }
        _ => {
            for c in b + 1..n {
                for d in c + 1..n {
                    let reps = [[a, b, c, d], [a, b, d, c], [a, c, b, d]];
                    match semantics {
                        Semantics::Universal => {
                            for r in &reps {
                                offer(&mut best, t.eval(class, r), r);
                            }
                        }
                        Semantics::CyclicBest => {
                            // cheapest class, earliest representative on ties
                            let mut pick = (t.eval(class, &reps[0]), 0);
                            for (k, r) in reps.iter().enumerate().skip(1) {
                                let f = t.eval(class, r);
                                if f.cmp(&pick.0) == Ordering::Less {
                                    pick = (f, k);
                                }
                            }
                            offer(&mut best, pick.0, &reps[pick.1]);
                        }
                    }
                }
            }
        }
    }
    best
}

fn heads(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

fn run<W: Weight>(
    t: &Tables<W>,
    class: ContractionClass,
    semantics: Semantics,
    execution: Execution,
) -> Option<(Constant, Vec<usize>)> {
    let heads = heads(t.n);
    let best = match execution {
        Execution::Serial => heads
            .iter()
            .fold(None, |acc, &(a, b)| better(acc, scan_head(t, class, semantics, a, b))),
        Execution::Parallel => parallel(t, class, semantics, &heads),
    };
    best.map(|(f, w)| (f.constant(), w))
}

#[cfg(feature = "parallel")]
fn parallel<W: Weight>(
    t: &Tables<W>,
    class: ContractionClass,
    semantics: Semantics,
    heads: &[(usize, usize)],
) -> Best<W> {
    use rayon::prelude::*;
    heads
        .par_iter()
        .map(|&(a, b)| scan_head(t, class, semantics, a, b))
        .reduce(|| None, better)
}

#[cfg(not(feature = "parallel"))]
fn parallel<W: Weight>(
    t: &Tables<W>,
    class: ContractionClass,
    semantics: Semantics,
    heads: &[(usize, usize)],
) -> Best<W> {
    heads
        .iter()
        .fold(None, |acc, &(a, b)| better(acc, scan_head(t, class, semantics, a, b)))
}
