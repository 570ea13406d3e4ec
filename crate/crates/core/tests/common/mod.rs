//! Shared test helpers: a brute-force oracle written straight from the class
//! definitions, and a runner for the command-line binary.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::process::Command;

use num_traits::{Signed, Zero};
use perimetric::{Constant, ContractionClass, Image, Instance, PointId, Rational, Semantics};

/// A location in the ambient space: a sample point or an exact coordinate.
#[derive(Clone)]
enum Loc {
    Point(usize),
    Coord(Rational),
}

pub struct Oracle {
    matrix: Vec<Vec<Rational>>,
    coords: Option<Vec<Rational>>,
    images: Vec<Loc>,
}

/// Ratio of one constraining tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(Rational),
    Infinite,
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Infinite, Value::Infinite) => Ordering::Equal,
            (Value::Infinite, _) => Ordering::Greater,
            (_, Value::Infinite) => Ordering::Less,
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
        }
    }
}

impl Value {
    pub fn constant(&self) -> Constant {
        match self {
            Value::Finite(r) => Constant::Finite(r.clone()),
            Value::Infinite => Constant::Infinite,
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out.sort();
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in k - 1..n {
        for mut s in subsets(last, k - 1) {
            s.push(last);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// The four edges of the closed polygon visiting `t` in order.
fn polygon(t: &[usize]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (0..t.len())
        .map(|i| {
            let (a, b) = (t[i], t[(i + 1) % t.len()]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort();
    edges
}

impl Oracle {
    pub fn new(inst: &Instance) -> Self {
        let space = inst.space();
        let n = inst.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| space.distance(PointId(i), PointId(j)).unwrap())
                    .collect()
            })
            .collect();
        let coords = space.as_line().map(|l| l.coords().to_vec());
        let images = (0..n)
            .map(|i| match inst.image(PointId(i)) {
                Image::Point(q) => Loc::Point(q.0),
                Image::Outside(x) => Loc::Coord(x.clone()),
            })
            .collect();
        Oracle {
            matrix,
            coords,
            images,
        }
    }

    fn coord(&self, l: &Loc) -> Rational {
        match l {
            Loc::Point(i) => self.coords.as_ref().expect("line space")[*i].clone(),
            Loc::Coord(x) => x.clone(),
        }
    }

    fn dist(&self, a: &Loc, b: &Loc) -> Rational {
        match (a, b) {
            (Loc::Point(i), Loc::Point(j)) => self.matrix[*i][*j].clone(),
            _ => (self.coord(a) - self.coord(b)).abs(),
        }
    }

    /// `d(p, q)` between sample points.
    fn d(&self, p: usize, q: usize) -> Rational {
        self.matrix[p][q].clone()
    }

    /// `d(Tp, Tq)`.
    fn dt(&self, p: usize, q: usize) -> Rational {
        self.dist(&self.images[p], &self.images[q])
    }

    /// `d(p, Tq)`.
    fn dx(&self, p: usize, q: usize) -> Rational {
        self.dist(&Loc::Point(p), &self.images[q])
    }

    /// Left and right side of the class inequality, spelled out term by term.
    pub fn sides(&self, class: ContractionClass, t: &[usize]) -> (Rational, Rational) {
        use ContractionClass::*;
        match (class, t) {
            (Banach, &[p, q]) => (self.dt(p, q), self.d(p, q)),
            (Kannan, &[p, q]) => (self.dt(p, q), self.dx(p, p) + self.dx(q, q)),
            (Chatterjea, &[p, q]) => (self.dt(p, q), self.dx(p, q) + self.dx(q, p)),
            (TriPerimetric, &[p, q, r]) => (
                self.dt(p, q) + self.dt(q, r) + self.dt(r, p),
                self.d(p, q) + self.d(q, r) + self.d(r, p),
            ),
            (GenKannan, &[p, q, r]) => (
                self.dt(p, q) + self.dt(q, r) + self.dt(r, p),
                self.dx(p, p) + self.dx(q, q) + self.dx(r, r),
            ),
            (GenChatterjea, &[p, q, r]) => (
                self.dt(p, q) + self.dt(q, r) + self.dt(r, p),
                self.dx(p, q) + self.dx(p, r) + self.dx(q, p) + self.dx(q, r) + self.dx(r, p) + self.dx(r, q),
            ),
            (QuadPerimetric, &[p, q, r, s]) => (
                self.dt(p, q) + self.dt(q, r) + self.dt(r, s) + self.dt(s, p),
                self.d(p, q) + self.d(q, r) + self.d(r, s) + self.d(s, p),
            ),
            (QuadKannan, &[p, q, r, s]) => (
                self.dt(p, q) + self.dt(q, r) + self.dt(r, s) + self.dt(s, p),
                self.dx(p, p) + self.dx(q, q) + self.dx(r, r) + self.dx(s, s),
            ),
            (QuadChatterjea, &[p, q, r, s]) => (
                self.dt(p, q) + self.dt(q, r) + self.dt(r, s) + self.dt(s, p),
                self.dx(p, q)
                    + self.dx(q, p)
                    + self.dx(q, r)
                    + self.dx(r, q)
                    + self.dx(r, s)
                    + self.dx(s, r)
                    + self.dx(s, p)
                    + self.dx(p, s),
            ),
            _ => panic!("tuple length does not match the class"),
        }
    }

    /// `None` when both sides vanish.
    pub fn value(&self, class: ContractionClass, t: &[usize]) -> Option<Value> {
        let (lhs, rhs) = self.sides(class, t);
        if rhs.is_zero() {
            return (!lhs.is_zero()).then_some(Value::Infinite);
        }
        Some(Value::Finite(lhs / rhs))
    }

    /// Constant and lexicographically smallest maximizing tuple.
    pub fn certify(&self, class: ContractionClass, semantics: Semantics) -> (Constant, Option<Vec<usize>>) {
        let n = self.matrix.len();
        let k = class.arity();
        let mut best: Option<(Value, Vec<usize>)> = None;
        let mut offer = |value: Value, tuple: Vec<usize>| {
            let replace = match &best {
                None => true,
                Some((v, t)) => value > *v || (value == *v && tuple < *t),
            };
            if replace {
                best = Some((value, tuple));
            }
        };
        for set in subsets(n, k) {
            let orderings = permutations(&set);
            if semantics == Semantics::Universal || k < 4 {
                for t in orderings {
                    if let Some(v) = self.value(class, &t) {
                        offer(v, t);
                    }
                }
                continue;
            }
            // cyclic_best: orderings sharing a polygon form one class, charged
            // by its largest value; the set is charged by its cheapest class
            let mut classes: Vec<(Vec<(usize, usize)>, Option<Value>, Vec<usize>)> = Vec::new();
            for t in orderings {
                let key = polygon(&t);
                let v = self.value(class, &t);
                match classes.iter_mut().find(|c| c.0 == key) {
                    Some(c) => {
                        if v > c.1 {
                            c.1 = v;
                        }
                    }
                    None => classes.push((key, v, t)),
                }
            }
            assert_eq!(classes.len(), 3);
            // Option orders None (no constraint) first, matching "cheapest"
            let cheapest = classes
                .into_iter()
                .min_by(|a, b| a.1.cmp(&b.1).then(a.2.cmp(&b.2)))
                .unwrap();
            if let Some(v) = cheapest.1 {
                offer(v, cheapest.2);
            }
        }
        match best {
            Some((v, t)) => (v.constant(), Some(t)),
            None => (Constant::Finite(Rational::zero()), None),
        }
    }
}

pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn cli(args: &[&str]) -> CliOutput {
    let out = Command::new(env!("CARGO_BIN_EXE_perimetric"))
        .args(args)
        .output()
        .expect("run the perimetric binary");
    CliOutput {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Commands pinned by golden files, with the file stem for each.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let examples: [(&str, &[&str]); 5] = [
        ("E3.4", &[]),
        ("E3.9", &[]),
        ("E3.10", &["--param", "c=1", "--param", "N=12"]),
        ("E4.9", &[]),
        ("E5.5", &[]),
    ];
    let mut cases = Vec::new();
    for (id, params) in examples {
        for verb in ["certify", "dynamics", "example"] {
            for format in ["text", "json"] {
                let stem = format!(
                    "{}.{verb}.{}",
                    id.to_lowercase().replace('.', "_"),
                    if format == "text" { "txt" } else { "json" }
                );
                let mut args: Vec<String> = vec![verb.into(), id.into(), "--format".into(), format.into()];
                args.extend(params.iter().map(|s| s.to_string()));
                cases.push((stem, args));
            }
        }
    }
    cases
}

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}
