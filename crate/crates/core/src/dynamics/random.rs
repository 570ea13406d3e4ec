//! Seeded random instances for property testing.
//!
//! Distances are drawn as rationals in `[1, 10]` and repaired into a metric
//! by min-plus (shortest path) closure. Maps favour small image sets, which
//! is where members of the four-point classes live.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certifier::{certify_with, CertificationReport, ContractionClass, Execution, Semantics};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::map::SelfMap;
use crate::rational::{ratio, Rational};
use crate::space::TabulatedSpace;

/// Replaces every entry by the length of the shortest path between its ends.
pub fn min_plus_closure(matrix: &mut [Vec<Rational>]) {
    let n = matrix.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &matrix[i][k] + &matrix[k][j];
                if via < matrix[i][j] {
                    matrix[i][j] = via;
                }
            }
        }
    }
}

pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> TabulatedSpace {
    let mut m = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let den: i64 = rng.random_range(1..=4);
            let num: i64 = rng.random_range(den..=10 * den);
            m[i][j] = ratio(num, den);
            m[j][i] = m[i][j].clone();
        }
    }
    min_plus_closure(&mut m);
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    TabulatedSpace::new(labels, m).expect("closure of a positive symmetric matrix is a metric")
}

/// A map whose image is a small random subset of the points.
pub fn random_map<R: Rng>(rng: &mut R, n: usize) -> SelfMap {
    // image size 1 with probability 1/2, 2 with 1/4, ...
    let mut size = 1;
    while size < n && rng.random_bool(0.5) {
        size += 1;
    }
    let points: Vec<usize> = (0..n).collect();
    let image: Vec<usize> = points.choose_multiple(rng, size).copied().collect();
    SelfMap::table((0..n).map(|_| *image.choose(rng).expect("non-empty image")))
}

pub fn random_instance<R: Rng>(rng: &mut R, n: usize) -> Instance {
    let space = random_space(rng, n);
    let map = random_map(rng, n);
    Instance::new(space, map).expect("table map over the space")
}

/// Deterministic instance for `(seed, n)`.
pub fn seeded_instance(seed: u64, n: usize) -> Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

#[derive(Debug, Clone)]
pub struct MemberHit {
    pub attempt: usize,
    pub instance: Instance,
    pub class: ContractionClass,
    pub report: CertificationReport,
}

/// Instances on which some four-point class certifies as a universal member.
///
/// Each attempt draws one instance; every class it belongs to yields one
/// hit. The stream is a pure function of the seed.
pub fn random_member_search(
    seed: u64,
    n_points: usize,
    attempts: usize,
) -> Result<impl Iterator<Item = MemberHit>> {
    if !(4..=8).contains(&n_points) {
        return Err(Error::Parameter(format!(
            "n_points must be between 4 and 8, got {n_points}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..attempts).flat_map(move |attempt| {
        let instance = random_instance(&mut rng, n_points);
        ContractionClass::QUAD
            .into_iter()
            .filter_map(|class| {
                let report =
                    certify_with(class, &instance, Semantics::Universal, Execution::Serial)
                        .expect("n_points >= 4");
                report.is_member().then(|| MemberHit {
                    attempt,
                    instance: instance.clone(),
                    class,
                    report,
                })
            })
            .collect::<Vec<_>>()
    }))
}
