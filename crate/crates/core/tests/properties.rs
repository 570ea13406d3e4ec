mod common;

use common::Oracle;
use num_traits::Zero;
use perimetric::dynamics::random::seeded_instance;
use perimetric::dynamics::{picard_iterate, step_factor, Iterate, Start};
use perimetric::format::{parse_instance, write_instance};
use perimetric::rational::{int, ratio as rat};
use perimetric::{
    certify_with, check_inclusions, ratio, Constant, ContractionClass, Execution, Instance,
    LineSpace, PointId, Rational, Semantics, SelfMap,
};
use proptest::prelude::*;

fn instances() -> impl Strategy<Value = Instance> {
    prop_oneof![
        3 => (any::<u64>(), 4usize..=7).prop_map(|(seed, n)| seeded_instance(seed, n)),
        1 => line_instances(),
    ]
}

/// Distinct rational points on a line with an arbitrary table map.
fn line_instances() -> impl Strategy<Value = Instance> {
    (4usize..=7)
        .prop_flat_map(|n| {
            (
                prop::collection::btree_set((-40i64..=40, 1i64..=4), n..=n),
                prop::collection::vec(0..n, n),
            )
        })
        .prop_filter_map("coordinates collide", |(pts, targets)| {
            let coords: Vec<Rational> = pts.into_iter().map(|(a, b)| rat(a, b)).collect();
            let line = LineSpace::new(coords).ok()?;
            Instance::new(line, SelfMap::table(targets)).ok()
        })
}

fn dihedral(t: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for r in 0..4 {
        let rot = [t[r], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4]];
        out.push(rot);
        out.push([rot[0], rot[3], rot[2], rot[1]]);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quad_ratios_are_dihedral_invariant(inst in instances(), pick in any::<[prop::sample::Index; 4]>()) {
        let n = inst.len();
        let mut t = Vec::new();
        for ix in pick {
            let mut i = ix.index(n);
            while t.contains(&i) {
                i = (i + 1) % n;
            }
            t.push(i);
        }
        let t = [t[0], t[1], t[2], t[3]];
        for class in ContractionClass::QUAD {
            let ids = |u: [usize; 4]| u.map(PointId);
            let base = ratio(class, &inst, &ids(t)).unwrap();
            for u in dihedral(t) {
                prop_assert_eq!(&ratio(class, &inst, &ids(u)).unwrap(), &base);
            }
        }
    }

    #[test]
    fn enumerator_matches_oracle(inst in instances()) {
        let oracle = Oracle::new(&inst);
        for class in ContractionClass::ALL {
            for semantics in Semantics::BOTH {
                let rep = certify_with(class, &inst, semantics, Execution::Serial).unwrap();
                let (constant, witness) = oracle.certify(class, semantics);
                prop_assert_eq!(&rep.constant, &constant, "{} {}", class, semantics);
                let got = rep.witness.map(|w| w.into_iter().map(|p| p.0).collect::<Vec<_>>());
                prop_assert_eq!(got, witness, "{} {}", class, semantics);
            }
        }
    }

    #[test]
    fn serial_and_parallel_agree(inst in instances()) {
        for class in ContractionClass::ALL {
            for semantics in Semantics::BOTH {
                let a = certify_with(class, &inst, semantics, Execution::Serial).unwrap();
                let b = certify_with(class, &inst, semantics, Execution::Parallel).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn cyclic_never_exceeds_universal(inst in instances()) {
        for class in ContractionClass::ALL {
            let u = certify_with(class, &inst, Semantics::Universal, Execution::Serial).unwrap();
            let c = certify_with(class, &inst, Semantics::CyclicBest, Execution::Serial).unwrap();
            prop_assert!(c.constant <= u.constant);
            if class.arity() < 4 {
                prop_assert_eq!(c.constant, u.constant);
                prop_assert_eq!(c.witness, u.witness);
            }
        }
    }

    #[test]
    fn inclusions_are_consistent(inst in instances()) {
        for row in check_inclusions(&inst).unwrap() {
            prop_assert!(row.consistent, "{:?}", row);
        }
    }

    #[test]
    fn text_format_round_trips(inst in instances()) {
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    /// Perimeters of consecutive iterate quadruples shrink by the constant.
    #[test]
    fn perimeter_steps_contract(seed in any::<u64>(), n in 4usize..=7) {
        let inst = seeded_instance(seed, n);
        let rep = certify_with(ContractionClass::QuadPerimetric, &inst, Semantics::Universal, Execution::Serial).unwrap();
        let Some(alpha) = rep.constant.finite().filter(|_| rep.is_member()).cloned() else {
            return Ok(());
        };
        for start in 0..n {
            let orbit = points(&inst, start);
            let perimeter = |i: usize| -> Rational {
                (0..4).map(|j| inst.distance(orbit[i + j], orbit[i + (j + 1) % 4]).unwrap()).sum()
            };
            for i in 1..orbit.len().saturating_sub(3) {
                if distinct(&orbit[i - 1..i + 4]) {
                    prop_assert!(perimeter(i) <= &alpha * perimeter(i - 1));
                }
            }
        }
    }

    /// `k_{i+3} <= λ max(k_i, k_{i+1}, k_{i+2})` for the Kannan and
    /// Chatterjea variants, with their substituted step factor.
    #[test]
    fn kannan_and_chatterjea_steps_recur(seed in any::<u64>(), n in 4usize..=7) {
        let inst = seeded_instance(seed, n);
        for class in [ContractionClass::QuadKannan, ContractionClass::QuadChatterjea] {
            let rep = certify_with(class, &inst, Semantics::Universal, Execution::Serial).unwrap();
            let Some(c) = rep.constant.finite().filter(|_| rep.is_member()).cloned() else {
                continue;
            };
            let lambda = step_factor(class, &c).unwrap();
            for start in 0..n {
                let orbit = points(&inst, start);
                let k: Vec<Rational> = orbit.windows(2).map(|w| inst.distance(w[0], w[1]).unwrap()).collect();
                for i in 0..k.len().saturating_sub(3) {
                    if distinct(&orbit[i..i + 4]) {
                        let m = k[i..i + 3].iter().max().unwrap();
                        prop_assert!(k[i + 3] <= &lambda * m, "{} at i = {}", class, i);
                    }
                }
            }
        }
    }
}

fn points(inst: &Instance, start: usize) -> Vec<PointId> {
    let trace = picard_iterate(inst, Start::Point(PointId(start)), &int(0), 4 * inst.len()).unwrap();
    trace
        .iterates
        .into_iter()
        .map(|a| match a {
            Iterate::Point(p) => p,
            Iterate::Coord(_) => unreachable!("table maps iterate on points"),
        })
        .collect()
}

fn distinct(ps: &[PointId]) -> bool {
    ps.iter().enumerate().all(|(i, p)| !ps[..i].contains(p))
}

#[test]
fn identity_map_constants() {
    // the identity keeps every distance and moves nothing
    let inst = seeded_instance(5, 5);
    let id = Instance::new(inst.space().clone(), SelfMap::identity(5)).unwrap();
    for class in ContractionClass::ALL {
        let rep = certify_with(class, &id, Semantics::Universal, Execution::Serial).unwrap();
        let expected = match class {
            ContractionClass::Banach
            | ContractionClass::TriPerimetric
            | ContractionClass::QuadPerimetric => Constant::Finite(int(1)),
            ContractionClass::Chatterjea
            | ContractionClass::GenChatterjea
            | ContractionClass::QuadChatterjea => Constant::Finite(rat(1, 2)),
            _ => Constant::Infinite,
        };
        assert_eq!(rep.constant, expected, "{class}");
    }
}

#[test]
fn constant_maps_certify_with_zero() {
    for seed in 0..20 {
        let inst = seeded_instance(seed, 5);
        let c = Instance::new(inst.space().clone(), SelfMap::constant(5, 2)).unwrap();
        for class in ContractionClass::ALL {
            let rep = certify_with(class, &c, Semantics::Universal, Execution::Serial).unwrap();
            assert_eq!(rep.constant, Constant::Finite(Rational::zero()), "{class}");
            assert!(rep.is_member());
        }
    }
}
