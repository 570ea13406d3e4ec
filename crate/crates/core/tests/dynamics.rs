use perimetric::dynamics::{
    analyze_dynamics, apriori_bound, picard_iterate, theorem_verdict, within_bound, Iterate,
    Outcome, Start, TheoremKind, Termination,
};
use perimetric::format::parse_instance;
use perimetric::rational::{int, ratio as rat};
use perimetric::{certify, ContractionClass, Instance, LineSpace, PointId, Semantics, SelfMap};

/// A chain `0 -> 100 -> 101 -> 102` ending in a fixed point.
fn chain() -> Instance {
    let line = LineSpace::new(vec![int(0), int(100), int(101), int(102)]).unwrap();
    Instance::new(line, SelfMap::table([1, 2, 3, 3])).unwrap()
}

#[test]
fn perimeter_bound_fails_one_step_before_the_limit() {
    let inst = chain();
    let rep = certify(ContractionClass::QuadPerimetric, &inst, Semantics::Universal).unwrap();
    assert!(rep.is_member());
    let alpha = rep.constant.finite().unwrap().clone();
    assert_eq!(alpha, rat(3, 103));

    let trace = picard_iterate(&inst, Start::Point(PointId(0)), &int(0), 10).unwrap();
    assert_eq!(trace.termination, Termination::FixedPointHit { index: 3 });
    let pre = trace.preamble.clone().unwrap();
    assert_eq!(pre.lambda0, int(204));
    let limit = PointId(3);
    let at = |n: usize| match trace.iterates[n] {
        Iterate::Point(p) => inst.distance(p, limit).unwrap(),
        _ => unreachable!(),
    };
    let bound = |n| apriori_bound(ContractionClass::QuadPerimetric, &alpha, &pre, n).unwrap();
    assert!(within_bound(&at(1), bound(1)));
    // d(a_2, a*) = 1 but the bound is about 0.18
    assert_eq!(at(2), int(1));
    assert!(!within_bound(&at(2), bound(2)));
}

#[test]
fn stronger_converse_fails_on_a_universal_member() {
    // p fixed, q and a swap, z falls onto p
    let text = "\
[points]
p q a z
[metric]
0 1 1 100
1 0 1 100
1 1 0 100
100 100 100 0
[map]
p -> p
q -> a
a -> q
z -> p
";
    let inst = parse_instance(text).unwrap();
    let rep = certify(ContractionClass::QuadPerimetric, &inst, Semantics::Universal).unwrap();
    assert!(rep.is_member());
    let d = analyze_dynamics(&inst, 6).unwrap();
    assert_eq!(d.fixed_points, vec![PointId(0)]);
    assert_eq!(d.with_period(2), vec![PointId(1), PointId(2)]);
    let checks = theorem_verdict(&inst).unwrap();
    let find = |kind| {
        checks
            .iter()
            .find(|c| c.kind == kind && c.class == ContractionClass::QuadPerimetric && c.semantics == Semantics::Universal)
            .unwrap()
            .outcome
    };
    assert_eq!(find(TheoremKind::ConverseBoth), Outcome::Holds);
    assert_eq!(find(TheoremKind::ConverseEach), Outcome::Observation);
}

#[test]
fn examples_without_fixed_points_have_short_cycles() {
    for (id, period) in [("E3.5", 2), ("E3.6", 3), ("E4.10", 2)] {
        let g = perimetric::catalog::generate(id.parse().unwrap(), &Default::default()).unwrap();
        let d = analyze_dynamics(&g.instance, 6).unwrap();
        assert!(d.fixed_points.is_empty(), "{id}");
        assert!(d.has_period(period), "{id}");
    }
}
