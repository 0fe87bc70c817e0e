use bihom_core::forms::{LineKind, Shape};
use bihom_core::random;
use bihom_core::structure::{
    analyze_pair, case_iii_recognizer, conic_configuration, extend_witness, falsify_smaller, find_special_line,
    generate_instance, hilbert_defect, hypotheses_hold, is_minimal_spanning, verify_ee7, StructureError,
};
use bihom_core::sylvester::sample_solutions_from;
use proptest::prelude::*;

/// (shape, kind, b, |E|) combinations satisfying hypothesis (a) or (b).
fn families() -> Vec<(Shape, LineKind, usize, usize)> {
    let s = |a, b, c, d| Shape::new(a, b, c, d).unwrap();
    vec![
        (s(1, 1, 4, 4), LineKind::Beta, 2, 0),
        (s(2, 2, 5, 5), LineKind::Beta, 2, 0),
        (s(2, 2, 5, 5), LineKind::Beta, 3, 1),
        (s(1, 2, 5, 4), LineKind::Alpha, 2, 0),
        (s(1, 2, 5, 4), LineKind::Alpha, 3, 1),
        (s(1, 1, 6, 5), LineKind::Beta, 3, 2),
        (s(2, 1, 5, 6), LineKind::Alpha, 3, 2),
        (s(1, 1, 6, 3), LineKind::Beta, 2, 0),
    ]
}

#[test]
fn families_recover_planted_structure() {
    for (shape, kind, b, e) in families() {
        for seed in 0..2 {
            let inst = generate_instance(&shape, kind, b, e, seed, 10).unwrap();
            let d = kind.degree(&shape);
            assert_eq!(inst.s.len(), e + d + 2 - b, "{shape} {kind:?} b={b}");
            assert!(hypotheses_hold(&shape, inst.s.len()));
            let mut union = inst.s.points();
            union.extend(inst.a.points());
            union.sort();
            union.dedup();
            assert!(hilbert_defect(&union, &shape).unwrap() >= 1);
            let split = analyze_pair(&inst.p, &inst.s, &inst.a).unwrap();
            assert!(split.slice.same_slice(&inst.meta.slice));
            assert_eq!(split.e, inst.meta.e);
            assert_eq!(split.border_rank, b);
            assert_eq!(split.e.len() + d + 2, split.rank + b);
            // Q is the planted form up to the scale of the canonical base point
            assert_eq!(bihom_core::sylvester::border_and_rank(&split.q_form).unwrap(), (b, d + 2 - b));
        }
    }
}

/// `b = (d + 2) / 2`: `Q` has a pencil of decompositions, planted as the
/// intersection of two spans.
#[test]
fn pencil_families_recover_planted_structure() {
    let s = |a, b, c, d| Shape::new(a, b, c, d).unwrap();
    let pencils = [
        (s(2, 2, 2, 2), LineKind::Beta, 2, 0),
        (s(1, 1, 4, 4), LineKind::Beta, 3, 0),
        (s(1, 1, 4, 4), LineKind::Beta, 3, 1),
        (s(2, 1, 4, 6), LineKind::Alpha, 3, 1),
    ];
    for (shape, kind, b, e) in pencils {
        for seed in 0..3 {
            let inst = generate_instance(&shape, kind, b, e, seed, 10).unwrap();
            let split = analyze_pair(&inst.p, &inst.s, &inst.a).unwrap();
            assert!(split.slice.same_slice(&inst.meta.slice), "{shape} {kind:?} b={b}");
            assert_eq!(split.e, inst.meta.e);
            assert_eq!((split.border_rank, split.residual_rank), (b, b));
            assert_eq!(split.rank, e + b);
            let report = verify_ee7(&inst.p, &[inst.s.clone(), inst.a.clone()]).unwrap();
            assert!(report.pass);
        }
    }
}

#[test]
fn extensions_are_new_minimal_decompositions() {
    for (shape, kind, b, e) in families().into_iter().filter(|f| f.0.n1 == 1 || f.3 == 0) {
        let inst = generate_instance(&shape, kind, b, e, 7, 10).unwrap();
        let split = analyze_pair(&inst.p, &inst.s, &inst.a).unwrap();
        let line_part: Vec<_> = inst
            .s
            .terms
            .iter()
            .filter(|(_, pt)| split.slice.contains(pt))
            .map(|(_, pt)| {
                let coords = pt.factor(kind.moving_factor()).coords().to_vec();
                split.slice.line.param_of(&coords).unwrap()
            })
            .map(|t| bihom_core::ProjPoint::new(t.to_vec()).unwrap())
            .collect();
        let start = bihom_core::sylvester::attach_weights(&split.q_form, &line_part).unwrap();
        let more = sample_solutions_from(&split.q_form, &start, 2, 3).unwrap();
        let mut ws = vec![inst.s.clone(), inst.a.clone()];
        for m in &more {
            let w = extend_witness(&split, m).unwrap();
            assert!(w.evinces(&inst.p));
            ws.push(w);
        }
        let report = verify_ee7(&inst.p, &ws).unwrap();
        assert!(report.pass, "{shape} {kind:?} b={b}: {:?}", report.pairs);
    }
}

#[test]
fn generated_witnesses_are_minimal_spanning() {
    let shape = Shape::new(1, 1, 4, 4).unwrap();
    let inst = generate_instance(&shape, LineKind::Beta, 2, 0, 21, 10).unwrap();
    assert!(is_minimal_spanning(&inst.p, &inst.s).unwrap());
    assert!(is_minimal_spanning(&inst.p, &inst.a).unwrap());
    let mut rng = random::trial_rng(21, 99);
    let pool = inst.meta.slice.members.clone();
    assert_eq!(falsify_smaller(&inst.p, inst.s.len() - 1, 200, &pool, &mut rng, 10).unwrap(), 0);
}

#[test]
fn infeasible_requests_name_the_obstruction() {
    let shape = Shape::new(2, 2, 5, 5).unwrap();
    // rank 6 breaks 2r <= 1 + d1 + d2 and r <= 5
    match generate_instance(&shape, LineKind::Beta, 2, 1, 0, 10) {
        Err(StructureError::Infeasible(msg)) => assert!(msg.contains("rank 6"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(generate_instance(&shape, LineKind::Beta, 4, 0, 0, 10), Err(StructureError::Infeasible(_))));
}

#[test]
fn conic_configuration_is_flagged_not_split() {
    let cfg = conic_configuration(&Shape::new(2, 1, 2, 3).unwrap(), 4, 10).unwrap();
    assert_eq!(case_iii_recognizer(&cfg.s, &cfg.a), Some(0));
    assert!(matches!(analyze_pair(&cfg.p, &cfg.s, &cfg.a), Err(StructureError::NoSpecialLine)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Swapping the two decompositions gives the same split.
    #[test]
    fn analysis_is_symmetric(seed in 0u64..10_000) {
        let shape = Shape::new(1, 1, 4, 4).unwrap();
        let inst = generate_instance(&shape, LineKind::Beta, 2, 0, seed, 10).unwrap();
        let ab = analyze_pair(&inst.p, &inst.s, &inst.a).unwrap();
        let ba = analyze_pair(&inst.p, &inst.a, &inst.s).unwrap();
        prop_assert!(ab.agrees_with(&ba));
        prop_assert_eq!(ab.q_vector, ba.q_vector);
    }

    /// The planted special line is the one the census reports.
    #[test]
    fn census_finds_planted_line(seed in 0u64..10_000) {
        let shape = Shape::new(1, 2, 5, 4).unwrap();
        let inst = generate_instance(&shape, LineKind::Alpha, 3, 1, seed, 10).unwrap();
        let mut union = inst.s.points();
        union.extend(inst.a.points());
        union.sort();
        union.dedup();
        let found = find_special_line(&union, &shape).unwrap();
        prop_assert!(found.same_slice(&inst.meta.slice));
        prop_assert_eq!(found.members, inst.meta.slice.members);
    }
}
