use bihom_core::algebra::matrix;
use bihom_core::algebra::rational::{self, Rational};
use bihom_core::forms::{
    combine, coords_on_line_span, essential_subspaces, evaluate, evaluate_at, lift, line_span_vector,
    restrict_to_curve, restrict_to_subspaces, BinaryForm, CurveG, FactorMap, LineEmbed, LineKind, PointPair,
    ProjPoint, Shape,
};
use bihom_core::random;
use bihom_core::tangential::flattening_rank;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn shapes() -> impl Strategy<Value = Shape> {
    (1usize..=2, 1usize..=2, 1usize..=4, 1usize..=4).prop_map(|(a, b, c, d)| Shape::new(a, b, c, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The lift of a point evaluated at `(x, y)` is `<P1,x>^d1 <P2,y>^d2`.
    #[test]
    fn lift_evaluates_to_product_of_powers(shape in shapes(), seed in any::<u64>()) {
        let mut rng = random::trial_rng(seed, 0);
        let pt = random::small_point_pair(&mut rng, &shape, 5);
        let f = combine(&shape, &[(Rational::one(), pt.clone())]).unwrap();
        let x = random::small_vector(&mut rng, shape.n1 + 1, 5);
        let y = random::small_vector(&mut rng, shape.n2 + 1, 5);
        let expected = rational::pow(&rational::dot(pt.p1.coords(), &x), shape.d1 as u32)
            * rational::pow(&rational::dot(pt.p2.coords(), &y), shape.d2 as u32);
        prop_assert_eq!(evaluate_at(&f, &x, &y).unwrap(), expected);
    }

    /// Pullback along a curve agrees with evaluation at curve points.
    #[test]
    fn restriction_agrees_with_evaluation(shape in shapes(), seed in any::<u64>(), terms in 1usize..4) {
        let mut rng = random::trial_rng(seed, 1);
        let w: Vec<(Rational, PointPair)> = (0..terms)
            .map(|_| (random::nonzero_int(&mut rng, 4), random::small_point_pair(&mut rng, &shape, 4)))
            .collect();
        let f = combine(&shape, &w).unwrap();
        let l1 = LineEmbed::new(random::small_vector(&mut rng, shape.n1 + 1, 3), random::small_vector(&mut rng, shape.n1 + 1, 3));
        let l2 = LineEmbed::new(random::small_vector(&mut rng, shape.n2 + 1, 3), random::small_vector(&mut rng, shape.n2 + 1, 3));
        let (Ok(l1), Ok(l2)) = (l1, l2) else { return Ok(()) };
        let g = CurveG::new(vec![FactorMap::Line(l1), FactorMap::Line(l2)]).unwrap();
        let h = restrict_to_curve(&f, &g).unwrap();
        prop_assert_eq!(h.degree(), shape.d1 + shape.d2);
        for k in 0..(2 * (shape.d1 + shape.d2) + 1) {
            let s = rational::int(k as i64 - 3);
            let t = rational::int(2 * k as i64 + 1);
            let x = g.point(&s, &t);
            prop_assert_eq!(h.eval(&s, &t), evaluate_at(&f, &x[0], &x[1]).unwrap());
        }
    }

    /// Lifting a binary form into a line slice and reading it back is the
    /// identity, and pure powers go to lifts of line points.
    #[test]
    fn line_span_round_trip(shape in shapes(), seed in any::<u64>(), beta in any::<bool>()) {
        let mut rng = random::trial_rng(seed, 2);
        let kind = if beta { LineKind::Beta } else { LineKind::Alpha };
        let i = kind.moving_factor();
        let (n, d) = shape.factor(i);
        let (nb, _) = shape.factor(1 - i);
        let Ok(line) = LineEmbed::new(random::small_vector(&mut rng, n + 1, 3), random::small_vector(&mut rng, n + 1, 3)) else {
            return Ok(());
        };
        let base = random::small_point(&mut rng, nb, 3);
        let h = BinaryForm::new(random::small_vector(&mut rng, d + 1, 5)).unwrap();
        let v = line_span_vector(&h, kind, &base, &line, &shape).unwrap();
        prop_assert_eq!(coords_on_line_span(&v, kind, &base, &line, &shape).unwrap(), h);

        let (a, b) = (random::small_int(&mut rng, 4), random::nonzero_int(&mut rng, 4));
        let x = line.point(&a, &b);
        let pt = match kind {
            LineKind::Alpha => PointPair { p1: ProjPoint::new(x.clone()).unwrap(), p2: base.clone() },
            LineKind::Beta => PointPair { p1: base.clone(), p2: ProjPoint::new(x.clone()).unwrap() },
        };
        let q = coords_on_line_span(&lift(&pt, &shape).unwrap(), kind, &base, &line, &shape).unwrap();
        // raw coordinates differ from canonical ones by the leading entry
        let lead = x.iter().find(|c| !c.is_zero()).unwrap().clone();
        let expected = BinaryForm::pure_power(&[a, b], d).scale(&(Rational::one() / rational::pow(&lead, d as u32)));
        prop_assert_eq!(q, expected);
    }

    /// Essential subspaces contain every point of a minimal decomposition, and
    /// restricting then recomputing gives the full subspaces.
    #[test]
    fn concision(shape in shapes(), seed in any::<u64>(), terms in 1usize..4) {
        let mut rng = random::trial_rng(seed, 3);
        let pts = random::distinct_point_pairs(&mut rng, &shape, terms, 3);
        let w: Vec<(Rational, PointPair)> = pts.iter().map(|p| (random::nonzero_int(&mut rng, 4), p.clone())).collect();
        let f = combine(&shape, &w).unwrap();
        // flattening rank = number of terms certifies the decomposition is minimal
        if flattening_rank(&f) != terms {
            return Ok(());
        }
        let (w1, w2) = essential_subspaces(&f).unwrap();
        for p in &pts {
            prop_assert!(matrix::span_contains(shape.n1 + 1, &w1, p.p1.coords()));
            prop_assert!(matrix::span_contains(shape.n2 + 1, &w2, p.p2.coords()));
        }
        let (g, _, _) = restrict_to_subspaces(&f, &w1, &w2).unwrap();
        let (u1, u2) = essential_subspaces(&g).unwrap();
        prop_assert_eq!(u1.len(), g.shape().n1 + 1);
        prop_assert_eq!(u2.len(), g.shape().n2 + 1);
    }

    #[test]
    fn evaluate_is_linear(shape in shapes(), seed in any::<u64>()) {
        let mut rng = random::trial_rng(seed, 4);
        let a = random::small_point_pair(&mut rng, &shape, 4);
        let b = random::small_point_pair(&mut rng, &shape, 4);
        let at = random::small_point_pair(&mut rng, &shape, 4);
        let (u, v) = (random::small_int(&mut rng, 5), random::small_int(&mut rng, 5));
        let f = combine(&shape, &[(u.clone(), a.clone())]).unwrap();
        let g = combine(&shape, &[(v.clone(), b.clone())]).unwrap();
        let h = combine(&shape, &[(u, a), (v, b)]).unwrap();
        prop_assert_eq!(evaluate(&h, &at).unwrap(), evaluate(&f, &at).unwrap() + evaluate(&g, &at).unwrap());
    }
}

#[test]
fn pure_power_substitution() {
    use bihom_core::forms::Mobius;
    let m = Mobius::new(rational::int(1), rational::int(2), rational::int(-1), rational::int(3)).unwrap();
    let p = [rational::int(2), rational::int(5)];
    let lhs = BinaryForm::pure_power(&p, 4).substitute(&m);
    assert_eq!(lhs, BinaryForm::pure_power(&m.apply_point(&p), 4));
}
