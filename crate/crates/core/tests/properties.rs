use std::collections::BTreeMap;

use pdo_cocycles::cocycles::{chern_cocycle, curvature, schwinger_cocycle, smoothing_part};
use pdo_cocycles::harness::dense::{mat_mul, sub_block};
use pdo_cocycles::harness::four_cocycle_on_shifts;
use pdo_cocycles::harness::random::{
    finite_rank_element, span_element, symbol, Sample, SpanConfig,
};
use pdo_cocycles::lattice::LatticeOperator;
use pdo_cocycles::literal::{eval_operator, parse_expression};
use pdo_cocycles::symbols::{
    renormalized_bracket_trace, star_product, symbol_of_builtin, symbol_p_plus,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DEGREE: i64 = 2;

fn cfg(dim: usize, abs_derivative: bool) -> SpanConfig {
    SpanConfig {
        dim,
        degree: DEGREE,
        abs_derivative,
        max_terms: 3,
    }
}

fn samples(seed: u64, n: usize, cfg: &SpanConfig) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| span_element(&mut rng, cfg)).collect()
}

fn ops(seed: u64, n: usize, cfg: &SpanConfig) -> Vec<LatticeOperator> {
    samples(seed, n, cfg).into_iter().map(|s| s.op).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_associative(seed in any::<u64>(), dim in 1usize..=2) {
        let v = ops(seed, 3, &cfg(dim, true));
        let left = v[0].compose(&v[1]).compose(&v[2]);
        let right = v[0].compose(&v[1].compose(&v[2]));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_matches_dense_windows(seed in any::<u64>(), dim in 1usize..=2) {
        let v = ops(seed, 2, &cfg(dim, true));
        let n = 3;
        // The right factor moves modes by at most DEGREE, so a wider window holds every
        // intermediate mode reached from the inner one.
        let wide = n + DEGREE;
        let product = mat_mul(&v[0].dense_window(wide), &v[1].dense_window(wide));
        let inner = sub_block(&product, DEGREE as usize * dim, (2 * n as usize + 1) * dim);
        prop_assert_eq!(v[0].compose(&v[1]).dense_window(n), inner);
    }

    #[test]
    fn first_cocycle_alternates(seed in any::<u64>(), dim in 1usize..=2) {
        let v = ops(seed, 2, &cfg(dim, true));
        let ab = chern_cocycle(1, &v);
        let ba = chern_cocycle(1, &[v[1].clone(), v[0].clone()]);
        prop_assert_eq!(ab, -ba);
    }

    #[test]
    fn curvature_equals_its_smoothing_form(seed in any::<u64>(), dim in 1usize..=2) {
        let v = ops(seed, 2, &cfg(dim, true));
        prop_assert_eq!(curvature(&v[0], &v[1]), smoothing_part(&v[0], &v[1]));
    }

    #[test]
    fn trace_is_cyclic_against_finite_rank(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = finite_rank_element(&mut rng, dim, 3).op;
        let a = span_element(&mut rng, &cfg(dim, true)).op;
        prop_assert_eq!(f.compose(&a).trace().unwrap(), a.compose(&f).trace().unwrap());
    }

    #[test]
    fn sample_labels_replay(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = span_element(&mut rng, &cfg(dim, true));
        let finite = finite_rank_element(&mut rng, dim, 3);
        for s in [span, finite] {
            let e = parse_expression(&s.label).unwrap();
            prop_assert_eq!(eval_operator(&e, dim, &BTreeMap::new()).unwrap(), s.op, "{}", s.label);
        }
    }

    #[test]
    fn schwinger_satisfies_the_cocycle_identity(seed in any::<u64>(), dim in 1usize..=2) {
        let v = ops(seed, 3, &cfg(dim, false));
        let c = |x: &LatticeOperator, y: &LatticeOperator| schwinger_cocycle(x, y).unwrap();
        let total = c(&v[0].commutator(&v[1]), &v[2])
            + c(&v[1].commutator(&v[2]), &v[0])
            + c(&v[2].commutator(&v[0]), &v[1]);
        prop_assert!(total.is_zero());
    }

    #[test]
    fn four_cocycle_alternates_on_shifts(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3) {
        let base = four_cocycle_on_shifts([a, b, c, d], 1);
        prop_assert_eq!(four_cocycle_on_shifts([b, a, c, d], 1), -base.clone());
        prop_assert_eq!(four_cocycle_on_shifts([a, b, d, c], 1), -base.clone());
        prop_assert_eq!(four_cocycle_on_shifts([c, d, a, b], 1), base);
    }

    #[test]
    fn star_product_is_associative(seed in any::<u64>(), orders in (-1i64..=1, -1i64..=1, -1i64..=1)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let depth = 4;
        let a = symbol(&mut rng, 1, orders.0, depth, DEGREE);
        let b = symbol(&mut rng, 1, orders.1, depth, DEGREE);
        let c = symbol(&mut rng, 1, orders.2, depth, DEGREE);
        let left = star_product(&star_product(&a, &b, depth), &c, depth);
        let right = star_product(&a, &star_product(&b, &c, depth), depth);
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn positive_projection_is_multiplicative(seed in any::<u64>(), dim in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let depth = 4;
        let a = symbol(&mut rng, dim, 1, depth, DEGREE);
        let b = symbol(&mut rng, dim, 0, depth, DEGREE);
        let ab = star_product(&a, &b, depth);
        let split = star_product(&symbol_p_plus(&a), &symbol_p_plus(&b), depth);
        prop_assert!(symbol_p_plus(&ab).agrees_with(&split));
        let p = symbol_of_builtin("P_PLUS", dim, depth).unwrap();
        prop_assert!(star_product(&p, &a, depth).agrees_with(&symbol_p_plus(&a)));
    }

    #[test]
    fn renormalized_trace_of_brackets_is_antisymmetric(seed in any::<u64>(), orders in (-1i64..=1, -1i64..=1)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = symbol(&mut rng, 1, orders.0, 5, DEGREE);
        let b = symbol(&mut rng, 1, orders.1, 5, DEGREE);
        let ab = renormalized_bracket_trace(&a, &b).unwrap();
        let ba = renormalized_bracket_trace(&b, &a).unwrap();
        prop_assert_eq!(ab, -ba);
    }
}
