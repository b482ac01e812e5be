use proptest::prelude::*;

use rookdist::bounds::{self, FormAssignment, Interval, Precision};
use rookdist::constructor::{self, SolveOutcome, SolvePath};
use rookdist::formats;
use rookdist::oracle;
use rookdist::poly;
use rookdist::{apply_automorphism, Automorphism, Color, Coloring, GridSpec, ListAssignment, Permutation};

fn grid_strategy(max_cells: usize) -> impl Strategy<Value = GridSpec> {
    (1usize..=4, 2usize..=6)
        .prop_filter("n < m and small", move |&(n, m)| n < m && n * m <= max_cells)
        .prop_map(|(n, m)| GridSpec::new(n, m).unwrap())
}

fn coloring_strategy(max_cells: usize, colors: u32) -> impl Strategy<Value = Coloring> {
    grid_strategy(max_cells).prop_flat_map(move |g| {
        proptest::collection::vec(0..colors, g.cell_count())
            .prop_map(move |cells| Coloring::new(g, cells.into_iter().map(Color).collect()).unwrap())
    })
}

fn permutation(len: usize) -> impl Strategy<Value = Permutation> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn automorphism(g: GridSpec) -> impl Strategy<Value = Automorphism> {
    (permutation(g.rows()), permutation(g.cols())).prop_map(|(s, t)| Automorphism::new(s, t))
}

fn coloring_with_two_automorphisms() -> impl Strategy<Value = (Coloring, Automorphism, Automorphism)> {
    coloring_strategy(24, 3).prop_flat_map(|c| {
        let g = c.grid();
        (Just(c), automorphism(g), automorphism(g))
    })
}

fn lists_strategy(max_colorings: u128) -> impl Strategy<Value = ListAssignment> {
    grid_strategy(12)
        .prop_flat_map(|g| {
            let list = proptest::collection::btree_set(1u32..=4, 1..=3);
            proptest::collection::vec(list, g.cell_count()).prop_map(move |ls| {
                ListAssignment::new(g, ls.into_iter().map(|s| s.into_iter().map(Color).collect()).collect()).unwrap()
            })
        })
        .prop_filter("small enough to enumerate", move |l| l.coloring_count() <= max_colorings)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn action_is_a_group_action((c, g, h) in coloring_with_two_automorphisms()) {
        let gh = apply_automorphism(&g.compose(&h), &c).unwrap();
        let stepwise = apply_automorphism(&g, &apply_automorphism(&h, &c).unwrap()).unwrap();
        prop_assert_eq!(&gh, &stepwise);
        let back = apply_automorphism(&g.inverse(), &apply_automorphism(&g, &c).unwrap()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(apply_automorphism(&Automorphism::identity(c.grid()), &c).unwrap(), c);
    }

    #[test]
    fn column_patterns_survive_row_permutations((c, g, _h) in coloring_with_two_automorphisms()) {
        let moved = apply_automorphism(&g, &c).unwrap();
        let mut before: Vec<_> = c.column_vectors().iter().map(|v| v.pattern()).collect();
        let mut after: Vec<_> = moved.column_vectors().iter().map(|v| v.pattern()).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn verdict_is_invariant_under_symmetry((c, g, _h) in coloring_with_two_automorphisms()) {
        let moved = apply_automorphism(&g, &c).unwrap();
        prop_assert_eq!(oracle::is_distinguishing(&c).verdict, oracle::is_distinguishing(&moved).verdict);
        let renamed = Coloring::new(c.grid(), c.cells().iter().map(|x| Color(7 - x.0)).collect()).unwrap();
        prop_assert_eq!(oracle::is_distinguishing(&c).verdict, oracle::is_distinguishing(&renamed).verdict);
    }

    #[test]
    fn verifiers_agree_and_witnesses_hold(c in coloring_strategy(20, 3)) {
        let fast = oracle::is_distinguishing(&c);
        let slow = oracle::naive_is_distinguishing(&c, oracle::DEFAULT_NAIVE_BUDGET).unwrap();
        prop_assert_eq!(fast.verdict, slow.verdict);
        prop_assert!(fast.is_consistent_with(&c));
        prop_assert!(slow.is_consistent_with(&c));
    }

    #[test]
    fn coloring_json_round_trips(c in coloring_strategy(24, 5)) {
        let text = formats::coloring_to_json(&c);
        prop_assert_eq!(formats::parse_coloring(&text).unwrap(), c);
    }

    #[test]
    fn lists_json_round_trip(l in lists_strategy(u128::MAX)) {
        let text = formats::lists_to_json(&l);
        prop_assert_eq!(formats::parse_lists(&text).unwrap(), l);
    }

    #[test]
    fn solve_matches_exhaustive_and_is_deterministic(l in lists_strategy(200_000)) {
        let out = constructor::solve(&l, constructor::DEFAULT_SOLVE_BUDGET);
        let truth = oracle::list_distinguishing_exhaustive(&l, u128::MAX).unwrap();
        match &out {
            SolveOutcome::Found { coloring, plan, path, .. } => {
                prop_assert!(truth.is_some());
                prop_assert!(l.admits(coloring));
                prop_assert!(oracle::is_distinguishing(coloring).verdict);
                if matches!(path, SolvePath::Constructor { .. }) {
                    prop_assert!(constructor::check_construction(&l, plan, coloring).is_ok());
                }
            }
            SolveOutcome::Nonexistent { .. } => prop_assert!(truth.is_none()),
            SolveOutcome::Refused { .. } => prop_assert!(false, "refused within budget"),
        }
        prop_assert_eq!(out, constructor::solve(&l, constructor::DEFAULT_SOLVE_BUDGET));
    }

    #[test]
    fn nonvanishing_polynomial_means_distinguishing(n in 1usize..=3, cells in proptest::collection::vec(0u32..4, 12)) {
        let grid = GridSpec::new(n, n + 1).unwrap();
        let c = Coloring::new(grid, cells[..grid.cell_count()].iter().map(|&x| Color(x)).collect()).unwrap();
        if poly::evaluate_f_on(&c).unwrap() != 0.into() {
            prop_assert!(oracle::is_distinguishing(&c).verdict);
        }
    }

    #[test]
    fn max_coefficient_ignores_relabeling_and_order(
        factors in proptest::collection::vec(proptest::sample::subsequence((0u32..6).collect::<Vec<_>>(), 2), 1..=5),
        relabel in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let fa = FormAssignment::new(2, factors.clone()).unwrap();
        let mut moved: Vec<Vec<u32>> = factors.iter().map(|f| f.iter().map(|&v| relabel[v as usize]).collect()).collect();
        moved.reverse();
        let fb = FormAssignment::new(2, moved).unwrap();
        let a = bounds::max_monomial_coefficient(&fa);
        prop_assert_eq!(&a, &bounds::max_monomial_coefficient(&fb));
        prop_assert!(bounds::max_monomial_coefficient(&bounds::merge_non_cooccurring(&fa)) >= a);
    }

    #[test]
    fn enclosures_contain_float_values(num in 1u64..10_000, den in 1u64..10_000) {
        let p = Precision::new(80);
        let q = num_rational::BigRational::new(num.into(), den.into());
        let l = p.ln(&q);
        let f = (num as f64 / den as f64).ln();
        prop_assert!(l.lo_f64() - 1e-12 <= f && f <= l.hi_f64() + 1e-12);
        let s = Interval::point(q).sqrt(60);
        let fs = (num as f64 / den as f64).sqrt();
        prop_assert!(s.lo_f64() - 1e-12 <= fs && fs <= s.hi_f64() + 1e-12);
    }
}
