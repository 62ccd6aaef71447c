use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use squeezebox::dsp::{
    sliding_window_min, solve, solve_brute_force, solve_dsp, solve_dsp_naive, CostMatrix, DistanceBounds,
};
use squeezebox::testkit::random_dsp_instance;

const INF: u64 = u64::MAX;

fn instance() -> impl Strategy<Value = (CostMatrix<u64>, DistanceBounds)> {
    (1usize..=5, 1usize..=30).prop_flat_map(|(n, w)| {
        let cost = prop_oneof![19 => 0u64..=100, 1 => Just(INF)];
        let reach = w as i64;
        let link = (-reach..=reach, -reach..=reach).prop_map(|(a, b)| (a.min(b), a.max(b)));
        (
            prop::collection::vec(cost, n * w),
            prop::collection::vec(link, n - 1),
        )
            .prop_map(move |(data, links)| {
                let (lo, hi) = links.into_iter().unzip();
                (
                    CostMatrix::new(n, w, data).unwrap(),
                    DistanceBounds::new(lo, hi).unwrap(),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn three_solvers_agree((costs, bounds) in instance()) {
        let (fast, _) = solve_dsp(&costs, &bounds).unwrap();
        prop_assert_eq!(&fast, &solve_dsp_naive(&costs, &bounds).unwrap());
        prop_assert_eq!(&fast, &solve_brute_force(&costs, &bounds).unwrap());
    }

    #[test]
    fn feasible_solutions_are_sound((costs, bounds) in instance()) {
        let sol = solve(&costs, &bounds).unwrap();
        if sol.is_feasible() {
            prop_assert_eq!(sol.locations.len(), costs.n_parts());
            prop_assert!(bounds.admits(&sol.locations));
            prop_assert_eq!(costs.placement_cost(&sol.locations), Some(sol.objective));
        } else {
            prop_assert!(sol.locations.is_empty());
        }
    }

    #[test]
    fn shifting_a_row_shifts_the_objective((costs, bounds) in instance(), part in 0usize..5, c in 0u64..1000) {
        let part = part % costs.n_parts();
        let mut shifted = costs.clone();
        for j in 0..costs.n_positions() {
            let v = costs.get(part, j);
            if v != INF {
                shifted.set(part, j, v + c);
            }
        }
        let a = solve(&costs, &bounds).unwrap();
        let b = solve(&shifted, &bounds).unwrap();
        if a.is_feasible() {
            prop_assert_eq!(b.objective, a.objective + c);
            prop_assert_eq!(b.locations, a.locations);
        } else {
            prop_assert!(!b.is_feasible());
        }
    }

    #[test]
    fn real_costs_match_integer_costs((costs, bounds) in instance()) {
        let rows: Vec<Vec<f64>> = (0..costs.n_parts())
            .map(|i| costs.row(i).iter().map(|&v| if v == INF { f64::INFINITY } else { v as f64 }).collect())
            .collect();
        let real = CostMatrix::from_rows(rows).unwrap();
        let a = solve(&costs, &bounds).unwrap();
        let b = solve(&real, &bounds).unwrap();
        prop_assert_eq!(&a.locations, &b.locations);
        if a.is_feasible() {
            prop_assert_eq!(a.objective as f64, b.objective);
        } else {
            prop_assert!(b.objective.is_infinite());
        }
    }

    #[test]
    fn window_min_matches_scan(
        values in prop::collection::vec(prop_oneof![9 => 0u64..50, 1 => Just(INF)], 1..200),
        a in -220i64..220,
        b in -220i64..220,
    ) {
        let (lo, hi) = (a.min(b), a.max(b));
        let (mins, args) = sliding_window_min(&values, lo, hi);
        for j in 0..values.len() as i64 {
            let range: Vec<usize> = ((j - hi).max(0)..=(j - lo).min(values.len() as i64 - 1))
                .map(|k| k as usize)
                .collect();
            let best = range.iter().map(|&k| values[k]).min().unwrap_or(INF);
            prop_assert_eq!(mins[j as usize], best);
            if let Some(k) = args[j as usize] {
                prop_assert_eq!(Some(&k), range.iter().find(|&&k| values[k] == best));
            } else {
                prop_assert!(range.is_empty());
            }
        }
    }
}

#[test]
fn seeded_instances_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (costs, bounds) = random_dsp_instance(&mut rng, 6, 40, 0.05);
        let sol = solve(&costs, &bounds).unwrap();
        assert_eq!(sol, solve_brute_force(&costs, &bounds).unwrap());
    }
}
