mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{all_layouts, compositions, naive_s1, random_image};
use squeezebox::imaging::integral;
use squeezebox::testkit::{gen_viz, SynthSpec};
use squeezebox::viz::{
    fix_sizes, layout_class_stats, refine_coordinate_descent, segment_viz, segment_viz_fixed, BlockSpec, RowSpec,
    VizError, VizOptions, VizTemplate,
};

fn range(max: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..=max, 0..=max).prop_map(|(a, b)| (a.min(b), a.max(b)))
}

fn text_row(fields: usize) -> impl Strategy<Value = RowSpec> {
    (
        range(4).prop_map(|(a, b)| (a + 1, b + 1)),
        prop::collection::vec((range(5).prop_map(|(a, b)| (a + 1, b + 1)), range(6)), fields),
        range(5),
    )
        .prop_map(|((h0, h1), fields, (g0, g1))| {
            let mut blocks = vec![BlockSpec::gap(g0, g1)];
            for ((f0, f1), (g0, g1)) in fields {
                blocks.push(BlockSpec::field(f0, f1));
                blocks.push(BlockSpec::gap(g0, g1 + 4));
            }
            RowSpec::text(h0, h1, blocks)
        })
}

/// Up to two text rows of up to two fields, with the image size.
fn small_case() -> impl Strategy<Value = (VizTemplate, usize, usize, u64)> {
    (
        prop::collection::vec((1usize..=2).prop_flat_map(text_row), 1..=2),
        range(5),
        6usize..=16,
        6usize..=14,
        any::<u64>(),
    )
        .prop_map(|(texts, (g0, g1), w, h, seed)| {
            let mut rows = vec![RowSpec::gap(g0, g1 + 3)];
            for t in texts {
                rows.push(t);
                rows.push(RowSpec::gap(g0, g1 + 3));
            }
            (VizTemplate::new(rows), w, h, seed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fixed_stage_is_exact((tpl, w, h, seed) in small_case()) {
        let Ok(sizes) = fix_sizes(&tpl, w, h) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let img = random_image(&mut rng, w, h);
        let ii = integral(&img);
        let best = all_layouts(&tpl, &sizes, w, h).iter().map(|l| naive_s1(&img, l)).min();
        match (best, segment_viz_fixed(&ii, &tpl, &sizes)) {
            (Some(b), Ok(layout)) => {
                prop_assert_eq!(naive_s1(&img, &layout), b);
                prop_assert!(layout.check_cover(&tpl).is_ok());
                for (fixed, row) in sizes.rows.iter().zip(tpl.text_rows()) {
                    prop_assert_eq!(fixed.row, row.0);
                    prop_assert_eq!(layout.rows[fixed.row].len(), fixed.height);
                }
            }
            (None, Err(VizError::Infeasible)) => {}
            (b, got) => prop_assert!(false, "enumeration {:?}, solver {:?}", b, got.map(|l| naive_s1(&img, &l))),
        }
    }

    #[test]
    fn refinement_keeps_invariants((tpl, w, h, seed) in small_case(), sweeps in 0usize..4) {
        let Ok(sizes) = fix_sizes(&tpl, w, h) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ii = integral(&random_image(&mut rng, w, h));
        let Ok(layout) = segment_viz_fixed(&ii, &tpl, &sizes) else { return Ok(()) };
        let r = refine_coordinate_descent(&ii, &layout, &tpl, sweeps);

        prop_assert!(r.iterations <= sweeps);
        prop_assert!(r.history.windows(2).all(|p| p[1] > p[0]));
        prop_assert_eq!(r.history[0], layout_class_stats(&ii, &layout).dispersion());
        prop_assert_eq!(r.dispersion(), layout_class_stats(&ii, &r.layout).dispersion());
        prop_assert!(r.layout.check_field_ranges(&tpl).is_ok());
        let rects = r.layout.field_rects();
        for (i, a) in rects.iter().enumerate() {
            for b in &rects[i + 1..] {
                prop_assert_eq!(a.intersection_area(b), 0);
            }
        }
    }
}

fn zone() -> VizTemplate {
    VizTemplate::new(vec![
        RowSpec::gap(8, 40),
        RowSpec::text(
            10,
            14,
            vec![
                BlockSpec::gap(5, 30),
                BlockSpec::field(60, 90),
                BlockSpec::gap(31, 60),
                BlockSpec::field(40, 70),
                BlockSpec::gap(5, 80),
            ],
        ),
        RowSpec::gap(8, 40),
        RowSpec::text(10, 14, vec![BlockSpec::gap(5, 30), BlockSpec::field(100, 140), BlockSpec::gap(5, 120)]),
        RowSpec::gap(8, 40),
    ])
}

#[test]
fn thread_count_does_not_change_results() {
    let spec = SynthSpec {
        seed: 21,
        noise_sigma: 8.0,
        jitter: 5,
        ..SynthSpec::default()
    };
    let (img, _) = gen_viz(&zone(), 260, 100, &spec).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| segment_viz(&img, &zone(), &VizOptions::default()).unwrap())
    };
    let (one, four) = (run(1), run(4));
    assert_eq!(one.layout, four.layout);
    assert_eq!(one.history, four.history);
}

#[test]
fn template_json_schema() {
    let text = r#"{"rows":[{"kind":"gap","h":[2,6]},{"kind":"text","h":[8,12],"blocks":[{"kind":"gap","w":[0,4]},{"kind":"field","w":[30,60]},{"kind":"gap","w":[0,4]}]},{"kind":"gap","h":[2,6]}]}"#;
    let tpl: VizTemplate = serde_json::from_str(text).unwrap();
    assert_eq!(tpl.rows.len(), 3);
    assert_eq!(tpl.field_count(), 1);
    assert!(tpl.validate(50, 20).is_ok());
    let back: VizTemplate = serde_json::from_str(&serde_json::to_string(&tpl).unwrap()).unwrap();
    assert_eq!(back, tpl);
}

#[test]
fn enumeration_helper_counts() {
    assert_eq!(compositions(&[(0, 2), (0, 2), (0, 2)], 3).len(), 7);
    assert!(compositions(&[(1, 1)], 2).is_empty());
}
