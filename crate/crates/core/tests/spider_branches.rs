mod common;

use common::{check_spider, random_legs};
use pctree::{
    coloring_from_tournament, degenerate_coloring, embed_pc_spider, embed_pc_spider_traced, random_mcf_tournament,
    random_mono_c3_free, transitive_coloring, EdgeColoredGraph, Error, Exec, SpiderBranch, SpiderSpec,
};

fn run(g: &EdgeColoredGraph, legs: &[usize]) -> SpiderBranch {
    let spec = SpiderSpec::new(legs.to_vec()).unwrap();
    let (t, trace) = embed_pc_spider_traced(g, &spec, Exec::Sequential).unwrap_or_else(|e| panic!("{legs:?}: {e}"));
    check_spider(g, &t, legs).unwrap();
    trace.branch
}

#[test]
fn random_colorings_pack_bowties() {
    for seed in 0..8 {
        let g = random_mono_c3_free(200, 5, seed).unwrap();
        assert_eq!(run(&g, &random_legs(199, 3, seed)), SpiderBranch::Bowties);
    }
}

#[test]
fn transitive_uses_small_mono_class() {
    let g = transitive_coloring(200).unwrap();
    assert_eq!(run(&g, &[195, 2, 2]), SpiderBranch::MonoWindow);
}

#[test]
fn tail_labeled_tournament_reaches_degenerate_case() {
    for seed in 0..4 {
        let d = random_mcf_tournament(140, 0.3, 40, seed).unwrap();
        let g = coloring_from_tournament(&d).unwrap();
        let spec = SpiderSpec::new(vec![60, 40, 39]).unwrap();
        let (t, trace) = embed_pc_spider_traced(&g, &spec, Exec::Sequential).unwrap();
        check_spider(&g, &t, spec.legs()).unwrap();
        assert_eq!(trace.branch, SpiderBranch::Degenerate);
        assert_eq!(trace.aux_bound_met, Some(true));
        assert!(trace.min_aux_out_degree.unwrap() >= trace.aux_bound);
    }
}

#[test]
fn cyclic_sinks_give_rainbow_triangle() {
    // Tail-labeled transitive order, except the last three vertices form a
    // directed 3-cycle, so each of them repeats no color.
    let n = 30;
    let f: Vec<u64> = (0..n as u64).collect();
    let g = degenerate_coloring(n, &f, |u, v| {
        if u >= n - 3 && v >= n - 3 {
            (u + 1 - (n - 3)) % 3 == v - (n - 3)
        } else {
            u < v
        }
    })
    .unwrap();
    assert_eq!(run(&g, &[10, 10, 9]), SpiderBranch::RainbowTriangle);
}

#[test]
fn every_leg_one_is_a_rainbow_star() {
    let g = EdgeColoredGraph::from_fn(6, |u, v| (u * 6 + v) as u64).unwrap();
    assert_eq!(run(&g, &[1, 1, 1, 1, 1]), SpiderBranch::Star);
}

#[test]
fn mono_triangle_rejected() {
    let g = EdgeColoredGraph::from_fn(4, |_, _| 0).unwrap();
    let spec = SpiderSpec::new(vec![1, 1, 1]).unwrap();
    assert!(matches!(embed_pc_spider(&g, &spec), Err(Error::MonochromaticTriangle(_))));
}

#[test]
fn below_threshold_failure_names_step() {
    // Far below the bound: either a verified spider or a named step.
    let g = transitive_coloring(10).unwrap();
    let spec = SpiderSpec::new(vec![5, 2, 2]).unwrap();
    match embed_pc_spider(&g, &spec) {
        Ok(t) => check_spider(&g, &t, spec.legs()).unwrap(),
        Err(e) => assert!(e.step().is_some(), "{e}"),
    }
}
