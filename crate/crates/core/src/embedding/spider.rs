//! Spanning PC spiders with prescribed leg lengths.

use serde::{Deserialize, Serialize};

use super::shape::{verify_shape, ShapeTarget};
use crate::error::{Error, Result};
use crate::graph::{find_monochromatic_triangle_with, profile_unchecked, EdgeColoredGraph, VertexColorProfile};
use crate::par::{map_collect, Exec};
use crate::pc::{
    find_nice_bowtie, hamilton_path_ending_at, merge_triangle_shovel, octopus_to_spider, spanning_shovel_unchecked,
    Bowtie, MergeTail, Octopus,
};
use crate::ramsey::{find_rainbow_star, g_upper};
use crate::tournament::tstar_search;
use crate::tree::{validate_pc_tree, PcTree, SpiderSpec};

use super::DegenerateLabel;

/// Which construction produced the spider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpiderBranch {
    /// One or two legs: a split PC Hamilton path.
    Path,
    /// Every leg has length one: a rainbow spanning star.
    Star,
    /// More packed bowties than the Ramsey threshold.
    Bowties,
    /// Three vertices without repeated colors in the leftover graph.
    RainbowTriangle,
    /// A vertex whose repeated color class is small.
    MonoWindow,
    /// The auxiliary tournament of a degenerate coloring.
    Degenerate,
}

/// How the construction went, and which size bounds held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiderTrace {
    pub k: usize,
    pub branch: SpiderBranch,
    pub bowties: usize,
    /// Value of `g(S_k, C_3)` used as the packing threshold.
    pub g_threshold: usize,
    /// `6kg + 2k^3 + 2k^2 + 8k`.
    pub theorem_bound: usize,
    pub theorem_bound_met: bool,
    /// Order of the graph left after packing, when packing stopped short.
    pub h_order: Option<usize>,
    /// `l_2 + ... + l_k + 2k^2 + 2k + 8`.
    pub h_bound: usize,
    pub h_bound_met: Option<bool>,
    /// Smallest out-degree in the auxiliary tournament, when one was built.
    pub min_aux_out_degree: Option<usize>,
    /// `2k^2 + 2k + 6`.
    pub aux_bound: usize,
    pub aux_bound_met: Option<bool>,
}

/// A spanning PC spider of `g` whose legs have exactly the lengths in `spec`.
pub fn embed_pc_spider(g: &EdgeColoredGraph, spec: &SpiderSpec) -> Result<PcTree> {
    embed_pc_spider_with(g, spec, Exec::default())
}

pub fn embed_pc_spider_with(g: &EdgeColoredGraph, spec: &SpiderSpec, exec: Exec) -> Result<PcTree> {
    embed_pc_spider_traced(g, spec, exec).map(|(t, _)| t)
}

/// Runs independent instances, each single-threaded, spread over `exec`.
pub fn embed_pc_spider_batch(jobs: &[(&EdgeColoredGraph, SpiderSpec)], exec: Exec) -> Vec<Result<PcTree>> {
    map_collect(exec, jobs, |(g, spec)| embed_pc_spider_with(g, spec, Exec::Sequential))
}

pub fn embed_pc_spider_traced(g: &EdgeColoredGraph, spec: &SpiderSpec, exec: Exec) -> Result<(PcTree, SpiderTrace)> {
    let n = g.n();
    if spec.total() + 1 != n {
        return Err(Error::precondition(format!(
            "leg lengths sum to {}, need {}",
            spec.total(),
            n - 1
        )));
    }
    if let Some(t) = find_monochromatic_triangle_with(g, exec) {
        return Err(Error::MonochromaticTriangle(t));
    }
    let legs = spec.legs();
    let k = legs.len();
    let g_threshold = g_upper(k);
    let theorem_bound = 6 * k * g_threshold + 2 * k.pow(3) + 2 * k * k + 8 * k;
    let mut trace = SpiderTrace {
        k,
        branch: SpiderBranch::Path,
        bowties: 0,
        g_threshold,
        theorem_bound,
        theorem_bound_met: n >= theorem_bound,
        h_order: None,
        h_bound: legs[1..].iter().sum::<usize>() + 2 * k * k + 2 * k + 8,
        h_bound_met: None,
        min_aux_out_degree: None,
        aux_bound: 2 * k * k + 2 * k + 6,
        aux_bound_met: None,
    };
    let tree = if k <= 2 {
        path_spider(g, legs)?
    } else if legs[0] == 1 {
        trace.branch = SpiderBranch::Star;
        let star = find_rainbow_star(g, n - 1)
            .ok_or_else(|| Error::construction("Star/rainbow", format!("no vertex sees {} colors", n - 1)))?;
        PcTree::spider(n, star.center, star.leaves.iter().map(|&v| vec![v]).collect())?
    } else {
        general(g, legs, exec, &mut trace)?
    };
    final_check(g, &tree, spec)?;
    Ok((tree, trace))
}

fn final_check(g: &EdgeColoredGraph, tree: &PcTree, spec: &SpiderSpec) -> Result<()> {
    if !tree.is_spanning() {
        return Err(Error::construction("verify", "tree is not spanning"));
    }
    if let Some(clash) = validate_pc_tree(g, &tree.edges())? {
        return Err(Error::construction("verify", format!("color clash at {}", clash.vertex)));
    }
    let verdict = verify_shape(tree, &ShapeTarget::Spider(spec.clone()));
    match verdict.violation {
        Some(msg) => Err(Error::construction("verify", msg)),
        None => Ok(()),
    }
}

// A PC Hamilton path from vertex 0, split at the right place.
fn path_spider(g: &EdgeColoredGraph, legs: &[usize]) -> Result<PcTree> {
    let n = g.n();
    let p = hamilton_path_ending_at(g, 0)?.reversed().0;
    match *legs {
        [_] => PcTree::spider(n, p[0], vec![p[1..].to_vec()]),
        [_, l2] => {
            let mut second = p[..l2].to_vec();
            second.reverse();
            PcTree::spider(n, p[l2], vec![p[l2 + 1..].to_vec(), second])
        }
        _ => unreachable!(),
    }
}

fn general(g: &EdgeColoredGraph, legs: &[usize], exec: Exec, trace: &mut SpiderTrace) -> Result<PcTree> {
    let n = g.n();
    let mut free = vec![true; n];
    let mut bowties: Vec<Bowtie> = Vec::new();
    while bowties.len() <= trace.g_threshold {
        let rest: Vec<usize> = (0..n).filter(|&v| free[v]).collect();
        let view = g.induced(&rest)?;
        let Some(b) = find_nice_bowtie(&view) else {
            break;
        };
        let b = b.lift(&view);
        for v in b.vertices() {
            free[v] = false;
        }
        bowties.push(b);
    }
    trace.bowties = bowties.len();
    if bowties.len() > trace.g_threshold {
        trace.branch = SpiderBranch::Bowties;
        return many_bowties(g, legs, &bowties);
    }
    let h: Vec<usize> = (0..n).filter(|&v| free[v]).collect();
    few_bowties(g, legs, &h, exec, trace)
}

fn many_bowties(g: &EdgeColoredGraph, legs: &[usize], bowties: &[Bowtie]) -> Result<PcTree> {
    let n = g.n();
    let k = legs.len();
    let centers: Vec<usize> = bowties.iter().map(Bowtie::center).collect();
    let view = g.induced(&centers)?;
    let star = find_rainbow_star(&view, k).ok_or_else(|| {
        Error::construction(
            "Case1/rainbow-star",
            format!("no rainbow {k}-star among {} bowtie centers", centers.len()),
        )
    })?;
    let v0 = centers[star.center];
    let mut used = vec![false; n];
    used[v0] = true;
    // Each shovel as a PC path out of v0 ending with its triangle.
    let mut full = Vec::with_capacity(k);
    for &leaf in &star.leaves {
        let y = bowties[leaf]
            .shovel_towards(g, v0)
            .ok_or_else(|| Error::construction("Case1/shovel", format!("bowtie at {} has no nice shovel", centers[leaf])))?;
        let mut leg: Vec<usize> = y.path.iter().rev().skip(1).copied().collect();
        leg.extend_from_slice(&y.triangle[1..]);
        full.push((leg, y.triangle));
    }
    for (i, (leg, _)) in full.iter().enumerate() {
        for &v in leg.iter().take(legs[i]) {
            used[v] = true;
        }
    }
    let pool: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
    let mut at = 0;
    let mut out = Vec::with_capacity(k);
    for (i, (leg, triangle)) in full.into_iter().enumerate() {
        if legs[i] <= leg.len() {
            out.push(leg[..legs[i]].to_vec());
            continue;
        }
        let need = legs[i] - leg.len();
        let part = pool.get(at..at + need).ok_or_else(|| {
            Error::construction("Case1/partition", format!("{} spare vertices, leg {i} needs more", pool.len()))
        })?;
        at += need;
        let tail = if part.len() >= 3 {
            let view = g.induced(part)?;
            MergeTail::Shovel(spanning_shovel_unchecked(&view)?.lift(&view))
        } else {
            MergeTail::Loose(part.to_vec())
        };
        let merged = merge_triangle_shovel(g, triangle, &tail)?;
        let mut full_leg = leg[..leg.len() - 3].to_vec();
        full_leg.extend_from_slice(&merged.0);
        out.push(full_leg);
    }
    if at != pool.len() {
        return Err(Error::construction(
            "Case1/partition",
            format!("{} vertices left over", pool.len() - at),
        ));
    }
    PcTree::spider(n, v0, out)
}

fn few_bowties(g: &EdgeColoredGraph, legs: &[usize], h: &[usize], exec: Exec, trace: &mut SpiderTrace) -> Result<PcTree> {
    let n = g.n();
    let k = legs.len();
    let rest = &legs[1..];
    trace.h_order = Some(h.len());
    trace.h_bound_met = Some(h.len() >= trace.h_bound);
    let view = g.induced(h)?;
    let profiles: Vec<VertexColorProfile> = (0..h.len()).map(|v| profile_unchecked(&view, v)).collect();
    let v1: Vec<usize> = (0..h.len()).filter(|&v| profiles[v].max_mono_degree == 1).collect();
    let window = 2 * k * k + 2 * k + 7;
    let octopus = if v1.len() >= 3 {
        trace.branch = SpiderBranch::RainbowTriangle;
        let (c, a, b) = (v1[0], v1[1], v1[2]);
        let pool: Vec<usize> = (0..h.len()).filter(|v| ![c, a, b].contains(v)).map(|v| h[v]).collect();
        Octopus {
            center: h[c],
            a: h[a],
            b: h[b],
            legs: anchored_legs(g, h[c], &pool, rest, "Case2/V1>=3/room")?,
        }
    } else if let Some(x) = (0..h.len()).find(|&v| (2..=window).contains(&profiles[v].max_mono_degree)) {
        trace.branch = SpiderBranch::MonoWindow;
        let class = profiles[x].unique_repeated().ok_or_else(|| {
            Error::construction("Case2/Δmon-window/repeated", format!("vertex {} repeats several colors", h[x]))
        })?;
        let ua = &class.witnesses;
        let pool: Vec<usize> = (0..h.len()).filter(|v| *v != x && !ua.contains(v)).map(|v| h[v]).collect();
        Octopus {
            center: h[x],
            a: h[ua[0]],
            b: h[ua[1]],
            legs: anchored_legs(g, h[x], &pool, rest, "Case2/Δmon-window/room")?,
        }
    } else {
        trace.branch = SpiderBranch::Degenerate;
        degenerate_octopus(g, h, &v1, rest, exec, trace)?
    };
    let mut covered = vec![false; n];
    for v in octopus.vertices() {
        covered[v] = true;
    }
    let remainder: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
    octopus_to_spider(g, &octopus, &remainder).map_err(|e| match e {
        Error::Construction { .. } => e,
        other => Error::construction("Octopus/extend", other.to_string()),
    })
}

fn degenerate_octopus(
    g: &EdgeColoredGraph,
    h: &[usize],
    v1: &[usize],
    rest: &[usize],
    exec: Exec,
    trace: &mut SpiderTrace,
) -> Result<Octopus> {
    const STEP: &str = "Case2/V1<3/Δmon-window-empty";
    let h1: Vec<usize> = (0..h.len()).filter(|v| !v1.contains(v)).map(|v| h[v]).collect();
    let view = g.induced(&h1)?;
    let label = DegenerateLabel::compute(&view);
    let aux = label
        .auxiliary_tournament(&view)
        .map_err(|e| Error::construction(format!("{STEP}/auxiliary"), e.to_string()))?;
    let min_out = (0..aux.order()).map(|v| aux.out_degree(v)).min().unwrap_or(0);
    trace.min_aux_out_degree = Some(min_out);
    trace.aux_bound_met = Some(min_out >= trace.aux_bound);
    let spider = tstar_search(&aux, rest, exec).map_err(|e| Error::construction(format!("{STEP}/T*"), e.to_string()))?;
    let legs = spider
        .legs
        .iter()
        .map(|leg| leg.iter().rev().map(|&v| view.to_parent(v)).collect())
        .collect();
    Ok(Octopus {
        center: view.to_parent(spider.root),
        a: view.to_parent(spider.out.0),
        b: view.to_parent(spider.out.1),
        legs,
    })
}

// PC paths out of `center` through consecutive chunks of `pool`.
fn anchored_legs(g: &EdgeColoredGraph, center: usize, pool: &[usize], lengths: &[usize], step: &str) -> Result<Vec<Vec<usize>>> {
    let need: usize = lengths.iter().sum();
    if pool.len() < need {
        return Err(Error::construction(step, format!("{} vertices for legs totalling {need}", pool.len())));
    }
    let mut at = 0;
    let mut legs = Vec::with_capacity(lengths.len());
    for &l in lengths {
        let mut vs = vec![center];
        vs.extend_from_slice(&pool[at..at + l]);
        at += l;
        let view = g.induced(&vs)?;
        let path = hamilton_path_ending_at(&view, 0)?.reversed();
        legs.push(view.lift(&path.0[1..]));
    }
    Ok(legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{random_mono_c3_free, transitive_coloring};

    fn spec(legs: &[usize]) -> SpiderSpec {
        SpiderSpec::new(legs.to_vec()).unwrap()
    }

    #[test]
    fn rainbow_k4_star() {
        let g = EdgeColoredGraph::from_fn(4, |u, v| (u * 4 + v) as u64).unwrap();
        let (t, trace) = embed_pc_spider_traced(&g, &spec(&[1, 1, 1]), Exec::Sequential).unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(trace.branch, SpiderBranch::Star);
    }

    #[test]
    fn sum_mismatch() {
        let g = transitive_coloring(5).unwrap();
        assert!(matches!(embed_pc_spider(&g, &spec(&[2, 1, 1, 1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn short_specs_use_paths() {
        let g = random_mono_c3_free(20, 4, 3).unwrap();
        for legs in [&[19][..], &[10, 9], &[18, 1]] {
            let (_, trace) = embed_pc_spider_traced(&g, &spec(legs), Exec::Sequential).unwrap();
            assert_eq!(trace.branch, SpiderBranch::Path);
        }
    }

    #[test]
    fn transitive_large() {
        let g = transitive_coloring(301).unwrap();
        let (t, trace) = embed_pc_spider_traced(&g, &spec(&[200, 60, 40]), Exec::Sequential).unwrap();
        assert!(t.is_spanning());
        assert!(trace.theorem_bound_met);
    }

    #[test]
    fn random_instances_all_branches_verify() {
        for seed in 0..10 {
            let g = random_mono_c3_free(120, 6, seed).unwrap();
            let t = embed_pc_spider_with(&g, &spec(&[80, 25, 14]), Exec::Sequential).unwrap();
            assert!(t.is_spanning());
        }
    }

    #[test]
    fn batch_matches_single() {
        let gs: Vec<EdgeColoredGraph> = (0..4).map(|s| random_mono_c3_free(60, 5, s).unwrap()).collect();
        let jobs: Vec<(&EdgeColoredGraph, SpiderSpec)> = gs.iter().map(|g| (g, spec(&[40, 10, 9]))).collect();
        let par = embed_pc_spider_batch(&jobs, Exec::Parallel);
        let seq = embed_pc_spider_batch(&jobs, Exec::Sequential);
        assert_eq!(par, seq);
    }
}
