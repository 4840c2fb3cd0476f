//! Exhaustive searches used as ground truth on small graphs.

use crate::error::{Error, Result};
use crate::graph::{Color, ColorQuery, EdgeColoredGraph};
use crate::tree::{PcTree, SpiderSpec, TreePattern, TreeShape};

/// Default order limit for [`brute_force_pc_spider`].
pub const ORACLE_LIMIT: usize = 9;

/// The lexicographically smallest spanning PC spider with legs `spec`, by
/// exhaustive search, or `None` when there is none.
///
/// Solutions are compared by center, then by the legs in spec order. Legs of
/// equal length are taken with increasing first vertices.
pub fn brute_force_pc_spider(g: &EdgeColoredGraph, spec: &SpiderSpec, limit: usize) -> Result<Option<PcTree>> {
    let n = g.n();
    if n > limit {
        return Err(Error::Limit(format!("{n} vertices exceeds the oracle limit {limit}")));
    }
    if spec.total() != n - 1 {
        return Err(Error::precondition(format!(
            "leg lengths sum to {}, need {}",
            spec.total(),
            n - 1
        )));
    }
    let mut search = Spider {
        g,
        legs: spec.legs(),
        used: vec![false; n],
        out: Vec::new(),
        firsts: Vec::new(),
    };
    for center in 0..n {
        search.used[center] = true;
        if search.leg(center, 0) {
            let legs = search.split();
            return PcTree::spider(n, center, legs).map(Some);
        }
        search.used[center] = false;
    }
    Ok(None)
}

struct Spider<'a> {
    g: &'a EdgeColoredGraph,
    legs: &'a [usize],
    used: Vec<bool>,
    out: Vec<usize>,
    firsts: Vec<Color>,
}

impl Spider<'_> {
    fn split(&self) -> Vec<Vec<usize>> {
        let mut at = 0;
        self.legs
            .iter()
            .map(|&l| {
                let leg = self.out[at..at + l].to_vec();
                at += l;
                leg
            })
            .collect()
    }

    fn leg(&mut self, center: usize, i: usize) -> bool {
        if i == self.legs.len() {
            return true;
        }
        let min_first = if i > 0 && self.legs[i] == self.legs[i - 1] {
            self.out[self.out.len() - self.legs[i - 1]] + 1
        } else {
            0
        };
        self.step(center, i, center, None, self.legs[i], min_first)
    }

    fn step(&mut self, center: usize, i: usize, prev: usize, prev_color: Option<Color>, left: usize, min: usize) -> bool {
        if left == 0 {
            return self.leg(center, i + 1);
        }
        let n = self.g.n();
        for v in min..n {
            if self.used[v] {
                continue;
            }
            let c = self.g.color(prev, v);
            let ok = match prev_color {
                Some(pc) => pc != c,
                None => !self.firsts.contains(&c),
            };
            if !ok {
                continue;
            }
            self.used[v] = true;
            self.out.push(v);
            if prev_color.is_none() {
                self.firsts.push(c);
            }
            if self.step(center, i, v, Some(c), left - 1, 0) {
                return true;
            }
            if prev_color.is_none() {
                self.firsts.pop();
            }
            self.out.pop();
            self.used[v] = false;
        }
        false
    }
}

/// A PC copy of `pattern` found by backtracking, with at most `budget`
/// search nodes. Pattern nodes are placed in BFS order from node 0.
pub fn search_pc_tree<C: ColorQuery + ?Sized>(g: &C, pattern: &TreePattern, budget: u64) -> Result<Option<Vec<usize>>> {
    let adj = pattern.adjacency();
    let m = pattern.nodes();
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; m];
    let mut i = 0;
    while i < order.len() {
        let p = order[i];
        for &q in &adj[p] {
            if q != 0 && parent[q] == usize::MAX {
                parent[q] = p;
                order.push(q);
            }
        }
        i += 1;
    }
    let n = g.order();
    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; n];
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn go<C: ColorQuery + ?Sized>(
        g: &C,
        at: usize,
        order: &[usize],
        parent: &[usize],
        adj: &[Vec<usize>],
        image: &mut [usize],
        used: &mut [bool],
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if at == order.len() {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let p = order[at];
        for v in 0..g.order() {
            if used[v] {
                continue;
            }
            if at > 0 {
                let q = image[parent[p]];
                let c = g.color(q, v);
                // Colors already on edges at q that are placed.
                let clash = adj[parent[p]]
                    .iter()
                    .filter(|&&r| r != p && image[r] != usize::MAX)
                    .any(|&r| g.color(q, image[r]) == c);
                if clash {
                    continue;
                }
            }
            used[v] = true;
            image[p] = v;
            match go(g, at + 1, order, parent, adj, image, used, nodes, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            image[p] = usize::MAX;
            used[v] = false;
        }
        Some(false)
    }
    match go(g, 0, &order, &parent, &adj, &mut image, &mut used, &mut nodes, budget) {
        Some(true) => Ok(Some(image)),
        Some(false) => Ok(None),
        None => Err(Error::Limit(format!("tree search exceeded {budget} nodes"))),
    }
}

/// Wraps a pattern image as a (usually non-spanning) tree.
pub(crate) fn pattern_tree(n: usize, pattern: &TreePattern, image: Vec<usize>) -> Result<PcTree> {
    let edges: Vec<(usize, usize)> = pattern.edges().iter().map(|&(a, b)| (image[a], image[b])).collect();
    let paths = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    PcTree::from_edges(
        n,
        image[0],
        &edges,
        TreeShape::Subdivision {
            pattern: pattern.clone(),
            branch: image,
            paths,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::validate_pc_tree;

    #[test]
    fn rainbow_star_found() {
        let g = EdgeColoredGraph::from_fn(4, |u, v| (u * 4 + v) as u64).unwrap();
        let t = brute_force_pc_spider(&g, &SpiderSpec::new(vec![1, 1, 1]).unwrap(), ORACLE_LIMIT)
            .unwrap()
            .unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(validate_pc_tree(&g, &t.edges()).unwrap(), None);
    }

    #[test]
    fn no_star_in_two_colors() {
        // Pentagon/pentagram 2-coloring: every vertex sees two colors only.
        let g = EdgeColoredGraph::from_fn(5, |u, v| u64::from(matches!(v - u, 1 | 4))).unwrap();
        let spec = SpiderSpec::new(vec![2, 1, 1]).unwrap();
        assert_eq!(brute_force_pc_spider(&g, &spec, ORACLE_LIMIT).unwrap(), None);
        let path = SpiderSpec::new(vec![2, 2]).unwrap();
        assert!(brute_force_pc_spider(&g, &path, ORACLE_LIMIT).unwrap().is_some());
    }

    #[test]
    fn limit_and_sum_are_checked() {
        let g = EdgeColoredGraph::from_fn(10, |u, _| u as u64).unwrap();
        assert!(brute_force_pc_spider(&g, &SpiderSpec::new(vec![9]).unwrap(), 9).is_err());
        let g = EdgeColoredGraph::from_fn(4, |u, _| u as u64).unwrap();
        assert!(brute_force_pc_spider(&g, &SpiderSpec::new(vec![1, 1]).unwrap(), 9).is_err());
    }

    #[test]
    fn tree_search() {
        let g = EdgeColoredGraph::from_fn(5, |u, v| (u * 5 + v) as u64).unwrap();
        let star = TreePattern::star(3).unwrap();
        let image = search_pc_tree(&g, &star, 1000).unwrap().unwrap();
        let t = pattern_tree(5, &star, image).unwrap();
        assert_eq!(validate_pc_tree(&g, &t.edges()).unwrap(), None);
    }
}
