//! PC copies of a fixed tree, and spanning PC subdivisions of it.

use serde::{Deserialize, Serialize};

use super::oracle::{pattern_tree, search_pc_tree};
use super::shape::find_homeomorphism;
use crate::error::{Error, Result};
use crate::graph::{require_mono_c3_free, Color, ColorQuery, EdgeColoredGraph};
use crate::tree::{adjacency, validate_pc_tree, PcTree, TreePattern, TreeShape};

/// Node budget for the backtracking fallback in [`embed_small_pc_tree`].
const SEARCH_BUDGET: u64 = 2_000_000;

/// A PC copy of `pattern` in `g`, usually not spanning.
///
/// Follows the color-degree induction: restrict to vertices of color degree
/// at least `k`, embed the pattern minus a leaf there, then hang a leaf on a
/// fresh color. When a level runs out of room a bounded backtracking search
/// takes over; the error names the level that failed.
pub fn embed_small_pc_tree(g: &EdgeColoredGraph, pattern: &TreePattern) -> Result<PcTree> {
    require_mono_c3_free(g)?;
    let all: Vec<usize> = (0..g.n()).collect();
    let image = match induct(g, &all, pattern) {
        Ok(image) => image,
        Err(step) => match search_pc_tree(g, pattern, SEARCH_BUDGET) {
            Ok(Some(image)) => image,
            Ok(None) => return Err(Error::construction(step, "no PC copy exists")),
            Err(e) => return Err(Error::construction(step, e.to_string())),
        },
    };
    pattern_tree(g.n(), pattern, image)
}

fn induct(g: &EdgeColoredGraph, s: &[usize], pattern: &TreePattern) -> std::result::Result<Vec<usize>, String> {
    let k = pattern.k();
    if s.len() < k + 1 {
        return Err(format!("induction/k={k}/room"));
    }
    if k == 1 {
        return Ok(vec![s[0], s[1]]);
    }
    let v1: Vec<usize> = s.iter().copied().filter(|&v| color_degree_in(g, v, s) >= k).collect();
    let adj = pattern.adjacency();
    let x = (0..pattern.nodes()).rev().find(|&p| adj[p].len() == 1).expect("trees have leaves");
    let y = adj[x][0];
    let relabel = |p: usize| if p > x { p - 1 } else { p };
    let reduced: Vec<(usize, usize)> = pattern
        .edges()
        .iter()
        .filter(|&&(a, b)| a != x && b != x)
        .map(|&(a, b)| (relabel(a), relabel(b)))
        .collect();
    let reduced = TreePattern::new(reduced).expect("removing a leaf keeps a tree");
    let inner = induct(g, &v1, &reduced)?;
    let yy = inner[relabel(y)];
    let used: Vec<Color> = adj[y].iter().filter(|&&p| p != x).map(|&p| g.color(yy, inner[relabel(p)])).collect();
    let fresh = s
        .iter()
        .copied()
        .find(|v| !inner.contains(v) && !used.contains(&g.color(yy, *v)))
        .ok_or_else(|| format!("induction/k={k}/fresh-color"))?;
    let mut image = inner;
    image.insert(x, fresh);
    Ok(image)
}

fn color_degree_in(g: &EdgeColoredGraph, v: usize, s: &[usize]) -> usize {
    let mut cs: Vec<Color> = s.iter().filter(|&&w| w != v).map(|&w| g.color(v, w)).collect();
    cs.sort_unstable();
    cs.dedup();
    cs.len()
}

/// Counters from [`embed_pc_subdivision_traced`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionTrace {
    /// Vertices hung on a leaf.
    pub extensions: usize,
    /// Vertices spliced into an edge.
    pub exchanges: usize,
    /// Longest walk of compatible triples before an exchange applied.
    pub max_hops: usize,
}

/// A spanning PC tree of `g` that subdivides `pattern`.
pub fn embed_pc_subdivision(g: &EdgeColoredGraph, pattern: &TreePattern) -> Result<PcTree> {
    embed_pc_subdivision_traced(g, pattern).map(|(t, _)| t)
}

pub fn embed_pc_subdivision_traced(g: &EdgeColoredGraph, pattern: &TreePattern) -> Result<(PcTree, SubdivisionTrace)> {
    let n = g.n();
    let k = pattern.k();
    if n < k + 1 {
        return Err(Error::precondition(format!("{n} vertices cannot hold a tree with {k} edges")));
    }
    let start = embed_small_pc_tree(g, pattern)?;
    let mut adj = adjacency(n, start.edges().into_iter());
    let mut in_tree = vec![false; n];
    for &v in start.vertices() {
        in_tree[v] = true;
    }
    let mut trace = SubdivisionTrace::default();
    for u in 0..n {
        if in_tree[u] {
            continue;
        }
        let leaves: Vec<usize> = (0..n).filter(|&v| in_tree[v] && adj[v].len() == 1).collect();
        if let Some(&x) = leaves.iter().find(|&&x| g.color(u, x) != g.color(x, adj[x][0])) {
            adj[x].push(u);
            adj[u].push(x);
            in_tree[u] = true;
            trace.extensions += 1;
            continue;
        }
        // Every pendant edge is compatible with u. Walk toward a triple whose
        // exchange keeps the tree properly colored.
        let (mut x, mut y) = (leaves[0], adj[leaves[0]][0]);
        let mut size = side_size(&adj, y, x);
        let mut hops = 0;
        loop {
            let c = g.color(u, y);
            match adj[y].iter().copied().find(|&z| z != x && g.color(y, z) == c) {
                None => break,
                Some(z) => {
                    let next = side_size(&adj, z, y);
                    if next >= size {
                        return Err(Error::construction(
                            "exchange/monotone",
                            format!("component size {next} after {size}"),
                        ));
                    }
                    size = next;
                    x = y;
                    y = z;
                    hops += 1;
                }
            }
        }
        adj[x].retain(|&w| w != y);
        adj[y].retain(|&w| w != x);
        adj[x].push(u);
        adj[y].push(u);
        adj[u].extend([x, y]);
        in_tree[u] = true;
        trace.exchanges += 1;
        trace.max_hops = trace.max_hops.max(hops);
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| adj[v].iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .collect();
    if let Some(clash) = validate_pc_tree(g, &edges)? {
        return Err(Error::construction("verify", format!("color clash at {}", clash.vertex)));
    }
    let (branch, paths) =
        find_homeomorphism(n, &edges, pattern).ok_or_else(|| Error::construction("verify", "tree does not contract to the pattern"))?;
    let root = branch[0];
    let shape = TreeShape::Subdivision {
        pattern: pattern.clone(),
        branch,
        paths,
    };
    Ok((PcTree::from_edges(n, root, &edges, shape)?, trace))
}

// Vertices reachable from `from` without crossing the edge to `cut`.
fn side_size(adj: &[Vec<usize>], from: usize, cut: usize) -> usize {
    let mut stack = vec![(from, cut)];
    let mut count = 0;
    while let Some((v, parent)) = stack.pop() {
        count += 1;
        stack.extend(adj[v].iter().filter(|&&w| w != parent).map(|&w| (w, v)));
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::shape::{verify_shape, ShapeTarget};
    use crate::instances::{random_mono_c3_free, transitive_coloring};

    #[test]
    fn edge_pattern_is_hamilton_path() {
        let g = random_mono_c3_free(25, 4, 1).unwrap();
        let t = embed_pc_subdivision(&g, &TreePattern::edge()).unwrap();
        assert!(t.is_spanning());
        assert_eq!(t.edges().len(), 24);
        assert!(verify_shape(&t, &ShapeTarget::Subdivision(TreePattern::edge())).ok);
    }

    #[test]
    fn star_on_transitive() {
        let g = transitive_coloring(30).unwrap();
        let star = TreePattern::star(3).unwrap();
        let (t, _) = embed_pc_subdivision_traced(&g, &star).unwrap();
        assert!(t.is_spanning());
        assert_eq!(validate_pc_tree(&g, &t.edges()).unwrap(), None);
        assert!(verify_shape(&t, &ShapeTarget::Subdivision(star)).ok);
    }

    #[test]
    fn too_few_vertices() {
        let g = transitive_coloring(3).unwrap();
        assert!(embed_pc_subdivision(&g, &TreePattern::star(3).unwrap()).is_err());
    }

    #[test]
    fn small_tree_in_rainbow_k5() {
        let g = EdgeColoredGraph::from_fn(5, |u, v| (u * 5 + v) as u64).unwrap();
        let star = TreePattern::star(3).unwrap();
        let t = embed_small_pc_tree(&g, &star).unwrap();
        assert_eq!(t.vertices().len(), 4);
        assert_eq!(validate_pc_tree(&g, &t.edges()).unwrap(), None);
    }

    #[test]
    fn caterpillar_random() {
        let pattern = TreePattern::new(vec![(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)]).unwrap();
        for seed in 0..5 {
            let g = random_mono_c3_free(60, 5, seed).unwrap();
            let t = embed_pc_subdivision(&g, &pattern).unwrap();
            assert!(t.is_spanning());
            assert!(verify_shape(&t, &ShapeTarget::Subdivision(pattern.clone())).ok);
        }
    }
}
