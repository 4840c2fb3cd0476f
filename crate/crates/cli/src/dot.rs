//! Graphviz export.

use std::fmt::Write as _;

use pctree::EdgeColoredGraph;

use crate::format::Certificate;

const LEG_COLORS: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

/// Above this order only tree edges are drawn unless `all_edges` is set.
pub const FULL_GRAPH_LIMIT: usize = 40;

/// Renders the coloring with each edge labelled by its color. Tree edges of
/// `cert` are drawn bold, one color per leg or pattern edge.
pub fn to_dot(g: &EdgeColoredGraph, cert: Option<&Certificate>, all_edges: bool) -> String {
    let n = g.n();
    let mut group = vec![vec![None; n]; n];
    if let Some(cert) = cert {
        for (i, path) in cert.paths.iter().enumerate() {
            let mut prev = if cert.branch.is_empty() { Some(cert.root) } else { None };
            for &v in path {
                if let Some(p) = prev {
                    group[p][v] = Some(i);
                    group[v][p] = Some(i);
                }
                prev = Some(v);
            }
        }
    }
    let mut out = String::from("graph coloring {\n  node [shape=circle];\n");
    if let Some(cert) = cert {
        writeln!(out, "  {} [style=filled, fillcolor=\"#dddddd\"];", cert.root).unwrap();
    }
    let draw_all = all_edges || (cert.is_none() || n <= FULL_GRAPH_LIMIT);
    for v in 0..n {
        writeln!(out, "  {v};").unwrap();
    }
    let tree: std::collections::BTreeSet<(usize, usize)> = cert
        .map(|c| c.edges.iter().map(|&(a, b, _)| (a.min(b), a.max(b))).collect())
        .unwrap_or_default();
    for u in 0..n {
        for v in u + 1..n {
            let label = g.edge_label(u, v);
            if tree.contains(&(u, v)) {
                let color = group[u][v].map_or("black", |i| LEG_COLORS[i % LEG_COLORS.len()]);
                writeln!(out, "  {u} -- {v} [label=\"{label}\", color=\"{color}\", penwidth=3];").unwrap();
            } else if draw_all {
                writeln!(out, "  {u} -- {v} [label=\"{label}\", color=\"#bbbbbb\", style=dashed];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::Claim;

    #[test]
    fn highlights_every_leg() {
        let g = EdgeColoredGraph::from_fn(4, |u, v| (u * 4 + v) as u64).unwrap();
        let t = pctree::embed_pc_spider(&g, &pctree::SpiderSpec::new(vec![1, 1, 1]).unwrap()).unwrap();
        let cert = Certificate::from_tree(&g, &t, Claim::Spider { legs: vec![1, 1, 1] }, "ok");
        let dot = to_dot(&g, Some(&cert), false);
        assert_eq!(dot.matches("penwidth=3").count(), 3);
        assert_eq!(dot.matches("style=dashed").count(), 3);
        for c in &LEG_COLORS[..3] {
            assert!(dot.contains(c));
        }
        assert_eq!(dot, to_dot(&g, Some(&cert), false));
    }
}
