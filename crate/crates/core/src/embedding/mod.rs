//! Spanning PC subdivisions and spiders, with checkers and exhaustive oracles.

mod oracle;
mod shape;
mod spider;
mod subdivision;

pub use oracle::{brute_force_pc_spider, search_pc_tree, ORACLE_LIMIT};
pub use shape::{find_homeomorphism, verify_shape, Homeomorphism, ShapeTarget, ShapeVerdict};
pub use spider::{
    embed_pc_spider, embed_pc_spider_batch, embed_pc_spider_traced, embed_pc_spider_with, SpiderBranch, SpiderTrace,
};
pub use subdivision::{embed_pc_subdivision, embed_pc_subdivision_traced, embed_small_pc_tree, SubdivisionTrace};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{profile_unchecked, Color, ColorQuery};
use crate::tournament::{Digraph, McfTournament};

/// For each vertex, its unique repeated color, if it has exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateLabel {
    pub f: Vec<Option<Color>>,
}

impl DegenerateLabel {
    pub fn compute<C: ColorQuery + ?Sized>(g: &C) -> Self {
        let f = (0..g.order())
            .map(|v| profile_unchecked(g, v).unique_repeated().map(|r| r.color))
            .collect();
        DegenerateLabel { f }
    }

    /// True when every vertex has a label.
    pub fn is_total(&self) -> bool {
        self.f.iter().all(Option::is_some)
    }

    /// The first pair `u < v` whose edge color is neither `f(u)` nor `f(v)`.
    pub fn first_violation<C: ColorQuery + ?Sized>(&self, g: &C) -> Option<(usize, usize)> {
        let n = g.order();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| {
                let c = Some(g.color(u, v));
                c != self.f[u] && c != self.f[v]
            })
    }

    /// The auxiliary digraph: `u -> v` iff `col(uv) = f(u) != f(v)`; pairs
    /// with `col(uv) = f(u) = f(v)` form the parts of size two.
    ///
    /// Fails unless the labels are total, every edge takes the label of an
    /// endpoint, and the result is a mono-C3-free tournament.
    pub fn auxiliary_tournament<C: ColorQuery + ?Sized>(&self, g: &C) -> Result<McfTournament> {
        let n = g.order();
        if let Some(v) = self.f.iter().position(Option::is_none) {
            return Err(Error::precondition(format!("vertex {v} has no unique repeated color")));
        }
        if let Some((u, v)) = self.first_violation(g) {
            return Err(Error::precondition(format!("edge {u}-{v} takes neither endpoint label")));
        }
        let mut d = Digraph::new(n);
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut paired = vec![false; n];
        for u in 0..n {
            for v in u + 1..n {
                let c = Some(g.color(u, v));
                match (c == self.f[u], c == self.f[v]) {
                    (true, true) => {
                        paired[u] = true;
                        paired[v] = true;
                        parts.push(vec![u, v]);
                    }
                    (true, false) => d.add_arc(u, v),
                    (false, true) => d.add_arc(v, u),
                    (false, false) => unreachable!(),
                }
            }
        }
        parts.extend((0..n).filter(|&v| !paired[v]).map(|v| vec![v]));
        McfTournament::new(d, &parts).map_err(|e| Error::precondition(format!("auxiliary digraph: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeColoredGraph;

    #[test]
    fn transitive_labels_give_tournament() {
        // col(uv) = min(u, v): vertex u repeats color u toward all larger vertices.
        let g = EdgeColoredGraph::from_fn(6, |u, v| u.min(v) as u64).unwrap();
        let lab = DegenerateLabel::compute(&g);
        assert_eq!(lab.f[..4].iter().map(|c| c.map(|c| g.label(c))).collect::<Vec<_>>(), vec![Some(0), Some(1), Some(2), Some(3)]);
        // Vertices 4 and 5 see distinct colors only.
        assert_eq!(lab.f[5], None);
        assert!(lab.auxiliary_tournament(&g).is_err());
        let view = g.induced(&[0, 1, 2, 3]).unwrap();
        let sub = DegenerateLabel::compute(&view);
        // Inside {0,1,2,3}, vertex 3 sees colors 0, 1, 2 once each.
        assert_eq!(sub.f[3], None);
    }

    #[test]
    fn tournament_round_trip() {
        for seed in 0..20 {
            let d = crate::instances::random_mcf_tournament(12, 0.4, 2, seed).unwrap();
            let g = crate::instances::coloring_from_tournament(&d).unwrap();
            let lab = DegenerateLabel::compute(&g);
            assert!(lab.is_total());
            let back = lab.auxiliary_tournament(&g).unwrap();
            for u in 0..12 {
                assert_eq!(back.partner(u), d.partner(u));
                for v in 0..12 {
                    assert_eq!(back.has_arc(u, v), d.has_arc(u, v), "seed {seed} arc {u}->{v}");
                }
            }
        }
    }
}
