//! Tree certificates and the shapes they are checked against.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, ColorQuery};

/// A fixed tree given as an edge list on nodes `0..nodes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePattern {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl TreePattern {
    pub fn new(edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::precondition("a pattern needs at least one edge"));
        }
        let nodes = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
        if nodes != edges.len() + 1 {
            return Err(Error::NotAForest(format!(
                "{} edges on {} nodes cannot form a tree",
                edges.len(),
                nodes
            )));
        }
        let mut dsu = Dsu::new(nodes);
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::NotAForest(format!("loop at node {a}")));
            }
            if !dsu.union(a, b) {
                return Err(Error::NotAForest(format!("edge {a}-{b} closes a cycle")));
            }
        }
        Ok(TreePattern { nodes, edges })
    }

    /// The single edge `K_2`; its subdivisions are paths.
    pub fn edge() -> Self {
        TreePattern::new(vec![(0, 1)]).unwrap()
    }

    /// Star with `k` leaves around node 0.
    pub fn star(k: usize) -> Result<Self> {
        TreePattern::new((1..=k).map(|i| (0, i)).collect())
    }

    pub fn path(k: usize) -> Result<Self> {
        TreePattern::new((0..k).map(|i| (i, i + 1)).collect())
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Number of edges.
    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.nodes, self.edges.iter().copied())
    }
}

/// Leg lengths of a spider, longest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiderSpec {
    legs: Vec<usize>,
}

impl SpiderSpec {
    /// Accepts lengths in any order and sorts them longest first.
    pub fn new(mut legs: Vec<usize>) -> Result<Self> {
        if legs.is_empty() {
            return Err(Error::precondition("a spider needs at least one leg"));
        }
        if legs.contains(&0) {
            return Err(Error::precondition("leg lengths must be positive"));
        }
        legs.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SpiderSpec { legs })
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn k(&self) -> usize {
        self.legs.len()
    }

    pub fn total(&self) -> usize {
        self.legs.iter().sum()
    }
}

/// What a [`PcTree`] is a copy of.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TreeShape {
    /// Legs listed outward from the root, root excluded.
    Spider { legs: Vec<Vec<usize>> },
    /// `branch[i]` hosts pattern node `i`; `paths[e]` is the host path of
    /// pattern edge `e`, from `branch[a]` to `branch[b]`.
    Subdivision {
        pattern: TreePattern,
        branch: Vec<usize>,
        paths: Vec<Vec<usize>>,
    },
}

/// A tree in a complete graph, stored as a parent map over host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcTree {
    n: usize,
    root: usize,
    parent: Vec<Option<usize>>,
    members: Vec<usize>,
    shape: TreeShape,
}

impl PcTree {
    /// Builds a spider from its legs; each leg is listed outward from `root`.
    pub fn spider(n: usize, root: usize, legs: Vec<Vec<usize>>) -> Result<Self> {
        let mut edges = Vec::new();
        for leg in &legs {
            let mut prev = root;
            for &v in leg {
                edges.push((prev, v));
                prev = v;
            }
        }
        Self::from_edges(n, root, &edges, TreeShape::Spider { legs })
    }

    /// Builds a tree from undirected edges, rooted at `root`.
    pub fn from_edges(n: usize, root: usize, edges: &[(usize, usize)], shape: TreeShape) -> Result<Self> {
        check_forest(n, edges)?;
        let adj = adjacency(n, edges.iter().copied());
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut members = vec![root];
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        if members.len() != edges.len() + 1 {
            return Err(Error::NotAForest("edges do not form a single tree through the root".into()));
        }
        members.sort_unstable();
        Ok(PcTree {
            n,
            root,
            parent,
            members,
            shape,
        })
    }

    pub fn host_order(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Vertices in the tree, sorted.
    pub fn vertices(&self) -> &[usize] {
        &self.members
    }

    pub fn is_spanning(&self) -> bool {
        self.members.len() == self.n
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    /// `(child, parent)` pairs in child order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.members
            .iter()
            .filter_map(|&v| self.parent[v].map(|p| (v, p)))
            .collect()
    }
}

/// Two tree edges at one vertex sharing a color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClash {
    pub vertex: usize,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub color: Color,
}

/// Checks that adjacent edges of a forest have distinct colors.
///
/// Returns `Ok(None)` when the forest is properly colored and the first
/// clash (in edge order) otherwise. Errors when `edges` is not a forest.
pub fn validate_pc_tree<C: ColorQuery + ?Sized>(g: &C, edges: &[(usize, usize)]) -> Result<Option<ColorClash>> {
    let n = g.order();
    check_forest(n, edges)?;
    let mut seen: Vec<Vec<(Color, (usize, usize))>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        let c = g.color(a, b);
        for x in [a, b] {
            if let Some(&(_, first)) = seen[x].iter().find(|(col, _)| *col == c) {
                return Ok(Some(ColorClash {
                    vertex: x,
                    first,
                    second: (a, b),
                    color: c,
                }));
            }
            seen[x].push((c, (a, b)));
        }
    }
    Ok(None)
}

/// Checks that a vertex sequence is a properly colored path.
pub fn is_pc_path<C: ColorQuery + ?Sized>(g: &C, path: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    path.iter().all(|&v| v < g.order() && seen.insert(v))
        && path
            .windows(3)
            .all(|w| g.color(w[0], w[1]) != g.color(w[1], w[2]))
}

pub(crate) fn check_forest(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    let mut dsu = Dsu::new(n);
    for &(a, b) in edges {
        for x in [a, b] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, order: n });
            }
        }
        if a == b {
            return Err(Error::NotAForest(format!("loop at {a}")));
        }
        if !dsu.union(a, b) {
            return Err(Error::NotAForest(format!("edge {a}-{b} repeats or closes a cycle")));
        }
    }
    Ok(())
}

pub(crate) fn adjacency(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeColoredGraph;

    #[test]
    fn patterns_reject_cycles() {
        assert!(TreePattern::new(vec![(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(TreePattern::new(vec![(0, 1), (0, 1)]).is_err());
        assert_eq!(TreePattern::star(3).unwrap().k(), 3);
    }

    #[test]
    fn pc_validation() {
        let g = EdgeColoredGraph::from_fn(4, |u, _| u as u64).unwrap();
        assert_eq!(validate_pc_tree(&g, &[(0, 1)]).unwrap(), None);
        // Both edges at 0 carry color 0.
        let clash = validate_pc_tree(&g, &[(0, 1), (0, 2)]).unwrap().unwrap();
        assert_eq!(clash.vertex, 0);
        assert_eq!((clash.first, clash.second), ((0, 1), (0, 2)));
        assert!(validate_pc_tree(&g, &[(0, 1), (1, 0)]).is_err());
        assert!(validate_pc_tree(&g, &[(0, 1), (1, 2), (2, 0)]).is_err());
    }

    #[test]
    fn spider_tree_structure() {
        let t = PcTree::spider(6, 0, vec![vec![1, 2], vec![3], vec![4, 5]]).unwrap();
        assert!(t.is_spanning());
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.edges().len(), 5);
        assert!(PcTree::spider(6, 0, vec![vec![1, 2], vec![2]]).is_err());
    }
}
