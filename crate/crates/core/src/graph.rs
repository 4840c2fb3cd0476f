//! Edge-colored complete graphs.
//!
//! Colors are dense ids `0..palette_size`; the labels they were built from are
//! kept in a side table so that files round-trip unchanged. Equality is the
//! only operation ever applied to colors.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{find_map_first, Exec};

/// Dense color id.
pub type Color = u32;

/// Read access to the coloring of a complete graph on `0..order()`.
///
/// Implemented by [`EdgeColoredGraph`] and by [`InducedView`], so every
/// algorithm can run on an induced subgraph without copying it.
pub trait ColorQuery: Sync {
    fn order(&self) -> usize;

    /// Color of the edge `uv`. `u != v`, both `< order()`.
    fn color(&self, u: usize, v: usize) -> Color;
}

impl<C: ColorQuery + ?Sized> ColorQuery for &C {
    fn order(&self) -> usize {
        (**self).order()
    }

    fn color(&self, u: usize, v: usize) -> Color {
        (**self).color(u, v)
    }
}

/// Three vertices, stored in the order they were found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangle(pub usize, pub usize, pub usize);

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0, self.1, self.2)
    }
}

/// A complete graph with every edge colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    n: usize,
    // Flat upper triangle, row by row: (0,1), (0,2), ..., (1,2), ...
    colors: Vec<Color>,
    // `base[u] + v` is the slot of (u, v) for u < v.
    base: Vec<usize>,
    labels: Vec<u64>,
}

fn row_offset(n: usize, u: usize) -> usize {
    u * (n - 1) - u * u.saturating_sub(1) / 2
}

impl EdgeColoredGraph {
    /// Builds a graph from a label function evaluated on every pair `u < v`.
    ///
    /// Labels are relabeled densely in order of first appearance.
    pub fn from_fn(n: usize, mut label: impl FnMut(usize, usize) -> u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let pairs = n * (n - 1) / 2;
        let mut colors = Vec::with_capacity(pairs);
        let mut dense: HashMap<u64, Color> = HashMap::new();
        let mut labels = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let l = label(u, v);
                let c = *dense.entry(l).or_insert_with(|| {
                    labels.push(l);
                    (labels.len() - 1) as Color
                });
                colors.push(c);
            }
        }
        let base = (0..n)
            .map(|u| row_offset(n, u).wrapping_sub(u + 1))
            .collect();
        Ok(EdgeColoredGraph {
            n,
            colors,
            base,
            labels,
        })
    }

    /// Builds a graph from `(u, v, label)` entries.
    ///
    /// Every unordered pair must be present. A pair may appear twice (once in
    /// each direction) only with the same label.
    pub fn build(n: usize, entries: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut slots: Vec<Option<u64>> = vec![None; n * (n - 1) / 2];
        for (u, v, l) in entries {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if u == v {
                return Err(Error::RepeatedVertex(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let slot = &mut slots[row_offset(n, a) + b - a - 1];
            match *slot {
                Some(prev) if prev != l => {
                    return Err(Error::AsymmetricPair {
                        u: a,
                        v: b,
                        first: prev,
                        second: l,
                    })
                }
                _ => *slot = Some(l),
            }
        }
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if slots[i].is_none() {
                    return Err(Error::MissingPair(u, v));
                }
                i += 1;
            }
        }
        let mut it = slots.into_iter().map(Option::unwrap);
        Self::from_fn(n, |_, _| it.next().unwrap())
    }

    /// Builds a graph from a full `n x n` label matrix; the diagonal is ignored.
    pub fn from_matrix(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::precondition(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        let entries = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Self::build(n, entries.map(|(u, v)| (u, v, rows[u][v])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette_size(&self) -> usize {
        self.labels.len()
    }

    /// Original label of a dense color.
    pub fn label(&self, c: Color) -> u64 {
        self.labels[c as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Label of the edge `uv`.
    pub fn edge_label(&self, u: usize, v: usize) -> u64 {
        self.label(self.color(u, v))
    }

    /// The same graph with labels replaced by the dense color ids.
    pub fn canonical(&self) -> EdgeColoredGraph {
        let mut g = self.clone();
        g.labels = (0..self.labels.len() as u64).collect();
        g
    }

    /// Read-only view of the subgraph induced by `subset`; local vertex `i`
    /// is `subset[i]`.
    pub fn induced(&self, subset: &[usize]) -> Result<InducedView<'_>> {
        InducedView::new(self, subset.to_vec())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        check_vertex(self.n, v)
    }
}

pub(crate) fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange { vertex: v, order: n })
    } else {
        Ok(())
    }
}

impl ColorQuery for EdgeColoredGraph {
    #[inline]
    fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[self.base[a].wrapping_add(b)]
    }
}

/// An induced subgraph of an [`EdgeColoredGraph`].
#[derive(Debug, Clone)]
pub struct InducedView<'a> {
    parent: &'a EdgeColoredGraph,
    map: Vec<usize>,
}

impl<'a> InducedView<'a> {
    pub fn new(parent: &'a EdgeColoredGraph, map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; parent.n()];
        for &v in &map {
            parent.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        Ok(InducedView { parent, map })
    }

    pub fn parent(&self) -> &'a EdgeColoredGraph {
        self.parent
    }

    /// Parent vertex of local vertex `i`.
    pub fn to_parent(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Local vertices mapped to the parent graph.
    pub fn lift(&self, local: &[usize]) -> Vec<usize> {
        local.iter().map(|&i| self.map[i]).collect()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.map
    }

    /// Copies the view into a standalone graph, preserving labels.
    pub fn to_graph(&self) -> EdgeColoredGraph {
        let n = self.map.len().max(1);
        EdgeColoredGraph::from_fn(n, |u, v| self.parent.edge_label(self.map[u], self.map[v]))
            .expect("non-empty")
    }
}

impl ColorQuery for InducedView<'_> {
    #[inline]
    fn order(&self) -> usize {
        self.map.len()
    }

    #[inline]
    fn color(&self, u: usize, v: usize) -> Color {
        self.parent.color(self.map[u], self.map[v])
    }
}

/// Shape of a colored triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleKind {
    Monochromatic,
    TwoColored,
    Rainbow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleClass {
    pub kind: TriangleKind,
    /// Edges whose color does not appear on the other two edges.
    pub center_edges: Vec<(usize, usize)>,
}

/// Classifies the triangle `uvw` and lists its center edges.
pub fn classify_triangle<C: ColorQuery + ?Sized>(
    g: &C,
    u: usize,
    v: usize,
    w: usize,
) -> Result<TriangleClass> {
    for x in [u, v, w] {
        check_vertex(g.order(), x)?;
    }
    if u == v || u == w {
        return Err(Error::RepeatedVertex(u));
    }
    if v == w {
        return Err(Error::RepeatedVertex(v));
    }
    let edges = [(u, v, w), (u, w, v), (v, w, u)];
    let center_edges: Vec<(usize, usize)> = edges
        .iter()
        .filter(|&&(a, b, c)| {
            let col = g.color(a, b);
            col != g.color(a, c) && col != g.color(b, c)
        })
        .map(|&(a, b, _)| (a, b))
        .collect();
    let kind = match center_edges.len() {
        0 => TriangleKind::Monochromatic,
        1 => TriangleKind::TwoColored,
        _ => TriangleKind::Rainbow,
    };
    Ok(TriangleClass { kind, center_edges })
}

/// Whether `bc` is a center edge of the triangle `abc`.
#[inline]
pub fn is_center_edge<C: ColorQuery + ?Sized>(g: &C, a: usize, b: usize, c: usize) -> bool {
    let x = g.color(b, c);
    x != g.color(a, b) && x != g.color(a, c)
}

/// Lexicographically smallest monochromatic triangle, if any.
pub fn find_monochromatic_triangle<C: ColorQuery + ?Sized>(g: &C) -> Option<Triangle> {
    find_monochromatic_triangle_with(g, Exec::default())
}

pub fn find_monochromatic_triangle_with<C: ColorQuery + ?Sized>(
    g: &C,
    exec: Exec,
) -> Option<Triangle> {
    let n = g.order();
    find_map_first(exec, n, |u| {
        for v in u + 1..n {
            let c = g.color(u, v);
            for w in v + 1..n {
                if g.color(u, w) == c && g.color(v, w) == c {
                    return Some(Triangle(u, v, w));
                }
            }
        }
        None
    })
}

/// Errors with the smallest monochromatic triangle, if there is one.
pub fn require_mono_c3_free<C: ColorQuery + ?Sized>(g: &C) -> Result<()> {
    match find_monochromatic_triangle(g) {
        Some(t) => Err(Error::MonochromaticTriangle(t)),
        None => Ok(()),
    }
}

/// A color seen at least twice at a vertex, with the neighbors that see it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatedColor {
    pub color: Color,
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColorProfile {
    pub vertex: usize,
    /// Number of distinct colors at the vertex.
    pub color_degree: usize,
    /// Size of the largest monochromatic star at the vertex.
    pub max_mono_degree: usize,
    /// Sorted by color.
    pub repeated_colors: Vec<RepeatedColor>,
}

impl VertexColorProfile {
    /// The only repeated color, when exactly one exists.
    pub fn unique_repeated(&self) -> Option<&RepeatedColor> {
        match self.repeated_colors.as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }
}

/// Neighbors of `v` grouped by edge color, sorted by color and then by vertex.
pub fn color_classes<C: ColorQuery + ?Sized>(g: &C, v: usize) -> Vec<(Color, Vec<usize>)> {
    let mut pairs: Vec<(Color, usize)> = (0..g.order())
        .filter(|&w| w != v)
        .map(|w| (g.color(v, w), w))
        .collect();
    pairs.sort_unstable();
    let mut classes: Vec<(Color, Vec<usize>)> = Vec::new();
    for (c, w) in pairs {
        match classes.last_mut() {
            Some((last, ws)) if *last == c => ws.push(w),
            _ => classes.push((c, vec![w])),
        }
    }
    classes
}

pub fn vertex_profile<C: ColorQuery + ?Sized>(g: &C, v: usize) -> Result<VertexColorProfile> {
    check_vertex(g.order(), v)?;
    Ok(profile_unchecked(g, v))
}

pub(crate) fn profile_unchecked<C: ColorQuery + ?Sized>(g: &C, v: usize) -> VertexColorProfile {
    let classes = color_classes(g, v);
    let color_degree = classes.len();
    let max_mono_degree = classes.iter().map(|(_, ws)| ws.len()).max().unwrap_or(0);
    let repeated_colors = classes
        .into_iter()
        .filter(|(_, ws)| ws.len() >= 2)
        .map(|(color, witnesses)| RepeatedColor { color, witnesses })
        .collect();
    VertexColorProfile {
        vertex: v,
        color_degree,
        max_mono_degree,
        repeated_colors,
    }
}

/// Number of distinct colors at `v`.
pub fn color_degree<C: ColorQuery + ?Sized>(g: &C, v: usize) -> usize {
    let mut cs: Vec<Color> = (0..g.order()).filter(|&w| w != v).map(|w| g.color(v, w)).collect();
    cs.sort_unstable();
    cs.dedup();
    cs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> EdgeColoredGraph {
        EdgeColoredGraph::build(3, [(0, 1, 1), (0, 2, 1), (1, 2, 2)]).unwrap()
    }

    #[test]
    fn build_relabels_densely() {
        let g = EdgeColoredGraph::build(2, [(0, 1, 7)]).unwrap();
        assert_eq!(g.palette_size(), 1);
        assert_eq!(g.color(0, 1), 0);
        assert_eq!(g.edge_label(1, 0), 7);
        assert_eq!(g3().palette_size(), 2);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(EdgeColoredGraph::build(0, []), Err(Error::EmptyGraph));
        let asym = EdgeColoredGraph::build(3, [(0, 1, 1), (1, 0, 2), (0, 2, 1), (1, 2, 1)]);
        assert!(matches!(asym, Err(Error::AsymmetricPair { u: 0, v: 1, .. })));
        let missing = EdgeColoredGraph::build(3, [(0, 1, 1), (0, 2, 1)]);
        assert_eq!(missing, Err(Error::MissingPair(1, 2)));
        // Both directions with the same label are fine.
        assert!(EdgeColoredGraph::build(2, [(0, 1, 3), (1, 0, 3)]).is_ok());
    }

    #[test]
    fn triangular_indexing_matches_labels() {
        let n = 9;
        let g = EdgeColoredGraph::from_fn(n, |u, v| (u * 100 + v) as u64).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let (a, b) = (u.min(v), u.max(v));
                    assert_eq!(g.edge_label(u, v), (a * 100 + b) as u64);
                }
            }
        }
    }

    #[test]
    fn triangle_classes() {
        let mono = EdgeColoredGraph::from_fn(3, |_, _| 1).unwrap();
        let c = classify_triangle(&mono, 0, 1, 2).unwrap();
        assert_eq!(c.kind, TriangleKind::Monochromatic);
        assert!(c.center_edges.is_empty());

        // uv = 1, uw = 1, vw = 2: the center edge is vw.
        let c = classify_triangle(&g3(), 0, 1, 2).unwrap();
        assert_eq!(c.kind, TriangleKind::TwoColored);
        assert_eq!(c.center_edges, vec![(1, 2)]);

        let rainbow = EdgeColoredGraph::from_fn(3, |u, v| (u + v) as u64).unwrap();
        let c = classify_triangle(&rainbow, 0, 1, 2).unwrap();
        assert_eq!(c.kind, TriangleKind::Rainbow);
        assert_eq!(c.center_edges.len(), 3);

        assert_eq!(classify_triangle(&g3(), 0, 0, 2), Err(Error::RepeatedVertex(0)));
    }

    #[test]
    fn mono_triangle_search() {
        let mono = EdgeColoredGraph::from_fn(3, |_, _| 1).unwrap();
        assert_eq!(find_monochromatic_triangle(&mono), Some(Triangle(0, 1, 2)));
        let two = EdgeColoredGraph::from_fn(2, |_, _| 1).unwrap();
        assert_eq!(find_monochromatic_triangle(&two), None);
        assert_eq!(find_monochromatic_triangle(&g3()), None);
    }

    #[test]
    fn profiles() {
        let p = vertex_profile(&g3(), 0).unwrap();
        assert_eq!(p.color_degree, 1);
        assert_eq!(p.max_mono_degree, 2);
        assert_eq!(
            p.repeated_colors,
            vec![RepeatedColor {
                color: 0,
                witnesses: vec![1, 2]
            }]
        );
        let p = vertex_profile(&g3(), 1).unwrap();
        assert_eq!((p.color_degree, p.max_mono_degree), (2, 1));

        let rainbow = EdgeColoredGraph::from_fn(4, |u, v| (u * 4 + v) as u64).unwrap();
        for v in 0..4 {
            let p = vertex_profile(&rainbow, v).unwrap();
            assert_eq!((p.color_degree, p.max_mono_degree), (3, 1));
        }
        assert!(vertex_profile(&g3(), 3).is_err());
    }

    #[test]
    fn induced_views() {
        let g = EdgeColoredGraph::from_fn(5, |u, v| (u * 5 + v) as u64).unwrap();
        let all = g.induced(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(all.to_graph(), g);
        let one = g.induced(&[3]).unwrap();
        assert_eq!(one.order(), 1);
        assert_eq!(g.induced(&[1, 1]).unwrap_err(), Error::RepeatedVertex(1));
        assert!(g.induced(&[9]).is_err());
        let sub = g.induced(&[4, 1]).unwrap();
        assert_eq!(sub.color(0, 1), g.color(1, 4));
    }
}
