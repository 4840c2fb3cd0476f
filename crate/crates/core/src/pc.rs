//! Properly colored paths and the glue structures used to splice them:
//! shovels, bowties and octopuses.
//!
//! Functions taking a [`ColorQuery`] work in that query's vertex numbering;
//! run them on an [`InducedView`] and lift the result to work on a subset.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    color_classes, is_center_edge, require_mono_c3_free, ColorQuery, EdgeColoredGraph, InducedView,
    Triangle,
};
use crate::tree::{is_pc_path, PcTree};

/// A properly colored path, as an ordered vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPath(pub Vec<usize>);

impl PcPath {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn reversed(mut self) -> Self {
        self.0.reverse();
        self
    }

    pub fn is_pc<C: ColorQuery + ?Sized>(&self, g: &C) -> bool {
        !self.0.is_empty() && is_pc_path(g, &self.0)
    }

    pub fn lift(&self, view: &InducedView<'_>) -> PcPath {
        PcPath(view.lift(&self.0))
    }
}

/// Inserts `v` into a PC path, keeping both endpoints.
///
/// `i` indexes a path vertex with `col(v, path[i]) == col(path[i], path[i+1])`.
/// `v` goes right after the largest such index `j >= i`, which keeps the path
/// properly colored whenever `v path[j] path[j+1]` is not monochromatic.
pub fn insert_vertex<C: ColorQuery + ?Sized>(g: &C, path: &PcPath, v: usize, i: usize) -> Result<PcPath> {
    let p = &path.0;
    let t = p.len();
    if t < 2 {
        return Err(Error::precondition("insertion needs a path with at least two vertices"));
    }
    if p.contains(&v) {
        return Err(Error::precondition(format!("vertex {v} is already on the path")));
    }
    if i + 1 >= t || g.color(v, p[i]) != g.color(p[i], p[i + 1]) {
        return Err(Error::precondition(format!(
            "col({v}, p[{i}]) must equal the color of path edge {i}"
        )));
    }
    let j = (i..t - 1)
        .rev()
        .find(|&j| g.color(v, p[j]) == g.color(p[j], p[j + 1]))
        .unwrap();
    if g.color(v, p[j]) == g.color(v, p[j + 1]) {
        return Err(Error::MonochromaticTriangle(Triangle(v, p[j], p[j + 1])));
    }
    let mut out = Vec::with_capacity(t + 1);
    out.extend_from_slice(&p[..=j]);
    out.push(v);
    out.extend_from_slice(&p[j + 1..]);
    Ok(PcPath(out))
}

/// Adds `z` to a PC path without moving its first vertex.
fn absorb<C: ColorQuery + ?Sized>(g: &C, path: &PcPath, z: usize) -> Result<PcPath> {
    let p = &path.0;
    let t = p.len();
    if t == 1 || g.color(z, p[t - 1]) != g.color(p[t - 1], p[t - 2]) {
        let mut out = p.clone();
        out.push(z);
        return Ok(PcPath(out));
    }
    let rev = path.clone().reversed();
    Ok(insert_vertex(g, &rev, z, 0)?.reversed())
}

/// A PC Hamilton path of `g` ending at `v`.
pub fn pc_hamilton_path_from<C: ColorQuery + ?Sized>(g: &C, v: usize) -> Result<PcPath> {
    crate::graph::check_vertex(g.order(), v)?;
    require_mono_c3_free(g)?;
    hamilton_path_ending_at(g, v)
}

pub(crate) fn hamilton_path_ending_at<C: ColorQuery + ?Sized>(g: &C, v: usize) -> Result<PcPath> {
    let mut path = PcPath(vec![v]);
    for u in (0..g.order()).filter(|&u| u != v) {
        let p = &path.0;
        path = if p.len() == 1 || g.color(u, p[0]) != g.color(p[0], p[1]) {
            let mut out = Vec::with_capacity(p.len() + 1);
            out.push(u);
            out.extend_from_slice(p);
            PcPath(out)
        } else {
            insert_vertex(g, &path, u, 0)?
        };
    }
    Ok(path)
}

/// A triangle `apex, u2, u3` glued at its apex to a path.
///
/// `path[0]` is the apex. The shovel is nice when `u2 u3` is a center edge,
/// the path is properly colored and its first edge avoids both triangle
/// colors at the apex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shovel {
    pub triangle: [usize; 3],
    pub path: Vec<usize>,
}

impl Shovel {
    pub fn apex(&self) -> usize {
        self.triangle[0]
    }

    /// Number of path vertices (the `t` of a t-shovel).
    pub fn t(&self) -> usize {
        self.path.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = vec![self.triangle[1], self.triangle[2]];
        vs.extend_from_slice(&self.path);
        vs
    }

    pub fn is_nice<C: ColorQuery + ?Sized>(&self, g: &C) -> bool {
        let [u1, u2, u3] = self.triangle;
        let mut all = self.vertices();
        let count = all.len();
        all.sort_unstable();
        all.dedup();
        if all.len() != count || all.iter().any(|&v| v >= g.order()) {
            return false;
        }
        if self.path.first() != Some(&u1) || !is_center_edge(g, u1, u2, u3) || !is_pc_path(g, &self.path) {
            return false;
        }
        match self.path.get(1) {
            Some(&w2) => {
                let c = g.color(u1, w2);
                c != g.color(u1, u2) && c != g.color(u1, u3)
            }
            None => true,
        }
    }

    pub fn lift(&self, view: &InducedView<'_>) -> Shovel {
        Shovel {
            triangle: self.triangle.map(|v| view.to_parent(v)),
            path: view.lift(&self.path),
        }
    }
}

/// A nice shovel covering every vertex of `g` (`n >= 3`).
pub fn spanning_nice_shovel<C: ColorQuery + ?Sized>(g: &C) -> Result<Shovel> {
    if g.order() < 3 {
        return Err(Error::precondition("a shovel needs at least three vertices"));
    }
    require_mono_c3_free(g)?;
    spanning_shovel_unchecked(g)
}

pub(crate) fn spanning_shovel_unchecked<C: ColorQuery + ?Sized>(g: &C) -> Result<Shovel> {
    let n = g.order();
    if n < 3 {
        return Err(Error::precondition("a shovel needs at least three vertices"));
    }
    if n == 3 {
        return triangle_shovel(g, 0, 1, 2);
    }
    let mut shovel = seed_shovel(g)?;
    for v in 4..n {
        shovel = grow_shovel(g, shovel, v)?;
    }
    if !shovel.is_nice(g) {
        return Err(Error::construction("shovel/grow", "grown shovel is not nice"));
    }
    Ok(shovel)
}

fn triangle_shovel<C: ColorQuery + ?Sized>(g: &C, a: usize, b: usize, c: usize) -> Result<Shovel> {
    for [x, y, z] in [[a, b, c], [b, a, c], [c, a, b]] {
        if is_center_edge(g, x, y, z) {
            return Ok(Shovel {
                triangle: [x, y, z],
                path: vec![x],
            });
        }
    }
    Err(Error::MonochromaticTriangle(Triangle(a, b, c)))
}

// Nice 2-shovel on vertices 0..4.
fn seed_shovel<C: ColorQuery + ?Sized>(g: &C) -> Result<Shovel> {
    for apex in 0..4 {
        for w2 in (0..4).filter(|&w| w != apex) {
            let rest: Vec<usize> = (0..4).filter(|&x| x != apex && x != w2).collect();
            let s = Shovel {
                triangle: [apex, rest[0], rest[1]],
                path: vec![apex, w2],
            };
            if s.is_nice(g) {
                return Ok(s);
            }
        }
    }
    match crate::graph::find_monochromatic_triangle(&SubQuery { g, n: 4 }) {
        Some(t) => Err(Error::MonochromaticTriangle(t)),
        None => Err(Error::construction("shovel/seed", "no nice 2-shovel on the first four vertices")),
    }
}

struct SubQuery<'a, C: ?Sized> {
    g: &'a C,
    n: usize,
}

impl<C: ColorQuery + ?Sized> ColorQuery for SubQuery<'_, C> {
    fn order(&self) -> usize {
        self.n
    }
    fn color(&self, u: usize, v: usize) -> crate::graph::Color {
        self.g.color(u, v)
    }
}

fn grow_shovel<C: ColorQuery + ?Sized>(g: &C, shovel: Shovel, v: usize) -> Result<Shovel> {
    let [u1, u2, u3] = shovel.triangle;
    let alpha = g.color(v, u1);
    if alpha != g.color(u1, u2) && alpha != g.color(u1, u3) {
        // Any position works: a new first edge would be u1-v, whose color
        // already avoids the triangle colors.
        let path = absorb(g, &PcPath(shovel.path), v)?;
        return Ok(Shovel {
            triangle: [u1, u2, u3],
            path: path.0,
        });
    }
    // v joins the triangle in place of `y`; `y` moves onto the path.
    let (x, y) = if alpha == g.color(u1, u2) { (u2, u3) } else { (u3, u2) };
    if g.color(x, v) == alpha {
        return Err(Error::MonochromaticTriangle(Triangle(u1, x, v)));
    }
    if g.color(u1, y) != alpha {
        let path = absorb(g, &PcPath(shovel.path), y)?;
        return Ok(Shovel {
            triangle: [u1, x, v],
            path: path.0,
        });
    }
    // All of v, x, y meet u1 in color alpha, so the triangle vxy avoids alpha
    // and its apex can take over the whole path.
    let mut s = triangle_shovel(g, v, x, y)?;
    for (a, b) in [(v, x), (v, y), (x, y)] {
        if g.color(a, b) == alpha {
            return Err(Error::MonochromaticTriangle(Triangle(u1, a, b)));
        }
    }
    s.path.extend_from_slice(&shovel.path);
    Ok(s)
}

/// Either a nice shovel or at most two loose vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeTail {
    Loose(Vec<usize>),
    Shovel(Shovel),
}

impl MergeTail {
    fn vertices(&self) -> Vec<usize> {
        match self {
            MergeTail::Loose(vs) => vs.clone(),
            MergeTail::Shovel(s) => s.vertices(),
        }
    }
}

/// Threads a triangle and a tail into one PC path.
///
/// `triangle = [u1, u2, u3]` must have `u2 u3` as a center edge. The result
/// starts at `u1`, its first edge takes one of the colors `col(u1, {u2, u3})`,
/// and it covers the triangle and every tail vertex.
pub fn merge_triangle_shovel<C: ColorQuery + ?Sized>(g: &C, triangle: [usize; 3], tail: &MergeTail) -> Result<PcPath> {
    let [u1, u2, u3] = triangle;
    for v in triangle {
        crate::graph::check_vertex(g.order(), v)?;
    }
    if !is_center_edge(g, u1, u2, u3) {
        return Err(Error::precondition(format!("{u2}-{u3} is not a center edge of the triangle")));
    }
    let tail_vs = tail.vertices();
    if let Some(&v) = tail_vs.iter().find(|v| triangle.contains(v)) {
        return Err(Error::precondition(format!("vertex {v} is in both the triangle and the tail")));
    }
    let path = match tail {
        MergeTail::Loose(vs) => {
            if vs.len() > 2 {
                return Err(Error::precondition("at most two loose vertices can be merged"));
            }
            merge_loose(g, triangle, vs)?
        }
        MergeTail::Shovel(s) => {
            if !s.is_nice(g) {
                return Err(Error::precondition("tail shovel is not nice"));
            }
            merge_shovel(g, triangle, s)?
        }
    };
    let first = g.color(path.0[0], path.0[1]);
    assert!(
        first == g.color(u1, u2) || first == g.color(u1, u3),
        "merged path must leave u1 in a triangle color"
    );
    debug_assert!(path.is_pc(g));
    Ok(path)
}

fn merge_loose<C: ColorQuery + ?Sized>(g: &C, [u1, u2, u3]: [usize; 3], loose: &[usize]) -> Result<PcPath> {
    let mut rest = vec![u2, u3];
    rest.extend_from_slice(loose);
    rest.sort_unstable();
    let allowed = [g.color(u1, u2), g.color(u1, u3)];
    loop {
        let mut candidate = Vec::with_capacity(rest.len() + 1);
        candidate.push(u1);
        candidate.extend_from_slice(&rest);
        if allowed.contains(&g.color(u1, rest[0])) && is_pc_path(g, &candidate) {
            return Ok(PcPath(candidate));
        }
        if !next_permutation(&mut rest) {
            return Err(Error::construction(
                "merge/loose",
                format!("no ordering of {rest:?} continues from {u1}"),
            ));
        }
    }
}

/// Advances to the next lexicographic permutation; false after the last one.
pub(crate) fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

fn merge_shovel<C: ColorQuery + ?Sized>(g: &C, [u1, u2, u3]: [usize; 3], y: &Shovel) -> Result<PcPath> {
    let [v1, v2, v3] = y.triangle;
    let tail = &y.path[1..];
    let c1 = g.color(u2, u3);
    let c2 = g.color(v2, v3);
    let build = |head: &[usize]| {
        let mut out = head.to_vec();
        out.extend_from_slice(tail);
        PcPath(out)
    };

    // A cross edge avoiding both center colors links the two triangles directly.
    for (a, a2) in [(u2, u3), (u3, u2)] {
        for (b, b2) in [(v2, v3), (v3, v2)] {
            let c = g.color(a, b);
            if c != c1 && c != c2 {
                return Ok(build(&[u1, a2, a, b, b2, v1]));
            }
        }
    }
    if c1 == c2 {
        return Err(Error::MonochromaticTriangle(Triangle(u2, u3, v2)));
    }
    // Every cross edge is c1 or c2; label so that col(a b) = c1.
    let a = u2;
    let a2 = u3;
    let (b, b2) = if g.color(u2, v2) == c1 { (v2, v3) } else { (v3, v2) };
    if g.color(a, b) != c1 || g.color(a2, b) != c2 || g.color(a2, b2) != c1 || g.color(a, b2) != c2 {
        return Err(Error::construction(
            "merge/cross-colors",
            "cross colors between the triangles are not forced; input has a monochromatic triangle",
        ));
    }
    if g.color(u1, a) != c2 {
        return Ok(build(&[u1, a, b2, a2, b, v1]));
    }
    if g.color(v1, b2) != c1 {
        return Ok(build(&[u1, a, b, a2, b2, v1]));
    }
    let mut p1 = vec![b2, v1];
    p1.extend_from_slice(tail);
    let q = insert_vertex(g, &PcPath(p1), a2, 0)?;
    let mut out = vec![u1, a, b];
    out.extend_from_slice(&q.0);
    Ok(PcPath(out))
}

/// Two triangles sharing a vertex (short) or joined by an edge (long).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bowtie {
    /// Triangles `center a0 a1` and `center b0 b1`.
    Short {
        center: usize,
        first: [usize; 2],
        second: [usize; 2],
    },
    /// Triangles `left` and `right` with bridge `left[2] right[0]`; those two
    /// bridge ends are the centers.
    Long { left: [usize; 3], right: [usize; 3] },
}

impl Bowtie {
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Bowtie::Short { center, first, second } => vec![center, first[0], first[1], second[0], second[1]],
            Bowtie::Long { left, right } => left.iter().chain(right.iter()).copied().collect(),
        }
    }

    /// The center used when gluing legs (for a long bowtie, the left bridge end).
    pub fn center(&self) -> usize {
        match *self {
            Bowtie::Short { center, .. } => center,
            Bowtie::Long { left, .. } => left[2],
        }
    }

    pub fn is_nice<C: ColorQuery + ?Sized>(&self, g: &C) -> bool {
        let mut vs = self.vertices();
        let count = vs.len();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != count || vs.iter().any(|&v| v >= g.order()) {
            return false;
        }
        match *self {
            Bowtie::Short { center, first, second } => {
                let ca = [g.color(center, first[0]), g.color(center, first[1])];
                let cb = [g.color(center, second[0]), g.color(center, second[1])];
                is_center_edge(g, center, first[0], first[1])
                    && is_center_edge(g, center, second[0], second[1])
                    && !ca.iter().any(|c| cb.contains(c))
            }
            Bowtie::Long { left, right } => {
                let [v1, v2, v3] = left;
                let [v4, v5, v6] = right;
                let a = Shovel {
                    triangle: [v4, v5, v6],
                    path: vec![v4, v3],
                };
                let b = Shovel {
                    triangle: [v3, v1, v2],
                    path: vec![v3, v4],
                };
                a.is_nice(g) && b.is_nice(g)
            }
        }
    }

    /// A nice 2- or 3-shovel made of part of this bowtie and the edge from
    /// its center to `outside`; the path ends at `outside`.
    pub fn shovel_towards<C: ColorQuery + ?Sized>(&self, g: &C, outside: usize) -> Option<Shovel> {
        let candidates = match *self {
            Bowtie::Short { center, first, second } => vec![
                Shovel {
                    triangle: [center, first[0], first[1]],
                    path: vec![center, outside],
                },
                Shovel {
                    triangle: [center, second[0], second[1]],
                    path: vec![center, outside],
                },
            ],
            Bowtie::Long { left, right } => vec![
                Shovel {
                    triangle: [left[2], left[0], left[1]],
                    path: vec![left[2], outside],
                },
                Shovel {
                    triangle: right,
                    path: vec![right[0], left[2], outside],
                },
            ],
        };
        candidates.into_iter().find(|s| s.is_nice(g))
    }

    pub fn lift(&self, view: &InducedView<'_>) -> Bowtie {
        let m = |v: usize| view.to_parent(v);
        match *self {
            Bowtie::Short { center, first, second } => Bowtie::Short {
                center: m(center),
                first: first.map(m),
                second: second.map(m),
            },
            Bowtie::Long { left, right } => Bowtie::Long {
                left: left.map(m),
                right: right.map(m),
            },
        }
    }
}

/// Finds a nice bowtie built from repeated colors, if one exists.
///
/// A vertex with two repeated colors yields a short bowtie. Otherwise two
/// vertices `u`, `v` whose only repeated colors are `f(u)` and `f(v)` yield a
/// long bowtie when `col(uv)` is neither and the witnesses can be chosen
/// disjoint. Assumes `g` has no monochromatic triangle; candidates that fail
/// the niceness check are skipped.
pub fn find_nice_bowtie<C: ColorQuery + ?Sized>(g: &C) -> Option<Bowtie> {
    let n = g.order();
    let mut single: Vec<(usize, crate::graph::Color, Vec<usize>)> = Vec::new();
    for v in 0..n {
        let repeated: Vec<_> = color_classes(g, v).into_iter().filter(|(_, ws)| ws.len() >= 2).collect();
        match repeated.len() {
            0 => {}
            1 => {
                let (c, ws) = repeated.into_iter().next().unwrap();
                single.push((v, c, ws));
            }
            _ => {
                let b = Bowtie::Short {
                    center: v,
                    first: [repeated[0].1[0], repeated[0].1[1]],
                    second: [repeated[1].1[0], repeated[1].1[1]],
                };
                if b.is_nice(g) {
                    return Some(b);
                }
            }
        }
    }
    for (i, (u, fu, wu)) in single.iter().enumerate() {
        for (v, fv, wv) in &single[i + 1..] {
            let c = g.color(*u, *v);
            if c == *fu || c == *fv {
                continue;
            }
            let Some((a, b)) = disjoint_pairs(wu, *v, wv, *u) else {
                continue;
            };
            let bt = Bowtie::Long {
                left: [a[0], a[1], *u],
                right: [*v, b[0], b[1]],
            };
            if bt.is_nice(g) {
                return Some(bt);
            }
        }
    }
    None
}

// Two witnesses of `u` (not `v`) and two of `v` (not `u`), all distinct.
fn disjoint_pairs(wu: &[usize], v: usize, wv: &[usize], u: usize) -> Option<([usize; 2], [usize; 2])> {
    let a_all: Vec<usize> = wu.iter().copied().filter(|&x| x != v).collect();
    let b_all: Vec<usize> = wv.iter().copied().filter(|&x| x != u).collect();
    let a_only = a_all.iter().copied().filter(|x| !b_all.contains(x));
    let common: Vec<usize> = a_all.iter().copied().filter(|x| b_all.contains(x)).collect();
    let a: Vec<usize> = a_only.chain(common.iter().copied()).take(2).collect();
    if a.len() < 2 {
        return None;
    }
    let b: Vec<usize> = b_all.iter().copied().filter(|x| !a.contains(x)).take(2).collect();
    if b.len() < 2 {
        return None;
    }
    Some(([a[0], a[1]], [b[0], b[1]]))
}

/// A triangle `center a b` whose center also starts `k - 1` legs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Octopus {
    pub center: usize,
    pub a: usize,
    pub b: usize,
    /// Listed outward from the center, center excluded.
    pub legs: Vec<Vec<usize>>,
}

impl Octopus {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = vec![self.center, self.a, self.b];
        for leg in &self.legs {
            vs.extend_from_slice(leg);
        }
        vs
    }

    pub fn leg_lengths(&self) -> Vec<usize> {
        self.legs.iter().map(Vec::len).collect()
    }

    pub fn is_nice<C: ColorQuery + ?Sized>(&self, g: &C) -> bool {
        let mut vs = self.vertices();
        let count = vs.len();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != count || vs.iter().any(|&v| v >= g.order()) {
            return false;
        }
        if self.legs.iter().any(Vec::is_empty) {
            return false;
        }
        let mut firsts: Vec<_> = self.legs.iter().map(|l| g.color(self.center, l[0])).collect();
        firsts.sort_unstable();
        if firsts.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.legs.iter().all(|leg| {
            let mut path = vec![self.center];
            path.extend_from_slice(leg);
            Shovel {
                triangle: [self.center, self.a, self.b],
                path,
            }
            .is_nice(g)
        })
    }
}

/// Completes a nice octopus to a spanning PC spider.
///
/// The vertices in `remainder` are threaded through the octopus triangle into
/// a new first leg of length `|remainder| + 2`.
pub fn octopus_to_spider(g: &EdgeColoredGraph, o: &Octopus, remainder: &[usize]) -> Result<PcTree> {
    let n = g.n();
    let mut used = vec![false; n];
    for v in o.vertices().into_iter().chain(remainder.iter().copied()) {
        g.check_vertex(v)?;
        if std::mem::replace(&mut used[v], true) {
            return Err(Error::precondition(format!("vertex {v} is covered twice")));
        }
    }
    if let Some(v) = used.iter().position(|&u| !u) {
        return Err(Error::precondition(format!("vertex {v} is not covered")));
    }
    if !o.is_nice(g) {
        return Err(Error::precondition("octopus is not nice"));
    }
    let tail = if remainder.len() >= 3 {
        let view = g.induced(remainder)?;
        MergeTail::Shovel(spanning_shovel_unchecked(&view)?.lift(&view))
    } else {
        MergeTail::Loose(remainder.to_vec())
    };
    let first = merge_triangle_shovel(g, [o.center, o.a, o.b], &tail)?;
    let mut legs = vec![first.0[1..].to_vec()];
    legs.extend(o.legs.iter().cloned());
    PcTree::spider(n, o.center, legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::validate_pc_tree;

    fn from_pairs(n: usize, f: impl Fn(usize, usize) -> u64) -> EdgeColoredGraph {
        EdgeColoredGraph::from_fn(n, f).unwrap()
    }

    #[test]
    fn insert_into_two_vertex_path() {
        // col(v v1) = col(v1 v2) = 1, col(v v2) = 2.
        let g = EdgeColoredGraph::build(3, [(0, 1, 1), (0, 2, 1), (1, 2, 2)]).unwrap();
        let p = insert_vertex(&g, &PcPath(vec![1, 0]), 2, 0);
        // path 1-0 has color 1; col(2,1) = 2, so the precondition fails.
        assert!(p.is_err());
        let p = insert_vertex(&g, &PcPath(vec![0, 1]), 2, 0).unwrap();
        assert_eq!(p.0, vec![0, 2, 1]);
        assert!(p.is_pc(&g));
    }

    #[test]
    fn insert_rejects_vertex_on_path() {
        let g = from_pairs(3, |u, v| (u + v) as u64);
        assert!(insert_vertex(&g, &PcPath(vec![0, 1]), 1, 0).is_err());
    }

    #[test]
    fn hamilton_path_small() {
        let one = from_pairs(1, |_, _| 0);
        assert_eq!(pc_hamilton_path_from(&one, 0).unwrap().0, vec![0]);
        let g = EdgeColoredGraph::build(3, [(0, 1, 1), (0, 2, 1), (1, 2, 2)]).unwrap();
        let p = pc_hamilton_path_from(&g, 0).unwrap();
        assert_eq!(p.last(), 0);
        assert_eq!(p.len(), 3);
        assert!(p.is_pc(&g));
        let mono = from_pairs(3, |_, _| 0);
        assert!(matches!(pc_hamilton_path_from(&mono, 0), Err(Error::MonochromaticTriangle(_))));
    }

    #[test]
    fn shovel_on_a_triangle() {
        let g = EdgeColoredGraph::build(3, [(0, 1, 1), (0, 2, 1), (1, 2, 2)]).unwrap();
        let s = spanning_nice_shovel(&g).unwrap();
        assert_eq!(s.t(), 1);
        assert_eq!(s.triangle, [0, 1, 2]);
        assert!(spanning_nice_shovel(&from_pairs(2, |_, _| 0)).is_err());
    }

    #[test]
    fn shovel_on_transitive_coloring() {
        let g = from_pairs(40, |u, _| u as u64);
        let s = spanning_nice_shovel(&g).unwrap();
        assert!(s.is_nice(&g));
        assert_eq!(s.t(), 38);
    }

    #[test]
    fn merge_with_nothing_walks_the_triangle() {
        let g = EdgeColoredGraph::build(3, [(0, 1, 1), (0, 2, 1), (1, 2, 2)]).unwrap();
        let p = merge_triangle_shovel(&g, [0, 1, 2], &MergeTail::Loose(vec![])).unwrap();
        assert_eq!(p.0, vec![0, 1, 2]);
        assert!(merge_triangle_shovel(&g, [1, 0, 2], &MergeTail::Loose(vec![])).is_err());
    }

    #[test]
    fn merge_forced_cross_colors() {
        // S = u1 u2 u3 = 0 1 2, Y = v1 v2 v3 = 3 4 5 with path 3 6.
        // col(u2u3) = 1, col(v2v3) = 2, col(u2v2) = 1, col(u3v2) = 2,
        // col(u3v3) = 1, col(u2v3) = 2 and col(u1u2) = 3 != 2.
        let mut e = vec![
            (1, 2, 1),
            (4, 5, 2),
            (1, 4, 1),
            (2, 4, 2),
            (2, 5, 1),
            (1, 5, 2),
            (0, 1, 3),
            (0, 2, 3),
            (3, 4, 4),
            (3, 5, 4),
            (3, 6, 5),
        ];
        let mut next = 10;
        for u in 0..7 {
            for v in u + 1..7 {
                if !e.iter().any(|&(a, b, _)| (a, b) == (u, v)) {
                    e.push((u, v, next));
                    next += 1;
                }
            }
        }
        let g = EdgeColoredGraph::build(7, e).unwrap();
        let y = Shovel {
            triangle: [3, 4, 5],
            path: vec![3, 6],
        };
        assert!(y.is_nice(&g));
        let p = merge_triangle_shovel(&g, [0, 1, 2], &MergeTail::Shovel(y)).unwrap();
        assert_eq!(p.0, vec![0, 1, 5, 2, 4, 3, 6]);
        assert!(p.is_pc(&g));
    }

    #[test]
    fn bowties() {
        // Vertex 0 sees color 10 on 1, 2 and color 20 on 3, 4; the rest rainbow.
        let g = from_pairs(5, |u, v| match (u, v) {
            (0, 1) | (0, 2) => 10,
            (0, 3) | (0, 4) => 20,
            _ => (100 + u * 5 + v) as u64,
        });
        let b = find_nice_bowtie(&g).unwrap();
        assert_eq!(
            b,
            Bowtie::Short {
                center: 0,
                first: [1, 2],
                second: [3, 4]
            }
        );
        assert!(find_nice_bowtie(&from_pairs(12, |u, _| u as u64)).is_none());
    }

    #[test]
    fn octopus_with_empty_remainder() {
        // Rainbow K_5: center 0, triangle 0 1 2, one leg 0-3-4.
        let g = from_pairs(5, |u, v| (u * 5 + v) as u64);
        let o = Octopus {
            center: 0,
            a: 1,
            b: 2,
            legs: vec![vec![3, 4]],
        };
        assert!(o.is_nice(&g));
        let t = octopus_to_spider(&g, &o, &[]).unwrap();
        assert!(t.is_spanning());
        match t.shape() {
            crate::tree::TreeShape::Spider { legs } => assert_eq!(legs[0].len(), 2),
            _ => unreachable!(),
        }
        assert_eq!(validate_pc_tree(&g, &t.edges()).unwrap(), None);
    }

    #[test]
    fn permutations_step_lexicographically() {
        let mut xs = vec![1, 2, 3];
        let mut seen = vec![xs.clone()];
        while next_permutation(&mut xs) {
            seen.push(xs.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 3, 2]);
    }
}
