//! Multipartite tournaments whose parts have at most two vertices and whose
//! paired vertices share no out-neighbor.
//!
//! These arise from degenerate colorings and behave much like tournaments:
//! strong ones are Hamiltonian, and with minimum out-degree two they contain
//! every in-spider with two extra out-arcs at the root once they are large.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{find_map_first, Exec};

/// A simple digraph on `0..n` stored as an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if u == v {
                return Err(Error::precondition(format!("loop at {u}")));
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_arc(u, v))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_arc(u, v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbors(u).count()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out_neighbors(u).map(move |v| (u, v)))
            .collect()
    }
}

/// Why a digraph and partition fail to form an [`McfTournament`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum McfViolation {
    /// A vertex is missing from the parts, repeated, or out of range.
    BadPartition { vertex: usize },
    OversizedPart { part: Vec<usize> },
    ArcInsidePart { from: usize, to: usize },
    MissingArc { u: usize, v: usize },
    DoubleArc { u: usize, v: usize },
    CommonOutNeighbor { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for McfViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            McfViolation::BadPartition { vertex } => write!(f, "vertex {vertex} is not in exactly one part"),
            McfViolation::OversizedPart { part } => write!(f, "part {part:?} has more than two vertices"),
            McfViolation::ArcInsidePart { from, to } => write!(f, "arc {from}->{to} joins a part"),
            McfViolation::MissingArc { u, v } => write!(f, "no arc between {u} and {v}"),
            McfViolation::DoubleArc { u, v } => write!(f, "arcs in both directions between {u} and {v}"),
            McfViolation::CommonOutNeighbor { x, y, z } => {
                write!(f, "paired vertices {x} and {y} both point to {z}")
            }
        }
    }
}

/// Checks that `d` with partition `parts` is a multipartite tournament with
/// parts of size at most two whose paired vertices share no out-neighbor.
pub fn validate_mcf(d: &Digraph, parts: &[Vec<usize>]) -> std::result::Result<(), McfViolation> {
    let n = d.order();
    let mut partner: Vec<Option<Option<usize>>> = vec![None; n];
    for part in parts {
        if part.len() > 2 {
            return Err(McfViolation::OversizedPart { part: part.clone() });
        }
        for (i, &v) in part.iter().enumerate() {
            if v >= n || partner[v].is_some() {
                return Err(McfViolation::BadPartition { vertex: v });
            }
            partner[v] = Some(part.get(1 - i).copied().filter(|_| part.len() == 2));
        }
    }
    if let Some(v) = partner.iter().position(Option::is_none) {
        return Err(McfViolation::BadPartition { vertex: v });
    }
    let partner: Vec<Option<usize>> = partner.into_iter().map(Option::unwrap).collect();
    check_arcs(d, &partner)
}

fn check_arcs(d: &Digraph, partner: &[Option<usize>]) -> std::result::Result<(), McfViolation> {
    let n = d.order();
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = (d.has_arc(u, v), d.has_arc(v, u));
            if partner[u] == Some(v) {
                if a || b {
                    let (from, to) = if a { (u, v) } else { (v, u) };
                    return Err(McfViolation::ArcInsidePart { from, to });
                }
            } else if a && b {
                return Err(McfViolation::DoubleArc { u, v });
            } else if !a && !b {
                return Err(McfViolation::MissingArc { u, v });
            }
        }
    }
    for x in 0..n {
        if let Some(y) = partner[x].filter(|&y| y > x) {
            if let Some(z) = (0..n).find(|&z| d.has_arc(x, z) && d.has_arc(y, z)) {
                return Err(McfViolation::CommonOutNeighbor { x, y, z });
            }
        }
    }
    Ok(())
}

/// A validated multipartite tournament with parts of size at most two and
/// disjoint out-neighborhoods inside each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McfTournament {
    digraph: Digraph,
    partner: Vec<Option<usize>>,
}

impl McfTournament {
    pub fn new(digraph: Digraph, parts: &[Vec<usize>]) -> std::result::Result<Self, McfViolation> {
        validate_mcf(&digraph, parts)?;
        let mut partner = vec![None; digraph.order()];
        for part in parts.iter().filter(|p| p.len() == 2) {
            partner[part[0]] = Some(part[1]);
            partner[part[1]] = Some(part[0]);
        }
        Ok(McfTournament { digraph, partner })
    }

    /// A tournament: every part is a singleton.
    pub fn tournament(digraph: Digraph) -> std::result::Result<Self, McfViolation> {
        let parts: Vec<Vec<usize>> = (0..digraph.order()).map(|v| vec![v]).collect();
        Self::new(digraph, &parts)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn order(&self) -> usize {
        self.digraph.order()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.digraph.has_arc(u, v)
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner[v]
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .filter_map(|v| match self.partner[v] {
                None => Some(vec![v]),
                Some(w) if w > v => Some(vec![v, w]),
                Some(_) => None,
            })
            .collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.digraph.out_degree(v)
    }

    /// Out-degree of `v` into `set`.
    pub fn out_degree_into(&self, v: usize, set: &[usize]) -> usize {
        set.iter().filter(|&&w| self.has_arc(v, w)).count()
    }

    fn is_tournament_on(&self, subset: &[usize]) -> bool {
        let mut inside = vec![false; self.order()];
        for &v in subset {
            inside[v] = true;
        }
        subset.iter().all(|&v| self.partner[v].is_none_or(|w| !inside[w]))
    }
}

/// Strong components ordered so that every arc between two components
/// points from the higher index to the lower one; component 0 is a sink.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccOrder {
    pub components: Vec<Vec<usize>>,
    /// `dominates[j][i]` for `i < j`: every vertex of component `j` points
    /// to every vertex of component `i`.
    pub dominates: Vec<Vec<bool>>,
}

impl SccOrder {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Whether component `j` fully dominates component `i` (`i < j`).
    pub fn full(&self, j: usize, i: usize) -> bool {
        self.dominates[j][i]
    }
}

/// Strong components of `d` restricted to `subset`.
pub fn scc_order(d: &McfTournament, subset: &[usize]) -> SccOrder {
    let components = tarjan(d.digraph(), subset);
    let dominates = (0..components.len())
        .map(|j| {
            (0..j)
                .map(|i| {
                    components[j]
                        .iter()
                        .all(|&a| components[i].iter().all(|&b| d.has_arc(a, b)))
                })
                .collect()
        })
        .collect();
    SccOrder { components, dominates }
}

// Iterative Tarjan; components come out sinks first, each sorted.
fn tarjan(d: &Digraph, subset: &[usize]) -> Vec<Vec<usize>> {
    let n = d.order();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut inside = vec![false; n];
    for &v in &sorted {
        inside[v] = true;
    }
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            if inside[u] {
                sorted.iter().copied().filter(|&v| d.has_arc(u, v)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for &root in &sorted {
        if index[root] != NONE {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut next)) = call.last_mut() {
            if *next < nbrs[u].len() {
                let w = nbrs[u][*next];
                *next += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == u {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}

fn check_subset(d: &McfTournament, subset: &[usize]) -> Result<()> {
    let mut seen = vec![false; d.order()];
    for &v in subset {
        crate::graph::check_vertex(d.order(), v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::RepeatedVertex(v));
        }
    }
    Ok(())
}

/// A directed Hamilton cycle of the strongly connected subdigraph on `subset`.
///
/// Grows a shortest cycle through the smallest vertex, inserting one outside
/// vertex between consecutive cycle vertices or two at once when every
/// outside vertex either dominates or is dominated by the cycle.
pub fn hamilton_cycle_strong(d: &McfTournament, subset: &[usize]) -> Result<Vec<usize>> {
    check_subset(d, subset)?;
    if subset.len() < 3 {
        return Err(Error::precondition("a directed cycle needs at least three vertices"));
    }
    if tarjan(d.digraph(), subset).len() != 1 {
        return Err(Error::precondition("subdigraph is not strongly connected"));
    }
    match extend_cycle(d, subset) {
        Some(c) => Ok(c),
        None if subset.len() <= 12 => exhaustive_hamilton_cycle(d, subset).ok_or_else(|| {
            Error::construction("hamilton-cycle/exhaustive", "no directed Hamilton cycle exists")
        }),
        None => Err(Error::construction(
            "hamilton-cycle/extension",
            "cycle extension stalled; the input is not a valid mono-C3-free tournament",
        )),
    }
}

fn shortest_cycle_through(d: &McfTournament, subset: &[usize], s: usize) -> Option<Vec<usize>> {
    let n = d.order();
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v] = true;
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for w in d.digraph().out_neighbors(s).filter(|&w| inside[w]) {
        prev[w] = s;
        queue.push_back(w);
    }
    while let Some(u) = queue.pop_front() {
        if d.has_arc(u, s) {
            let mut cycle = vec![u];
            let mut x = u;
            while prev[x] != s {
                x = prev[x];
                cycle.push(x);
            }
            cycle.push(s);
            cycle.reverse();
            return Some(cycle);
        }
        for w in d.digraph().out_neighbors(u) {
            if inside[w] && w != s && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn extend_cycle(d: &McfTournament, subset: &[usize]) -> Option<Vec<usize>> {
    let s = *subset.iter().min().unwrap();
    let mut cycle = shortest_cycle_through(d, subset, s)?;
    let mut on_cycle = vec![false; d.order()];
    for &c in &cycle {
        on_cycle[c] = true;
    }
    let mut outside: Vec<usize> = subset.iter().copied().filter(|&v| !on_cycle[v]).collect();
    outside.sort_unstable();
    while !outside.is_empty() {
        let h = cycle.len();
        let single = outside.iter().enumerate().find_map(|(idx, &v)| {
            (0..h)
                .find(|&i| d.has_arc(cycle[i], v) && d.has_arc(v, cycle[(i + 1) % h]))
                .map(|i| (idx, i))
        });
        if let Some((idx, i)) = single {
            let v = outside.remove(idx);
            cycle.insert(i + 1, v);
            continue;
        }
        // Every outside vertex now has all its cycle neighbors on one side.
        let dominated = |v: usize| cycle.iter().any(|&c| d.has_arc(c, v));
        let pair = outside.iter().find_map(|&b| {
            if !dominated(b) {
                return None;
            }
            outside
                .iter()
                .find(|&&a| !dominated(a) && d.has_arc(b, a))
                .map(|&a| (b, a))
        });
        let (b, a) = pair?;
        let i = (0..h).find(|&i| d.has_arc(cycle[i], b) && d.has_arc(a, cycle[(i + 1) % h]))?;
        cycle.insert(i + 1, b);
        cycle.insert(i + 2, a);
        outside.retain(|&x| x != a && x != b);
    }
    Some(cycle)
}

/// Exhaustive search for a directed Hamilton cycle starting at the smallest
/// vertex; the lexicographically first one is returned.
pub fn exhaustive_hamilton_cycle(d: &McfTournament, subset: &[usize]) -> Option<Vec<usize>> {
    let mut verts = subset.to_vec();
    verts.sort_unstable();
    let s = *verts.first()?;
    let mut used = vec![false; verts.len()];
    used[0] = true;
    let mut path = vec![s];
    fn go(d: &McfTournament, verts: &[usize], used: &mut [bool], path: &mut Vec<usize>) -> bool {
        let last = *path.last().unwrap();
        if path.len() == verts.len() {
            return path.len() >= 3 && d.has_arc(last, path[0]);
        }
        for i in 0..verts.len() {
            if !used[i] && d.has_arc(last, verts[i]) {
                used[i] = true;
                path.push(verts[i]);
                if go(d, verts, used, path) {
                    return true;
                }
                path.pop();
                used[i] = false;
            }
        }
        false
    }
    go(d, &verts, &mut used, &mut path).then_some(path)
}

/// A directed Hamilton path of the subdigraph on `subset`.
///
/// Tournaments use vertex insertion; otherwise strong components are joined
/// down the domination order, which needs every vertex to have an
/// out-neighbor or the components to be linearly ordered.
pub fn hamilton_path(d: &McfTournament, subset: &[usize]) -> Result<Vec<usize>> {
    check_subset(d, subset)?;
    let mut verts = subset.to_vec();
    verts.sort_unstable();
    if d.is_tournament_on(&verts) {
        let mut path: Vec<usize> = Vec::with_capacity(verts.len());
        for v in verts {
            let pos = path.iter().position(|&p| d.has_arc(v, p)).unwrap_or(path.len());
            path.insert(pos, v);
        }
        return Ok(path);
    }
    let order = scc_order(d, &verts);
    let mut path = Vec::with_capacity(verts.len());
    for j in (0..order.len()).rev() {
        if j + 1 < order.len() && !order.full(j + 1, j) {
            let witness = verts
                .iter()
                .copied()
                .find(|&v| d.out_degree_into(v, &verts) == 0);
            return Err(match witness {
                Some(v) => Error::precondition(format!("vertex {v} has no out-neighbor")),
                None => Error::construction(
                    "hamilton-path/domination",
                    format!("component {} does not dominate component {j}", j + 1),
                ),
            });
        }
        let comp = &order.components[j];
        if comp.len() == 1 {
            path.push(comp[0]);
        } else {
            path.extend(hamilton_cycle_strong(d, comp)?);
        }
    }
    Ok(path)
}

/// Adds `v` to a directed path without changing its last vertex.
pub fn extend_directed_path(d: &McfTournament, path: &[usize], v: usize) -> Result<Vec<usize>> {
    crate::graph::check_vertex(d.order(), v)?;
    if path.contains(&v) {
        return Err(Error::precondition(format!("vertex {v} is already on the path")));
    }
    let j = path
        .iter()
        .position(|&p| d.has_arc(v, p))
        .ok_or_else(|| Error::precondition(format!("vertex {v} points to no path vertex")))?;
    if j > 0 && !d.has_arc(path[j - 1], v) {
        return Err(Error::construction(
            "directed-path/insert",
            format!("{} and {v} share the out-neighbor {}", path[j - 1], path[j]),
        ));
    }
    let mut out = Vec::with_capacity(path.len() + 1);
    out.extend_from_slice(&path[..j]);
    out.push(v);
    out.extend_from_slice(&path[j..]);
    Ok(out)
}

fn is_directed_path(d: &McfTournament, p: &[usize]) -> bool {
    p.windows(2).all(|w| d.has_arc(w[0], w[1]))
}

/// In-legs into a root plus two out-arcs from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedSpider {
    pub root: usize,
    pub out: (usize, usize),
    /// Each leg runs from its far end toward the root, root excluded.
    pub legs: Vec<Vec<usize>>,
}

impl DirectedSpider {
    pub fn vertex_count(&self) -> usize {
        3 + self.legs.iter().map(Vec::len).sum::<usize>()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = vec![self.root, self.out.0, self.out.1];
        for leg in &self.legs {
            vs.extend_from_slice(leg);
        }
        vs
    }

    /// Checks every arc against `d` and the leg lengths against `lengths`.
    pub fn validate(&self, d: &McfTournament, lengths: &[usize]) -> Result<()> {
        let mut seen = vec![false; d.order()];
        for v in self.vertices() {
            crate::graph::check_vertex(d.order(), v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        let got: Vec<usize> = self.legs.iter().map(Vec::len).collect();
        if got != lengths {
            return Err(Error::precondition(format!("leg lengths {got:?}, expected {lengths:?}")));
        }
        for (u, v) in [(self.root, self.out.0), (self.root, self.out.1)] {
            if !d.has_arc(u, v) {
                return Err(Error::precondition(format!("missing arc {u}->{v}")));
            }
        }
        for leg in &self.legs {
            let mut p = leg.clone();
            p.push(self.root);
            if let Some(w) = p.windows(2).find(|w| !d.has_arc(w[0], w[1])) {
                return Err(Error::precondition(format!("missing arc {}->{}", w[0], w[1])));
            }
        }
        Ok(())
    }
}

/// Embeds the in-spider with leg lengths `lengths` plus two root out-arcs.
///
/// Requires out-degree at least two everywhere and
/// `n >= sum(lengths) + 2k^2 + 2k + 6` with `k = lengths.len() + 1`.
pub fn embed_tstar(d: &McfTournament, lengths: &[usize]) -> Result<DirectedSpider> {
    embed_tstar_with(d, lengths, Exec::default())
}

pub fn embed_tstar_with(d: &McfTournament, lengths: &[usize], exec: Exec) -> Result<DirectedSpider> {
    let k = lengths.len() + 1;
    let need = lengths.iter().sum::<usize>() + 2 * k * k + 2 * k + 6;
    if d.order() < need {
        return Err(Error::precondition(format!("{} vertices, need at least {need}", d.order())));
    }
    tstar_search(d, lengths, exec)
}

/// The in-spider construction without the order bound. Output is validated;
/// inputs below the bound may fail with a construction error.
pub(crate) fn tstar_search(d: &McfTournament, lengths: &[usize], exec: Exec) -> Result<DirectedSpider> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(Error::precondition("leg lengths must be positive and non-empty"));
    }
    if let Some(v) = (0..d.order()).find(|&v| d.out_degree(v) < 2) {
        return Err(Error::precondition(format!("vertex {v} has out-degree below two")));
    }
    let need = 3 + lengths.iter().sum::<usize>();
    if d.order() < need {
        return Err(Error::construction("tstar/room", format!("{} vertices, the spider has {need}", d.order())));
    }
    let all: Vec<usize> = (0..d.order()).collect();
    let order = scc_order(d, &all);
    let d0 = order.components[0].clone();
    let u: Vec<usize> = order.components[1..].iter().flatten().copied().collect();
    let total: usize = lengths.iter().sum();
    let spider = if u.len() >= total {
        let p = hamilton_path(d, &u)?;
        let root = d0[0];
        let outs: Vec<usize> = d.digraph().out_neighbors(root).take(2).collect();
        let mut legs = Vec::new();
        let mut at = 0;
        for &l in lengths {
            legs.push(p[at..at + l].to_vec());
            at += l;
        }
        DirectedSpider {
            root,
            out: (outs[0], outs[1]),
            legs,
        }
    } else {
        let reduced = reduce_lengths(lengths, u.len());
        let idx: Vec<usize> = (0..lengths.len()).filter(|&i| reduced[i] > 0).collect();
        let lp: Vec<usize> = idx.iter().map(|&i| reduced[i]).collect();
        let inner = spider_in_sink(d, &d0, &lp, exec)?;
        let p = if u.is_empty() { Vec::new() } else { hamilton_path(d, &u)? };
        let mut legs = Vec::new();
        let mut at = 0;
        let mut inner_legs = inner.legs.into_iter();
        for (i, &l) in lengths.iter().enumerate() {
            let r = l - reduced[i];
            let mut leg = p[at..at + r].to_vec();
            at += r;
            if reduced[i] > 0 {
                leg.extend(inner_legs.next().unwrap());
            }
            legs.push(leg);
        }
        DirectedSpider {
            root: inner.root,
            out: inner.out,
            legs,
        }
    };
    spider.validate(d, lengths)?;
    Ok(spider)
}

// Shrinks the longest entries (first index on ties) by `by` in total.
fn reduce_lengths(lengths: &[usize], by: usize) -> Vec<usize> {
    let mut out = lengths.to_vec();
    for _ in 0..by {
        let max = *out.iter().max().unwrap();
        let i = out.iter().position(|&x| x == max).unwrap();
        out[i] -= 1;
    }
    out
}

fn spider_in_sink(d: &McfTournament, d0: &[usize], lp: &[usize], exec: Exec) -> Result<DirectedSpider> {
    let k1 = lp.len();
    let total: usize = lp.iter().sum();
    let v = *d0
        .iter()
        .min_by_key(|&&x| (d.out_degree(x), x))
        .expect("sink component is non-empty");
    let a: Vec<usize> = d0.iter().copied().filter(|&x| d.has_arc(v, x)).collect();
    let b: Vec<usize> = d0.iter().copied().filter(|&x| d.has_arc(x, v)).collect();
    if a.len() < 2 {
        return Err(Error::construction("tstar/sink", format!("root {v} has fewer than two out-neighbors")));
    }
    if b.len() >= total {
        let mut p = vec![v];
        for &x in &b {
            p = extend_directed_path(d, &p, x)?;
        }
        let mut legs = Vec::new();
        let mut at = 0;
        for &l in lp {
            legs.push(p[at..at + l].to_vec());
            at += l;
        }
        return Ok(DirectedSpider {
            root: v,
            out: (a[0], a[1]),
            legs,
        });
    }

    let mut a_prime = a.clone();
    let pairs: Vec<usize> = a
        .iter()
        .copied()
        .filter(|&x| d.partner(x).is_some_and(|y| y > x && a.contains(&y)))
        .collect();
    if pairs.len() == 1 {
        a_prime.retain(|&x| x != pairs[0]);
    }
    let q = scc_order(d, &a_prime);
    let sizes: Vec<usize> = q.components.iter().map(Vec::len).collect();
    let mut j = 0;
    let mut prefix = sizes[0];
    while prefix < k1 && j + 1 < sizes.len() {
        j += 1;
        prefix += sizes[j];
    }
    if prefix < k1 {
        return Err(Error::construction("tstar/two-cases", "out-neighborhood of the root is too small"));
    }
    let suffix = a_prime.len() - prefix;
    let caps: Vec<usize> = lp.iter().map(|&l| l.saturating_sub(1).max(1)).collect();
    let (chunks, w) = if suffix >= k1 {
        let front: Vec<usize> = q.components[..=j].iter().flatten().copied().collect();
        let p = hamilton_path(d, &front)?;
        let sizes = chunk_sizes(&caps, p.len());
        let mut chunks = Vec::new();
        let mut at = 0;
        for s in sizes {
            chunks.push(p[at..at + s].to_vec());
            at += s;
        }
        let w: Vec<usize> = q.components[j + 1..].iter().flatten().copied().collect();
        (chunks, w)
    } else {
        let giant = &q.components[j];
        if giant.len() < 3 {
            return Err(Error::construction("tstar/case2/giant", "largest component is too small"));
        }
        let cycle = hamilton_cycle_strong(d, giant)?;
        let h = cycle.len();
        if h < k1 {
            return Err(Error::construction("tstar/case2/giant", "cycle shorter than the leg count"));
        }
        let sizes = chunk_sizes(&caps, h);
        let ends: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, &s| {
                *acc += s;
                Some(*acc - 1)
            })
            .collect();
        let good = |r: usize| {
            ends.iter()
                .all(|&e| d.out_degree_into(cycle[(r + e) % h], &b) >= k1)
                .then_some(r)
        };
        let r = find_map_first(exec, h, good)
            .ok_or_else(|| Error::construction("tstar/case2/model", "no rotation has all endpoints into B"))?;
        let mut chunks = Vec::new();
        let mut at = r;
        for s in sizes {
            chunks.push((0..s).map(|t| cycle[(at + t) % h]).collect());
            at += s;
        }
        (chunks, Vec::new())
    };
    merge_legs(d, v, &a, &b, &w, chunks, lp)
}

// At least one per leg, then fill up to the caps in index order.
fn chunk_sizes(caps: &[usize], available: usize) -> Vec<usize> {
    let cap_total: usize = caps.iter().sum();
    if available >= cap_total {
        return caps.to_vec();
    }
    let mut sizes = vec![1; caps.len()];
    let mut left = available - caps.len();
    for (s, &c) in sizes.iter_mut().zip(caps) {
        let add = (c - 1).min(left);
        *s += add;
        left -= add;
    }
    sizes
}

fn merge_legs(
    d: &McfTournament,
    v: usize,
    a: &[usize],
    b: &[usize],
    w: &[usize],
    chunks: Vec<Vec<usize>>,
    lp: &[usize],
) -> Result<DirectedSpider> {
    let mut used_b = Vec::new();
    let mut legs = Vec::new();
    for chunk in &chunks {
        let end = *chunk.last().unwrap();
        let bi = b
            .iter()
            .copied()
            .find(|&x| d.has_arc(end, x) && !used_b.contains(&x))
            .ok_or_else(|| Error::construction("tstar/merge/matching", format!("no free in-neighbor of the root after {end}")))?;
        used_b.push(bi);
        let mut leg = chunk.clone();
        leg.push(bi);
        leg.push(v);
        legs.push(leg);
    }
    let mut pool = b
        .iter()
        .copied()
        .filter(|x| !used_b.contains(x))
        .chain(w.iter().copied());
    for (leg, &l) in legs.iter_mut().zip(lp) {
        let q = l.max(2);
        while leg.len() - 1 < q {
            let x = pool
                .next()
                .ok_or_else(|| Error::construction("tstar/merge/extend", "ran out of vertices to extend legs"))?;
            *leg = extend_directed_path(d, leg, x)?;
        }
        debug_assert!(is_directed_path(d, leg));
    }
    let mut out_legs = Vec::new();
    let mut used = vec![false; d.order()];
    used[v] = true;
    for (leg, &l) in legs.iter().zip(lp) {
        let body = &leg[..leg.len() - 1];
        let kept = body[body.len() - l..].to_vec();
        for &x in &kept {
            used[x] = true;
        }
        out_legs.push(kept);
    }
    let free: Vec<usize> = a.iter().copied().filter(|&x| !used[x]).take(2).collect();
    if free.len() < 2 {
        return Err(Error::construction("tstar/merge/out-arcs", "no two unused out-neighbors of the root"));
    }
    Ok(DirectedSpider {
        root: v,
        out: (free[0], free[1]),
        legs: out_legs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circulant(n: usize, steps: &[usize]) -> McfTournament {
        let arcs = (0..n).flat_map(|i| steps.iter().map(move |&s| (i, (i + s) % n)));
        McfTournament::tournament(Digraph::from_arcs(n, arcs).unwrap()).unwrap()
    }

    fn transitive(n: usize) -> McfTournament {
        let arcs = (0..n).flat_map(|i| (0..i).map(move |j| (i, j)));
        McfTournament::tournament(Digraph::from_arcs(n, arcs).unwrap()).unwrap()
    }

    fn four_cycle() -> (Digraph, Vec<Vec<usize>>) {
        // x=0 -> a=1 -> y=2 -> b=3 -> x
        let d = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        (d, vec![vec![0, 2], vec![1, 3]])
    }

    #[test]
    fn validation() {
        let (d, parts) = four_cycle();
        assert_eq!(validate_mcf(&d, &parts), Ok(()));
        assert!(validate_mcf(&transitive(5).digraph, &(0..5).map(|v| vec![v]).collect::<Vec<_>>()).is_ok());
        let d = Digraph::from_arcs(3, [(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            validate_mcf(&d, &[vec![0, 1], vec![2]]),
            Err(McfViolation::CommonOutNeighbor { x: 0, y: 1, z: 2 })
        );
        let d = Digraph::from_arcs(3, [(0, 1)]).unwrap();
        assert!(matches!(
            validate_mcf(&d, &[vec![0], vec![1], vec![2]]),
            Err(McfViolation::MissingArc { .. })
        ));
    }

    #[test]
    fn scc_examples() {
        let t = transitive(4);
        let o = scc_order(&t, &[0, 1, 2, 3]);
        assert_eq!(o.components, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!((1..4).all(|j| (0..j).all(|i| o.full(j, i))));
        assert_eq!(scc_order(&circulant(5, &[1, 2]), &[0, 1, 2, 3, 4]).len(), 1);

        let (mut d4, mut parts) = four_cycle();
        let mut d = Digraph::new(5);
        for (u, v) in d4.arcs() {
            d.add_arc(u, v);
        }
        for u in 0..4 {
            d.add_arc(u, 4);
        }
        d4 = d;
        parts.push(vec![4]);
        // 0 and 2 both point to 4, so this is not mcf; check the sink side instead.
        assert!(validate_mcf(&d4, &parts).is_err());
        let mut d = Digraph::new(5);
        for (u, v) in four_cycle().0.arcs() {
            d.add_arc(u, v);
        }
        for u in 0..4 {
            d.add_arc(4, u);
        }
        let m = McfTournament::new(d, &parts).unwrap();
        let o = scc_order(&m, &[0, 1, 2, 3, 4]);
        assert_eq!(o.components, vec![vec![0, 1, 2, 3], vec![4]]);
        assert!(o.full(1, 0));
    }

    #[test]
    fn cycles() {
        let tri = circulant(3, &[1]);
        assert_eq!(hamilton_cycle_strong(&tri, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        let (d, parts) = four_cycle();
        let m = McfTournament::new(d, &parts).unwrap();
        assert_eq!(hamilton_cycle_strong(&m, &[0, 1, 2, 3]).unwrap(), vec![0, 1, 2, 3]);
        let c7 = circulant(7, &[1, 2, 4]);
        let c = hamilton_cycle_strong(&c7, &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(c.len(), 7);
        assert!((0..7).all(|i| c7.has_arc(c[i], c[(i + 1) % 7])));
        assert!(hamilton_cycle_strong(&transitive(4), &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn paths() {
        let t = transitive(6);
        assert_eq!(hamilton_path(&t, &(0..6).collect::<Vec<_>>()).unwrap(), vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(hamilton_path(&t, &[3]).unwrap(), vec![3]);
    }

    #[test]
    fn path_extension() {
        let t = transitive(3);
        // 2 -> 1 -> 0 is a path; 0 is the sink so nothing extends at the front.
        assert_eq!(extend_directed_path(&t, &[1, 0], 2).unwrap(), vec![2, 1, 0]);
        let c = circulant(3, &[1]);
        // p = 0 1, v = 2 points only to 0, which is p[0], so prepend.
        assert_eq!(extend_directed_path(&c, &[0, 1], 2).unwrap(), vec![2, 0, 1]);
        // p = 2 0 with v = 1: 1 -> 2 so prepend; and v -> last only case:
        let t4 = transitive(4);
        // 3 -> 1 -> 0 with v = 2: 2 -> 1 first, 3 -> 2 holds.
        assert_eq!(extend_directed_path(&t4, &[3, 1, 0], 2).unwrap(), vec![3, 2, 1, 0]);
        assert!(extend_directed_path(&t4, &[2, 1], 0).is_err());
    }

    #[test]
    fn tstar_on_circulant() {
        let d = circulant(19, &(1..=9).collect::<Vec<_>>());
        let s = embed_tstar(&d, &[1]).unwrap();
        assert_eq!(s.vertex_count(), 4);
        s.validate(&d, &[1]).unwrap();
        let err = embed_tstar(&transitive(30), &[1]).unwrap_err();
        assert!(err.to_string().contains("vertex 0"));
    }

    #[test]
    fn reduce_is_greedy() {
        assert_eq!(reduce_lengths(&[5, 3, 3], 3), vec![2, 3, 3]);
        assert_eq!(chunk_sizes(&[4, 2, 1], 5), vec![3, 1, 1]);
        assert_eq!(chunk_sizes(&[4, 2, 1], 9), vec![4, 2, 1]);
    }
}
