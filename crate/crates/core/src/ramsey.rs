//! Rainbow stars and the largest complete graph colorable with neither a
//! rainbow `k`-star nor a monochromatic triangle.
//!
//! That largest order, written `g(k)` here, is searched exhaustively over
//! edge colorings up to renaming of colors. Exact values are only reported
//! when the next order was refuted completely.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{color_classes, Color, ColorQuery, EdgeColoredGraph};
use crate::par::{find_map_first, Exec};

/// `k` edges of distinct colors at one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowStar {
    pub center: usize,
    pub leaves: Vec<usize>,
}

/// The first vertex with at least `k` colors, with the smallest neighbor of
/// each of its `k` smallest colors. `None` iff every color degree is below `k`.
pub fn find_rainbow_star<C: ColorQuery + ?Sized>(g: &C, k: usize) -> Option<RainbowStar> {
    (0..g.order()).find_map(|v| {
        let classes = color_classes(g, v);
        (classes.len() >= k).then(|| RainbowStar {
            center: v,
            leaves: classes.iter().take(k).map(|(_, ws)| ws[0]).collect(),
        })
    })
}

/// `(k + 1)!`, saturating.
pub fn factorial_bound(k: usize) -> usize {
    (2..=k + 1).fold(1usize, |acc, i| acc.saturating_mul(i))
}

/// Values of `g(k)` established by [`compute_g`] and kept as regression data.
pub fn known_g(k: usize) -> Option<usize> {
    match k {
        1 => Some(1),
        2 => Some(2),
        3 => Some(5),
        _ => None,
    }
}

/// The best usable upper value of `g(k)`: the known value or `(k+1)! - 1`.
pub fn g_upper(k: usize) -> usize {
    known_g(k).unwrap_or_else(|| factorial_bound(k) - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GValue {
    Exact(usize),
    /// The search stopped early; the value lies in `lower..=upper`.
    Bracket { lower: usize, upper: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyResult {
    pub k: usize,
    pub value: GValue,
    /// A valid coloring on `lower` (or the exact value) vertices.
    pub witness: EdgeColoredGraph,
    /// Whether the order one above the value was refuted completely.
    pub exhausted: bool,
    pub stats: SearchStats,
}

/// Limits for [`compute_g`]. `max_nodes` is deterministic; `max_time` is not.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

/// Whether `value` respects the `(k+1)!` bound. Brackets never do.
pub fn check_bound(k: usize, result: &RamseyResult) -> bool {
    match result.value {
        GValue::Exact(v) => v < factorial_bound(k),
        GValue::Bracket { .. } => false,
    }
}

enum Outcome {
    Found(Vec<Color>),
    Refuted,
    OutOfBudget,
}

/// Searches orders `1, 2, ...` up to `n_cap` for a coloring with every
/// color degree below `k` and no monochromatic triangle.
pub fn compute_g(k: usize, n_cap: usize, budget: SearchBudget, exec: Exec) -> Result<RamseyResult> {
    if k == 0 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if n_cap == 0 {
        return Err(Error::precondition("n_cap must be at least 1"));
    }
    let start = Instant::now();
    let shared = Shared {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        budget,
        start,
    };
    let upper_bound = factorial_bound(k) - 1;
    let mut witness = EdgeColoredGraph::from_fn(1, |_, _| 0)?;
    let mut best = 1;
    for n in 2..=n_cap + 1 {
        let outcome = if n > n_cap { None } else { Some(feasible(n, k, &shared, exec)) };
        let stats = SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            elapsed: start.elapsed(),
        };
        match outcome {
            Some(Outcome::Found(col)) => {
                witness = EdgeColoredGraph::from_fn(n, |u, v| col[u * n + v] as u64)?;
                best = n;
            }
            Some(Outcome::Refuted) => {
                return Ok(RamseyResult {
                    k,
                    value: GValue::Exact(best),
                    witness,
                    exhausted: true,
                    stats,
                })
            }
            Some(Outcome::OutOfBudget) | None => {
                return Ok(RamseyResult {
                    k,
                    value: GValue::Bracket {
                        lower: best,
                        upper: upper_bound.max(best),
                    },
                    witness,
                    exhausted: false,
                    stats,
                })
            }
        }
    }
    unreachable!("the loop returns once n exceeds n_cap")
}

struct Shared {
    nodes: AtomicU64,
    stop: AtomicBool,
    budget: SearchBudget,
    start: Instant,
}

impl Shared {
    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local % 1024 != 0 {
            return !self.stop.load(Ordering::Relaxed);
        }
        let total = self.nodes.fetch_add(1024, Ordering::Relaxed) + 1024;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| total > m);
        let over_time = self.budget.max_time.is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn flush(&self, local: u64) {
        self.nodes.fetch_add(local % 1024, Ordering::Relaxed);
    }
}

const UNSET: Color = Color::MAX;
const SPLIT_DEPTH: usize = 10;

/// Partial coloring of `K_n` filled in column order: `(0,1), (0,2), (1,2), (0,3), ...`.
struct Search {
    n: usize,
    k: usize,
    edges: Vec<(usize, usize)>,
    col: Vec<Color>,
    // Per vertex: (color, multiplicity) for the colors seen so far.
    seen: Vec<Vec<(Color, u32)>>,
    used: Color,
}

impl Search {
    fn new(n: usize, k: usize) -> Self {
        let edges = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        Search {
            n,
            k,
            edges,
            col: vec![UNSET; n * n],
            seen: vec![Vec::new(); n],
            used: 0,
        }
    }

    fn get(&self, u: usize, v: usize) -> Color {
        self.col[u * self.n + v]
    }

    /// Candidate colors for edge `idx` in ascending order.
    fn candidates(&self, idx: usize) -> std::ops::RangeInclusive<Color> {
        match idx {
            0 => 0..=0,
            1 => 0..=1,
            // The first triangle is either 0,0,1 or rainbow.
            2 if self.get(0, 2) == 0 => 1..=1,
            2 => 2..=2,
            _ => 0..=self.used,
        }
    }

    fn fits(&self, idx: usize, c: Color) -> bool {
        let (u, v) = self.edges[idx];
        if (0..u).any(|x| self.get(x, u) == c && self.get(x, v) == c) {
            return false;
        }
        [u, v]
            .iter()
            .all(|&w| self.seen[w].len() < self.k - 1 || self.seen[w].iter().any(|&(s, _)| s == c))
    }

    fn assign(&mut self, idx: usize, c: Color) -> Color {
        let (u, v) = self.edges[idx];
        self.col[u * self.n + v] = c;
        self.col[v * self.n + u] = c;
        for w in [u, v] {
            match self.seen[w].iter_mut().find(|(s, _)| *s == c) {
                Some(entry) => entry.1 += 1,
                None => self.seen[w].push((c, 1)),
            }
        }
        let prev = self.used;
        if c == self.used {
            self.used += 1;
        }
        prev
    }

    fn unassign(&mut self, idx: usize, prev_used: Color) {
        let (u, v) = self.edges[idx];
        let c = self.get(u, v);
        self.col[u * self.n + v] = UNSET;
        self.col[v * self.n + u] = UNSET;
        for w in [u, v] {
            let pos = self.seen[w].iter().position(|(s, _)| *s == c).unwrap();
            self.seen[w][pos].1 -= 1;
            if self.seen[w][pos].1 == 0 {
                self.seen[w].remove(pos);
            }
        }
        self.used = prev_used;
    }

    fn dfs(&mut self, idx: usize, shared: &Shared, local: &mut u64) -> Outcome {
        if idx == self.edges.len() {
            return Outcome::Found(self.col.clone());
        }
        if !shared.tick(local) {
            return Outcome::OutOfBudget;
        }
        for c in self.candidates(idx) {
            if !self.fits(idx, c) {
                continue;
            }
            let prev = self.assign(idx, c);
            let out = self.dfs(idx + 1, shared, local);
            self.unassign(idx, prev);
            if !matches!(out, Outcome::Refuted) {
                return out;
            }
        }
        Outcome::Refuted
    }

    fn prefixes(&mut self, idx: usize, depth: usize, acc: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if idx == depth {
            out.push(acc.clone());
            return;
        }
        for c in self.candidates(idx) {
            if self.fits(idx, c) {
                let prev = self.assign(idx, c);
                acc.push(c);
                self.prefixes(idx + 1, depth, acc, out);
                acc.pop();
                self.unassign(idx, prev);
            }
        }
    }
}

fn feasible(n: usize, k: usize, shared: &Shared, exec: Exec) -> Outcome {
    let mut root = Search::new(n, k);
    let depth = SPLIT_DEPTH.min(root.edges.len());
    let mut prefixes = Vec::new();
    root.prefixes(0, depth, &mut Vec::new(), &mut prefixes);
    let result = find_map_first(exec, prefixes.len(), |i| {
        let mut s = Search::new(n, k);
        for (idx, &c) in prefixes[i].iter().enumerate() {
            s.assign(idx, c);
        }
        let mut local = 0;
        let out = s.dfs(depth, shared, &mut local);
        shared.flush(local);
        match out {
            Outcome::Refuted => None,
            other => Some(other),
        }
    });
    result.unwrap_or(Outcome::Refuted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{color_degree, find_monochromatic_triangle};

    fn run(k: usize, exec: Exec) -> RamseyResult {
        compute_g(k, 12, SearchBudget::default(), exec).unwrap()
    }

    #[test]
    fn small_values() {
        for k in 1..=3 {
            let r = run(k, Exec::Sequential);
            assert_eq!(r.value, GValue::Exact(known_g(k).unwrap()), "k = {k}");
            assert!(r.exhausted);
            assert!(check_bound(k, &r));
            let w = &r.witness;
            assert!(find_monochromatic_triangle(w).is_none());
            assert!(find_rainbow_star(w, k).is_none());
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = run(3, Exec::Sequential);
        let b = run(3, Exec::Parallel);
        assert_eq!((a.value, &a.witness, a.exhausted), (b.value, &b.witness, b.exhausted));
    }

    #[test]
    fn budget_gives_bracket() {
        let r = compute_g(
            4,
            30,
            SearchBudget {
                max_nodes: Some(5_000),
                max_time: None,
            },
            Exec::Sequential,
        )
        .unwrap();
        match r.value {
            GValue::Bracket { lower, upper } => {
                assert!(lower >= 5 && upper == 119);
            }
            GValue::Exact(_) => panic!("budget should stop the search"),
        }
        assert!(!check_bound(4, &r));
    }

    #[test]
    fn rainbow_stars() {
        let rainbow = EdgeColoredGraph::from_fn(4, |u, v| (u * 4 + v) as u64).unwrap();
        let s = find_rainbow_star(&rainbow, 3).unwrap();
        assert_eq!(s, RainbowStar { center: 0, leaves: vec![1, 2, 3] });
        let pentagon = EdgeColoredGraph::from_fn(5, |u, v| u64::from((v - u) % 5 == 1 || (v - u) % 5 == 4)).unwrap();
        assert!(find_rainbow_star(&pentagon, 3).is_none());
        assert!((0..5).all(|v| color_degree(&pentagon, v) == 2));
        let edge = EdgeColoredGraph::from_fn(2, |_, _| 9).unwrap();
        assert!(find_rainbow_star(&edge, 1).is_some());
    }
}
