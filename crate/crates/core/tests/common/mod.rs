//! Independent certificate checks, written without the library's validators.
#![allow(dead_code)]

use std::collections::HashMap;

use pctree::{ColorQuery, EdgeColoredGraph, PcTree};

/// True when the edges form a spanning tree of `K_n` and no two edges at a
/// vertex share a color.
pub fn is_spanning_pc_tree(g: &EdgeColoredGraph, edges: &[(usize, usize)]) -> bool {
    let n = g.n();
    if edges.len() + 1 != n {
        return false;
    }
    let mut root: Vec<usize> = (0..n).collect();
    fn find(r: &mut [usize], x: usize) -> usize {
        if r[x] == x {
            x
        } else {
            let top = find(r, r[x]);
            r[x] = top;
            top
        }
    }
    let mut seen: HashMap<(usize, u32), usize> = HashMap::new();
    for &(u, v) in edges {
        if u >= n || v >= n || u == v {
            return false;
        }
        let (a, b) = (find(&mut root, u), find(&mut root, v));
        if a == b {
            return false;
        }
        root[a] = b;
        let c = g.color(u, v);
        for w in [u, v] {
            if seen.insert((w, c), 0).is_some() {
                return false;
            }
        }
    }
    true
}

/// Leg lengths of a spider rooted at `center`, sorted descending, or `None`
/// if some vertex other than the center branches.
pub fn leg_lengths(n: usize, edges: &[(usize, usize)], center: usize) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut legs = Vec::new();
    for &first in &adj[center] {
        let (mut prev, mut cur, mut len) = (center, first, 1);
        loop {
            let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
            match next.as_slice() {
                [] => break,
                [w] => {
                    prev = cur;
                    cur = *w;
                    len += 1;
                }
                _ => return None,
            }
        }
        legs.push(len);
    }
    legs.sort_unstable_by(|a, b| b.cmp(a));
    Some(legs)
}

/// Full independent check of a spider certificate. With one or two legs any
/// vertex of the path may serve as center, so the path case is matched on
/// length alone.
pub fn check_spider(g: &EdgeColoredGraph, t: &PcTree, legs: &[usize]) -> Result<(), String> {
    let edges = t.edges();
    if !is_spanning_pc_tree(g, &edges) {
        return Err("not a spanning PC tree".into());
    }
    let mut want = legs.to_vec();
    want.sort_unstable_by(|a, b| b.cmp(a));
    if want.len() <= 2 {
        let mut deg = vec![0; g.n()];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        return if deg.iter().all(|&d| d <= 2) {
            Ok(())
        } else {
            Err("not a path".into())
        };
    }
    match leg_lengths(g.n(), &edges, t.root()) {
        Some(got) if got == want => Ok(()),
        other => Err(format!("legs {other:?}, wanted {want:?}")),
    }
}

/// Random leg partitions of `total` into `k` positive parts.
pub fn random_legs(total: usize, k: usize, seed: u64) -> Vec<usize> {
    // Simple LCG so the oracle does not share the library's RNG path.
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() < k - 1 {
        let c = 1 + next() % (total - 1);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut legs = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        legs.push(c - prev);
        prev = c;
    }
    legs.sort_unstable_by(|a, b| b.cmp(a));
    legs
}
