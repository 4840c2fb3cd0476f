//! Generators of colorings without monochromatic triangles and of the
//! matching tournaments. All randomness is ChaCha8 seeded from a `u64`, so a
//! spec and seed always give the same output on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_monochromatic_triangle, EdgeColoredGraph};
use crate::tournament::{Digraph, McfTournament};

const RESTARTS: usize = 10_000;

/// `col(uv) = min(u, v)`: every edge takes the label of its smaller end.
pub fn transitive_coloring(n: usize) -> Result<EdgeColoredGraph> {
    EdgeColoredGraph::from_fn(n, |u, v| u.min(v) as u64)
}

/// Colors each edge by the label of its tail: `col(uv) = f(u)` when
/// `forward(u, v)`, else `f(v)`. Rejects the result if it has a
/// monochromatic triangle.
pub fn degenerate_coloring(n: usize, f: &[u64], forward: impl Fn(usize, usize) -> bool) -> Result<EdgeColoredGraph> {
    if f.len() != n {
        return Err(Error::precondition(format!("label map has {} entries for {n} vertices", f.len())));
    }
    let g = EdgeColoredGraph::from_fn(n, |u, v| if forward(u, v) { f[u] } else { f[v] })?;
    match find_monochromatic_triangle(&g) {
        Some(t) => Err(Error::MonochromaticTriangle(t)),
        None => Ok(g),
    }
}

/// A uniformly random vertex ranking; orienting `u -> v` when
/// `rank[u] < rank[v]` gives an acyclic orientation.
pub fn random_ranking(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    rank
}

/// Colors edges one at a time in random order, each uniformly from the
/// palette colors that close no monochromatic triangle.
///
/// A stuck edge triggers a restart with the same generator stream; after a
/// few restarts a stuck edge takes a fresh color beyond the palette, so the
/// palette is a soft bound when it is too small for `n`.
pub fn random_mono_c3_free(n: usize, palette: usize, seed: u64) -> Result<EdgeColoredGraph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n >= 3 && palette < 2 {
        return Err(Error::precondition("a palette of at least two colors is needed for n >= 3"));
    }
    const SOFT_AFTER: usize = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for attempt in 0.. {
        pairs.shuffle(&mut rng);
        if let Some(col) = try_color(n, palette, &pairs, &mut rng, attempt >= SOFT_AFTER) {
            let g = EdgeColoredGraph::from_fn(n, |u, v| col[u * n + v] as u64)?;
            debug_assert!(find_monochromatic_triangle(&g).is_none());
            return Ok(g);
        }
    }
    unreachable!()
}

fn try_color(n: usize, palette: usize, pairs: &[(usize, usize)], rng: &mut ChaCha8Rng, soft: bool) -> Option<Vec<usize>> {
    let words = n.div_ceil(64);
    // nbr[(v * colors + c) * words ..] is the set of c-neighbors of v.
    let mut colors = palette.max(1);
    let mut nbr = vec![0u64; n * colors * words];
    let mut col = vec![usize::MAX; n * n];
    let mut allowed = Vec::with_capacity(palette);
    for &(u, v) in pairs {
        allowed.clear();
        for c in 0..colors {
            let a = &nbr[(u * colors + c) * words..][..words];
            let b = &nbr[(v * colors + c) * words..][..words];
            if a.iter().zip(b).all(|(x, y)| x & y == 0) {
                allowed.push(c);
            }
        }
        let c = if allowed.is_empty() {
            if !soft {
                return None;
            }
            // Widen every vertex's table by one fresh color.
            let grown = colors + 1;
            let mut wide = vec![0u64; n * grown * words];
            for w in 0..n {
                for c in 0..colors {
                    wide[(w * grown + c) * words..][..words]
                        .copy_from_slice(&nbr[(w * colors + c) * words..][..words]);
                }
            }
            nbr = wide;
            colors = grown;
            colors - 1
        } else {
            allowed[rng.random_range(0..allowed.len())]
        };
        col[u * n + v] = c;
        col[v * n + u] = c;
        nbr[(u * colors + c) * words + v / 64] |= 1 << (v % 64);
        nbr[(v * colors + c) * words + u / 64] |= 1 << (u % 64);
    }
    Some(col)
}

/// A random tournament-like digraph whose parts have at most two vertices
/// and whose paired vertices share no out-neighbor.
///
/// Each vertex starts a pair with the next one in a shuffled order with
/// probability `pair_density`. Arcs are drawn block by block among the
/// valid options only, and the whole draw is repeated until every
/// out-degree reaches `min_outdeg`.
pub fn random_mcf_tournament(n: usize, pair_density: f64, min_outdeg: usize, seed: u64) -> Result<McfTournament> {
    if !(0.0..=1.0).contains(&pair_density) {
        return Err(Error::precondition("pair density must lie in [0, 1]"));
    }
    if n > 0 && min_outdeg > n.saturating_sub(2) && min_outdeg > 0 {
        return Err(Error::precondition(format!(
            "out-degree {min_outdeg} is impossible on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESTARTS {
        let d = sample_mcf(n, pair_density, &mut rng);
        if (0..n).all(|v| d.out_degree(v) >= min_outdeg) {
            return Ok(d);
        }
    }
    Err(Error::Limit(format!("no sample reached out-degree {min_outdeg} in {RESTARTS} draws")))
}

fn sample_mcf(n: usize, pair_density: f64, rng: &mut ChaCha8Rng) -> McfTournament {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && rng.random_bool(pair_density) {
            let (a, b) = (order[i].min(order[i + 1]), order[i].max(order[i + 1]));
            parts.push(vec![a, b]);
            i += 2;
        } else {
            parts.push(vec![order[i]]);
            i += 1;
        }
    }
    parts.sort();
    let mut d = Digraph::new(n);
    for (pi, p) in parts.iter().enumerate() {
        for q in &parts[pi + 1..] {
            orient_block(&mut d, p, q, rng);
        }
    }
    McfTournament::new(d, &parts).expect("blocks are drawn from valid options")
}

fn orient_block(d: &mut Digraph, p: &[usize], q: &[usize], rng: &mut ChaCha8Rng) {
    match (p, q) {
        (&[x], &[z]) => {
            if rng.random_bool(0.5) {
                d.add_arc(x, z)
            } else {
                d.add_arc(z, x)
            }
        }
        (&[x, y], &[z]) | (&[z], &[x, y]) => match rng.random_range(0..3) {
            0 => {
                d.add_arc(z, x);
                d.add_arc(z, y);
            }
            1 => {
                d.add_arc(x, z);
                d.add_arc(z, y);
            }
            _ => {
                d.add_arc(z, x);
                d.add_arc(y, z);
            }
        },
        (&[x, y], &[a, b]) => {
            // Two pairs always span an alternating 4-cycle.
            let cycle = if rng.random_bool(0.5) { [x, a, y, b] } else { [x, b, y, a] };
            for i in 0..4 {
                d.add_arc(cycle[i], cycle[(i + 1) % 4]);
            }
        }
        _ => unreachable!("parts have one or two vertices"),
    }
}

/// The coloring of a tournament where an arc takes the part id of its tail
/// and a pair's own edge takes the pair's id.
pub fn coloring_from_tournament(d: &McfTournament) -> Result<EdgeColoredGraph> {
    let n = d.order();
    let mut part_of = vec![0u64; n];
    for (i, p) in d.parts().iter().enumerate() {
        for &v in p {
            part_of[v] = i as u64;
        }
    }
    let g = EdgeColoredGraph::from_fn(n, |u, v| {
        if d.has_arc(u, v) || d.partner(u) == Some(v) {
            part_of[u]
        } else {
            part_of[v]
        }
    })?;
    match find_monochromatic_triangle(&g) {
        Some(t) => Err(Error::MonochromaticTriangle(t)),
        None => Ok(g),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GeneratorKind {
    Transitive,
    /// Tail-labeled coloring of a random tournament from [`random_mcf_tournament`].
    Degenerate { pair_density: f64, min_outdeg: usize },
    Random { palette: usize },
    Tournament { pair_density: f64, min_outdeg: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Coloring(EdgeColoredGraph),
    Tournament(McfTournament),
}

pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    if spec.n == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(match spec.kind {
        GeneratorKind::Transitive => Generated::Coloring(transitive_coloring(spec.n)?),
        GeneratorKind::Degenerate {
            pair_density,
            min_outdeg,
        } => {
            let d = random_mcf_tournament(spec.n, pair_density, min_outdeg, spec.seed)?;
            Generated::Coloring(coloring_from_tournament(&d)?)
        }
        GeneratorKind::Random { palette } => Generated::Coloring(random_mono_c3_free(spec.n, palette, spec.seed)?),
        GeneratorKind::Tournament {
            pair_density,
            min_outdeg,
        } => Generated::Tournament(random_mcf_tournament(spec.n, pair_density, min_outdeg, spec.seed)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColorQuery;
    use crate::tournament::validate_mcf;

    #[test]
    fn transitive_examples() {
        let g = transitive_coloring(3).unwrap();
        assert_eq!((g.color(0, 1), g.color(0, 2), g.color(1, 2)), (0, 0, 1));
        assert_eq!(transitive_coloring(1).unwrap().n(), 1);
        for n in [2, 10, 50] {
            assert!(find_monochromatic_triangle(&transitive_coloring(n).unwrap()).is_none());
        }
    }

    #[test]
    fn degenerate_examples() {
        let f: Vec<u64> = (0..8).collect();
        let g = degenerate_coloring(8, &f, |u, v| u < v).unwrap();
        assert_eq!(g, transitive_coloring(8).unwrap());
        assert!(matches!(
            degenerate_coloring(3, &[7, 7, 7], |u, v| u < v),
            Err(Error::MonochromaticTriangle(_))
        ));
        let rank = random_ranking(10, 3);
        let f: Vec<u64> = (0..10).map(|v| 100 + v).collect();
        assert!(degenerate_coloring(10, &f, |u, v| rank[u] < rank[v]).is_ok());
    }

    #[test]
    fn random_colorings() {
        for seed in 0..20 {
            let g = random_mono_c3_free(3, 2, seed).unwrap();
            assert!(find_monochromatic_triangle(&g).is_none());
        }
        let a = random_mono_c3_free(200, 8, 42).unwrap();
        assert!(find_monochromatic_triangle(&a).is_none());
        assert_eq!(a, random_mono_c3_free(200, 8, 42).unwrap());
        // Six vertices cannot be 2-colored without a monochromatic triangle.
        let g = random_mono_c3_free(6, 2, 1).unwrap();
        assert!(g.palette_size() > 2);
    }

    #[test]
    fn random_tournaments() {
        let t = random_mcf_tournament(12, 0.0, 0, 5).unwrap();
        assert!(t.parts().iter().all(|p| p.len() == 1));
        let t = random_mcf_tournament(4, 1.0, 0, 9).unwrap();
        assert_eq!(t.parts().len(), 2);
        assert_eq!(t.digraph().arcs().len(), 4);
        assert!((0..4).all(|v| t.out_degree(v) == 1));
        let t = random_mcf_tournament(30, 0.5, 2, 11).unwrap();
        assert!(validate_mcf(t.digraph(), &t.parts()).is_ok());
        assert!((0..30).all(|v| t.out_degree(v) >= 2));
        assert_eq!(t, random_mcf_tournament(30, 0.5, 2, 11).unwrap());
        assert!(random_mcf_tournament(5, 0.5, 4, 0).is_err());
    }

    #[test]
    fn tournament_colorings_are_clean() {
        for seed in 0..10 {
            let t = random_mcf_tournament(25, 0.6, 1, seed).unwrap();
            let g = coloring_from_tournament(&t).unwrap();
            assert!(find_monochromatic_triangle(&g).is_none());
        }
    }
}
