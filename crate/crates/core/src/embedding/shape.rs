//! Structural checks: is a host tree a spider with given legs, or a
//! subdivision of a given pattern?

use serde::{Deserialize, Serialize};

use crate::tree::{adjacency, PcTree, SpiderSpec, TreePattern, TreeShape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeTarget {
    Spider(SpiderSpec),
    Subdivision(TreePattern),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeVerdict {
    pub ok: bool,
    pub violation: Option<String>,
}

impl ShapeVerdict {
    fn pass() -> Self {
        ShapeVerdict {
            ok: true,
            violation: None,
        }
    }

    fn fail(msg: impl Into<String>) -> Self {
        ShapeVerdict {
            ok: false,
            violation: Some(msg.into()),
        }
    }
}

/// Checks the tree's edges against `target`, and its stored shape data
/// against its edges.
pub fn verify_shape(tree: &PcTree, target: &ShapeTarget) -> ShapeVerdict {
    let edges = tree.edges();
    if let Some(msg) = metadata_mismatch(tree, &edges) {
        return ShapeVerdict::fail(msg);
    }
    match target {
        ShapeTarget::Spider(spec) => match check_spider(tree.host_order(), &edges, spec) {
            Ok(()) => ShapeVerdict::pass(),
            Err(msg) => ShapeVerdict::fail(msg),
        },
        ShapeTarget::Subdivision(pattern) => match find_homeomorphism(tree.host_order(), &edges, pattern) {
            Some(_) => ShapeVerdict::pass(),
            None => ShapeVerdict::fail("tree does not contract to the pattern"),
        },
    }
}

/// Checks that the tree is a spider with exactly the legs of `spec`.
/// With one or two legs the tree must be a path of the right length.
pub(crate) fn check_spider(n: usize, edges: &[(usize, usize)], spec: &SpiderSpec) -> Result<(), String> {
    let adj = adjacency(n, edges.iter().copied());
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let k = spec.k();
    if k <= 2 {
        if let Some(&v) = branch.first() {
            return Err(format!("vertex {v} has degree {}", adj[v].len()));
        }
        if edges.len() != spec.total() {
            return Err(format!("path of length {}, expected {}", edges.len(), spec.total()));
        }
        return Ok(());
    }
    let legs = match branch.as_slice() {
        [c] if adj[*c].len() == k => {
            let mut legs: Vec<usize> = adj[*c]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*c, first, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            legs.sort_unstable_by(|a, b| b.cmp(a));
            legs
        }
        [c] => return Err(format!("center {c} has degree {}, expected {k}", adj[*c].len())),
        [] => return Err("no vertex of degree three or more".into()),
        [a, b, ..] => return Err(format!("two branch vertices {a} and {b}")),
    };
    if legs != spec.legs() {
        return Err(format!("leg lengths {legs:?}, expected {:?}", spec.legs()));
    }
    Ok(())
}

fn metadata_mismatch(tree: &PcTree, edges: &[(usize, usize)]) -> Option<String> {
    let mut stored: Vec<(usize, usize)> = Vec::new();
    match tree.shape() {
        TreeShape::Spider { legs } => {
            for leg in legs {
                let mut prev = tree.root();
                for &v in leg {
                    stored.push((prev.min(v), prev.max(v)));
                    prev = v;
                }
            }
        }
        TreeShape::Subdivision { pattern, branch, paths } => {
            if branch.len() != pattern.nodes() || paths.len() != pattern.k() {
                return Some("subdivision data does not match the pattern size".into());
            }
            for (e, &(a, b)) in pattern.edges().iter().enumerate() {
                let p = &paths[e];
                if p.first() != Some(&branch[a]) || p.last() != Some(&branch[b]) {
                    return Some(format!("path of pattern edge {e} has the wrong ends"));
                }
                for w in p.windows(2) {
                    stored.push((w[0].min(w[1]), w[0].max(w[1])));
                }
            }
        }
    }
    let mut actual: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    stored.sort_unstable();
    actual.sort_unstable();
    (stored != actual).then(|| "stored shape does not match the tree edges".to_string())
}

/// Branch vertices and edge paths witnessing that the host tree is a
/// subdivision of `pattern`. `paths[e]` runs from `branch[a]` to `branch[b]`
/// for pattern edge `e = (a, b)`.
pub type Homeomorphism = (Vec<usize>, Vec<Vec<usize>>);

struct Reduced {
    // Original vertex of each reduced node.
    nodes: Vec<usize>,
    // For each node: (neighbor node, chain of original vertices from this node to it).
    links: Vec<Vec<(usize, Vec<usize>)>>,
}

fn reduce(n: usize, edges: &[(usize, usize)]) -> Option<Reduced> {
    let adj = adjacency(n, edges.iter().copied());
    let present: Vec<usize> = (0..n).filter(|&v| !adj[v].is_empty()).collect();
    let nodes: Vec<usize> = present.iter().copied().filter(|&v| adj[v].len() != 2).collect();
    if nodes.is_empty() {
        return None;
    }
    let mut id = vec![usize::MAX; n];
    for (i, &v) in nodes.iter().enumerate() {
        id[v] = i;
    }
    let links = nodes
        .iter()
        .map(|&v| {
            adj[v]
                .iter()
                .map(|&first| {
                    let mut chain = vec![v, first];
                    let (mut prev, mut cur) = (v, first);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        chain.push(cur);
                    }
                    (id[cur], chain)
                })
                .collect()
        })
        .collect();
    Some(Reduced { nodes, links })
}

/// Finds how the host tree (given by `edges` over `0..n`) subdivides `pattern`.
pub fn find_homeomorphism(n: usize, edges: &[(usize, usize)], pattern: &TreePattern) -> Option<Homeomorphism> {
    let host = reduce(n, edges)?;
    let pat = reduce(pattern.nodes(), pattern.edges())?;
    if host.nodes.len() != pat.nodes.len() {
        return None;
    }
    // Pattern nodes in BFS order, each with the link index leading to it.
    let m = pat.nodes.len();
    let mut order = vec![(0usize, usize::MAX, usize::MAX)];
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let (p, _, _) = order[i];
        for (li, (q, _)) in pat.links[p].iter().enumerate() {
            if !seen[*q] {
                seen[*q] = true;
                order.push((*q, p, li));
            }
        }
        i += 1;
    }
    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; m];
    let mut via: Vec<Option<Vec<usize>>> = vec![None; m];

    fn go(
        at: usize,
        order: &[(usize, usize, usize)],
        host: &Reduced,
        pat: &Reduced,
        image: &mut [usize],
        used: &mut [bool],
        via: &mut [Option<Vec<usize>>],
    ) -> bool {
        if at == order.len() {
            return true;
        }
        let (p, parent, li) = order[at];
        let deg = pat.links[p].len();
        let candidates: Vec<(usize, Option<Vec<usize>>)> = if parent == usize::MAX {
            (0..host.nodes.len()).map(|h| (h, None)).collect()
        } else {
            let need = pat.links[parent][li].1.len() - 1;
            host.links[image[parent]]
                .iter()
                .filter(|(_, chain)| chain.len() - 1 >= need)
                .map(|(h, chain)| (*h, Some(chain.clone())))
                .collect()
        };
        for (h, chain) in candidates {
            if used[h] || host.links[h].len() != deg {
                continue;
            }
            used[h] = true;
            image[p] = h;
            via[p] = chain;
            if go(at + 1, order, host, pat, image, used, via) {
                return true;
            }
            used[h] = false;
        }
        false
    }
    if !go(0, &order, &host, &pat, &mut image, &mut used, &mut via) {
        return None;
    }

    let mut branch = vec![usize::MAX; pattern.nodes()];
    for (p, &h) in image.iter().enumerate() {
        branch[pat.nodes[p]] = host.nodes[h];
    }
    // Spread each pattern chain's inner nodes over the host chain: one host
    // edge per pattern edge, the last pattern edge takes the remainder.
    let mut edge_paths: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for &(p, parent, li) in &order[1..] {
        let pchain = &pat.links[parent][li].1;
        let hchain = via[p].as_ref().unwrap();
        let steps = pchain.len() - 1;
        for s in 0..steps {
            if s > 0 {
                branch[pchain[s]] = hchain[s];
            }
            let end = if s + 1 == steps { hchain.len() - 1 } else { s + 1 };
            edge_paths.push(((pchain[s], pchain[s + 1]), hchain[s..=end].to_vec()));
        }
    }
    let paths = pattern
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (key, path) = edge_paths
                .iter()
                .find(|((x, y), _)| (*x, *y) == (a, b) || (*x, *y) == (b, a))
                .expect("every pattern edge lies on one chain");
            let mut path = path.clone();
            if key.0 != a {
                path.reverse();
            }
            path
        })
        .collect();
    Some((branch, paths))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider(legs: Vec<Vec<usize>>, n: usize) -> PcTree {
        PcTree::spider(n, 0, legs).unwrap()
    }

    #[test]
    fn spider_mode() {
        let star = spider(vec![vec![1], vec![2], vec![3]], 4);
        let spec = |v: Vec<usize>| ShapeTarget::Spider(SpiderSpec::new(v).unwrap());
        assert!(verify_shape(&star, &spec(vec![1, 1, 1])).ok);
        let t = spider(vec![vec![1, 2, 3], vec![4, 5], vec![6]], 7);
        assert!(verify_shape(&t, &spec(vec![3, 2, 1])).ok);
        assert!(!verify_shape(&t, &spec(vec![4, 1, 1])).ok);
        let path = spider(vec![vec![1, 2, 3], vec![4, 5]], 6);
        assert!(verify_shape(&path, &spec(vec![3, 2])).ok);
        assert!(verify_shape(&path, &spec(vec![4, 1])).ok);
        assert!(!verify_shape(&path, &spec(vec![3, 3])).ok);
    }

    #[test]
    fn subdivision_mode() {
        let t = spider(vec![vec![1, 2, 3], vec![4, 5], vec![6]], 7);
        let star = TreePattern::star(3).unwrap();
        let (branch, paths) = find_homeomorphism(7, &t.edges(), &star).unwrap();
        assert_eq!(branch[0], 0);
        for (e, &(a, b)) in star.edges().iter().enumerate() {
            assert_eq!(paths[e][0], branch[a]);
            assert_eq!(*paths[e].last().unwrap(), branch[b]);
        }
        assert!(verify_shape(&t, &ShapeTarget::Subdivision(star)).ok);
        assert!(!verify_shape(&t, &ShapeTarget::Subdivision(TreePattern::star(4).unwrap())).ok);
        assert!(!verify_shape(&t, &ShapeTarget::Subdivision(TreePattern::edge())).ok);
        // A path pattern with three edges needs host chains of length three.
        let p3 = TreePattern::path(3).unwrap();
        let path = spider(vec![vec![1, 2], vec![3]], 4);
        let (branch, paths) = find_homeomorphism(4, &path.edges(), &p3).unwrap();
        assert_eq!(paths.iter().map(Vec::len).sum::<usize>(), 6);
        assert_eq!(branch.len(), 4);
        assert!(find_homeomorphism(3, &[(0, 1), (1, 2)], &p3).is_none());
    }
}
