//! Text formats for colorings and tree certificates.
//!
//! A graph file is `#` comment lines, then `n <count>`, then one row per
//! vertex `i < n - 1` listing `col(i, j)` for `j > i`. A certificate file is a
//! sequence of keyword lines; see [`Certificate::to_text`].

use std::fmt::{self, Write as _};

use pctree::{ColorQuery, EdgeColoredGraph, PcTree, SpiderSpec, TreePattern, TreeShape};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A coloring plus the comment lines that came with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub comments: Vec<String>,
    pub graph: EdgeColoredGraph,
}

impl GraphFile {
    pub fn new(graph: EdgeColoredGraph) -> Self {
        GraphFile {
            comments: Vec::new(),
            graph,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut comments = Vec::new();
        let header = loop {
            match lines.next() {
                Some((_, l)) if l.starts_with('#') => comments.push(l[1..].trim_start().to_string()),
                Some(h) => break h,
                None => return Err(ParseError::new(1, "missing `n <count>` header")),
            }
        };
        let n = match header.1.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count
                .parse::<usize>()
                .map_err(|e| ParseError::new(header.0, format!("bad vertex count: {e}")))?,
            _ => return Err(ParseError::new(header.0, "expected `n <count>`")),
        };
        if n == 0 {
            return Err(ParseError::new(header.0, "a graph needs at least one vertex"));
        }
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n - 1 {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(header.0 + i + 1, format!("missing row {i}")))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ParseError::new(no, format!("bad color: {e}")))?;
            if row.len() != n - 1 - i {
                return Err(ParseError::new(no, format!("row {i} has {} entries, expected {}", row.len(), n - 1 - i)));
            }
            rows.push(row);
        }
        if let Some((no, l)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(ParseError::new(no, format!("unexpected trailing line `{l}`")));
        }
        let graph = EdgeColoredGraph::from_fn(n, |u, v| rows[u][v - u - 1]).map_err(|e| ParseError::new(1, e.to_string()))?;
        Ok(GraphFile { comments, graph })
    }

    pub fn to_text(&self) -> String {
        let n = self.graph.n();
        let mut out = String::new();
        for c in &self.comments {
            writeln!(out, "# {c}").unwrap();
        }
        writeln!(out, "n {n}").unwrap();
        for i in 0..n.saturating_sub(1) {
            let row: Vec<String> = (i + 1..n).map(|j| self.graph.edge_label(i, j).to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let n = self.graph.n();
        let rows: Vec<Vec<u64>> = (0..n.saturating_sub(1))
            .map(|i| (i + 1..n).map(|j| self.graph.edge_label(i, j)).collect())
            .collect();
        let doc = GraphJson {
            comments: self.comments.clone(),
            n,
            rows,
        };
        serde_json::to_string_pretty(&doc).unwrap() + "\n"
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    comments: Vec<String>,
    n: usize,
    rows: Vec<Vec<u64>>,
}

/// What a certificate claims the tree is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    Spider { legs: Vec<usize> },
    Subdivision { pattern: Vec<(usize, usize)> },
}

/// A self-contained tree certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub root: usize,
    pub claim: Claim,
    /// `(child, parent, color label)`, by child.
    pub edges: Vec<(usize, usize, u64)>,
    /// Spider legs outward from the root, or pattern edge paths.
    pub paths: Vec<Vec<usize>>,
    /// Host vertex of each pattern node; empty for spiders.
    pub branch: Vec<usize>,
    pub verdict: String,
}

impl Certificate {
    pub fn from_tree(g: &EdgeColoredGraph, tree: &PcTree, claim: Claim, verdict: &str) -> Self {
        let edges = tree
            .edges()
            .into_iter()
            .map(|(c, p)| (c, p, g.edge_label(c, p)))
            .collect();
        let (paths, branch) = match tree.shape() {
            TreeShape::Spider { legs } => (legs.clone(), Vec::new()),
            TreeShape::Subdivision { branch, paths, .. } => (paths.clone(), branch.clone()),
        };
        Certificate {
            n: tree.host_order(),
            root: tree.root(),
            claim,
            edges,
            paths,
            branch,
            verdict: verdict.to_string(),
        }
    }

    /// Rebuilds the tree; colors are not consulted.
    pub fn to_tree(&self) -> Result<PcTree, String> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(c, p, _)| (c, p)).collect();
        if let Some(&(c, p, _)) = self.edges.iter().find(|e| e.0 >= self.n || e.1 >= self.n) {
            return Err(format!("edge {c}-{p} leaves the vertex range"));
        }
        if self.root >= self.n {
            return Err(format!("root {} out of range", self.root));
        }
        let shape = match &self.claim {
            Claim::Spider { .. } => TreeShape::Spider {
                legs: self.paths.clone(),
            },
            Claim::Subdivision { pattern } => TreeShape::Subdivision {
                pattern: TreePattern::new(pattern.clone()).map_err(|e| e.to_string())?,
                branch: self.branch.clone(),
                paths: self.paths.clone(),
            },
        };
        PcTree::from_edges(self.n, self.root, &edges, shape).map_err(|e| e.to_string())
    }

    pub fn spider_spec(&self) -> Option<SpiderSpec> {
        match &self.claim {
            Claim::Spider { legs } => SpiderSpec::new(legs.clone()).ok(),
            Claim::Subdivision { .. } => None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("pctree-certificate 1\n");
        let join = |xs: &mut dyn Iterator<Item = String>| xs.collect::<Vec<_>>().join(" ");
        match &self.claim {
            Claim::Spider { legs } => {
                writeln!(out, "kind spider").unwrap();
                writeln!(out, "legs {}", join(&mut legs.iter().map(|l| l.to_string()))).unwrap();
            }
            Claim::Subdivision { pattern } => {
                writeln!(out, "kind subdivision").unwrap();
                writeln!(out, "pattern {}", join(&mut pattern.iter().map(|(a, b)| format!("{a}-{b}")))).unwrap();
            }
        }
        writeln!(out, "n {}", self.n).unwrap();
        writeln!(out, "root {}", self.root).unwrap();
        for &(c, p, col) in &self.edges {
            writeln!(out, "edge {c} {p} {col}").unwrap();
        }
        if !self.branch.is_empty() {
            writeln!(out, "branch {}", join(&mut self.branch.iter().map(|v| v.to_string()))).unwrap();
        }
        for path in &self.paths {
            writeln!(out, "path {}", join(&mut path.iter().map(|v| v.to_string()))).unwrap();
        }
        writeln!(out, "verdict {}", self.verdict).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap() + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, "pctree-certificate 1")) => {}
            Some((no, _)) => return Err(ParseError::new(no, "expected `pctree-certificate 1`")),
            None => return Err(ParseError::new(1, "empty certificate")),
        }
        let nums = |no: usize, toks: &[&str]| -> Result<Vec<usize>, ParseError> {
            toks.iter()
                .map(|t| t.parse::<usize>().map_err(|e| ParseError::new(no, format!("bad number `{t}`: {e}"))))
                .collect()
        };
        let (mut kind, mut legs, mut pattern) = (None, None, None);
        let (mut n, mut root, mut verdict) = (None, None, None);
        let (mut edges, mut paths, mut branch) = (Vec::new(), Vec::new(), Vec::new());
        for (no, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["kind", k] => kind = Some(k.to_string()),
                ["legs", rest @ ..] => legs = Some(nums(no, rest)?),
                ["pattern", rest @ ..] => {
                    let mut es = Vec::new();
                    for t in rest {
                        let (a, b) = t
                            .split_once('-')
                            .ok_or_else(|| ParseError::new(no, format!("bad pattern edge `{t}`")))?;
                        let ab = nums(no, &[a, b])?;
                        es.push((ab[0], ab[1]));
                    }
                    pattern = Some(es);
                }
                ["n", v] => n = Some(nums(no, &[v])?[0]),
                ["root", v] => root = Some(nums(no, &[v])?[0]),
                ["edge", c, p, col] => {
                    let cp = nums(no, &[c, p])?;
                    let col = col
                        .parse::<u64>()
                        .map_err(|e| ParseError::new(no, format!("bad color: {e}")))?;
                    edges.push((cp[0], cp[1], col));
                }
                ["branch", rest @ ..] => branch = nums(no, rest)?,
                ["path", rest @ ..] => paths.push(nums(no, rest)?),
                ["verdict", rest @ ..] => verdict = Some(rest.join(" ")),
                _ => return Err(ParseError::new(no, format!("unrecognized line `{line}`"))),
            }
        }
        let missing = |what: &str| ParseError::new(0, format!("missing `{what}` line"));
        let claim = match kind.as_deref() {
            Some("spider") => Claim::Spider {
                legs: legs.ok_or_else(|| missing("legs"))?,
            },
            Some("subdivision") => Claim::Subdivision {
                pattern: pattern.ok_or_else(|| missing("pattern"))?,
            },
            Some(other) => return Err(ParseError::new(0, format!("unknown kind `{other}`"))),
            None => return Err(missing("kind")),
        };
        Ok(Certificate {
            n: n.ok_or_else(|| missing("n"))?,
            root: root.ok_or_else(|| missing("root"))?,
            claim,
            edges,
            paths,
            branch,
            verdict: verdict.ok_or_else(|| missing("verdict"))?,
        })
    }
}

/// Checks a certificate against a graph without trusting anything the
/// producing run computed.
pub fn verify_certificate(g: &EdgeColoredGraph, cert: &Certificate) -> Result<(), String> {
    if cert.n != g.n() {
        return Err(format!("certificate is for {} vertices, graph has {}", cert.n, g.n()));
    }
    for &(c, p, col) in &cert.edges {
        if c >= g.n() || p >= g.n() || c == p {
            return Err(format!("bad edge {c}-{p}"));
        }
        if g.edge_label(c, p) != col {
            return Err(format!("edge {c}-{p} has color {}, certificate says {col}", g.edge_label(c, p)));
        }
    }
    let tree = cert.to_tree()?;
    if !tree.is_spanning() {
        return Err("tree is not spanning".into());
    }
    // Proper coloring, checked directly.
    let mut seen = std::collections::BTreeSet::new();
    for &(c, p, _) in &cert.edges {
        let col = g.color(c, p);
        for v in [c, p] {
            if !seen.insert((v, col)) {
                return Err(format!("two edges of one color at vertex {v}"));
            }
        }
    }
    let target = match &cert.claim {
        Claim::Spider { legs } => {
            pctree::ShapeTarget::Spider(SpiderSpec::new(legs.clone()).map_err(|e| e.to_string())?)
        }
        Claim::Subdivision { pattern } => {
            pctree::ShapeTarget::Subdivision(TreePattern::new(pattern.clone()).map_err(|e| e.to_string())?)
        }
    };
    let verdict = pctree::verify_shape(&tree, &target);
    match verdict.violation {
        Some(v) => Err(v),
        None => Ok(()),
    }
}
