//! Subcommands. Exit codes: 0 success, 1 not found or violation, 2 usage or
//! parse error, 3 a certificate failed its own re-check.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use pctree::{
    brute_force_pc_spider, color_degree, compute_g, embed_pc_spider_traced, embed_pc_subdivision,
    find_monochromatic_triangle_with, find_nice_bowtie, generate, vertex_profile, EdgeColoredGraph, Error, Exec,
    GValue, Generated, GeneratorKind, GeneratorSpec, SearchBudget, SpiderSpec, TreePattern,
};
use serde::Serialize;

use crate::dot::to_dot;
use crate::format::{verify_certificate, Certificate, Claim, GraphFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_FOUND: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BREACH: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "pctree", version, about = "Properly colored spanning trees in mono-C3-free colorings")]
pub struct Cli {
    /// Worker threads for the parallel search paths; 1 runs sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON instead of the text formats.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Transitive,
    Random,
    Degenerate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a mono-C3-free coloring.
    Gen {
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        palette: usize,
        #[arg(long, default_value_t = 0.3)]
        pair_density: f64,
        #[arg(long, default_value_t = 2)]
        min_outdeg: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Report color statistics and look for a monochromatic triangle.
    Check { file: PathBuf },
    /// Embed a spanning PC spider with the given leg lengths.
    Spider {
        file: PathBuf,
        /// Comma-separated leg lengths.
        #[arg(long)]
        legs: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Embed a spanning PC subdivision of a pattern tree.
    Subdivide {
        file: PathBuf,
        /// `edge`, `star:k`, `path:k`, or a file of `a b` edge lines.
        #[arg(long)]
        pattern: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute g(S_k, C_3) by exhaustive search.
    Ramsey {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_secs: Option<u64>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exhaustive spider search on a small graph.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        legs: String,
        #[arg(long, default_value_t = pctree::ORACLE_LIMIT)]
        limit: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of a coloring, optionally with a certificate tree.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Draw every edge even on large graphs.
        #[arg(long)]
        all_edges: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate against a graph.
    Verify { file: PathBuf, cert: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    fail(EXIT_USAGE, message)
}

// Maps library errors onto the exit-code contract.
fn from_lib(e: Error) -> Failure {
    match &e {
        Error::Construction { step, detail } => fail(EXIT_NOT_FOUND, format!("step {step}: {detail}")),
        Error::MonochromaticTriangle(_) => fail(EXIT_NOT_FOUND, e.to_string()),
        _ => usage(e.to_string()),
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx<'a> {
    json: bool,
    exec: Exec,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, out: Option<&Path>, body: &str) -> Result<(), Failure> {
        match out {
            Some(p) => std::fs::write(p, body).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
            None => self.stdout.write_all(body.as_bytes()).map_err(|e| usage(e.to_string())),
        }
    }

    fn note(&mut self, line: &str) {
        let _ = writeln!(self.stderr, "{line}");
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let exec = match cli.threads {
        Some(1) => Exec::Sequential,
        Some(t) => {
            if t > 1 {
                std::env::set_var("RAYON_NUM_THREADS", t.to_string());
            }
            Exec::Parallel
        }
        None => Exec::default(),
    };
    let mut ctx = Ctx {
        json: cli.json,
        exec,
        stdout,
        stderr,
    };
    let result = match &cli.command {
        Command::Gen {
            kind,
            n,
            seed,
            palette,
            pair_density,
            min_outdeg,
            out,
        } => cmd_gen(&mut ctx, *kind, *n, *seed, *palette, *pair_density, *min_outdeg, out.as_deref()),
        Command::Check { file } => cmd_check(&mut ctx, file),
        Command::Spider { file, legs, out } => cmd_spider(&mut ctx, file, legs, out.as_deref()),
        Command::Subdivide { file, pattern, out } => cmd_subdivide(&mut ctx, file, pattern, out.as_deref()),
        Command::Ramsey {
            k,
            max_n,
            max_nodes,
            max_secs,
            out,
        } => cmd_ramsey(&mut ctx, *k, *max_n, *max_nodes, *max_secs, out.as_deref()),
        Command::Oracle { file, legs, limit, out } => cmd_oracle(&mut ctx, file, legs, *limit, out.as_deref()),
        Command::ExportDot {
            file,
            cert,
            all_edges,
            out,
        } => cmd_export_dot(&mut ctx, file, cert.as_deref(), *all_edges, out.as_deref()),
        Command::Verify { file, cert } => cmd_verify(&mut ctx, file, cert),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            ctx.note(&format!("pctree: {}", f.message));
            f.code
        }
    }
}

fn read_graph(path: &Path) -> Result<EdgeColoredGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    GraphFile::parse(&text)
        .map(|f| f.graph)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_cert(path: &Path) -> Result<Certificate, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Certificate::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_legs(legs: &str, n: usize) -> Result<SpiderSpec, Failure> {
    let parsed = legs
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("bad leg list `{legs}`: {e}")))?;
    let spec = SpiderSpec::new(parsed).map_err(|e| usage(e.to_string()))?;
    if spec.total() + 1 != n {
        return Err(usage(format!("legs sum to {}, the graph needs {}", spec.total(), n - 1)));
    }
    Ok(spec)
}

pub fn parse_pattern(text: &str) -> Result<TreePattern, String> {
    let sized = |rest: &str| rest.parse::<usize>().map_err(|e| format!("bad size `{rest}`: {e}"));
    let pattern = if text == "edge" {
        Ok(TreePattern::edge())
    } else if let Some(rest) = text.strip_prefix("star:") {
        TreePattern::star(sized(rest)?)
    } else if let Some(rest) = text.strip_prefix("path:") {
        TreePattern::path(sized(rest)?)
    } else {
        let body = std::fs::read_to_string(text).map_err(|e| format!("cannot read pattern {text}: {e}"))?;
        let mut edges = Vec::new();
        for line in body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let toks: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == '-').filter(|t| !t.is_empty()).collect();
            match toks.as_slice() {
                [a, b] => edges.push((
                    a.parse().map_err(|_| format!("bad node `{a}`"))?,
                    b.parse().map_err(|_| format!("bad node `{b}`"))?,
                )),
                _ => return Err(format!("bad pattern line `{line}`")),
            }
        }
        TreePattern::new(edges)
    };
    pattern.map_err(|e| e.to_string())
}

// Writes a certificate only after its own text parses back and verifies.
fn write_certificate(ctx: &mut Ctx<'_>, g: &EdgeColoredGraph, cert: &Certificate, out: Option<&Path>) -> Outcome {
    let text = cert.to_text();
    let reread = Certificate::parse(&text).map_err(|e| fail(EXIT_BREACH, format!("certificate does not parse: {e}")))?;
    verify_certificate(g, &reread).map_err(|e| fail(EXIT_BREACH, format!("certificate failed re-check: {e}")))?;
    let body = if ctx.json { cert.to_json() } else { text };
    ctx.emit(out, &body)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    ctx: &mut Ctx<'_>,
    kind: Kind,
    n: usize,
    seed: u64,
    palette: usize,
    pair_density: f64,
    min_outdeg: usize,
    out: Option<&Path>,
) -> Outcome {
    let (gk, label) = match kind {
        Kind::Transitive => (GeneratorKind::Transitive, "transitive".to_string()),
        Kind::Random => (GeneratorKind::Random { palette }, format!("random palette={palette}")),
        Kind::Degenerate => (
            GeneratorKind::Degenerate {
                pair_density,
                min_outdeg,
            },
            format!("degenerate pair_density={pair_density} min_outdeg={min_outdeg}"),
        ),
    };
    let spec = GeneratorSpec { kind: gk, n, seed };
    let g = match generate(&spec).map_err(|e| usage(e.to_string()))? {
        Generated::Coloring(g) => g,
        Generated::Tournament(_) => unreachable!("only colorings are requested"),
    };
    let file = GraphFile {
        comments: vec![format!("{label} n={n} seed={seed}")],
        graph: g,
    };
    let body = if ctx.json { file.to_json() } else { file.to_text() };
    ctx.emit(out, &body)?;
    let verdict = match find_monochromatic_triangle_with(&file.graph, ctx.exec) {
        Some(t) => format!("monochromatic triangle {t}"),
        None => "mono-C3-free".to_string(),
    };
    ctx.note(&format!("n {n}, palette {}, {verdict}", file.graph.palette_size()));
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CheckReport {
    n: usize,
    palette: usize,
    min_color_degree: usize,
    max_mono_degree: usize,
    mono_triangle: Option<[usize; 3]>,
    nice_bowtie: bool,
}

fn cmd_check(ctx: &mut Ctx<'_>, file: &Path) -> Outcome {
    let g = read_graph(file)?;
    let n = g.n();
    let min_color_degree = (0..n).map(|v| color_degree(&g, v)).min().unwrap_or(0);
    let max_mono_degree = (0..n)
        .map(|v| vertex_profile(&g, v).map(|p| p.max_mono_degree).unwrap_or(0))
        .max()
        .unwrap_or(0);
    let mono = find_monochromatic_triangle_with(&g, ctx.exec);
    let report = CheckReport {
        n,
        palette: g.palette_size(),
        min_color_degree,
        max_mono_degree,
        mono_triangle: mono.map(|t| [t.0, t.1, t.2]),
        nice_bowtie: mono.is_none() && find_nice_bowtie(&g).is_some(),
    };
    let body = if ctx.json {
        serde_json::to_string_pretty(&report).unwrap() + "\n"
    } else {
        let status = match report.mono_triangle {
            Some([a, b, c]) => format!("monochromatic triangle {a} {b} {c}"),
            None => "mono-C3-free".to_string(),
        };
        format!(
            "n {}\npalette {}\nmin color degree {}\nmax mono degree {}\n{status}\nnice bowtie {}\n",
            report.n,
            report.palette,
            report.min_color_degree,
            report.max_mono_degree,
            if report.nice_bowtie { "yes" } else { "no" },
        )
    };
    ctx.emit(None, &body)?;
    Ok(if mono.is_some() { EXIT_NOT_FOUND } else { EXIT_OK })
}

fn cmd_spider(ctx: &mut Ctx<'_>, file: &Path, legs: &str, out: Option<&Path>) -> Outcome {
    let g = read_graph(file)?;
    let spec = parse_legs(legs, g.n())?;
    let (tree, trace) = embed_pc_spider_traced(&g, &spec, ctx.exec).map_err(from_lib)?;
    ctx.note(&format!(
        "branch {:?}, bowties {}, g {}, theorem bound {} ({})",
        trace.branch,
        trace.bowties,
        trace.g_threshold,
        trace.theorem_bound,
        if trace.theorem_bound_met { "met" } else { "not met" }
    ));
    let cert = Certificate::from_tree(
        &g,
        &tree,
        Claim::Spider {
            legs: spec.legs().to_vec(),
        },
        "ok",
    );
    write_certificate(ctx, &g, &cert, out)
}

fn cmd_subdivide(ctx: &mut Ctx<'_>, file: &Path, pattern: &str, out: Option<&Path>) -> Outcome {
    let g = read_graph(file)?;
    let pattern = parse_pattern(pattern).map_err(usage)?;
    if g.n() < pattern.k() + 1 {
        return Err(usage(format!("{} vertices cannot span a tree with {} edges", g.n(), pattern.k())));
    }
    let tree = embed_pc_subdivision(&g, &pattern).map_err(from_lib)?;
    let cert = Certificate::from_tree(
        &g,
        &tree,
        Claim::Subdivision {
            pattern: pattern.edges().to_vec(),
        },
        "ok",
    );
    write_certificate(ctx, &g, &cert, out)
}

#[derive(Serialize)]
struct RamseyReport {
    k: usize,
    exact: bool,
    lower: usize,
    upper: usize,
    exhausted: bool,
    witness_rows: Vec<Vec<u64>>,
}

fn cmd_ramsey(ctx: &mut Ctx<'_>, k: usize, max_n: usize, max_nodes: Option<u64>, max_secs: Option<u64>, out: Option<&Path>) -> Outcome {
    let budget = SearchBudget {
        max_nodes,
        max_time: max_secs.map(std::time::Duration::from_secs),
    };
    let r = compute_g(k, max_n, budget, ctx.exec).map_err(from_lib)?;
    let (exact, lower, upper) = match r.value {
        GValue::Exact(v) => (true, v, v),
        GValue::Bracket { lower, upper } => (false, lower, upper),
    };
    ctx.note(&format!("search nodes {}, elapsed {:.3}s", r.stats.nodes, r.stats.elapsed.as_secs_f64()));
    let witness = GraphFile::new(r.witness.clone());
    let body = if ctx.json {
        let n = r.witness.n();
        let report = RamseyReport {
            k,
            exact,
            lower,
            upper,
            exhausted: r.exhausted,
            witness_rows: (0..n.saturating_sub(1))
                .map(|i| (i + 1..n).map(|j| r.witness.edge_label(i, j)).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&report).unwrap() + "\n"
    } else {
        let value = if exact { format!("value {lower}") } else { format!("bracket {lower} {upper}") };
        format!("k {k}\n{value}\nexhausted {}\n{}", r.exhausted, witness.to_text())
    };
    ctx.emit(out, &body)?;
    Ok(if exact { EXIT_OK } else { EXIT_NOT_FOUND })
}

fn cmd_oracle(ctx: &mut Ctx<'_>, file: &Path, legs: &str, limit: usize, out: Option<&Path>) -> Outcome {
    let g = read_graph(file)?;
    let spec = parse_legs(legs, g.n())?;
    match brute_force_pc_spider(&g, &spec, limit).map_err(|e| usage(e.to_string()))? {
        Some(tree) => {
            let cert = Certificate::from_tree(
                &g,
                &tree,
                Claim::Spider {
                    legs: spec.legs().to_vec(),
                },
                "ok",
            );
            write_certificate(ctx, &g, &cert, out)
        }
        None => {
            ctx.note("no spider with these legs exists");
            Ok(EXIT_NOT_FOUND)
        }
    }
}

fn cmd_export_dot(ctx: &mut Ctx<'_>, file: &Path, cert: Option<&Path>, all_edges: bool, out: Option<&Path>) -> Outcome {
    let g = read_graph(file)?;
    let cert = cert.map(read_cert).transpose()?;
    if let Some(c) = &cert {
        verify_certificate(&g, c).map_err(|e| fail(EXIT_NOT_FOUND, format!("certificate rejected: {e}")))?;
    }
    ctx.emit(out, &to_dot(&g, cert.as_ref(), all_edges))?;
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &mut Ctx<'_>, file: &Path, cert: &Path) -> Outcome {
    let g = read_graph(file)?;
    let cert = read_cert(cert)?;
    match verify_certificate(&g, &cert) {
        Ok(()) => {
            ctx.emit(None, "verdict ok\n")?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            ctx.emit(None, &format!("verdict rejected: {e}\n"))?;
            Ok(EXIT_NOT_FOUND)
        }
    }
}
