//! Properly colored spanning trees in edge-colored complete graphs with no
//! monochromatic triangle.
//!
//! The crate builds explicit certificates: PC Hamilton paths, nice shovels,
//! spanning spiders and spanning subdivisions of a fixed tree. Every result
//! can be rechecked with [`validate_pc_tree`].

pub mod embedding;
pub mod error;
pub mod graph;
pub mod instances;
pub mod par;
pub mod pc;
pub mod ramsey;
pub mod tournament;
pub mod tree;

pub use embedding::{
    brute_force_pc_spider, embed_pc_spider, embed_pc_spider_batch, embed_pc_spider_traced, embed_pc_spider_with,
    embed_pc_subdivision, embed_pc_subdivision_traced, embed_small_pc_tree, find_homeomorphism, verify_shape,
    DegenerateLabel, ShapeTarget, ShapeVerdict, SpiderBranch, SpiderTrace, SubdivisionTrace, ORACLE_LIMIT,
};
pub use error::{Error, Result};
pub use graph::{
    classify_triangle, color_classes, color_degree, find_monochromatic_triangle, find_monochromatic_triangle_with,
    is_center_edge, require_mono_c3_free, vertex_profile, Color, ColorQuery, EdgeColoredGraph, InducedView,
    RepeatedColor, Triangle, TriangleClass, TriangleKind, VertexColorProfile,
};
pub use instances::{
    coloring_from_tournament, degenerate_coloring, generate, random_mcf_tournament, random_mono_c3_free,
    transitive_coloring, GeneratorKind, GeneratorSpec, Generated,
};
pub use par::Exec;
pub use pc::{
    find_nice_bowtie, insert_vertex, merge_triangle_shovel, octopus_to_spider, pc_hamilton_path_from,
    spanning_nice_shovel, Bowtie, MergeTail, Octopus, PcPath, Shovel,
};
pub use ramsey::{compute_g, find_rainbow_star, g_upper, known_g, GValue, RainbowStar, RamseyResult, SearchBudget};
pub use tournament::{
    embed_tstar, embed_tstar_with, hamilton_cycle_strong, hamilton_path, validate_mcf, Digraph, DirectedSpider,
    McfTournament, McfViolation,
};
pub use tree::{is_pc_path, validate_pc_tree, ColorClash, PcTree, SpiderSpec, TreePattern, TreeShape};
