use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hog_core::io::GraphFormat;

/// Input path; `-` reads standard input.
pub type Input = PathBuf;

#[derive(Debug, Parser)]
#[command(name = "hog", version, about = "Homotopy, homology and ranking of finite directed multigraphs")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Format of graph inputs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Auto)]
    pub format: Format,

    /// Largest hom-set that may be enumerated.
    #[arg(long, global = true, env = "HOG_HOM_CAP", default_value_t = 1_000_000)]
    pub cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Json,
    Edgelist,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Auto => GraphFormat::Auto,
            Format::Json => GraphFormat::Json,
            Format::Edgelist => GraphFormat::EdgeList,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strongly connected components and the condensation.
    Scc { graph: Input },
    /// Decide whether a morphism is a weak equivalence.
    Weq {
        domain: Input,
        codomain: Input,
        /// Morphism JSON: `{"nodes": {..}, "arcs": {..}}`.
        morphism: Input,
        /// Ignore nodes, compare cycles of positive length only.
        #[arg(long)]
        cycles_only: bool,
        /// Also check hom-set bijections by enumeration for lengths up to N.
        #[arg(long, value_name = "N")]
        oracle: Option<usize>,
    },
    /// Subgraph of arcs inside strongly connected components, with its inclusion.
    Cofibrant { graph: Input },
    /// Identify two nodes.
    GlueNodes { graph: Input, x: String, y: String },
    /// Attach a fresh cycle of the given length at a node.
    AttachCycle { graph: Input, at: String, length: usize },
    /// Identify two parallel simple paths, given as comma-separated arc ids.
    GluePaths { graph: Input, first: String, second: String },
    /// Eulerian test, cycle construction and attachment decomposition.
    Euler {
        graph: Input,
        /// Build an Eulerian cycle; fails with exit code 1 on non-Eulerian input.
        #[arg(long)]
        construct: bool,
        /// Emit the cycle-attachment script.
        #[arg(long)]
        decompose: bool,
        /// Leave isolated nodes out of the connectivity requirement.
        #[arg(long)]
        ignore_isolated: bool,
    },
    /// Ranks of H_0 and H_1 with a cycle basis.
    Homology {
        graph: Input,
        /// List nonnegative cycles with coefficients up to this bound.
        #[arg(long, value_name = "K")]
        max_coeff: Option<i64>,
        /// Most nonnegative cycles listed.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Split a positive boundaryless chain into closed walks (default: every arc once).
    Decompose {
        graph: Input,
        /// Chain JSON: `{"coefficients": {arc: k, ..}}`.
        chain: Option<Input>,
    },
    /// Shortest closed walk through every arc.
    Postman { graph: Input },
    /// Reflexive graphs.
    Reflexive {
        #[command(subcommand)]
        command: ReflexiveCommand,
    },
    /// Stationary distribution of the damped random walk.
    Pagerank {
        graph: Input,
        #[arg(long, default_value_t = 0.85)]
        damping: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Number of based closed walks of a given length.
    HomCount {
        graph: Input,
        length: usize,
        /// List the walks too.
        #[arg(long)]
        enumerate: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReflexiveCommand {
    /// Component test and nondegenerate-cycle bijection for a reflexive morphism.
    Weq {
        domain: Input,
        codomain: Input,
        morphism: Input,
        /// Inputs are plain graphs and a plain morphism; degeneracies are added.
        #[arg(long)]
        plain: bool,
        /// Longest nondegenerate cycle compared.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Drop the degeneracies of a reflexive graph.
    Strip { graph: Input },
    /// Add a degenerate loop at every node.
    Add { graph: Input },
}

/// Splits `a,b,c` into arc ids; the empty string is the empty path.
pub fn arc_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|id| !id.is_empty()).collect()
}
