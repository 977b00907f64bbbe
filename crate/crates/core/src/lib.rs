//! Homotopy-flavoured analysis of finite directed multigraphs.
//!
//! Graphs are presheaves on the walking arrow: a node set, an arc set and
//! source/target maps. On top of that the crate provides strongly connected
//! components, the weak-equivalence test on morphisms (bijections on closed
//! walks of every length), surgery by pushouts, Eulerian cycles, degree 0 and
//! degree 1 homology with cycle decompositions, reflexive graphs and PageRank.

pub mod corpus;
pub mod euler;
pub mod graph;
pub mod homology;
pub mod homotopy;
pub mod io;
pub mod morphism;
pub mod pagerank;
pub mod reflexive;
pub mod scc;
pub mod walk;

pub use euler::{euler_check, euler_cycle, euler_decompose, EulerError, EulerOptions, EulerReport};
pub use graph::{ArcIx, DirectedGraph, GraphBuilder, GraphError, NodeIx, SharedGraph};
pub use homology::{
    boundary_0, boundary_1, decompose_positive_chain, euler_via_homology, fundamental_chain, homology_summary,
    minimal_covering_walk, ArcChain, HomologyError, NodeChain,
};
pub use homotopy::{
    brute_force_weq_check, cofibrant_replacement, count_hom_cycles, enumerate_hom_cycles, is_weak_equivalence,
    HomotopyError, WeakEquivalenceVerdict,
};
pub use morphism::{validate_morphism, GraphMorphism};
pub use pagerank::{pagerank, PageRankParams, RankVector};
pub use reflexive::{ReflexiveGraph, ReflexiveMorphism};
pub use scc::{is_strongly_connected, scc_decompose, SccDecomposition};
pub use walk::{ClosedWalk, Walk};
