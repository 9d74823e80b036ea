//! t-CR machinery: the alternating refinement, closures, the k-improvement
//! operator, the complete individualization-refinement engine, and the
//! automorphism-bound pipeline.

mod engine;
mod flow;
mod improve;
mod pipeline;
mod stable;

pub use engine::{aut, is_graph_automorphism, is_graph_isomorphism, iso, IsoResult, SearchStats};
pub use flow::{max_disjoint_paths_between_sets, max_vertex_disjoint_paths};
pub use improve::{k_improvement, k_improvement_with_sweeps};
pub use pipeline::tcr_aut_pipeline;
pub use stable::{closure, is_tcr_bounded, tcr_stable, TcrTrace};
