//! Toolkit for commonsense explanation graphs used in stance prediction:
//! parsing and validation, multi-level evaluation metrics, edge orderings,
//! perturbations, and an exact constrained decoder.

pub mod decoder;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod order;
pub mod origin;
pub mod perturb;
pub mod plugins;
pub mod stats;
pub mod topology;
pub mod validate;
pub mod vocab;

pub use decoder::{decode, DecodedGraph, EdgeProbTensor};
pub use graph::{parse_graph, serialize_graph, Concept, Edge, ExplanationGraph, GraphError};
pub use metrics::{evaluate_corpus, ged, gbs, MetricReport};
pub use order::{linearize, OrderError, Ordering};
pub use origin::{classify_origins, NodeOrigin};
pub use perturb::{perturb, PerturbError};
pub use stats::{compute_stats, GraphStats, StatsSummary};
pub use validate::{validate, ValidationReport};
pub use vocab::{Relation, RelationVocabulary};
