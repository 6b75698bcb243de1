//! Built-in scorers and the bridge to external scorer processes.

pub mod sidecar;
pub mod stubs;
pub mod token_f1;

pub use sidecar::{sidecar_score, SidecarClient, SidecarScorer, PROTOCOL_VERSION};
pub use stubs::{HashStanceScorer, OverlapStanceScorer, RuleClassifier};
pub use token_f1::{token_f1, TokenF1Scorer};
