//! Exact constrained decoding of an explanation graph from per-pair edge
//! probabilities.

pub mod flow;
pub mod search;
pub mod tensor;

pub use flow::{check_connectivity_flow, FlowCertificate};
pub use search::{decode, DecodeError, DecodedGraph};
pub use tensor::{EdgeProbTensor, TensorError, TensorNode};
