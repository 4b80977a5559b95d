//! Finite models of path gadgets, homomorphism sets into witnessed graphs,
//! and the bipartite/tower dichotomy built from them.

pub mod bits;
pub mod dichotomy;
pub mod equiv;
pub mod gadget;
pub mod graph;
pub mod homset;
pub mod lc;
pub mod oracle;
pub mod render;
pub mod report;
pub mod suite;
pub mod transfer;

use num_bigint::BigUint;

pub use bits::BitString;
pub use gadget::{GadgetVertex, ParamPrefix, PathGadget};
pub use graph::{Coloring, VertexId, WitnessId, WitnessedGraph};
pub use homset::{ExplicitHomSet, Hom, HomProfile};
pub use report::Report;
pub use transfer::{Semiring, TransferMatrix};

/// Exact homomorphism counts.
pub type Count = BigUint;
pub type ExactTransferMatrix = TransferMatrix<BigUint>;
pub type FloatTransferMatrix = TransferMatrix<f64>;
