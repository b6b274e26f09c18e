//! Construction and certification of genuinely nonlocal sets of orthogonal
//! fully product quantum states.
//!
//! A set of orthogonal multipartite product states is *genuinely nonlocal*
//! when it is locally indistinguishable for every bipartition of the parties.
//! This crate builds such sets (bipartite grid families, tripartite stacks,
//! star/chain/tri-star compositions and a general graph-based composer) and
//! certifies them by solving for every orthogonality-preserving first-round
//! measurement as a linear null-space problem per bipartition side.

pub mod constructors;
pub mod error;
pub mod numerics;
pub mod partition_graph;
pub mod states;
pub mod verifier;

pub use error::{Error, Result};
pub use states::{OrderedBasis, PartyDims, ProductState, StateSet};
