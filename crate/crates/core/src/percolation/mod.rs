//! The `F`-bootstrap percolation engine.

mod certificate;
mod closure;
pub(crate) mod embed;

pub use certificate::{Certificate, Replay, Step};
pub use closure::{addable_edges, closure, closure_random_order, is_weakly_saturated};
pub use embed::{anchored_embedding, search_count, HOST_LIMIT};
