use std::fmt;

use wsat_core::{ConstructionError, GraphError, PercolationError, ReproduceError, SolveError};

/// Bad input, as opposed to a computation that ran and failed.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn is_usage(e: &(dyn std::error::Error + 'static)) -> bool {
    if e.is::<Usage>() || e.is::<GraphError>() || e.is::<std::io::Error>() || e.is::<serde_json::Error>() {
        return true;
    }
    if let Some(p) = e.downcast_ref::<PercolationError>() {
        return matches!(p, PercolationError::HostTooLarge(..) | PercolationError::HostTooSmall { .. });
    }
    if let Some(s) = e.downcast_ref::<SolveError>() {
        return match s {
            SolveError::CapReached { .. } => false,
            SolveError::Percolation(p) => is_usage(p),
            _ => true,
        };
    }
    if let Some(c) = e.downcast_ref::<ConstructionError>() {
        return !matches!(c, ConstructionError::NoWitness(..));
    }
    if let Some(r) = e.downcast_ref::<ReproduceError>() {
        return matches!(
            r,
            ReproduceError::UnknownClaim(..)
                | ReproduceError::UnknownParam(_)
                | ReproduceError::BadParam { .. }
                | ReproduceError::Graph(_)
        );
    }
    false
}

/// 2 for usage errors anywhere in the chain, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(is_usage) {
        2
    } else {
        1
    }
}
