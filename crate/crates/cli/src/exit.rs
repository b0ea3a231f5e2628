//! Process exit codes, one per error kind.

use pebblekit_core::Error;

pub const OK: i32 = 0;
pub const CHECK_FAILED: i32 = 1;
/// Used by clap for bad command lines.
pub const USAGE: i32 = 2;
pub const IO: i32 = 3;
pub const OTHER: i32 = 9;

pub fn for_core(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 10,
        Error::EmptyGraph
        | Error::VertexOutOfRange { .. }
        | Error::SelfLoop(_)
        | Error::DuplicateEdge(..)
        | Error::BadWeight { .. } => 11,
        Error::DisconnectedGraph => 12,
        Error::ConfigLength { .. } | Error::NotAnEdge { .. } | Error::InsufficientPebbles { .. } => 13,
        Error::ZeroK => 14,
        Error::BudgetExceeded { .. } => 20,
        Error::BlockOracleBudgetExceeded { .. } => 21,
        Error::StateTooWide => 22,
        Error::InvalidLowerBound(_) => 23,
        Error::NormalizationFailed => 24,
        Error::NotATree => 30,
        Error::NotCliqueBlock => 31,
        Error::NonUniformWeights => 32,
        Error::DiameterTooLarge(_) => 33,
        Error::SpecTooSmall(_) => 34,
        Error::PreconditionViolated(_) => 35,
    }
}

pub fn for_error(e: &anyhow::Error) -> i32 {
    if let Some(core) = e.downcast_ref::<Error>() {
        return for_core(core);
    }
    if e.downcast_ref::<std::io::Error>().is_some() {
        return IO;
    }
    OTHER
}
