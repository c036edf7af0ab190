use thiserror::Error;

use crate::params::Mode;

/// Message used whenever a Frobenius-type operation is asked to work with
/// `gcd(l, r^vee) != 1`.
pub const TWISTED_TARGET_MESSAGE: &str = "l divisible by r^∨: twisted target out of scope";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Lie type {lie_type}{rank}: {reason}")]
    InvalidType {
        lie_type: String,
        rank: usize,
        reason: String,
    },

    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("{0}")]
    WrongMode(String),

    #[error("{}", TWISTED_TARGET_MESSAGE)]
    TwistedTarget,

    #[error("monomial is not dominant: {0}")]
    NotDominant(String),

    #[error("weight is not dominant: {0:?}")]
    NonDominantWeight(Vec<i64>),

    #[error("invalid root-of-unity order s = {0}")]
    InvalidOrder(i64),

    #[error("malformed epsilon*-exponent {t} (allowed: {allowed})")]
    MalformedStarExponent { t: i64, allowed: String },

    #[error("gamma = -1 requires epsilon_{node} of even order")]
    InvalidGamma { node: usize },

    #[error("not a nonnegative combination of characters: {0}")]
    NotACharacter(String),

    #[error("character computation inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
