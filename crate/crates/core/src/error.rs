//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rotation system does not describe a planar embedding (V - E + F = {euler}, expected 2)")]
    NonPlanarRotation { euler: i64 },

    #[error("graph is not connected")]
    Disconnected,

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("cut condition violated: cut {witness:?} has capacity {capacity} < separated demand {demand}")]
    CutConditionViolated {
        witness: Vec<usize>,
        capacity: String,
        demand: String,
    },

    #[error("no feasible solution: {0}")]
    Infeasible(String),

    #[error("demand union with the supply graph is not planar: {0}")]
    NotPlanarUnion(String),

    #[error("segment block structure invalid: {0}")]
    BlockStructureInvalid(String),

    #[error("support regions of faces {f1} and {f2} cross")]
    LaminarityViolated { f1: usize, f2: usize },

    #[error("recursion depth exceeded")]
    RecursionDepthExceeded,

    #[error("geodesic pair spans segments at cyclic distance >= 3 (faces {face}, segments {i} and {j})")]
    SpanTooFar { face: usize, i: usize, j: usize },

    #[error("cut is not a contiguous arc of the face cycle: {0}")]
    CutNotContiguous(String),

    #[error("cycle {0:?} is not alpha-loose")]
    NotAlphaLoose(Vec<usize>),

    #[error("subdivision would create more than {cap} vertices")]
    SubdivisionOverflow { cap: usize },

    #[error("instance has no demands")]
    NoDemands,

    #[error("invalid generator parameters: {0}")]
    ParamsInvalid(String),

    #[error("instance parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
