//! Library for embedding planar shortest-path metrics into L1 with bounded
//! distortion on same-face vertex pairs, together with the flow-side
//! verification machinery (cut-condition checking, concurrent flow,
//! distortion measurement).
//!
//! Everything metric-valued is computed in exact rational arithmetic;
//! floating point appears only inside the randomized low-diameter
//! partition sampling.

pub mod bits;
pub mod central;
pub mod cuts;
pub mod error;
pub mod exact;
pub mod extend;
pub mod flow;
pub mod generate;
pub mod geodesic;
pub mod graph;
pub mod instance;
pub mod kpr;
pub mod metric;
pub mod pipeline;
pub mod rational;
pub mod report;
pub mod simplex;
pub mod single_source;
pub mod supports;

pub use error::Error;
pub use rational::Rat;
