//! Index coding analysis: side-information graphs, rate bounds, zero-error
//! one-shot codes, linear codes over prime fields and criticality checks.

pub mod bounds;
pub mod confusion;
pub mod criticality;
pub mod error;
pub mod graph;
pub mod groupcast;
pub mod limits;
pub mod linear;
pub mod lp;
pub mod scalar;
pub mod suites;

pub use confusion::AlphabetSpec;
pub use error::{Error, Result};
pub use graph::DiGraph;
pub use limits::Limits;
pub use scalar::Scalar;

/// Exact rational used for rates and bounds.
pub type Rational = num_rational::BigRational;
