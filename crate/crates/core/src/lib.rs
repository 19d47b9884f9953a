//! Extended beta function with a Bessel-Struve kernel weight, its
//! probability distribution, and the matching Gauss and confluent
//! hypergeometric functions.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dd;
pub mod distribution;
pub mod extbeta;
pub mod hypergeometric;
pub mod error;
pub mod kernel;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::KernelOrder;
pub use quadrature::{QuadConfig, QuadResult};
pub use series::SeriesResult;
