//! Self-normalized inference for time series of metric-space valued objects.

pub mod changepoint;
pub mod dgp;
pub mod error;
pub mod experiment;
pub mod io;
pub mod null_dist;
pub mod prefix;
pub mod rng;
pub mod space;
pub mod two_sample;

pub use error::{Error, Result};
