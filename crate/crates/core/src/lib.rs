//! Fractional (reciprocally weighted) counting of integer partitions.
//!
//! Each partition of `n` earns credit `1/(p1 p2 ... pk)`; `b(n)` is the total
//! credit and `b(n, k)` the credit of partitions with largest part `k`. The
//! crate computes these exactly and in `f64`, cross-checks them against brute
//! force and generating functions, and estimates `lim b(n)/n = exp(-gamma)`.
//!
//! `no_std`; needs `alloc`.
#![no_std]

extern crate alloc;

pub mod asymptotics;
pub mod error;
pub mod frac_dp;
pub mod gf;
pub mod mertens;
pub mod partition;
pub mod series;

pub use error::{Error, Result};
pub use frac_dp::{
    b_series_exact, b_series_float, bnk_exact, bnk_float, ratio_series, sample_f, BnSeries,
    FracTriangle, FxSample, Resolution,
};
pub use partition::{
    brute_force_sum, enumerate_partitions, p_table, weight, Partition, WeightScheme,
};
pub use series::{ExactSeries, PowerSeries, Scalar};
