use core::fmt;

/// Failure modes shared by every computation in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Partition enumeration was asked for an `n` above the configured cap.
    EnumerationCap { n: usize, cap: usize },
    /// An exact-rational table was asked for an `N` above the configured cap.
    ExactCap { n: usize, cap: usize },
    /// Two series with different truncation orders were combined.
    OrderMismatch { left: usize, right: usize },
    /// Inversion of a series whose constant term is zero.
    ZeroConstantTerm,
    /// Exponential of a series whose constant term is not zero.
    ExpConstantTerm,
    /// Logarithm of a series whose constant term is not one.
    LogConstantTerm,
    /// Column index `k` outside `1..=order`.
    ColumnOutOfRange { k: usize, order: usize },
    /// Grid step that is not of the form `1/m` with `m` a positive integer.
    Resolution,
    /// Sampling `n` is smaller than the number of grid steps.
    GridTooFine { n: usize, steps: usize },
    /// Two-point fit with coinciding abscissae.
    SingularFit,
    /// Quadrature over too few grid points.
    TooFewSamples { got: usize, need: usize },
    /// The direct and telescoped partial sums disagreed at index `m`.
    TelescopeMismatch { m: usize },
    /// A size argument that must be positive (or otherwise bounded) was not.
    Argument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EnumerationCap { n, cap } => {
                write!(
                    f,
                    "enumeration budget exceeded: n = {n} is above the cap {cap}"
                )
            }
            Error::ExactCap { n, cap } => {
                write!(
                    f,
                    "exact budget exceeded: N = {n} is above the exact cap {cap}"
                )
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "truncation order mismatch: {left} vs {right}")
            }
            Error::ZeroConstantTerm => f.write_str("series has zero constant term"),
            Error::ExpConstantTerm => f.write_str("exp requires a zero constant term"),
            Error::LogConstantTerm => f.write_str("log requires constant term 1"),
            Error::ColumnOutOfRange { k, order } => {
                write!(f, "column k = {k} outside 1..={order}")
            }
            Error::Resolution => f.write_str("resolution must be 1/m for a positive integer m"),
            Error::GridTooFine { n, steps } => {
                write!(f, "n = {n} is smaller than the {steps} grid steps")
            }
            Error::SingularFit => f.write_str("ansatz fit needs two distinct indices"),
            Error::TooFewSamples { got, need } => {
                write!(f, "quadrature needs at least {need} grid points, got {got}")
            }
            Error::TelescopeMismatch { m } => {
                write!(f, "partial sum and telescoped form disagree at m = {m}")
            }
            Error::Argument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
