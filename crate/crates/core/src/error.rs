use thiserror::Error;

use crate::quadrature::QuadResult;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by the layer that raises them; the CLI maps
/// [`Error::Parameter`] to exit code 3 and [`Error::AtPole`] to exit code 4.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // special functions
    #[error("argument {re}{im:+}i is within pole tolerance of a singular point")]
    Pole { re: f64, im: f64 },
    #[error("base {0} lies on the negative real axis (branch cut)")]
    BranchCut(f64),
    #[error("zero base in complex power")]
    ZeroBase,
    #[error("argument {0} is an integer")]
    IntegerArgument(f64),

    // distributions
    #[error("density is singular at x = {0}")]
    SingularPoint(f64),
    #[error("characteristic function decays too slowly for Fourier inversion (beta = {0})")]
    SlowDecay(f64),
    #[error("sampling is not supported for the {0} family")]
    UnsupportedFamily(&'static str),
    #[error("order {0} is not a positive integer")]
    NonIntegerOrder(f64),
    #[error("density inversion produced {value} at y = {y}")]
    NegativeDensity { y: f64, value: f64 },

    // quadrature
    #[error("quadrature tolerance unreachable within max depth (value {}, err {})", partial.value, partial.err_estimate)]
    MaxDepth { partial: Box<QuadResult> },
    #[error("integrand is not integrable at 0 (Re(s) = {re_s}, small-x order {order})")]
    Divergence { re_s: f64, order: f64 },
    #[error("invalid quadrature configuration: {0}")]
    Config(String),

    // series
    #[error("Re(s) = {re_s} is outside the series region Re(s) > {bound}")]
    ConvergenceRegion { re_s: f64, bound: f64 },
    #[error("series tail bound {bound} exceeds tolerance {tol} at cutoff {cutoff}")]
    TailTolerance { bound: f64, tol: f64, cutoff: usize },

    // zeta evaluation
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("s is at the pole {pole} (residue {residue})")]
    AtPole { pole: f64, residue: f64 },
    #[error("series and integral disagree by {discrepancy} (allowed {allowed})")]
    Disagreement { discrepancy: f64, allowed: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
