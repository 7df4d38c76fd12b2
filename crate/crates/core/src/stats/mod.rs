//! Measurement suite over relative-price samples and quote histories.

mod conditional;
mod ks;
mod pdf;
mod powerlaw;
mod quotes;

use thiserror::Error;

pub use conditional::{conditional_pdfs, group_sizes, ConditionalGroup, ContextKey};
pub use ks::{compare_pdfs, compare_samples, ks_critical_value, ks_statistic, KsComparison};
pub use pdf::{estimate_pdf, Binning, PdfEstimate, DISPLAY_BIN_WIDTH};
pub use powerlaw::{fit_pdf, fit_power_law, FitOptions, PowerLawFit};
pub use quotes::{mid_price, spread, volatility, RollingVolatility, VOLATILITY_WINDOW};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("no samples")]
    EmptySample,
    #[error("no samples fall inside the binning range")]
    NoSamplesInRange,
    #[error("invalid binning: {0}")]
    InvalidBinning(&'static str),
    #[error("invalid fit range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("only {populated} populated bins in the fit range, need {needed}")]
    InsufficientRange { populated: usize, needed: usize },
    #[error("no samples in the fit range")]
    EmptyBins,
    #[error("best bid or best ask missing")]
    MissingQuote,
    #[error("{have} mid-price observations, need at least {need}")]
    InsufficientHistory { have: usize, need: usize },
    #[error("sample {index} has no {key} context")]
    MissingContext { index: usize, key: ContextKey },
    #[error("binned densities have different edges")]
    MismatchedBins,
}
