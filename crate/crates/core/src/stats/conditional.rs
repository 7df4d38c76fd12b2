use std::fmt;

use crate::relprice::RelPriceSample;

use super::pdf::{estimate_pdf, Binning, PdfEstimate};
use super::StatsError;

/// Context variable used to condition the relative-price density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContextKey {
    Spread,
    Volatility,
}

impl ContextKey {
    pub fn value(self, sample: &RelPriceSample) -> Option<f64> {
        match self {
            ContextKey::Spread => sample.spread_before,
            ContextKey::Volatility => sample.vol_before,
        }
    }
}

impl fmt::Display for ContextKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContextKey::Spread => "spread",
            ContextKey::Volatility => "volatility",
        })
    }
}

impl std::str::FromStr for ContextKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spread" => Ok(ContextKey::Spread),
            "volatility" | "vol" => Ok(ContextKey::Volatility),
            other => Err(format!("unknown context key `{other}` (expected spread or volatility)")),
        }
    }
}

/// Sizes of `groups` near-equal groups; the first `n % groups` get one extra.
pub fn group_sizes(n: usize, groups: usize) -> Vec<usize> {
    let base = n / groups;
    let extra = n % groups;
    (0..groups).map(|g| base + usize::from(g < extra)).collect()
}

/// One quantile group of samples ordered by context value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalGroup {
    pub context_lo: f64,
    pub context_hi: f64,
    pub xs: Vec<f64>,
    pub pdf: PdfEstimate,
}

/// Sorts samples by the context value (stable, so equal values keep input
/// order), cuts them into `groups` equal-count groups and estimates one
/// density per group.
pub fn conditional_pdfs(
    samples: &[RelPriceSample],
    key: ContextKey,
    groups: usize,
    binning: &Binning,
) -> Result<Vec<ConditionalGroup>, StatsError> {
    if groups == 0 || samples.len() < groups {
        return Err(StatsError::EmptySample);
    }
    let mut keyed = Vec::with_capacity(samples.len());
    for (index, s) in samples.iter().enumerate() {
        let v = key.value(s).ok_or(StatsError::MissingContext { index, key })?;
        keyed.push((v, s.x));
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut out = Vec::with_capacity(groups);
    let mut start = 0;
    for size in group_sizes(keyed.len(), groups) {
        let chunk = &keyed[start..start + size];
        start += size;
        let xs: Vec<f64> = chunk.iter().map(|p| p.1).collect();
        let pdf = estimate_pdf(&xs, binning)?;
        out.push(ConditionalGroup {
            context_lo: chunk[0].0,
            context_hi: chunk[size - 1].0,
            xs,
            pdf,
        });
    }
    Ok(out)
}
