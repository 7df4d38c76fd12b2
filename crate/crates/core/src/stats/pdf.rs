use super::StatsError;

/// Width of the default display bins.
pub const DISPLAY_BIN_WIDTH: f64 = 0.002;

/// Histogram bin layout.
#[derive(Debug, Clone, PartialEq)]
pub enum Binning {
    /// `bins` equal-width bins over `[lo, hi]`.
    Linear { lo: f64, hi: f64, bins: usize },
    /// Arbitrary increasing edges.
    Edges(Vec<f64>),
}

impl Default for Binning {
    /// 201 bins of width 0.002 centred on zero, covering `[-0.201, 0.201]`
    /// and so the whole relative-price domain. The zero atom sits in the
    /// middle of bin 100.
    fn default() -> Self {
        let half = 100.5 * DISPLAY_BIN_WIDTH;
        Binning::Linear { lo: -half, hi: half, bins: 201 }
    }
}

impl Binning {
    /// `per_decade` logarithmically spaced bins over `[lo, hi]`, `lo > 0`.
    pub fn log(lo: f64, hi: f64, per_decade: usize) -> Result<Self, StatsError> {
        if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
            return Err(StatsError::InvalidRange { lo, hi });
        }
        if per_decade == 0 {
            return Err(StatsError::InvalidBinning("zero bins per decade"));
        }
        let decades = (hi / lo).log10();
        let n = ((decades * per_decade as f64).round() as usize).max(1);
        let ratio = hi / lo;
        let mut edges: Vec<f64> = (0..=n).map(|i| lo * ratio.powf(i as f64 / n as f64)).collect();
        edges[0] = lo;
        edges[n] = hi;
        Ok(Binning::Edges(edges))
    }

    fn validate(&self) -> Result<(), StatsError> {
        match self {
            Binning::Linear { lo, hi, bins } => {
                if *bins == 0 || !lo.is_finite() || !hi.is_finite() || hi <= lo {
                    return Err(StatsError::InvalidBinning("linear binning needs lo < hi and bins > 0"));
                }
            }
            Binning::Edges(e) => {
                if e.len() < 2 || e.iter().any(|x| !x.is_finite()) || e.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(StatsError::InvalidBinning("edges must be finite and strictly increasing"));
                }
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> Vec<f64> {
        match self {
            Binning::Linear { lo, hi, bins } => {
                let w = (hi - lo) / *bins as f64;
                (0..=*bins).map(|i| if i == *bins { *hi } else { lo + w * i as f64 }).collect()
            }
            Binning::Edges(e) => e.clone(),
        }
    }

    /// Bin index of `x`; the top edge belongs to the last bin.
    fn locate(&self, edges: &[f64], x: f64) -> Option<usize> {
        let n = edges.len() - 1;
        if !(x >= edges[0] && x <= edges[n]) {
            return None;
        }
        let idx = match self {
            Binning::Linear { lo, hi, bins } => ((x - lo) / ((hi - lo) / *bins as f64)).floor() as usize,
            Binning::Edges(_) => edges.partition_point(|&e| e <= x).saturating_sub(1),
        };
        // guard against rounding at interior edges
        let mut i = idx.min(n - 1);
        while i > 0 && x < edges[i] {
            i -= 1;
        }
        while i + 1 < n && x >= edges[i + 1] {
            i += 1;
        }
        Some(i)
    }
}

/// Histogram density estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct PdfEstimate {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `counts[i] / (in_range * width_i)`.
    pub densities: Vec<f64>,
    pub sample_count: usize,
    pub in_range: usize,
    /// Samples exactly equal to zero, reported separately from the bins.
    pub zero_count: usize,
}

impl PdfEstimate {
    /// Fraction of all samples sitting exactly at zero.
    pub fn zero_atom(&self) -> f64 {
        self.zero_count as f64 / self.sample_count as f64
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `sum(density * width)`; one whenever any sample is in range.
    pub fn integral(&self) -> f64 {
        self.densities.iter().zip(self.widths()).map(|(d, w)| d * w).sum()
    }
}

/// Normalised histogram of `samples` under `binning`. Samples outside the
/// bins are counted in `sample_count` but not in the density.
pub fn estimate_pdf(samples: &[f64], binning: &Binning) -> Result<PdfEstimate, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::EmptySample);
    }
    binning.validate()?;
    let edges = binning.edges();
    let mut counts = vec![0u64; edges.len() - 1];
    let mut zero_count = 0;
    for &x in samples {
        if x == 0.0 {
            zero_count += 1;
        }
        if let Some(i) = binning.locate(&edges, x) {
            counts[i] += 1;
        }
    }
    let in_range: u64 = counts.iter().sum();
    if in_range == 0 {
        return Err(StatsError::NoSamplesInRange);
    }
    let densities = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| c as f64 / (in_range as f64 * (w[1] - w[0])))
        .collect();
    Ok(PdfEstimate {
        edges,
        counts,
        densities,
        sample_count: samples.len(),
        in_range: in_range as usize,
        zero_count,
    })
}
