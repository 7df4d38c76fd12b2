use super::pdf::{estimate_pdf, Binning, PdfEstimate};
use super::StatsError;

/// Least-squares fit of `ln f(x) = -(1 + alpha) ln x + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub alpha: f64,
    /// Standard error of the fitted slope, which is also that of `alpha`.
    pub stderr: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub r2: f64,
    /// Populated bins entering the regression.
    pub bins: usize,
    /// Samples inside the fit range.
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub bins_per_decade: usize,
    pub min_populated: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { bins_per_decade: 20, min_populated: 5 }
    }
}

/// Re-bins the samples inside `[x_lo, x_hi]` on a logarithmic grid and fits
/// the power law to the binned log density. Zero and negative samples never
/// fall into the grid.
pub fn fit_power_law(samples: &[f64], x_lo: f64, x_hi: f64, opts: &FitOptions) -> Result<PowerLawFit, StatsError> {
    let binning = Binning::log(x_lo, x_hi, opts.bins_per_decade)?;
    let pdf = match estimate_pdf(samples, &binning) {
        Ok(pdf) => pdf,
        Err(StatsError::EmptySample | StatsError::NoSamplesInRange) => return Err(StatsError::EmptyBins),
        Err(e) => return Err(e),
    };
    fit_pdf(&pdf, x_lo, x_hi, opts.min_populated)
}

/// Fits the power law to the populated bins of an existing estimate lying
/// entirely inside `[x_lo, x_hi]`, evaluated at each bin's geometric centre.
pub fn fit_pdf(pdf: &PdfEstimate, x_lo: f64, x_hi: f64, min_populated: usize) -> Result<PowerLawFit, StatsError> {
    if !(x_lo > 0.0 && x_hi > x_lo) {
        return Err(StatsError::InvalidRange { lo: x_lo, hi: x_hi });
    }
    let slack = 1e-12 * x_hi;
    let mut samples = 0usize;
    let points: Vec<(f64, f64)> = pdf
        .edges
        .windows(2)
        .zip(pdf.counts.iter().zip(&pdf.densities))
        .filter(|(w, _)| w[0] >= x_lo - slack && w[1] <= x_hi + slack && w[0] > 0.0)
        .filter(|(_, (&c, _))| c > 0)
        .map(|(w, (&c, &d))| {
            samples += c as usize;
            ((w[0] * w[1]).sqrt().ln(), d.ln())
        })
        .collect();
    if points.is_empty() {
        return Err(StatsError::EmptyBins);
    }
    if points.len() < min_populated.max(3) {
        return Err(StatsError::InsufficientRange { populated: points.len(), needed: min_populated.max(3) });
    }

    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    let r2 = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };

    Ok(PowerLawFit {
        alpha: -slope - 1.0,
        stderr,
        x_lo,
        x_hi,
        r2,
        bins: points.len(),
        samples,
    })
}
