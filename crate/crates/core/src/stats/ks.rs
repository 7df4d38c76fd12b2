use super::pdf::PdfEstimate;
use super::StatsError;

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|` on raw samples.
/// Ties are handled by stepping both empirical CDFs past each distinct value
/// before comparing.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = if a[i].total_cmp(&b[j]).is_le() { a[i] } else { b[j] };
        while i < a.len() && a[i].total_cmp(&x).is_le() {
            i += 1;
        }
        while j < b.len() && b[j].total_cmp(&x).is_le() {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Asymptotic two-sample critical value at significance `alpha`:
/// `sqrt(-ln(alpha / 2) / 2) * sqrt((n + m) / (n m))`.
pub fn ks_critical_value(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let (n, m) = (n as f64, m as f64);
    c * ((n + m) / (n * m)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsComparison {
    pub statistic: f64,
    pub critical: f64,
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
}

impl KsComparison {
    /// True when the same-distribution hypothesis survives at `alpha`.
    pub fn passes(&self) -> bool {
        self.statistic <= self.critical
    }
}

pub fn compare_samples(a: &[f64], b: &[f64], alpha: f64) -> Result<KsComparison, StatsError> {
    let statistic = ks_statistic(a, b)?;
    Ok(KsComparison {
        statistic,
        critical: ks_critical_value(a.len(), b.len(), alpha),
        n: a.len(),
        m: b.len(),
        alpha,
    })
}

/// KS distance between two histograms on identical edges, evaluated at the
/// bin edges. A lower bound of the raw-sample statistic.
pub fn compare_pdfs(a: &PdfEstimate, b: &PdfEstimate) -> Result<f64, StatsError> {
    if a.in_range == 0 || b.in_range == 0 {
        return Err(StatsError::EmptySample);
    }
    if a.edges != b.edges {
        return Err(StatsError::MismatchedBins);
    }
    let (mut ca, mut cb, mut d) = (0u64, 0u64, 0.0f64);
    for (x, y) in a.counts.iter().zip(&b.counts) {
        ca += x;
        cb += y;
        d = d.max((ca as f64 / a.in_range as f64 - cb as f64 / b.in_range as f64).abs());
    }
    Ok(d)
}
