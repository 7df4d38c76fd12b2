use std::collections::VecDeque;

use crate::book::Quotes;
use crate::market::log_price;

use super::StatsError;

/// Number of absolute mid-price returns averaged into one volatility value.
pub const VOLATILITY_WINDOW: usize = 50;

/// Log spread `ln(ask) - ln(bid)` in yuan terms.
pub fn spread(quotes: &Quotes) -> Result<f64, StatsError> {
    match (quotes.best_bid, quotes.best_ask) {
        (Some(bid), Some(ask)) => Ok(log_price(ask) - log_price(bid)),
        _ => Err(StatsError::MissingQuote),
    }
}

/// Mean of the log best ask and log best bid.
pub fn mid_price(quotes: &Quotes) -> Result<f64, StatsError> {
    match (quotes.best_bid, quotes.best_ask) {
        (Some(bid), Some(ask)) => Ok((log_price(ask).value() + log_price(bid).value()) / 2.0),
        _ => Err(StatsError::MissingQuote),
    }
}

/// Rolling mean of `|m(i) - m(i-1)|` over the last `window` returns.
///
/// Element `k` of the output is the value at observation `window + k`.
pub fn volatility(mids: &[f64], window: usize) -> Result<Vec<f64>, StatsError> {
    if window == 0 || mids.len() < window + 1 {
        return Err(StatsError::InsufficientHistory { have: mids.len(), need: window + 1 });
    }
    let returns: Vec<f64> = mids.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    Ok(returns
        .windows(window)
        .map(|w| w.iter().sum::<f64>() / window as f64)
        .collect())
}

/// Streaming form of [`volatility`]; yields identical values.
#[derive(Debug, Clone)]
pub struct RollingVolatility {
    window: usize,
    last: Option<f64>,
    returns: VecDeque<f64>,
}

impl RollingVolatility {
    pub fn new(window: usize) -> Self {
        assert!(window > 0, "volatility window must be positive");
        RollingVolatility { window, last: None, returns: VecDeque::with_capacity(window + 1) }
    }

    /// Adds a mid-price observation; returns the volatility once `window`
    /// returns are available.
    pub fn push(&mut self, mid: f64) -> Option<f64> {
        if let Some(prev) = self.last.replace(mid) {
            self.returns.push_back((mid - prev).abs());
            if self.returns.len() > self.window {
                self.returns.pop_front();
            }
        }
        self.current()
    }

    pub fn current(&self) -> Option<f64> {
        (self.returns.len() == self.window).then(|| self.returns.iter().sum::<f64>() / self.window as f64)
    }
}
