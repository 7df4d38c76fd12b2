//! Relative logarithmic price of each placed order.
//!
//! For a buy `x = ln p - ln r_buy`, for a sell `x = ln r_sell - ln p`, so a
//! larger `x` is more aggressive on either side. The references are the
//! virtual price during the call auction, the frozen best quotes during the
//! cool period and the live best quotes during continuous trading, each on
//! the order's own side.

use thiserror::Error;

use crate::auction::{DayRecord, Placement, QuoteContext};
use crate::book::{Order, Quotes};
use crate::market::{log_price, LogPrice, Side, TickPrice, Timestamp, TradingPhase};
use crate::stats::{mid_price, spread, RollingVolatility};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelPriceSample {
    pub x: f64,
    pub side: Side,
    pub phase: TradingPhase,
    pub ts: Timestamp,
    pub spread_before: Option<f64>,
    pub vol_before: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RelPriceError {
    #[error("no {side} reference price in {phase}")]
    MissingReference { phase: TradingPhase, side: Side },
}

/// Reference log prices: `buy` for buy orders, `sell` for sell orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct References {
    pub buy: Option<LogPrice>,
    pub sell: Option<LogPrice>,
}

impl References {
    fn from_ticks(buy: Option<TickPrice>, sell: Option<TickPrice>) -> Self {
        References { buy: buy.map(log_price), sell: sell.map(log_price) }
    }

    pub fn for_side(&self, side: Side) -> Option<LogPrice> {
        match side {
            Side::Buy => self.buy,
            Side::Sell => self.sell,
        }
    }
}

/// Reference tick prices for an order on `side`.
pub fn reference_ticks(context: &QuoteContext, side: Side) -> Option<TickPrice> {
    match *context {
        QuoteContext::CallAuction { virtual_price } => virtual_price,
        QuoteContext::CoolPeriod(f) => f.quotes().same_side(side),
        QuoteContext::Continuous(q) => q.same_side(side),
    }
}

/// Both references for the phase; fails if the one `side` needs is missing.
pub fn reference_for(context: &QuoteContext, side: Side) -> Result<References, RelPriceError> {
    let refs = match *context {
        QuoteContext::CallAuction { virtual_price } => References::from_ticks(virtual_price, virtual_price),
        QuoteContext::CoolPeriod(f) => References::from_ticks(f.best_bid, f.best_ask),
        QuoteContext::Continuous(q) => References::from_ticks(q.best_bid, q.best_ask),
    };
    match refs.for_side(side) {
        Some(_) => Ok(refs),
        None => Err(RelPriceError::MissingReference { phase: context.phase(), side }),
    }
}

/// Relative price of `order` against `refs`, without context annotations.
pub fn relative_price(order: &Order, phase: TradingPhase, refs: &References) -> Result<RelPriceSample, RelPriceError> {
    let reference = refs
        .for_side(order.side)
        .ok_or(RelPriceError::MissingReference { phase, side: order.side })?;
    let p = log_price(order.price);
    let x = match order.side {
        Side::Buy => p - reference,
        Side::Sell => reference - p,
    };
    Ok(RelPriceSample {
        x,
        side: order.side,
        phase,
        ts: order.ts,
        spread_before: None,
        vol_before: None,
    })
}

/// Attaches the pre-placement spread and volatility.
pub fn annotate_context(sample: RelPriceSample, spread: Option<f64>, vol: Option<f64>) -> RelPriceSample {
    RelPriceSample { spread_before: spread, vol_before: vol, ..sample }
}

/// Turns a day's placements into samples in placement order.
///
/// Placements without a reference are dropped. The volatility clock ticks
/// once per continuous-auction placement: the mid price seen just before
/// each placement is one observation, and a placement carries a volatility
/// once `window` returns precede it.
#[derive(Debug, Clone)]
pub struct SampleBuilder {
    vol: RollingVolatility,
}

impl SampleBuilder {
    pub fn new(window: usize) -> Self {
        SampleBuilder { vol: RollingVolatility::new(window) }
    }

    pub fn push(&mut self, placement: &Placement) -> Result<RelPriceSample, RelPriceError> {
        let context = &placement.context;
        let quotes: Option<Quotes> = context.quotes();
        let vol = match context {
            QuoteContext::Continuous(q) => mid_price(q).ok().and_then(|m| self.vol.push(m)),
            _ => None,
        };
        let refs = reference_for(context, placement.order.side)?;
        let sample = relative_price(&placement.order, context.phase(), &refs)?;
        let spread = quotes.and_then(|q| spread(&q).ok());
        Ok(annotate_context(sample, spread, vol))
    }
}

/// All well-defined samples of one replayed day.
pub fn samples_from_day(record: &DayRecord, window: usize) -> Vec<RelPriceSample> {
    let mut builder = SampleBuilder::new(window);
    record.placements.iter().filter_map(|p| builder.push(p).ok()).collect()
}
