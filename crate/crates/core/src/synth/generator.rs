use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{ConfigError, GeneratorConfig, PhaseCounts};
use super::sampler::{sample_x, x_to_price};
use crate::auction::{DayEngine, OrderEvent, QuoteContext};
use crate::book::Trade;
use crate::market::{
    Side, TickPrice, Timestamp, TradingPhase, AFTERNOON_OPEN, CALL_CLOSE, CALL_OPEN, CDA_OPEN, MARKET_CLOSE,
    MORNING_CLOSE,
};
use crate::relprice::reference_ticks;

/// A generated stock-day together with what produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticStream {
    pub events: Vec<OrderEvent>,
    pub config: GeneratorConfig,
    pub prev_close: TickPrice,
}

/// Generator for stock `index` of an ensemble: one ChaCha stream per stock
/// under the shared seed.
pub fn stock_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn sorted_times(rng: &mut impl Rng, n: usize, windows: &[(Timestamp, Timestamp)]) -> Vec<Timestamp> {
    let total: u32 = windows.iter().map(|(a, b)| b.0 - a.0).sum();
    let mut out: Vec<Timestamp> = (0..n)
        .map(|_| {
            let mut u = rng.random_range(0..total);
            for (a, b) in windows {
                let len = b.0 - a.0;
                if u < len {
                    return Timestamp(a.0 + u);
                }
                u -= len;
            }
            unreachable!("offset below the summed window length")
        })
        .collect();
    out.sort_unstable();
    out
}

fn log_uniform_size(rng: &mut impl Rng, lo: u64, hi: u64) -> u64 {
    if lo == hi {
        return lo;
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    (rng.random_range(a..=b).exp().round() as u64).clamp(lo, hi)
}

struct Day<'a, R> {
    config: &'a GeneratorConfig,
    prev_close: TickPrice,
    rng: &'a mut R,
    engine: DayEngine,
    events: Vec<OrderEvent>,
    live: Vec<u64>,
    last_trade: Option<TickPrice>,
}

impl<R: Rng> Day<'_, R> {
    fn seq(&self) -> u64 {
        self.events.len() as u64
    }

    /// The order's own reference, or a stand-in when it is missing. Samples
    /// drawn against a stand-in have no defined relative price and drop out
    /// of the analysis.
    fn reference(&self, context: &QuoteContext, side: Side) -> TickPrice {
        reference_ticks(context, side)
            .or_else(|| reference_ticks(context, side.opposite()))
            .or(self.last_trade)
            .unwrap_or(self.prev_close)
    }

    fn push(&mut self, event: OrderEvent) {
        let trades: Vec<Trade> = self.engine.apply(&event).expect("generated events are always valid");
        if let Some(t) = trades.last() {
            self.last_trade = Some(t.price);
        }
        if let Some(order) = event.order() {
            if self.engine.is_live(order.id) {
                self.live.push(order.id);
            }
        }
        self.events.push(event);
    }

    fn place(&mut self, ts: Timestamp, phase: TradingPhase) {
        self.engine.advance_to(ts);
        let context = self.engine.context();
        debug_assert_eq!(context.phase(), phase);
        let params = self.config.phase(phase);
        let side = if self.rng.random_bool(params.buy_fraction) { Side::Buy } else { Side::Sell };
        let x = sample_x(params.side(side), self.rng);
        let reference = self.reference(&context, side);
        let price = x_to_price(x, side, reference, self.engine.band());
        let size = log_uniform_size(self.rng, self.config.size_min, self.config.size_max);
        let seq = self.seq();
        self.push(OrderEvent::place(ts, seq, seq + 1, side, price, size));
    }

    /// Cancels a random resting order; does nothing if none is left.
    fn cancel(&mut self, ts: Timestamp) {
        self.engine.advance_to(ts);
        while !self.live.is_empty() {
            let i = self.rng.random_range(0..self.live.len());
            let id = self.live.swap_remove(i);
            if self.engine.is_live(id) {
                let seq = self.seq();
                self.push(OrderEvent::cancel(ts, seq, id));
                return;
            }
        }
    }
}

/// Generates one stock-day by co-running the exchange engine, so every
/// order is drawn against the reference it will actually see. Cancels are
/// confined to continuous trading and come on top of `counts.cda`
/// placements.
pub fn generate_day(
    config: &GeneratorConfig,
    prev_close: TickPrice,
    counts: PhaseCounts,
    rng: &mut impl Rng,
) -> Result<SyntheticStream, ConfigError> {
    config.validate()?;
    let tick = ((f64::from(prev_close.0) + 1.0) / f64::from(prev_close.0)).ln();
    for phase in TradingPhase::ALL {
        for (side, name) in [(Side::Buy, "buy"), (Side::Sell, "sell")] {
            let x_min = config.phase(phase).side(side).x_min;
            if x_min < tick * (1.0 - 1e-9) {
                return Err(ConfigError::Invalid {
                    key: format!("{}.{name}.x_min", phase.code()),
                    msg: format!("{x_min} is below one tick ({tick}) at the previous close"),
                });
            }
        }
    }

    let call = sorted_times(rng, counts.call, &[(CALL_OPEN, CALL_CLOSE)]);
    let cool = sorted_times(rng, counts.cool, &[(CALL_CLOSE, CDA_OPEN)]);
    let f = config.cancel_fraction;
    let cancels = (counts.cda as f64 * f / (1.0 - f)).round() as usize;
    let cda = sorted_times(rng, counts.cda + cancels, &[(CDA_OPEN, MORNING_CLOSE), (AFTERNOON_OPEN, MARKET_CLOSE)]);

    let mut day = Day {
        config,
        prev_close,
        rng,
        engine: DayEngine::new(prev_close),
        events: Vec::with_capacity(counts.total() + cancels),
        live: Vec::new(),
        last_trade: None,
    };
    for ts in call {
        day.place(ts, TradingPhase::OpeningCallAuction);
    }
    for ts in cool {
        day.place(ts, TradingPhase::CoolPeriod);
    }
    let (mut places_left, mut cancels_left) = (counts.cda, cancels);
    for ts in cda {
        let total = places_left + cancels_left;
        if day.rng.random_range(0..total) < cancels_left {
            cancels_left -= 1;
            day.cancel(ts);
        } else {
            places_left -= 1;
            day.place(ts, TradingPhase::ContinuousAuction);
        }
    }
    Ok(SyntheticStream { events: day.events, config: *config, prev_close })
}

/// `stocks` independent days under one seed, stock `i` drawing from
/// [`stock_rng`]`(config.seed, i)`.
pub fn generate_ensemble(
    config: &GeneratorConfig,
    prev_close: TickPrice,
    counts: PhaseCounts,
    stocks: usize,
) -> Result<Vec<SyntheticStream>, ConfigError> {
    (0..stocks)
        .map(|i| generate_day(config, prev_close, counts, &mut stock_rng(config.seed, i as u64)))
        .collect()
}
