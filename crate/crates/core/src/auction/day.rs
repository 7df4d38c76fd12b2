//! Whole-day orchestration: phase transitions and per-event bookkeeping.

use std::collections::HashSet;

use crate::book::{BookState, Order, Quotes, Trade};
use crate::market::{
    compute_band, phase_of, PriceBand, TickPrice, Timestamp, TradingPhase, CALL_CLOSE, CDA_OPEN, MARKET_CLOSE,
};

use super::call::{CallAuction, Clearing};
use super::continuous::cda_step;
use super::cool::CoolPeriod;
use super::{Action, EngineError, OrderEvent, QuoteContext};

/// Displayed quotes after a change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuoteSnapshot {
    pub ts: Timestamp,
    pub quotes: Quotes,
}

/// Virtual price after an accepted call-auction event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VirtualPricePoint {
    pub ts: Timestamp,
    pub seq: u64,
    pub clearing: Option<Clearing>,
    /// False for cancels; only placements advance the sampling clock.
    pub on_placement: bool,
}

/// An accepted placement with the market state seen right before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub order: Order,
    pub seq: u64,
    pub context: QuoteContext,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rejection {
    pub ts: Timestamp,
    pub seq: u64,
    pub error: EngineError,
}

/// Everything a day produces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DayRecord {
    pub trades: Vec<Trade>,
    pub quotes: Vec<QuoteSnapshot>,
    pub virtual_prices: Vec<VirtualPricePoint>,
    pub placements: Vec<Placement>,
    pub rejections: Vec<Rejection>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Stage {
    Call(CallAuction),
    Cool(CoolPeriod),
    Continuous(BookState),
    Closed(BookState),
}

/// Single-stock, single-day exchange engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DayEngine {
    band: PriceBand,
    stage: Stage,
    used_ids: HashSet<u64>,
    last: Option<(Timestamp, u64)>,
    displayed: Quotes,
    record: DayRecord,
}

impl DayEngine {
    pub fn new(prev_close: TickPrice) -> Self {
        let band = compute_band(prev_close);
        DayEngine {
            band,
            stage: Stage::Call(CallAuction::new(band)),
            used_ids: HashSet::new(),
            last: None,
            displayed: Quotes::default(),
            record: DayRecord::default(),
        }
    }

    pub fn band(&self) -> &PriceBand {
        &self.band
    }

    pub fn record(&self) -> &DayRecord {
        &self.record
    }

    /// The phase the engine is currently in, `None` once closed.
    pub fn phase(&self) -> Option<TradingPhase> {
        match self.stage {
            Stage::Call(_) => Some(TradingPhase::OpeningCallAuction),
            Stage::Cool(_) => Some(TradingPhase::CoolPeriod),
            Stage::Continuous(_) => Some(TradingPhase::ContinuousAuction),
            Stage::Closed(_) => None,
        }
    }

    /// Resting book; `None` while the call auction is still accumulating.
    pub fn book(&self) -> Option<&BookState> {
        match &self.stage {
            Stage::Call(_) => None,
            Stage::Cool(c) => Some(c.book()),
            Stage::Continuous(b) | Stage::Closed(b) => Some(b),
        }
    }

    pub fn call_auction(&self) -> Option<&CallAuction> {
        match &self.stage {
            Stage::Call(a) => Some(a),
            _ => None,
        }
    }

    /// Whether `id` can currently be canceled without `UnknownId`.
    pub fn is_live(&self, id: u64) -> bool {
        match &self.stage {
            Stage::Call(a) => a.orders().any(|o| o.id == id),
            Stage::Cool(c) => c.book().contains(id) || c.queued().iter().any(|o| o.id == id),
            Stage::Continuous(b) | Stage::Closed(b) => b.contains(id),
        }
    }

    /// Reference information for an order arriving now.
    pub fn context(&self) -> QuoteContext {
        match &self.stage {
            Stage::Call(a) => QuoteContext::CallAuction { virtual_price: a.virtual_price().map(|c| c.price) },
            Stage::Cool(c) => QuoteContext::CoolPeriod(c.frozen()),
            Stage::Continuous(b) | Stage::Closed(b) => QuoteContext::Continuous(b.best_quotes()),
        }
    }

    fn show(&mut self, ts: Timestamp, quotes: Quotes) {
        if quotes != self.displayed {
            self.displayed = quotes;
            self.record.quotes.push(QuoteSnapshot { ts, quotes });
        }
    }

    /// Performs every phase transition scheduled at or before `ts`.
    pub fn advance_to(&mut self, ts: Timestamp) {
        loop {
            let stage = std::mem::replace(&mut self.stage, Stage::Closed(BookState::new(self.band)));
            self.stage = match stage {
                Stage::Call(auction) if ts >= CALL_CLOSE => {
                    let outcome = auction.close(CALL_CLOSE);
                    self.record.trades.extend(outcome.trades);
                    let cool = CoolPeriod::new(outcome.book);
                    self.show(CALL_CLOSE, cool.frozen().quotes());
                    Stage::Cool(cool)
                }
                Stage::Cool(cool) if ts >= CDA_OPEN => {
                    let (book, trades) = cool.open_continuous(CDA_OPEN);
                    self.record.trades.extend(trades);
                    self.show(CDA_OPEN, book.best_quotes());
                    Stage::Continuous(book)
                }
                Stage::Continuous(book) if ts >= MARKET_CLOSE => Stage::Closed(book),
                other => {
                    self.stage = other;
                    return;
                }
            };
        }
    }

    fn reject(&mut self, event: &OrderEvent, error: EngineError) -> EngineError {
        log::debug!("rejected event at {} seq {}: {error}", event.ts, event.seq);
        self.record.rejections.push(Rejection { ts: event.ts, seq: event.seq, error });
        error
    }

    /// Applies one event. A rejected event leaves the book untouched and is
    /// recorded in [`DayRecord::rejections`].
    pub fn apply(&mut self, event: &OrderEvent) -> Result<Vec<Trade>, EngineError> {
        if let Some((last_ts, last_seq)) = self.last {
            if event.sort_key() < (last_ts, last_seq) {
                let err = EngineError::Unsorted { ts: event.ts, seq: event.seq, last_ts, last_seq };
                return Err(self.reject(event, err));
            }
        }
        self.last = Some(event.sort_key());
        self.advance_to(event.ts);
        if phase_of(event.ts).is_none() {
            return Err(self.reject(event, EngineError::NotTradingHours(event.ts)));
        }
        match self.step(event) {
            Ok(trades) => Ok(trades),
            Err(e) => Err(self.reject(event, e)),
        }
    }

    fn step(&mut self, event: &OrderEvent) -> Result<Vec<Trade>, EngineError> {
        let placed = event.order();
        if let Some(order) = placed {
            if self.used_ids.contains(&order.id) {
                return Err(EngineError::DuplicateId(order.id));
            }
            if order.size == 0 {
                return Err(EngineError::ZeroSize(order.id));
            }
            if !self.band.contains(order.price) {
                return Err(EngineError::PriceOutsideBand(order.price));
            }
        }
        let context = self.context();
        let mut shown = None;
        let trades = match &mut self.stage {
            Stage::Call(auction) => {
                let clearing = match event.action {
                    Action::Place { .. } => auction.place(placed.expect("placement"))?,
                    Action::Cancel { id } => auction.cancel(id, event.ts)?,
                };
                self.record.virtual_prices.push(VirtualPricePoint {
                    ts: event.ts,
                    seq: event.seq,
                    clearing,
                    on_placement: placed.is_some(),
                });
                Vec::new()
            }
            Stage::Cool(cool) => {
                cool.step(event)?;
                Vec::new()
            }
            Stage::Continuous(book) => {
                let trades = cda_step(book, event)?;
                shown = Some(book.best_quotes());
                trades
            }
            Stage::Closed(_) => return Err(EngineError::NotTradingHours(event.ts)),
        };
        if let Some(quotes) = shown {
            self.show(event.ts, quotes);
        }
        if let Some(order) = placed {
            self.used_ids.insert(order.id);
            self.record.placements.push(Placement { order, seq: event.seq, context });
        }
        self.record.trades.extend_from_slice(&trades);
        Ok(trades)
    }

    /// Runs any outstanding transitions through the close and returns the
    /// day's record with the final book.
    pub fn finish(mut self) -> (DayRecord, BookState) {
        self.advance_to(MARKET_CLOSE);
        let book = match self.stage {
            Stage::Closed(book) => book,
            _ => unreachable!("advance_to(MARKET_CLOSE) always closes the day"),
        };
        (self.record, book)
    }
}

/// Replays a sorted event stream for one stock-day.
pub fn run_day<'a>(events: impl IntoIterator<Item = &'a OrderEvent>, prev_close: TickPrice) -> (DayRecord, BookState) {
    let mut engine = DayEngine::new(prev_close);
    for event in events {
        let _ = engine.apply(event);
    }
    engine.finish()
}
