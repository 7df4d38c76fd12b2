//! The three-phase trading-day state machine.
//!
//! * [`call`]: 9:15-9:25 order accumulation with a running virtual price
//!   and one-shot clearing at the close.
//! * [`cool`]: 9:25-9:30, quotes frozen, orders queued without matching.
//! * [`continuous`]: order-by-order matching with price-time priority.
//! * [`day`]: routes a sorted event stream through the phases.

pub mod call;
pub mod continuous;
pub mod cool;
pub mod day;

use thiserror::Error;

use crate::book::{BookError, Order, OrderId, Quotes};
use crate::market::{Side, TickPrice, Timestamp, TradingPhase};

pub use call::{clear_levels, clearing_price, CallAuction, Clearing, PhaseOutcome};
pub use continuous::{cda_step, match_incoming};
pub use cool::{CoolPeriod, FrozenQuotes};
pub use day::{run_day, DayEngine, DayRecord, Placement, QuoteSnapshot, Rejection, VirtualPricePoint};

/// What an event asks the exchange to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Place {
        id: OrderId,
        side: Side,
        price: TickPrice,
        size: u64,
    },
    Cancel {
        id: OrderId,
    },
}

/// One timestamped instruction; `seq` breaks ties within a centisecond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderEvent {
    pub ts: Timestamp,
    pub seq: u64,
    pub action: Action,
}

impl OrderEvent {
    pub fn place(ts: Timestamp, seq: u64, id: OrderId, side: Side, price: TickPrice, size: u64) -> Self {
        OrderEvent { ts, seq, action: Action::Place { id, side, price, size } }
    }

    pub fn cancel(ts: Timestamp, seq: u64, id: OrderId) -> Self {
        OrderEvent { ts, seq, action: Action::Cancel { id } }
    }

    /// The order carried by a placement.
    pub fn order(&self) -> Option<Order> {
        match self.action {
            Action::Place { id, side, price, size } => Some(Order { id, ts: self.ts, side, price, size }),
            Action::Cancel { .. } => None,
        }
    }

    pub fn id(&self) -> OrderId {
        match self.action {
            Action::Place { id, .. } | Action::Cancel { id } => id,
        }
    }

    pub fn sort_key(&self) -> (Timestamp, u64) {
        (self.ts, self.seq)
    }
}

/// The market information visible to a trader immediately before placing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuoteContext {
    /// Current virtual price, if the accumulated orders cross.
    CallAuction { virtual_price: Option<TickPrice> },
    /// Quotes frozen at the end of the call auction.
    CoolPeriod(FrozenQuotes),
    /// Live best quotes.
    Continuous(Quotes),
}

impl QuoteContext {
    pub fn phase(&self) -> TradingPhase {
        match self {
            QuoteContext::CallAuction { .. } => TradingPhase::OpeningCallAuction,
            QuoteContext::CoolPeriod(_) => TradingPhase::CoolPeriod,
            QuoteContext::Continuous(_) => TradingPhase::ContinuousAuction,
        }
    }

    /// Displayed best quotes; none during the call auction.
    pub fn quotes(&self) -> Option<Quotes> {
        match *self {
            QuoteContext::CallAuction { .. } => None,
            QuoteContext::CoolPeriod(f) => Some(f.quotes()),
            QuoteContext::Continuous(q) => Some(q),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("price {0} ticks outside the daily band")]
    PriceOutsideBand(TickPrice),
    #[error("order id {0} already used today")]
    DuplicateId(OrderId),
    #[error("order id {0} is not live")]
    UnknownId(OrderId),
    #[error("order {0} has zero size")]
    ZeroSize(OrderId),
    #[error("cancel of order {0} is not allowed in this window")]
    CancelForbidden(OrderId),
    #[error("{0} is outside trading hours")]
    NotTradingHours(Timestamp),
    #[error("event ({ts}, {seq}) arrives before ({last_ts}, {last_seq})")]
    Unsorted {
        ts: Timestamp,
        seq: u64,
        last_ts: Timestamp,
        last_seq: u64,
    },
}

impl From<BookError> for EngineError {
    fn from(e: BookError) -> Self {
        match e {
            BookError::DuplicateId(id) => EngineError::DuplicateId(id),
            BookError::PriceOutsideBand { price, .. } => EngineError::PriceOutsideBand(TickPrice(price)),
            BookError::UnknownId(id) => EngineError::UnknownId(id),
            BookError::ZeroSize(id) => EngineError::ZeroSize(id),
            BookError::InsufficientDepth(_) => unreachable!("depth queries never reach the engine"),
        }
    }
}
