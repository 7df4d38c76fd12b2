//! Cool period: the exchange accepts orders but neither matches nor
//! cancels, and the displayed quotes stay as they were at 9:25.

use crate::book::{BookState, Order, Quotes, Trade};
use crate::market::{TickPrice, Timestamp};

use super::continuous::match_incoming;
use super::{Action, EngineError, OrderEvent};

/// Best quotes captured when the call auction closes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FrozenQuotes {
    pub best_bid: Option<TickPrice>,
    pub best_ask: Option<TickPrice>,
}

impl FrozenQuotes {
    pub fn capture(book: &BookState) -> Self {
        let q = book.best_quotes();
        FrozenQuotes { best_bid: q.best_bid, best_ask: q.best_ask }
    }

    pub fn quotes(&self) -> Quotes {
        Quotes { best_bid: self.best_bid, best_ask: self.best_ask }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoolPeriod {
    book: BookState,
    frozen: FrozenQuotes,
    queued: Vec<Order>,
}

impl CoolPeriod {
    /// Starts the cool period from the call-auction residual book.
    pub fn new(book: BookState) -> Self {
        let frozen = FrozenQuotes::capture(&book);
        CoolPeriod { book, frozen, queued: Vec::new() }
    }

    pub fn frozen(&self) -> FrozenQuotes {
        self.frozen
    }

    pub fn book(&self) -> &BookState {
        &self.book
    }

    pub fn queued(&self) -> &[Order] {
        &self.queued
    }

    /// Queues a placement; cancels are refused.
    pub fn step(&mut self, event: &OrderEvent) -> Result<(), EngineError> {
        match event.action {
            Action::Cancel { id } => Err(EngineError::CancelForbidden(id)),
            Action::Place { id, price, size, .. } => {
                if size == 0 {
                    return Err(EngineError::ZeroSize(id));
                }
                self.book.check_price(price)?;
                self.queued.push(event.order().expect("placement carries an order"));
                Ok(())
            }
        }
    }

    /// Releases queued orders into continuous matching in arrival order.
    pub fn open_continuous(self, ts: Timestamp) -> (BookState, Vec<Trade>) {
        let mut book = self.book;
        let mut trades = Vec::new();
        for order in self.queued {
            let fills = match_incoming(&mut book, order, ts).expect("queued orders were validated");
            trades.extend(fills);
        }
        (book, trades)
    }
}
