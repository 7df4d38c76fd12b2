//! Resting limit-order book with strict price-time priority.
//!
//! Each side is a map from tick price to a FIFO queue of orders. The book
//! never matches on its own; crossing logic lives in the auction engine and
//! consumes liquidity through [`BookState::execute_at`].

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::market::{PriceBand, Side, TickPrice, Timestamp};

pub type OrderId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Order {
    pub id: OrderId,
    pub ts: Timestamp,
    pub side: Side,
    pub price: TickPrice,
    /// Remaining shares.
    pub size: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Trade {
    pub ts: Timestamp,
    pub price: TickPrice,
    pub size: u64,
    pub buy_id: OrderId,
    pub sell_id: OrderId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BookError {
    #[error("order id {0} is already resting")]
    DuplicateId(OrderId),
    #[error("price {price} ticks outside band [{min}, {max}]")]
    PriceOutsideBand { price: u32, min: u32, max: u32 },
    #[error("order id {0} is not resting")]
    UnknownId(OrderId),
    #[error("order {0} has zero size")]
    ZeroSize(OrderId),
    #[error("side has fewer than {0} price levels")]
    InsufficientDepth(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PriceLevel {
    orders: VecDeque<Order>,
    total: u64,
}

impl PriceLevel {
    pub fn orders(&self) -> impl Iterator<Item = &Order> {
        self.orders.iter()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }
}

/// One aggregated level in a depth view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Depth {
    pub price: TickPrice,
    pub size: u64,
}

/// Best quotes; either side may be missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Quotes {
    pub best_bid: Option<TickPrice>,
    pub best_ask: Option<TickPrice>,
}

impl Quotes {
    pub fn same_side(&self, side: Side) -> Option<TickPrice> {
        match side {
            Side::Buy => self.best_bid,
            Side::Sell => self.best_ask,
        }
    }

    pub fn is_crossed(&self) -> bool {
        matches!((self.best_bid, self.best_ask), (Some(b), Some(a)) if b >= a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookState {
    band: PriceBand,
    bids: BTreeMap<TickPrice, PriceLevel>,
    asks: BTreeMap<TickPrice, PriceLevel>,
    index: HashMap<OrderId, (Side, TickPrice)>,
}

impl BookState {
    pub fn new(band: PriceBand) -> Self {
        BookState {
            band,
            bids: BTreeMap::new(),
            asks: BTreeMap::new(),
            index: HashMap::new(),
        }
    }

    pub fn band(&self) -> &PriceBand {
        &self.band
    }

    fn side_map(&self, side: Side) -> &BTreeMap<TickPrice, PriceLevel> {
        match side {
            Side::Buy => &self.bids,
            Side::Sell => &self.asks,
        }
    }

    fn side_map_mut(&mut self, side: Side) -> &mut BTreeMap<TickPrice, PriceLevel> {
        match side {
            Side::Buy => &mut self.bids,
            Side::Sell => &mut self.asks,
        }
    }

    pub fn check_price(&self, price: TickPrice) -> Result<(), BookError> {
        if self.band.contains(price) {
            Ok(())
        } else {
            Err(BookError::PriceOutsideBand {
                price: price.0,
                min: self.band.min.0,
                max: self.band.max.0,
            })
        }
    }

    /// Appends the order to the back of its price level.
    pub fn insert(&mut self, order: Order) -> Result<(), BookError> {
        if order.size == 0 {
            return Err(BookError::ZeroSize(order.id));
        }
        self.check_price(order.price)?;
        if self.index.contains_key(&order.id) {
            return Err(BookError::DuplicateId(order.id));
        }
        self.index.insert(order.id, (order.side, order.price));
        let level = self.side_map_mut(order.side).entry(order.price).or_default();
        level.total += order.size;
        level.orders.push_back(order);
        Ok(())
    }

    /// Removes a resting order and returns it with its remaining size.
    pub fn cancel(&mut self, id: OrderId) -> Result<Order, BookError> {
        let (side, price) = self.index.remove(&id).ok_or(BookError::UnknownId(id))?;
        let map = self.side_map_mut(side);
        let level = map.get_mut(&price).expect("indexed level exists");
        let pos = level
            .orders
            .iter()
            .position(|o| o.id == id)
            .expect("indexed order rests at its level");
        let order = level.orders.remove(pos).expect("position is valid");
        level.total -= order.size;
        if level.orders.is_empty() {
            map.remove(&price);
        }
        Ok(order)
    }

    pub fn best_bid(&self) -> Option<TickPrice> {
        self.bids.keys().next_back().copied()
    }

    pub fn best_ask(&self) -> Option<TickPrice> {
        self.asks.keys().next().copied()
    }

    pub fn best_quotes(&self) -> Quotes {
        Quotes {
            best_bid: self.best_bid(),
            best_ask: self.best_ask(),
        }
    }

    pub fn best(&self, side: Side) -> Option<TickPrice> {
        match side {
            Side::Buy => self.best_bid(),
            Side::Sell => self.best_ask(),
        }
    }

    /// Levels of one side from best to worst.
    pub fn levels(&self, side: Side) -> Box<dyn Iterator<Item = (TickPrice, &PriceLevel)> + '_> {
        match side {
            Side::Buy => Box::new(self.bids.iter().rev().map(|(p, l)| (*p, l))),
            Side::Sell => Box::new(self.asks.iter().map(|(p, l)| (*p, l))),
        }
    }

    /// The `rank`-th best level (1-based) with its aggregate size.
    pub fn depth_at(&self, side: Side, rank: usize) -> Result<Depth, BookError> {
        if rank == 0 {
            return Err(BookError::InsufficientDepth(rank));
        }
        self.levels(side)
            .nth(rank - 1)
            .map(|(price, level)| Depth { price, size: level.total })
            .ok_or(BookError::InsufficientDepth(rank))
    }

    /// Up to `n` best levels of one side.
    pub fn top_levels(&self, side: Side, n: usize) -> Vec<Depth> {
        self.levels(side)
            .take(n)
            .map(|(price, level)| Depth { price, size: level.total })
            .collect()
    }

    pub fn total_size(&self, side: Side) -> u64 {
        self.side_map(side).values().map(|l| l.total).sum()
    }

    pub fn contains(&self, id: OrderId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn get(&self, id: OrderId) -> Option<&Order> {
        let (side, price) = self.index.get(&id)?;
        self.side_map(*side)[price].orders.iter().find(|o| o.id == id)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// All resting orders, bids then asks, each side best level first.
    pub fn orders(&self) -> impl Iterator<Item = &Order> {
        self.levels(Side::Buy)
            .chain(self.levels(Side::Sell))
            .flat_map(|(_, level)| level.orders.iter())
    }

    /// Consumes up to `qty` shares from the front of the `side` queue at
    /// `price`. Returns `(order id, filled shares)` per touched order in FIFO
    /// order. Partially filled orders keep their queue position.
    pub fn execute_at(&mut self, side: Side, price: TickPrice, mut qty: u64) -> Vec<(OrderId, u64)> {
        let mut fills = Vec::new();
        let map = match side {
            Side::Buy => &mut self.bids,
            Side::Sell => &mut self.asks,
        };
        let Some(level) = map.get_mut(&price) else {
            return fills;
        };
        while qty > 0 {
            let Some(front) = level.orders.front_mut() else {
                break;
            };
            let take = front.size.min(qty);
            front.size -= take;
            level.total -= take;
            qty -= take;
            fills.push((front.id, take));
            if front.size == 0 {
                let done = level.orders.pop_front().expect("front exists");
                self.index.remove(&done.id);
            }
        }
        if level.orders.is_empty() {
            map.remove(&price);
        }
        fills
    }
}
