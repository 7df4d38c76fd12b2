//! Opening call auction: virtual-price tracking and one-shot clearing.

use std::collections::{BTreeMap, HashMap};

use crate::book::{BookState, Order, OrderId, Trade};
use crate::market::{PriceBand, Side, TickPrice, Timestamp};

use super::EngineError;

/// A clearing price together with the volume it executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clearing {
    pub price: TickPrice,
    pub volume: u64,
}

/// Clearing price for raw buy and sell orders. See [`clear_levels`].
pub fn clearing_price(buys: &[Order], sells: &[Order], band: &PriceBand) -> Option<Clearing> {
    let mut buy_levels = BTreeMap::new();
    let mut sell_levels = BTreeMap::new();
    for o in buys {
        *buy_levels.entry(o.price).or_insert(0) += o.size;
    }
    for o in sells {
        *sell_levels.entry(o.price).or_insert(0) += o.size;
    }
    clear_levels(&buy_levels, &sell_levels, band)
}

/// Chooses the call-auction price from aggregated level sizes.
///
/// With `D(p)` the buy size bid at or above `p` and `S(p)` the sell size
/// offered at or below `p`, a candidate must
/// 1. maximise `V(p) = min(D(p), S(p))`,
/// 2. fill every buy strictly above and every sell strictly below it,
/// 3. fill one side's orders priced exactly at it.
///
/// Survivors are ranked by distance to the previous close, then by higher
/// price. `None` when nothing crosses.
///
/// `D` and `S` are constant strictly between consecutive order prices, so
/// each gap is evaluated once as an interval and only the level prices are
/// visited individually.
pub fn clear_levels(
    buy_levels: &BTreeMap<TickPrice, u64>,
    sell_levels: &BTreeMap<TickPrice, u64>,
    band: &PriceBand,
) -> Option<Clearing> {
    let mut prices: Vec<TickPrice> = buy_levels.keys().chain(sell_levels.keys()).copied().collect();
    prices.sort_unstable();
    prices.dedup();
    let n = prices.len();
    if n == 0 {
        return None;
    }

    // demand[i] = D(prices[i]), supply[i] = S(prices[i])
    let mut demand = vec![0u64; n + 1];
    for i in (0..n).rev() {
        demand[i] = demand[i + 1] + buy_levels.get(&prices[i]).copied().unwrap_or(0);
    }
    let mut supply = vec![0u64; n];
    let mut acc = 0;
    for (i, p) in prices.iter().enumerate() {
        acc += sell_levels.get(p).copied().unwrap_or(0);
        supply[i] = acc;
    }

    struct Candidate {
        lo: u32,
        hi: u32,
        volume: u64,
        valid: bool,
    }

    let check = |d: u64, s: u64, d_above: u64, s_below: u64| {
        let v = d.min(s);
        let strict = d_above <= v && s_below <= v;
        let at_price = d <= v || s <= v;
        (v, strict && at_price)
    };

    let mut candidates = Vec::with_capacity(2 * n);
    for i in 0..n {
        let s_below = if i == 0 { 0 } else { supply[i - 1] };
        let (volume, valid) = check(demand[i], supply[i], demand[i + 1], s_below);
        candidates.push(Candidate { lo: prices[i].0, hi: prices[i].0, volume, valid });
        if i + 1 < n && prices[i + 1].0 - prices[i].0 >= 2 {
            let (volume, valid) = check(demand[i + 1], supply[i], demand[i + 1], supply[i]);
            candidates.push(Candidate {
                lo: prices[i].0 + 1,
                hi: prices[i + 1].0 - 1,
                volume,
                valid,
            });
        }
    }

    let best_volume = candidates.iter().map(|c| c.volume).max()?;
    if best_volume == 0 {
        return None;
    }
    let reference = band.prev_close.0;
    candidates
        .iter()
        .filter(|c| c.volume == best_volume && c.valid)
        .map(|c| {
            let p = reference.clamp(c.lo, c.hi);
            // nearest interior point; ties inside an interval cannot occur
            (p.abs_diff(reference), std::cmp::Reverse(p))
        })
        .min()
        .map(|(_, std::cmp::Reverse(p))| Clearing { price: TickPrice(p), volume: best_volume })
}

/// Accumulated call-auction orders with the running virtual price.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallAuction {
    band: PriceBand,
    /// Arrival order is the map order.
    orders: BTreeMap<u64, Order>,
    arrival_of: HashMap<OrderId, u64>,
    next_arrival: u64,
    buy_levels: BTreeMap<TickPrice, u64>,
    sell_levels: BTreeMap<TickPrice, u64>,
    virtual_price: Option<Clearing>,
}

/// Result of closing the call auction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseOutcome {
    pub trades: Vec<Trade>,
    pub book: BookState,
}

fn levels_mut<'a>(
    buys: &'a mut BTreeMap<TickPrice, u64>,
    sells: &'a mut BTreeMap<TickPrice, u64>,
    side: Side,
) -> &'a mut BTreeMap<TickPrice, u64> {
    match side {
        Side::Buy => buys,
        Side::Sell => sells,
    }
}

impl CallAuction {
    pub fn new(band: PriceBand) -> Self {
        CallAuction {
            band,
            orders: BTreeMap::new(),
            arrival_of: HashMap::new(),
            next_arrival: 0,
            buy_levels: BTreeMap::new(),
            sell_levels: BTreeMap::new(),
            virtual_price: None,
        }
    }

    pub fn band(&self) -> &PriceBand {
        &self.band
    }

    pub fn virtual_price(&self) -> Option<Clearing> {
        self.virtual_price
    }

    pub fn orders(&self) -> impl Iterator<Item = &Order> {
        self.orders.values()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Adds an order and recomputes the virtual price.
    pub fn place(&mut self, order: Order) -> Result<Option<Clearing>, EngineError> {
        if order.size == 0 {
            return Err(EngineError::ZeroSize(order.id));
        }
        if !self.band.contains(order.price) {
            return Err(EngineError::PriceOutsideBand(order.price));
        }
        if self.arrival_of.contains_key(&order.id) {
            return Err(EngineError::DuplicateId(order.id));
        }
        let arrival = self.next_arrival;
        self.next_arrival += 1;
        self.arrival_of.insert(order.id, arrival);
        self.orders.insert(arrival, order);
        *levels_mut(&mut self.buy_levels, &mut self.sell_levels, order.side)
            .entry(order.price)
            .or_insert(0) += order.size;
        self.refresh();
        Ok(self.virtual_price)
    }

    /// Withdraws an order. Refused from 9:20 onwards.
    pub fn cancel(&mut self, id: OrderId, ts: Timestamp) -> Result<Option<Clearing>, EngineError> {
        if ts >= crate::market::CALL_NO_CANCEL {
            return Err(EngineError::CancelForbidden(id));
        }
        let arrival = self.arrival_of.remove(&id).ok_or(EngineError::UnknownId(id))?;
        let order = self.orders.remove(&arrival).expect("indexed order exists");
        let levels = levels_mut(&mut self.buy_levels, &mut self.sell_levels, order.side);
        let total = levels.get_mut(&order.price).expect("level exists");
        *total -= order.size;
        if *total == 0 {
            levels.remove(&order.price);
        }
        self.refresh();
        Ok(self.virtual_price)
    }

    fn refresh(&mut self) {
        self.virtual_price = clear_levels(&self.buy_levels, &self.sell_levels, &self.band);
    }

    /// Executes everything at the final virtual price. Orders strictly
    /// better than the price fill in full; at the price itself the short
    /// side fills in full and the long side fills by arrival time. All
    /// remainders enter the returned book in arrival order.
    pub fn close(self, ts: Timestamp) -> PhaseOutcome {
        let mut remaining: BTreeMap<u64, Order> = self.orders;
        let mut trades = Vec::new();

        if let Some(Clearing { price, volume }) = self.virtual_price {
            let mut fill_side = |side: Side| -> Vec<(OrderId, u64)> {
                let mut eligible: Vec<(u64, TickPrice)> = remaining
                    .iter()
                    .filter(|(_, o)| o.side == side)
                    .filter(|(_, o)| match side {
                        Side::Buy => o.price >= price,
                        Side::Sell => o.price <= price,
                    })
                    .map(|(a, o)| (*a, o.price))
                    .collect();
                // most aggressive first, arrival order within a price
                eligible.sort_by_key(|&(a, p)| (-i64::from(p.0) * i64::from(side.sign()), a));
                let mut left = volume;
                let mut fills = Vec::new();
                for (arrival, _) in eligible {
                    if left == 0 {
                        break;
                    }
                    let o = remaining.get_mut(&arrival).expect("eligible order exists");
                    let take = o.size.min(left);
                    o.size -= take;
                    left -= take;
                    fills.push((o.id, take));
                }
                debug_assert_eq!(left, 0, "clearing volume is executable on both sides");
                fills
            };
            let buys = fill_side(Side::Buy);
            let sells = fill_side(Side::Sell);
            trades = pair_fills(&buys, &sells, price, ts);
        }

        let mut book = BookState::new(self.band);
        for order in remaining.into_values().filter(|o| o.size > 0) {
            book.insert(order).expect("call-auction orders are valid book orders");
        }
        PhaseOutcome { trades, book }
    }
}

/// Pairs buy and sell fill lists into trades at a single price.
fn pair_fills(buys: &[(OrderId, u64)], sells: &[(OrderId, u64)], price: TickPrice, ts: Timestamp) -> Vec<Trade> {
    let mut trades = Vec::new();
    let (mut i, mut j) = (0, 0);
    let (mut buy_left, mut sell_left) = (buys.first().map_or(0, |f| f.1), sells.first().map_or(0, |f| f.1));
    while i < buys.len() && j < sells.len() {
        let size = buy_left.min(sell_left);
        trades.push(Trade { ts, price, size, buy_id: buys[i].0, sell_id: sells[j].0 });
        buy_left -= size;
        sell_left -= size;
        if buy_left == 0 {
            i += 1;
            buy_left = buys.get(i).map_or(0, |f| f.1);
        }
        if sell_left == 0 {
            j += 1;
            sell_left = sells.get(j).map_or(0, |f| f.1);
        }
    }
    trades
}
