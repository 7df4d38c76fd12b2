//! Continuous double auction.

use crate::book::{BookState, Order, Trade};
use crate::market::{Side, Timestamp};

use super::{Action, EngineError, OrderEvent};

/// Matches an incoming limit order against the book, then rests any
/// remainder. Fills walk the opposite side best level first and FIFO within
/// a level; each fill prints at the resting order's price.
pub fn match_incoming(book: &mut BookState, mut order: Order, ts: Timestamp) -> Result<Vec<Trade>, EngineError> {
    if order.size == 0 {
        return Err(EngineError::ZeroSize(order.id));
    }
    book.check_price(order.price)?;
    if book.contains(order.id) {
        return Err(EngineError::DuplicateId(order.id));
    }
    let opposite = order.side.opposite();
    let mut trades = Vec::new();
    while order.size > 0 {
        let Some(best) = book.best(opposite) else { break };
        let crosses = match order.side {
            Side::Buy => order.price >= best,
            Side::Sell => order.price <= best,
        };
        if !crosses {
            break;
        }
        for (resting_id, size) in book.execute_at(opposite, best, order.size) {
            order.size -= size;
            let (buy_id, sell_id) = match order.side {
                Side::Buy => (order.id, resting_id),
                Side::Sell => (resting_id, order.id),
            };
            trades.push(Trade { ts, price: best, size, buy_id, sell_id });
        }
    }
    if order.size > 0 {
        book.insert(order)?;
    }
    Ok(trades)
}

/// Applies one event during continuous trading.
pub fn cda_step(book: &mut BookState, event: &OrderEvent) -> Result<Vec<Trade>, EngineError> {
    match event.action {
        Action::Place { .. } => {
            let order = event.order().expect("placement carries an order");
            match_incoming(book, order, event.ts)
        }
        Action::Cancel { id } => {
            book.cancel(id)?;
            Ok(Vec::new())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::book::Quotes;
    use crate::market::{compute_band, TickPrice};
    use proptest::prelude::*;

    const T: Timestamp = Timestamp::from_hms(10, 0, 0, 0);

    fn place(seq: u64, side: Side, price: u32, size: u64) -> OrderEvent {
        OrderEvent::place(T, seq, seq, side, TickPrice(price), size)
    }

    /// Naive matcher: expands the opposite side into single shares in
    /// priority order and consumes them one at a time.
    fn per_share_oracle(resting: &[Order], incoming: Order) -> Vec<(u32, u64)> {
        let mut shares: Vec<(u32, usize)> = Vec::new();
        let mut opp: Vec<(usize, &Order)> = resting.iter().enumerate().filter(|(_, o)| o.side != incoming.side).collect();
        opp.sort_by_key(|(i, o)| (i64::from(o.price.0) * i64::from(incoming.side.sign()), *i));
        for (i, o) in opp {
            for _ in 0..o.size {
                shares.push((o.price.0, i));
            }
        }
        let mut out: Vec<(u32, u64)> = Vec::new();
        for (price, _) in shares.into_iter().take(incoming.size as usize) {
            let ok = match incoming.side {
                Side::Buy => incoming.price.0 >= price,
                Side::Sell => incoming.price.0 <= price,
            };
            if !ok {
                break;
            }
            match out.last_mut() {
                Some((p, n)) if *p == price => *n += 1,
                _ => out.push((price, 1)),
            }
        }
        out
    }

    #[test]
    fn sweep_two_levels() {
        let mut book = BookState::new(compute_band(TickPrice(1000)));
        cda_step(&mut book, &place(1, Side::Sell, 1001, 100)).unwrap();
        cda_step(&mut book, &place(2, Side::Sell, 1002, 30)).unwrap();
        let resting: Vec<Order> = book.orders().copied().collect();
        let incoming = place(3, Side::Buy, 1003, 150);
        let trades = cda_step(&mut book, &incoming).unwrap();
        let got: Vec<(u32, u64)> = trades.iter().map(|t| (t.price.0, t.size)).collect();
        assert_eq!(got, vec![(1001, 100), (1002, 30)]);
        assert_eq!(got, per_share_oracle(&resting, incoming.order().unwrap()));
        assert_eq!(book.best_quotes(), Quotes { best_bid: Some(TickPrice(1003)), best_ask: None });
        assert_eq!(book.get(3).unwrap().size, 20);
    }

    #[test]
    fn exact_match_and_passive() {
        let mut book = BookState::new(compute_band(TickPrice(1000)));
        cda_step(&mut book, &place(1, Side::Sell, 1001, 100)).unwrap();
        let trades = cda_step(&mut book, &place(2, Side::Buy, 1001, 50)).unwrap();
        assert_eq!(trades, vec![Trade { ts: T, price: TickPrice(1001), size: 50, buy_id: 2, sell_id: 1 }]);
        assert_eq!(book.get(1).unwrap().size, 50);
        let trades = cda_step(&mut book, &place(3, Side::Buy, 1000, 10)).unwrap();
        assert!(trades.is_empty());
        assert_eq!(book.best_bid(), Some(TickPrice(1000)));
    }

    #[test]
    fn cancel_and_errors() {
        let mut book = BookState::new(compute_band(TickPrice(1000)));
        assert_eq!(cda_step(&mut book, &OrderEvent::cancel(T, 1, 9)), Err(EngineError::UnknownId(9)));
        assert_eq!(
            cda_step(&mut book, &place(2, Side::Buy, 1200, 10)),
            Err(EngineError::PriceOutsideBand(TickPrice(1200)))
        );
        cda_step(&mut book, &place(3, Side::Buy, 1000, 10)).unwrap();
        cda_step(&mut book, &OrderEvent::cancel(T, 4, 3)).unwrap();
        assert!(book.is_empty());
    }

    proptest! {
        #[test]
        fn matches_per_share_oracle(
            raw in proptest::collection::vec((any::<bool>(), 990u32..1010, 1u64..300), 1..40),
            incoming in (any::<bool>(), 985u32..1015, 1u64..2000),
        ) {
            let mut book = BookState::new(compute_band(TickPrice(1000)));
            for (i, (b, p, s)) in raw.iter().enumerate() {
                cda_step(&mut book, &place(i as u64, if *b { Side::Buy } else { Side::Sell }, *p, *s)).unwrap();
            }
            // resting orders in arrival order
            let mut resting: Vec<Order> = book.orders().copied().collect();
            resting.sort_by_key(|o| o.id);
            let side = if incoming.0 { Side::Buy } else { Side::Sell };
            let ev = place(10_000, side, incoming.1, incoming.2);
            let expected = per_share_oracle(&resting, ev.order().unwrap());
            let trades = cda_step(&mut book, &ev).unwrap();
            let mut got: Vec<(u32, u64)> = Vec::new();
            for t in &trades {
                match got.last_mut() {
                    Some((p, n)) if *p == t.price.0 => *n += t.size,
                    _ => got.push((t.price.0, t.size)),
                }
            }
            prop_assert_eq!(got, expected);
            prop_assert!(!book.best_quotes().is_crossed());
        }
    }
}
