use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::config::{SideMixture, BULK_MAX};
use crate::auction::QuoteContext;
use crate::book::{Order, OrderId};
use crate::market::{PriceBand, Side, TickPrice, Timestamp, RELATIVE_PRICE_BOUND};
use crate::relprice::{reference_ticks, RelPriceError};

/// Inverse CDF of the density proportional to `x^-(1+alpha)` on `[a, b]`.
pub fn truncated_power_law(alpha: f64, a: f64, b: f64, u: f64) -> f64 {
    if alpha.abs() < 1e-12 {
        a * (b / a).powf(u)
    } else {
        let (ta, tb) = (a.powf(-alpha), b.powf(-alpha));
        (ta - u * (ta - tb)).powf(-1.0 / alpha)
    }
}

fn tail(rate: f64, rng: &mut impl Rng) -> f64 {
    let e = Exp::new(rate).expect("validated tail rate").sample(rng);
    (BULK_MAX + e).min(RELATIVE_PRICE_BOUND)
}

/// One draw from the mixture.
pub fn sample_x(mix: &SideMixture, rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.random();
    let mut acc = mix.p_zero;
    if u < acc {
        return 0.0;
    }
    acc += mix.p_bulk_neg;
    if u < acc {
        return -truncated_power_law(mix.alpha_neg, mix.x_min, BULK_MAX, rng.random());
    }
    acc += mix.p_bulk_pos;
    if u < acc {
        return truncated_power_law(mix.alpha_pos, mix.x_min, BULK_MAX, rng.random());
    }
    acc += mix.p_tail_neg;
    if u < acc {
        return -tail(mix.tail_rate, rng);
    }
    acc += mix.p_tail_pos;
    if u < acc {
        return tail(mix.tail_rate, rng);
    }
    if mix.p_boost > 0.0 {
        return RELATIVE_PRICE_BOUND;
    }
    // rounding residue in the masses; fall back to the last populated part
    if mix.p_tail_pos > 0.0 {
        tail(mix.tail_rate, rng)
    } else {
        truncated_power_law(mix.alpha_pos, mix.x_min, BULK_MAX, rng.random())
    }
}

/// Price at relative price `x` from `reference`, rounded to the nearest
/// tick and clamped into the band. A nonzero `x` that rounds back onto the
/// reference is pushed one tick outward so that only `x = 0` lands on it.
pub fn x_to_price(x: f64, side: Side, reference: TickPrice, band: &PriceBand) -> TickPrice {
    let signed = match side {
        Side::Buy => x,
        Side::Sell => -x,
    };
    let raw = (f64::from(reference.0) * signed.exp()).round();
    let mut ticks = raw.clamp(f64::from(band.min.0), f64::from(band.max.0)) as u32;
    if ticks == reference.0 && signed != 0.0 {
        ticks = if signed > 0.0 { ticks + 1 } else { ticks.saturating_sub(1) };
    }
    band.clamp(TickPrice(ticks))
}

/// Builds the order whose relative price against `context` is `x`, up to
/// tick rounding and the band.
pub fn x_to_order(
    x: f64,
    side: Side,
    context: &QuoteContext,
    band: &PriceBand,
    id: OrderId,
    ts: Timestamp,
    size: u64,
) -> Result<Order, RelPriceError> {
    let reference =
        reference_ticks(context, side).ok_or(RelPriceError::MissingReference { phase: context.phase(), side })?;
    Ok(Order { id, ts, side, price: x_to_price(x, side, reference, band), size })
}
