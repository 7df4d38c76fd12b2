//! Price and time primitives shared by every other module: the 0.01-yuan
//! tick grid, logarithmic prices, the daily +/-10% price band and the
//! trading-session clock.

use std::fmt;
use std::ops::Sub;

/// Number of ticks in one yuan.
pub const TICKS_PER_YUAN: u32 = 100;

/// A price expressed as an integer number of 0.01-yuan ticks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TickPrice(pub u32);

impl TickPrice {
    pub const fn new(ticks: u32) -> Self {
        TickPrice(ticks)
    }

    pub const fn ticks(self) -> u32 {
        self.0
    }

    /// Yuan value, for display only.
    pub fn yuan(self) -> f64 {
        f64::from(self.0) / f64::from(TICKS_PER_YUAN)
    }

    pub fn log(self) -> LogPrice {
        log_price(self)
    }
}

impl fmt::Display for TickPrice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / TICKS_PER_YUAN, self.0 % TICKS_PER_YUAN)
    }
}

/// Natural logarithm of a yuan price.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogPrice(pub f64);

impl LogPrice {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Sub for LogPrice {
    type Output = f64;

    fn sub(self, rhs: LogPrice) -> f64 {
        self.0 - rhs.0
    }
}

/// `ln(0.01 * ticks)`. Zero ticks maps to negative infinity.
pub fn log_price(p: TickPrice) -> LogPrice {
    LogPrice((f64::from(p.0) / f64::from(TICKS_PER_YUAN)).ln())
}

/// Rounds `numer / denom` ticks half-up to the nearest integer tick.
fn round_half_up(numer: u64, denom: u64) -> u32 {
    ((2 * numer + denom) / (2 * denom)) as u32
}

/// The admissible price interval for one trading day.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PriceBand {
    pub prev_close: TickPrice,
    pub min: TickPrice,
    pub max: TickPrice,
}

impl PriceBand {
    pub fn contains(&self, p: TickPrice) -> bool {
        self.min <= p && p <= self.max
    }

    pub fn clamp(&self, p: TickPrice) -> TickPrice {
        p.clamp(self.min, self.max)
    }

    /// Number of ticks in the band, inclusive of both ends.
    pub fn width(&self) -> u32 {
        self.max.0 - self.min.0 + 1
    }

    /// Log width of one tick at the bottom of the band, the widest one-tick
    /// step anywhere inside it.
    pub fn tick_slack(&self) -> f64 {
        let lo = f64::from(self.min.0.max(1));
        ((lo + 1.0) / lo).ln()
    }

    /// Largest admissible `|x|` for relative prices measured inside this band.
    pub fn relative_bound(&self) -> f64 {
        RELATIVE_PRICE_BOUND + self.tick_slack()
    }
}

/// `ln(1.1 / 0.9)`, the exact half-width of the relative-price domain.
pub const RELATIVE_PRICE_BOUND: f64 = 0.200_670_695_462_151_1;

/// Daily band `[R(0.9 p), R(1.1 p)]` with `R` rounding half-up to a tick.
///
/// Computed in integer arithmetic: `R(0.9 p) = floor((9p + 5) / 10)`.
pub fn compute_band(prev_close: TickPrice) -> PriceBand {
    let p = u64::from(prev_close.0);
    PriceBand {
        prev_close,
        min: TickPrice(round_half_up(9 * p, 10)),
        max: TickPrice(round_half_up(11 * p, 10)),
    }
}

/// Centiseconds since midnight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Timestamp(pub u32);

/// Centiseconds in one day.
pub const DAY_CS: u32 = 24 * 3600 * 100;

impl Timestamp {
    pub const fn from_hms(h: u32, m: u32, s: u32, cs: u32) -> Self {
        Timestamp(((h * 60 + m) * 60 + s) * 100 + cs)
    }

    pub const fn centis(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.0 % 100;
        let s = self.0 / 100;
        write!(f, "{:02}:{:02}:{:02}.{:02}", s / 3600, (s / 60) % 60, s % 60, cs)
    }
}

pub const CALL_OPEN: Timestamp = Timestamp::from_hms(9, 15, 0, 0);
/// Cancels are refused from here until the call auction closes.
pub const CALL_NO_CANCEL: Timestamp = Timestamp::from_hms(9, 20, 0, 0);
pub const CALL_CLOSE: Timestamp = Timestamp::from_hms(9, 25, 0, 0);
pub const CDA_OPEN: Timestamp = Timestamp::from_hms(9, 30, 0, 0);
pub const MORNING_CLOSE: Timestamp = Timestamp::from_hms(11, 30, 0, 0);
pub const AFTERNOON_OPEN: Timestamp = Timestamp::from_hms(13, 0, 0, 0);
pub const MARKET_CLOSE: Timestamp = Timestamp::from_hms(15, 0, 0, 0);

/// Trading sessions of the day, in chronological order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TradingPhase {
    OpeningCallAuction,
    CoolPeriod,
    ContinuousAuction,
}

impl TradingPhase {
    pub const ALL: [TradingPhase; 3] = [
        TradingPhase::OpeningCallAuction,
        TradingPhase::CoolPeriod,
        TradingPhase::ContinuousAuction,
    ];

    /// Half-open `[start, end)` wall-clock windows of the phase.
    pub fn windows(self) -> &'static [(Timestamp, Timestamp)] {
        match self {
            TradingPhase::OpeningCallAuction => &[(CALL_OPEN, CALL_CLOSE)],
            TradingPhase::CoolPeriod => &[(CALL_CLOSE, CDA_OPEN)],
            TradingPhase::ContinuousAuction => {
                &[(CDA_OPEN, MORNING_CLOSE), (AFTERNOON_OPEN, MARKET_CLOSE)]
            }
        }
    }

    /// Short label used in exported files.
    pub fn code(self) -> &'static str {
        match self {
            TradingPhase::OpeningCallAuction => "call",
            TradingPhase::CoolPeriod => "cool",
            TradingPhase::ContinuousAuction => "cda",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        TradingPhase::ALL.into_iter().find(|p| p.code() == s)
    }
}

impl fmt::Display for TradingPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Maps a timestamp to its session; `None` outside trading hours.
pub fn phase_of(t: Timestamp) -> Option<TradingPhase> {
    TradingPhase::ALL
        .into_iter()
        .find(|phase| phase.windows().iter().any(|&(lo, hi)| lo <= t && t < hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Buy,
    Sell,
}

impl Side {
    /// `+1` for buys, `-1` for sells.
    pub fn sign(self) -> i32 {
        match self {
            Side::Buy => 1,
            Side::Sell => -1,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Buy => Side::Sell,
            Side::Sell => Side::Buy,
        }
    }

    pub fn code(self) -> char {
        match self {
            Side::Buy => 'B',
            Side::Sell => 'S',
        }
    }

    pub fn from_code(s: &str) -> Option<Side> {
        match s {
            "B" => Some(Side::Buy),
            "S" => Some(Side::Sell),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}
