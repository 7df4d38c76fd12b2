//! Limit-order-book laboratory for a three-phase (call auction, cool
//! period, continuous auction) exchange with daily price limits.
//!
//! The crate is organised bottom-up:
//!
//! * [`market`]: ticks, log prices, price band, session clock.
//! * [`book`]: resting order book with price-time priority.
//! * [`auction`]: the per-phase matching rules and the day state machine.
//! * [`relprice`]: relative log prices of placed orders against the
//!   phase-appropriate reference.
//! * [`stats`]: densities, power-law fits, spread, volatility,
//!   conditional densities and two-sample KS.
//! * [`synth`]: calibrated synthetic order-flow generator.
//! * [`flow`]: order-flow file format and result exports.

pub mod auction;
pub mod book;
pub mod flow;
pub mod market;
pub mod relprice;
pub mod stats;
pub mod synth;
