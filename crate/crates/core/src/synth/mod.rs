//! Synthetic order flow with a prescribed relative-price distribution.

mod config;
mod generator;
mod sampler;

pub use config::{ConfigError, GeneratorConfig, PhaseConfig, PhaseCounts, SideMixture, BULK_MAX};
pub use generator::{generate_day, generate_ensemble, stock_rng, SyntheticStream};
pub use sampler::{sample_x, truncated_power_law, x_to_order, x_to_price};
