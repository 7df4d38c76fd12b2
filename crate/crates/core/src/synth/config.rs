use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::market::{Side, TradingPhase};

/// Upper end of the power-law bulk; beyond it the tails take over.
pub const BULK_MAX: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{key}: {msg}")]
    Invalid { key: String, msg: String },
}

fn invalid(key: impl Into<String>, msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.into(), msg: msg.into() }
}

/// Mixture for the relative price of one side in one phase.
///
/// `x = 0` with mass `p_zero`; truncated power laws `x^-(1+alpha)` on
/// `[x_min, 0.1]` with masses `p_bulk_pos` and `p_bulk_neg` (the latter
/// mirrored to negative `x`); exponential tails `0.1 + Exp(tail_rate)`
/// beyond `|x| = 0.1` with masses `p_tail_pos` and `p_tail_neg`; and
/// `p_boost` at the upper domain bound, which lands on the band edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideMixture {
    pub p_zero: f64,
    pub p_bulk_neg: f64,
    pub p_bulk_pos: f64,
    pub p_tail_neg: f64,
    pub p_tail_pos: f64,
    pub p_boost: f64,
    pub alpha_neg: f64,
    pub alpha_pos: f64,
    pub x_min: f64,
    pub tail_rate: f64,
}

impl SideMixture {
    /// Pure power law above zero; handy for tests and exponent studies.
    pub fn bulk_only(alpha_pos: f64, x_min: f64) -> Self {
        SideMixture {
            p_zero: 0.0,
            p_bulk_neg: 0.0,
            p_bulk_pos: 1.0,
            p_tail_neg: 0.0,
            p_tail_pos: 0.0,
            p_boost: 0.0,
            alpha_neg: alpha_pos,
            alpha_pos,
            x_min,
            tail_rate: 50.0,
        }
    }

    pub fn masses(&self) -> [f64; 6] {
        [self.p_zero, self.p_bulk_neg, self.p_bulk_pos, self.p_tail_neg, self.p_tail_pos, self.p_boost]
    }

    pub fn validate(&self, prefix: &str) -> Result<(), ConfigError> {
        for (name, p) in MIXTURE_FIELDS.iter().zip(self.masses()) {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("{prefix}.{name}"), format!("mass {p} outside [0, 1]")));
            }
        }
        let total: f64 = self.masses().iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid(prefix, format!("mixture masses sum to {total}, not 1")));
        }
        for (name, a) in [("alpha_neg", self.alpha_neg), ("alpha_pos", self.alpha_pos)] {
            if !a.is_finite() {
                return Err(invalid(format!("{prefix}.{name}"), "exponent must be finite"));
            }
        }
        if !(self.x_min > 0.0 && self.x_min < BULK_MAX) {
            return Err(invalid(format!("{prefix}.x_min"), format!("{} not in (0, {BULK_MAX})", self.x_min)));
        }
        if !(self.tail_rate > 0.0 && self.tail_rate.is_finite()) {
            return Err(invalid(format!("{prefix}.tail_rate"), "must be positive"));
        }
        Ok(())
    }

    fn field(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "p_zero" => &mut self.p_zero,
            "p_bulk_neg" => &mut self.p_bulk_neg,
            "p_bulk_pos" => &mut self.p_bulk_pos,
            "p_tail_neg" => &mut self.p_tail_neg,
            "p_tail_pos" => &mut self.p_tail_pos,
            "p_boost" => &mut self.p_boost,
            "alpha_neg" => &mut self.alpha_neg,
            "alpha_pos" => &mut self.alpha_pos,
            "x_min" => &mut self.x_min,
            "tail_rate" => &mut self.tail_rate,
            _ => return None,
        })
    }

    fn values(&self) -> [f64; 10] {
        [
            self.p_zero,
            self.p_bulk_neg,
            self.p_bulk_pos,
            self.p_tail_neg,
            self.p_tail_pos,
            self.p_boost,
            self.alpha_neg,
            self.alpha_pos,
            self.x_min,
            self.tail_rate,
        ]
    }
}

const MIXTURE_FIELDS: [&str; 6] = ["p_zero", "p_bulk_neg", "p_bulk_pos", "p_tail_neg", "p_tail_pos", "p_boost"];
const ALL_FIELDS: [&str; 10] = [
    "p_zero",
    "p_bulk_neg",
    "p_bulk_pos",
    "p_tail_neg",
    "p_tail_pos",
    "p_boost",
    "alpha_neg",
    "alpha_pos",
    "x_min",
    "tail_rate",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseConfig {
    pub buy: SideMixture,
    pub sell: SideMixture,
    /// Probability that a placement is a buy.
    pub buy_fraction: f64,
}

impl PhaseConfig {
    pub fn side(&self, side: Side) -> &SideMixture {
        match side {
            Side::Buy => &self.buy,
            Side::Sell => &self.sell,
        }
    }
}

/// Placements per phase for one stock-day. Arrival times are uniform over
/// each phase's windows, i.e. a Poisson stream conditioned on the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PhaseCounts {
    pub call: usize,
    pub cool: usize,
    pub cda: usize,
}

impl PhaseCounts {
    pub fn get(&self, phase: TradingPhase) -> usize {
        match phase {
            TradingPhase::OpeningCallAuction => self.call,
            TradingPhase::CoolPeriod => self.cool,
            TradingPhase::ContinuousAuction => self.cda,
        }
    }

    pub fn total(&self) -> usize {
        self.call + self.cool + self.cda
    }
}

impl FromStr for PhaseCounts {
    type Err = String;

    /// `call,cool,cda`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [call, cool, cda] = parts[..] else {
            return Err(format!("expected call,cool,cda counts, got `{s}`"));
        };
        let num = |v: &str| v.parse::<usize>().map_err(|e| format!("bad count `{v}`: {e}"));
        Ok(PhaseCounts { call: num(call)?, cool: num(cool)?, cda: num(cda)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub call: PhaseConfig,
    pub cool: PhaseConfig,
    pub cda: PhaseConfig,
    pub counts: PhaseCounts,
    /// Order sizes are log-uniform on `[size_min, size_max]` shares.
    pub size_min: u64,
    pub size_max: u64,
    /// Share of continuous-auction events that cancel a random resting order.
    pub cancel_fraction: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        let m = |p_zero, p_bulk_neg, p_bulk_pos, p_tail_neg, p_tail_pos, alpha_neg, alpha_pos| SideMixture {
            p_zero,
            p_bulk_neg,
            p_bulk_pos,
            p_tail_neg,
            p_tail_pos,
            p_boost: 0.0,
            alpha_neg,
            alpha_pos,
            x_min: 0.001,
            tail_rate: 50.0,
        };
        GeneratorConfig {
            // Crossing orders move the virtual price and later draws follow it,
            // so a heavy x > 0 side walks the call into a band edge.
            call: PhaseConfig {
                buy: m(0.0346, 0.9154, 0.05, 0.0, 0.0, 0.0, 0.13),
                sell: m(0.0346, 0.9334, 0.032, 0.0, 0.0, -0.5, -0.31),
                buy_fraction: 0.39,
            },
            cool: PhaseConfig {
                buy: m(0.08, 0.55, 0.33, 0.025, 0.015, 1.2, 1.89),
                sell: m(0.08, 0.55, 0.33, 0.025, 0.015, 1.2, 1.66),
                buy_fraction: 0.48,
            },
            cda: PhaseConfig {
                buy: m(0.12, 0.55, 0.29, 0.025, 0.015, 1.72, 1.66),
                sell: m(0.12, 0.58, 0.26, 0.025, 0.015, 1.15, 1.80),
                buy_fraction: 0.52,
            },
            counts: PhaseCounts { call: 500, cool: 180, cda: 13_000 },
            size_min: 100,
            size_max: 10_000,
            cancel_fraction: 0.1,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn phase(&self, phase: TradingPhase) -> &PhaseConfig {
        match phase {
            TradingPhase::OpeningCallAuction => &self.call,
            TradingPhase::CoolPeriod => &self.cool,
            TradingPhase::ContinuousAuction => &self.cda,
        }
    }

    fn phase_mut(&mut self, phase: TradingPhase) -> &mut PhaseConfig {
        match phase {
            TradingPhase::OpeningCallAuction => &mut self.call,
            TradingPhase::CoolPeriod => &mut self.cool,
            TradingPhase::ContinuousAuction => &mut self.cda,
        }
    }

    /// Same config with every phase's mixtures replaced.
    pub fn with_all_phases(mut self, phase: PhaseConfig) -> Self {
        self.call = phase;
        self.cool = phase;
        self.cda = phase;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for phase in TradingPhase::ALL {
            let p = self.phase(phase);
            p.buy.validate(&format!("{}.buy", phase.code()))?;
            p.sell.validate(&format!("{}.sell", phase.code()))?;
            if !(0.0..=1.0).contains(&p.buy_fraction) {
                return Err(invalid(format!("{}.buy_fraction", phase.code()), "must lie in [0, 1]"));
            }
        }
        if self.size_min == 0 || self.size_max < self.size_min {
            return Err(invalid("size_min", "need 1 <= size_min <= size_max"));
        }
        if !(0.0..1.0).contains(&self.cancel_fraction) {
            return Err(invalid("cancel_fraction", "must lie in [0, 1)"));
        }
        Ok(())
    }

    /// Flat `key = value` text, one key per line, every key present.
    /// Floats use the shortest representation that parses back exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "size_min = {}", self.size_min);
        let _ = writeln!(out, "size_max = {}", self.size_max);
        let _ = writeln!(out, "cancel_fraction = {}", self.cancel_fraction);
        for phase in TradingPhase::ALL {
            let _ = writeln!(out, "count.{} = {}", phase.code(), self.counts.get(phase));
        }
        for phase in TradingPhase::ALL {
            let p = self.phase(phase);
            let code = phase.code();
            let _ = writeln!(out, "{code}.buy_fraction = {}", p.buy_fraction);
            for (side, mix) in [("buy", &p.buy), ("sell", &p.sell)] {
                for (name, v) in ALL_FIELDS.iter().zip(mix.values()) {
                    let _ = writeln!(out, "{code}.{side}.{name} = {v}");
                }
            }
        }
        out
    }

    /// Parses [`to_text`](Self::to_text) output. Missing keys keep their
    /// defaults; `#` starts a comment; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = GeneratorConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError::Line { line, msg };
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected key = value, got `{content}`")))?;
            cfg.set(key, value).map_err(err)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T, String>
        where
            T::Err: std::fmt::Display,
        {
            v.parse().map_err(|e| format!("{key}: bad value `{v}`: {e}"))
        }
        match key {
            "seed" => self.seed = num(key, value)?,
            "size_min" => self.size_min = num(key, value)?,
            "size_max" => self.size_max = num(key, value)?,
            "cancel_fraction" => self.cancel_fraction = num(key, value)?,
            _ => {
                let parts: Vec<&str> = key.split('.').collect();
                match parts[..] {
                    ["count", phase] => {
                        let n = num(key, value)?;
                        match TradingPhase::from_code(phase) {
                            Some(TradingPhase::OpeningCallAuction) => self.counts.call = n,
                            Some(TradingPhase::CoolPeriod) => self.counts.cool = n,
                            Some(TradingPhase::ContinuousAuction) => self.counts.cda = n,
                            None => return Err(format!("unknown phase in `{key}`")),
                        }
                    }
                    [phase, "buy_fraction"] => {
                        let phase = TradingPhase::from_code(phase).ok_or(format!("unknown phase in `{key}`"))?;
                        self.phase_mut(phase).buy_fraction = num(key, value)?;
                    }
                    [phase, side, field] => {
                        let phase = TradingPhase::from_code(phase).ok_or(format!("unknown phase in `{key}`"))?;
                        let p = self.phase_mut(phase);
                        let mix = match side {
                            "buy" => &mut p.buy,
                            "sell" => &mut p.sell,
                            _ => return Err(format!("unknown side in `{key}`")),
                        };
                        *mix.field(field).ok_or(format!("unknown key `{key}`"))? = num(key, value)?;
                    }
                    _ => return Err(format!("unknown key `{key}`")),
                }
            }
        }
        Ok(())
    }
}
