use std::path::{Path, PathBuf};

use crate::market::TickPrice;
use crate::synth::{ConfigError, GeneratorConfig};

/// Ground truth stored next to a synthetic flow file.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowMeta {
    pub prev_close: TickPrice,
    pub stocks: usize,
    pub config: GeneratorConfig,
}

impl FlowMeta {
    /// `<flow path>.meta`
    pub fn sidecar_path(flow: &Path) -> PathBuf {
        let mut s = flow.as_os_str().to_owned();
        s.push(".meta");
        PathBuf::from(s)
    }

    pub fn to_text(&self) -> String {
        format!("prev_close = {}\nstocks = {}\n{}", self.prev_close.0, self.stocks, self.config.to_text())
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut prev_close = None;
        let mut stocks = None;
        let mut rest = String::new();
        for (i, line) in text.lines().enumerate() {
            let key = line.split('=').next().unwrap_or("").trim();
            let value = line.split_once('=').map(|(_, v)| v.trim());
            let num = |v: Option<&str>| {
                v.and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| ConfigError::Line { line: i + 1, msg: format!("bad value for `{key}`") })
            };
            match key {
                "prev_close" => prev_close = Some(num(value)?),
                "stocks" => stocks = Some(num(value)?),
                // keep line numbers aligned for config errors
                _ => rest.push_str(line),
            }
            rest.push('\n');
        }
        let missing = |key: &str| ConfigError::Invalid { key: key.into(), msg: "missing from metadata".into() };
        let prev_close = prev_close.ok_or_else(|| missing("prev_close"))?;
        let prev_close = u32::try_from(prev_close)
            .ok()
            .filter(|&p| p > 0)
            .ok_or_else(|| ConfigError::Invalid { key: "prev_close".into(), msg: "out of range".into() })?;
        Ok(FlowMeta {
            prev_close: TickPrice(prev_close),
            stocks: stocks.ok_or_else(|| missing("stocks"))? as usize,
            config: GeneratorConfig::parse(&rest)?,
        })
    }
}
