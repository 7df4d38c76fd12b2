use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use szlob_core::auction::{run_day, DayRecord};
use szlob_core::flow::{demux, read_flow, read_samples, FlowMeta, StockCode};
use szlob_core::market::TickPrice;
use szlob_core::relprice::RelPriceSample;

use crate::UsageError;

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

pub fn samples(path: &Path) -> Result<Vec<RelPriceSample>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_samples(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

/// The flag wins; otherwise the synthetic-flow sidecar has to exist.
pub fn prev_close(flow: &Path, flag: Option<u32>) -> Result<TickPrice> {
    if let Some(p) = flag {
        if p == 0 {
            return Err(UsageError("--prev-close must be positive".into()).into());
        }
        return Ok(TickPrice(p));
    }
    let sidecar = FlowMeta::sidecar_path(flow);
    if !sidecar.exists() {
        return Err(UsageError(format!(
            "no --prev-close given and no metadata file {} next to the flow",
            sidecar.display()
        ))
        .into());
    }
    let text = fs::read_to_string(&sidecar).with_context(|| format!("reading {}", sidecar.display()))?;
    let meta = FlowMeta::parse(&text).with_context(|| format!("reading {}", sidecar.display()))?;
    Ok(meta.prev_close)
}

/// Reads a flow file and replays each stock independently, in stock order.
pub fn replay_flow(path: &Path, prev_close: TickPrice) -> Result<Vec<(StockCode, DayRecord)>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let records = read_flow(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    let stocks: Vec<_> = demux(records).into_iter().collect();
    log::info!("{}: {} stocks", path.display(), stocks.len());
    Ok(stocks
        .into_par_iter()
        .map(|(code, events)| {
            let (record, _) = run_day(&events, prev_close);
            for r in &record.rejections {
                log::warn!("{}: stock {code} rejected event at {} seq {}: {}", path.display(), r.ts, r.seq, r.error);
            }
            (code, record)
        })
        .collect())
}
