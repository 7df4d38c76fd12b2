use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::record::csv_io;
use super::{FlowError, StockCode};
use crate::auction::{QuoteSnapshot, VirtualPricePoint};
use crate::book::Trade;
use crate::market::{Side, Timestamp, TradingPhase};
use crate::relprice::RelPriceSample;
use crate::stats::{KsComparison, PdfEstimate, PowerLawFit};

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(true).from_writer(out)
}

fn write_rows<W: Write, T: Serialize>(out: W, rows: impl IntoIterator<Item = T>) -> Result<(), FlowError> {
    let mut w = writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes only a header line, for outputs with no rows.
fn write_header<W: Write>(mut out: W, header: &str) -> Result<(), FlowError> {
    writeln!(out, "{header}")?;
    Ok(())
}

#[derive(Serialize)]
struct TradeRow {
    stock: StockCode,
    ts_cs: u32,
    price_ticks: u32,
    size: u64,
    buy_id: u64,
    sell_id: u64,
}

impl Serialize for StockCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// `stock,ts_cs,price_ticks,size,buy_id,sell_id`
pub fn write_trades<'a, W: Write>(out: W, trades: impl IntoIterator<Item = (StockCode, &'a Trade)>) -> Result<(), FlowError> {
    let mut rows = trades
        .into_iter()
        .map(|(stock, t)| TradeRow {
            stock,
            ts_cs: t.ts.0,
            price_ticks: t.price.0,
            size: t.size,
            buy_id: t.buy_id,
            sell_id: t.sell_id,
        })
        .peekable();
    if rows.peek().is_none() {
        return write_header(out, "stock,ts_cs,price_ticks,size,buy_id,sell_id");
    }
    write_rows(out, rows)
}

#[derive(Serialize)]
struct QuoteRow {
    stock: StockCode,
    ts_cs: u32,
    best_bid: Option<u32>,
    best_ask: Option<u32>,
}

/// `stock,ts_cs,best_bid,best_ask`; a missing side is an empty field.
pub fn write_quotes<'a, W: Write>(
    out: W,
    quotes: impl IntoIterator<Item = (StockCode, &'a QuoteSnapshot)>,
) -> Result<(), FlowError> {
    let mut rows = quotes
        .into_iter()
        .map(|(stock, q)| QuoteRow {
            stock,
            ts_cs: q.ts.0,
            best_bid: q.quotes.best_bid.map(|p| p.0),
            best_ask: q.quotes.best_ask.map(|p| p.0),
        })
        .peekable();
    if rows.peek().is_none() {
        return write_header(out, "stock,ts_cs,best_bid,best_ask");
    }
    write_rows(out, rows)
}

#[derive(Serialize)]
struct VirtualRow {
    stock: StockCode,
    ts_cs: u32,
    seq: u64,
    price_ticks: Option<u32>,
    volume: Option<u64>,
}

/// `stock,ts_cs,seq,price_ticks,volume`: the call-auction virtual price
/// after each event, empty while the book is uncrossed.
pub fn write_virtual_prices<'a, W: Write>(
    out: W,
    points: impl IntoIterator<Item = (StockCode, &'a VirtualPricePoint)>,
) -> Result<(), FlowError> {
    let mut rows = points
        .into_iter()
        .map(|(stock, p)| VirtualRow {
            stock,
            ts_cs: p.ts.0,
            seq: p.seq,
            price_ticks: p.clearing.map(|c| c.price.0),
            volume: p.clearing.map(|c| c.volume),
        })
        .peekable();
    if rows.peek().is_none() {
        return write_header(out, "stock,ts_cs,seq,price_ticks,volume");
    }
    write_rows(out, rows)
}

pub const SAMPLES_HEADER: &str = "ts_cs,phase,side,x,spread_before,vol_before";

#[derive(Serialize, Deserialize)]
struct SampleRow {
    ts_cs: u32,
    phase: String,
    side: char,
    x: f64,
    spread_before: Option<f64>,
    vol_before: Option<f64>,
}

/// `ts_cs,phase,side,x,spread_before,vol_before`; floats are written in
/// their shortest exact form so the file reads back bit for bit.
pub fn write_samples<'a, W: Write>(out: W, samples: impl IntoIterator<Item = &'a RelPriceSample>) -> Result<(), FlowError> {
    let mut rows = samples
        .into_iter()
        .map(|s| SampleRow {
            ts_cs: s.ts.0,
            phase: s.phase.code().to_string(),
            side: s.side.code(),
            x: s.x,
            spread_before: s.spread_before,
            vol_before: s.vol_before,
        })
        .peekable();
    if rows.peek().is_none() {
        return write_header(out, SAMPLES_HEADER);
    }
    write_rows(out, rows)
}

pub fn read_samples<R: Read>(input: R) -> Result<Vec<RelPriceSample>, FlowError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader.headers().map_err(|e| FlowError::MalformedLine { line: 1, msg: e.to_string() })?.clone();
    if headers.iter().ne(SAMPLES_HEADER.split(',')) {
        return Err(FlowError::MalformedLine { line: 1, msg: format!("expected header `{SAMPLES_HEADER}`") });
    }
    let mut out = Vec::new();
    let mut buf = csv::StringRecord::new();
    loop {
        match reader.read_record(&mut buf) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line() as usize);
                return Err(FlowError::MalformedLine { line, msg: e.to_string() });
            }
        }
        let line = buf.position().map_or(0, |p| p.line() as usize);
        let bad = |msg: String| FlowError::MalformedLine { line, msg };
        let row: SampleRow = buf.deserialize(Some(&headers)).map_err(|e| bad(e.to_string()))?;
        let phase = TradingPhase::from_code(&row.phase).ok_or_else(|| bad(format!("bad phase `{}`", row.phase)))?;
        let side = Side::from_code(&row.side.to_string()).ok_or_else(|| bad(format!("bad side `{}`", row.side)))?;
        out.push(RelPriceSample {
            x: row.x,
            side,
            phase,
            ts: Timestamp(row.ts_cs),
            spread_before: row.spread_before,
            vol_before: row.vol_before,
        });
    }
    Ok(out)
}

#[derive(Serialize)]
struct PdfRow {
    x_lo: f64,
    x_hi: f64,
    x_mid: f64,
    count: u64,
    density: f64,
}

/// One row per bin: `x_lo,x_hi,x_mid,count,density`.
pub fn write_pdf<W: Write>(out: W, pdf: &PdfEstimate) -> Result<(), FlowError> {
    let rows = pdf.edges.windows(2).zip(pdf.counts.iter().zip(&pdf.densities)).map(|(w, (&count, &density))| PdfRow {
        x_lo: w[0],
        x_hi: w[1],
        x_mid: 0.5 * (w[0] + w[1]),
        count,
        density,
    });
    write_rows(out, rows)
}

#[derive(Serialize)]
struct FitRow<'a> {
    label: &'a str,
    alpha: f64,
    stderr: f64,
    x_lo: f64,
    x_hi: f64,
    r2: f64,
    bins: usize,
    samples: usize,
}

/// `label,alpha,stderr,x_lo,x_hi,r2,bins,samples`
pub fn write_fits<'a, W: Write>(out: W, fits: impl IntoIterator<Item = (&'a str, &'a PowerLawFit)>) -> Result<(), FlowError> {
    let mut rows = fits
        .into_iter()
        .map(|(label, f)| FitRow {
            label,
            alpha: f.alpha,
            stderr: f.stderr,
            x_lo: f.x_lo,
            x_hi: f.x_hi,
            r2: f.r2,
            bins: f.bins,
            samples: f.samples,
        })
        .peekable();
    if rows.peek().is_none() {
        return write_header(out, "label,alpha,stderr,x_lo,x_hi,r2,bins,samples");
    }
    write_rows(out, rows)
}

#[derive(Serialize)]
struct KsRow<'a> {
    label: &'a str,
    group_a: usize,
    group_b: usize,
    n: usize,
    m: usize,
    statistic: f64,
    critical: f64,
    pass: bool,
}

/// `label,group_a,group_b,n,m,statistic,critical,pass`
pub fn write_ks_table<'a, W: Write>(
    out: W,
    rows: impl IntoIterator<Item = (&'a str, usize, usize, &'a KsComparison)>,
) -> Result<(), FlowError> {
    let mut rows = rows
        .into_iter()
        .map(|(label, a, b, k)| KsRow {
            label,
            group_a: a,
            group_b: b,
            n: k.n,
            m: k.m,
            statistic: k.statistic,
            critical: k.critical,
            pass: k.passes(),
        })
        .peekable();
    if rows.peek().is_none() {
        return write_header(out, "label,group_a,group_b,n,m,statistic,critical,pass");
    }
    write_rows(out, rows)
}
