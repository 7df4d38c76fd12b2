//! Order-flow files and the trajectory, sample and summary outputs.
//!
//! A flow file is comma-delimited UTF-8 with the header
//! `stock,ts_cs,seq,action,order_id,side,price_ticks,size`. Timestamps are
//! centiseconds since midnight and cancels leave the last three fields
//! empty. Several stocks may share one file; [`demux`] splits them.

mod meta;
mod output;
mod record;

use thiserror::Error;

pub use meta::FlowMeta;
pub use output::{
    read_samples, write_fits, write_ks_table, write_pdf, write_quotes, write_samples, write_trades,
    write_virtual_prices, SAMPLES_HEADER,
};
pub use record::{demux, mux, parse_flow, read_flow, write_flow, FlowReader, FlowRecord, StockCode, FLOW_HEADER};

#[derive(Debug, Error)]
pub enum FlowError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("line {line}: out of order, (ts, seq) goes backwards from line {previous}")]
    UnsortedStream { line: usize, previous: usize },
}
