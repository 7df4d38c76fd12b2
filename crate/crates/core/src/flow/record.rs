use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FlowError;
use crate::auction::{Action, OrderEvent};
use crate::market::{Side, TickPrice, Timestamp, DAY_CS};

pub const FLOW_HEADER: [&str; 8] = ["stock", "ts_cs", "seq", "action", "order_id", "side", "price_ticks", "size"];

/// Six-digit exchange stock code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StockCode([u8; 6]);

impl StockCode {
    /// Code `000001` for index 0, `000002` for index 1 and so on.
    pub fn from_index(index: usize) -> Self {
        format!("{:06}", index + 1).parse().expect("index below 999999")
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ascii digits")
    }
}

impl FromStr for StockCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: [u8; 6] = s.as_bytes().try_into().map_err(|_| format!("stock code `{s}` is not 6 digits"))?;
        if !bytes.iter().all(u8::is_ascii_digit) {
            return Err(format!("stock code `{s}` is not 6 digits"));
        }
        Ok(StockCode(bytes))
    }
}

impl fmt::Display for StockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One line of a flow file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowRecord {
    pub stock: StockCode,
    pub event: OrderEvent,
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    stock: String,
    ts_cs: u32,
    seq: u64,
    action: char,
    order_id: u64,
    side: Option<char>,
    price_ticks: Option<u32>,
    size: Option<u64>,
}

impl Row {
    fn into_record(self) -> Result<FlowRecord, String> {
        let stock = self.stock.parse()?;
        if self.ts_cs >= DAY_CS {
            return Err(format!("timestamp {} cs is past the end of the day", self.ts_cs));
        }
        let ts = Timestamp(self.ts_cs);
        let action = match self.action {
            'P' => {
                let (Some(side), Some(price), Some(size)) = (self.side, self.price_ticks, self.size) else {
                    return Err("place record needs side, price_ticks and size".into());
                };
                let side = Side::from_code(&side.to_string()).ok_or(format!("bad side `{side}`"))?;
                Action::Place { id: self.order_id, side, price: TickPrice(price), size }
            }
            'C' => {
                if self.side.is_some() || self.price_ticks.is_some() || self.size.is_some() {
                    return Err("cancel record must leave side, price_ticks and size empty".into());
                }
                Action::Cancel { id: self.order_id }
            }
            other => return Err(format!("bad action `{other}`")),
        };
        Ok(FlowRecord { stock, event: OrderEvent { ts, seq: self.seq, action } })
    }

    fn from_record(r: &FlowRecord) -> Self {
        let (action, side, price_ticks, size) = match r.event.action {
            Action::Place { side, price, size, .. } => ('P', Some(side.code()), Some(price.0), Some(size)),
            Action::Cancel { .. } => ('C', None, None, None),
        };
        Row {
            stock: r.stock.to_string(),
            ts_cs: r.event.ts.0,
            seq: r.event.seq,
            action,
            order_id: r.event.id(),
            side,
            price_ticks,
            size,
        }
    }
}

/// Streaming, validating reader over a flow file. Yields records in file
/// order and stops after the first malformed or out-of-order line.
pub struct FlowReader<R> {
    reader: csv::Reader<R>,
    headers: csv::StringRecord,
    buf: csv::StringRecord,
    last: Option<(Timestamp, u64, usize)>,
    failed: bool,
}

impl<R: Read> Iterator for FlowReader<R> {
    type Item = Result<FlowRecord, FlowError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let result = match self.reader.read_record(&mut self.buf) {
            Ok(false) => return None,
            Ok(true) => self.check(),
            Err(e) => Err(match e.kind() {
                csv::ErrorKind::Io(_) => csv_io(e),
                _ => FlowError::MalformedLine { line: e.position().map_or(0, |p| p.line() as usize), msg: e.to_string() },
            }),
        };
        self.failed = result.is_err();
        Some(result)
    }
}

impl<R: Read> FlowReader<R> {
    fn check(&mut self) -> Result<FlowRecord, FlowError> {
        let line = self.buf.position().map_or(0, |p| p.line() as usize);
        let malformed = |msg: String| FlowError::MalformedLine { line, msg };
        let row: Row = self.buf.deserialize(Some(&self.headers)).map_err(|e| malformed(e.to_string()))?;
        let record = row.into_record().map_err(malformed)?;
        let key = record.event.sort_key();
        if let Some((ts, seq, previous)) = self.last {
            if key < (ts, seq) {
                return Err(FlowError::UnsortedStream { line, previous });
            }
        }
        self.last = Some((key.0, key.1, line));
        Ok(record)
    }
}

/// Opens a flow stream; the header line is mandatory and checked here.
pub fn parse_flow<R: Read>(input: R) -> Result<FlowReader<R>, FlowError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader.headers().map_err(|e| FlowError::MalformedLine { line: 1, msg: e.to_string() })?.clone();
    if headers.iter().ne(FLOW_HEADER) {
        return Err(FlowError::MalformedLine {
            line: 1,
            msg: format!("expected header `{}`", FLOW_HEADER.join(",")),
        });
    }
    Ok(FlowReader { reader, headers, buf: csv::StringRecord::new(), last: None, failed: false })
}

/// Reads a whole flow stream into memory.
pub fn read_flow<R: Read>(input: R) -> Result<Vec<FlowRecord>, FlowError> {
    parse_flow(input)?.collect()
}

/// Writes the header and the records in order.
pub fn write_flow<'a, W: Write>(records: impl IntoIterator<Item = &'a FlowRecord>, out: W) -> Result<(), FlowError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(FLOW_HEADER).map_err(csv_io)?;
    for r in records {
        w.serialize(Row::from_record(r)).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_io(e: csv::Error) -> FlowError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => FlowError::Io(io),
        other => FlowError::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Splits a pooled stream into per-stock event lists, keeping file order.
pub fn demux(records: impl IntoIterator<Item = FlowRecord>) -> BTreeMap<StockCode, Vec<OrderEvent>> {
    let mut out: BTreeMap<StockCode, Vec<OrderEvent>> = BTreeMap::new();
    for r in records {
        out.entry(r.stock).or_default().push(r.event);
    }
    out
}

/// Merges per-stock streams into one file order: by `(ts, seq)`, then by
/// stock code. Each input must already be sorted.
pub fn mux(streams: &[(StockCode, &[OrderEvent])]) -> Vec<FlowRecord> {
    let mut out: Vec<FlowRecord> = streams
        .iter()
        .flat_map(|(stock, events)| events.iter().map(|&event| FlowRecord { stock: *stock, event }))
        .collect();
    out.sort_by_key(|r| (r.event.sort_key(), r.stock));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const HEADER: &str = "stock,ts_cs,seq,action,order_id,side,price_ticks,size\n";

    fn parse(body: &str) -> Result<Vec<FlowRecord>, FlowError> {
        read_flow(format!("{HEADER}{body}").as_bytes())
    }

    #[test]
    fn place_line() {
        let recs = parse("000001,3330000,1,P,42,B,1000,500\n").unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].stock.as_str(), "000001");
        assert_eq!(recs[0].event.ts, Timestamp::from_hms(9, 15, 0, 0));
        assert_eq!(recs[0].event, OrderEvent::place(Timestamp(3_330_000), 1, 42, Side::Buy, TickPrice(1000), 500));
    }

    #[test]
    fn time_conversion() {
        // 9:15 is 9.25 hours past midnight
        assert_eq!(Timestamp::from_hms(9, 15, 0, 0).0, (9.25f64 * 3600.0 * 100.0) as u32);
        // the same digits read as milliseconds overflow the day
        assert!(matches!(parse("000001,33300000,1,P,42,B,1000,500\n"), Err(FlowError::MalformedLine { line: 2, .. })));
    }

    #[test]
    fn cancel_line() {
        let recs = parse("000001,3330000,1,P,42,B,1000,500\n000001,3330001,2,C,42,,,\n").unwrap();
        assert_eq!(recs[1].event, OrderEvent::cancel(Timestamp(3_330_001), 2, 42));
    }

    #[test]
    fn header_only() {
        assert!(parse("").unwrap().is_empty());
        assert!(matches!(read_flow("".as_bytes()), Err(FlowError::MalformedLine { line: 1, .. })));
        assert!(matches!(read_flow("a,b\n".as_bytes()), Err(FlowError::MalformedLine { line: 1, .. })));
    }

    #[test]
    fn malformed_lines_name_the_line() {
        let cases = [
            "000001,3330000,1,P,42,B,1000\n",
            "00001,3330000,1,P,42,B,1000,500\n",
            "000001,3330000,1,X,42,B,1000,500\n",
            "000001,3330000,1,P,42,Q,1000,500\n",
            "000001,3330000,1,P,42,,1000,500\n",
            "000001,3330000,1,C,42,B,,\n",
            "000001,abc,1,P,42,B,1000,500\n",
        ];
        for body in cases {
            let body = format!("000001,3330000,0,P,1,S,1000,100\n{body}");
            match parse(&body) {
                Err(FlowError::MalformedLine { line, .. }) => assert_eq!(line, 3, "{body}"),
                other => panic!("{body}: {other:?}"),
            }
        }
    }

    #[test]
    fn unsorted() {
        let body = "000001,3330005,1,P,1,B,1000,5\n000002,3330004,9,P,1,B,1000,5\n";
        assert!(matches!(parse(body), Err(FlowError::UnsortedStream { line: 3, previous: 2 })));
        // equal keys are fine, e.g. two stocks at the same instant
        let body = "000001,3330005,1,P,1,B,1000,5\n000002,3330005,1,P,1,B,1000,5\n";
        assert_eq!(parse(body).unwrap().len(), 2);
    }

    #[test]
    fn deterministic_bytes() {
        let recs = parse("000001,3330000,1,P,42,B,1000,500\n000001,3330001,2,C,42,,,\n").unwrap();
        let mut a = Vec::new();
        write_flow(&recs, &mut a).unwrap();
        assert_eq!(String::from_utf8(a).unwrap(), format!("{HEADER}000001,3330000,1,P,42,B,1000,500\n000001,3330001,2,C,42,,,\n"));
    }

    #[test]
    fn demux_and_mux() {
        let a = StockCode::from_index(0);
        let b = StockCode::from_index(1);
        assert_eq!(b.as_str(), "000002");
        let ea = vec![OrderEvent::cancel(Timestamp(5), 0, 1), OrderEvent::cancel(Timestamp(9), 1, 2)];
        let eb = vec![OrderEvent::cancel(Timestamp(5), 0, 7)];
        let pooled = mux(&[(b, &eb), (a, &ea)]);
        assert_eq!(pooled.iter().map(|r| r.stock).collect::<Vec<_>>(), vec![a, b, a]);
        let split = demux(pooled);
        assert_eq!(split[&a], ea);
        assert_eq!(split[&b], eb);
    }

    pub(crate) fn arb_record() -> impl Strategy<Value = FlowRecord> {
        (0usize..999_999, 0u32..DAY_CS, any::<u64>(), any::<u64>(), any::<bool>(), any::<bool>(), any::<u32>(), any::<u64>())
            .prop_map(|(code, ts, seq, id, place, buy, price, size)| {
                let side = if buy { Side::Buy } else { Side::Sell };
                let event = if place {
                    OrderEvent::place(Timestamp(ts), seq, id, side, TickPrice(price), size)
                } else {
                    OrderEvent::cancel(Timestamp(ts), seq, id)
                };
                FlowRecord { stock: StockCode::from_index(code), event }
            })
    }

    proptest! {
        #[test]
        fn round_trip(mut recs in proptest::collection::vec(arb_record(), 0..200)) {
            recs.sort_by_key(|r| r.event.sort_key());
            let mut buf = Vec::new();
            write_flow(&recs, &mut buf).unwrap();
            let back = read_flow(buf.as_slice()).unwrap();
            prop_assert_eq!(&back, &recs);
            let mut again = Vec::new();
            write_flow(&back, &mut again).unwrap();
            prop_assert_eq!(buf, again);
        }
    }
}
