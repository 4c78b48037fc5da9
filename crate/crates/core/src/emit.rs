//! CSV run summaries and JSONL event streams.

use std::io::{self, Write};

use serde::Serialize;

use crate::experiments::{EventRecord, EventSink, RunSummary};

pub const CSV_HEADER: &str = "param,value,n,count_d1,count_d2,freq_d1,expected_d1";

/// Significant digits kept in CSV decimals.
pub const CSV_DIGITS: usize = 12;

/// One CSV row: a sweep coordinate and the (replica-aggregated) counts there.
///
/// `d1`/`d2` are the first/second outcome of the experiment: detectors for the
/// interferometer, ports I/II for a lone splitter, up/down for a magnet.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub param: String,
    pub value: f64,
    pub n: u64,
    pub count_d1: u64,
    pub count_d2: u64,
    pub expected_d1: f64,
}

impl SummaryRow {
    pub fn from_summary(param: &str, value: f64, summary: &RunSummary<f64>) -> Self {
        Self {
            param: param.to_string(),
            value,
            n: summary.photons,
            count_d1: summary.counts[0],
            count_d2: summary.counts[1],
            expected_d1: summary.expected[0],
        }
    }

    /// Adds another replica's counts at the same coordinate.
    pub fn absorb(&mut self, summary: &RunSummary<f64>) {
        self.n += summary.photons;
        self.count_d1 += summary.counts[0];
        self.count_d2 += summary.counts[1];
    }

    pub fn freq_d1(&self) -> f64 {
        self.count_d1 as f64 / self.n as f64
    }
}

/// Rounds to [`CSV_DIGITS`] significant digits and prints the shortest
/// decimal that reads back as the rounded value.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", CSV_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    rounded.to_string()
}

pub fn write_summary_csv<W: Write>(mut w: W, rows: &[SummaryRow]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.param,
            format_decimal(r.value),
            r.n,
            r.count_d1,
            r.count_d2,
            format_decimal(r.freq_d1()),
            format_decimal(r.expected_d1),
        )?;
    }
    Ok(())
}

pub fn emit_summary_csv(rows: &[SummaryRow]) -> String {
    let mut buf = Vec::new();
    write_summary_csv(&mut buf, rows).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv is ASCII")
}

#[derive(Serialize)]
struct JsonEvent<'a> {
    photon_id: u64,
    time: f64,
    element: &'a str,
    chosen: &'a str,
    imbalance_before: f64,
    imbalance_after: f64,
}

impl<'a> From<&'a EventRecord<f64>> for JsonEvent<'a> {
    fn from(e: &'a EventRecord<f64>) -> Self {
        JsonEvent {
            photon_id: e.photon_id,
            time: e.time,
            element: e.element.name(),
            chosen: e.chosen.label(),
            imbalance_before: e.imbalance_before,
            imbalance_after: e.imbalance_after,
        }
    }
}

/// Streams events as JSON lines while a run is in progress.
#[derive(Debug)]
pub struct JsonlWriter<W: Write> {
    inner: W,
    written: u64,
}

impl<W: Write> JsonlWriter<W> {
    pub fn new(inner: W) -> Self {
        Self { inner, written: 0 }
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    pub fn write_event(&mut self, event: &EventRecord<f64>) -> io::Result<()> {
        serde_json::to_writer(&mut self.inner, &JsonEvent::from(event))?;
        self.inner.write_all(b"\n")?;
        self.written += 1;
        Ok(())
    }

    pub fn into_inner(mut self) -> io::Result<W> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

impl<W: Write> EventSink<f64> for JsonlWriter<W> {
    fn record(&mut self, event: EventRecord<f64>) -> io::Result<()> {
        self.write_event(&event)
    }
}

pub fn emit_events_jsonl<'a>(events: impl IntoIterator<Item = &'a EventRecord<f64>>) -> String {
    let mut w = JsonlWriter::new(Vec::new());
    for e in events {
        w.write_event(e).expect("writing to a Vec cannot fail");
    }
    String::from_utf8(w.into_inner().expect("Vec flush")).expect("json is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::Port;
    use crate::experiments::{Chosen, Element};

    fn row(value: f64, n: u64, d1: u64, expected: f64) -> SummaryRow {
        SummaryRow {
            param: "delta".into(),
            value,
            n,
            count_d1: d1,
            count_d2: n - d1,
            expected_d1: expected,
        }
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(0.0), "0");
        assert_eq!(format_decimal(-0.0), "0");
        assert_eq!(format_decimal(1.0), "1");
        assert_eq!(format_decimal(0.250_000_000_000_000_1), "0.25");
        assert_eq!(format_decimal(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_decimal(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_decimal(123456.0), "123456");
        assert_eq!(format_decimal(-2.5e-7), "-0.00000025");
    }

    #[test]
    fn csv_rows() {
        assert_eq!(emit_summary_csv(&[]), format!("{CSV_HEADER}\n"));
        let text = emit_summary_csv(&[row(0.0, 1000, 1000, 1.0)]);
        assert_eq!(text.lines().nth(1), Some("delta,0,1000,1000,0,1,1"));
        let rows: Vec<_> = (0..16).map(|i| row(i as f64 * 0.4, 10, 5, 0.5)).collect();
        let text = emit_summary_csv(&rows);
        assert_eq!(text.lines().count(), 17);
        assert!(!text.contains('\r'));
        assert!(text.lines().all(|l| l.split(',').count() == 7));
    }

    fn event(id: u64, time: f64) -> EventRecord<f64> {
        EventRecord {
            photon_id: id,
            time,
            element: Element::Bs1,
            chosen: Chosen::Port(Port::II),
            imbalance_before: 0.5,
            imbalance_after: 0.0,
            response: None,
        }
    }

    #[test]
    fn jsonl_line_per_event_with_stable_keys() {
        let text = emit_events_jsonl(&[event(0, 1.0)]);
        assert_eq!(
            text,
            "{\"photon_id\":0,\"time\":1.0,\"element\":\"bs1\",\"chosen\":\"II\",\
             \"imbalance_before\":0.5,\"imbalance_after\":0.0}\n"
        );
        let v: serde_json::Value = serde_json::from_str(text.trim_end()).unwrap();
        assert_eq!(v["chosen"], "II");
    }

    #[test]
    fn jsonl_times_in_order() {
        let events: Vec<_> = (0..50).map(|i| event(i, i as f64 * 0.5)).collect();
        let text = emit_events_jsonl(&events);
        let times: Vec<f64> = text
            .lines()
            .map(|l| {
                serde_json::from_str::<serde_json::Value>(l).unwrap()["time"]
                    .as_f64()
                    .unwrap()
            })
            .collect();
        assert_eq!(times.len(), 50);
        assert!(times.windows(2).all(|w| w[1] >= w[0]));
    }
}
