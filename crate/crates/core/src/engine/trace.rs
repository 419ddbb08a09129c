use std::io::Write;

use serde::{Deserialize, Serialize};

use super::IterateVariant;
use crate::geometry::PlaneProjection;
use crate::linalg::Amplitude;

pub const CSV_HEADER: [&str; 6] = [
    "iter",
    "overlap_re",
    "overlap_im",
    "success_prob",
    "predicted_prob",
    "queries",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iter: u64,
    pub overlap_with_x0: Amplitude,
    pub success_prob: f64,
    pub predicted_prob: f64,
    /// Oracle queries spent to reach this iterate.
    pub queries: u64,
    /// `None` when `U|0>` is parallel to `|x0>`.
    pub plane: Option<PlaneProjection>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub outcome: usize,
    pub found: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub n: usize,
    pub variant: IterateVariant,
    /// `asin |<x0|U|0>|`, computed once as instrumentation.
    pub alpha: f64,
    /// Start state exactly orthogonal to `|x0>`: the iterate is a rotation
    /// by zero and the run cannot succeed.
    pub zero_overlap: bool,
    pub degenerate_plane: bool,
    pub records: Vec<IterationRecord>,
    /// Standard-basis measurement of the final iterate.
    pub measurement: Measurement,
}

impl IterationTrace {
    /// Record with the highest success probability; earliest on ties.
    pub fn best(&self) -> &IterationRecord {
        self.records
            .iter()
            .reduce(|best, r| if r.success_prob > best.success_prob { r } else { best })
            .expect("a trace always holds the initial record")
    }

    pub fn last(&self) -> &IterationRecord {
        self.records.last().expect("a trace always holds the initial record")
    }

    /// CSV with header `iter,overlap_re,overlap_im,success_prob,predicted_prob,queries`.
    /// Reals are written in shortest round-trip form.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.records {
            w.write_record([
                r.iter.to_string(),
                r.overlap_with_x0.re.to_string(),
                r.overlap_with_x0.im.to_string(),
                r.success_prob.to_string(),
                r.predicted_prob.to_string(),
                r.queries.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{run, Preparation};
    use super::*;
    use crate::oracle::OracleSpec;

    fn small_trace() -> IterationTrace {
        run(
            OracleSpec::new(3, 6).unwrap(),
            &Preparation::uniform(3).unwrap(),
            IterateVariant::MinusSign,
            4,
            9,
        )
        .unwrap()
    }

    #[test]
    fn csv_layout_and_round_trip_precision() {
        let trace = small_trace();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "iter,overlap_re,overlap_im,success_prob,predicted_prob,queries"
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), 5);
        for (row, rec) in rows.iter().zip(&trace.records) {
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields[0].parse::<u64>().unwrap(), rec.iter);
            assert_eq!(fields[3].parse::<f64>().unwrap(), rec.success_prob);
            assert_eq!(fields[4].parse::<f64>().unwrap(), rec.predicted_prob);
        }
    }

    #[test]
    fn json_round_trip() {
        let trace = small_trace();
        let json = serde_json::to_string(&trace).unwrap();
        let back: IterationTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, trace);
    }

    #[test]
    fn best_picks_peak() {
        let trace = small_trace();
        // N = 8: peak at k = 2
        assert_eq!(trace.best().iter, 2);
    }
}
