//! Persistent reports: schema-versioned JSON with rationals as "p/q"
//! strings, per-k sequence rows with monotonicity flags and rate columns,
//! and verifier result batches. Identical (command, seed, config) inputs
//! produce byte-identical serialized reports.

use crate::measures::MeasureResult;
use crate::scalar::Scalar;
use crate::verify::VerifierReport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureCell {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::io::rat_opt"
    )]
    pub exact: Option<Scalar>,
    pub is_exact: bool,
}

impl From<&MeasureResult> for MeasureCell {
    fn from(m: &MeasureResult) -> Self {
        MeasureCell {
            value: m.value,
            lower: m.lower,
            upper: m.upper,
            exact: m.exact.clone(),
            is_exact: m.is_exact(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequenceRow {
    pub k: usize,
    /// Measure name -> cell; BTreeMap keeps serialization order stable.
    pub measures: BTreeMap<String, MeasureCell>,
    /// Rate columns k*c(A(k)) and k*d(A(k)) when those measures are present.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rates: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<SequenceRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verifiers: Vec<VerifierReport>,
    /// Per-measure flag: value column non-increasing in k.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monotone: BTreeMap<String, bool>,
    /// Wall-clock timing; excluded from serialization so identical inputs
    /// yield byte-identical reports.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            seed,
            rows: Vec::new(),
            verifiers: Vec::new(),
            monotone: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    /// Recomputes the per-measure monotonicity flags from the rows.
    pub fn flag_monotone(&mut self) {
        let mut names: Vec<String> = Vec::new();
        for row in &self.rows {
            for name in row.measures.keys() {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        for name in names {
            let vals: Vec<f64> = self
                .rows
                .iter()
                .filter_map(|r| r.measures.get(&name).map(|c| c.value))
                .collect();
            let mono = vals.windows(2).all(|w| w[1] <= w[0] + 1e-12);
            self.monotone.insert(name, mono);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// CSV rendering of the sequence rows (header + one line per k).
    pub fn to_csv(&self) -> String {
        let mut names: Vec<String> = Vec::new();
        for row in &self.rows {
            for name in row.measures.keys() {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        let mut out = String::from("k");
        for n in &names {
            out.push_str(&format!(",{n},{n}_exact"));
        }
        for n in &names {
            if n == "c" || n == "d" {
                out.push_str(&format!(",k_{n}"));
            }
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.k.to_string());
            for n in &names {
                match row.measures.get(n) {
                    Some(cell) => {
                        let exact = cell
                            .exact
                            .as_ref()
                            .map(crate::scalar::format_scalar)
                            .unwrap_or_default();
                        out.push_str(&format!(",{},{}", cell.value, exact));
                    }
                    None => out.push_str(",,"),
                }
            }
            for n in &names {
                if n == "c" || n == "d" {
                    let rate = row.rates.get(n).copied().unwrap_or(f64::NAN);
                    out.push_str(&format!(",{rate}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn cell(v: f64) -> MeasureCell {
        MeasureCell {
            value: v,
            lower: v,
            upper: v,
            exact: Some(ratio((v * 4.0) as i64, 4)),
            is_exact: true,
        }
    }

    #[test]
    fn report_round_trips_json() {
        let mut r = Report::new("sequence --kmax 2", 3);
        for k in 1..=2 {
            let mut m = BTreeMap::new();
            m.insert("c".to_string(), cell(1.0 / k as f64));
            r.rows.push(SequenceRow {
                k,
                measures: m,
                rates: BTreeMap::new(),
            });
        }
        r.flag_monotone();
        let s = r.to_json();
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back.rows.len(), 2);
        assert_eq!(back.rows[1].measures["c"].exact, Some(ratio(1, 2)));
        assert!(back.monotone["c"]);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn monotone_flag_detects_increase() {
        let mut r = Report::new("x", 0);
        for (k, v) in [(1, 0.25), (2, 0.5)] {
            let mut m = BTreeMap::new();
            m.insert("delta".to_string(), cell(v));
            r.rows.push(SequenceRow {
                k,
                measures: m,
                rates: BTreeMap::new(),
            });
        }
        r.flag_monotone();
        assert!(!r.monotone["delta"]);
    }

    #[test]
    fn csv_has_rate_columns() {
        let mut r = Report::new("x", 0);
        let mut m = BTreeMap::new();
        m.insert("c".to_string(), cell(0.5));
        let mut rates = BTreeMap::new();
        rates.insert("c".to_string(), 1.0);
        r.rows.push(SequenceRow {
            k: 2,
            measures: m,
            rates,
        });
        let csv = r.to_csv();
        assert!(csv.starts_with("k,c,c_exact,k_c"));
        assert!(csv.contains("2,0.5,1/2,1"));
    }
}
