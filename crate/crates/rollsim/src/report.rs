//! Flat `key = value` report files, one metric per line. Undefined values
//! are written as `NA`.

use std::fmt::Write as _;

use rollsim_core::metrics::RESPONSE_THRESHOLD;
use rollsim_core::{reduction_metrics, response_delay, ReductionReport, Sample};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Report {
    pub metrics: ReductionReport,
    /// Passive minus active time to half the peak roll angle, s.
    pub response_delay: Option<f64>,
}

impl Report {
    pub fn from_runs(passive: &[Sample], active: &[Sample]) -> Self {
        Self {
            metrics: reduction_metrics(passive, active),
            response_delay: response_delay(passive, active, RESPONSE_THRESHOLD),
        }
    }

    fn fields(&self) -> [(&'static str, Option<f64>); 12] {
        let m = &self.metrics;
        [
            ("peak_roll_passive", Some(m.peak_roll_passive)),
            ("peak_roll_active", Some(m.peak_roll_active)),
            ("peak_rollrate_passive", Some(m.peak_rollrate_passive)),
            ("peak_rollrate_active", Some(m.peak_rollrate_active)),
            ("pk2pk_rollrate_passive", Some(m.pk2pk_rollrate_passive)),
            ("pk2pk_rollrate_active", Some(m.pk2pk_rollrate_active)),
            ("reduction_roll", m.reduction_roll),
            ("reduction_rollrate", m.reduction_rollrate),
            ("reduction_pk2pk", m.reduction_pk2pk),
            ("oscillation_index_passive", Some(m.oscillation_index_passive)),
            ("oscillation_index_active", Some(m.oscillation_index_active)),
            ("response_delay", self.response_delay),
        ]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.fields() {
            match value {
                Some(v) => writeln!(out, "{key} = {v}"),
                None => writeln!(out, "{key} = NA"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let keys = Report { metrics: reduction_metrics(&[], &[]), response_delay: None }.fields().map(|f| f.0);
        let mut values: [Option<Option<f64>>; 12] = [None; 12];
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(format!("line {}: expected `key = value`", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let i = keys.iter().position(|k| *k == key).ok_or(format!("line {}: unknown key `{key}`", n + 1))?;
            if values[i].is_some() {
                return Err(format!("line {}: duplicate key `{key}`", n + 1));
            }
            values[i] = Some(if value == "NA" {
                None
            } else {
                Some(value.parse().map_err(|_| format!("line {}: bad number for `{key}`", n + 1))?)
            });
        }
        let mut got = [None; 12];
        for (i, v) in values.into_iter().enumerate() {
            got[i] = v.ok_or(format!("missing key `{}`", keys[i]))?;
        }
        let required = |i: usize| got[i].ok_or(format!("`{}` cannot be NA", keys[i]));
        Ok(Report {
            metrics: ReductionReport {
                peak_roll_passive: required(0)?,
                peak_roll_active: required(1)?,
                peak_rollrate_passive: required(2)?,
                peak_rollrate_active: required(3)?,
                pk2pk_rollrate_passive: required(4)?,
                pk2pk_rollrate_active: required(5)?,
                reduction_roll: got[6],
                reduction_rollrate: got[7],
                reduction_pk2pk: got[8],
                oscillation_index_passive: required(9)?,
                oscillation_index_active: required(10)?,
            },
            response_delay: got[11],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            metrics: ReductionReport {
                peak_roll_passive: 0.06,
                peak_roll_active: 0.024,
                peak_rollrate_passive: 1.0 / 3.0,
                peak_rollrate_active: 1e-17,
                pk2pk_rollrate_passive: 0.7,
                pk2pk_rollrate_active: 0.0,
                reduction_roll: Some(0.6),
                reduction_rollrate: Some(1.0 - 3e-17),
                reduction_pk2pk: None,
                oscillation_index_passive: 12.5,
                oscillation_index_active: 0.1 + 0.2,
            },
            response_delay: Some(-0.3125),
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let r = sample();
        assert_eq!(Report::parse(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn undefined_values_are_na() {
        let text = sample().to_text();
        assert!(text.contains("reduction_pk2pk = NA\n"));
        assert!(text.starts_with("peak_roll_passive = 0.06\n"));
    }

    #[test]
    fn parse_errors_name_the_key() {
        let text = sample().to_text();
        let missing = text.replace("response_delay = -0.3125\n", "");
        assert!(Report::parse(&missing).unwrap_err().contains("response_delay"));
        let bad = text.replace("peak_roll_active = 0.024", "peak_roll_active = NA");
        assert!(Report::parse(&bad).unwrap_err().contains("peak_roll_active"));
        assert!(Report::parse(&format!("{text}bogus = 1\n")).unwrap_err().contains("bogus"));
    }
}
