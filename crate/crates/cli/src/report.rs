//! Qualitative trend checks on sweep output.

use std::collections::BTreeMap;
use std::fmt;

use crate::output::OutputRecord;

/// A point where ergotropy increased with temperature.
#[derive(Clone, Debug, PartialEq)]
pub struct TrendViolation {
    pub convention: String,
    pub coupling: f64,
    pub temperature: f64,
    pub previous: f64,
    pub current: f64,
}

impl fmt::Display for TrendViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} Omega={} T={}: ergotropy rose from {} to {} (+{:e})",
            self.convention,
            self.coupling,
            self.temperature,
            self.previous,
            self.current,
            self.current - self.previous
        )
    }
}

/// Groups records by (convention, ω, Ω), orders each group by temperature
/// and reports every step where ergotropy increases.
pub fn temperature_trend_violations(records: &[OutputRecord]) -> Vec<TrendViolation> {
    let mut groups: BTreeMap<(String, u64, u64), Vec<&OutputRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((
                r.convention.clone(),
                r.omega.to_bits(),
                r.coupling.to_bits(),
            ))
            .or_default()
            .push(r);
    }
    let mut out = Vec::new();
    for rows in groups.values_mut() {
        rows.sort_by(|a, b| a.temperature.total_cmp(&b.temperature));
        for w in rows.windows(2) {
            if w[1].ergotropy > w[0].ergotropy {
                out.push(TrendViolation {
                    convention: w[1].convention.clone(),
                    coupling: w[1].coupling,
                    temperature: w[1].temperature,
                    previous: w[0].ergotropy,
                    current: w[1].ergotropy,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(t: f64, w: f64) -> OutputRecord {
        OutputRecord {
            omega: 1.0,
            coupling: 0.5,
            temperature: t,
            ln_temperature: t.ln(),
            convention: "INVERTED".into(),
            energy: w,
            passive_energy: 0.0,
            ergotropy: w,
            partition: 4.0,
            oracle_min_energy: None,
        }
    }

    #[test]
    fn detects_increase() {
        let v = temperature_trend_violations(&[rec(3.0, 0.2), rec(1.0, 0.5), rec(2.0, 0.1)]);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].temperature, 3.0);
        assert!(temperature_trend_violations(&[rec(1.0, 0.5), rec(2.0, 0.5)]).is_empty());
    }
}
