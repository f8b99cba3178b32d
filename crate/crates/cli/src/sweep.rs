//! Temperature and coupling sweeps, and the (T, Ω) grid.
//!
//! Points are evaluated in parallel on the current rayon pool and collected
//! in grid order, so the output does not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use gravcat_core::gravcat::partition_function;
use gravcat_core::{
    build_hamiltonian, ergotropy_trace, oracle_min_energy, thermal_state, Error, ModelParams,
    OracleConfig, ThermalConvention, ThermalSpec,
};
use rayon::prelude::*;

use crate::error::{classify, CliError, ConfigError};
use crate::output::OutputRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVariable {
    Temperature,
    Coupling,
}

impl FromStr for SweepVariable {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "temperature" | "t" => Ok(Self::Temperature),
            "coupling" => Ok(Self::Coupling),
            _ => Err(ConfigError::new(
                "var",
                format!("`{s}` is not one of temperature, coupling"),
            )),
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Temperature => "temperature",
            Self::Coupling => "coupling",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(Self::Linear),
            "log" | "logarithmic" => Ok(Self::Log),
            _ => Err(ConfigError::new(
                "scale",
                format!("`{s}` is not one of linear, log"),
            )),
        }
    }
}

/// `points` values from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
}

impl Range {
    pub fn new(start: f64, stop: f64, points: usize, scale: Scale) -> Self {
        Self {
            start,
            stop,
            points,
            scale,
        }
    }

    /// `prefix` is prepended to field names in errors (`t_` / `c_` for grids).
    /// `positive` demands `start > 0` even on a linear scale.
    pub fn validate(&self, prefix: &str, positive: bool) -> Result<(), ConfigError> {
        let field = |name: &str| format!("{prefix}{name}");
        if self.points < 2 {
            return Err(ConfigError::new(
                field("points"),
                "at least 2 points are required",
            ));
        }
        if !self.start.is_finite() {
            return Err(ConfigError::new(field("start"), "must be finite"));
        }
        if !self.stop.is_finite() {
            return Err(ConfigError::new(field("stop"), "must be finite"));
        }
        if self.start >= self.stop {
            return Err(ConfigError::new(field("start"), "must be below stop"));
        }
        if (positive || self.scale == Scale::Log) && self.start <= 0.0 {
            return Err(ConfigError::new(field("start"), "must be positive"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.points - 1 {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * f,
                    Scale::Log => {
                        let (a, b) = (self.start.log10(), self.stop.log10());
                        10f64.powf(a + (b - a) * f)
                    }
                }
            })
            .collect()
    }
}

/// A one-dimensional sweep. The parameter that is not swept is taken from
/// `coupling` (temperature sweeps) or `temperature` (coupling sweeps).
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub range: Range,
    pub omega: f64,
    pub coupling: Option<f64>,
    pub temperature: Option<f64>,
    pub conventions: Vec<ThermalConvention>,
    pub oracle: Option<OracleConfig>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.range
            .validate("", self.variable == SweepVariable::Temperature)?;
        if self.variable == SweepVariable::Coupling && self.range.start < 0.0 {
            return Err(ConfigError::new("start", "coupling must be non-negative"));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(ConfigError::new("omega", "must be positive and finite"));
        }
        match self.variable {
            SweepVariable::Temperature => match self.coupling {
                Some(c) if c >= 0.0 && c.is_finite() => {}
                Some(_) => return Err(ConfigError::new("coupling", "must be non-negative")),
                None => {
                    return Err(ConfigError::new(
                        "coupling",
                        "required for a temperature sweep",
                    ))
                }
            },
            SweepVariable::Coupling => match self.temperature {
                Some(t) if t > 0.0 && t.is_finite() => {}
                Some(_) => return Err(ConfigError::new("temperature", "must be positive")),
                None => {
                    return Err(ConfigError::new(
                        "temperature",
                        "required for a coupling sweep",
                    ))
                }
            },
        }
        if self.conventions.is_empty() {
            return Err(ConfigError::new(
                "convention",
                "at least one convention is required",
            ));
        }
        Ok(())
    }

    /// `(coupling, temperature)` for one swept value.
    fn point(&self, value: f64) -> (f64, f64) {
        match self.variable {
            SweepVariable::Temperature => (self.coupling.unwrap_or_default(), value),
            SweepVariable::Coupling => (value, self.temperature.unwrap_or_default()),
        }
    }
}

/// Oracle seed for the point at output index `index`.
pub fn point_seed(run_seed: u64, index: usize) -> u64 {
    run_seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Evaluates one parameter point.
pub fn evaluate_point(
    omega: f64,
    coupling: f64,
    temperature: f64,
    convention: ThermalConvention,
    oracle: Option<&OracleConfig>,
) -> Result<OutputRecord, Error> {
    let p = ModelParams::new(omega, coupling)?;
    let t = ThermalSpec::new(temperature, convention)?;
    let h = build_hamiltonian(&p);
    let rho = thermal_state(&p, &t)?;
    let report = ergotropy_trace(&rho, &h)?;
    let partition = match partition_function(&p, &t) {
        Ok(z) => z,
        Err(Error::PartitionOverflow { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    Ok(OutputRecord {
        omega,
        coupling,
        temperature,
        ln_temperature: temperature.ln(),
        convention: convention.to_string(),
        energy: report.energy,
        passive_energy: report.passive_energy,
        ergotropy: report.ergotropy,
        partition,
        oracle_min_energy: oracle.map(|cfg| oracle_min_energy(&rho, &h, cfg)),
    })
}

/// One record per (convention, grid point), conventions outermost.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<OutputRecord>, CliError> {
    spec.validate()?;
    let values = spec.range.values();
    let jobs: Vec<(usize, ThermalConvention, f64)> = spec
        .conventions
        .iter()
        .flat_map(|&conv| values.iter().map(move |&v| (conv, v)))
        .enumerate()
        .map(|(i, (conv, v))| (i, conv, v))
        .collect();
    jobs.par_iter()
        .map(|&(i, conv, v)| {
            let (coupling, temperature) = spec.point(v);
            let oracle = spec
                .oracle
                .map(|cfg| cfg.with_seed(point_seed(cfg.seed(), i)));
            evaluate_point(spec.omega, coupling, temperature, conv, oracle.as_ref())
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(classify)
}

/// Ergotropy on a (T, Ω) grid, temperature outer and coupling inner.
#[derive(Clone, Debug, PartialEq)]
pub struct GridResult {
    pub temperatures: Vec<f64>,
    pub couplings: Vec<f64>,
    pub records: Vec<OutputRecord>,
}

impl GridResult {
    /// Row `i` holds temperature `i` across all couplings.
    pub fn ergotropy(&self) -> Vec<Vec<f64>> {
        self.records
            .chunks(self.couplings.len())
            .map(|row| row.iter().map(|r| r.ergotropy).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub omega: f64,
    pub temperature: Range,
    pub coupling: Range,
    pub convention: ThermalConvention,
    pub oracle: Option<OracleConfig>,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(ConfigError::new("omega", "must be positive and finite"));
        }
        self.temperature.validate("t_", true)?;
        self.coupling.validate("c_", false)?;
        if self.coupling.start < 0.0 {
            return Err(ConfigError::new("c_start", "coupling must be non-negative"));
        }
        Ok(())
    }
}

pub fn run_grid(spec: &GridSpec) -> Result<GridResult, CliError> {
    spec.validate()?;
    let temperatures = spec.temperature.values();
    let couplings = spec.coupling.values();
    let n = couplings.len();
    let records = (0..temperatures.len() * n)
        .into_par_iter()
        .map(|i| {
            let oracle = spec
                .oracle
                .map(|cfg| cfg.with_seed(point_seed(cfg.seed(), i)));
            evaluate_point(
                spec.omega,
                couplings[i % n],
                temperatures[i / n],
                spec.convention,
                oracle.as_ref(),
            )
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(classify)?;
    Ok(GridResult {
        temperatures,
        couplings,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temperature_sweep(points: usize) -> SweepSpec {
        SweepSpec {
            variable: SweepVariable::Temperature,
            range: Range::new(0.1, 100.0, points, Scale::Log),
            omega: 1.0,
            coupling: Some(0.5),
            temperature: None,
            conventions: vec![ThermalConvention::Gibbs],
            oracle: None,
        }
    }

    #[test]
    fn range_values() {
        let v = Range::new(0.0, 2.0, 21, Scale::Linear).values();
        assert_eq!(v.len(), 21);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[20], 2.0);
        assert!((v[5] - 0.5).abs() < 1e-15);
        let v = Range::new(0.01, 1000.0, 6, Scale::Log).values();
        for (a, b) in v.iter().zip([0.01, 0.1, 1.0, 10.0, 100.0, 1000.0]) {
            assert!((a / b - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gibbs_temperature_sweep_is_passive() {
        let rows = run_sweep(&temperature_sweep(50)).unwrap();
        assert_eq!(rows.len(), 50);
        assert!(rows.iter().all(|r| r.ergotropy < 1e-10));
        assert!(rows
            .iter()
            .all(|r| r.ergotropy == r.energy - r.passive_energy));
    }

    #[test]
    fn paper_literal_coupling_sweep() {
        let spec = SweepSpec {
            variable: SweepVariable::Coupling,
            range: Range::new(0.0, 2.0, 21, Scale::Linear),
            omega: 1.0,
            coupling: None,
            temperature: Some(0.05),
            conventions: vec![ThermalConvention::PaperLiteral],
            oracle: None,
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 21);
        assert!((rows[0].ergotropy - 1.0).abs() < 1e-3);
        assert!(rows.windows(2).all(|w| w[1].ergotropy <= w[0].ergotropy));
    }

    #[test]
    fn ordering_is_convention_then_index() {
        let mut spec = temperature_sweep(4);
        spec.conventions = vec![ThermalConvention::PaperLiteral, ThermalConvention::Gibbs];
        let rows = run_sweep(&spec).unwrap();
        let conv: Vec<_> = rows.iter().map(|r| r.convention.as_str()).collect();
        assert_eq!(conv[..4], ["PAPER_LITERAL"; 4]);
        assert_eq!(conv[4..], ["GIBBS"; 4]);
        assert!(rows[..4]
            .windows(2)
            .all(|w| w[0].temperature < w[1].temperature));
    }

    #[test]
    fn config_errors_name_the_field() {
        let err = |s: SweepSpec| match run_sweep(&s) {
            Err(CliError::Config(e)) => e.field,
            other => panic!("{other:?}"),
        };
        assert_eq!(err(temperature_sweep(1)), "points");

        let mut s = temperature_sweep(5);
        s.range.start = 0.0;
        assert_eq!(err(s), "start");

        let mut s = temperature_sweep(5);
        s.range.stop = 0.05;
        assert_eq!(err(s), "start");

        let mut s = temperature_sweep(5);
        s.coupling = None;
        assert_eq!(err(s), "coupling");

        let mut s = temperature_sweep(5);
        s.omega = -1.0;
        assert_eq!(err(s), "omega");

        let mut s = temperature_sweep(5);
        s.conventions.clear();
        assert_eq!(err(s), "convention");
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut spec = temperature_sweep(16);
        spec.conventions = ThermalConvention::ALL.to_vec();
        spec.oracle = Some(OracleConfig::new(8, 20, 3).unwrap());
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_sweep(&spec).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert!(one
            .iter()
            .all(|r| r.oracle_min_energy.unwrap() >= r.passive_energy - 1e-9));
    }

    #[test]
    fn grid_layout() {
        let spec = GridSpec {
            omega: 1.0,
            temperature: Range::new(0.1, 10.0, 3, Scale::Log),
            coupling: Range::new(0.0, 1.0, 4, Scale::Linear),
            convention: ThermalConvention::Gibbs,
            oracle: None,
        };
        let g = run_grid(&spec).unwrap();
        assert_eq!(g.records.len(), 12);
        assert_eq!(g.records[5].temperature, g.temperatures[1]);
        assert_eq!(g.records[5].coupling, g.couplings[1]);
        let e = g.ergotropy();
        assert_eq!((e.len(), e[0].len()), (3, 4));
        assert!(e.iter().flatten().all(|w| *w < 1e-10));
    }
}
