//! Named sweep presets (`fig2`, `fig3`, `fig4`), all at `ω = 1` and evaluated
//! under `PAPER_LITERAL` and `GIBBS`.

use std::fmt;
use std::str::FromStr;

use gravcat_core::ThermalConvention;

use crate::error::{CliError, ConfigError};
use crate::output::OutputRecord;
use crate::sweep::{run_grid, run_sweep, GridSpec, Range, Scale, SweepSpec, SweepVariable};

pub const PRESET_CONVENTIONS: [ThermalConvention; 2] =
    [ThermalConvention::PaperLiteral, ThermalConvention::Gibbs];

/// Temperature range of the `fig2` sweep and the `fig4` grid.
pub const FIG2_TEMPERATURE: Range = Range {
    start: 1e-2,
    stop: 1e3,
    points: 200,
    scale: Scale::Log,
};
pub const FIG2_COUPLINGS: [f64; 4] = [0.1, 0.5, 1.0, 2.0];

pub const FIG3_COUPLING: Range = Range {
    start: 0.0,
    stop: 2.0,
    points: 200,
    scale: Scale::Linear,
};
pub const FIG3_TEMPERATURES: [f64; 4] = [0.1, 0.5, 1.0, 5.0];

pub const FIG4_TEMPERATURE: Range = Range {
    points: 100,
    ..FIG2_TEMPERATURE
};
pub const FIG4_COUPLING: Range = Range {
    points: 100,
    ..FIG3_COUPLING
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
}

impl FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4" => Ok(Self::Fig4),
            _ => Err(ConfigError::new(
                "preset",
                format!("`{s}` is not one of fig2, fig3, fig4"),
            )),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
        })
    }
}

/// Temperature sweeps at each preset coupling.
pub fn fig2_sweeps(conventions: &[ThermalConvention]) -> Vec<SweepSpec> {
    FIG2_COUPLINGS
        .iter()
        .map(|&c| SweepSpec {
            variable: SweepVariable::Temperature,
            range: FIG2_TEMPERATURE,
            omega: 1.0,
            coupling: Some(c),
            temperature: None,
            conventions: conventions.to_vec(),
            oracle: None,
        })
        .collect()
}

/// Coupling sweeps at each preset temperature.
pub fn fig3_sweeps(conventions: &[ThermalConvention]) -> Vec<SweepSpec> {
    FIG3_TEMPERATURES
        .iter()
        .map(|&t| SweepSpec {
            variable: SweepVariable::Coupling,
            range: FIG3_COUPLING,
            omega: 1.0,
            coupling: None,
            temperature: Some(t),
            conventions: conventions.to_vec(),
            oracle: None,
        })
        .collect()
}

pub fn fig4_grids(conventions: &[ThermalConvention]) -> Vec<GridSpec> {
    conventions
        .iter()
        .map(|&conv| GridSpec {
            omega: 1.0,
            temperature: FIG4_TEMPERATURE,
            coupling: FIG4_COUPLING,
            convention: conv,
            oracle: None,
        })
        .collect()
}

/// All records of a preset, in preset order.
pub fn run_preset(preset: Preset) -> Result<Vec<OutputRecord>, CliError> {
    let mut out = Vec::new();
    match preset {
        Preset::Fig2 | Preset::Fig3 => {
            let specs = if preset == Preset::Fig2 {
                fig2_sweeps(&PRESET_CONVENTIONS)
            } else {
                fig3_sweeps(&PRESET_CONVENTIONS)
            };
            for spec in &specs {
                out.extend(run_sweep(spec)?);
            }
        }
        Preset::Fig4 => {
            for grid in &fig4_grids(&PRESET_CONVENTIONS) {
                out.extend(run_grid(grid)?.records);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_sizes() {
        assert_eq!(run_preset(Preset::Fig2).unwrap().len(), 4 * 2 * 200);
        assert_eq!(run_preset(Preset::Fig3).unwrap().len(), 4 * 2 * 200);
        assert_eq!(fig4_grids(&PRESET_CONVENTIONS).len(), 2);
        assert_eq!(FIG4_TEMPERATURE.points * FIG4_COUPLING.points, 10_000);
    }

    #[test]
    fn parse() {
        assert_eq!("FIG3".parse::<Preset>().unwrap(), Preset::Fig3);
        assert_eq!("fig5".parse::<Preset>().unwrap_err().field, "preset");
    }
}
