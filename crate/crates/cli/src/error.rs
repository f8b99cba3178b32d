use thiserror::Error;

/// A user-supplied setting is missing or invalid. `field` names the flag or
/// config key at fault.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("numerical failure: {0}")]
    Numeric(#[from] gravcat_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 for bad input, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(e) if !is_input_error(e) => 2,
            _ => 1,
        }
    }
}

/// Core errors that reflect invalid parameters rather than numerics.
pub(crate) fn is_input_error(e: &gravcat_core::Error) -> bool {
    matches!(
        e,
        gravcat_core::Error::InvalidParameter { .. } | gravcat_core::Error::NegativeCoupling { .. }
    )
}

/// Turns input-type core errors into config errors.
pub(crate) fn classify(e: gravcat_core::Error) -> CliError {
    match e {
        gravcat_core::Error::InvalidParameter { name, .. } => {
            CliError::Config(ConfigError::new(name, e.to_string()))
        }
        gravcat_core::Error::NegativeCoupling { .. } => {
            CliError::Config(ConfigError::new("d", e.to_string()))
        }
        other => CliError::Numeric(other),
    }
}
