use std::fmt;
use std::str::FromStr;

use mkcs::relax::BoundModel;
use mkcs::scheme::ReducedModel;

use crate::CliError;

/// A general-graph model or a collapsed scheme model (`*_red`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelChoice {
    Full(BoundModel),
    Reduced(ReducedModel),
}

impl ModelChoice {
    pub fn name(&self) -> &'static str {
        match self {
            ModelChoice::Full(m) => m.name(),
            ModelChoice::Reduced(m) => m.name(),
        }
    }

    /// `theta1` becomes `theta1_bqp`; every other model is unchanged.
    pub fn with_cuts(self) -> Self {
        match self {
            ModelChoice::Full(BoundModel::Theta1) => ModelChoice::Full(BoundModel::Theta1Bqp),
            other => other,
        }
    }
}

impl fmt::Display for ModelChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if let Ok(m) = s.parse::<BoundModel>() {
            return Ok(ModelChoice::Full(m));
        }
        if let Ok(m) = s.parse::<ReducedModel>() {
            return Ok(ModelChoice::Reduced(m));
        }
        let known: Vec<&str> = BoundModel::ALL
            .iter()
            .map(|m| m.name())
            .chain(ReducedModel::ALL.iter().map(|m| m.name()))
            .collect();
        Err(CliError::Usage(format!(
            "unknown model '{s}' (known: {})",
            known.join(", ")
        )))
    }
}

/// Splits a comma list such as `theta1,theta3_red`.
pub fn parse_models(list: &str) -> Result<Vec<ModelChoice>, CliError> {
    list.split(',').map(str::parse).collect()
}

/// Splits a comma list of positive integers.
pub fn parse_ks(list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .map(|s| match s.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(CliError::Usage(format!(
                "k must be a positive integer, got '{s}'"
            ))),
        })
        .collect()
}
