use rug::Float;

use crate::numerics::{err_f64, err_float, ValueWithError, ERROR_PREC};

/// Default absolute slack added to the error budget.
pub const DEFAULT_SLACK: f64 = 1e-10;

/// Precision and tolerance shared by all checks in a run.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub prec: u32,
    pub slack: f64,
}

impl CheckConfig {
    pub fn new(prec: u32) -> Self {
        Self { prec, slack: DEFAULT_SLACK }
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack = slack;
        self
    }
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self::new(256)
    }
}

/// An extra condition a check must satisfy besides the residual budget.
#[derive(Clone, Debug, PartialEq)]
pub struct SideCondition {
    pub name: String,
    pub detail: String,
    pub holds: bool,
}

/// Both sides of one identity instance and the comparison between them.
///
/// `residual`, `budget` and `pass` are derived from the stored fields on
/// every call.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub identity_id: String,
    pub parameters: Vec<(String, String)>,
    pub prec: u32,
    pub lhs: ValueWithError,
    pub rhs: ValueWithError,
    pub slack: f64,
    pub side_conditions: Vec<SideCondition>,
}

impl CheckReport {
    pub fn new(id: &str, parameters: Vec<(String, String)>, cfg: &CheckConfig, lhs: ValueWithError, rhs: ValueWithError) -> Self {
        Self {
            identity_id: id.to_string(),
            parameters,
            prec: cfg.prec,
            lhs,
            rhs,
            slack: cfg.slack,
            side_conditions: Vec::new(),
        }
    }

    pub fn with_side_condition(mut self, name: &str, detail: String, holds: bool) -> Self {
        self.side_conditions.push(SideCondition {
            name: name.to_string(),
            detail,
            holds,
        });
        self
    }

    /// `|lhs - rhs|`.
    pub fn residual(&self) -> Float {
        err_float(&self.lhs.distance(&self.rhs))
    }

    /// `lhs.abs_error + rhs.abs_error + slack`.
    pub fn budget(&self) -> Float {
        Float::with_val(ERROR_PREC, &self.lhs.abs_error + &self.rhs.abs_error) + err_f64(self.slack)
    }

    pub fn pass(&self) -> bool {
        self.residual() <= self.budget() && self.side_conditions.iter().all(|c| c.holds)
    }

    pub fn parameter(&self, key: &str) -> Option<&str> {
        self.parameters.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// `key=value` pairs joined by spaces.
    pub fn parameter_string(&self) -> String {
        self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Complex;

    fn v(x: f64, e: f64) -> ValueWithError {
        ValueWithError::new(Complex::from_f64(x, 128), err_f64(e), true)
    }

    #[test]
    fn pass_is_derived_from_fields() {
        let cfg = CheckConfig::new(96).with_slack(0.0);
        let mut r = CheckReport::new("t", vec![], &cfg, v(1.0, 0.25), v(1.5, 0.25));
        assert!(r.pass());
        r.rhs = v(1.6, 0.25);
        assert!(!r.pass());
        r.slack = 0.2;
        assert!(r.pass());
        let r = r.with_side_condition("ratio", "x".into(), false);
        assert!(!r.pass());
    }
}
