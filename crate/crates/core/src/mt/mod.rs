//! Evaluators for Mordell–Tornheim zeta values ζ_MT, the ξ_MT integrals,
//! the generating functions Λ and the multi-Λ integrals ξ_MT,g.

mod fast;
mod double;
mod exppoly;
mod lambda;
mod oracle;
mod xi;
mod xig;

use std::fmt;

pub use double::{double_zeta, double_zeta_closed_form, euler_double_zeta, euler_double_zeta_direct, DoubleZetaOrder};
pub use fast::{mt_zeta_fast, MtOptions};
pub use lambda::lambda_eval;
pub use oracle::{mt_zeta_oracle, ORACLE_MAX_DEPTH};
pub use xi::{xi_mt_continuation_probe, xi_mt_eval, xi_mt_eval_with_split, xi_mt_negative_integer};
pub use xig::xi_mt_g_eval;

use crate::error::{Error, Result};
use crate::numerics::Complex;

/// Arguments `(s_1, ..., s_r; s_{r+1})` of ζ_MT,r.
#[derive(Clone, Debug, PartialEq)]
pub struct MtArgument {
    pub exponents: Vec<Complex>,
    pub last: Complex,
}

impl MtArgument {
    pub fn new(exponents: Vec<Complex>, last: Complex) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Domain("ζ_MT needs r ≥ 1 exponents".into()));
        }
        Ok(Self { exponents, last })
    }

    pub fn integer(exponents: &[u32], last: Complex) -> Result<Self> {
        let p = last.prec();
        Self::new(exponents.iter().map(|&k| Complex::from_i64(k as i64, p)).collect(), last)
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    /// The exponents as nonnegative integers, when they all are.
    pub fn integer_exponents(&self) -> Option<Vec<u32>> {
        self.exponents
            .iter()
            .map(|e| e.as_integer().filter(|&k| k >= 0).map(|k| k as u32))
            .collect()
    }
}

impl fmt::Display for MtArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|e| e.to_decimal(6)).collect();
        write!(f, "({}; {})", parts.join(","), self.last.to_decimal(6))
    }
}
