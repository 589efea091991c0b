//! `Li_k(x)` for real `0 ≤ x < 1`.
//!
//! Small `x` uses the defining series. Near `x = 1` the expansion in
//! `μ = ln x`,
//! `Li_k(e^μ) = Σ_{j≠k-1} ζ(k-j) μ^j/j! + μ^{k-1}/(k-1)! (H_{k-1} - ln(-μ))`,
//! converges for `|μ| < 2π`; `ζ` at nonpositive integers is rational.

use std::f64::consts::{LN_2, PI};

use rug::ops::Pow;
use rug::{Float, Rational};

use super::{exp_bound, working_prec, zeta_integer_wp, Complex, ValueWithError, ERROR_PREC};
use crate::error::{Error, Result};
use crate::series::zeta_nonpositive;

/// `Li_k(x)` at target precision `prec`, for `k ≥ 1`, `0 ≤ x < 1`.
pub fn polylog_point(k: u32, x: &Float, prec: u32) -> Result<ValueWithError> {
    let wp = working_prec(prec);
    polylog_point_wp(k, &Float::with_val(wp, x), wp)
}

pub fn polylog_point_wp(k: u32, x: &Float, wp: u32) -> Result<ValueWithError> {
    if k == 0 {
        return Err(Error::Domain("polylog_point needs k ≥ 1".into()));
    }
    if x.is_nan() || *x < 0 || *x >= 1 {
        return Err(Error::Domain(format!("polylog_point needs 0 ≤ x < 1, got {}", x.to_f64())));
    }
    if x.is_zero() {
        return Ok(ValueWithError::exact(Complex::zero(wp)));
    }
    if *x <= 0.5 {
        return Ok(direct(k, x, wp));
    }
    let mu = Float::with_val(wp, x.ln_ref());
    Ok(polylog_near_one_wp(k, &mu, wp))
}

fn direct(k: u32, x: &Float, wp: u32) -> ValueWithError {
    let xf = x.to_f64();
    let target = -(wp as f64) * LN_2 - 4.0;
    let mut sum = Float::with_val(wp, 0);
    let mut power = Float::with_val(wp, 1);
    let mut m: u32 = 0;
    let tail_log = loop {
        m += 1;
        power *= x;
        let denom = Float::with_val(wp, Float::with_val(wp, m).pow(k));
        sum += Float::with_val(wp, &power / &denom);
        let next = (m + 1) as f64;
        let tail = next * xf.ln() - (1.0 - xf).ln() - k as f64 * next.ln();
        if tail < target {
            break tail;
        }
    };
    ValueWithError::new(Complex::real(sum), exp_bound(tail_log), true).with_rounding(4 * m as u64)
}

/// `Li_k(e^μ)` for `-π < μ < 0`, computed at `wp` bits.
///
/// Taking `μ` directly lets callers pass `ln(1 - e^{-t})` computed with
/// `ln_1p`, which keeps full relative accuracy for large `t`.
pub fn polylog_near_one_wp(k: u32, mu: &Float, wp: u32) -> ValueWithError {
    assert!(k >= 1, "near-one expansion needs k ≥ 1");
    assert!(*mu < 0 && *mu > -PI, "near-one expansion needs -π < μ < 0");
    let mu_abs = mu.to_f64().abs();
    let ratio = mu_abs / (2.0 * PI);
    let target = -(wp as f64) * LN_2 - 4.0;
    let log_tail = |j: usize| {
        (4.0 / (2.0 * PI)).ln() + k as f64 * mu_abs.ln() + (j as f64 - k as f64) * ratio.ln() - (1.0 - ratio).ln()
    };

    let mut sum = Float::with_val(wp, 0);
    let mut err = Float::with_val(ERROR_PREC, 0);
    let mut power = Float::with_val(wp, 1); // μ^j / j!
    let mut j = 0usize;
    let km1 = (k - 1) as usize;
    loop {
        if j > 0 {
            power *= mu;
            power /= j as u32;
        }
        if j < km1 {
            let z = zeta_integer_wp(k - j as u32, wp);
            sum += Float::with_val(wp, &z.estimate.re * &power);
            err += Float::with_val(ERROR_PREC, &z.abs_error * Float::with_val(ERROR_PREC, power.abs_ref()));
        } else if j == km1 {
            let mut harmonic = Rational::new();
            for i in 1..=km1 as u32 {
                harmonic += Rational::from((1, i));
            }
            let neg_mu = Float::with_val(wp, -mu);
            let bracket = Float::with_val(wp, &harmonic) - neg_mu.ln();
            sum += bracket * &power;
        } else {
            let z = zeta_nonpositive(j - k as usize);
            if z.cmp0() != std::cmp::Ordering::Equal {
                sum += Float::with_val(wp, &z) * &power;
            }
            let tail = log_tail(j + 1);
            if tail < target {
                err += exp_bound(tail);
                break;
            }
        }
        j += 1;
    }
    ValueWithError::new(Complex::real(sum), err, true).with_rounding(4 * j as u64 + 8)
}
