//! Λ_𝕜(z) for `0 ≤ z < 1`.
//!
//! Small `z` sums the coefficient series directly. Otherwise `z = 1 - e^{-t}`
//! and the function of `t` is evaluated from its exact `t`-series when
//! `t ≤ 1`, or from its exponential-polynomial form when `t > 1`.

use std::f64::consts::{LN_2, PI};

use rug::Float;

use super::exppoly::ExpPoly;
use crate::error::{Error, Result};
use crate::numerics::{err_f64, exp_bound, working_prec, Complex, ValueWithError};
use crate::series::{lambda_coefficients, lambda_of_one_minus_exp_neg, li_of_one_minus_exp_neg, IndexVector, TruncatedSeries};

/// Number of exponential rates kept so that the dropped part is below
/// `2^{-wp}` for `t ≥ 1`.
pub(crate) fn exppoly_rates(depth: usize, wp: u32) -> usize {
    (wp as f64 * LN_2 + (depth as f64 + 4.0) * (wp as f64).ln()).ceil() as usize + 10
}

/// Order of the `t`-series needed for `|t| ≤ 1` (radius 2π).
pub(crate) fn unit_series_order(depth: usize, wp: u32) -> usize {
    (wp as f64 * LN_2 / (2.0 * PI).ln()).ceil() as usize + 12 + 2 * depth
}

fn series_at(series: &TruncatedSeries, t: &Float, wp: u32) -> Float {
    let mut acc = Float::new(wp);
    for c in series.coeffs().iter().rev() {
        acc *= t;
        acc += Float::with_val(wp, c);
    }
    acc
}

/// Adds to `-∫_t^∞ prev/(e^τ-1)` the constant that makes it agree with
/// `exact` at `t = 1`.
fn integrate_step(prev: &ExpPoly, exact: &TruncatedSeries, wp: u32) -> ExpPoly {
    let mut next = prev.bose().tail_integral().neg();
    let one = Float::with_val(wp, 1);
    let gap = series_at(exact, &one, wp) - next.eval(&one);
    next.add_constant(&gap);
    next
}

/// `Li_k(1 - e^{-t})` as an exponential polynomial.
pub(crate) fn polylog_exppoly(k: u32, rates: usize, order: usize, wp: u32) -> ExpPoly {
    assert!(k >= 1);
    let mut f = ExpPoly::identity(rates, wp);
    for j in 2..=k {
        f = integrate_step(&f, &li_of_one_minus_exp_neg(j, order), wp);
    }
    f
}

/// `Λ_𝕜(1 - e^{-t})` as an exponential polynomial, for `𝕜` with a tail.
pub(crate) fn lambda_exppoly(index: &IndexVector, rates: usize, wp: u32) -> Result<ExpPoly> {
    let tail = index.require_lambda()?;
    let order = unit_series_order(index.depth(), wp);
    let mut phi = ExpPoly::constant(&Float::with_val(wp, 1), rates, wp);
    let mut entries = index.entries().to_vec();
    entries.sort_unstable();
    for &k in &entries {
        phi = phi.mul(&polylog_exppoly(k, rates, order, wp));
    }
    for j in 1..=tail {
        let exact = lambda_of_one_minus_exp_neg(&index.replace_tail(j), order)?;
        phi = integrate_step(&phi, &exact, wp);
    }
    Ok(phi)
}

/// `Λ_𝕜(z) = Σ_{m_j ≥ 1} z^{Σ m_j} / (∏ m_j^{k_j} · (Σ m_j)^{k_{r+1}})`.
///
/// Rigorous for `z ≤ 1/2` (coefficient majorant `C(M-1, r-1) r^{-k_{r+1}}`),
/// heuristic otherwise.
pub fn lambda_eval(index: &IndexVector, z: &Float, prec: u32) -> Result<ValueWithError> {
    let tail = index.require_lambda()?;
    if z.is_nan() || *z < 0 || *z >= 1 {
        return Err(Error::Domain(format!("Λ needs 0 ≤ z < 1, got {}", z.to_f64())));
    }
    let wp = working_prec(prec);
    let r = index.depth();
    if z.is_zero() {
        return Ok(ValueWithError::exact(Complex::zero(wp)));
    }
    if *z <= 0.5 {
        let zf = z.to_f64();
        let log_target = -(wp as f64) * LN_2 - 4.0;
        // tail after M0 ≤ C(M0, r-1) r^{-tail} z^{M0+1} / (1 - q)
        let log_tail = |m0: usize| {
            let m = m0 + 1;
            let log_binom: f64 = (1..r).map(|i| ((m - i) as f64 / i as f64).ln()).sum();
            let q = (m as f64 / (m + 1 - r) as f64) * zf;
            log_binom - tail as f64 * (r as f64).ln() + m as f64 * zf.ln() - (1.0 - q).ln()
        };
        let mut m0 = r + 8;
        while log_tail(m0) > log_target {
            m0 += 8;
        }
        let b = lambda_coefficients(index, m0)?;
        let zw = Float::with_val(wp, z);
        let mut acc = Float::new(wp);
        for c in b.iter().rev() {
            acc *= &zw;
            acc += Float::with_val(wp, c);
        }
        return Ok(ValueWithError::new(Complex::real(acc), exp_bound(log_tail(m0)), true).with_rounding(4 * m0 as u64));
    }
    let t = Float::with_val(wp, -Float::with_val(wp, -Float::with_val(wp, z)).ln_1p());
    let value = if t <= 1 {
        let series = lambda_of_one_minus_exp_neg(index, unit_series_order(r, wp))?;
        series_at(&series, &t, wp)
    } else {
        lambda_exppoly(index, exppoly_rates(r, wp), wp)?.eval(&t)
    };
    let scale = err_f64(value.to_f64().abs().max(1.0));
    Ok(ValueWithError::new(Complex::real(value), scale * exp_bound(-(wp as f64 - 16.0) * LN_2), false))
}
