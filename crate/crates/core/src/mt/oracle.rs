//! Brute-force nested summation for ζ_MT with a rigorous tail bound.

use rayon::prelude::*;
use rug::Float;

use super::MtArgument;
use crate::error::{Error, Result};
use crate::numerics::{err_f64, exp_bound, pow2, working_prec, Complex, ValueWithError, ERROR_PREC};

/// Largest depth accepted by the oracle; its cost grows like `cutoff^r`.
pub const ORACLE_MAX_DEPTH: usize = 4;

/// Exponents `e_j > 1` with `|term| ≤ ∏ m_j^{-e_j}`.
///
/// Weighted AM–GM gives `(Σ m_j)^σ ≥ ∏ m_j^{w_j σ}` for weights summing to
/// one. Each slot first receives `d_j = max(0, 1 - σ_j)` of the last
/// exponent, and the excess `σ - Σ d_j` is shared equally.
fn majorant_exponents(arg: &MtArgument) -> Result<Vec<f64>> {
    let sigma = arg.last.re.to_f64();
    let r = arg.depth() as f64;
    let parts: Vec<f64> = arg.exponents.iter().map(|e| e.re.to_f64()).collect();
    let deficits: Vec<f64> = parts.iter().map(|&s| (1.0 - s).max(0.0)).collect();
    let excess = sigma - deficits.iter().sum::<f64>();
    if sigma <= 0.0 || excess <= 0.0 {
        return Err(Error::Divergent(format!(
            "no absolute-convergence certificate for ζ_MT at {arg}: need Re(s_last) > 0 and Re(s_last) > Σ max(0, 1 - Re(s_j))"
        )));
    }
    Ok(parts
        .iter()
        .zip(&deficits)
        .map(|(&s, &d)| s + d + excess / r)
        .collect())
}

/// Bound on the terms with some `m_i > cutoff`, as a natural log.
fn log_tail_bound(exps: &[f64], cutoff: usize) -> f64 {
    let m = cutoff as f64;
    let zeta_bound = |e: f64| e / (e - 1.0);
    let mut total = 0.0f64;
    for (i, &ei) in exps.iter().enumerate() {
        let mut term = (1.0 - ei) * m.ln() - (ei - 1.0).ln();
        for (j, &ej) in exps.iter().enumerate() {
            if j != i {
                term += zeta_bound(ej).ln();
            }
        }
        total += term.exp();
    }
    total.ln()
}

/// `Σ_{m_j ≤ cutoff} ∏ m_j^{-s_j} (Σ m_j)^{-s_{r+1}}` plus a proven tail bound.
///
/// `tolerance`, when given, turns a tail bound above it into
/// [`Error::CutoffTooSmall`].
pub fn mt_zeta_oracle(arg: &MtArgument, cutoff: usize, tolerance: Option<f64>, prec: u32) -> Result<ValueWithError> {
    let r = arg.depth();
    if r > ORACLE_MAX_DEPTH {
        return Err(Error::Domain(format!("oracle supports depth ≤ {ORACLE_MAX_DEPTH}, got {r}")));
    }
    if cutoff == 0 {
        return Err(Error::Domain("oracle cutoff must be positive".into()));
    }
    let exps = majorant_exponents(arg)?;
    let log_tail = log_tail_bound(&exps, cutoff);
    if let Some(tol) = tolerance {
        if log_tail > tol.ln() {
            return Err(Error::CutoffTooSmall {
                cutoff,
                tail: log_tail.exp(),
                tolerance: tol,
            });
        }
    }
    let wp = working_prec(prec);
    let logs: Vec<Float> = (0..=r * cutoff)
        .map(|n| if n == 0 { Float::new(wp) } else { Float::with_val(wp, Float::with_val(wp, n).ln_ref()) })
        .collect();
    let power = |s: &Complex, n: usize| (&s.with_prec(wp) * &Complex::real(-logs[n].clone())).exp();
    let tables: Vec<Vec<Complex>> = arg
        .exponents
        .iter()
        .map(|s| (0..=cutoff).map(|m| if m == 0 { Complex::zero(wp) } else { power(s, m) }).collect())
        .collect();
    let totals: Vec<Complex> = (0..=r * cutoff)
        .map(|n| if n == 0 { Complex::zero(wp) } else { power(&arg.last, n) })
        .collect();

    fn nested(tables: &[Vec<Complex>], totals: &[Complex], depth: usize, partial: &Complex, total: usize, acc: &mut Complex) {
        if depth == tables.len() {
            *acc = &*acc + &(partial * &totals[total]);
            return;
        }
        for m in 1..tables[depth].len() {
            nested(tables, totals, depth + 1, &(partial * &tables[depth][m]), total + m, acc);
        }
    }

    let partials: Vec<Complex> = (1..=cutoff)
        .into_par_iter()
        .map(|m1| {
            let mut acc = Complex::zero(wp);
            nested(&tables, &totals, 1, &tables[0][m1], m1, &mut acc);
            acc
        })
        .collect();
    let mut sum = Complex::zero(wp);
    for p in &partials {
        sum = &sum + p;
    }

    let majorant: f64 = exps.iter().map(|e| e / (e - 1.0)).product();
    let terms = (cutoff as f64).powi(r as i32);
    let rounding = err_f64(majorant) * pow2(-(wp as i64) + 6 + terms.log2().ceil() as i64);
    let err = Float::with_val(ERROR_PREC, exp_bound(log_tail) + rounding);
    Ok(ValueWithError::new(sum, err, true))
}
