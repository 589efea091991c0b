//! Doubly exponential quadrature on `[a, ∞)`.
//!
//! Substitution `t = a + exp(u - e^{-u})` maps the real line onto
//! `(a, ∞)`; the integrand then decays double-exponentially at both ends
//! for exponentially decaying `f`, and the trapezoidal rule in `u` is
//! refined by halving the step on nested grids.

use std::f64::consts::LN_2;

use rayon::prelude::*;
use rug::Float;

use super::{err_f64, err_float, exp_bound, Complex, ValueWithError, ERROR_PREC};
use crate::error::{Error, Result};

/// Envelope `|f(t)| ≤ exp(log_scale) · t^power · e^{-rate·t}` for `t ≥ a`.
#[derive(Clone, Copy, Debug)]
pub struct Decay {
    pub rate: f64,
    pub power: f64,
    pub log_scale: f64,
}

impl Decay {
    fn log_bound(&self, t: f64) -> f64 {
        self.log_scale + self.power * t.max(1e-300).ln() - self.rate * t
    }
}

const INITIAL_STEP_LOG2: i32 = -1;
const MIN_LEVELS: usize = 3;
const MAX_LEVELS: usize = 14;

/// `∫_a^∞ f(t) dt` at working precision `wp`.
///
/// The error estimate is the difference between the last two refinements,
/// so the result is marked non-rigorous.
pub fn integrate_to_infinity<F>(a: &Float, decay: Decay, wp: u32, f: F) -> Result<ValueWithError>
where
    F: Fn(&Float) -> Result<Complex> + Sync,
{
    let af = a.to_f64();
    let target = -(wp as f64) * LN_2 - 12.0;

    // right end: t^{power+1} e^{-rate t} below the target
    let mut t_hi = af.max(1.0) * 2.0;
    while decay.log_bound(t_hi) + t_hi.ln() > target {
        t_hi *= 1.5;
        if t_hi > 1e12 {
            return Err(Error::PrecisionUnreachable {
                reason: "integrand envelope does not decay".into(),
                suggested_mmax: None,
            });
        }
    }
    let u_max = (t_hi - af).max(1.0).ln() + 0.5;
    // left end: weights behave like exp(-e^{|u|})
    let near_a = decay.log_scale.max(0.0) + decay.power.abs() * (af + 1.0).ln();
    let u_min = -((wp as f64) * LN_2 + near_a + 16.0).ln() - 0.5;

    let h0 = 2f64.powi(INITIAL_STEP_LOG2);
    let j_min = (u_min / h0).floor() as i64;
    let j_max = (u_max / h0).ceil() as i64;

    let node = |u: &Float| -> Result<Complex> {
        let e = Float::with_val(wp, -u).exp();
        let g = Float::with_val(wp, u - &e).exp();
        let w = Float::with_val(wp, &g * Float::with_val(wp, &e + 1u32));
        let t = Float::with_val(wp, a + &g);
        if g.is_zero() || w.is_zero() {
            return Ok(Complex::zero(wp));
        }
        Ok(f(&t)?.mul_real(&w))
    };

    let mut raw = Complex::zero(wp);
    let mut previous: Option<Complex> = None;
    for level in 0..=MAX_LEVELS {
        let scale = 1i64 << level;
        let step_log2 = INITIAL_STEP_LOG2 - level as i32;
        let indices: Vec<i64> = (j_min * scale..=j_max * scale)
            .filter(|j| level == 0 || j.rem_euclid(2) == 1)
            .collect();
        let values: Vec<Complex> = indices
            .par_iter()
            .map(|&j| {
                let mut u = Float::with_val(wp, j);
                if step_log2 >= 0 {
                    u <<= step_log2 as u32;
                } else {
                    u >>= (-step_log2) as u32;
                }
                node(&u)
            })
            .collect::<Result<_>>()?;
        for v in &values {
            raw = &raw + v;
        }
        let mut h = Float::with_val(wp, 1);
        h >>= (-step_log2) as u32;
        let current = raw.mul_real(&h);
        if let Some(prev) = &previous {
            let diff = err_float(&(&current - prev).abs());
            let mag = err_f64(current.abs().to_f64().max(1.0));
            let tol = Float::with_val(ERROR_PREC, &mag * exp_bound(target + 16.0));
            if level >= MIN_LEVELS && diff < tol {
                let rounding = mag * exp_bound(target + 12.0 + (indices.len() as f64 * 2.0).ln());
                let err = Float::with_val(ERROR_PREC, err_float(&diff) + rounding);
                return Ok(ValueWithError::new(current, err, false));
            }
        }
        previous = Some(current);
    }
    Err(Error::PrecisionUnreachable {
        reason: format!("quadrature did not converge after {MAX_LEVELS} refinements at {wp} bits"),
        suggested_mmax: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_integral() {
        // ∫_1^∞ e^{-t} dt = e^{-1}
        let wp = 256;
        let a = Float::with_val(wp, 1);
        let decay = Decay { rate: 1.0, power: 0.0, log_scale: 0.0 };
        let v = integrate_to_infinity(&a, decay, wp, |t| Ok(Complex::real(Float::with_val(wp, -t).exp()))).unwrap();
        let expect = Float::with_val(wp, -1).exp();
        let d = Float::with_val(wp, &v.estimate.re - &expect).abs();
        assert!(d.to_f64() < 1e-70, "{d}");
        assert!(!v.rigorous);
    }

    #[test]
    fn gamma_type_integral_with_complex_power() {
        // ∫_0^∞ t^{s-1} e^{-t} dt = Γ(s), s = 3 + i, matches the gamma kernel
        let wp = 192;
        let s = Complex::new(Float::with_val(wp, 3), Float::with_val(wp, 1));
        let a = Float::with_val(wp, 0);
        let decay = Decay { rate: 1.0, power: 2.0, log_scale: 0.0 };
        let v = integrate_to_infinity(&a, decay, wp, |t| {
            Ok(s.add_i64(-1).real_base_pow(t).mul_real(&Float::with_val(wp, -t).exp()))
        })
        .unwrap();
        let g = crate::numerics::gamma_wp(&s, wp).unwrap();
        assert!((&v.estimate - &g.estimate).abs().to_f64() < 1e-50);
    }

    #[test]
    fn deterministic_across_runs() {
        let wp = 128;
        let a = Float::with_val(wp, 1);
        let decay = Decay { rate: 2.0, power: 1.0, log_scale: 0.0 };
        let run = || {
            integrate_to_infinity(&a, decay, wp, |t| {
                Ok(Complex::real(Float::with_val(wp, t * (-Float::with_val(wp, t * 2u32)).exp())))
            })
            .unwrap()
        };
        assert_eq!(run(), run());
    }
}
