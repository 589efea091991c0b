//! Gamma by upward shift plus the Stirling series, and the rising factorial.

use std::f64::consts::{LN_2, PI};

use rug::{Float, Integer};

use super::{err_f64, err_float, exp_bound, pow2, working_prec, Complex, ValueWithError, ERROR_PREC};
use crate::error::{Error, Result};
use crate::series::bernoulli_numbers;

/// `n!` rounded to `wp` bits.
pub fn factorial_float(n: u32, wp: u32) -> Float {
    Float::with_val(wp, Integer::from(Integer::factorial(n)))
}

/// `Γ(s)` at target precision `prec`.
pub fn gamma(s: &Complex, prec: u32) -> Result<ValueWithError> {
    let wp = working_prec(prec);
    gamma_wp(&s.with_prec(wp), wp)
}

/// `(s)_j = s(s+1)…(s+j-1)`, by direct product.
pub fn pochhammer(s: &Complex, j: u32, prec: u32) -> ValueWithError {
    let wp = working_prec(prec);
    pochhammer_wp(&s.with_prec(wp), j, wp)
}

pub fn pochhammer_wp(s: &Complex, j: u32, wp: u32) -> ValueWithError {
    let mut acc = Complex::one(wp);
    for i in 0..j {
        acc = &acc * &s.add_i64(i as i64);
    }
    let exact_input = s.as_integer().is_some();
    let v = ValueWithError::exact(acc);
    if exact_input && j < 2 {
        v
    } else {
        v.with_rounding(4 * j as u64 + 1)
    }
}

/// Stirling plan: shift so that `Re z ≥ min_re`, then `K` terms.
/// Returns `(shift, K, log remainder bound)`.
fn plan(s: &Complex, wp: u32) -> (u32, usize, f64) {
    let target = -(wp as f64) * LN_2 - 4.0;
    let s_re = s.re.to_f64();
    let s_im = s.im.to_f64();
    let mut min_re = wp as f64 * LN_2 / (2.0 * PI) + 5.0;
    loop {
        let shift = (min_re - s_re).ceil().max(0.0) as u32;
        let z_re = s_re + shift as f64;
        let z_abs = z_re.hypot(s_im);
        let half_arg = s_im.atan2(z_re) / 2.0;
        let log_sec = -half_arg.cos().ln();
        let mut log_fact = 0.0; // ln (2K+2)!
        for i in 1..=2u32 {
            log_fact += (i as f64).ln();
        }
        let mut best = f64::INFINITY;
        for k in 1..=4 * wp as usize {
            let m = 2 * k + 2;
            log_fact += ((m - 1) as f64).ln() + (m as f64).ln();
            // |B_{2K+2}| ≤ 4 (2K+2)!/(2π)^{2K+2}
            let log_b = 4f64.ln() + log_fact - m as f64 * (2.0 * PI).ln();
            let lr = log_b - (m as f64).ln() - ((m - 1) as f64).ln() - (m - 1) as f64 * z_abs.ln()
                + m as f64 * log_sec;
            if lr < target {
                return (shift, k, lr);
            }
            if lr > best {
                break;
            }
            best = lr;
        }
        min_re += 10.0;
    }
}

/// `Γ(s)` computed at exactly `wp` bits.
pub fn gamma_wp(s: &Complex, wp: u32) -> Result<ValueWithError> {
    if let Some(n) = s.as_integer() {
        if n <= 0 {
            return Err(Error::Pole(format!("Γ has a pole at s = {n}")));
        }
        let f = factorial_float(n as u32 - 1, wp);
        let exact = f.prec() as u64 >= Integer::from(Integer::factorial(n as u32 - 1)).significant_bits() as u64;
        let v = ValueWithError::exact(Complex::real(f));
        return Ok(if exact { v } else { v.with_rounding(1) });
    }
    let s = s.with_prec(wp);
    let (shift, k, log_rem) = plan(&s, wp);
    let z = s.add_i64(shift as i64);

    // (z - 1/2) ln z - z + ln(2π)/2
    let ln_z = z.ln();
    let half = Float::with_val(wp, 0.5);
    let two_pi = Float::with_val(wp, super::pi(wp) * 2u32);
    let mut lg = &(&z.add_real(&Float::with_val(wp, -&half)) * &ln_z) - &z;
    lg = lg.add_real(&(two_pi.ln() * &half));

    let bern = bernoulli_numbers(2 * k);
    let z_inv = z.recip();
    let z_inv2 = z_inv.square();
    let mut power = z_inv.clone();
    for j in 1..=k {
        if j > 1 {
            power = &power * &z_inv2;
        }
        let c = Float::with_val(wp, &bern[2 * j]) / ((2 * j as u64) * (2 * j as u64 - 1));
        lg = &lg + &power.mul_real(&c);
    }
    let ln_err = exp_bound(log_rem) + pow2(-(wp as i64) + 8) * err_f64(1.0 + lg.abs().to_f64());

    let value = lg.exp();
    let poch = pochhammer_wp(&s, shift, wp);
    let g = &value / &poch.estimate;
    let g_abs = err_float(&g.abs());
    // e^ε - 1 ≤ 2ε for ε ≤ 1, plus the relative rounding of the Pochhammer divisor
    let rel = ln_err * 2u32 + Float::with_val(ERROR_PREC, &poch.abs_error / err_float(&poch.estimate.abs()));
    let err = g_abs * rel;
    Ok(ValueWithError::new(g, err, true).with_rounding(8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pi;

    #[test]
    fn factorial_values() {
        let g1 = gamma(&Complex::from_i64(1, 128), 128).unwrap();
        assert_eq!(g1.estimate.re, 1);
        assert!(g1.abs_error.is_zero());
        let g5 = gamma(&Complex::from_i64(5, 128), 128).unwrap();
        assert_eq!(g5.estimate.re, 24);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        for prec in [64, 256, 1024] {
            let g = gamma(&Complex::from_f64(0.5, prec), prec).unwrap();
            let sqrt_pi = pi(prec + 64).sqrt();
            let d = Float::with_val(prec + 64, &g.estimate.re - &sqrt_pi).abs();
            assert!(d <= g.abs_error, "prec {prec}");
            assert!(g.abs_error < pow2(-(prec as i64)));
        }
    }

    #[test]
    fn agrees_with_mpfr_gamma() {
        for x in [0.1, 2.75, -3.5, 17.3, -0.999] {
            let prec = 300;
            let g = gamma(&Complex::from_f64(x, prec), prec).unwrap();
            let oracle = Float::with_val(prec + 64, Float::with_val(prec + 64, x).gamma_ref());
            let d = Float::with_val(prec + 64, &g.estimate.re - &oracle).abs();
            assert!(d <= g.abs_error, "x = {x}");
        }
    }

    #[test]
    fn recurrence_at_complex_points() {
        let prec = 256;
        for (re, im) in [(0.3, 2.0), (-2.5, 0.75), (4.0, -9.0)] {
            let s = Complex::new(Float::with_val(prec, re), Float::with_val(prec, im));
            let g = gamma(&s, prec).unwrap();
            let g1 = gamma(&s.add_i64(1), prec).unwrap();
            let lhs = &g1.estimate;
            let rhs = &g.estimate * &s;
            let bound = g1.abs_error_f64() + g.abs_error_f64() * s.abs().to_f64() + 2f64.powi(-(prec as i32));
            assert!((lhs - &rhs).abs().to_f64() <= bound);
        }
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0, -1, -7] {
            assert!(matches!(gamma(&Complex::from_i64(n, 64), 64), Err(Error::Pole(_))));
        }
    }

    #[test]
    fn pochhammer_values() {
        let s = Complex::new(Float::with_val(64, 1.5), Float::with_val(64, -2));
        assert_eq!(pochhammer(&s, 0, 64).estimate, Complex::one(96));
        assert_eq!(pochhammer(&Complex::from_i64(1, 64), 6, 64).estimate.re, 720);
        assert_eq!(pochhammer(&Complex::from_i64(3, 64), 3, 64).estimate.re, 60);
    }
}
