//! ξ_MT(𝕜; s) by splitting its Mellin integral at `t = c`.
//!
//! On `[0, c]` the integrand `G(t) = ∏ Li_{k_j}(1 - e^{-t})/(e^t - 1)` has
//! the exact expansion `Σ g_n t^n` (radius 2π), so that part equals
//! `Σ g_n c^{s+n}/(s+n)`. This form is meromorphic in `s`, which is what
//! makes the probe at `s = -m + h` possible. On `[c, ∞)` the integrand
//! decays like `t^{σ-1+#{k_j=1}} e^{-t}` and is integrated numerically.

use std::f64::consts::{LN_2, PI};

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{
    err_float, gamma_wp, integrate_to_infinity, polylog_near_one_wp, polylog_point_wp, working_prec,
    zeta_integer_wp, Complex, Decay, ValueWithError, ERROR_PREC,
};
use crate::series::{akmt_coefficients, akmt_series, IndexVector};

/// ξ_MT(𝕜; s) for `Re(s) > 1 - r`, `s` not a nonpositive integer.
pub fn xi_mt_eval(index: &IndexVector, s: &Complex, prec: u32) -> Result<ValueWithError> {
    xi_mt_eval_with_split(index, s, &Float::with_val(64, 1), prec)
}

/// As [`xi_mt_eval`] with the series/quadrature split at `t = split`.
pub fn xi_mt_eval_with_split(index: &IndexVector, s: &Complex, split: &Float, prec: u32) -> Result<ValueWithError> {
    index.require_xi()?;
    let r = index.depth();
    if s.re <= 1 - r as i64 {
        return Err(Error::Domain(format!(
            "ξ_MT{index} needs Re(s) > {}, got {}",
            1 - r as i64,
            s.re.to_f64()
        )));
    }
    if let Some(n) = s.as_integer() {
        if n <= 0 {
            return Err(Error::Pole(format!(
                "s = {n} is a pole of the Mellin form; use xi_mt_negative_integer"
            )));
        }
    }
    let wp = working_prec(prec);
    split_mellin(index, &s.with_prec(wp), &Float::with_val(wp, split), wp)
}

/// `ξ_MT(𝕜; -m) = (-1)^m C_m`, exactly.
pub fn xi_mt_negative_integer(index: &IndexVector, m: usize) -> Result<Rational> {
    index.require_xi()?;
    let c = akmt_coefficients(index, m)?.swap_remove(m);
    Ok(if m % 2 == 1 { -c } else { c })
}

/// ξ_MT(𝕜; -m + h) through the same split-Mellin evaluation, bypassing the
/// half-plane check. As `h → 0` this tends to `(-1)^m C_m`.
pub fn xi_mt_continuation_probe(index: &IndexVector, m: u32, h: &Float, prec: u32) -> Result<ValueWithError> {
    index.require_xi()?;
    if *h <= 0 || *h >= 0.5 {
        return Err(Error::Domain("continuation probe needs 0 < h < 1/2".into()));
    }
    let wp = working_prec(prec);
    let s = Complex::real(Float::with_val(wp, h - m));
    split_mellin(index, &s, &Float::with_val(wp, 1), wp)
}

fn split_mellin(index: &IndexVector, s: &Complex, split: &Float, wp: u32) -> Result<ValueWithError> {
    let r = index.depth();
    let c = split.to_f64();
    if !(c > 0.0 && c <= 2.0) {
        return Err(Error::Domain("split point must lie in (0, 2]".into()));
    }

    // [0, c]: Σ g_n c^{s+n}/(s+n), terms shrink like (c/2π)^n
    let terms = (wp as f64 * LN_2 / (2.0 * PI / c).ln()).ceil() as usize + 10 + 2 * r;
    let series = akmt_series(index, terms)?;
    let c_pow_s = s.real_base_pow(split);
    let mut c_pow_n = Float::with_val(wp, 1);
    let mut head = Complex::zero(wp);
    let mut last_terms = [Float::new(ERROR_PREC), Float::new(ERROR_PREC)];
    for (n, g) in series.coeffs().iter().enumerate() {
        if n > 0 {
            c_pow_n *= split;
        }
        if g.cmp0().is_eq() {
            continue;
        }
        let coeff = Float::with_val(wp, g) * &c_pow_n;
        let term = (&c_pow_s / &s.add_i64(n as i64)).mul_real(&coeff);
        last_terms = [last_terms[1].clone(), err_float(&term.abs())];
        head = &head + &term;
    }
    let head_err = Float::with_val(ERROR_PREC, &last_terms[0] + &last_terms[1]) * 4u32;

    // [c, ∞)
    let ones = index.entries().iter().filter(|&&k| k == 1).count();
    let log_zetas: f64 = index
        .entries()
        .iter()
        .filter(|&&k| k >= 2)
        .map(|&k| zeta_integer_wp(k, 64).estimate.re.to_f64().ln())
        .sum();
    let decay = Decay {
        rate: 1.0,
        power: s.re.to_f64() - 1.0 + ones as f64,
        log_scale: log_zetas - (1.0 - (-c).exp()).ln() + LN_2,
    };
    let sm1 = s.add_i64(-1);
    let entries = index.entries().to_vec();
    let tail = integrate_to_infinity(split, decay, wp, |t| {
        let mut prod = Float::with_val(wp, 1);
        let neg_exp = Float::with_val(wp, -t).exp();
        let x = Float::with_val(wp, 1 - &neg_exp);
        for &k in &entries {
            let li = if k == 1 {
                t.clone()
            } else if x <= 0.5 {
                polylog_point_wp(k, &x, wp)?.estimate.re
            } else {
                let mu = Float::with_val(wp, -&neg_exp).ln_1p();
                polylog_near_one_wp(k, &mu, wp).estimate.re
            };
            prod *= li;
        }
        prod /= Float::with_val(wp, t.exp_m1_ref());
        Ok(sm1.real_base_pow(t).mul_real(&prod))
    })?;

    let gamma = gamma_wp(s, wp)?;
    let integral = ValueWithError::new(&head + &tail.estimate, head_err + &tail.abs_error, false);
    Ok(integral.div(&gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mt::{mt_zeta_fast, MtOptions};
    use crate::numerics::riemann_zeta;

    fn idx(k: &[u32]) -> IndexVector {
        IndexVector::new(k.to_vec())
    }

    #[test]
    fn single_one_is_shifted_zeta() {
        // ξ((1); s) = s ζ(s+1)
        let prec = 128;
        let v = xi_mt_eval(&idx(&[1]), &Complex::from_i64(2, prec), prec).unwrap();
        let z3 = riemann_zeta(&Complex::from_i64(3, prec), prec).unwrap();
        assert!((&v.estimate - &z3.estimate.mul_i64(2)).abs() < 1e-35);
    }

    #[test]
    fn value_at_one_is_mt_zeta() {
        let prec = 128;
        let v = xi_mt_eval(&idx(&[2]), &Complex::from_i64(1, prec), prec).unwrap();
        let z3 = riemann_zeta(&Complex::from_i64(3, prec), prec).unwrap();
        assert!((&v.estimate - &z3.estimate).abs() < 1e-35);
        // ξ((2,2); 2) = ζ_MT,3(2,2,1; 1)
        let v = xi_mt_eval(&idx(&[2, 2]), &Complex::from_i64(2, prec), prec).unwrap();
        let m = mt_zeta_fast(&[2, 2, 1], &Complex::from_i64(1, prec), prec, &MtOptions::default()).unwrap();
        assert!((&v.estimate - &m.estimate).abs() < 1e-35);
    }

    #[test]
    fn negative_integer_values() {
        assert_eq!(xi_mt_negative_integer(&idx(&[1]), 0).unwrap(), 1);
        assert_eq!(xi_mt_negative_integer(&idx(&[1]), 1).unwrap(), Rational::from((1, 2)));
        assert_eq!(xi_mt_negative_integer(&idx(&[1, 1]), 0).unwrap(), 0);
    }

    #[test]
    fn probe_approaches_negative_integer_value() {
        let h = Float::with_val(128, 1e-6);
        let v = xi_mt_continuation_probe(&idx(&[1]), 1, &h, 128).unwrap();
        assert!((v.estimate.re.to_f64() - 0.5).abs() < 1e-5);
        let v = xi_mt_continuation_probe(&idx(&[2]), 0, &h, 128).unwrap();
        assert!((v.estimate.re.to_f64() - 1.0).abs() < 1e-5);
        let v = xi_mt_continuation_probe(&idx(&[1, 1]), 0, &h, 128).unwrap();
        assert!(v.estimate.re.to_f64().abs() < 1e-5);
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(xi_mt_eval(&idx(&[1]), &Complex::from_i64(0, 64), 64), Err(Error::Domain(_))));
        assert!(matches!(xi_mt_eval(&idx(&[1, 1]), &Complex::from_i64(0, 64), 64), Err(Error::Pole(_))));
        assert!(xi_mt_eval(&idx(&[0]), &Complex::from_i64(2, 64), 64).is_err());
    }
}
