//! Riemann and Hurwitz zeta by Euler–Maclaurin summation.
//!
//! `ζ(s, a) = Σ_{n<N} (n+a)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!           + Σ_{j=1}^{K} B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1} + R`, `x = N + a`,
//! with `|R| ≤ 4|(s)_{2K}|/(2π)^{2K} · x^{1-σ-2K}/(σ+2K-1)` from the bound
//! `|B̃_{2K}| ≤ 4(2K)!/(2π)^{2K}` on the periodic Bernoulli function.

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Mutex, OnceLock};

use rug::Float;

use super::{err_f64, exp_bound, pow2, working_prec, Complex, ValueWithError, ERROR_PREC};
use crate::error::{Error, Result};
use crate::series::bernoulli_numbers;

/// `ζ(s)` for `Re(s) > 1` at target precision `prec`.
pub fn riemann_zeta(s: &Complex, prec: u32) -> Result<ValueWithError> {
    riemann_zeta_wp(&s.with_prec(working_prec(prec)), working_prec(prec))
}

/// `Σ_{n≥0} (n+a)^{-s}` for `Re(s) > 1`, `a > 0`.
pub fn hurwitz_zeta(s: &Complex, a: &Float, prec: u32) -> Result<ValueWithError> {
    let wp = working_prec(prec);
    hurwitz_zeta_wp(&s.with_prec(wp), &Float::with_val(wp, a), wp)
}

/// `ζ(s)` computed at exactly `wp` bits.
pub fn riemann_zeta_wp(s: &Complex, wp: u32) -> Result<ValueWithError> {
    if let Some(n) = s.as_integer() {
        if n >= 2 {
            return Ok(zeta_integer_wp(n as u32, wp));
        }
    }
    hurwitz_zeta_wp(s, &Float::with_val(wp, 1), wp)
}

type ZetaMemo = Mutex<HashMap<(u32, u32), ValueWithError>>;

/// `ζ(n)` for an integer `n ≥ 2`, memoized per `(n, wp)`.
pub fn zeta_integer_wp(n: u32, wp: u32) -> ValueWithError {
    assert!(n >= 2, "ζ(n) needs n ≥ 2");
    static MEMO: OnceLock<ZetaMemo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&(n, wp)) {
        return v.clone();
    }
    let v = hurwitz_zeta_wp(&Complex::from_i64(n as i64, wp), &Float::with_val(wp, 1), wp)
        .expect("ζ(n) converges for n ≥ 2");
    memo.lock().unwrap().insert((n, wp), v.clone());
    v
}

/// Natural log of the remainder bound after `k` correction terms.
fn log_remainder(s_re: f64, log_poch: f64, k: usize, x: f64) -> f64 {
    let tk = 2.0 * k as f64;
    4f64.ln() + log_poch - tk * (2.0 * PI).ln() + (1.0 - s_re - tk) * x.ln() - (s_re + tk - 1.0).ln()
}

/// Picks the cutoff `N` and the number of correction terms `K`.
fn plan(s: &Complex, a: f64, wp: u32) -> (usize, usize, f64) {
    let s_re = s.re.to_f64();
    let s_im = s.im.to_f64();
    let target = -(wp as f64) * LN_2 - 4.0;
    let mut n = ((wp as f64 * LN_2 / (2.0 * PI)) + s_im.hypot(s_re) / (2.0 * PI)).ceil() as usize + 2;
    loop {
        let x = n as f64 + a;
        let mut log_poch = 0.0;
        let mut best = f64::INFINITY;
        for k in 1..=4 * wp as usize {
            // (s)_{2k} = (s)_{2k-2} (s+2k-2)(s+2k-1)
            for i in [2 * k - 2, 2 * k - 1] {
                log_poch += (s_re + i as f64).hypot(s_im).ln();
            }
            let lr = log_remainder(s_re, log_poch, k, x);
            if lr < target {
                return (n, k, lr);
            }
            if lr > best {
                break;
            }
            best = lr;
        }
        n *= 2;
    }
}

/// `ζ(s, a)` computed at exactly `wp` bits.
pub fn hurwitz_zeta_wp(s: &Complex, a: &Float, wp: u32) -> Result<ValueWithError> {
    if s.re <= 1 {
        return Err(Error::Domain(format!("zeta needs Re(s) > 1, got Re(s) = {}", s.re.to_f64())));
    }
    if *a <= 0 {
        return Err(Error::Domain("Hurwitz zeta needs a > 0".into()));
    }
    let s = s.with_prec(wp);
    let (n, k, log_rem) = plan(&s, a.to_f64(), wp);

    let neg_s = -&s;
    let mut sum = Complex::zero(wp);
    let mut magnitude = 0f64;
    for i in 0..n {
        let base = Float::with_val(wp, a + i as u32);
        let term = neg_s.real_base_pow(&base);
        magnitude += term.abs().to_f64();
        sum = &sum + &term;
    }

    let x = Float::with_val(wp, a + n as u32);
    let x_neg_s = neg_s.real_base_pow(&x);
    // x^{1-s}/(s-1)
    let head = &x_neg_s.mul_real(&x) / &s.add_i64(-1);
    sum = &sum + &head;
    sum = &sum + &x_neg_s.div_real(&Float::with_val(wp, 2));
    magnitude += head.abs().to_f64();

    let bern = bernoulli_numbers(2 * k);
    let x_inv = Float::with_val(wp, x.recip_ref());
    let x_inv2 = Float::with_val(wp, x_inv.square_ref());
    let mut poch = s.clone(); // (s)_{2j-1}
    let mut power = x_neg_s.mul_real(&x_inv); // x^{-s-2j+1}
    let mut fact = Float::with_val(wp, 2); // (2j)!
    for j in 1..=k {
        if j > 1 {
            let jj = 2 * j as i64;
            poch = &(&poch * &s.add_i64(jj - 3)) * &s.add_i64(jj - 2);
            power = power.mul_real(&x_inv2);
            fact *= (jj - 1) * jj;
        }
        let coeff = Float::with_val(wp, &bern[2 * j]) / &fact;
        let term = (&poch * &power).mul_real(&coeff);
        sum = &sum + &term;
    }

    let truncation = exp_bound(log_rem);
    let rounding = err_f64(magnitude.max(1.0)) * pow2(-(wp as i64) + 2 + ((n + 4 * k) as f64).log2().ceil() as i64);
    Ok(ValueWithError::new(sum, Float::with_val(ERROR_PREC, truncation + rounding), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{pi, riemann_zeta};
    use rug::ops::Pow;

    fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn zeta_two_and_four() {
        let prec = 256;
        let z2 = riemann_zeta(&Complex::from_i64(2, prec), prec).unwrap();
        let p = pi(prec + 64);
        let expect = Complex::real(Float::with_val(prec + 64, p.square_ref()) / 6);
        assert!(z2.abs_error < crate::numerics::pow2(-250));
        assert!((&z2.estimate - &expect).abs() <= z2.abs_error);
        let z4 = riemann_zeta(&Complex::from_i64(4, prec), prec).unwrap();
        let expect4 = Complex::real(Float::with_val(prec + 64, (&p).pow(4u32)) / 90);
        assert!((&z4.estimate - &expect4).abs() <= z4.abs_error);
    }

    #[test]
    fn agrees_with_mpfr_zeta() {
        // MPFR's own ζ is an independent oracle on the real axis.
        for s in [1.5, 2.5, 3.0, 7.25, 30.0] {
            for prec in [64, 256, 1024] {
                let wp = prec + 64;
                let v = riemann_zeta(&Complex::from_f64(s, prec), prec).unwrap();
                let oracle = Float::with_val(wp, Float::with_val(wp, s).zeta_ref());
                let diff = Float::with_val(wp, &v.estimate.re - &oracle).abs();
                assert!(diff <= v.abs_error, "s={s} prec={prec}");
                assert!(v.abs_error <= crate::numerics::pow2(-(prec as i64)));
            }
        }
    }

    #[test]
    fn zeta_three_against_direct_sum() {
        // Σ_{n≤M} n^{-3} plus the integral tail bracket [1/(2(M+1)^2), 1/(2M^2)].
        let wp = 200;
        let m = 200_000u32;
        let mut sum = Float::with_val(wp, 0);
        for n in (1..=m).rev() {
            let n = Float::with_val(wp, n);
            sum += Float::with_val(wp, (&n).pow(3u32)).recip();
        }
        let lo = Float::with_val(wp, &sum + Float::with_val(wp, 2 * (m as u64 + 1) * (m as u64 + 1)).recip());
        let hi = Float::with_val(wp, &sum + Float::with_val(wp, 2 * m as u64 * m as u64).recip());
        let z3 = riemann_zeta(&Complex::from_i64(3, 160), 160).unwrap();
        assert!(z3.estimate.re >= lo && z3.estimate.re <= hi);
    }

    #[test]
    fn hurwitz_special_values() {
        let prec = 200;
        let s = Complex::from_i64(2, prec);
        let half = Float::with_val(prec, 0.5);
        let h = hurwitz_zeta(&s, &half, prec).unwrap();
        let p = pi(prec + 64);
        let expect = Complex::real(Float::with_val(prec + 64, p.square_ref()) / 2);
        assert!(close(&h.estimate, &expect, 1e-58));
        let one = Float::with_val(prec, 1);
        let s = Complex::new(Float::with_val(prec, 2.5), Float::with_val(prec, 7));
        let h1 = hurwitz_zeta(&s, &one, prec).unwrap();
        let z = riemann_zeta(&s, prec).unwrap();
        assert!(close(&h1.estimate, &z.estimate, 1e-58));
    }

    #[test]
    fn complex_zeta_reference_value() {
        // reference digits of ζ(2+i) from an independent library
        let prec = 128;
        let s = Complex::new(Float::with_val(prec, 2), Float::with_val(prec, 1));
        let z = riemann_zeta(&s, prec).unwrap();
        let expect = Complex::new(
            Float::with_val(prec, Float::parse("1.15035570325490267174284993474").unwrap()),
            Float::with_val(prec, Float::parse("-0.437530865919607881117527898593").unwrap()),
        );
        assert!(close(&z.estimate, &expect, 1e-29), "{}", z.estimate);
    }

    #[test]
    fn rejects_non_convergent_arguments() {
        assert!(matches!(riemann_zeta(&Complex::from_i64(1, 64), 64), Err(Error::Domain(_))));
        let s = Complex::from_i64(2, 64);
        assert!(hurwitz_zeta(&s, &Float::with_val(64, 0), 64).is_err());
    }
}
