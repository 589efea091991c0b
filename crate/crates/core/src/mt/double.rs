//! Euler double zeta values and the odd-weight closed form.
//!
//! Two orderings of `ζ(a, b)` are in use. With [`DoubleZetaOrder::InnerFirst`]
//! the first argument sits on the smaller index,
//! `ζ(a, b) = Σ_{n < m} n^{-a} m^{-b}`; this is the ordering under which
//! [`double_zeta_closed_form`] holds, and [`euler_double_zeta`] uses it.

use rug::{Float, Integer};

use super::fast::{mt_zeta_fast, MtOptions};
use crate::error::{Error, Result};
use crate::numerics::{err_f64, pow2, riemann_zeta, working_prec, Complex, ValueWithError, ERROR_PREC};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DoubleZetaOrder {
    /// `Σ_{n<m} n^{-a} m^{-b}`
    InnerFirst,
    /// `Σ_{n<m} m^{-a} n^{-b}`
    OuterFirst,
}

/// `ζ(a, b)` in the given ordering, as `ζ_MT,2(e, 0; f)` where `e` is the
/// exponent on the smaller index and `f` on the larger.
pub fn double_zeta(a: u32, b: u32, order: DoubleZetaOrder, prec: u32) -> Result<ValueWithError> {
    let (inner, outer) = match order {
        DoubleZetaOrder::InnerFirst => (a, b),
        DoubleZetaOrder::OuterFirst => (b, a),
    };
    if inner < 1 || outer < 2 {
        return Err(Error::Divergent(format!(
            "ζ({a},{b}) in {order:?} order needs exponent ≥ 1 on the smaller index and ≥ 2 on the larger"
        )));
    }
    mt_zeta_fast(&[inner, 0], &Complex::from_i64(outer as i64, prec), prec, &MtOptions::default())
}

/// `ζ(a, b) = Σ_{n<m} n^{-a} m^{-b}` for `a ≥ 1`, `b ≥ 2`.
pub fn euler_double_zeta(a: u32, b: u32, prec: u32) -> Result<ValueWithError> {
    double_zeta(a, b, DoubleZetaOrder::InnerFirst, prec)
}

/// `Σ_{m ≤ cutoff} m^{-b} H^{(a)}_{m-1}` plus a proven bound on the rest,
/// `H^{(a)}_{m-1} = Σ_{n<m} n^{-a}`. Slow (error ~ `cutoff^{1-b}`); used as
/// an independent check of [`euler_double_zeta`].
pub fn euler_double_zeta_direct(a: u32, b: u32, cutoff: u32, prec: u32) -> Result<ValueWithError> {
    if a < 1 || b < 2 {
        return Err(Error::Divergent(format!("ζ({a},{b}) needs a ≥ 1 and b ≥ 2")));
    }
    let wp = working_prec(prec);
    let mut harmonic = Float::new(wp);
    let mut sum = Float::new(wp);
    for m in 2..=cutoff {
        let prev = Float::with_val(wp, m - 1);
        harmonic += Float::with_val(wp, rug::ops::Pow::pow(&prev, a)).recip();
        let mf = Float::with_val(wp, m);
        sum += Float::with_val(wp, &harmonic / Float::with_val(wp, rug::ops::Pow::pow(&mf, b)));
    }
    // Σ_{m>M} m^{-b} H_{m-1}: H^{(1)}_{m-1} ≤ 1 + ln m, H^{(a)} ≤ a/(a-1) for a ≥ 2
    let m = cutoff as f64;
    let bm1 = (b - 1) as f64;
    let tail = if a == 1 {
        m.powf(-bm1) * ((1.0 + m.ln()) / bm1 + 1.0 / (bm1 * bm1))
    } else {
        a as f64 / (a - 1) as f64 * m.powf(-bm1) / bm1
    };
    let rounding = pow2(-(wp as i64) + 4 + (cutoff as f64).log2().ceil() as i64) * 4u32;
    let err = Float::with_val(ERROR_PREC, err_f64(tail) * 1.0001f64 + rounding);
    Ok(ValueWithError::new(Complex::real(sum), err, true))
}

/// Closed form of `ζ(a, b)` (first argument on the smaller index) for odd
/// weight `M = a + b`:
///
/// `½{((-1)^b C(M,a) - 1) ζ(M) + (1 + (-1)^b) ζ(a) ζ(b)}
///  + (-1)^{b+1} Σ_{k=1}^{(M-3)/2} {C(2k, a-1) + C(2k, b-1)} ζ(2k+1) ζ(M-2k-1)`,
///
/// where the `ζ(a)ζ(b)` term is dropped when `a = 1`.
pub fn double_zeta_closed_form(a: u32, b: u32, prec: u32) -> Result<ValueWithError> {
    let weight = a + b;
    if weight.is_multiple_of(2) {
        return Err(Error::Parity(format!("closed form needs odd weight, got {a}+{b} = {weight}")));
    }
    if a < 1 || b < 2 {
        return Err(Error::Domain(format!("closed form needs a ≥ 1 and b ≥ 2, got ({a},{b})")));
    }
    let zeta = |n: u32| riemann_zeta(&Complex::from_i64(n as i64, prec), prec);
    let binom = |n: u32, k: u32| -> i64 { Integer::from(Integer::binomial_u(n, k)).to_i64().expect("small binomial") };
    let b_sign: i64 = if b.is_multiple_of(2) { 1 } else { -1 };

    let mut total = zeta(weight)?.scale_i64(b_sign * binom(weight, a) - 1);
    if a > 1 && b_sign == 1 {
        total = total.add(&zeta(a)?.mul(&zeta(b)?).scale_i64(2));
    }
    let half = Complex::real(Float::with_val(working_prec(prec), 0.5));
    total = total.scale(&half);
    for k in 1..=(weight - 3) / 2 {
        let c = binom(2 * k, a - 1) + binom(2 * k, b - 1);
        if c == 0 {
            continue;
        }
        let term = zeta(2 * k + 1)?.mul(&zeta(weight - 2 * k - 1)?).scale_i64(-b_sign * c);
        total = total.add(&term);
    }
    Ok(total)
}
