//! ζ_MT with nonnegative integer exponents through its Mellin integral
//!
//! `ζ_MT,r(k_1..k_r; s) = Γ(s)^{-1} ∫_0^∞ t^{s-1} ∏ Li_{k_j}(e^{-t}) dt`,
//!
//! split at `t = 1`. On `[0, 1]` every factor has a convergent expansion in
//! `t` and `ln t` (radius 2π); the product is integrated term by term with
//! `∫_0^1 t^{α-1} ln^b t dt = (-1)^b b!/α^{b+1}`. On `[1, ∞)` the product is
//! the Dirichlet-type sum `Σ_M a_M e^{-Mt}`, where `a_M` is the convolution
//! of the sequences `m^{-k_j}`, truncated at `M_max` with a majorant tail.

use std::f64::consts::{LN_2, PI};

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{
    err_float, exp_bound, gamma_wp, integrate_to_infinity, working_prec, zeta_integer_wp, Complex, Decay,
    ValueWithError, ERROR_PREC,
};
use crate::series::{bernoulli_numbers, zeta_nonpositive};

/// Tuning knobs for [`mt_zeta_fast`].
#[derive(Clone, Debug, Default)]
pub struct MtOptions {
    /// Cutoff for the coefficient convolution on `[1, ∞)`; chosen from the
    /// precision when absent.
    pub mmax: Option<usize>,
}

/// Expansion `Σ_{p ≥ -offset} Σ_b c_{p,b} t^p ln^b t`, truncated at `p ≤ order`.
#[derive(Clone, Debug)]
struct LogLaurent {
    offset: usize,
    // coeffs[p + offset][b]
    coeffs: Vec<Vec<Float>>,
}

impl LogLaurent {
    fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1 - self.offset as i64
    }

    fn log_degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len()).max().unwrap_or(1) - 1
    }

    /// `Li_k(e^{-t})` around `t = 0`.
    fn polylog_factor(k: u32, order: usize, wp: u32) -> Self {
        if k == 0 {
            // 1/(e^t - 1) = Σ_{n ≥ 0} B_n t^{n-1}/n!
            let bern = bernoulli_numbers(order + 1);
            let mut fact = Rational::from(1);
            let coeffs = (0..=order + 1)
                .map(|n| {
                    if n > 0 {
                        fact *= n as u32;
                    }
                    vec![Float::with_val(wp, Rational::from(&bern[n] / &fact))]
                })
                .collect();
            return Self { offset: 1, coeffs };
        }
        let k = k as usize;
        let mut fact = Rational::from(1);
        let mut coeffs = Vec::with_capacity(order + 1);
        for j in 0..=order {
            if j > 0 {
                fact *= j as u32;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            // (-t)^j / j!
            let scale = Rational::from(sign) / &fact;
            if j + 1 < k {
                let z = zeta_integer_wp((k - j) as u32, wp);
                coeffs.push(vec![Float::with_val(wp, &z.estimate.re * Float::with_val(wp, &scale))]);
            } else if j + 1 == k {
                let mut harmonic = Rational::new();
                for i in 1..k as u32 {
                    harmonic += Rational::from((1, i));
                }
                coeffs.push(vec![
                    Float::with_val(wp, Rational::from(&scale * &harmonic)),
                    Float::with_val(wp, -scale),
                ]);
            } else {
                let z = zeta_nonpositive(j - k);
                coeffs.push(vec![Float::with_val(wp, z * scale)]);
            }
        }
        Self { offset: 0, coeffs }
    }

    fn mul(&self, other: &Self, order: i64, wp: u32) -> Self {
        let offset = self.offset + other.offset;
        let len = (order + offset as i64 + 1) as usize;
        let deg = self.log_degree() + other.log_degree();
        let mut coeffs = vec![vec![Float::new(wp); deg + 1]; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let idx = i + j;
                if idx >= len {
                    break;
                }
                for (ba, ca) in a.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (bb, cb) in b.iter().enumerate() {
                        if !cb.is_zero() {
                            coeffs[idx][ba + bb] += Float::with_val(wp, ca * cb);
                        }
                    }
                }
            }
        }
        Self { offset, coeffs }
    }

    /// `∫_0^1 t^{s-1} (·) dt` term by term, also returning the contribution
    /// of each power (for the truncation estimate).
    fn mellin_unit(&self, s: &Complex, wp: u32) -> (Complex, Vec<Float>) {
        let mut total = Complex::zero(wp);
        let mut per_power = Vec::with_capacity(self.coeffs.len());
        for (i, row) in self.coeffs.iter().enumerate() {
            let p = i as i64 - self.offset as i64;
            let alpha_inv = s.add_i64(p).recip();
            let mut contrib = Complex::zero(wp);
            let mut pw = alpha_inv.clone(); // α^{-(b+1)}
            let mut fact = Float::with_val(wp, 1); // b!
            for (b, c) in row.iter().enumerate() {
                if b > 0 {
                    pw = &pw * &alpha_inv;
                    fact *= b as u32;
                }
                if c.is_zero() {
                    continue;
                }
                let mut scale = Float::with_val(wp, c * &fact);
                if b % 2 == 1 {
                    scale = -scale;
                }
                contrib = &contrib + &pw.mul_real(&scale);
            }
            per_power.push(contrib.abs());
            total = &total + &contrib;
        }
        (total, per_power)
    }
}

/// `ln C(M-1, r-1)`.
fn log_binomial(m: usize, r: usize) -> f64 {
    (1..r).map(|i| ((m - i) as f64 / i as f64).ln()).sum()
}

/// Natural log of a bound on `Σ_{M > mmax} a_M ∫_1^∞ t^{σ-1} e^{-Mt} dt`,
/// using `a_M ≤ C(M-1, r-1)` and `t^{σ-1} ≤ e^{(σ-1)(t-1)}` for `σ ≥ 1`.
fn log_tail(mmax: usize, r: usize, sigma: f64) -> f64 {
    let shift = (sigma - 1.0).max(0.0);
    let m = mmax + 1;
    if (m as f64) <= shift + 1.0 || m < r {
        return f64::INFINITY;
    }
    let first = log_binomial(m, r) - m as f64 - (m as f64 - shift).ln();
    // consecutive-term ratio, decreasing in M
    let q = (m as f64 / (m + 1 - r) as f64) * (-1f64).exp() * ((m as f64 - shift) / (m as f64 + 1.0 - shift));
    if q >= 1.0 {
        return f64::INFINITY;
    }
    first - (1.0 - q).ln()
}

fn auto_mmax(r: usize, sigma: f64, log_target: f64) -> usize {
    let mut m = r.max(8);
    while log_tail(m, r, sigma) > log_target {
        m += (m / 8).max(1);
    }
    m
}

/// `ζ_MT,r(k_1, ..., k_r; s)` for integers `k_j ≥ 0`.
///
/// Converges exactly when `Re(s)` exceeds the number of zero exponents
/// (and is positive). The error estimate mixes a proven tail for the
/// convolution cutoff with heuristic truncation and quadrature estimates,
/// so the result is not marked rigorous.
pub fn mt_zeta_fast(exponents: &[u32], s: &Complex, prec: u32, options: &MtOptions) -> Result<ValueWithError> {
    let wp = working_prec(prec);
    mt_zeta_fast_wp(exponents, &s.with_prec(wp), prec, wp, options)
}

pub(crate) fn mt_zeta_fast_wp(
    exponents: &[u32],
    s: &Complex,
    prec: u32,
    wp: u32,
    options: &MtOptions,
) -> Result<ValueWithError> {
    let r = exponents.len();
    if r == 0 {
        return Err(Error::Domain("ζ_MT needs at least one exponent".into()));
    }
    let zeros = exponents.iter().filter(|&&k| k == 0).count();
    let sigma = s.re.to_f64();
    if s.re <= zeros as u32 || s.re <= 0 {
        return Err(Error::Divergent(format!(
            "ζ_MT with {zeros} zero exponent(s) needs Re(s) > {}, got {sigma}",
            zeros
        )));
    }
    let gamma = gamma_wp(s, wp)?;
    let log_gamma_abs = gamma.estimate.abs().ln().to_f64();
    let log_target = -(wp as f64) * LN_2 + log_gamma_abs - 4.0;

    let mmax = match options.mmax {
        None => auto_mmax(r, sigma, log_target),
        Some(m) => {
            let needed = -(prec as f64) * LN_2 + log_gamma_abs;
            if m < r || log_tail(m, r, sigma) > needed {
                return Err(Error::PrecisionUnreachable {
                    reason: format!("convolution cutoff {m} leaves a tail above 2^-{prec}"),
                    suggested_mmax: Some(auto_mmax(r, sigma, needed)),
                });
            }
            m
        }
    };

    // [0, 1]
    let order = (wp as f64 * LN_2 / (2.0 * PI).ln()).ceil() as usize + 12 + 2 * r;
    let mut product: Option<LogLaurent> = None;
    let mut sorted = exponents.to_vec();
    sorted.sort_unstable();
    for &k in &sorted {
        let f = LogLaurent::polylog_factor(k, order + zeros, wp);
        product = Some(match product {
            None => f,
            Some(p) => p.mul(&f, order as i64, wp),
        });
    }
    let product = product.expect("r ≥ 1");
    debug_assert!(product.order() >= order as i64);
    let (head, per_power) = product.mellin_unit(s, wp);
    let last: Vec<&Float> = per_power.iter().rev().take(2).collect();
    let head_err = err_float(last[0]).max(&err_float(last[1])).clone() * 4u32;

    // [1, ∞)
    let a = convolution(exponents, mmax, wp);
    let one = Float::with_val(wp, 1);
    let scale_at_one: f64 = a
        .iter()
        .enumerate()
        .skip(r)
        .map(|(m, c)| c.to_f64() * (-(m as f64)).exp())
        .sum();
    let decay = Decay {
        rate: r as f64,
        power: sigma - 1.0,
        log_scale: scale_at_one.ln() + r as f64 + LN_2,
    };
    let sm1 = s.add_i64(-1);
    let tail = integrate_to_infinity(&one, decay, wp, |t| {
        let x = Float::with_val(wp, -t).exp();
        let mut acc = Float::new(wp);
        for c in a[r..].iter().rev() {
            acc += c;
            acc *= &x;
        }
        for _ in 1..r {
            acc *= &x;
        }
        Ok(sm1.real_base_pow(t).mul_real(&acc))
    })?;

    let integral = &head + &tail.estimate;
    let value = &integral / &gamma.estimate;
    let gamma_abs = err_float(&gamma.estimate.abs());
    let cutoff_err = exp_bound(log_tail(mmax, r, sigma));
    let err = (head_err + &tail.abs_error + cutoff_err) / &gamma_abs
        + Float::with_val(ERROR_PREC, err_float(&value.abs()) * &gamma.abs_error) / &gamma_abs;
    Ok(ValueWithError::new(value, Float::with_val(ERROR_PREC, err), false).with_rounding(64))
}

/// `a_M = Σ_{m_1+...+m_r = M} ∏ m_j^{-k_j}` for `M ≤ mmax` (all-ones
/// sequence for a zero exponent).
fn convolution(exponents: &[u32], mmax: usize, wp: u32) -> Vec<Float> {
    let sequence = |k: u32| -> Vec<Float> {
        (0..=mmax)
            .map(|m| {
                if m == 0 {
                    Float::new(wp)
                } else if k == 0 {
                    Float::with_val(wp, 1)
                } else {
                    Float::with_val(wp, Float::with_val(wp, m).recip_ref()).pow_i(k)
                }
            })
            .collect()
    };
    let mut acc = sequence(exponents[0]);
    for &k in &exponents[1..] {
        let b = sequence(k);
        let mut next = vec![Float::new(wp); mmax + 1];
        for (i, ai) in acc.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().skip(1) {
                if i + j > mmax {
                    break;
                }
                next[i + j] += Float::with_val(wp, ai * bj);
            }
        }
        acc = next;
    }
    acc
}

trait PowI {
    fn pow_i(self, k: u32) -> Float;
}

impl PowI for Float {
    fn pow_i(self, k: u32) -> Float {
        let prec = self.prec();
        Float::with_val(prec, rug::ops::Pow::pow(&self, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::riemann_zeta_wp;

    fn z(n: u32, wp: u32) -> Complex {
        riemann_zeta_wp(&Complex::from_i64(n as i64, wp), wp).unwrap().estimate
    }

    #[test]
    fn depth_one_collapses_to_riemann_zeta() {
        let prec = 128;
        let v = mt_zeta_fast(&[2], &Complex::from_i64(2, prec), prec, &MtOptions::default()).unwrap();
        assert!((&v.estimate - &z(4, 160)).abs() < 1e-35);
    }

    #[test]
    fn all_ones_values() {
        // ζ_MT,2(1,1;1) = 2ζ(3)
        let prec = 128;
        let v = mt_zeta_fast(&[1, 1], &Complex::from_i64(1, prec), prec, &MtOptions::default()).unwrap();
        assert!((&v.estimate - &z(3, 160).mul_i64(2)).abs() < 1e-35, "{}", v.estimate);
    }

    #[test]
    fn zero_exponent_is_a_shifted_sum() {
        // Σ_{m,n} (m+n)^{-s} = Σ_M (M-1) M^{-s} = ζ(s-1) - ζ(s)
        let prec = 128;
        let v = mt_zeta_fast(&[0, 0], &Complex::from_i64(4, prec), prec, &MtOptions::default()).unwrap();
        let expect = &z(3, 160) - &z(4, 160);
        assert!((&v.estimate - &expect).abs() < 1e-35, "{}", v.estimate);
    }

    #[test]
    fn too_small_cutoff_suggests_a_larger_one() {
        let opts = MtOptions { mmax: Some(10) };
        match mt_zeta_fast(&[1, 1], &Complex::from_i64(1, 128), 128, &opts) {
            Err(Error::PrecisionUnreachable { suggested_mmax: Some(m), .. }) => assert!(m > 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn divergent_region_is_rejected() {
        assert!(matches!(
            mt_zeta_fast(&[0, 0], &Complex::from_i64(2, 64), 64, &MtOptions::default()),
            Err(Error::Divergent(_))
        ));
    }
}
