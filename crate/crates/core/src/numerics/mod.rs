//! Arbitrary-precision scalars and special-function kernels.
//!
//! Every public kernel takes a target precision `P` in bits and works
//! internally at `P + GUARD_BITS`. The returned estimate keeps the working
//! precision so callers can combine values before rounding.

mod complex;
mod gamma;
mod polylog;
mod quad;
mod zeta;

use rug::Float;

pub use complex::{decimal, pi, Complex};
pub use gamma::{factorial_float, gamma, gamma_wp, pochhammer, pochhammer_wp};
pub use polylog::{polylog_near_one_wp, polylog_point, polylog_point_wp};
pub use quad::{integrate_to_infinity, Decay};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_wp, riemann_zeta, riemann_zeta_wp, zeta_integer_wp};

/// Extra bits carried by every kernel above the requested precision.
pub const GUARD_BITS: u32 = 32;

/// Precision of the `abs_error` field. Error bounds only need a few
/// significant bits but a wide exponent range.
pub const ERROR_PREC: u32 = 64;

pub fn working_prec(prec: u32) -> u32 {
    prec + GUARD_BITS
}

/// An estimate together with an absolute error bound.
///
/// `rigorous` is true when `abs_error` is a proven bound (series tail
/// majorants plus rounding), false when it is a heuristic such as the
/// difference of two quadrature refinements.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueWithError {
    pub estimate: Complex,
    pub abs_error: Float,
    pub rigorous: bool,
}

/// Rounds up to the error precision.
pub fn err_float(x: &Float) -> Float {
    Float::with_val_round(ERROR_PREC, x.abs_ref(), rug::float::Round::Up).0
}

pub fn err_f64(x: f64) -> Float {
    Float::with_val_round(ERROR_PREC, x.abs(), rug::float::Round::Up).0
}

/// `exp(log)` rounded up, for bounds tracked in log space. Unlike `f64`
/// this does not underflow at thousands of bits.
pub fn exp_bound(log: f64) -> Float {
    Float::with_val_round(ERROR_PREC, Float::with_val(ERROR_PREC, log).exp_ref(), rug::float::Round::Up).0
}

/// `2^e` as an error-precision float.
pub fn pow2(e: i64) -> Float {
    let mut one = Float::with_val(ERROR_PREC, 1);
    if e >= 0 {
        one <<= e as u32;
    } else {
        one >>= (-e) as u32;
    }
    one
}

impl ValueWithError {
    pub fn new(estimate: Complex, abs_error: Float, rigorous: bool) -> Self {
        let abs_error = err_float(&abs_error);
        Self {
            estimate,
            abs_error,
            rigorous,
        }
    }

    /// An exactly representable value.
    pub fn exact(estimate: Complex) -> Self {
        Self::new(estimate, Float::new(ERROR_PREC), true)
    }

    pub fn prec(&self) -> u32 {
        self.estimate.prec()
    }

    pub fn abs_error_f64(&self) -> f64 {
        self.abs_error.to_f64()
    }

    /// Widens the bound by the rounding error of `ops` roundings at the
    /// estimate's precision.
    pub fn with_rounding(mut self, ops: u64) -> Self {
        let mag = err_float(&self.estimate.abs());
        let ulp = pow2(-(self.prec() as i64) + 1 + (64 - ops.max(1).leading_zeros()) as i64);
        self.abs_error += mag * ulp;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.estimate + &other.estimate,
            Float::with_val(ERROR_PREC, &self.abs_error + &other.abs_error),
            self.rigorous && other.rigorous,
        )
        .with_rounding(1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.estimate - &other.estimate,
            Float::with_val(ERROR_PREC, &self.abs_error + &other.abs_error),
            self.rigorous && other.rigorous,
        )
        .with_rounding(1)
    }

    /// Product; the bound is `|a|e_b + |b|e_a + e_a e_b`.
    pub fn mul(&self, other: &Self) -> Self {
        let a = err_float(&self.estimate.abs());
        let b = err_float(&other.estimate.abs());
        let err = a * &other.abs_error + b * &self.abs_error + Float::with_val(ERROR_PREC, &self.abs_error * &other.abs_error);
        Self::new(&self.estimate * &other.estimate, err, self.rigorous && other.rigorous).with_rounding(4)
    }

    /// Quotient; valid while `e_b < |b|`.
    pub fn div(&self, other: &Self) -> Self {
        let b = err_float(&other.estimate.abs());
        let q = &self.estimate / &other.estimate;
        let qa = err_float(&q.abs());
        let denom = Float::with_val(ERROR_PREC, &b - &other.abs_error);
        let err = if denom.is_sign_positive() && !denom.is_zero() {
            (Float::with_val(ERROR_PREC, &self.abs_error + qa * &other.abs_error)) / denom
        } else {
            Float::with_val(ERROR_PREC, rug::float::Special::Infinity)
        };
        Self::new(q, err, self.rigorous && other.rigorous).with_rounding(6)
    }

    /// Multiplies by an exact (or exactly rounded) scalar.
    pub fn scale(&self, factor: &Complex) -> Self {
        let f = err_float(&factor.abs());
        Self::new(&self.estimate * factor, f * &self.abs_error, self.rigorous).with_rounding(4)
    }

    pub fn scale_i64(&self, factor: i64) -> Self {
        let f = err_f64(factor as f64);
        Self::new(self.estimate.mul_i64(factor), f * &self.abs_error, self.rigorous).with_rounding(2)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.estimate, self.abs_error.clone(), self.rigorous)
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::exact(Complex::one(self.prec()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rounds the estimate to `prec` bits, widening the bound accordingly.
    pub fn round_to(&self, prec: u32) -> Self {
        Self::new(self.estimate.with_prec(prec), self.abs_error.clone(), self.rigorous).with_rounding(1)
    }

    /// Sum of values in the given order.
    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(prec: u32, items: I) -> Self {
        let mut acc = Self::exact(Complex::zero(prec));
        for v in items {
            acc = acc.add(v);
        }
        acc
    }

    /// `|self - other|` at the estimate precision.
    pub fn distance(&self, other: &Self) -> Float {
        (&self.estimate - &other.estimate).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(x: f64, e: f64) -> ValueWithError {
        ValueWithError::new(Complex::from_f64(x, 128), err_f64(e), true)
    }

    #[test]
    fn error_propagation() {
        let a = val(2.0, 1e-20);
        let b = val(-3.0, 1e-21);
        let p = a.mul(&b);
        assert_eq!(p.estimate.re.to_f64(), -6.0);
        let e = p.abs_error_f64();
        assert!((3.19e-20..3.3e-20).contains(&e), "{e}");
        let q = a.div(&b);
        assert!(q.abs_error_f64() >= 1e-20 / 3.0);
        assert!(a.add(&b).abs_error_f64() >= 1.1e-20);
        assert!(!ValueWithError::new(Complex::zero(64), err_f64(0.0), false).mul(&a).rigorous);
    }

    #[test]
    fn rounding_is_accounted() {
        let a = ValueWithError::exact(Complex::from_f64(1.0, 100)).with_rounding(1);
        let e = a.abs_error_f64();
        assert!(e > 0.0 && e < 1e-28);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2(-3).to_f64(), 0.125);
        assert_eq!(pow2(5).to_f64(), 32.0);
    }
}
