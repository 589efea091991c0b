//! ξ_MT,g(𝕜_1, ..., 𝕜_g; s) = Γ(s)^{-1} ∫_0^∞ t^{s-1}/(e^t - 1) ∏ Λ_{𝕜_i}(1 - e^{-t}) dt.
//!
//! Same split as for ξ_MT: exact series on `[0, 1]`, quadrature of the
//! exponential-polynomial form of the Λ product on `[1, ∞)`.

use std::f64::consts::LN_2;

use rug::Float;

use super::exppoly::ExpPoly;
use super::lambda::{exppoly_rates, lambda_exppoly, unit_series_order};
use crate::error::{Error, Result};
use crate::numerics::{
    err_float, gamma_wp, integrate_to_infinity, riemann_zeta, working_prec, Complex, Decay, ValueWithError,
    ERROR_PREC,
};
use crate::series::{lambda_of_one_minus_exp_neg, IndexVector, TruncatedSeries};

/// ξ_MT,g for index vectors with tails; `g = 0` gives `ζ(s)`.
pub fn xi_mt_g_eval(indices: &[IndexVector], s: &Complex, prec: u32) -> Result<ValueWithError> {
    if indices.is_empty() {
        return riemann_zeta(s, prec);
    }
    let mut total_depth = 0;
    for index in indices {
        index.require_lambda()?;
        total_depth += index.depth();
    }
    if s.re <= 1 - total_depth as i64 {
        return Err(Error::Domain(format!(
            "ξ_MT,g needs Re(s) > {}, got {}",
            1 - total_depth as i64,
            s.re.to_f64()
        )));
    }
    if let Some(n) = s.as_integer() {
        if n <= 0 {
            return Err(Error::Pole(format!("s = {n} is a pole of the Mellin form")));
        }
    }
    let wp = working_prec(prec);
    let s = s.with_prec(wp);

    // [0, 1]
    let order = unit_series_order(total_depth, wp);
    let mut product = TruncatedSeries::one(order);
    for index in indices {
        product = &product * &lambda_of_one_minus_exp_neg(index, order)?;
    }
    let series = product.div_by_expm1()?;
    let mut head = Complex::zero(wp);
    let mut last_terms = [Float::new(ERROR_PREC), Float::new(ERROR_PREC)];
    for (n, g) in series.coeffs().iter().enumerate() {
        if g.cmp0().is_eq() {
            continue;
        }
        let term = s.add_i64(n as i64).recip().mul_real(&Float::with_val(wp, g));
        last_terms = [last_terms[1].clone(), err_float(&term.abs())];
        head = &head + &term;
    }
    let head_err = Float::with_val(ERROR_PREC, &last_terms[0] + &last_terms[1]) * 4u32;

    // [1, ∞)
    let rates = exppoly_rates(total_depth, wp);
    let mut prod = ExpPoly::constant(&Float::with_val(wp, 1), rates, wp);
    for index in indices {
        prod = prod.mul(&lambda_exppoly(index, rates, wp)?);
    }
    let one = Float::with_val(wp, 1);
    let at_one = prod.eval(&one).to_f64().abs();
    let decay = Decay {
        rate: 1.0,
        power: s.re.to_f64() - 1.0 + prod.degree() as f64,
        log_scale: at_one.max(1.0).ln() + 4.0 * LN_2,
    };
    let sm1 = s.add_i64(-1);
    let tail = integrate_to_infinity(&one, decay, wp, |t| {
        let v = prod.eval(t) / Float::with_val(wp, t.exp_m1_ref());
        Ok(sm1.real_base_pow(t).mul_real(&v))
    })?;

    let gamma = gamma_wp(&s, wp)?;
    let integral = ValueWithError::new(&head + &tail.estimate, head_err + &tail.abs_error, false);
    Ok(integral.div(&gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mt::xi_mt_eval;

    #[test]
    fn empty_product_is_riemann_zeta() {
        let v = xi_mt_g_eval(&[], &Complex::from_i64(3, 128), 128).unwrap();
        let z = riemann_zeta(&Complex::from_i64(3, 128), 128).unwrap();
        assert_eq!(v, z);
    }

    #[test]
    fn single_tailless_index_is_xi() {
        let prec = 128;
        let s = Complex::new(Float::with_val(prec, 2.5), Float::with_val(prec, 1));
        let a = xi_mt_g_eval(&[IndexVector::with_tail(vec![2, 1], 0)], &s, prec).unwrap();
        let b = xi_mt_eval(&IndexVector::new(vec![2, 1]), &s, prec).unwrap();
        assert!(a.distance(&b).to_f64() < 1e-35);
    }

    #[test]
    fn domain_checks() {
        let i = IndexVector::with_tail(vec![1], 1);
        assert!(matches!(xi_mt_g_eval(std::slice::from_ref(&i), &Complex::from_i64(0, 64), 64), Err(Error::Domain(_))));
        assert!(xi_mt_g_eval(&[IndexVector::new(vec![1])], &Complex::from_i64(2, 64), 64).is_err());
    }
}
