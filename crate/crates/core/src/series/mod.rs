//! Exact rational power series truncated at a fixed order.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `t^0, ..., t^N`; every coefficient it stores is exact. Binary operations
//! produce a result of the smaller operand order, so a coefficient is never
//! reported beyond the point where it is known.

mod bernoulli;
mod coefficients;
mod index;

use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Integer, Rational};

use crate::error::{Error, Result};

pub use bernoulli::{bernoulli, bernoulli_numbers, zeta_nonpositive};
pub use coefficients::{
    akmt_coefficients, akmt_series, bernoulli_series, check_lambda_derivative_rule, lambda_coefficients,
    lambda_of_one_minus_exp_neg, li_of_one_minus_exp_neg, li_of_one_minus_exp_neg_by_composition,
    one_minus_exp_neg, polylog_series,
};
pub use index::IndexVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Rational::from(1), order)
    }

    /// `coeff · t^power`, truncated at `order`.
    pub fn monomial(power: usize, coeff: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Drops coefficients above `order` (no-op when already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0().is_eq())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Rational::from(c * factor))
                .collect(),
        }
    }

    /// `outer(inner(t))`. The inner series must vanish at `t = 0`.
    ///
    /// Horner evaluation of `outer` with series arithmetic; the result order is
    /// the minimum of the two orders.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<Self> {
        if inner.coeffs[0].cmp0().is_ne() {
            return Err(Error::NonzeroConstant("inner series of a composition"));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::monomial(0, self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `a(t) / t` for a series with zero constant term; the order drops by one.
    pub fn div_by_t(&self) -> Result<Self> {
        if self.coeffs[0].cmp0().is_ne() {
            return Err(Error::NonzeroConstant("division by t"));
        }
        if self.order() == 0 {
            // a = 0 + O(t): the quotient is known only through O(1), i.e. nothing;
            // report the empty information as the zero series of order 0.
            return Ok(Self::zero(0));
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `a(t) / (e^t - 1)`, computed as `(a/t) · (t/(e^t - 1))`.
    ///
    /// Requires a zero constant term; the order drops by one.
    pub fn div_by_expm1(&self) -> Result<Self> {
        if self.coeffs[0].cmp0().is_ne() {
            return Err(Error::NonzeroConstant("division by e^t - 1"));
        }
        let quotient = self.div_by_t()?;
        if self.order() == 0 {
            return Ok(quotient);
        }
        let bern = bernoulli_series(quotient.order());
        Ok(&quotient * &bern)
    }

    /// Multiplicative inverse of a unit series (nonzero constant term).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.cmp0().is_eq() {
            return Err(Error::Domain("series with zero constant term is not invertible".into()));
        }
        let inv0 = Rational::from(c0.recip_ref());
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::new();
            for i in 1..=k {
                if self.coeffs[i].cmp0().is_ne() && out[k - i].cmp0().is_ne() {
                    acc += Rational::from(&self.coeffs[i] * &out[k - i]);
                }
            }
            acc *= &inv0;
            out.push(-acc);
        }
        Ok(Self { coeffs: out })
    }

    /// `∫_0^t a(τ) dτ`; exact one order further than the integrand.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::new());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(Rational::from(c / Integer::from(n + 1)));
        }
        Self { coeffs }
    }

    /// Coefficients multiplied by `n!` (the exponential generating function view).
    pub fn to_egf_coefficients(&self) -> Vec<Rational> {
        let mut fact = Integer::from(1);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= n as u32;
                }
                Rational::from(c * &fact)
            })
            .collect()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| Rational::from(&self.coeffs[n] + &rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|n| Rational::from(&self.coeffs[n] - &rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let lo_a = self.coeffs.iter().position(|c| c.cmp0().is_ne());
        let lo_b = rhs.coeffs.iter().position(|c| c.cmp0().is_ne());
        let mut coeffs = vec![Rational::new(); order + 1];
        let (Some(lo_a), Some(lo_b)) = (lo_a, lo_b) else {
            return TruncatedSeries { coeffs };
        };
        let mut prod = Rational::new();
        for (n, slot) in coeffs.iter_mut().enumerate().skip(lo_a + lo_b) {
            for i in lo_a..=(n - lo_b) {
                let (a, b) = (&self.coeffs[i], &rhs.coeffs[n - i]);
                if a.cmp0().is_eq() || b.cmp0().is_eq() {
                    continue;
                }
                prod.assign(a * b);
                *slot += &prod;
            }
        }
        TruncatedSeries { coeffs }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn series(cs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn add_examples() {
        let a = series(&[(1, 1), (1, 1)]);
        let b = series(&[(1, 1), (-1, 1)]);
        assert_eq!(&a + &b, series(&[(2, 1), (0, 1)]));
        let z = TruncatedSeries::zero(4);
        let c = series(&[(3, 1), (1, 2), (0, 1), (5, 7), (1, 1)]);
        assert_eq!(&z + &c, c);
        let t = TruncatedSeries::monomial(1, q(1, 1), 3);
        let t2 = TruncatedSeries::monomial(2, q(1, 1), 3);
        assert_eq!(&t + &t2, series(&[(0, 1), (1, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn add_takes_min_order() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn mul_examples() {
        let a = series(&[(1, 1), (1, 1), (0, 1)]);
        let b = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(&a * &b, series(&[(1, 1), (0, 1), (-1, 1)]));
        let t = TruncatedSeries::monomial(1, q(1, 1), 4);
        assert_eq!(&t * &t, TruncatedSeries::monomial(2, q(1, 1), 4));
        let c = series(&[(3, 1), (1, 2), (0, 1), (5, 7)]);
        assert_eq!(&c * &TruncatedSeries::one(3), c);
    }

    #[test]
    fn compose_examples() {
        let inner = series(&[(0, 1), (1, 1), (1, 1), (0, 1)]);
        let id = TruncatedSeries::monomial(1, q(1, 1), 3);
        assert_eq!(id.compose(&inner).unwrap(), inner);
        let sq = TruncatedSeries::monomial(2, q(1, 1), 3);
        let t = TruncatedSeries::monomial(1, q(1, 1), 3);
        assert_eq!(sq.compose(&t).unwrap(), TruncatedSeries::monomial(2, q(1, 1), 3));
        // Li_1(1 - e^{-t}) = t
        let li1 = polylog_series(1, 8);
        let u = one_minus_exp_neg(8);
        assert_eq!(li1.compose(&u).unwrap(), TruncatedSeries::monomial(1, q(1, 1), 8));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let inner = TruncatedSeries::one(3);
        assert!(matches!(
            polylog_series(1, 3).compose(&inner),
            Err(Error::NonzeroConstant(_))
        ));
    }

    #[test]
    fn div_by_expm1_examples() {
        // t / (e^t - 1) by exact long division: 1 - t/2 + t^2/12 - t^4/720 + t^6/30240 - t^8/1209600
        let t = TruncatedSeries::monomial(1, q(1, 1), 10);
        let expect = series(&[
            (1, 1),
            (-1, 2),
            (1, 12),
            (0, 1),
            (-1, 720),
            (0, 1),
            (1, 30240),
            (0, 1),
            (-1, 1209600),
            (0, 1),
        ]);
        assert_eq!(t.div_by_expm1().unwrap(), expect);

        // t (e^t - 1) -> t
        let mut c = vec![Rational::new(); 9];
        let mut fact = Integer::from(1);
        for (n, slot) in c.iter_mut().enumerate().skip(2) {
            fact *= (n - 1) as u32;
            *slot = Rational::from((Integer::from(1), fact.clone()));
        }
        let q8 = TruncatedSeries::from_coeffs(c).div_by_expm1().unwrap();
        assert_eq!(q8, TruncatedSeries::monomial(1, q(1, 1), 7));

        assert!(TruncatedSeries::zero(5).div_by_expm1().unwrap().is_zero());
        assert!(TruncatedSeries::one(5).div_by_expm1().is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = series(&[(2, 1), (1, 3), (-5, 7), (1, 1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, TruncatedSeries::one(3));
        assert!(series(&[(0, 1), (1, 1)]).inverse().is_err());
    }

    #[test]
    fn integrate_raises_order() {
        let a = series(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(a.integrate(), series(&[(0, 1), (1, 1), (1, 2), (1, 3)]));
    }
}
