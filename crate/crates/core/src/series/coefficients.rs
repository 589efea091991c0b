//! Generating-function coefficients built on [`TruncatedSeries`]:
//! generalized poly-Bernoulli coefficients of Mordell–Tornheim type and the
//! Λ-series coefficients.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{IndexVector, TruncatedSeries};
use crate::error::{Error, Result};

/// Memo of exact series keyed by some index; keeps the longest expansion seen.
/// Lower coefficients never change when the order grows, so truncating the
/// longest one is always valid.
struct SeriesCache<K> {
    map: OnceLock<Mutex<HashMap<K, TruncatedSeries>>>,
}

impl<K: Eq + Hash + Clone> SeriesCache<K> {
    const fn new() -> Self {
        Self {
            map: OnceLock::new(),
        }
    }

    fn get_or_compute(
        &self,
        key: &K,
        order: usize,
        compute: impl FnOnce() -> Result<TruncatedSeries>,
    ) -> Result<TruncatedSeries> {
        let map = self.map.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(s) = map.lock().expect("series cache poisoned").get(key) {
            if s.order() >= order {
                return Ok(s.truncate(order));
            }
        }
        let fresh = compute()?;
        let mut guard = map.lock().expect("series cache poisoned");
        let longer = guard.get(key).is_none_or(|s| s.order() < fresh.order());
        if longer {
            guard.insert(key.clone(), fresh.clone());
        }
        Ok(fresh.truncate(order))
    }
}

static BERNOULLI_GF: SeriesCache<()> = SeriesCache::new();
static LI_U: SeriesCache<u32> = SeriesCache::new();
static AKMT: SeriesCache<Vec<u32>> = SeriesCache::new();
static LAMBDA_U: SeriesCache<IndexVector> = SeriesCache::new();

/// `t / (e^t - 1) = Σ B_n t^n / n!`, by inverting the unit series `(e^t - 1)/t`.
pub fn bernoulli_series(order: usize) -> TruncatedSeries {
    BERNOULLI_GF
        .get_or_compute(&(), order, || {
            let mut fact = Integer::from(1);
            let unit: Vec<Rational> = (0..=order)
                .map(|n| {
                    fact *= (n + 1) as u32;
                    Rational::from((Integer::from(1), fact.clone()))
                })
                .collect();
            TruncatedSeries::from_coeffs(unit).inverse()
        })
        .expect("(e^t - 1)/t is a unit")
}

/// `1 - e^{-t}`: coefficient of `t^m` is `-(-1)^m / m!` for `m ≥ 1`.
pub fn one_minus_exp_neg(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::new(); order + 1];
    let mut fact = Integer::from(1);
    for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
        fact *= m as u32;
        let v = Rational::from((Integer::from(1), fact.clone()));
        *c = if m % 2 == 0 { -v } else { v };
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// `Li_k(z) = Σ_{m≥1} z^m / m^k`, truncated at `order`.
pub fn polylog_series(k: u32, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::new(); order + 1];
    for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = Rational::from((Integer::from(1), Integer::from(m).pow(k)));
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// `Li_k(1 - e^{-t})` as a series in `t`.
///
/// Uses `Li_1(1 - e^{-t}) = t` and `d/dt Li_k(1 - e^{-t}) = Li_{k-1}(1 - e^{-t}) / (e^t - 1)`,
/// which costs O(k N²) instead of the O(N³) series products of a composition.
pub fn li_of_one_minus_exp_neg(k: u32, order: usize) -> TruncatedSeries {
    LI_U.get_or_compute(&k, order, || {
        Ok(match k {
            0 => {
                // Li_0(u) = u/(1-u) = e^t - 1
                let mut coeffs = vec![Rational::new(); order + 1];
                let mut fact = Integer::from(1);
                for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
                    fact *= m as u32;
                    *c = Rational::from((Integer::from(1), fact.clone()));
                }
                TruncatedSeries::from_coeffs(coeffs)
            }
            1 => TruncatedSeries::monomial(1, Rational::from(1), order),
            _ => li_of_one_minus_exp_neg(k - 1, order)
                .div_by_expm1()?
                .integrate(),
        })
    })
    .expect("Li_k(1 - e^{-t}) vanishes at t = 0")
}

/// Same series as [`li_of_one_minus_exp_neg`], by direct composition
/// `Li_k ∘ (1 - e^{-t})`. Slow; kept as an independent cross-check.
pub fn li_of_one_minus_exp_neg_by_composition(k: u32, order: usize) -> TruncatedSeries {
    polylog_series(k, order)
        .compose(&one_minus_exp_neg(order))
        .expect("1 - e^{-t} vanishes at t = 0")
}

/// The series `∏ Li_{k_j}(1 - e^{-t}) / (e^t - 1)` truncated at `order`.
///
/// Its coefficient `n` is `C_n / n!`.
pub fn akmt_series(index: &IndexVector, order: usize) -> Result<TruncatedSeries> {
    index.require_xi()?;
    let mut key = index.entries().to_vec();
    key.sort_unstable();
    AKMT.get_or_compute(&key, order, || {
        let mut prod = TruncatedSeries::one(order + 1);
        for &k in &key {
            prod = &prod * &li_of_one_minus_exp_neg(k, order + 1);
        }
        prod.div_by_expm1()
    })
}

/// `C_0, ..., C_count` defined by `∏ Li_{k_j}(1 - e^{-t}) / (e^t - 1) = Σ C_m t^m / m!`.
pub fn akmt_coefficients(index: &IndexVector, count: usize) -> Result<Vec<Rational>> {
    Ok(akmt_series(index, count)?.to_egf_coefficients())
}

/// `b_0, ..., b_{max_total}` with `b_M = (Σ_{m_1+...+m_r = M} ∏ m_j^{-k_j}) · M^{-k_{r+1}}`.
///
/// Entries below `r` are zero. The index must carry a tail.
pub fn lambda_coefficients(index: &IndexVector, max_total: usize) -> Result<Vec<Rational>> {
    let tail = index.require_lambda()?;
    let mut acc: Option<Vec<Rational>> = None;
    for &k in index.entries() {
        let factor = polylog_series(k, max_total).into_coeffs();
        acc = Some(match acc {
            None => factor,
            Some(prev) => (TruncatedSeries::from_coeffs(prev)
                * TruncatedSeries::from_coeffs(factor))
            .into_coeffs(),
        });
    }
    let mut b = acc.expect("lambda index has at least one entry");
    if tail > 0 {
        for (m, c) in b.iter_mut().enumerate().skip(1) {
            if c.cmp0().is_ne() {
                *c /= Integer::from(m).pow(tail);
            }
        }
    }
    Ok(b)
}

impl std::ops::Mul for TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: TruncatedSeries) -> TruncatedSeries {
        &self * &rhs
    }
}

/// `Λ_𝕜(1 - e^{-t})` as a series in `t`.
///
/// With tail 0 this is `∏ Li_{k_j}(1 - e^{-t})`; each unit of tail adds one
/// integration against `dt/(e^t - 1)` (the derivative rule for Λ).
pub fn lambda_of_one_minus_exp_neg(index: &IndexVector, order: usize) -> Result<TruncatedSeries> {
    let tail = index.require_lambda()?;
    let mut entries = index.entries().to_vec();
    entries.sort_unstable();
    let key = IndexVector::with_tail(entries.clone(), tail);
    LAMBDA_U.get_or_compute(&key, order, || {
        let mut phi = TruncatedSeries::one(order);
        for &k in &entries {
            phi = &phi * &li_of_one_minus_exp_neg(k, order);
        }
        for _ in 0..tail {
            phi = phi.div_by_expm1()?.integrate();
        }
        Ok(phi)
    })
}

/// Exact coefficient form of the derivative rule for Λ:
/// `M b_M(𝕜) = b_M(k_1..k_r, k_{r+1}-1)` when `k_{r+1} ≥ 2`, and
/// `M b_M(𝕜) = [z^M] ∏ Li_{k_j}(z)` when `k_{r+1} = 1`, for `r ≤ M ≤ max_total`.
pub fn check_lambda_derivative_rule(index: &IndexVector, max_total: usize) -> Result<bool> {
    let tail = index.require_lambda()?;
    if tail == 0 {
        return Err(Error::InvalidIndex(format!(
            "{index}: derivative rule needs a tail exponent ≥ 1"
        )));
    }
    let lhs = lambda_coefficients(index, max_total)?;
    // tail - 1 == 0 gives exactly the product coefficients.
    let rhs = lambda_coefficients(&index.replace_tail(tail - 1), max_total)?;
    let r = index.depth();
    Ok((r..=max_total).all(|m| Rational::from(&lhs[m] * Integer::from(m)) == rhs[m]))
}

#[cfg(test)]
mod tests {
    use super::super::bernoulli_numbers;
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn one_minus_exp_neg_examples() {
        let u = one_minus_exp_neg(3);
        assert_eq!(u.coeffs(), &[q(0, 1), q(1, 1), q(-1, 2), q(1, 6)]);
        assert!(one_minus_exp_neg(0).is_zero());
        assert_eq!(one_minus_exp_neg(4).coeff(4), &q(-1, 24));
    }

    #[test]
    fn polylog_series_examples() {
        assert_eq!(polylog_series(1, 3).coeffs(), &[q(0, 1), q(1, 1), q(1, 2), q(1, 3)]);
        assert_eq!(polylog_series(0, 3).coeffs(), &[q(0, 1), q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(polylog_series(2, 4).coeff(4), &q(1, 16));
    }

    #[test]
    fn bernoulli_series_matches_tangent_route() {
        let gf = bernoulli_series(30).to_egf_coefficients();
        assert_eq!(gf, bernoulli_numbers(30));
    }

    #[test]
    fn recursion_matches_composition() {
        for k in 0..=4 {
            assert_eq!(
                li_of_one_minus_exp_neg(k, 14),
                li_of_one_minus_exp_neg_by_composition(k, 14),
                "k = {k}"
            );
        }
    }

    #[test]
    fn akmt_examples() {
        let c = akmt_coefficients(&IndexVector::new(vec![1]), 4).unwrap();
        assert_eq!(c, vec![q(1, 1), q(-1, 2), q(1, 6), q(0, 1), q(-1, 30)]);
        let c11 = akmt_coefficients(&IndexVector::new(vec![1, 1]), 0).unwrap();
        assert_eq!(c11, vec![q(0, 1)]);
        let c2 = akmt_coefficients(&IndexVector::new(vec![2]), 1).unwrap();
        assert_eq!(c2[0], q(1, 1));
    }

    #[test]
    fn akmt_prefix_stable_under_order_growth() {
        let idx = IndexVector::new(vec![3, 1]);
        let short = akmt_coefficients(&idx, 10).unwrap();
        let long = akmt_coefficients(&idx, 25).unwrap();
        assert_eq!(&long[..=10], &short[..]);
    }

    #[test]
    fn akmt_single_index_is_poly_bernoulli() {
        // C^{(2)}_m, m = 0..6, from a CAS expansion of Li_2(1 - e^{-t}) / (e^t - 1)
        let c = akmt_coefficients(&IndexVector::new(vec![2]), 6).unwrap();
        let expect = [(1, 1), (-3, 4), (17, 36), (-5, 24), (7, 450), (7, 120), (-38, 2205)];
        let expect: Vec<Rational> = expect.iter().map(|&(n, d)| q(n, d)).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn akmt_rejects_zero_entry() {
        assert!(akmt_coefficients(&IndexVector::new(vec![2, 0]), 3).is_err());
    }

    fn brute_lambda(entries: &[u32], tail: u32, m_total: usize) -> Rational {
        fn rec(entries: &[u32], left: usize, acc: Rational, out: &mut Rational) {
            match entries {
                [] => {
                    if left == 0 {
                        *out += acc;
                    }
                }
                [k, rest @ ..] => {
                    for m in 1..=left {
                        let term = Rational::from(
                            &acc / Integer::from(m).pow(*k),
                        );
                        rec(rest, left - m, term, out);
                    }
                }
            }
        }
        let mut out = Rational::new();
        rec(entries, m_total, Rational::from(1), &mut out);
        if m_total > 0 {
            out /= Integer::from(m_total).pow(tail);
        }
        out
    }

    #[test]
    fn lambda_examples() {
        // r = 1 collapses to Li_{k1+k2}
        let b = lambda_coefficients(&IndexVector::with_tail(vec![2], 3), 12).unwrap();
        for (m, c) in b.iter().enumerate().skip(1) {
            assert_eq!(c, &Rational::from((Integer::from(1), Integer::from(m).pow(5))));
        }
        let b = lambda_coefficients(&IndexVector::with_tail(vec![1], 1), 6).unwrap();
        assert_eq!(b[4], q(1, 16));
        // (1,1;0): b_M = (2/M) H_{M-1}
        let b = lambda_coefficients(&IndexVector::with_tail(vec![1, 1], 0), 20).unwrap();
        assert_eq!(b[2], q(1, 1));
        assert_eq!(b[3], q(1, 1));
        for (m, c) in b.iter().enumerate().skip(2) {
            assert_eq!(c, &brute_lambda(&[1, 1], 0, m), "M = {m}");
            let mut h = Rational::new();
            for j in 1..m {
                h += Rational::from((1, j as i64));
            }
            assert_eq!(c, &(h * Rational::from((2, m as i64))));
        }
    }

    #[test]
    fn lambda_matches_brute_force() {
        for (entries, tail) in [(vec![2, 1, 3], 1u32), (vec![1, 1, 1], 0), (vec![3, 2], 2)] {
            let b = lambda_coefficients(&IndexVector::with_tail(entries.clone(), tail), 14).unwrap();
            for (m, c) in b.iter().enumerate() {
                assert_eq!(c, &brute_lambda(&entries, tail, m), "{entries:?} M = {m}");
            }
        }
    }

    #[test]
    fn lemma_examples() {
        assert!(check_lambda_derivative_rule(&IndexVector::with_tail(vec![2], 1), 30).unwrap());
        assert!(check_lambda_derivative_rule(&IndexVector::with_tail(vec![1, 1], 2), 30).unwrap());
        assert!(check_lambda_derivative_rule(&IndexVector::with_tail(vec![1, 1], 1), 30).unwrap());
        assert!(check_lambda_derivative_rule(&IndexVector::with_tail(vec![1, 1], 0), 30).is_err());
    }

    #[test]
    fn lambda_t_series_matches_composition() {
        for (entries, tail) in [(vec![1u32], 1u32), (vec![1, 1], 1), (vec![2, 1], 0), (vec![1], 2)] {
            let idx = IndexVector::with_tail(entries, tail);
            let order = 12;
            let b = lambda_coefficients(&idx, order).unwrap();
            let composed = TruncatedSeries::from_coeffs(b)
                .compose(&one_minus_exp_neg(order))
                .unwrap();
            assert_eq!(lambda_of_one_minus_exp_neg(&idx, order).unwrap(), composed, "{idx}");
        }
    }
}
