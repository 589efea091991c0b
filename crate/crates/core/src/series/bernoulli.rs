//! Bernoulli numbers from the integer tangent-number recurrence.
//!
//! This route shares nothing with the series division in `coefficients`, so
//! the two can serve as oracles for each other.

use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Tangent numbers `T_1..=T_n` (Brent–Harvey in-place recurrence).
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u32 - k as u32));
            let b = Integer::from(&t[j] * (j as u32 - k as u32 + 2));
            t[j] = a + b;
        }
    }
    t
}

/// `B_0 ..= B_n` with the convention `B_1 = -1/2` (generating function `t/(e^t - 1)`).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    {
        let cached = cache().lock().expect("bernoulli cache poisoned");
        if cached.len() > n {
            return cached[..=n].to_vec();
        }
    }
    let half = n / 2 + 1;
    let tangents = tangent_numbers(half);
    let mut out = vec![Rational::new(); n.max(1) + 1];
    out[0] = Rational::from(1);
    out[1] = Rational::from((-1, 2));
    for (k, t) in tangents.iter().enumerate().take(half + 1).skip(1) {
        let idx = 2 * k;
        if idx > n {
            break;
        }
        // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&four_k - 1u32) * &four_k;
        let mut num = Integer::from(t * (2 * k as u32));
        if k % 2 == 0 {
            num = -num;
        }
        out[idx] = Rational::from((num, den));
    }
    out.truncate(n + 1);
    let mut cached = cache().lock().expect("bernoulli cache poisoned");
    if cached.len() < out.len() {
        *cached = out.clone();
    }
    out
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().unwrap_or_default()
}

/// `ζ(-n) = (-1)^n B_{n+1} / (n+1)` for `n ≥ 0` (so `ζ(0) = -1/2`).
pub fn zeta_nonpositive(n: usize) -> Rational {
    let b = bernoulli(n + 1);
    let v = b / Integer::from(n + 1);
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let b = bernoulli_numbers(12);
        let expect = [
            (1, 1),
            (-1, 2),
            (1, 6),
            (0, 1),
            (-1, 30),
            (0, 1),
            (1, 42),
            (0, 1),
            (-1, 30),
            (0, 1),
            (5, 66),
            (0, 1),
            (-691, 2730),
        ];
        for (n, &(p, q)) in expect.iter().enumerate() {
            assert_eq!(b[n], Rational::from((p, q)), "B_{n}");
        }
    }

    #[test]
    fn zeta_at_nonpositive_integers() {
        assert_eq!(zeta_nonpositive(0), Rational::from((-1, 2)));
        assert_eq!(zeta_nonpositive(1), Rational::from((-1, 12)));
        assert_eq!(zeta_nonpositive(2), Rational::new());
        assert_eq!(zeta_nonpositive(3), Rational::from((1, 120)));
    }

    #[test]
    fn cache_is_consistent() {
        let long = bernoulli_numbers(40);
        let short = bernoulli_numbers(20);
        assert_eq!(&long[..=20], &short[..]);
        assert_eq!(bernoulli(0), Rational::from(1));
    }
}
