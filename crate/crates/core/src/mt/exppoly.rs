//! Functions `E(t) = Σ_{n=0}^{N} e^{-nt} P_n(t)` with polynomial `P_n`.
//!
//! `Li_k(1 - e^{-t})` and `Λ_𝕜(1 - e^{-t})` have this shape: start from
//! `Li_1 = t` and repeatedly apply `f ↦ c - ∫_t^∞ f(τ)/(e^τ - 1) dτ`. Each
//! step is exact on the representation apart from dropping `n > N`, which
//! costs about `e^{-N t}` for `t ≥ 1`.

use rug::Float;

#[derive(Clone, Debug)]
pub struct ExpPoly {
    // terms[n][i] multiplies e^{-nt} t^i
    terms: Vec<Vec<Float>>,
    prec: u32,
}

impl ExpPoly {
    pub fn zero(max_rate: usize, prec: u32) -> Self {
        Self {
            terms: vec![Vec::new(); max_rate + 1],
            prec,
        }
    }

    /// The polynomial `t` (no exponential factor).
    pub fn identity(max_rate: usize, prec: u32) -> Self {
        let mut e = Self::zero(max_rate, prec);
        e.terms[0] = vec![Float::new(prec), Float::with_val(prec, 1)];
        e
    }

    pub fn constant(c: &Float, max_rate: usize, prec: u32) -> Self {
        let mut e = Self::zero(max_rate, prec);
        e.terms[0] = vec![Float::with_val(prec, c)];
        e
    }

    pub fn max_rate(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|p| p.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn add_constant(&mut self, c: &Float) {
        let p = &mut self.terms[0];
        if p.is_empty() {
            p.push(Float::new(self.prec));
        }
        p[0] += c;
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|p| p.iter().map(|c| Float::with_val(self.prec, -c)).collect())
            .collect();
        Self { terms, prec: self.prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n_max = self.max_rate().min(other.max_rate());
        let mut out = Self::zero(n_max, self.prec);
        for (n, p) in self.terms.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            for (m, q) in other.terms.iter().enumerate() {
                if n + m > n_max {
                    break;
                }
                if q.is_empty() {
                    continue;
                }
                let dst = &mut out.terms[n + m];
                if dst.len() < p.len() + q.len() - 1 {
                    dst.resize(p.len() + q.len() - 1, Float::new(self.prec));
                }
                for (i, a) in p.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in q.iter().enumerate() {
                        dst[i + j] += Float::with_val(self.prec, a * b);
                    }
                }
            }
        }
        out
    }

    /// Product with `1/(e^t - 1) = Σ_{m ≥ 1} e^{-mt}`.
    pub fn bose(&self) -> Self {
        let mut out = Self::zero(self.max_rate(), self.prec);
        let mut running: Vec<Float> = Vec::new();
        for n in 1..=self.max_rate() {
            let prev = &self.terms[n - 1];
            if running.len() < prev.len() {
                running.resize(prev.len(), Float::new(self.prec));
            }
            for (i, c) in prev.iter().enumerate() {
                running[i] += c;
            }
            out.terms[n] = running.clone();
        }
        out
    }

    /// `∫_t^∞ E(τ) dτ`, for `E` without a non-decaying part, using
    /// `∫_t^∞ τ^b e^{-nτ} dτ = e^{-nt} Σ_{i ≤ b} (b!/i!) t^i / n^{b-i+1}`.
    pub fn tail_integral(&self) -> Self {
        assert!(
            self.terms[0].iter().all(|c| c.is_zero()),
            "tail integral of a non-decaying term"
        );
        let mut out = Self::zero(self.max_rate(), self.prec);
        for (n, p) in self.terms.iter().enumerate().skip(1) {
            if p.is_empty() {
                continue;
            }
            let inv_n = Float::with_val(self.prec, Float::with_val(self.prec, n).recip_ref());
            let mut dst = vec![Float::new(self.prec); p.len()];
            for (b, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // i = b: c/n; each lower i multiplies by (i+1)/n
                let mut coeff = Float::with_val(self.prec, c * &inv_n);
                for i in (0..=b).rev() {
                    dst[i] += &coeff;
                    if i > 0 {
                        coeff *= i as u32;
                        coeff *= &inv_n;
                    }
                }
            }
            out.terms[n] = dst;
        }
        out
    }

    pub fn eval(&self, t: &Float) -> Float {
        let prec = self.prec;
        let x = Float::with_val(prec, -t).exp();
        let mut acc = Float::new(prec);
        for p in self.terms.iter().rev() {
            acc *= &x;
            let mut poly = Float::new(prec);
            for c in p.iter().rev() {
                poly *= t;
                poly += c;
            }
            acc += poly;
        }
        acc
    }
}
