//! One function per identity. Each evaluates its two sides through
//! different evaluators: ξ-type integrals or ζ values on one side, the
//! Mordell–Tornheim summation on the other. No side is obtained by
//! rewriting the other with the identity under test.

use rug::{Float, Integer, Rational};

use super::report::{CheckConfig, CheckReport};
use crate::error::{Error, Result};
use crate::mt::{
    double_zeta_closed_form, euler_double_zeta, mt_zeta_fast, xi_mt_continuation_probe, xi_mt_eval, xi_mt_g_eval,
    xi_mt_negative_integer, MtOptions,
};
use crate::numerics::{err_float, pochhammer, riemann_zeta, working_prec, Complex, ValueWithError};
use crate::series::IndexVector;

fn zeta(n: u32, cfg: &CheckConfig) -> Result<ValueWithError> {
    riemann_zeta(&Complex::from_i64(n as i64, cfg.prec), cfg.prec)
}

fn mt(exponents: &[u32], s: &Complex, cfg: &CheckConfig) -> Result<ValueWithError> {
    mt_zeta_fast(exponents, s, cfg.prec, &MtOptions::default())
}

fn mt_at_one(exponents: &[u32], cfg: &CheckConfig) -> Result<ValueWithError> {
    mt(exponents, &Complex::from_i64(1, cfg.prec), cfg)
}

fn binom(n: u32, k: u32) -> i64 {
    Integer::from(Integer::binomial_u(n, k)).to_i64().expect("binomial fits in i64")
}

fn factorial(n: u32) -> i64 {
    Integer::from(Integer::factorial(n)).to_i64().expect("factorial fits in i64")
}

fn zero(cfg: &CheckConfig) -> ValueWithError {
    ValueWithError::exact(Complex::zero(working_prec(cfg.prec)))
}

fn ones_then(prefix: &[u32], ones: usize, suffix: &[u32]) -> Vec<u32> {
    let mut v = prefix.to_vec();
    v.extend(std::iter::repeat_n(1, ones));
    v.extend_from_slice(suffix);
    v
}

fn twos(n: usize) -> Vec<u32> {
    vec![2; n]
}

/// Short label for `s`: `3`, `7/2` or `3+0.5i`.
pub fn format_s(s: &Complex) -> String {
    let real = |x: &Float| -> String {
        if x.is_integer() {
            format!("{}", x.to_f64() as i64)
        } else if Float::with_val(x.prec(), x * 2u32).is_integer() {
            format!("{}/2", (x.to_f64() * 2.0) as i64)
        } else {
            format!("{}", x.to_f64())
        }
    };
    if s.is_real() {
        real(&s.re)
    } else {
        let im = s.im.to_f64();
        let sign = if im < 0.0 { "-" } else { "+" };
        format!("{}{sign}{}i", real(&s.re), im.abs())
    }
}

fn param(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

fn list(values: &[u32]) -> String {
    format!("[{}]", values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

/// `Σ_j C(r-1,j)(-1)^j ζ(2)^{r-1-j} ξ_MT(2^j; s)` against
/// `Σ_j C(r-1,j)(s)_j ζ_MT,r(2^{r-1-j}, 1^j, 0; s+j)`, with `ξ_MT(∅; s) = ζ(s)`.
///
/// Left side: ξ integrals and Euler–Maclaurin ζ. Right side: MT summation.
pub fn check_mr1(r: usize, s: &Complex, cfg: &CheckConfig) -> Result<CheckReport> {
    if r == 0 {
        return Err(Error::Domain("r ≥ 1 required".into()));
    }
    let z2 = zeta(2, cfg)?;
    let mut lhs = zero(cfg);
    let mut rhs = zero(cfg);
    for j in 0..r {
        let c = binom((r - 1) as u32, j as u32);
        let xi = if j == 0 {
            riemann_zeta(s, cfg.prec)?
        } else {
            xi_mt_eval(&IndexVector::new(twos(j)), s, cfg.prec)?
        };
        let sign = if j % 2 == 0 { 1 } else { -1 };
        lhs = lhs.add(&z2.powi((r - 1 - j) as u32).mul(&xi).scale_i64(sign * c));

        let exps = ones_then(&twos(r - 1 - j), j, &[0]);
        let m = mt(&exps, &s.add_i64(j as i64), cfg)?;
        rhs = rhs.add(&pochhammer(s, j as u32, cfg.prec).mul(&m).scale_i64(c));
    }
    Ok(CheckReport::new("mr1", vec![param("r", r), param("s", format_s(s))], cfg, lhs, rhs))
}

/// `Σ_j C(r-1,j)(-1)^j ζ(2)^{r-1-j}/m! ζ_MT,j+m(2^j, 1^m; 1)` against
/// `Σ_j C(r-1,j)(m+1)_j ζ_MT,r(2^{r-1-j}, 1^j, 0; m+1+j)`, for `m ≥ 1`.
///
/// Both sides are MT values, but the left side has last exponent 1 and no
/// zero slot, the right side a zero slot and last exponent `m+1+j`; the
/// left side is never rewritten through ξ.
pub fn check_mr2(r: usize, m: usize, cfg: &CheckConfig) -> Result<CheckReport> {
    if r == 0 || m == 0 {
        return Err(Error::Domain(
            "r ≥ 1 and m ≥ 1 required (the j = m = 0 term has no MT value)".into(),
        ));
    }
    let z2 = zeta(2, cfg)?;
    let inv_fact = Complex::real(Float::with_val(working_prec(cfg.prec), Rational::from((1, factorial(m as u32)))));
    let mut lhs = zero(cfg);
    let mut rhs = zero(cfg);
    for j in 0..r {
        let c = binom((r - 1) as u32, j as u32);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let left = mt_at_one(&ones_then(&twos(j), m, &[]), cfg)?;
        lhs = lhs.add(&z2.powi((r - 1 - j) as u32).mul(&left).scale(&inv_fact).scale_i64(sign * c));

        let exps = ones_then(&twos(r - 1 - j), j, &[0]);
        let right = mt(&exps, &Complex::from_i64((m + 1 + j) as i64, cfg.prec), cfg)?;
        let poch = pochhammer(&Complex::from_i64((m + 1) as i64, cfg.prec), j as u32, cfg.prec);
        rhs = rhs.add(&poch.mul(&right).scale_i64(c));
    }
    Ok(CheckReport::new("mr2", vec![param("r", r), param("m", m)], cfg, lhs, rhs))
}

/// The depth-three instance written out with `ζ(2)^2 ζ(m+1)` in place of
/// the `j = 0` MT value:
/// `ζ(2)^2 ζ(m+1) - 2ζ(2)/m! ζ_MT,m+1(2,1^m;1) + 1/m! ζ_MT,m+2(2,2,1^m;1)
///  = ζ_MT,3(2,2,0;m+1) + 2(m+1) ζ_MT,3(2,1,0;m+2) + (m+1)(m+2) ζ_MT,3(1,1,0;m+3)`.
pub fn check_mr2_display(m: usize, cfg: &CheckConfig) -> Result<CheckReport> {
    if m == 0 {
        return Err(Error::Domain("m ≥ 1 required".into()));
    }
    let z2 = zeta(2, cfg)?;
    let inv_fact = Complex::real(Float::with_val(working_prec(cfg.prec), Rational::from((1, factorial(m as u32)))));
    let lhs = z2
        .powi(2)
        .mul(&zeta(m as u32 + 1, cfg)?)
        .sub(&z2.mul(&mt_at_one(&ones_then(&[2], m, &[]), cfg)?).scale(&inv_fact).scale_i64(2))
        .add(&mt_at_one(&ones_then(&[2, 2], m, &[]), cfg)?.scale(&inv_fact));
    let at = |n: usize| Complex::from_i64(n as i64, cfg.prec);
    let m1 = (m + 1) as i64;
    let rhs = mt(&[2, 2, 0], &at(m + 1), cfg)?
        .add(&mt(&[2, 1, 0], &at(m + 2), cfg)?.scale_i64(2 * m1))
        .add(&mt(&[1, 1, 0], &at(m + 3), cfg)?.scale_i64(m1 * (m1 + 1)));
    Ok(CheckReport::new("mr2-display", vec![param("m", m)], cfg, lhs, rhs))
}

/// `ζ_MT,2k+1(2, 1^{2k}; 1)` against
/// `(2k)!{ζ(2)ζ(2k+1) - ½(2k²+k-2)ζ(2k+3) + Σ_{n=1}^{k-1}(2k+1-2n)ζ(2n+1)ζ(2k+2-2n)}`.
pub fn check_mr3(k: usize, cfg: &CheckConfig) -> Result<CheckReport> {
    if k == 0 {
        return Err(Error::Domain("k ≥ 1 required".into()));
    }
    let lhs = mt_at_one(&ones_then(&[2], 2 * k, &[]), cfg)?;
    let k32 = k as u32;
    let mut braces = zeta(2, cfg)?.mul(&zeta(2 * k32 + 1, cfg)?);
    // ½(2k²+k-2) ζ(2k+3), kept exact by doubling everything else
    braces = braces.scale_i64(2).sub(&zeta(2 * k32 + 3, cfg)?.scale_i64((2 * k * k + k) as i64 - 2));
    for n in 1..k32 {
        let term = zeta(2 * n + 1, cfg)?.mul(&zeta(2 * k32 + 2 - 2 * n, cfg)?);
        braces = braces.add(&term.scale_i64(2 * (2 * k32 as i64 + 1 - 2 * n as i64)));
    }
    let half = Complex::real(Float::with_val(working_prec(cfg.prec), 0.5));
    let rhs = braces.scale(&half).scale_i64(factorial(2 * k32));
    Ok(CheckReport::new("mr3", vec![param("k", k)], cfg, lhs, rhs))
}

/// `ζ_MT,m+1(1^{m+1}; 1)` against `(m+1)! ζ(m+2)`.
pub fn check_mtval(m: usize, cfg: &CheckConfig) -> Result<CheckReport> {
    let lhs = mt_at_one(&vec![1; m + 1], cfg)?;
    let rhs = zeta(m as u32 + 2, cfg)?.scale_i64(factorial(m as u32 + 1));
    Ok(CheckReport::new("mtval", vec![param("m", m)], cfg, lhs, rhs))
}

/// `Σ_{J ⊂ {1..N-1}} (-1)^{|J|} ∏_{j ∉ J} ζ_MT,r_j(1^{r_j}; 1) ξ_MT,|J|({1_{r_j+1}}_{j∈J}; s)`
/// against
/// `Σ_i (s)_{|i|} ∏ C(r_j,i_j)(r_j-i_j)! ζ_MT,N(r_1-i_1+1, ..., r_{N-1}-i_{N-1}+1, 0; s+|i|)`.
///
/// The product factors are evaluated, not replaced by their closed form.
pub fn check_mr4(n: usize, rvec: &[u32], s: &Complex, cfg: &CheckConfig) -> Result<CheckReport> {
    if n == 0 || rvec.len() != n - 1 {
        return Err(Error::Domain(format!("need N ≥ 1 and N-1 = {} entries in r", rvec.len())));
    }
    if rvec.contains(&0) {
        return Err(Error::Domain("entries of r must be ≥ 1".into()));
    }
    let all_ones: Vec<ValueWithError> = rvec.iter().map(|&r| mt_at_one(&vec![1; r as usize], cfg)).collect::<Result<_>>()?;

    let mut lhs = zero(cfg);
    for mask in 0u32..(1 << rvec.len()) {
        let mut product = ValueWithError::exact(Complex::one(working_prec(cfg.prec)));
        let mut indices = Vec::new();
        for (j, &r) in rvec.iter().enumerate() {
            if mask & (1 << j) != 0 {
                indices.push(IndexVector::ones_with_unit_tail(r as usize));
            } else {
                product = product.mul(&all_ones[j]);
            }
        }
        let xi = xi_mt_g_eval(&indices, s, cfg.prec)?;
        let sign = if indices.len() % 2 == 0 { 1 } else { -1 };
        lhs = lhs.add(&product.mul(&xi).scale_i64(sign));
    }

    let mut rhs = zero(cfg);
    let mut choice = vec![0u32; rvec.len()];
    loop {
        let total: u32 = choice.iter().sum();
        let mut coeff = 1i64;
        let mut exps = Vec::with_capacity(n);
        for (&r, &i) in rvec.iter().zip(&choice) {
            coeff *= binom(r, i) * factorial(r - i);
            exps.push(r - i + 1);
        }
        exps.push(0);
        let m = mt(&exps, &s.add_i64(total as i64), cfg)?;
        rhs = rhs.add(&pochhammer(s, total, cfg.prec).mul(&m).scale_i64(coeff));
        // next composition in the box ∏ [0, r_l]
        let mut pos = 0;
        while pos < choice.len() && choice[pos] == rvec[pos] {
            choice[pos] = 0;
            pos += 1;
        }
        if pos == choice.len() {
            break;
        }
        choice[pos] += 1;
    }
    Ok(CheckReport::new(
        "mr4",
        vec![param("N", n), param("r", list(rvec)), param("s", format_s(s))],
        cfg,
        lhs,
        rhs,
    ))
}

/// `Σ_j r_j! ξ_MT,g-1({1_{r_i+1}}_{i≠j}; r_j+1)` against `∏ ζ_MT,r_j(1^{r_j}; 1)`.
pub fn check_lll(rvec: &[u32], cfg: &CheckConfig) -> Result<CheckReport> {
    if rvec.is_empty() || rvec.contains(&0) {
        return Err(Error::Domain("need g ≥ 1 entries, each ≥ 1".into()));
    }
    let mut lhs = zero(cfg);
    for (j, &rj) in rvec.iter().enumerate() {
        let others: Vec<IndexVector> = rvec
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &r)| IndexVector::ones_with_unit_tail(r as usize))
            .collect();
        let xi = xi_mt_g_eval(&others, &Complex::from_i64(rj as i64 + 1, cfg.prec), cfg.prec)?;
        lhs = lhs.add(&xi.scale_i64(factorial(rj)));
    }
    let mut rhs = ValueWithError::exact(Complex::one(working_prec(cfg.prec)));
    for &r in rvec {
        rhs = rhs.mul(&mt_at_one(&vec![1; r as usize], cfg)?);
    }
    Ok(CheckReport::new("lll", vec![param("g", rvec.len()), param("r", list(rvec))], cfg, lhs, rhs))
}

/// `ζ(k+1)ζ(r+1)` against
/// `Σ_{m=0}^{k} C(r+m,r) ζ(k+1-m, r+1+m) + Σ_{n=0}^{r} C(k+n,k) ζ(r+1-n, k+1+n)`,
/// double zeta values with the first argument on the smaller index.
pub fn check_euler_decomposition(r: u32, k: u32, cfg: &CheckConfig) -> Result<CheckReport> {
    if r == 0 || k == 0 {
        return Err(Error::Domain("r, k ≥ 1 required".into()));
    }
    let lhs = zeta(k + 1, cfg)?.mul(&zeta(r + 1, cfg)?);
    let mut rhs = zero(cfg);
    for m in 0..=k {
        rhs = rhs.add(&euler_double_zeta(k + 1 - m, r + 1 + m, cfg.prec)?.scale_i64(binom(r + m, r)));
    }
    for n in 0..=r {
        rhs = rhs.add(&euler_double_zeta(r + 1 - n, k + 1 + n, cfg.prec)?.scale_i64(binom(k + n, k)));
    }
    Ok(CheckReport::new("euler", vec![param("r", r), param("k", k)], cfg, lhs, rhs))
}

/// [`euler_double_zeta`] against [`double_zeta_closed_form`] at odd weight.
pub fn check_double_zeta_closed_form(a: u32, b: u32, cfg: &CheckConfig) -> Result<CheckReport> {
    let rhs = double_zeta_closed_form(a, b, cfg.prec)?;
    let lhs = euler_double_zeta(a, b, cfg.prec)?;
    Ok(CheckReport::new("double-zeta", vec![param("a", a), param("b", b)], cfg, lhs, rhs))
}

/// Probe steps used by [`check_ac1`].
pub const PROBE_STEPS: [&str; 3] = ["1e-4", "1e-5", "1e-6"];

/// Continuation probes `ξ_MT(𝕜; -m+h)` at `h = 10^-4, 10^-5, 10^-6`
/// against the exact `(-1)^m C_m`.
///
/// The left side is the quadratic extrapolation of the probes to `h = 0`;
/// its error estimate is the gap to the linear extrapolation from the two
/// smallest steps. A side condition requires the probe errors to shrink
/// linearly in `h`: successive error ratios in `[5, 20]` (factor 2 of 10).
pub fn check_ac1(index: &IndexVector, m: u32, cfg: &CheckConfig) -> Result<CheckReport> {
    let wp = working_prec(cfg.prec);
    let exact = xi_mt_negative_integer(index, m as usize)?;
    let exact_f = Float::with_val(wp, &exact);
    let hs: Vec<Float> = PROBE_STEPS
        .iter()
        .map(|h| Float::with_val(wp, Float::parse(h).expect("literal")))
        .collect();
    let probes: Vec<Float> = hs
        .iter()
        .map(|h| xi_mt_continuation_probe(index, m, h, cfg.prec).map(|v| v.estimate.re))
        .collect::<Result<_>>()?;

    // Neville extrapolation to 0
    let lin = |i: usize, j: usize| -> Float {
        // p_i + (p_j - p_i) · h_i/(h_i - h_j)
        let w = Float::with_val(wp, &hs[i] / Float::with_val(wp, &hs[i] - &hs[j]));
        Float::with_val(wp, &probes[i] + Float::with_val(wp, &probes[j] - &probes[i]) * w)
    };
    let l01 = lin(0, 1);
    let l12 = lin(1, 2);
    let w = Float::with_val(wp, &hs[0] / Float::with_val(wp, &hs[0] - &hs[2]));
    let quad = Float::with_val(wp, &l01 + Float::with_val(wp, &l12 - &l01) * w);
    let est_err = err_float(&Float::with_val(wp, &quad - &l12));

    let lhs = ValueWithError::new(Complex::real(quad), est_err, false);
    let rhs = ValueWithError::exact(Complex::real(exact_f.clone()));
    let errors: Vec<f64> = probes.iter().map(|p| Float::with_val(wp, p - &exact_f).to_f64()).collect();
    let mut report = CheckReport::new(
        "ac1",
        vec![param("k", list(index.entries())), param("m", m)],
        cfg,
        lhs,
        rhs,
    );
    for i in 0..2 {
        let ratio = errors[i] / errors[i + 1];
        report = report.with_side_condition(
            &format!("linear_ratio_{}_{}", PROBE_STEPS[i], PROBE_STEPS[i + 1]),
            format!("{ratio:.6}"),
            (5.0..=20.0).contains(&ratio),
        );
    }
    Ok(report)
}
