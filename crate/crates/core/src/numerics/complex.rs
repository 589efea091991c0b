use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

/// Complex number over MPFR floats. Both parts carry the same precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::real(Float::with_val(prec, v))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Self::real(Float::with_val(prec, v))
    }

    pub fn from_rational(re: &Rational, im: &Rational, prec: u32) -> Self {
        Self::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Same value rounded to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Real and an integer (any sign).
    pub fn as_integer(&self) -> Option<i64> {
        if self.is_real() && self.re.is_integer() {
            self.re.to_f64().is_finite().then(|| self.re.to_f64() as i64)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn add_real(&self, x: &Float) -> Self {
        Self::new(Float::with_val(self.prec(), &self.re + x), self.im.clone())
    }

    pub fn add_i64(&self, x: i64) -> Self {
        Self::new(Float::with_val(self.prec(), &self.re + x), self.im.clone())
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn mul_i64(&self, x: i64) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn div_real(&self, x: &Float) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re / x), Float::with_val(p, &self.im / x))
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        if self.is_real() {
            return Self::real(Float::with_val(p, self.re.recip_ref()));
        }
        let den = Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref());
        Self::new(Float::with_val(p, &self.re / &den), -Float::with_val(p, &self.im / &den))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let mag = Float::with_val(p, self.re.exp_ref());
        if self.is_real() {
            return Self::real(mag);
        }
        let (sin, cos) = self.im.clone().sin_cos(Float::new(p));
        Self::new(mag.clone() * cos, mag * sin)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        if self.is_real() && self.re.is_sign_positive() {
            return Self::real(Float::with_val(p, self.re.ln_ref()));
        }
        let modulus = self.abs().ln();
        let arg = Float::with_val(p, self.im.atan2_ref(&self.re));
        Self::new(modulus, arg)
    }

    /// `x^self` for real `x > 0` (principal branch).
    pub fn real_base_pow(&self, x: &Float) -> Self {
        let p = self.prec();
        if self.is_real() {
            return Self::real(Float::with_val(p, x.pow(&self.re)));
        }
        let lx = Float::with_val(p, x.ln_ref());
        let mag = Float::with_val(p, x.pow(&self.re));
        let (sin, cos) = (lx * &self.im).sin_cos(Float::new(p));
        Self::new(mag.clone() * cos, mag * sin)
    }

    /// `self^n` for an integer exponent (repeated squaring).
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut base = self.clone();
        let mut acc = Self::one(p);
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Parses `re`, `im i`, or `re±im i`, where each part is an integer,
    /// a fraction `p/q` or a decimal. Fractions are rounded once at `prec`.
    pub fn parse(text: &str, prec: u32) -> Option<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return None;
        }
        let Some(body) = t.strip_suffix('i') else {
            return Some(Complex::real(parse_real(&t, prec)?));
        };
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(j) => (parse_real(&body[..j], prec)?, &body[j..]),
            None => (Float::new(prec), body),
        };
        let im = match im {
            "" | "+" => Float::with_val(prec, 1),
            "-" => Float::with_val(prec, -1),
            other => parse_real(other, prec)?,
        };
        Some(Complex::new(re, im))
    }

    /// Rounded to `digits` significant decimal digits per component.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = decimal(&self.re, digits);
        if self.is_real() {
            return re;
        }
        let im = decimal(&self.im, digits);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

fn parse_real(text: &str, prec: u32) -> Option<Float> {
    if text.contains('/') {
        let q: Rational = text.strip_prefix('+').unwrap_or(text).parse().ok()?;
        return Some(Float::with_val(prec, q));
    }
    Float::parse(text).ok().map(|v| Float::with_val(prec, v))
}

/// Decimal rendering with `digits` significant digits, scientific notation.
pub fn decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl Add for &Complex {
    type Output = Complex;

    fn add(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re + &rhs.re), Float::with_val(p, &self.im + &rhs.im))
    }
}

impl Sub for &Complex {
    type Output = Complex;

    fn sub(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re - &rhs.re), Float::with_val(p, &self.im - &rhs.im))
    }
}

impl Mul for &Complex {
    type Output = Complex;

    fn mul(self, rhs: &Complex) -> Complex {
        let p = self.prec();
        if rhs.is_real() {
            return self.mul_real(&rhs.re);
        }
        if self.is_real() {
            return rhs.with_prec(p).mul_real(&self.re);
        }
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        Complex::new(ac - bd, ad + bc)
    }
}

impl Div for &Complex {
    type Output = Complex;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Complex) -> Complex {
        if rhs.is_real() {
            return self.div_real(&rhs.re);
        }
        self * &rhs.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;

    fn neg(self) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2) as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let p = 128;
        let a = Complex::new(Float::with_val(p, 1.5), Float::with_val(p, -2));
        let b = Complex::new(Float::with_val(p, 0.25), Float::with_val(p, 3));
        let q = &(&a * &b) / &b;
        assert!((&q - &a).abs() < 1e-35);
        let r = &a * &a.recip();
        assert!((&r - &Complex::one(p)).abs() < 1e-35);
        assert!((&a.powi(5) - &(&(&a * &a) * &(&(&a * &a) * &a))).abs() < 1e-30);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let p = 200;
        let z = Complex::new(Float::with_val(p, -0.7), Float::with_val(p, 2.9));
        let back = z.exp().ln();
        assert!((&back - &z).abs() < 1e-55);
        // e^{iπ} = -1
        let ipi = Complex::new(Float::new(p), pi(p));
        assert!((&ipi.exp() - &Complex::from_i64(-1, p)).abs() < 1e-55);
    }

    #[test]
    fn real_base_power() {
        let p = 160;
        let s = Complex::new(Float::with_val(p, 2), Float::with_val(p, 1));
        let x = Float::with_val(p, 3);
        // 3^{2+i} = 9 (cos ln3 + i sin ln3)
        let ln3 = Float::with_val(p, x.ln_ref());
        let expect = Complex::new(Float::with_val(p, ln3.cos_ref()) * 9, ln3.sin() * 9);
        assert!((&s.real_base_pow(&x) - &expect).abs() < 1e-40);
    }

    #[test]
    fn decimal_rendering() {
        let p = 64;
        let z = Complex::new(Float::with_val(p, 3), Float::with_val(p, -0.5));
        assert_eq!(z.to_decimal(3), "3.00-5.00e-1i");
        assert_eq!(Complex::zero(p).to_decimal(5), "0");
    }

    #[test]
    fn parse_forms() {
        let c = |t: &str| Complex::parse(t, 64).unwrap();
        assert_eq!(c("7/2").re, 3.5);
        assert!(c("7/2").is_real());
        let z = c("3+0.5i");
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (3.0, 0.5));
        let z = c("-1/2-3i");
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (-0.5, -3.0));
        let z = c("2.5e-1-i");
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.25, -1.0));
        let z = c("i");
        assert_eq!((z.re.to_f64(), z.im.to_f64()), (0.0, 1.0));
        assert_eq!(c("1e-3").re.to_f64(), 1e-3);
        for bad in ["", "abc", "1/0x", "3+"] {
            assert!(Complex::parse(bad, 64).is_none(), "{bad}");
        }
    }
}
