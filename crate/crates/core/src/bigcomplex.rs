//! Arbitrary-precision complex numbers built from a pair of MPFR floats.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Smallest precision accepted anywhere in the crate.
pub const MIN_PREC: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        Self::from_real(Float::with_val(prec, r))
    }

    pub fn from_i64(prec: u32, n: i64) -> Self {
        Self::from_real(Float::with_val(prec, n))
    }

    pub fn pi(prec: u32) -> Self {
        Self::from_real(Float::with_val(prec, Constant::Pi))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy rounded to a new precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -(Float::with_val(p, &self.im / &n))),
        }
    }

    pub fn mul_real(&self, r: &Float) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * r), im: Float::with_val(p, &self.im * r) }
    }

    pub fn mul_i64(&self, n: i64) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * n), im: Float::with_val(p, &self.im * n) }
    }

    pub fn add_real(&self, r: &Float) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re + r), im: self.im.clone() }
    }

    pub fn add_i64(&self, n: i64) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re + n), im: self.im.clone() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// Principal logarithm, with the branch cut on the negative real axis.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole("logarithm of zero".into()));
        }
        let p = self.prec();
        let r = self.abs().ln();
        Ok(Self { re: r, im: Float::with_val(p, self.im.atan2_ref(&self.re)) })
    }

    /// Principal power `self^w = exp(w ln self)`.
    pub fn pow(&self, w: &Self) -> Result<Self> {
        if self.is_zero() {
            if w.re.is_sign_positive() && !w.re.is_zero() {
                return Ok(Self::zero(self.prec()));
            }
            return Err(Error::Pole("zero raised to a non-positive power".into()));
        }
        Ok((w * &self.ln()?).exp())
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Self::one(p);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            k >>= 1;
        }
        acc
    }

    /// Principal square root (non-negative real part).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        let r = self.abs();
        let mut a = Float::with_val(p, &r + &self.re);
        a /= 2;
        let a = a.sqrt();
        let mut b = Float::with_val(p, &r - &self.re);
        b /= 2;
        let mut b = b.sqrt();
        if self.im.is_sign_negative() {
            b = -b;
        }
        Self { re: a, im: b }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Self { re: s * ch, im: c * sh }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Self { re: c * ch, im: -(s * sh) }
    }

    /// `|self - other| <= tol * max(|self|, |other|, floor)`.
    pub fn rel_close(&self, other: &Self, tol: f64) -> bool {
        self.rel_diff(other) <= tol
    }

    /// Relative difference scaled by the larger modulus (absolute when both are tiny).
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let d = (self - other).abs();
        let s = self.abs().max(&other.abs());
        if s.is_zero() {
            return d.to_f64();
        }
        Float::with_val(53, d / s).to_f64()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Parse complex literals such as `1.5`, `0.7i`, `-i`, `0.95+0.45i`, `2/5`.
    pub fn parse(prec: u32, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Invalid("empty complex literal".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::from_real(parse_real(prec, &s)?));
        };
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_txt {
            "" | "+" => Float::with_val(prec, 1),
            "-" => Float::with_val(prec, -1),
            t => parse_real(prec, t)?,
        };
        Ok(Self { re: parse_real(prec, re_txt)?, im })
    }

    /// Decimal rendering `a+bi` with `digits` significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        let re = float_to_decimal(&self.re, digits);
        let im = float_to_decimal(&self.im, digits);
        if self.im.is_zero() {
            return re;
        }
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

/// Parse a real literal, accepting decimal floats and `p/q` rationals.
pub fn parse_real(prec: u32, s: &str) -> Result<Float> {
    if s.contains('/') {
        let r: Rational = s
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rational literal `{s}`")))?;
        return Ok(Float::with_val(prec, &r));
    }
    let parsed =
        Float::parse(s).map_err(|_| Error::Invalid(format!("bad real literal `{s}`")))?;
    Ok(Float::with_val(prec, parsed))
}

pub fn float_to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

/// Digits of agreement between a value and a reference, `-log10(rel err)`.
pub fn digits_agreed(value: &BigComplex, reference: &BigComplex) -> f64 {
    let d = value.rel_diff(reference);
    if d == 0.0 {
        return f64::from(value.prec()) * std::f64::consts::LOG10_2;
    }
    -d.log10()
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (f64::from(self.prec()) * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        BigComplex { re: ac - bd, im: ad + bc }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let n = o.norm_sqr();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        let ad = Float::with_val(p, &self.re * &o.im);
        BigComplex { re: (ac + bd) / &n, im: (bc - ad) / &n }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, o: &BigComplex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, o: &BigComplex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, o: &BigComplex) {
        *self = &*self * o;
    }
}

/// `2^w` for complex `w`, used by the extrapolation tables.
pub fn two_pow(w: &BigComplex) -> BigComplex {
    let p = w.prec();
    let ln2 = Float::with_val(p, Constant::Log2);
    w.mul_real(&ln2).exp()
}

/// `x^n` for a float and small integer.
pub fn float_powi(x: &Float, n: i32) -> Float {
    Float::with_val(x.prec(), x.pow(n))
}
