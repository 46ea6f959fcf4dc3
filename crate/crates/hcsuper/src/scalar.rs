//! Complex scalars with configurable binary precision.
//!
//! A [`Scalar`] is a pair of MPFR floats. Every arithmetic result is rounded to the
//! larger precision of its operands, so a computation seeded from a [`Precision`]
//! stays at that precision throughout.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Float, Integer, Rational};
use thiserror::Error;

/// Default significand width.
pub const DEFAULT_BITS: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("invalid precision: {0}")]
    Precision(String),
}

/// Working precision together with the comparison tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Precision {
    pub bits: u32,
    pub epsilon: f64,
}

impl Precision {
    pub fn new(bits: u32, epsilon: f64) -> Result<Self, ScalarError> {
        if bits < 16 {
            return Err(ScalarError::Precision(format!("{bits} bits is too small")));
        }
        if epsilon.is_nan() || epsilon <= 0.0 || !epsilon.is_finite() {
            return Err(ScalarError::Precision(format!("epsilon {epsilon} must be positive")));
        }
        let floor = 2f64.powi(8 - bits as i32);
        if epsilon < floor {
            return Err(ScalarError::Precision(format!(
                "epsilon {epsilon:e} is below 2^(8-{bits})"
            )));
        }
        Ok(Self { bits, epsilon })
    }

    /// Precision with `bits` and the tolerance `2^(-bits/2)`.
    pub fn with_bits(bits: u32) -> Result<Self, ScalarError> {
        Self::new(bits, 2f64.powi(-(bits as i32) / 2))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self { bits: DEFAULT_BITS, epsilon: 2f64.powi(-128) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scalar {
    re: Float,
    im: Float,
}

impl Scalar {
    pub fn zero(bits: u32) -> Self {
        Self { re: Float::new(bits), im: Float::new(bits) }
    }

    pub fn one(bits: u32) -> Self {
        Self::from_int(1, bits)
    }

    pub fn i(bits: u32) -> Self {
        Self { re: Float::new(bits), im: Float::with_val(bits, 1) }
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        Self { re: Float::with_val(bits, v), im: Float::new(bits) }
    }

    pub fn from_f64(v: f64, bits: u32) -> Self {
        Self { re: Float::with_val(bits, v), im: Float::new(bits) }
    }

    pub fn from_complex_f64(re: f64, im: f64, bits: u32) -> Self {
        Self { re: Float::with_val(bits, re), im: Float::with_val(bits, im) }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        Self { re: Float::with_val(bits, r), im: Float::new(bits) }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Same value rounded to `bits`.
    pub fn with_prec(&self, bits: u32) -> Self {
        Self { re: Float::with_val(bits, &self.re), im: Float::with_val(bits, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        if self.im.is_zero() {
            return Float::with_val(p, self.re.square_ref());
        }
        Float::with_val(p, self.re.mul_add_mul_ref(&self.re, &self.im, &self.im))
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        if self.im.is_zero() {
            return Float::with_val(p, self.re.abs_ref());
        }
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        if self.im.is_zero() {
            return self.re.to_f64().abs();
        }
        self.abs().to_f64()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec()) / self
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn mul_i(&self) -> Self {
        Self { re: Float::with_val(self.im.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power, negative exponents through the reciprocal.
    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.prec());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Principal square root: `Re r > 0`, or `Re r = 0` and `Im r >= 0`.
    pub fn sqrt_principal(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        if self.im.is_zero() {
            return if self.re.is_sign_negative() {
                Self { re: Float::new(p), im: Float::with_val(p, -&self.re).sqrt() }
            } else {
                Self { re: Float::with_val(p, self.re.sqrt_ref()), im: Float::new(p) }
            };
        }
        let r = self.abs();
        if !self.re.is_sign_negative() {
            let re = Float::with_val(p, Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let im = Float::with_val(p, &self.im / Float::with_val(p, &re * 2u32));
            Self { re, im }
        } else {
            let mut im = Float::with_val(p, Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            if self.im.is_sign_negative() {
                im = -im;
            }
            let re = Float::with_val(p, &self.im / Float::with_val(p, &im * 2u32));
            Self { re, im }
        }
    }

    /// Decimal strings `(re, im)` that parse back to the identical value.
    pub fn to_strings(&self) -> [String; 2] {
        [self.re.to_string_radix(10, None), self.im.to_string_radix(10, None)]
    }

    pub fn from_strings(re: &str, im: &str, bits: u32) -> Result<Self, ScalarError> {
        let parse = |s: &str| {
            Float::parse(s)
                .map(|v| Float::with_val(bits, v))
                .map_err(|_| ScalarError::Parse(s.to_string()))
        };
        Ok(Self { re: parse(re)?, im: parse(im)? })
    }

    /// Short human-readable form.
    pub fn display(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        if self.im.is_zero() {
            return re;
        }
        let im = self.im.to_string_radix(10, Some(digits));
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }

    /// Like `display`, but parts within `eps` of an integer print as that integer.
    pub fn display_snapped(&self, digits: usize, eps: f64) -> String {
        let part = |x: &Float| {
            let r = Float::with_val(x.prec(), x.round_ref());
            let gap = Float::with_val(x.prec(), x - &r).abs().to_f64();
            if gap <= eps * (1.0 + x.to_f64().abs()) {
                r.to_integer().map(|z| z.to_string()).unwrap_or_else(|| x.to_string_radix(10, Some(digits)))
            } else {
                x.to_string_radix(10, Some(digits))
            }
        };
        let re = part(&self.re);
        let im = part(&self.im);
        match im.as_str() {
            "0" => re,
            _ if im.starts_with('-') => format!("{re}{im}i"),
            _ => format!("{re}+{im}i"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(20))
    }
}

/// `|a - b| <= eps * (1 + max(|a|, |b|))`.
pub fn approx_eq(a: &Scalar, b: &Scalar, prec: &Precision) -> bool {
    let d = (a - b).abs_f64();
    let scale = a.abs_f64().max(b.abs_f64());
    d <= prec.epsilon * (1.0 + scale)
}

/// `|a| <= eps * scale`, the zero test used for quantities with a known magnitude.
pub fn negligible(a: &Scalar, scale: f64, prec: &Precision) -> bool {
    a.abs_f64() <= prec.epsilon * scale
}

pub fn sqrt_principal(s: &Scalar) -> Scalar {
    s.sqrt_principal()
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    let p = a.prec().max(b.prec());
    Scalar { re: Float::with_val(p, &a.re + &b.re), im: Float::with_val(p, &a.im + &b.im) }
}

fn sub_ref(a: &Scalar, b: &Scalar) -> Scalar {
    let p = a.prec().max(b.prec());
    Scalar { re: Float::with_val(p, &a.re - &b.re), im: Float::with_val(p, &a.im - &b.im) }
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    let p = a.prec().max(b.prec());
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => Scalar { re: Float::with_val(p, &a.re * &b.re), im: Float::new(p) },
        (true, false) => Scalar {
            re: Float::with_val(p, &a.re * &b.re),
            im: Float::with_val(p, &a.re * &b.im),
        },
        (false, true) => Scalar {
            re: Float::with_val(p, &a.re * &b.re),
            im: Float::with_val(p, &a.im * &b.re),
        },
        (false, false) => Scalar {
            re: Float::with_val(p, a.re.mul_sub_mul_ref(&b.re, &a.im, &b.im)),
            im: Float::with_val(p, a.re.mul_add_mul_ref(&b.im, &a.im, &b.re)),
        },
    }
}

fn div_ref(a: &Scalar, b: &Scalar) -> Scalar {
    let p = a.prec().max(b.prec());
    if b.im.is_zero() {
        return Scalar { re: Float::with_val(p, &a.re / &b.re), im: Float::with_val(p, &a.im / &b.re) };
    }
    let n = b.norm_sqr();
    let num = mul_ref(a, &b.conj());
    Scalar { re: Float::with_val(p, &num.re / &n), im: Float::with_val(p, &num.im / &n) }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $f(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $f(&self, o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $f(self, &o)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if self.prec() >= o.prec() {
            self.re += &o.re;
            self.im += &o.im;
        } else {
            *self = add_ref(self, o);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if self.prec() >= o.prec() {
            self.re -= &o.re;
            self.im -= &o.im;
        } else {
            *self = sub_ref(self, o);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = mul_ref(self, o);
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mant, exp) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    if mant.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match mant.find('.') {
        Some(k) => (&mant[..k], &mant[k + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num = Integer::from_str_radix(&digits, 10).ok()?;
    let shift = exp - frac_part.len() as i32;
    let ten = |k: u32| Integer::from(Integer::u_pow_u(10, k));
    let r = if shift >= 0 {
        Rational::from(num * ten(shift as u32))
    } else {
        Rational::from((num, ten((-shift) as u32)))
    };
    Some(r)
}

fn parse_real(text: &str) -> Option<Rational> {
    let (neg, body) = match text.as_bytes().first()? {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let r = match body.split_once('/') {
        Some((p, q)) => {
            let p = parse_decimal(p)?;
            let q = parse_decimal(q)?;
            if q == 0 {
                return None;
            }
            p / q
        }
        None => parse_decimal(body)?,
    };
    Some(if neg { -r } else { r })
}

/// Parses `p/q`, decimals (with optional exponent), `i`, and sums such as `3/2-1/4i`.
pub fn parse_scalar(text: &str, bits: u32) -> Result<Scalar, ScalarError> {
    let err = || ScalarError::Parse(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for k in 1..bytes.len() {
        let c = bytes[k];
        let prev = bytes[k - 1];
        if (c == b'+' || c == b'-') && !matches!(prev, b'e' | b'E' | b'/' | b'+' | b'-') {
            terms.push(&s[start..k]);
            start = k;
        }
    }
    terms.push(&s[start..]);
    let mut re = Rational::new();
    let mut im = Rational::new();
    for t in terms {
        if let Some(coef) = t.strip_suffix('i') {
            let v = match coef {
                "" | "+" => Rational::from(1),
                "-" => Rational::from(-1),
                c => parse_real(c.strip_suffix('*').unwrap_or(c)).ok_or_else(err)?,
            };
            im += v;
        } else {
            re += parse_real(t).ok_or_else(err)?;
        }
    }
    Ok(Scalar { re: Float::with_val(bits, &re), im: Float::with_val(bits, &im) })
}

/// Total order on magnitudes, used for pivot selection.
pub fn cmp_abs(a: &Scalar, b: &Scalar) -> Ordering {
    a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap_or(Ordering::Equal)
}
