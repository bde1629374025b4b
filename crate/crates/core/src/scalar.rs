//! Scalar backends.
//!
//! Three implementations of [`Scalar`] are provided:
//!
//! * [`Rational`]: exact arbitrary-size rationals. Every operation is exact.
//! * [`Float`]: MPFR floats whose precision (in significand bits) is carried
//!   by the value and chosen once per computation through the context.
//! * `f64`: the 53-bit hardware float, used on the fast paths.
//!
//! [`RealScalar`] adds the transcendental functions needed by quadrature,
//! trigonometric constructions and catalog functions; the rational backend
//! does not implement it.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
pub use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Default significand precision of the extended float backend.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Ring/field operations shared by every backend.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    /// Construction context: `()` for exact and hardware backends, the
    /// precision in bits for MPFR floats.
    type Ctx: Clone + Debug + PartialEq + Send + Sync;

    /// Whether arithmetic in this backend is exact.
    const EXACT: bool;

    fn ctx(&self) -> Self::Ctx;
    fn from_i64(v: i64, ctx: &Self::Ctx) -> Self;
    /// Exact conversion where the backend allows it (rationals convert the
    /// binary value of `v` exactly).
    fn from_f64(v: f64, ctx: &Self::Ctx) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Decimal (or, for rationals, `p/q`) text that [`Scalar::parse`] reads back.
    fn to_decimal(&self) -> String;
    fn parse(s: &str, ctx: &Self::Ctx) -> Result<Self>;
    fn backend_name() -> &'static str;
    /// Exact rational value of `self` (finite values only).
    fn to_rational(&self) -> Rational;
    fn from_rational(q: &Rational, ctx: &Self::Ctx) -> Self;

    fn from_usize(v: usize, ctx: &Self::Ctx) -> Self {
        Self::from_i64(v as i64, ctx)
    }

    fn from_ratio(num: i64, den: i64, ctx: &Self::Ctx) -> Self {
        Self::from_i64(num, ctx) / Self::from_i64(den, ctx)
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_i64(0, ctx)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(1, ctx)
    }

    fn powi(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.ctx());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// Real-number backends with elementary functions.
pub trait RealScalar: Scalar {
    fn precision_bits(ctx: &Self::Ctx) -> u32;
    fn sqrt(&self) -> Self;
    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn pi(ctx: &Self::Ctx) -> Self;

    /// Unit roundoff `2^(1 - bits)`.
    fn epsilon(ctx: &Self::Ctx) -> Self {
        let bits = Self::precision_bits(ctx) as i32;
        Self::from_i64(2, ctx).powf(&Self::from_i64(1 - bits as i64, ctx))
    }
}

impl Scalar for f64 {
    type Ctx = ();
    const EXACT: bool = false;

    fn ctx(&self) {}

    fn from_i64(v: i64, _: &()) -> Self {
        v as f64
    }

    fn from_f64(v: f64, _: &()) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn to_decimal(&self) -> String {
        format!("{:.16e}", self)
    }

    fn parse(s: &str, _: &()) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            return Ok(n / d);
        }
        s.parse().map_err(|_| Error::Parse(s.to_string()))
    }

    fn backend_name() -> &'static str {
        "f64"
    }

    fn to_rational(&self) -> Rational {
        Rational::from_f64(*self).expect("finite f64")
    }

    fn from_rational(q: &Rational, _: &()) -> Self {
        q.to_f64()
    }
}

impl RealScalar for f64 {
    fn precision_bits(_: &()) -> u32 {
        53
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn powf(&self, e: &Self) -> Self {
        f64::powf(*self, *e)
    }

    fn pi(_: &()) -> Self {
        std::f64::consts::PI
    }

    fn epsilon(_: &()) -> Self {
        f64::EPSILON
    }
}

impl Scalar for Float {
    type Ctx = u32;
    const EXACT: bool = false;

    fn ctx(&self) -> u32 {
        self.prec()
    }

    fn from_i64(v: i64, ctx: &u32) -> Self {
        Float::with_val(*ctx, v)
    }

    fn from_f64(v: f64, ctx: &u32) -> Self {
        Float::with_val(*ctx, v)
    }

    fn from_ratio(num: i64, den: i64, ctx: &u32) -> Self {
        Float::with_val(*ctx, Rational::from((num, den)))
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }

    fn abs(&self) -> Self {
        Float::abs(self.clone())
    }

    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }

    fn to_decimal(&self) -> String {
        self.to_string_radix(10, None)
    }

    fn parse(s: &str, ctx: &u32) -> Result<Self> {
        let s = s.trim();
        if s.contains('/') {
            let q = parse_rational(s)?;
            return Ok(Float::with_val(*ctx, q));
        }
        Float::parse(s)
            .map(|p| Float::with_val(*ctx, p))
            .map_err(|_| Error::Parse(s.to_string()))
    }

    fn backend_name() -> &'static str {
        "mpfr"
    }

    fn to_rational(&self) -> Rational {
        Float::to_rational(self).expect("finite float")
    }

    fn from_rational(q: &Rational, ctx: &u32) -> Self {
        Float::with_val(*ctx, q)
    }
}

impl RealScalar for Float {
    fn precision_bits(ctx: &u32) -> u32 {
        *ctx
    }

    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }

    fn cos(&self) -> Self {
        self.clone().cos()
    }

    fn sin(&self) -> Self {
        self.clone().sin()
    }

    fn exp(&self) -> Self {
        self.clone().exp()
    }

    fn ln(&self) -> Self {
        self.clone().ln()
    }

    fn powf(&self, e: &Self) -> Self {
        self.clone().pow(e)
    }

    fn pi(ctx: &u32) -> Self {
        Float::with_val(*ctx, Constant::Pi)
    }

    fn epsilon(ctx: &u32) -> Self {
        Float::with_val(*ctx, Float::i_exp(1, 1 - *ctx as i32))
    }
}

impl Scalar for Rational {
    type Ctx = ();
    const EXACT: bool = true;

    fn ctx(&self) {}

    fn from_i64(v: i64, _: &()) -> Self {
        Rational::from(v)
    }

    fn from_f64(v: f64, _: &()) -> Self {
        Rational::from_f64(v).expect("finite f64")
    }

    fn from_ratio(num: i64, den: i64, _: &()) -> Self {
        Rational::from((num, den))
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn abs(&self) -> Self {
        Rational::abs(self.clone())
    }

    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn to_decimal(&self) -> String {
        if *self.denom() == 1 {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse(s: &str, _: &()) -> Result<Self> {
        parse_rational(s)
    }

    fn backend_name() -> &'static str {
        "rational"
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn from_rational(q: &Rational, _: &()) -> Self {
        q.clone()
    }
}

/// Parses `p/q`, integers and decimal literals with optional exponent
/// (`-1.25e-3`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.cmp0() == std::cmp::Ordering::Equal {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = Integer::from_str_radix(if all.is_empty() { "0" } else { &all }, 10).map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    let ten = Integer::from(10);
    let q = if scale >= 0 {
        Rational::from(num * ten.pow(scale as u32))
    } else {
        Rational::from((num, ten.pow((-scale) as u32)))
    };
    Ok(q)
}

/// Rising factorial `(beta)_k = beta (beta + 1) ... (beta + k - 1)`, `(beta)_0 = 1`.
pub fn pochhammer<S: Scalar>(beta: &S, k: usize) -> S {
    let ctx = beta.ctx();
    let mut acc = S::one(&ctx);
    for i in 0..k {
        acc *= beta.clone() + S::from_usize(i, &ctx);
    }
    acc
}

/// Binomial coefficient as a scalar, built as a product of ratios.
pub fn binomial<S: Scalar>(n: usize, k: usize, ctx: &S::Ctx) -> S {
    if k > n {
        return S::zero(ctx);
    }
    let k = k.min(n - k);
    let mut acc = S::one(ctx);
    for i in 1..=k {
        acc *= S::from_usize(n - k + i, ctx);
        acc /= S::from_usize(i, ctx);
    }
    acc
}

/// Factorial as a scalar.
pub fn factorial<S: Scalar>(n: usize, ctx: &S::Ctx) -> S {
    pochhammer(&S::one(ctx), n)
}
