//! Working-precision context and small helpers around `rug::Float`.
//!
//! Every extended-precision operation in the crate takes a [`PrecisionContext`]
//! and promises results correct to `10^-(digits - series_guard)`. Series are
//! summed at `digits + series_guard` decimal digits and truncated relative to
//! the running sum, so the guard digits absorb truncation and rounding.

use rug::{float::Constant, ops::Pow, Float};

pub(crate) const LOG2_10: f64 = 3.321928094887362;

/// Decimal working precision plus guard digits for series truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    /// Requested decimal digits. At least 15.
    pub digits: u32,
    /// Extra digits carried internally. At least 5.
    pub series_guard: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(30)
    }
}

impl PrecisionContext {
    /// Context with the given decimal digits and the default guard of 10.
    ///
    /// Clamps to the documented minima (digits >= 15, guard >= 5).
    pub fn new(digits: u32) -> Self {
        Self { digits: digits.max(15), series_guard: 10 }
    }

    pub fn with_guard(digits: u32, series_guard: u32) -> Self {
        Self { digits: digits.max(15), series_guard: series_guard.max(5) }
    }

    /// Binary precision used for all `Float`s under this context.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.series_guard) as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// Fresh Float at working precision.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    pub fn zero(&self) -> Float {
        self.real(0)
    }

    /// Euler–Mascheroni constant at working precision (MPFR's builtin,
    /// independent of everything this crate computes).
    pub fn euler_gamma(&self) -> Float {
        self.real(Constant::Euler)
    }

    pub fn pi(&self) -> Float {
        self.real(Constant::Pi)
    }

    /// `10^-(digits + series_guard)`: the relative threshold at which series
    /// terms stop contributing.
    pub fn series_eps(&self) -> Float {
        self.real(10).pow(-((self.digits + self.series_guard) as i32))
    }

    /// `10^-(digits - series_guard)`: the accuracy actually promised.
    pub fn promised_eps(&self) -> Float {
        self.real(10).pow(-(self.digits.saturating_sub(self.series_guard) as i32))
    }

    /// Same context with extra decimal digits, for cancellation-heavy spots.
    pub fn boosted(&self, extra_digits: u32) -> Self {
        Self { digits: self.digits + extra_digits, series_guard: self.series_guard }
    }
}

/// Minimal complex number on top of `rug::Float`; only what the power sums
/// and the entire-series evaluations need.
#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(ctx: &PrecisionContext, re: f64, im: f64) -> Self {
        Self { re: ctx.real(re), im: ctx.real(im) }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self { re: ctx.zero(), im: ctx.zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: self.re.clone() + &o.re, im: self.im.clone() + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: self.re.clone() - &o.re, im: self.im.clone() - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.clone() * &o.re - self.im.clone() * &o.im;
        let im = self.re.clone() * &o.im + self.im.clone() * &o.re;
        Self { re, im }
    }

    pub fn scale(&self, k: &Float) -> Self {
        Self { re: self.re.clone() * k, im: self.im.clone() * k }
    }

    pub fn div_scalar(&self, k: &Float) -> Self {
        Self { re: self.re.clone() / k, im: self.im.clone() / k }
    }

    /// |z|, at working precision.
    pub fn abs(&self) -> Float {
        let s = self.re.clone().square() + self.im.clone().square();
        s.sqrt()
    }

    /// exp(z) = e^re (cos im + i sin im).
    pub fn exp(&self) -> Self {
        let m = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(self.im.prec()));
        Self { re: m.clone() * cos, im: m * sin }
    }

    /// base^z for a positive real base: exp(z * ln base).
    pub fn pow_of_real(base: &Float, z: &Self) -> Self {
        let l = base.clone().ln();
        Self { re: z.re.clone() * &l, im: z.im.clone() * &l }.exp()
    }
}
