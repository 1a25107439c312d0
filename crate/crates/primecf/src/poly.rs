//! Dense univariate polynomials with exact rational coefficients.
//!
//! Just enough for the convergent recurrences: arithmetic, content, exact
//! evaluation at rationals, floating evaluation via Horner, and the Laurent
//! expansion of a rational function at infinity.

use rug::{Float, Integer, Rational};
use std::fmt;

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    let k = k.min(n - k);
    let mut num = Integer::from(1);
    let mut den = Integer::from(1);
    for i in 0..k {
        num *= Integer::from(n - i);
        den *= Integer::from(i + 1);
    }
    num / den
}

/// Polynomial with rational coefficients, lowest degree first. No trailing
/// zero coefficients; the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0() == std::cmp::Ordering::Equal) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(ints: &[Integer]) -> Self {
        Self::new(ints.iter().map(|i| Rational::from(i)).collect())
    }

    /// a x + b
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + o.coeff(i));
        }
        Self::new(v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::new(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += Rational::from(a * b);
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| Rational::from(c * k)).collect())
    }

    /// Positive rational c such that the coefficients of self/c are coprime
    /// integers. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::new();
        }
        let mut lcm = Integer::from(1);
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = Integer::new();
        for c in &self.coeffs {
            let scaled = Rational::from(c * Rational::from(&lcm));
            debug_assert_eq!(*scaled.denom(), 1);
            gcd = gcd.gcd(scaled.numer());
        }
        Rational::from((gcd, lcm))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_float(&self, x: &Float, bits: u32) -> Float {
        let mut acc = Float::new(bits);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Float::with_val(bits, c);
        }
        acc
    }

    /// Format with the given variable name, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let mag = Rational::from(c.clone().abs());
            let body = match i {
                0 => format!("{mag}"),
                1 if mag == 1 => var.to_string(),
                1 => format!("{mag} {var}"),
                _ if mag == 1 => format!("{var}^{i}"),
                _ => format!("{mag} {var}^{i}"),
            };
            if parts.is_empty() {
                if c.cmp0() == std::cmp::Ordering::Less {
                    parts.push(format!("-{body}"));
                } else {
                    parts.push(body);
                }
            } else if c.cmp0() == std::cmp::Ordering::Less {
                parts.push(format!("- {body}"));
            } else {
                parts.push(format!("+ {body}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

/// Laurent coefficients of num/den at infinity: the returned vector holds the
/// coefficients of u^-1, u^-2, ..., u^-order. Requires deg num < deg den.
pub fn laurent_at_infinity(num: &RatPoly, den: &RatPoly, order: usize) -> Vec<Rational> {
    let q = den.degree().expect("nonzero denominator");
    if num.is_zero() {
        return vec![Rational::new(); order];
    }
    let p = num.degree().unwrap();
    assert!(p < q, "laurent_at_infinity needs a strictly proper fraction");
    let shift = q - p;
    // reversed coefficient sequences: series in v = 1/u
    let ar: Vec<Rational> = (0..=p).map(|i| num.coeff(p - i)).collect();
    let br: Vec<Rational> = (0..=q).map(|i| den.coeff(q - i)).collect();
    let b0 = br[0].clone();
    let mut s: Vec<Rational> = Vec::with_capacity(order);
    for i in 0..order {
        let mut acc = if i <= p { ar[i].clone() } else { Rational::new() };
        for j in 0..i {
            if i - j <= q {
                acc -= Rational::from(&s[j] * &br[i - j]);
            }
        }
        s.push(acc / b0.clone());
    }
    let mut out = vec![Rational::new(); order];
    for (m, item) in out.iter_mut().enumerate() {
        let idx = m + 1;
        if idx >= shift {
            *item = s[idx - shift].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn arithmetic_and_content() {
        let p = RatPoly::new(vec![r(2, 1), r(4, 1), r(6, 1)]);
        assert_eq!(p.content(), r(2, 1));
        let q = RatPoly::new(vec![r(1, 2), r(3, 4)]);
        assert_eq!(q.content(), r(1, 4));
        let prod = p.mul(&q);
        assert_eq!(prod.degree(), Some(3));
        assert_eq!(prod.eval_rational(&r(2, 1)), p.eval_rational(&r(2, 1)) * q.eval_rational(&r(2, 1)));
        let zero = p.add(&p.scale(&r(-1, 1)));
        assert!(zero.is_zero());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 1) * binomial(3, 1), 6);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 7), 0);
    }

    #[test]
    fn laurent_series() {
        // 1/(x - 1) = x^-1 + x^-2 + x^-3 + ...
        let num = RatPoly::constant(r(1, 1));
        let den = RatPoly::linear(r(1, 1), r(-1, 1));
        let s = laurent_at_infinity(&num, &den, 5);
        assert!(s.iter().all(|c| *c == 1));
        // (2x+3)/(x^2+1): 2/x + 3/x^2 - 2/x^3 - 3/x^4 + 2/x^5
        let num = RatPoly::linear(r(2, 1), r(3, 1));
        let den = RatPoly::new(vec![r(1, 1), r(0, 1), r(1, 1)]);
        let s = laurent_at_infinity(&num, &den, 5);
        assert_eq!(s, vec![r(2, 1), r(3, 1), r(-2, 1), r(-3, 1), r(2, 1)]);
    }
}
