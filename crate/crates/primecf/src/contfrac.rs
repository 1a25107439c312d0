//! Continued fractions: backward evaluation, exact rational convergents via
//! the three-term recurrence, the named coefficient families, and the shifted
//! Legendre polynomials underlying the log(1+1/x) approximants.
//!
//! A fraction is stored in the canonical plus convention
//!
//! ```text
//! value(u) = a_1/(b_1(u) + a_2/(b_2(u) + a_3/(b_3(u) + ...)))
//! ```
//!
//! with partial numerators `a_k` (exact rationals, optionally divided by the
//! expansion variable u) and affine partial denominators `b_k(u)`. Families
//! displayed with minus signs between levels carry the sign folded into
//! `a_k` for k >= 2; `displayed_numerator` undoes the fold, which is what the
//! positivity of measure-backed families refers to.
//!
//! Multiplicative prefactors (the x^(1/n) in front of the prime families) are
//! represented symbolically as e^(u/n) and applied by the caller.

use crate::error::{Error, Result};
use crate::poly::{binomial, laurent_at_infinity, RatPoly};
use crate::precision::PrecisionContext;
use rug::{Float, Integer, Rational};
use std::sync::Mutex;

/// Stieltjes (S) or Jacobi (J) form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfForm {
    S,
    J,
}

/// Symbolic prefactor: 1 or e^(u/n) in the expansion variable u.
/// For the prime families u = log x, so e^(u/n) is x^(1/n); evaluating the
/// power-sum families at u = (s+1) log x makes e^u the x^(s+1) prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefactor {
    One,
    ExpOfVarOver(u32),
}

impl Prefactor {
    pub fn apply(&self, u: &Float, value: Float) -> Float {
        match self {
            Prefactor::One => value,
            Prefactor::ExpOfVarOver(n) => (u.clone() / *n).exp() * value,
        }
    }
}

/// One level: numerator `num` (times 1/u when `num_over_var`), denominator
/// `den_u * u + den_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfTerm {
    pub num: Rational,
    pub num_over_var: bool,
    pub den_u: Rational,
    pub den_c: Rational,
}

impl CfTerm {
    pub fn new(num: Rational, num_over_var: bool, den_u: Rational, den_c: Rational) -> Self {
        Self { num, num_over_var, den_u, den_c }
    }
}

type TermGen = Box<dyn Fn(usize) -> CfTerm + Send + Sync>;

/// A coefficient stream plus form metadata. Terms are generated on demand and
/// memoized; the fill is idempotent so concurrent readers are fine.
pub struct ContinuedFraction {
    form: CfForm,
    prefactor: Prefactor,
    minus_convention: bool,
    exact: bool,
    name: String,
    gen: TermGen,
    cache: Mutex<Vec<CfTerm>>,
}

impl std::fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ContinuedFraction")
            .field("form", &self.form)
            .field("prefactor", &self.prefactor)
            .field("name", &self.name)
            .finish()
    }
}

impl ContinuedFraction {
    fn from_gen(
        name: &str,
        form: CfForm,
        prefactor: Prefactor,
        minus_convention: bool,
        gen: TermGen,
    ) -> Self {
        Self {
            form,
            prefactor,
            minus_convention,
            exact: true,
            name: name.to_string(),
            gen,
            cache: Mutex::new(Vec::new()),
        }
    }

    /// Fraction from a finite, explicit term list (canonical convention).
    pub fn from_terms(name: &str, form: CfForm, terms: Vec<CfTerm>, exact: bool) -> Self {
        let n = terms.len();
        Self {
            form,
            prefactor: Prefactor::One,
            minus_convention: false,
            exact,
            name: name.to_string(),
            gen: Box::new(move |k| panic!("term {k} past the {n} provided")),
            cache: Mutex::new(terms),
        }
    }

    pub fn form(&self) -> CfForm {
        self.form
    }

    pub fn prefactor(&self) -> Prefactor {
        self.prefactor
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Term at 1-based depth k, canonical convention.
    pub fn term(&self, k: usize) -> CfTerm {
        assert!(k >= 1, "term depth is 1-based");
        let mut cache = self.cache.lock().unwrap();
        while cache.len() < k {
            let next = (self.gen)(cache.len() + 1);
            cache.push(next);
        }
        cache[k - 1].clone()
    }

    /// Partial numerator as displayed (sign fold undone for minus-convention
    /// families). Positive for every family backed by a positive measure.
    pub fn displayed_numerator(&self, k: usize) -> Rational {
        let t = self.term(k);
        if self.minus_convention && k >= 2 {
            -t.num
        } else {
            t.num
        }
    }

    /// Value of the depth-truncated fraction at u = x, by the standard
    /// backward recurrence. The prefactor is not applied.
    pub fn eval_backward(&self, depth: usize, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
        if depth < 1 {
            return Err(Error::Domain("eval_backward needs depth >= 1".into()));
        }
        let bits = ctx.bits();
        let xf = ctx.real(x);
        let mut tail = ctx.zero();
        for k in (1..=depth).rev() {
            let t = self.term(k);
            let mut den = Float::with_val(bits, &t.den_u) * &xf + Float::with_val(bits, &t.den_c);
            den += &tail;
            if den.is_zero() || !den.is_finite() {
                return Err(Error::EvaluationSingularity { level: k });
            }
            let mut num = Float::with_val(bits, &t.num);
            if t.num_over_var {
                if xf.is_zero() {
                    return Err(Error::EvaluationSingularity { level: k });
                }
                num /= &xf;
            }
            tail = num / den;
        }
        if !tail.is_finite() {
            return Err(Error::EvaluationSingularity { level: 0 });
        }
        Ok(tail)
    }

    /// The stream rewritten with polynomial levels: numerators over the
    /// variable are cleared by the equivalence transform with multipliers
    /// u, 1, u, 1, ..., which leaves every convergent unchanged as a
    /// rational function.
    fn polynomial_levels(&self, n: usize) -> Result<Vec<(Rational, RatPoly)>> {
        if !self.exact {
            return Err(Error::UnsupportedExactness);
        }
        let over: Vec<bool> = (1..=n).map(|k| self.term(k).num_over_var).collect();
        if over.iter().any(|&b| b) && !over.iter().all(|&b| b) {
            return Err(Error::UnsupportedExactness);
        }
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let t = self.term(k);
            let den = RatPoly::linear(t.den_u.clone(), t.den_c.clone());
            let den = if t.num_over_var && k % 2 == 1 {
                den.mul(&RatPoly::linear(1.into(), Rational::new()))
            } else {
                den
            };
            out.push((t.num.clone(), den));
        }
        Ok(out)
    }

    /// First n convergents with exact rational-polynomial coefficients.
    pub fn convergents(&self, n: usize) -> Result<Vec<Convergent>> {
        if n < 1 {
            return Err(Error::Domain("convergents needs n >= 1".into()));
        }
        let levels = self.polynomial_levels(n)?;
        let mut out = Vec::with_capacity(n);
        let mut a_prev = RatPoly::constant(1.into()); // A_{-1}
        let mut a_cur = RatPoly::zero(); // A_0
        let mut b_prev = RatPoly::zero(); // B_{-1}
        let mut b_cur = RatPoly::constant(1.into()); // B_0
        for (depth, (num, den)) in levels.iter().enumerate() {
            let num_poly = RatPoly::constant(num.clone());
            let a_next = den.mul(&a_cur).add(&num_poly.mul(&a_prev));
            let b_next = den.mul(&b_cur).add(&num_poly.mul(&b_prev));
            a_prev = a_cur;
            a_cur = a_next;
            b_prev = b_cur;
            b_cur = b_next;
            out.push(Convergent {
                numerator: a_cur.clone(),
                denominator: b_cur.clone(),
                depth: depth + 1,
            });
        }
        Ok(out)
    }

    /// Single convergent at the given depth.
    pub fn convergent(&self, depth: usize) -> Result<Convergent> {
        Ok(self.convergents(depth)?.pop().unwrap())
    }
}

/// Exact rational-function approximant A(u)/B(u) at a given depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub numerator: RatPoly,
    pub denominator: RatPoly,
    pub depth: usize,
}

impl Convergent {
    pub fn eval(&self, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
        let bits = ctx.bits();
        let den = self.denominator.eval_float(x, bits);
        if den.is_zero() {
            return Err(Error::EvaluationSingularity { level: self.depth });
        }
        Ok(self.numerator.eval_float(x, bits) / den)
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        let den = self.denominator.eval_rational(x);
        if den.cmp0() == std::cmp::Ordering::Equal {
            None
        } else {
            Some(self.numerator.eval_rational(x) / den)
        }
    }

    /// Pair divided by its joint content (coprime integer coefficients
    /// across both polynomials).
    pub fn content_reduced(&self) -> Self {
        let ca = self.numerator.content();
        let cb = self.denominator.content();
        if ca.cmp0() == std::cmp::Ordering::Equal || cb.cmp0() == std::cmp::Ordering::Equal {
            return self.clone();
        }
        let g = Rational::from((
            ca.numer().clone().gcd(cb.numer()),
            ca.denom().clone().lcm(cb.denom()),
        ));
        let inv = g.recip();
        Self {
            numerator: self.numerator.scale(&inv),
            denominator: self.denominator.scale(&inv),
            depth: self.depth,
        }
    }

    /// Pair scaled so the denominator's constant term is 1.
    pub fn normalized_unit_constant(&self) -> Option<Self> {
        let c = self.denominator.coeff(0);
        if c.cmp0() == std::cmp::Ordering::Equal {
            return None;
        }
        let inv = c.recip();
        Some(Self {
            numerator: self.numerator.scale(&inv),
            denominator: self.denominator.scale(&inv),
            depth: self.depth,
        })
    }

    /// Laurent coefficients of the convergent at u = infinity
    /// (coefficients of u^-1 ... u^-order).
    pub fn series_at_infinity(&self, order: usize) -> Vec<Rational> {
        laurent_at_infinity(&self.numerator, &self.denominator, order)
    }
}

fn rat(n: i64) -> Rational {
    Rational::from(n)
}

/// S-fraction of the weighted prime-power families: partial numerators
/// (1, n, n, 2n, 2n, 3n, 3n, ...)/u over unit denominators, minus signs
/// between levels, prefactor e^(u/n).
pub fn family_prime_s(n: u32) -> Result<ContinuedFraction> {
    if n == 0 {
        return Err(Error::Domain("family_prime_s needs n >= 1".into()));
    }
    let nn = n as i64;
    Ok(ContinuedFraction::from_gen(
        &format!("prime-s(n={n})"),
        CfForm::S,
        Prefactor::ExpOfVarOver(n),
        true,
        Box::new(move |k| {
            let c = if k == 1 { rat(1) } else { rat((k as i64 / 2) * nn) };
            let signed = if k >= 2 { -c } else { c };
            CfTerm::new(signed, true, rat(0), rat(1))
        }),
    ))
}

/// J-fraction of the same families: numerators 1, n^2, (2n)^2, ... with
/// denominators u - n, u - 3n, u - 5n, ..., prefactor e^(u/n).
pub fn family_prime_j(n: u32) -> Result<ContinuedFraction> {
    if n == 0 {
        return Err(Error::Domain("family_prime_j needs n >= 1".into()));
    }
    let nn = n as i64;
    Ok(ContinuedFraction::from_gen(
        &format!("prime-j(n={n})"),
        CfForm::J,
        Prefactor::ExpOfVarOver(n),
        true,
        Box::new(move |k| {
            let kk = k as i64;
            let num = if k == 1 { rat(1) } else { -rat(((kk - 1) * nn) * ((kk - 1) * nn)) };
            CfTerm::new(num, false, rat(1), rat(-(2 * kk - 1) * nn))
        }),
    ))
}

/// S-fraction converging to log(1 + 1/u): numerators (1,1,1,4,4,9,9,...)/u
/// over denominators 1,2,3,4,..., plus signs.
pub fn family_log_s() -> ContinuedFraction {
    ContinuedFraction::from_gen(
        "log-s",
        CfForm::S,
        Prefactor::One,
        false,
        Box::new(|k| {
            let kk = k as i64;
            let c = if k == 1 { rat(1) } else { rat((kk / 2) * (kk / 2)) };
            CfTerm::new(c, true, rat(0), rat(kk))
        }),
    )
}

/// Rewritten S-fraction for log(1 + 1/u): numerators (1,1,1,2,2,3,3,...)/u
/// over denominators 1,2,3,2,5,2,7,2,9,..., plus signs.
pub fn family_log_s_alt() -> ContinuedFraction {
    ContinuedFraction::from_gen(
        "log-s-alt",
        CfForm::S,
        Prefactor::One,
        false,
        Box::new(|k| {
            let kk = k as i64;
            let num = if k == 1 { rat(1) } else { rat(kk / 2) };
            let den = if k == 1 {
                rat(1)
            } else if k % 2 == 0 {
                rat(2)
            } else {
                rat(kk)
            };
            CfTerm::new(num, true, rat(0), den)
        }),
    )
}

/// J-fraction converging to log(1 + 1/u): 2/(2u+1) - 1/(6u+3) - 4/(10u+5)
/// - 9/(14u+7) - ...; denominators (4k-2)u + (2k-1).
pub fn family_log_j() -> ContinuedFraction {
    ContinuedFraction::from_gen(
        "log-j",
        CfForm::J,
        Prefactor::One,
        true,
        Box::new(|k| {
            let kk = k as i64;
            let num = if k == 1 { rat(2) } else { -rat((kk - 1) * (kk - 1)) };
            CfTerm::new(num, false, rat(4 * kk - 2), rat(2 * kk - 1))
        }),
    )
}

/// Fraction converging to log((u+1)/(u-1)) for u outside [-1, 1]:
/// 2/u - 1/3u - 4/5u - 9/7u - ...
pub fn family_uniform_sym() -> ContinuedFraction {
    ContinuedFraction::from_gen(
        "uniform-sym",
        CfForm::J,
        Prefactor::One,
        true,
        Box::new(|k| {
            let kk = k as i64;
            let num = if k == 1 { rat(2) } else { -rat((kk - 1) * (kk - 1)) };
            CfTerm::new(num, false, rat(2 * kk - 1), rat(0))
        }),
    )
}

/// Shifted Legendre polynomial P_n(2x+1) as exact integer coefficients
/// (lowest degree first): sum_k C(n,k) C(n+k,k) x^k.
pub fn legendre_shifted(n: u32) -> Vec<Integer> {
    let n = n as u64;
    (0..=n).map(|k| binomial(n, k) * binomial(n + k, k)).collect()
}

/// Error constant c_n of the log(1+1/x) approximants:
/// c_0 = 1, c_n = 1/((2n+2) C(2n+1,n) C(2n-1,n)).
pub fn legendre_error_constant(n: u32) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let n = n as u64;
    let den = Integer::from(2 * n + 2) * binomial(2 * n + 1, n) * binomial(2 * n - 1, n);
    Rational::from((Integer::from(1), den))
}

/// Same constant by the product form (1/2^(2n)) prod k^2/(4k^2-1).
pub fn legendre_error_constant_product(n: u32) -> Rational {
    let mut acc = Rational::from(1);
    for k in 1..=n as i64 {
        acc *= Rational::from((k * k, 4 * k * k - 1));
    }
    acc / Rational::from(Integer::from(1) << (2 * n))
}

/// Numerator polynomial of the depth-n log(1+1/x) approximant in the
/// normalization with denominator P_n(2x+1): coefficient of x^(k-1) is
/// a_{n,k} = sum_{j=k}^n (-1)^(j-k)/(j-k+1) C(n,j) C(n+j,j).
pub fn legendre_numerator(n: u32) -> Result<RatPoly> {
    if n < 1 {
        return Err(Error::Domain("legendre_numerator needs n >= 1".into()));
    }
    let n = n as u64;
    let mut coeffs = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let mut a = Rational::new();
        for j in k..=n {
            let term = Rational::from((
                binomial(n, j) * binomial(n + j, j),
                Integer::from(j - k + 1),
            ));
            if (j - k) % 2 == 0 {
                a += term;
            } else {
                a -= term;
            }
        }
        coeffs.push(a);
    }
    Ok(RatPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn displayed_streams() {
        let pj1 = family_prime_j(1).unwrap();
        // 1/(u-1-) 1/(u-3-) 4/(u-5-) 9/(u-7-) 16/(u-9-)
        let nums: Vec<Rational> = (1..=5).map(|k| pj1.displayed_numerator(k)).collect();
        assert_eq!(nums, [1, 1, 4, 9, 16].map(Rational::from).to_vec());
        let dens: Vec<Rational> = (1..=4).map(|k| pj1.term(k).den_c).collect();
        assert_eq!(dens, [-1, -3, -5, -7].map(Rational::from).to_vec());

        // n = 2: numerators after the first are 4, 16, 36
        let pj2 = family_prime_j(2).unwrap();
        let nums: Vec<Rational> = (2..=4).map(|k| pj2.displayed_numerator(k)).collect();
        assert_eq!(nums, [4, 16, 36].map(Rational::from).to_vec());
        let dens: Vec<Rational> = (1..=3).map(|k| pj2.term(k).den_c).collect();
        assert_eq!(dens, [-2, -6, -10].map(Rational::from).to_vec());

        // prime S-fraction numerator pattern 1,1,1,2,2,3,3,4,4 for n = 1
        let ps1 = family_prime_s(1).unwrap();
        let nums: Vec<Rational> = (1..=9).map(|k| ps1.displayed_numerator(k)).collect();
        assert_eq!(nums, [1, 1, 1, 2, 2, 3, 3, 4, 4].map(Rational::from).to_vec());

        // log J-fraction: 2, 1, 4, 9, 16 over 2x+1, 6x+3, 10x+5, 14x+7, 18x+9
        let lj = family_log_j();
        let nums: Vec<Rational> = (1..=5).map(|k| lj.displayed_numerator(k)).collect();
        assert_eq!(nums, [2, 1, 4, 9, 16].map(Rational::from).to_vec());
        for k in 1..=5usize {
            let t = lj.term(k);
            assert_eq!(t.den_u, Rational::from(4 * k as i64 - 2));
            assert_eq!(t.den_c, Rational::from(2 * k as i64 - 1));
        }

        // positivity of the measure-backed J families
        for k in 1..=30 {
            assert!(lj.displayed_numerator(k).cmp0() == std::cmp::Ordering::Greater);
            assert!(pj1.displayed_numerator(k).cmp0() == std::cmp::Ordering::Greater);
        }

        // log S-fraction squares pattern over 1..9
        let ls = family_log_s();
        let nums: Vec<Rational> = (1..=9).map(|k| ls.term(k).num).collect();
        assert_eq!(nums, [1, 1, 1, 4, 4, 9, 9, 16, 16].map(Rational::from).to_vec());
        let dens: Vec<Rational> = (1..=9).map(|k| ls.term(k).den_c).collect();
        assert_eq!(dens, [1, 2, 3, 4, 5, 6, 7, 8, 9].map(Rational::from).to_vec());

        // alt pattern 1,1,1,2,2,3,3,4,4 over 1,2,3,2,5,2,7,2,9
        let la = family_log_s_alt();
        let nums: Vec<Rational> = (1..=9).map(|k| la.term(k).num).collect();
        assert_eq!(nums, [1, 1, 1, 2, 2, 3, 3, 4, 4].map(Rational::from).to_vec());
        let dens: Vec<Rational> = (1..=9).map(|k| la.term(k).den_c).collect();
        assert_eq!(dens, [1, 2, 3, 2, 5, 2, 7, 2, 9].map(Rational::from).to_vec());
    }

    #[test]
    fn eval_backward_basics() {
        let c = ctx();
        let lj = family_log_j();
        let v = lj.eval_backward(1, &c.real(1), &c).unwrap();
        assert!((v - Float::with_val(64, 2.0 / 3.0)).abs().to_f64() < 1e-16);

        // depth 8 at x = 10 agrees with log(1.1) to >= 10 digits
        let v = lj.eval_backward(8, &c.real(10), &c).unwrap();
        let reference = (c.real(11) / c.real(10)).ln();
        assert!((v - reference).abs().to_f64() < 1e-11);

        // convergence of the other forms
        let ls = family_log_s();
        let v = ls.eval_backward(15, &c.real(4), &c).unwrap();
        let reference = c.real(1.25f64).ln();
        assert!((v - reference).abs().to_f64() < 1e-8);

        let us = family_uniform_sym();
        let v = us.eval_backward(12, &c.real(3), &c).unwrap();
        let reference = c.real(2).ln();
        assert!((v - reference).abs().to_f64() < 1e-8);

        assert!(lj.eval_backward(0, &c.real(1), &c).is_err());
    }

    #[test]
    fn forms_agree() {
        let c = ctx();
        let x = c.real(2.5f64);
        let reference = (c.real(1) + c.real(1) / c.real(2.5f64)).ln();
        let a = family_log_s().eval_backward(40, &x, &c).unwrap();
        let b = family_log_s_alt().eval_backward(40, &x, &c).unwrap();
        let d = family_log_j().eval_backward(20, &x, &c).unwrap();
        assert!((a - &reference).abs().to_f64() < 1e-25);
        assert!((b - &reference).abs().to_f64() < 1e-25);
        assert!((d - &reference).abs().to_f64() < 1e-25);
    }

    #[test]
    fn convergents_match_eval() {
        let c = ctx();
        for cf in [family_log_j(), family_log_s(), family_uniform_sym()] {
            let convs = cf.convergents(6).unwrap();
            for conv in &convs {
                for &x in &[1.5f64, 3.0, 10.0] {
                    let by_recurrence = cf.eval_backward(conv.depth, &c.real(x), &c).unwrap();
                    let by_poly = conv.eval(&c.real(x), &c).unwrap();
                    assert!(
                        (by_recurrence - by_poly).abs().to_f64() < 1e-30,
                        "{} depth {} at {}",
                        cf.name(),
                        conv.depth,
                        x
                    );
                }
            }
        }
    }

    #[test]
    fn three_term_recurrence_consistency() {
        // A_k = b_k A_{k-1} + a_k A_{k-2} holds for the polynomial levels
        let cf = family_log_j();
        let convs = cf.convergents(6).unwrap();
        for k in 3..=6usize {
            let t = cf.term(k);
            let den = RatPoly::linear(t.den_u.clone(), t.den_c.clone());
            let num = RatPoly::constant(t.num.clone());
            let a = den.mul(&convs[k - 2].numerator).add(&num.mul(&convs[k - 3].numerator));
            let b = den.mul(&convs[k - 2].denominator).add(&num.mul(&convs[k - 3].denominator));
            assert_eq!(a, convs[k - 1].numerator);
            assert_eq!(b, convs[k - 1].denominator);
        }
    }

    #[test]
    fn log_j_convergent_shapes() {
        let cf = family_log_j();
        let convs = cf.convergents(2).unwrap();
        // depth 1: 2/(2x+1)
        assert_eq!(convs[0].numerator, RatPoly::constant(Rational::from(2)));
        assert_eq!(convs[0].denominator, RatPoly::linear(Rational::from(2), Rational::from(1)));
        // depth 2 denominator: (2x+1)(6x+3) - 1 = 12x^2 + 12x + 2
        assert_eq!(
            convs[1].denominator.coeffs().to_vec(),
            [2, 12, 12].map(Rational::from).to_vec()
        );
        // content reduction takes the pair down by 2
        let reduced = convs[1].content_reduced();
        assert_eq!(reduced.denominator.coeffs().to_vec(), [1, 6, 6].map(Rational::from).to_vec());
        assert_eq!(reduced.numerator.coeffs().to_vec(), [3, 6].map(Rational::from).to_vec());
    }

    #[test]
    fn prime_j_depth1_is_one_over_u_minus_n() {
        let cf = family_prime_j(1).unwrap();
        let conv = cf.convergent(1).unwrap();
        assert_eq!(conv.numerator, RatPoly::constant(Rational::from(1)));
        assert_eq!(conv.denominator, RatPoly::linear(Rational::from(1), Rational::from(-1)));
    }

    #[test]
    fn pade_order_of_prime_j() {
        // depth-m convergent has degrees (m-1, m) and matches the series
        // sum_k n^k k! / u^(k+1) through order 2m
        for n in [1u32, 2, 3] {
            let cf = family_prime_j(n).unwrap();
            for m in 1..=5usize {
                let conv = cf.convergent(m).unwrap();
                assert_eq!(conv.numerator.degree(), Some(m - 1));
                assert_eq!(conv.denominator.degree(), Some(m));
                let series = conv.series_at_infinity(2 * m);
                let mut expect = Rational::from(1); // n^k k! at k = 0
                for (k, got) in series.iter().enumerate() {
                    assert_eq!(*got, expect, "n={n} m={m} k={k}");
                    expect *= Rational::from((k as i64 + 1) * n as i64);
                }
            }
        }
    }

    #[test]
    fn s_and_j_prime_families_contract() {
        // depth-2m S convergent equals depth-m J convergent as a rational
        // function: cross-multiplied polynomial identity, exact.
        for n in [1u32, 2] {
            let s = family_prime_s(n).unwrap();
            let j = family_prime_j(n).unwrap();
            let sc = s.convergents(8).unwrap();
            let jc = j.convergents(4).unwrap();
            for m in 1..=4usize {
                let lhs = sc[2 * m - 1].numerator.mul(&jc[m - 1].denominator);
                let rhs = jc[m - 1].numerator.mul(&sc[2 * m - 1].denominator);
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn legendre_polys() {
        assert_eq!(legendre_shifted(0), vec![Integer::from(1)]);
        assert_eq!(legendre_shifted(1), vec![Integer::from(1), Integer::from(2)]);
        assert_eq!(legendre_shifted(2), [1, 6, 6].map(Integer::from).to_vec());
    }

    #[test]
    fn legendre_constants() {
        assert_eq!(legendre_error_constant(0), Rational::from(1));
        assert_eq!(legendre_error_constant(1), Rational::from((1, 12)));
        assert_eq!(legendre_error_constant(2), Rational::from((1, 180)));
        for n in 0..=8 {
            assert_eq!(legendre_error_constant(n), legendre_error_constant_product(n));
        }
    }

    #[test]
    fn legendre_numerators() {
        let r1 = legendre_numerator(1).unwrap();
        assert_eq!(r1, RatPoly::constant(Rational::from(2)));
        let r2 = legendre_numerator(2).unwrap();
        assert_eq!(r2.coeffs().to_vec(), [3, 6].map(Rational::from).to_vec());
        let r3 = legendre_numerator(3).unwrap();
        assert_eq!(
            r3.coeffs().to_vec(),
            vec![Rational::from((11, 3)), Rational::from(20), Rational::from(20)]
        );
        assert!(legendre_numerator(0).is_err());
    }

    #[test]
    fn partial_fraction_identity() {
        // R_n / P_n(2x+1) = sum_{k=1}^n (2/k) / (P_k(2x+1) P_{k-1}(2x+1)),
        // exact rational equality at 2n+2 sample points. The 2/k coefficient
        // is forced by the successive-convergent differences
        // w_k - w_{k-1} = (prod a_i)/(B_{k-1} B_k) with B_k = k! P_k(2x+1).
        for n in 1..=8u32 {
            let rn = legendre_numerator(n).unwrap();
            let pn = RatPoly::from_integers(&legendre_shifted(n));
            let ps: Vec<RatPoly> =
                (0..=n).map(|k| RatPoly::from_integers(&legendre_shifted(k))).collect();
            for i in 0..(2 * n + 2) {
                let x = Rational::from((i as i64 * 3 + 1, 2));
                let lhs = rn.eval_rational(&x) / pn.eval_rational(&x);
                let mut rhs = Rational::new();
                for k in 1..=n as usize {
                    rhs += Rational::from((2, k as i64))
                        / (ps[k].eval_rational(&x) * ps[k - 1].eval_rational(&x));
                }
                assert_eq!(lhs, rhs, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn prefactor_application() {
        let c = ctx();
        let cf = family_prime_j(2).unwrap();
        let u = c.real(9);
        let v = cf.prefactor().apply(&u, c.real(1));
        let expect = (c.real(9) / c.real(2)).exp();
        assert!((v - expect).abs().to_f64() < 1e-30);
    }

    #[test]
    fn from_terms_and_exactness_guard() {
        let c = ctx();
        let terms = vec![
            CfTerm::new(Rational::from(3), false, Rational::from(1), Rational::from(0)),
            CfTerm::new(Rational::from(-2), false, Rational::from(1), Rational::from(1)),
        ];
        let cf = ContinuedFraction::from_terms("adhoc", CfForm::J, terms.clone(), true);
        // 3/(x - 2/(x+1)) at x = 2: 3/(2 - 2/3) = 9/4
        let v = cf.eval_backward(2, &c.real(2), &c).unwrap();
        assert!((v - Float::with_val(64, 2.25)).abs().to_f64() < 1e-30);
        let approx = ContinuedFraction::from_terms("approx", CfForm::J, terms, false);
        assert!(matches!(approx.convergents(2), Err(Error::UnsupportedExactness)));
    }

    #[test]
    fn singular_evaluation_reported() {
        let c = ctx();
        let cf = family_prime_j(1).unwrap();
        // depth 1 at u = 1 hits the u - 1 denominator exactly
        assert!(matches!(
            cf.eval_backward(1, &c.real(1), &c),
            Err(Error::EvaluationSingularity { .. })
        ));
    }
}
