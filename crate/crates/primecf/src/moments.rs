//! Moments of the exponential-density and uniform interval measures, their
//! Stieltjes transforms, and the quotient-difference (qd) algorithm turning a
//! moment sequence into continued-fraction coefficients.
//!
//! Conventions. For a measure mu with moments m_0, m_1, ... the function
//! z S_mu(z) has the S-fraction
//!
//! ```text
//! z S_mu(z) = c_0 + (c_1/z)/(1 + (c_2/z)/(1 + (c_3/z)/(1 + ...)))
//! ```
//!
//! with c_0 = m_0, c_1 = m_1, and c_{2k} = -q_k, c_{2k+1} = -e_k from the qd
//! scheme applied to the shifted series m_1, m_2, .... Its even contraction
//! is the J-fraction
//!
//! ```text
//! z S_mu(z) = a_0 + b_1/(z + a_1 + b_2/(z + a_2 + ...))
//! ```
//!
//! with a_0 = c_0, b_1 = c_1, a_1 = c_2, and for k >= 2
//! b_k = -c_{2k-2} c_{2k-1}, a_k = c_{2k-1} + c_{2k}; the depth-m J
//! convergent equals the depth-2m S convergent as a rational function.
//!
//! The qd recurrence loses roughly a digit per level, so the J depth is
//! capped at digits/4 levels; Hankel positivity is checked (exactly, on the
//! dyadic moment values) through the requested depth.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::special::{e1, li};
use rug::{Float, Rational};

/// The two measure families: density e^-u du on [s, t], and Lebesgue du on
/// [a, b].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureSpec {
    ExpDensityInterval { s: f64, t: f64 },
    UniformInterval { a: f64, b: f64 },
}

impl MeasureSpec {
    pub fn support(&self) -> (f64, f64) {
        match *self {
            MeasureSpec::ExpDensityInterval { s, t } => (s, t),
            MeasureSpec::UniformInterval { a, b } => (a, b),
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.support();
        if !(lo < hi) {
            return Err(Error::Domain(format!(
                "measure support needs lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(())
    }

    /// Density value, for the quadrature route.
    fn density(&self, u: &Float, ctx: &PrecisionContext) -> Float {
        match self {
            MeasureSpec::ExpDensityInterval { .. } => (-ctx.real(u)).exp(),
            MeasureSpec::UniformInterval { .. } => ctx.real(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Quadrature,
}

/// Finite moment list m_0..m_N of a measure.
#[derive(Debug, Clone)]
pub struct MomentSequence {
    pub values: Vec<Float>,
    pub measure: MeasureSpec,
    pub provenance: Provenance,
}

impl MomentSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Hankel determinants det[(m_{i+j})_{0<=i,j<=k}] for all k with
    /// 2k <= N, computed exactly on the dyadic moment values.
    pub fn hankel_determinants(&self) -> Vec<Rational> {
        let n = self.values.len();
        let kmax = if n == 0 { return Vec::new() } else { (n - 1) / 2 };
        let exact: Vec<Rational> =
            self.values.iter().map(|v| v.to_rational().unwrap_or_default()).collect();
        (0..=kmax).map(|k| hankel_det(&exact, k)).collect()
    }

    /// Positivity of every checkable Hankel determinant.
    pub fn hankel_positive(&self) -> bool {
        self.hankel_determinants().iter().all(|d| d.cmp0() == std::cmp::Ordering::Greater)
    }
}

fn hankel_det(m: &[Rational], k: usize) -> Rational {
    // Gaussian elimination over exact rationals on the (k+1)x(k+1) matrix
    let n = k + 1;
    let mut a: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| m[i + j].clone()).collect()).collect();
    let mut det = Rational::from(1);
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col].cmp0() != std::cmp::Ordering::Equal);
        let Some(p) = pivot else { return Rational::new() };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].clone().recip();
        for r in col + 1..n {
            let f = Rational::from(&a[r][col] * &inv);
            for c in col..n {
                let sub = Rational::from(&f * &a[col][c]);
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Closed-form moments m_0..m_N.
///
/// Exponential case by the stable integration-by-parts recurrence
/// m_n = n m_{n-1} + s^n e^-s - t^n e^-t (the n = 0 term of the polynomial
/// r_n is included; dropping it is inconsistent with quadrature).
/// Uniform case: m_n = (b^(n+1) - a^(n+1))/(n+1).
pub fn moments(measure: MeasureSpec, n: usize, ctx: &PrecisionContext) -> Result<MomentSequence> {
    measure.validate()?;
    let mut values = Vec::with_capacity(n + 1);
    match measure {
        MeasureSpec::ExpDensityInterval { s, t } => {
            let es = (-ctx.real(s)).exp();
            let et = (-ctx.real(t)).exp();
            let sv = ctx.real(s);
            let tv = ctx.real(t);
            let mut spow = ctx.real(1);
            let mut tpow = ctx.real(1);
            let mut prev = es.clone() - et.clone();
            values.push(prev.clone());
            for k in 1..=n {
                spow *= &sv;
                tpow *= &tv;
                let m = ctx.real(k as u32) * &prev + spow.clone() * &es - tpow.clone() * &et;
                values.push(m.clone());
                prev = m;
            }
        }
        MeasureSpec::UniformInterval { a, b } => {
            let av = ctx.real(a);
            let bv = ctx.real(b);
            let mut apow = av.clone();
            let mut bpow = bv.clone();
            for k in 0..=n {
                let m = (bpow.clone() - apow.clone()) / ctx.real(k as u32 + 1);
                values.push(m);
                apow *= &av;
                bpow *= &bv;
            }
        }
    }
    Ok(MomentSequence { values, measure, provenance: Provenance::ClosedForm })
}

/// Romberg quadrature on extended-precision floats: trapezoid refinement
/// with Richardson extrapolation, stopping when consecutive diagonal
/// estimates agree to eps. Fast for the analytic integrands used here.
pub fn romberg<F: Fn(&Float) -> Float>(
    f: &F,
    a: &Float,
    b: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Float {
    let bits = ctx.bits();
    let len = Float::with_val(bits, b - a);
    let mut rows: Vec<Vec<Float>> = Vec::new();
    let mut trap = (f(a) + f(b)) * len.clone() / 2u32;
    rows.push(vec![trap.clone()]);
    let max_k = 24;
    for k in 1..=max_k {
        let panels = 1u64 << k;
        let h = len.clone() / Float::with_val(bits, panels);
        // midpoints of the previous grid
        let mut mid_sum = Float::new(bits);
        let mut i = 1u64;
        while i < panels {
            let x = Float::with_val(bits, a) + h.clone() * Float::with_val(bits, i);
            mid_sum += f(&x);
            i += 2;
        }
        trap = trap / 2u32 + h * mid_sum;
        let mut row = vec![trap.clone()];
        let mut pow4 = Float::with_val(bits, 1);
        for j in 1..=k {
            pow4 *= 4u32;
            let prev = &rows[k - 1][j - 1];
            let t = (pow4.clone() * &row[j - 1] - prev) / (pow4.clone() - 1u32);
            row.push(t);
        }
        let done = k >= 3 && {
            let d = Float::with_val(bits, &row[k] - &rows[k - 1][k - 1]);
            d.abs() < *eps
        };
        rows.push(row);
        if done {
            break;
        }
    }
    rows.last().unwrap().last().unwrap().clone()
}

/// Moments by adaptive quadrature of u^n d(mu); the independent oracle for
/// the closed forms.
pub fn moments_quadrature(
    measure: MeasureSpec,
    n: usize,
    tol: f64,
    ctx: &PrecisionContext,
) -> Result<MomentSequence> {
    measure.validate()?;
    let (lo, hi) = measure.support();
    let a = ctx.real(lo);
    let b = ctx.real(hi);
    let tolf = ctx.real(tol);
    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let f = |u: &Float| {
            let mut p = ctx.real(1);
            for _ in 0..k {
                p *= u;
            }
            p * measure.density(u, ctx)
        };
        values.push(romberg(&f, &a, &b, &tolf, ctx));
    }
    Ok(MomentSequence { values, measure, provenance: Provenance::Quadrature })
}

/// Raw qd scheme on a power-series coefficient sequence a_0, a_1, ...:
/// returns the triangular arrays q[k-1][j] = q_k^(j), e[k-1][j] = e_k^(j)
/// built from
///
/// ```text
/// q_1^(j) = a_(j+1)/a_j
/// e_k^(j) = e_(k-1)^(j+1) + q_k^(j+1) - q_k^(j)
/// q_(k+1)^(j) = q_k^(j+1) e_k^(j+1) / e_k^(j)
/// ```
#[allow(clippy::type_complexity)]
fn qd_arrays(
    series: &[Float],
    max_pairs: usize,
    ctx: &PrecisionContext,
) -> Result<(Vec<Vec<Float>>, Vec<Vec<Float>>)> {
    let m = series.len();
    let mut q: Vec<Vec<Float>> = Vec::new();
    let mut e: Vec<Vec<Float>> = Vec::new();
    if m < 2 || max_pairs == 0 {
        return Ok((q, e));
    }
    let mut q1 = Vec::with_capacity(m - 1);
    for j in 0..m - 1 {
        if series[j].is_zero() {
            return Err(Error::IllConditionedMoments { level: 1, det: 0.0 });
        }
        q1.push(series[j + 1].clone() / &series[j]);
    }
    q.push(q1);
    let mut k = 1usize;
    while k <= max_pairs {
        // e_k from q_k and e_{k-1}
        let qk = &q[k - 1];
        if qk.len() < 2 {
            break;
        }
        let mut ek = Vec::with_capacity(qk.len() - 1);
        for j in 0..qk.len() - 1 {
            let prev = if k >= 2 { e[k - 2][j + 1].clone() } else { ctx.zero() };
            ek.push(prev + qk[j + 1].clone() - &qk[j]);
        }
        e.push(ek);
        // q_{k+1} from q_k and e_k
        let ek = &e[k - 1];
        if ek.len() < 2 {
            break;
        }
        let mut qn = Vec::with_capacity(ek.len() - 1);
        for j in 0..ek.len() - 1 {
            if ek[j].is_zero() {
                return Err(Error::IllConditionedMoments { level: k, det: 0.0 });
            }
            qn.push(q[k - 1][j + 1].clone() * &ek[j + 1] / &ek[j]);
        }
        q.push(qn);
        k += 1;
    }
    Ok((q, e))
}

/// Highest Hankel level that is meaningful to check for this context.
fn hankel_check_levels(moment_count: usize, ctx: &PrecisionContext) -> usize {
    if moment_count == 0 {
        return 0;
    }
    ((moment_count - 1) / 2).min(qd_depth_cap(ctx))
}

/// S-fraction coefficients [c_1, c_2, ...] of a series sum a_n w^(n+1),
/// in the all-plus convention: c_1 = a_0, c_{2k} = -q_k^(0), c_{2k+1} = -e_k^(0).
fn s_coefficients_of_series(
    series: &[Float],
    max_pairs: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    let (q, e) = qd_arrays(series, max_pairs, ctx)?;
    let mut c = vec![series[0].clone()];
    for k in 0.. {
        if k < q.len() && !q[k].is_empty() {
            c.push(-q[k][0].clone());
        } else {
            break;
        }
        if k < e.len() && !e[k].is_empty() {
            c.push(-e[k][0].clone());
        } else {
            break;
        }
    }
    Ok(c)
}

/// Per-context cap on J-fraction depth: the qd recurrence loses about one
/// digit per level.
pub fn qd_depth_cap(ctx: &PrecisionContext) -> usize {
    (ctx.digits / 4) as usize
}

/// S-fraction coefficients c_0, c_1, ... of z S_mu(z) from a moment
/// sequence, as many as the moments and the precision cap allow.
pub fn qd_scoefficients(moments: &MomentSequence, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if moments.values.is_empty() {
        return Err(Error::Domain("empty moment sequence".into()));
    }
    if !(moments.values[0].clone() > 0) {
        return Err(Error::Domain("m_0 must be positive".into()));
    }
    let dets = moments.hankel_determinants();
    for (k, d) in dets.iter().enumerate().take(hankel_check_levels(moments.len(), ctx) + 1) {
        if d.cmp0() != std::cmp::Ordering::Greater {
            return Err(Error::IllConditionedMoments { level: k, det: d.to_f64() });
        }
    }
    let cap = 2 * qd_depth_cap(ctx);
    let shifted = &moments.values[1..];
    let mut c = vec![moments.values[0].clone()];
    if !shifted.is_empty() {
        c.extend(s_coefficients_of_series(shifted, qd_depth_cap(ctx), ctx)?);
    }
    c.truncate(cap + 1);
    Ok(c)
}

/// J-fraction data for z S_mu(z) = a0 + b1/(z + a1 + b2/(z + a2 + ...)).
#[derive(Debug, Clone)]
pub struct JacobiCoeffs {
    pub a0: Float,
    /// (b_k, a_k) for k = 1, 2, ...
    pub terms: Vec<(Float, Float)>,
}

impl JacobiCoeffs {
    /// Value of the depth-m truncation at z (depth 0 is just a0).
    pub fn eval(&self, depth: usize, z: &Float, ctx: &PrecisionContext) -> Result<Float> {
        if depth > self.terms.len() {
            return Err(Error::DepthCap { requested: depth, cap: self.terms.len() });
        }
        let mut tail = ctx.zero();
        for k in (0..depth).rev() {
            let (b, a) = &self.terms[k];
            let den = ctx.real(z) + ctx.real(a) + tail;
            if den.is_zero() {
                return Err(Error::EvaluationSingularity { level: k + 1 });
            }
            tail = ctx.real(b) / den;
        }
        Ok(ctx.real(&self.a0) + tail)
    }
}

/// Even contraction of the S-coefficients: b_1 = c_1, a_1 = c_2, and for
/// k >= 2, b_k = -c_{2k-2} c_{2k-1}, a_k = c_{2k-1} + c_{2k}.
pub fn contract_to_jacobi(c: &[Float], ctx: &PrecisionContext) -> Result<JacobiCoeffs> {
    if c.len() < 3 {
        return Err(Error::Domain("need at least c_0..c_2 to contract".into()));
    }
    for (i, v) in c.iter().enumerate().skip(1) {
        if v.is_zero() {
            return Err(Error::ContractionDegenerate { index: i });
        }
    }
    let a0 = c[0].clone();
    let mut terms = vec![(c[1].clone(), c[2].clone())];
    let mut k = 2usize;
    while 2 * k - 1 < c.len() {
        let b = -(c[2 * k - 2].clone() * &c[2 * k - 1]);
        let a = if 2 * k < c.len() {
            c[2 * k - 1].clone() + &c[2 * k]
        } else {
            break;
        };
        terms.push((b, a));
        k += 1;
    }
    let _ = ctx;
    Ok(JacobiCoeffs { a0, terms })
}

/// qd table: the raw triangular arrays plus the derived S- and J-coefficients.
#[derive(Debug, Clone)]
pub struct QdTable {
    pub q: Vec<Vec<Float>>,
    pub e: Vec<Vec<Float>>,
    pub c: Vec<Float>,
    pub jacobi: JacobiCoeffs,
}

impl QdTable {
    /// Build from moments, for `levels` J-fraction levels. Moments must
    /// provide m_0..m_(2*levels); levels beyond digits/4 are refused.
    pub fn build(moments: &MomentSequence, levels: usize, ctx: &PrecisionContext) -> Result<Self> {
        let cap = qd_depth_cap(ctx);
        if levels > cap {
            return Err(Error::DepthCap { requested: levels, cap });
        }
        if moments.len() < 2 * levels + 1 {
            return Err(Error::Domain(format!(
                "need {} moments for {} J-levels, got {}",
                2 * levels + 1,
                levels,
                moments.len()
            )));
        }
        let c = qd_scoefficients(moments, ctx)?;
        let (q, e) = qd_arrays(&moments.values[1..], levels, ctx)?;
        let jacobi = contract_to_jacobi(&c[..(2 * levels + 1).min(c.len())], ctx)?;
        Ok(Self { q, e, c, jacobi })
    }

    /// Value of the S-form truncated after c_depth, at z:
    /// c_0 + (c_1/z)/(1 + (c_2/z)/(1 + ...)).
    pub fn eval_s(&self, depth: usize, z: &Float, ctx: &PrecisionContext) -> Result<Float> {
        eval_zs_s_fraction(&self.c, depth, z, ctx)
    }
}

/// Evaluate c_0 + (c_1/z)/(1 + (c_2/z)/(1 + ...)) truncated after c_depth.
pub fn eval_zs_s_fraction(
    c: &[Float],
    depth: usize,
    z: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if depth >= c.len() {
        return Err(Error::DepthCap { requested: depth, cap: c.len().saturating_sub(1) });
    }
    let mut tail = ctx.zero();
    for k in (1..=depth).rev() {
        let den = ctx.real(1) + tail;
        if den.is_zero() {
            return Err(Error::EvaluationSingularity { level: k });
        }
        tail = ctx.real(&c[k]) / ctx.real(z) / den;
    }
    Ok(ctx.real(&c[0]) + tail)
}

/// S-fraction of S_mu itself (not z S_mu), from the unshifted qd scheme:
/// S_mu = (d_1/z)/(1 + (d_2/z)/(1 + ...)) with d_1 = m_0, d_{2k} = -q_k,
/// d_{2k+1} = -e_k.
pub fn unshifted_s_coefficients(
    moments: &MomentSequence,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    s_coefficients_of_series(&moments.values, qd_depth_cap(ctx), ctx)
}

/// The same stream rewritten in the convention with partial denominators
/// 1, 2, 3, ...: numerator over denominator k is d_k * k (k-1) for k >= 2
/// (and d_1 for k = 1). For the uniform measure on [-1, 0] this is the
/// squares pattern 1, 1, 1, 4, 4, 9, 9, ...
pub fn s_fraction_pattern_form(
    moments: &MomentSequence,
    ctx: &PrecisionContext,
) -> Result<Vec<Float>> {
    let d = unshifted_s_coefficients(moments, ctx)?;
    Ok(d.iter()
        .enumerate()
        .map(|(i, v)| {
            let k = i + 1;
            if k == 1 {
                v.clone()
            } else {
                v.clone() * ctx.real((k * (k - 1)) as u64)
            }
        })
        .collect())
}

/// The closed-form qd coefficients for the exponential-density measure.
#[derive(Debug, Clone)]
pub struct PaperCoefficients {
    pub c0: Float,
    pub c1: Float,
    pub c2: Float,
    pub c3: Float,
    pub b2: Float,
}

/// Direct evaluation of the closed forms for (s, t):
///
/// ```text
/// c_0 = e^-s - e^-t
/// c_1 = e^-s (1+s) - e^-t (1+t)
/// c_2 = -(e^-s (2+2s+s^2) - e^-t (2+2t+t^2)) / c_1
/// c_3 = -(e^-2s (2+4s+s^2) + e^-2t (2+4t+t^2) - e^-(s+t) g(s,t))
///       / (c_1 (e^-s (2+2s+s^2) - e^-t (2+2t+t^2)))
/// b_2 = -c_2 c_3
/// ```
///
/// with the symmetric polynomial
/// g = s^3 t + s t^3 - 2 s^2 t^2 + s^3 + t^3 - s^2 t - s t^2 - s^2 - t^2
///   + 4 s t + 4 s + 4 t + 4,
/// equivalently c_2 = -m_2/m_1 and c_3 = (m_2^2 - m_1 m_3)/(m_1 m_2).
pub fn paper_coefficient_formulas(
    s: f64,
    t: f64,
    ctx: &PrecisionContext,
) -> Result<PaperCoefficients> {
    if !(s < t) {
        return Err(Error::Domain(format!("need s < t, got ({s}, {t})")));
    }
    let sv = ctx.real(s);
    let tv = ctx.real(t);
    let es = (-sv.clone()).exp();
    let et = (-tv.clone()).exp();
    let r2 = |x: &Float| ctx.real(2) + 2u32 * x.clone() + x.clone().square();
    let c0 = es.clone() - et.clone();
    let c1 = es.clone() * (ctx.real(1) + &sv) - et.clone() * (ctx.real(1) + &tv);
    if c1.is_zero() {
        return Err(Error::Domain("degenerate parameters: c_1 vanishes".into()));
    }
    let m2 = es.clone() * r2(&sv) - et.clone() * r2(&tv);
    if m2.is_zero() {
        return Err(Error::Domain("degenerate parameters: m_2 vanishes".into()));
    }
    let c2 = -(m2.clone() / c1.clone());
    let quad = |x: &Float| ctx.real(2) + 4u32 * x.clone() + x.clone().square();
    let g = {
        let s3 = sv.clone().square() * &sv;
        let t3 = tv.clone().square() * &tv;
        let s2 = sv.clone().square();
        let t2 = tv.clone().square();
        let st = sv.clone() * &tv;
        s3.clone() * &tv + sv.clone() * &t3 - 2u32 * s2.clone() * &t2 + s3 + t3
            - s2.clone() * &tv
            - sv.clone() * &t2
            - s2
            - t2
            + 4u32 * st
            + 4u32 * sv.clone()
            + 4u32 * tv.clone()
            + ctx.real(4)
    };
    let num = es.clone().square() * quad(&sv) + et.clone().square() * quad(&tv) - es * et * g;
    let c3 = -(num / (c1.clone() * m2));
    let b2 = -(c2.clone() * &c3);
    Ok(PaperCoefficients { c0, c1, c2, c3, b2 })
}

/// Stieltjes transform of the exponential measure on [s, t]:
/// S_mu(z) = -e^-z (E1(s - z) - E1(t - z)) for real z off the support.
pub fn stieltjes_exp_interval(
    z: &Float,
    s: f64,
    t: f64,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let zf = z.to_f64();
    if zf >= s && zf <= t {
        return Err(Error::OnSupport { z: zf, s, t });
    }
    let a = e1(&(ctx.real(s) - ctx.real(z)), ctx)?;
    let b = e1(&(ctx.real(t) - ctx.real(z)), ctx)?;
    Ok(-((-ctx.real(z)).exp() * (a - b)))
}

/// The same transform through the logarithmic integral:
/// S_mu(z) = (li(e^(z-s)) - li(e^(z-t)))/e^z.
pub fn stieltjes_exp_interval_via_li(
    z: &Float,
    s: f64,
    t: f64,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let zf = z.to_f64();
    if zf >= s && zf <= t {
        return Err(Error::OnSupport { z: zf, s, t });
    }
    let a = li(&(ctx.real(z) - ctx.real(s)).exp(), ctx)?;
    let b = li(&(ctx.real(z) - ctx.real(t)).exp(), ctx)?;
    Ok((a - b) / ctx.real(z).exp())
}
