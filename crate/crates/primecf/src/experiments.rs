//! The verification harness: each experiment evaluates one cluster of
//! desk-scale numerical claims, records observed/reference pairs per grid
//! point, and rolls the per-row tolerance verdicts into a single pass flag.
//! Reports serialize to CSV with a fixed schema.
//!
//! Tolerance bands on asymptotic ratios are calibrated at a standard largest
//! grid point (1e8 for sieve-backed ratios, 1e12 for the li/Ri ratios) and
//! justified by the magnitude of the next-order term there. Runs whose grid
//! stops short of the calibration point get a widened band, flagged
//! "/reduced-band" in the series name, so a `--sieve-limit 1e6` run still
//! completes meaningfully.
//!
//! Reference and observed columns always come from disjoint code paths: sieve
//! counts vs special-function series, closed-form qd coefficients vs the
//! Stieltjes transform through E1, and so on.

use crate::contfrac::{family_log_j, family_prime_j, family_uniform_sym};
use crate::error::{Error, Result};
use crate::moments::{moments, stieltjes_exp_interval, MeasureSpec, QdTable};
use crate::precision::{MpComplex, PrecisionContext};
use crate::sieve::SieveHandle;
use crate::special::{ei, li, ri_gram, MertensFunctionTable};
use rug::ops::Pow;
use rug::Float;
use std::io::Write;
use std::path::Path;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One grid point of one metric.
#[derive(Debug, Clone)]
pub struct ReportRow {
    /// Metric name within the experiment (CSV id column is experiment/series).
    pub series: String,
    pub grid_value: f64,
    pub observed: f64,
    pub reference: f64,
    /// Ratio or residual, depending on the metric.
    pub residual: f64,
    /// Half-width of the acceptance band around `reference`
    /// (infinite for report-only rows).
    pub tolerance: f64,
    pub pass: bool,
}

impl ReportRow {
    fn bounded(series: &str, grid: f64, observed: f64, lo: f64, hi: f64) -> Self {
        let mid = 0.5 * (lo + hi);
        Self {
            series: series.to_string(),
            grid_value: grid,
            observed,
            reference: mid,
            residual: observed - mid,
            tolerance: 0.5 * (hi - lo),
            pass: observed >= lo && observed <= hi && observed.is_finite(),
        }
    }

    fn near(series: &str, grid: f64, observed: f64, reference: f64, tol: f64) -> Self {
        Self {
            series: series.to_string(),
            grid_value: grid,
            observed,
            reference,
            residual: observed - reference,
            tolerance: tol,
            pass: (observed - reference).abs() <= tol && observed.is_finite(),
        }
    }

    fn info(series: &str, grid: f64, observed: f64, reference: f64) -> Self {
        Self {
            series: series.to_string(),
            grid_value: grid,
            observed,
            reference,
            residual: observed - reference,
            tolerance: f64::INFINITY,
            pass: true,
        }
    }

    /// Pass when `observed` is strictly smaller in magnitude than `reference`.
    fn shrinks(series: &str, grid: f64, observed: f64, reference: f64) -> Self {
        Self {
            series: series.to_string(),
            grid_value: grid,
            observed,
            reference,
            residual: observed - reference,
            tolerance: 0.0,
            pass: observed.abs() < reference.abs(),
        }
    }
}

/// Result of one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub experiment_id: String,
    pub rows: Vec<ReportRow>,
    /// Headline tolerance for the experiment (the tightest band used).
    pub tolerance: f64,
    pub pass: bool,
    /// Free-form remarks (reduced bands, noise floors); not part of the CSV.
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn from_rows(id: &str, rows: Vec<ReportRow>, notes: Vec<String>) -> Self {
        let tolerance = rows
            .iter()
            .map(|r| r.tolerance)
            .filter(|t| t.is_finite())
            .fold(f64::INFINITY, f64::min);
        let pass = rows.iter().all(|r| r.pass);
        Self { experiment_id: id.to_string(), rows, tolerance, pass, notes }
    }
}

/// Write the report in the fixed schema
/// `experiment_id,grid_value,observed,reference,residual,tolerance,pass`.
pub fn emit_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "experiment_id,grid_value,observed,reference,residual,tolerance,pass")?;
    for r in &report.rows {
        writeln!(
            out,
            "{}/{},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{}",
            report.experiment_id,
            r.series,
            r.grid_value,
            r.observed,
            r.reference,
            r.residual,
            r.tolerance,
            r.pass
        )?;
    }
    Ok(())
}

/// Log-spaced grid from lo to hi (inclusive) with the given density.
pub fn log_grid(lo: f64, hi: f64, points_per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && points_per_decade >= 1);
    let decades = (hi / lo).log10();
    let n = ((decades * points_per_decade as f64).ceil() as usize).max(1);
    let mut v: Vec<f64> = (0..=n).map(|i| lo * 10f64.powf(decades * i as f64 / n as f64)).collect();
    *v.last_mut().unwrap() = hi;
    v
}

fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(|t| f(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(|t| f(t)).collect()
    }
}

/// Least-squares slope and intercept of y against x.
fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        var += (x - mx) * (x - mx);
    }
    let slope = cov / var;
    (slope, my - slope * mx)
}

// Calibration of the relative-expansion ratio bands: (series, x_cal, hi).
// Each upper bound sits above the next-order correction at x_cal.
const RATIO_BANDS: &[(&str, f64, f64)] = &[
    ("Pi_minus_pi_over_half_pi_sqrt", 1e8, 1.15),
    ("Pi_correction2_over_third_pi_cbrt", 1e8, 1.50),
    ("li_minus_Ri_over_sqrt_over_log", 1e12, 1.12),
    ("li_Ri_correction2_over_third_li_cbrt", 1e12, 1.05),
    ("pi_star_minus_pi_over_pi_sqrt", 1e8, 1.20),
];

fn band_for(series: &str, x_max: f64) -> (f64, String) {
    let (_, x_cal, hi) = RATIO_BANDS.iter().find(|(s, _, _)| *s == series).unwrap();
    if x_max >= x_cal * 0.999 {
        (*hi, series.to_string())
    } else {
        // grid stops short of the calibration point: widen by the slowest
        // correction scale x^(-1/6) plus margin
        let widened = 1.0 + (hi - 1.0) * (x_cal / x_max).powf(1.0 / 6.0) * 1.5;
        (widened, format!("{series}/reduced-band"))
    }
}

/// Ratios of the relative asymptotic expansions:
/// (Pi-pi)/(pi(sqrt x)/2), (Pi-pi-pi(sqrt x)/2)/(pi(x^(1/3))/3),
/// (li-Ri)/(sqrt x/log x), (li-Ri-li(sqrt x)/2)/(li(x^(1/3))/3),
/// (pi*-pi)/pi(sqrt x). Sieve ratios run on `sieve_grid`, the li/Ri ratios
/// on `liri_grid` (no sieve needed). Each ratio must sit in its band at the
/// largest grid point and be strictly closer to 1 there than at the smallest.
pub fn check_relative_expansions(
    sieve: &SieveHandle,
    sieve_grid: &[f64],
    liri_grid: &[f64],
    ctx: &PrecisionContext,
) -> Result<ExperimentReport> {
    if sieve_grid.is_empty() || liri_grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut series_values: Vec<(String, Vec<(f64, f64)>)> = Vec::new();

    // sieve-backed ratios
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r5 = Vec::new();
    for &x in sieve_grid {
        let pi = sieve.prime_count(x)? as f64;
        let pi_sqrt = sieve.prime_count(x.sqrt())? as f64;
        let pi_cbrt = sieve.prime_count(x.cbrt())? as f64;
        let big_pi = sieve.riemann_prime_count(x, ctx)?.to_f64();
        let star = sieve.prime_power_count(x)?.pi_star() as f64;
        r1.push((x, (big_pi - pi) / (0.5 * pi_sqrt)));
        r2.push((x, (big_pi - pi - 0.5 * pi_sqrt) / (pi_cbrt / 3.0)));
        r5.push((x, (star - pi) / pi_sqrt));
    }
    series_values.push(("Pi_minus_pi_over_half_pi_sqrt".into(), r1));
    series_values.push(("Pi_correction2_over_third_pi_cbrt".into(), r2));
    series_values.push(("pi_star_minus_pi_over_pi_sqrt".into(), r5));

    // li/Ri ratios, special functions only
    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    for &x in liri_grid {
        let xv = ctx.real(x);
        let liv = li(&xv, ctx)?;
        let riv = ri_gram(&xv, ctx)?;
        let li_sqrt = li(&ctx.real(x.sqrt()), ctx)?;
        let li_cbrt = li(&ctx.real(x.cbrt()), ctx)?;
        let diff = liv.clone() - &riv;
        let scale1 = ctx.real(x).sqrt() / ctx.real(x).ln();
        r3.push((x, (diff.clone() / scale1).to_f64()));
        let diff2 = diff - li_sqrt / 2u32;
        r4.push((x, (diff2 / (li_cbrt / 3u32)).to_f64()));
    }
    series_values.push(("li_minus_Ri_over_sqrt_over_log".into(), r3));
    series_values.push(("li_Ri_correction2_over_third_li_cbrt".into(), r4));

    for (name, vals) in &series_values {
        let (x_max, last) = *vals.last().unwrap();
        let (_, first) = *vals.first().unwrap();
        let (hi, label) = band_for(name, x_max);
        if label.ends_with("/reduced-band") {
            notes.push(format!(
                "{name}: grid max {x_max:.3e} below calibration; band widened to [1, {hi:.4}]"
            ));
        }
        for &(x, v) in vals {
            if x == x_max {
                rows.push(ReportRow::bounded(&label, x, v, 1.0, hi));
            } else {
                rows.push(ReportRow::info(name, x, v, 1.0));
            }
        }
        rows.push(ReportRow::shrinks(
            &format!("{name}/approaches-1"),
            x_max,
            last - 1.0,
            first - 1.0,
        ));
    }
    Ok(ExperimentReport::from_rows("expansions", rows, notes))
}

/// Output of the Legendre-constant study.
#[derive(Debug, Clone)]
pub struct LegendreStudy {
    pub report: ExperimentReport,
    /// Lin-log curves for the three comparison figures.
    pub figures: ExperimentReport,
    pub argmax: f64,
    pub max_value: f64,
    pub argmin_derivative: f64,
    pub min_derivative: f64,
}

fn legendre_f(x: &Float, ctx: &PrecisionContext) -> Float {
    let r = ri_gram(x, ctx).expect("x > 0");
    x.clone().ln() - x.clone() / r
}

fn legendre_f_prime(x: &Float, ctx: &PrecisionContext) -> Float {
    // central differences with step x * 10^-(digits/3), per the precision
    // demanded by the ~1e-9 target
    let h = x.clone() * ctx.real(10).pow(-((ctx.digits / 3) as i32));
    let fp = legendre_f(&(x.clone() + &h), ctx);
    let fm = legendre_f(&(x.clone() - &h), ctx);
    (fp - fm) / (2u32 * h)
}

/// Golden-section extremum refinement on [lo, hi]; `sign` +1 maximizes,
/// -1 minimizes. Returns (argext, value).
fn golden_section(
    f: &(dyn Fn(&Float) -> Float + Sync),
    lo: f64,
    hi: f64,
    sign: f64,
    iters: usize,
    ctx: &PrecisionContext,
) -> (f64, f64) {
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = sign * f(&ctx.real(c)).to_f64();
    let mut fd = sign * f(&ctx.real(d)).to_f64();
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = sign * f(&ctx.real(c)).to_f64();
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = sign * f(&ctx.real(d)).to_f64();
        }
        if (b - a) < 1e-7 * a.abs().max(1.0) {
            break;
        }
    }
    let xm = 0.5 * (a + b);
    (xm, sign * (sign * f(&ctx.real(xm)).to_f64()))
}

/// The Legendre-constant study: maximum of f(x) = log x - x/Ri(x) (refined by
/// golden section), minimum of f' (central differences), and the lin-log
/// comparison curves against pi and li where the sieve permits.
pub fn legendre_constant_study(
    x_lo: f64,
    x_hi: f64,
    points_per_decade: usize,
    sieve: Option<&SieveHandle>,
    ctx: &PrecisionContext,
) -> Result<LegendreStudy> {
    if !(1.0 < x_lo && x_lo < x_hi) {
        return Err(Error::Domain("legendre study needs 1 < x_lo < x_hi".into()));
    }
    let grid = log_grid(x_lo, x_hi, points_per_decade);
    let f_vals: Vec<f64> = par_map(&grid, |x| legendre_f(&ctx.real(*x), ctx).to_f64());
    let fp_vals: Vec<f64> = par_map(&grid, |x| legendre_f_prime(&ctx.real(*x), ctx).to_f64());

    // refine the maximum of f around the best grid point
    let imax = f_vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let lo = grid[imax.saturating_sub(1)];
    let hi = grid[(imax + 1).min(grid.len() - 1)];
    let (argmax, max_value) =
        golden_section(&|x: &Float| legendre_f(x, ctx), lo, hi, 1.0, 200, ctx);

    // refine the minimum of f'
    let imin = fp_vals
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let lo = grid[imin.saturating_sub(1)];
    let hi = grid[(imin + 1).min(grid.len() - 1)];
    let (argmin_derivative, min_derivative) =
        golden_section(&|x: &Float| legendre_f_prime(x, ctx), lo, hi, -1.0, 200, ctx);

    let grid_max = f_vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(max_value);
    let mut rows = vec![
        ReportRow::near("max_f", argmax, max_value, 1.08356, 5e-4),
        ReportRow::bounded("argmax", argmax, argmax, 2.0e5, 2.4e5),
        ReportRow::near("min_fprime", argmin_derivative, min_derivative, -3.68e-9, 0.3 * 3.68e-9),
        ReportRow::bounded("argmin_fprime", argmin_derivative, argmin_derivative, 3.0e5, 7.0e5),
        ReportRow::bounded("grid_max_below_legendre_L", grid_max, grid_max, 0.0, 1.08366),
    ];
    for (x, v) in grid.iter().zip(&f_vals) {
        rows.push(ReportRow::info("f", *x, *v, 1.0));
    }
    let report = ExperimentReport::from_rows("legendre", rows, Vec::new());

    // figure curves on the lin-log scale (abscissa w = log x)
    let mut fig_rows = Vec::new();
    let fig_grid: Vec<f64> = {
        let cap = sieve.map(|s| s.limit() as f64).unwrap_or(x_hi).min(x_hi);
        log_grid(x_lo, cap, points_per_decade.min(20))
    };
    for &x in &fig_grid {
        let w = x.ln();
        let xv = ctx.real(x);
        let curve_ri = w - 1.0 - x / ri_gram(&xv, ctx)?.to_f64();
        fig_rows.push(ReportRow::info("x_minus_1_minus_exp_over_Ri", w, curve_ri, 0.0));
        let curve_li = w - 1.0 - x / li(&xv, ctx)?.to_f64();
        fig_rows.push(ReportRow::info("x_minus_1_minus_exp_over_li", w, curve_li, 0.0));
        if let Some(s) = sieve {
            let pi = s.prime_count(x)? as f64;
            if pi > 0.0 {
                fig_rows.push(ReportRow::info(
                    "x_minus_1_minus_exp_over_pi",
                    w,
                    w - 1.0 - x / pi,
                    0.0,
                ));
            }
        }
    }
    let figures = ExperimentReport::from_rows("legendre_figures", fig_rows, Vec::new());

    Ok(LegendreStudy { report, figures, argmax, max_value, argmin_derivative, min_derivative })
}

/// Graph data for G(s) on [-2, 2) from exactly `terms` Maclaurin terms, with
/// the endpoint identities G(0) = M and G(1) = gamma as pass criteria and a
/// finite value at s = -2.
pub fn g_curve(points: usize, terms: usize, ctx: &PrecisionContext) -> Result<ExperimentReport> {
    if points < 2 {
        return Err(Error::Domain("g_curve needs at least 2 points".into()));
    }
    let table = MertensFunctionTable::build(terms, ctx);
    let mut rows = Vec::new();
    for i in 0..points {
        let s = -2.0 + 4.0 * i as f64 / points as f64;
        let v = table.g(&ctx.real(s), terms, ctx)?.to_f64();
        rows.push(ReportRow::info("G", s, v, 0.0));
    }
    let g0 = table.g(&ctx.real(0), terms, ctx)?;
    rows.push(ReportRow::near("G_at_0_minus_M", 0.0, (g0 - table.base()).to_f64(), 0.0, 1e-10));
    let g1 = table.g(&ctx.real(1), terms, ctx)?;
    rows.push(ReportRow::near(
        "G_at_1_minus_gamma",
        1.0,
        (g1 - ctx.euler_gamma()).to_f64(),
        0.0,
        1e-6,
    ));
    let gm2 = table.g(&ctx.real(-2), terms, ctx)?.to_f64();
    rows.push(ReportRow {
        series: "G_finite_at_minus_2".into(),
        grid_value: -2.0,
        observed: gm2,
        reference: 0.0,
        residual: gm2,
        tolerance: f64::INFINITY,
        pass: gm2.is_finite(),
    });
    Ok(ExperimentReport::from_rows("gcurve", rows, Vec::new()))
}

/// Compare pi_s(x) against the smooth -E1(-(s+1) log x) and against the
/// prefactored J-approximants x^(s+1) w_m((s+1) log x).
///
/// Against the smooth reference the approximant errors must shrink strictly
/// with depth; against sieve truth the prime-counting fluctuation sets a
/// noise floor, so only first-vs-last shrinkage is gated.
pub fn pi_s_approximant_errors(
    s: f64,
    depths: &[usize],
    x_grid: &[f64],
    sieve: &SieveHandle,
    ctx: &PrecisionContext,
) -> Result<ExperimentReport> {
    if s <= -1.0 {
        return Err(Error::Domain("pi_s experiment needs s > -1".into()));
    }
    if depths.is_empty() || x_grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let cf = family_prime_j(1)?;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for &x in x_grid {
        let sv = MpComplex::from_f64(ctx, s, 0.0);
        let observed = sieve.power_sum(x, &sv, ctx)?.re;
        let u = ctx.real(x).ln() * ctx.real(s + 1.0);
        // -E1(-(s+1) log x) = Ei((s+1) log x)
        let smooth = ei(&u, ctx)?;
        let rel_e1 = ((observed.clone() - &smooth) / &smooth).to_f64().abs();
        rows.push(ReportRow::info("sieve_vs_E1_rel", x, rel_e1, 0.0));

        let mut prev_smooth_err = f64::INFINITY;
        let mut first_smooth_err = f64::NAN;
        let mut first_sieve_err = f64::NAN;
        let mut last_sieve_err = f64::NAN;
        for (i, &m) in depths.iter().enumerate() {
            let w = cf.eval_backward(m, &u, ctx)?;
            let approx = u.clone().exp() * w; // x^(s+1) * w_m
            let err_sieve = ((approx.clone() - &observed) / &observed).to_f64().abs();
            let err_smooth = ((approx - &smooth) / &smooth).to_f64().abs();
            rows.push(ReportRow::info(&format!("w{m}_vs_sieve_rel"), x, err_sieve, 0.0));
            if x == *x_grid.last().unwrap() {
                rows.push(ReportRow::shrinks(
                    &format!("w{m}_vs_smooth_shrinks"),
                    x,
                    err_smooth,
                    prev_smooth_err,
                ));
            }
            prev_smooth_err = err_smooth;
            if i == 0 {
                first_smooth_err = err_smooth;
                first_sieve_err = err_sieve;
            }
            last_sieve_err = err_sieve;
        }
        if x == *x_grid.last().unwrap() {
            // the sieve only resolves depth improvements above its own
            // prime-counting fluctuation; below that the comparison is
            // reported but not gated
            if first_smooth_err > 3.0 * rel_e1 {
                rows.push(ReportRow::shrinks(
                    "deepest_vs_first_sieve",
                    x,
                    last_sieve_err,
                    first_sieve_err,
                ));
            } else {
                rows.push(ReportRow::info(
                    "deepest_vs_first_sieve/below-noise-floor",
                    x,
                    last_sieve_err,
                    first_sieve_err,
                ));
                notes.push(format!(
                    "x={x:.1e}: first approximant error {first_smooth_err:.1e} within 3x of the sieve fluctuation {rel_e1:.1e}; sieve depth comparison not gated"
                ));
            }
        }
    }
    // PNT-quality agreement with the smooth reference at the largest x
    let x_max = *x_grid.last().unwrap();
    let last_rel = rows
        .iter()
        .filter(|r| r.series == "sieve_vs_E1_rel" && r.grid_value == x_max)
        .map(|r| r.observed)
        .next()
        .unwrap();
    rows.push(ReportRow::near("sieve_vs_E1_rel_at_max", x_max, last_rel, 0.0, 1e-2));
    notes.push(format!(
        "prime-count fluctuation sets a ~1/sqrt(x) noise floor on sieve comparisons (x_max={x_max:.1e})"
    ));
    Ok(ExperimentReport::from_rows("pis", rows, notes))
}

/// Interval reciprocal sums against log log(ax) - log log x, the Jacobi
/// log-family at log_a x, the Mertens-product variants (s = 1 and s = -1),
/// and the symmetric two-sided interval against the symmetric family.
pub fn interval_reciprocal_cf_check(
    a: f64,
    x_grid: &[f64],
    sieve: &SieveHandle,
    ctx: &PrecisionContext,
) -> Result<ExperimentReport> {
    if a <= 1.0 {
        return Err(Error::Domain("interval check needs a > 1".into()));
    }
    if x_grid.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let lj = family_log_j();
    let us = family_uniform_sym();
    let mut rows = Vec::new();
    let log_a = ctx.real(a).ln();
    let mut recip_resids = Vec::new();
    let mut sym_resids = Vec::new();
    for &x in x_grid {
        let obs = sieve.reciprocal_sum_interval(x, a, ctx)?;
        let loglog = (ctx.real(a * x).ln().ln() - ctx.real(x).ln().ln()).to_f64();
        let u = ctx.real(x).ln() / &log_a; // log_a x
        let cf = lj.eval_backward(14, &u, ctx)?.to_f64();
        let r_log = obs.to_f64() - loglog;
        rows.push(ReportRow::info("recip_vs_loglog", x, obs.to_f64(), loglog));
        rows.push(ReportRow::info("recip_vs_logj_cf", x, obs.to_f64(), cf));
        recip_resids.push((x, r_log));

        // Mertens-product variants at s = 1 and s = -1
        for s in [1.0f64, -1.0] {
            let vm = sieve.log_mertens_product_interval(x, a, s, ctx)?.to_f64();
            let r_m = vm - loglog;
            let label = if s > 0.0 { "mertens_s1_vs_loglog" } else { "mertens_sm1_vs_loglog" };
            rows.push(ReportRow::info(label, x, vm, loglog));
            if x == *x_grid.last().unwrap() {
                // within 2x the reciprocal-sum residual, with slack for the
                // fluctuation sign
                let bound = 2.0 * r_log.abs() + 1e-3;
                rows.push(ReportRow::near(&format!("{label}_band"), x, r_m, 0.0, bound));
            }
        }

        // symmetric variant: sum over (x/a, a x] vs the symmetric family
        let sym_obs = sieve.reciprocal_sum_interval(x / a, a * a, ctx)?.to_f64();
        let sym_ref = us.eval_backward(14, &u, ctx)?.to_f64();
        rows.push(ReportRow::info("sym_recip_vs_uniform_cf", x, sym_obs, sym_ref));
        sym_resids.push((x, sym_obs - sym_ref));
    }
    let (x_last, r_last) = *recip_resids.last().unwrap();
    let (_, r_first) = *recip_resids.first().unwrap();
    rows.push(ReportRow::shrinks("recip_residual_shrinks", x_last, r_last, r_first));
    if x_last >= 1e7 {
        rows.push(ReportRow::near("recip_residual_small_at_max", x_last, r_last, 0.0, 1e-2));
    }
    let (sx, s_last) = *sym_resids.last().unwrap();
    let (_, s_first) = *sym_resids.first().unwrap();
    rows.push(ReportRow::shrinks("sym_residual_shrinks", sx, s_last, s_first));
    Ok(ExperimentReport::from_rows("intervals", rows, Vec::new()))
}

/// The prime-gap table: J-approximants of (pi(ax)-pi(bx))/(x/log x) built by
/// the qd pipeline from the measure on [-log a, -log b], compared with sieve
/// truth, plus the error-law slope fits.
///
/// Depth-0 residuals are measured against sieve truth (the 1/log x term
/// dominates the prime fluctuation). Depth >= 1 residuals are measured
/// against the smooth Stieltjes transform: at desk scale the fluctuation
/// exceeds the (log x)^-3 term by orders of magnitude, so the sieve carries
/// no information about it.
pub fn prime_gap_cf_table(
    a: f64,
    b: f64,
    depths: &[usize],
    x_grid: &[f64],
    sieve: &SieveHandle,
    ctx: &PrecisionContext,
) -> Result<ExperimentReport> {
    if !(a > b && b > 0.0) {
        return Err(Error::Domain("prime gap needs a > b > 0".into()));
    }
    if x_grid.is_empty() || depths.is_empty() {
        return Err(Error::Domain("empty grid".into()));
    }
    let (s, t) = (-a.ln(), -b.ln());
    let max_depth = depths.iter().copied().max().unwrap().max(2);
    let ms = moments(MeasureSpec::ExpDensityInterval { s, t }, 2 * (max_depth + 1), ctx)?;
    let table = QdTable::build(&ms, max_depth + 1, ctx)?;

    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut sieve_resid0 = Vec::new();
    let mut smooth_resids: Vec<Vec<(f64, f64)>> = vec![Vec::new(); depths.len()];
    for &x in x_grid {
        let z = ctx.real(x).ln();
        let count = sieve.prime_count(a * x)? as i64 - sieve.prime_count(b * x)? as i64;
        rows.push(ReportRow::info("count", x, count as f64, 0.0));
        let observed = ctx.real(count) * &z / ctx.real(x);
        let smooth = stieltjes_exp_interval(&z, s, t, ctx)? * &z;
        for (di, &m) in depths.iter().enumerate() {
            let approx = table.jacobi.eval(m, &z, ctx)?;
            let r_sieve = (observed.clone() - &approx).to_f64();
            let r_smooth = (smooth.clone() - &approx).to_f64();
            rows.push(ReportRow::info(&format!("resid{m}_sieve"), x, r_sieve, 0.0));
            rows.push(ReportRow::info(&format!("resid{m}_smooth"), x, r_smooth, 0.0));
            if m == 0 {
                sieve_resid0.push((x, r_sieve));
            }
            smooth_resids[di].push((x, r_smooth));
        }
    }

    // slope fits of log|residual| against log log x
    let fit = |vals: &[(f64, f64)]| -> Option<(f64, f64)> {
        let pts: Vec<(f64, f64)> = vals
            .iter()
            .filter(|(_, r)| r.abs() > 0.0)
            .map(|(x, r)| (x.ln().ln(), r.abs().ln()))
            .collect();
        if pts.len() < 3 {
            return None;
        }
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        Some(fit_line(&xs, &ys))
    };

    let x_max = *x_grid.last().unwrap();
    if depths.contains(&0) {
        if let Some((slope, intercept)) = fit(&sieve_resid0) {
            rows.push(ReportRow::near("slope_depth0_sieve", x_max, slope, -1.0, 0.1));
            let magnitude = intercept.exp();
            let expect = table.jacobi.terms[0].0.to_f64().abs();
            rows.push(ReportRow::bounded(
                "const_depth0_magnitude",
                x_max,
                magnitude / expect,
                0.5,
                2.0,
            ));
            let sign = sieve_resid0.last().unwrap().1.signum();
            rows.push(ReportRow::near(
                "const_depth0_sign",
                x_max,
                sign,
                table.jacobi.terms[0].0.to_f64().signum(),
                0.0,
            ));
        }
    }
    for (di, &m) in depths.iter().enumerate() {
        if m == 0 {
            continue;
        }
        if let Some((slope, intercept)) = fit(&smooth_resids[di]) {
            let target = -(2.0 * m as f64 + 1.0);
            let tol = if m == 1 { 0.1 } else { 0.5 };
            rows.push(ReportRow::near(&format!("slope_depth{m}_smooth"), x_max, slope, target, tol));
            // expected constant magnitude: |b_1 ... b_{m+1}|
            let mut c = ctx.real(1);
            for k in 0..=m {
                c *= &table.jacobi.terms[k].0;
            }
            let expect = c.to_f64().abs();
            if expect > 0.0 {
                // higher depths see more next-order contamination in the
                // intercept; the band only guards order of magnitude
                let (lo, hi) = if m == 1 { (0.5, 2.0) } else { (0.3, 3.0) };
                rows.push(ReportRow::bounded(
                    &format!("const_depth{m}_magnitude"),
                    x_max,
                    intercept.exp() / expect,
                    lo,
                    hi,
                ));
            }
        }
    }
    notes.push(
        "depth>=1 slopes fit against the smooth transform; the sieve fluctuation dominates those terms at desk scale"
            .to_string(),
    );
    Ok(ExperimentReport::from_rows("gaps", rows, notes))
}

/// The closed-form constant identities: gamma = M + H, G(0) = M, H(0) =
/// P(2)/2 with its 13-digit reference, M against its 22-digit reference.
pub fn identities_check(ctx: &PrecisionContext) -> Result<ExperimentReport> {
    let table = MertensFunctionTable::build(450, ctx);
    let m = table.base().clone();
    let h = crate::special::constant_h(ctx);
    let gamma = ctx.euler_gamma();
    let mut rows = Vec::new();
    rows.push(ReportRow::near(
        "M_reference",
        0.0,
        (m.clone() - ctx.real(Float::parse("0.2614972128476427837554").unwrap())).to_f64(),
        0.0,
        1e-12,
    ));
    rows.push(ReportRow::near(
        "H_reference",
        0.0,
        (h.clone() - ctx.real(0.3157184519f64)).to_f64(),
        0.0,
        1e-9,
    ));
    rows.push(ReportRow::near(
        "gamma_minus_M_minus_H",
        0.0,
        (gamma.clone() - &m - &h).to_f64(),
        0.0,
        1e-10,
    ));
    let g0 = table.g(&ctx.real(0), 450, ctx)?;
    rows.push(ReportRow::near("G0_minus_M", 0.0, (g0 - &m).to_f64(), 0.0, 1e-12));
    let h0 = table.h(&ctx.real(0), 450, ctx)?;
    rows.push(ReportRow::near(
        "H0_reference",
        0.0,
        (h0 - ctx.real(Float::parse("0.2261237100205").unwrap())).to_f64(),
        0.0,
        1e-11,
    ));
    Ok(ExperimentReport::from_rows("identities", rows, Vec::new()))
}
