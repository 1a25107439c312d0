//! Command-line front end: point evaluation of the counting and special
//! functions, exact continued-fraction convergents, the qd pipeline, and the
//! verification suites with CSV output.

use clap::{Args, Parser, Subcommand};
use primecf::contfrac::{
    family_log_j, family_log_s, family_log_s_alt, family_prime_j, family_prime_s,
    family_uniform_sym, ContinuedFraction,
};
use primecf::experiments::{self, ExperimentReport};
use primecf::moments::{
    contract_to_jacobi, moments, qd_scoefficients, s_fraction_pattern_form, MeasureSpec,
};
use primecf::precision::{MpComplex, PrecisionContext};
use primecf::sieve::SieveBuilder;
use primecf::special;
use primecf::SieveHandle;
use rug::Float;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "primecf", about = "prime counting functions and their continued-fraction approximants", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Decimal working precision (env PRIMECF_DIGITS overrides the default)
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Sieve limit; scientific notation accepted
    #[arg(long, global = true, default_value = "1e8", value_parser = parse_count)]
    sieve_limit: u64,
    /// Directory for CSV output
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

impl Config {
    fn ctx(&self) -> PrecisionContext {
        let digits = self
            .digits
            .or_else(|| std::env::var("PRIMECF_DIGITS").ok().and_then(|v| v.parse().ok()))
            .unwrap_or(30);
        PrecisionContext::new(digits)
    }
}

fn parse_count(v: &str) -> Result<u64, String> {
    let f: f64 = v.parse().map_err(|e| format!("{e}"))?;
    if !(f >= 0.0 && f.is_finite()) {
        return Err(format!("bad count {v}"));
    }
    Ok(f as u64)
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at a point
    Eval {
        /// pi, pi_star, pi_tilde, Pi, pi_s, li, Ri, R, Ein, Ei, E1, zeta,
        /// prime_zeta, G, Hfun
        function: String,
        /// Argument (scientific notation accepted)
        x: f64,
        /// Exponent for pi_s, as "re" or "re,im"
        #[arg(long)]
        s: Option<String>,
        /// Maclaurin terms for G and Hfun
        #[arg(long, default_value_t = 400)]
        terms: usize,
    },
    /// Print exact convergents and the value of a coefficient family
    Cf {
        /// prime-s, prime-j, log-s, log-s-alt, log-j, uniform-sym
        family: String,
        /// Family index for prime-s/prime-j
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        depth: usize,
        /// Evaluation point for the fraction variable
        #[arg(long)]
        at: f64,
    },
    /// Moments -> qd -> continued fraction coefficients
    Qd {
        /// exp-interval or uniform
        measure: String,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Number of J-fraction levels
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Run a verification suite and write CSVs
    Verify {
        /// all, expansions, legendre, gcurve, pis, intervals, gaps, identities
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.config.threads {
        primecf::configure_threads(t);
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_value(v: &Float, digits: u32) {
    println!("{}", v.to_string_radix(10, Some(digits as usize + 2)));
}

fn run(cli: &Cli) -> primecf::Result<ExitCode> {
    let ctx = cli.config.ctx();
    match &cli.command {
        Command::Eval { function, x, s, terms } => {
            cmd_eval(cli, &ctx, function, *x, s.as_deref(), *terms)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cf { family, n, depth, at } => {
            cmd_cf(&ctx, family, *n, *depth, *at)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Qd { measure, s, t, a, b, depth } => {
            cmd_qd(&ctx, measure, *s, *t, *a, *b, *depth)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => cmd_verify(cli, &ctx, suite),
    }
}

fn build_sieve(cli: &Cli) -> primecf::Result<SieveHandle> {
    SieveBuilder::new(cli.config.sieve_limit).build()
}

fn cmd_eval(
    cli: &Cli,
    ctx: &PrecisionContext,
    function: &str,
    x: f64,
    s: Option<&str>,
    terms: usize,
) -> primecf::Result<()> {
    let digits = ctx.digits;
    let xv = ctx.real(x);
    match function {
        "pi" => println!("{}", build_sieve(cli)?.prime_count(x)?),
        "pi_star" => println!("{}", build_sieve(cli)?.prime_power_count(x)?.pi_star()),
        "pi_tilde" => println!("{}", build_sieve(cli)?.prime_power_count(x)?.pi_tilde()),
        "Pi" => print_value(&build_sieve(cli)?.riemann_prime_count(x, ctx)?, digits),
        "pi_s" => {
            let s = s.ok_or_else(|| {
                primecf::Error::Domain("pi_s needs --s (as \"re\" or \"re,im\")".into())
            })?;
            let (re, im) = parse_complex(s)?;
            let v = build_sieve(cli)?.power_sum(x, &MpComplex::from_f64(ctx, re, im), ctx)?;
            if v.im.is_zero() {
                print_value(&v.re, digits);
            } else {
                println!(
                    "{} + {}i",
                    v.re.to_string_radix(10, Some(digits as usize + 2)),
                    v.im.to_string_radix(10, Some(digits as usize + 2))
                );
            }
        }
        "li" => print_value(&special::li(&xv, ctx)?, digits),
        "Ri" => print_value(&special::ri_gram(&xv, ctx)?, digits),
        "R" => print_value(&special::ri_mobius_truncated(&xv, ctx)?, digits),
        "Ein" => {
            let v = special::ein(&MpComplex::new(xv, ctx.zero()), ctx);
            print_value(&v.re, digits);
        }
        "Ei" => print_value(&special::ei(&xv, ctx)?, digits),
        "E1" => print_value(&special::e1(&xv, ctx)?, digits),
        "zeta" => print_value(&special::zeta(&xv, ctx)?, digits),
        "prime_zeta" => print_value(&special::prime_zeta(&xv, ctx)?, digits),
        "G" => print_value(&special::mertens_g(&xv, terms, ctx)?, digits),
        "Hfun" => print_value(&special::mertens_hfun(&xv, terms, ctx)?, digits),
        other => {
            return Err(primecf::Error::Domain(format!("unknown function '{other}'")));
        }
    }
    Ok(())
}

fn parse_complex(s: &str) -> primecf::Result<(f64, f64)> {
    let mut parts = s.splitn(2, ',');
    let re: f64 = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|e| primecf::Error::Domain(format!("bad real part: {e}")))?;
    let im: f64 = match parts.next() {
        Some(p) => {
            p.trim().parse().map_err(|e| primecf::Error::Domain(format!("bad imag part: {e}")))?
        }
        None => 0.0,
    };
    Ok((re, im))
}

fn lookup_family(family: &str, n: u32) -> primecf::Result<ContinuedFraction> {
    match family {
        "prime-s" => family_prime_s(n),
        "prime-j" => family_prime_j(n),
        "log-s" => Ok(family_log_s()),
        "log-s-alt" => Ok(family_log_s_alt()),
        "log-j" => Ok(family_log_j()),
        "uniform-sym" => Ok(family_uniform_sym()),
        other => Err(primecf::Error::Domain(format!("unknown family '{other}'"))),
    }
}

fn cmd_cf(
    ctx: &PrecisionContext,
    family: &str,
    n: u32,
    depth: usize,
    at: f64,
) -> primecf::Result<()> {
    let cf = lookup_family(family, n)?;
    let conv = cf.convergent(depth)?;
    let reduced = conv.content_reduced();
    println!("family:      {}", cf.name());
    println!("numerator:   {}", reduced.numerator.display("u"));
    println!("denominator: {}", reduced.denominator.display("u"));
    match cf.prefactor() {
        primecf::contfrac::Prefactor::ExpOfVarOver(k) => {
            println!("prefactor:   e^(u/{k})  (apply to the value below)")
        }
        primecf::contfrac::Prefactor::One => {}
    }
    let v = cf.eval_backward(depth, &ctx.real(at), ctx)?;
    println!("value at u = {at}: {}", v.to_string_radix(10, Some(ctx.digits as usize + 2)));
    Ok(())
}

fn cmd_qd(
    ctx: &PrecisionContext,
    measure: &str,
    s: Option<f64>,
    t: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    depth: usize,
) -> primecf::Result<()> {
    let spec = match measure {
        "exp-interval" => {
            let (s, t) = (
                s.ok_or_else(|| primecf::Error::Domain("exp-interval needs --s".into()))?,
                t.ok_or_else(|| primecf::Error::Domain("exp-interval needs --t".into()))?,
            );
            MeasureSpec::ExpDensityInterval { s, t }
        }
        "uniform" => {
            let (a, b) = (
                a.ok_or_else(|| primecf::Error::Domain("uniform needs --a".into()))?,
                b.ok_or_else(|| primecf::Error::Domain("uniform needs --b".into()))?,
            );
            MeasureSpec::UniformInterval { a, b }
        }
        other => return Err(primecf::Error::Domain(format!("unknown measure '{other}'"))),
    };
    let needed = 2 * depth + 2;
    let ms = moments(spec, needed, ctx)?;
    let c = qd_scoefficients(&ms, ctx)?;
    let digits = ctx.digits as usize + 2;
    for (i, v) in c.iter().enumerate().take(2 * depth + 1) {
        println!("c_{i} = {}", v.to_string_radix(10, Some(digits)));
    }
    let j = contract_to_jacobi(&c, ctx)?;
    println!("a_0 = {}", j.a0.to_string_radix(10, Some(digits)));
    for (k, (bk, ak)) in j.terms.iter().enumerate().take(depth) {
        println!(
            "b_{} = {}   a_{} = {}",
            k + 1,
            bk.to_string_radix(10, Some(digits)),
            k + 1,
            ak.to_string_radix(10, Some(digits))
        );
    }
    if matches!(spec, MeasureSpec::UniformInterval { .. }) {
        let pat = s_fraction_pattern_form(&ms, ctx)?;
        let shown: Vec<String> =
            pat.iter().take(2 * depth + 1).map(|v| format!("{:.6}", v.to_f64())).collect();
        println!("pattern form (numerators over denominators 1,2,3,...): {}", shown.join(", "));
    }
    Ok(())
}

fn report_line(r: &ExperimentReport) {
    let failed: Vec<&str> =
        r.rows.iter().filter(|row| !row.pass).map(|row| row.series.as_str()).collect();
    if r.pass {
        println!("{:<12} PASS ({} rows)", r.experiment_id, r.rows.len());
    } else {
        println!("{:<12} FAIL ({} rows; failing: {})", r.experiment_id, r.rows.len(), failed.join(", "));
    }
    for n in &r.notes {
        println!("    note: {n}");
    }
}

fn cmd_verify(cli: &Cli, ctx: &PrecisionContext, suite: &str) -> primecf::Result<ExitCode> {
    let known = ["all", "expansions", "legendre", "gcurve", "pis", "intervals", "gaps", "identities"];
    if !known.contains(&suite) {
        return Err(primecf::Error::Domain(format!(
            "unknown suite '{suite}' (expected one of {})",
            known.join(", ")
        )));
    }
    std::fs::create_dir_all(&cli.config.out)?;
    let limit = cli.config.sieve_limit;
    let needs_sieve =
        matches!(suite, "all" | "expansions" | "pis" | "intervals" | "gaps" | "legendre");
    let sieve = if needs_sieve { Some(build_sieve(cli)?) } else { None };
    let mut reports: Vec<ExperimentReport> = Vec::new();

    let want = |name: &str| suite == "all" || suite == name;
    if want("identities") {
        reports.push(experiments::identities_check(ctx)?);
    }
    if want("gcurve") {
        reports.push(experiments::g_curve(81, 400, ctx)?);
    }
    if want("legendre") {
        let study = experiments::legendre_constant_study(1e4, 1e6, 40, sieve.as_ref(), ctx)?;
        reports.push(study.report);
        reports.push(study.figures);
    }
    if let Some(sv) = sieve.as_ref() {
        let lf = limit as f64;
        if want("expansions") {
            let sieve_grid = experiments::log_grid(1e3, lf.min(1e8), 1);
            let liri_grid = experiments::log_grid(1e3, 1e12, 1);
            reports.push(experiments::check_relative_expansions(sv, &sieve_grid, &liri_grid, ctx)?);
        }
        if want("pis") {
            let grid = experiments::log_grid(1e4, lf.min(1e8), 1);
            reports.push(experiments::pi_s_approximant_errors(0.0, &[1, 2, 3, 4], &grid, sv, ctx)?);
        }
        if want("intervals") {
            let grid = experiments::log_grid(1e3, (lf / 2.0).min(1e7), 1);
            reports.push(experiments::interval_reciprocal_cf_check(2.0, &grid, sv, ctx)?);
        }
        if want("gaps") {
            let hi = (lf / std::f64::consts::E).min(1e8);
            let grid = experiments::log_grid(1e5_f64.min(hi / 10.0), hi, 4);
            reports.push(experiments::prime_gap_cf_table(
                std::f64::consts::E,
                1.0,
                &[0, 1, 2],
                &grid,
                sv,
                ctx,
            )?);
        }
    }

    let mut all_pass = true;
    for r in &reports {
        report_line(r);
        let path = cli.config.out.join(format!("{}.csv", r.experiment_id));
        experiments::emit_csv(r, &path)?;
        all_pass &= r.pass;
    }
    println!(
        "{} suite(s) written to {}; overall: {}",
        reports.len(),
        cli.config.out.display(),
        if all_pass { "PASS" } else { "FAIL" }
    );
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
