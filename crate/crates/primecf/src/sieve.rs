//! Exact prime and prime-power enumeration and the sieve-backed counting and
//! summing functions.
//!
//! Construction uses a segmented sieve of Eratosthenes over odd numbers with a
//! cache-sized segment (default 2^20 flags). Segments are independent, so with
//! the `parallel` feature they are sieved on the rayon pool and concatenated
//! in segment order; the resulting prime list is bit-identical to the
//! sequential build. All queries are read-only binary searches over the
//! finished list.
//!
//! Counting conventions: every sum and count is inclusive at the right
//! endpoint ("p <= x") and interval sums are exclusive at the left
//! ("x < p"). Real arguments are compared to integer primes exactly: `p <= x`
//! for integer p is `p <= floor(x)`.

use crate::error::{Error, Result};
use crate::precision::{MpComplex, PrecisionContext};
use rug::{ops::Pow, Float, Integer, Rational};
use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Plain (non-segmented) sieve. Kept as the cross-implementation oracle for
/// the segmented builder and used internally for base primes.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Largest r with r^n <= x, exact. Floating guess corrected by integer
/// powering so counts at perfect powers are never off by one.
pub fn floor_nth_root(x: u64, n: u32) -> u64 {
    if n == 0 {
        panic!("floor_nth_root: n must be >= 1");
    }
    if n == 1 || x <= 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / n as f64).round() as u64;
    let pow_leq = |r: u64| -> bool {
        // r^n <= x with overflow treated as "too big"
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc.saturating_mul(r as u128);
            if acc > x as u128 {
                return false;
            }
        }
        acc <= x as u128
    };
    while r > 0 && !pow_leq(r) {
        r -= 1;
    }
    while pow_leq(r + 1) {
        r += 1;
    }
    r
}

/// Möbius function, by trial division.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain("mobius: n must be >= 1".into()));
    }
    let mut m = n;
    let mut factors = 0u32;
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= m as u128 {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// Builder for [`SieveHandle`].
#[derive(Debug, Clone)]
pub struct SieveBuilder {
    limit: u64,
    segment_size: usize,
    memory_budget: u64,
    parallel: bool,
}

impl SieveBuilder {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            segment_size: 1 << 20,
            memory_budget: 4 << 30,
            parallel: cfg!(feature = "parallel"),
        }
    }

    /// Number of flags per segment.
    pub fn segment_size(mut self, flags: usize) -> Self {
        self.segment_size = flags.max(1 << 10);
        self
    }

    pub fn memory_budget(mut self, bytes: u64) -> Self {
        self.memory_budget = bytes;
        self
    }

    /// Force the sequential construction path even when the `parallel`
    /// feature is compiled in. Results are identical either way.
    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn build(&self) -> Result<SieveHandle> {
        let est = estimated_bytes(self.limit, self.segment_size);
        if est > self.memory_budget {
            return Err(Error::Resource {
                limit: self.limit,
                needed: est,
                budget: self.memory_budget,
            });
        }
        let primes = if self.parallel {
            build_primes_par(self.limit, self.segment_size)
        } else {
            build_primes_seq(self.limit, self.segment_size)
        };
        Ok(SieveHandle { limit: self.limit, segment_size: self.segment_size, primes })
    }
}

fn estimated_bytes(limit: u64, segment_size: usize) -> u64 {
    if limit < 3 {
        return 64;
    }
    let ln = (limit as f64).ln().max(1.0);
    // prime list + one segment of odd flags (+ rayon may hold a few segments)
    (1.2 * limit as f64 / ln * 8.0) as u64 + 8 * segment_size as u64
}

/// Primes within the odd-flag segment covering [lo, hi), ascending.
fn sieve_segment(base: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if lo <= 2 && hi > 2 {
        out.push(2);
    }
    // flags for odd numbers in [lo, hi)
    let first_odd = if lo % 2 == 0 { lo + 1 } else { lo };
    if first_odd >= hi {
        return out;
    }
    let count = ((hi - first_odd) as usize + 1) / 2;
    let mut composite = vec![false; count];
    for &p in base.iter().skip(1) {
        // skip(1): p = 2 never marks odd flags
        let p2 = p * p;
        if p2 >= hi {
            break;
        }
        let mut start = if p2 >= first_odd {
            p2
        } else {
            let mut m = (first_odd + p - 1) / p * p;
            if m % 2 == 0 {
                m += p;
            }
            m
        };
        if start % 2 == 0 {
            start += p;
        }
        while start < hi {
            composite[((start - first_odd) / 2) as usize] = true;
            start += 2 * p;
        }
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            let n = first_odd + 2 * i as u64;
            if n >= 3 {
                out.push(n);
            } else if n == 1 {
                continue;
            }
        }
    }
    out
}

fn segment_bounds(limit: u64, segment_size: usize) -> Vec<(u64, u64)> {
    let span = 2 * segment_size as u64; // odd flags cover twice their count
    let mut v = Vec::new();
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + span).min(limit + 1);
        v.push((lo, hi));
        lo = hi;
    }
    v
}

fn base_primes(limit: u64) -> Vec<u64> {
    simple_sieve(floor_nth_root(limit, 2))
}

fn build_primes_seq(limit: u64, segment_size: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let base = base_primes(limit);
    let mut primes = Vec::new();
    for (lo, hi) in segment_bounds(limit, segment_size) {
        primes.extend(sieve_segment(&base, lo, hi));
    }
    primes
}

#[cfg(feature = "parallel")]
fn build_primes_par(limit: u64, segment_size: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let base = base_primes(limit);
    let chunks: Vec<Vec<u64>> = segment_bounds(limit, segment_size)
        .into_par_iter()
        .map(|(lo, hi)| sieve_segment(&base, lo, hi))
        .collect();
    let mut primes = Vec::with_capacity(chunks.iter().map(Vec::len).sum());
    for c in chunks {
        primes.extend(c);
    }
    primes
}

#[cfg(not(feature = "parallel"))]
fn build_primes_par(limit: u64, segment_size: usize) -> Vec<u64> {
    build_primes_seq(limit, segment_size)
}

/// Count of prime powers p^k <= x, split by exponent.
#[derive(Debug, Clone)]
pub struct PrimePowerTally {
    pub x: f64,
    pub by_exponent: BTreeMap<u32, u64>,
}

impl PrimePowerTally {
    /// Total number of prime powers > 1 up to x.
    pub fn pi_star(&self) -> u64 {
        self.by_exponent.values().sum()
    }

    /// Composite prime powers only.
    pub fn pi_tilde(&self) -> u64 {
        self.pi_star() - self.by_exponent.get(&1).copied().unwrap_or(0)
    }
}

/// Finished sieve: primality of every n <= limit is decided and the prime
/// list is held in memory for binary-search queries. Immutable after build,
/// safe to share across threads.
#[derive(Debug)]
pub struct SieveHandle {
    limit: u64,
    segment_size: usize,
    primes: Vec<u64>,
}

impl SieveHandle {
    /// Default build at the given limit.
    pub fn new(limit: u64) -> Result<Self> {
        SieveBuilder::new(limit).build()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    /// All primes <= limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check_range(n as f64)?;
        Ok(self.primes.binary_search(&n).is_ok())
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if x > self.limit as f64 {
            return Err(Error::OutOfSieveRange { x, limit: self.limit });
        }
        Ok(())
    }

    /// pi(x): number of primes p <= x.
    pub fn prime_count(&self, x: f64) -> Result<u64> {
        self.check_range(x)?;
        if x < 2.0 {
            return Ok(0);
        }
        let xf = x.floor() as u64;
        Ok(self.primes.partition_point(|&p| p <= xf) as u64)
    }

    /// Primes in the half-open interval (lo, hi].
    pub fn primes_in(&self, lo: f64, hi: f64) -> Result<&[u64]> {
        self.check_range(hi)?;
        let a = if lo < 2.0 { 0 } else { self.primes.partition_point(|&p| p as f64 <= lo) };
        let hf = if hi < 0.0 { 0 } else { hi.floor() as u64 };
        let b = self.primes.partition_point(|&p| p <= hf);
        Ok(&self.primes[a..b])
    }

    /// pi*(x) and friends: prime powers p^k <= x tallied by exponent k.
    pub fn prime_power_count(&self, x: f64) -> Result<PrimePowerTally> {
        self.check_range(x)?;
        let mut by_exponent = BTreeMap::new();
        if x >= 2.0 {
            let xf = x.floor() as u64;
            let mut k = 1u32;
            loop {
                let r = floor_nth_root(xf, k);
                if r < 2 {
                    break;
                }
                by_exponent.insert(k, self.prime_count(r as f64)?);
                k += 1;
            }
        }
        Ok(PrimePowerTally { x, by_exponent })
    }

    /// Pi(x) = sum_{n <= log2 x} pi(x^(1/n))/n, as an exact rational.
    pub fn riemann_prime_count_exact(&self, x: f64) -> Result<Rational> {
        self.check_range(x)?;
        let mut acc = Rational::new();
        if x >= 2.0 {
            let xf = x.floor() as u64;
            let mut n = 1u32;
            loop {
                let r = floor_nth_root(xf, n);
                if r < 2 {
                    break;
                }
                let c = self.prime_count(r as f64)?;
                acc += Rational::from((Integer::from(c), Integer::from(n)));
                n += 1;
            }
        }
        Ok(acc)
    }

    /// Pi(x) rounded into the precision context.
    pub fn riemann_prime_count(&self, x: f64, ctx: &PrecisionContext) -> Result<Float> {
        Ok(ctx.real(self.riemann_prime_count_exact(x)?))
    }

    /// Moebius inversion round trip: sum_{n} mu(n)/n Pi(x^(1/n)), exact.
    /// Equals `prime_count(x)` identically.
    pub fn pi_from_pi_mobius_exact(&self, x: f64) -> Result<Rational> {
        self.check_range(x)?;
        let mut acc = Rational::new();
        if x >= 2.0 {
            let xf = x.floor() as u64;
            let mut n = 1u32;
            loop {
                if floor_nth_root(xf, n) < 2 {
                    break;
                }
                let mu = mobius(n as u64)?;
                if mu != 0 {
                    // Pi(x^(1/n)) via combined roots: pi(x^(1/(n m)))/m
                    let mut inner = Rational::new();
                    let mut m = 1u32;
                    loop {
                        let r = floor_nth_root(xf, n * m);
                        if r < 2 {
                            break;
                        }
                        let c = self.prime_count(r as f64)?;
                        inner += Rational::from((Integer::from(c), Integer::from(m)));
                        m += 1;
                    }
                    acc += inner * Rational::from((Integer::from(mu), Integer::from(n)));
                }
                n += 1;
            }
        }
        Ok(acc)
    }

    pub fn pi_from_pi_mobius(&self, x: f64, ctx: &PrecisionContext) -> Result<Float> {
        Ok(ctx.real(self.pi_from_pi_mobius_exact(x)?))
    }

    /// pi_s(x) = sum_{p <= x} p^s for complex s.
    ///
    /// s = 0 and s = 1 reduce to exact integer counts/sums; other exponents
    /// go through exp(s ln p) at working precision. Summation is chunked with
    /// a fixed chunk size and folded in order, so the result does not depend
    /// on the thread count.
    pub fn power_sum(&self, x: f64, s: &MpComplex, ctx: &PrecisionContext) -> Result<MpComplex> {
        self.check_range(x)?;
        let ps = self.primes_in(0.0, x)?;
        if s.is_real() {
            if s.re == 0 {
                return Ok(MpComplex::new(ctx.real(ps.len() as u64), ctx.zero()));
            }
            if s.re == 1 {
                let total: u128 = ps.iter().map(|&p| p as u128).sum();
                return Ok(MpComplex::new(ctx.real(Integer::from(total)), ctx.zero()));
            }
            let sums = map_chunks(ps, 8192, |chunk| {
                let mut acc = ctx.zero();
                for &p in chunk {
                    acc += ctx.real(p).pow(&s.re);
                }
                acc
            });
            let mut total = ctx.zero();
            for v in sums {
                total += v;
            }
            return Ok(MpComplex::new(total, ctx.zero()));
        }
        let sums = map_chunks(ps, 4096, |chunk| {
            let mut acc = MpComplex::zero(ctx);
            for &p in chunk {
                acc = acc.add(&MpComplex::pow_of_real(&ctx.real(p), s));
            }
            acc
        });
        let mut total = MpComplex::zero(ctx);
        for v in sums {
            total = total.add(&v);
        }
        Ok(total)
    }

    /// sum of 1/p over primes in (x, a x].
    pub fn reciprocal_sum_interval(
        &self,
        x: f64,
        a: f64,
        ctx: &PrecisionContext,
    ) -> Result<Float> {
        if a <= 1.0 {
            return Err(Error::Domain("reciprocal_sum_interval: a must be > 1".into()));
        }
        let ps = self.primes_in(x, a * x)?;
        let sums = map_chunks(ps, 8192, |chunk| {
            let mut acc = ctx.zero();
            for &p in chunk {
                acc += ctx.real(p).recip();
            }
            acc
        });
        let mut total = ctx.zero();
        for v in sums {
            total += v;
        }
        Ok(total)
    }

    /// -(1/s) sum over primes p in (x, a x] of log(1 - s/p).
    pub fn log_mertens_product_interval(
        &self,
        x: f64,
        a: f64,
        s: f64,
        ctx: &PrecisionContext,
    ) -> Result<Float> {
        if a <= 1.0 {
            return Err(Error::Domain("log_mertens_product_interval: a must be > 1".into()));
        }
        if s == 0.0 {
            return Err(Error::Domain("log_mertens_product_interval: s must be nonzero".into()));
        }
        if s > 1.0 && s.fract() == 0.0 && s <= self.limit as f64 && self.is_prime(s as u64)? {
            return Err(Error::Domain(format!(
                "log_mertens_product_interval: s = {s} is prime"
            )));
        }
        let ps = self.primes_in(x, a * x)?;
        if let Some(&pmin) = ps.first() {
            if s >= pmin as f64 {
                return Err(Error::Domain(format!(
                    "log(1 - s/p) undefined: s = {s} >= smallest prime {pmin} in range"
                )));
            }
        }
        let sv = ctx.real(s);
        let sums = map_chunks(ps, 8192, |chunk| {
            let mut acc = ctx.zero();
            for &p in chunk {
                let t = ctx.real(1) - sv.clone() / ctx.real(p);
                acc += t.ln();
            }
            acc
        });
        let mut total = ctx.zero();
        for v in sums {
            total += v;
        }
        Ok(-total / sv)
    }
}

/// Chunked map helper: parallel when the feature is on, but the chunking is
/// fixed so results are identical either way.
fn map_chunks<T: Sync, R: Send>(
    items: &[T],
    chunk: usize,
    f: impl Fn(&[T]) -> R + Sync + Send,
) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_chunks(chunk).map(|c| f(c)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.chunks(chunk).map(|c| f(c)).collect()
    }
}

/// Convenience wrapper matching the one-shot enumeration use case.
pub fn enumerate_primes(limit: u64) -> Result<Vec<u64>> {
    Ok(SieveBuilder::new(limit).build()?.primes.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        'outer: for n in 2..=limit {
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    continue 'outer;
                }
                d += 1;
            }
            out.push(n);
        }
        out
    }

    #[test]
    fn enumerate_small() {
        assert!(enumerate_primes(1).unwrap().is_empty());
        assert_eq!(enumerate_primes(10).unwrap(), vec![2, 3, 5, 7]);
        let p30 = enumerate_primes(30).unwrap();
        assert_eq!(p30.len(), 10);
        assert_eq!(*p30.last().unwrap(), 29);
        assert_eq!(p30, trial_division_primes(30));
    }

    #[test]
    fn segmented_matches_simple_and_trial() {
        let segmented = SieveBuilder::new(100_000).segment_size(1 << 12).build().unwrap();
        assert_eq!(segmented.primes(), simple_sieve(100_000).as_slice());
        let seq = SieveBuilder::new(100_000).segment_size(1 << 12).sequential().build().unwrap();
        assert_eq!(segmented.primes(), seq.primes());
        assert_eq!(
            SieveHandle::new(2_000).unwrap().primes(),
            trial_division_primes(2_000).as_slice()
        );
    }

    #[test]
    fn prime_count_boundaries() {
        let s = SieveHandle::new(1000).unwrap();
        assert_eq!(s.prime_count(1.9).unwrap(), 0);
        assert_eq!(s.prime_count(2.0).unwrap(), 1);
        assert_eq!(s.prime_count(2.5).unwrap(), 1);
        assert_eq!(s.prime_count(100.0).unwrap(), 25);
        assert!(s.prime_count(1001.0).is_err());
    }

    #[test]
    fn prime_power_tallies() {
        let s = SieveHandle::new(1000).unwrap();
        let t = s.prime_power_count(100.0).unwrap();
        assert_eq!(t.pi_star(), 35);
        assert_eq!(t.pi_tilde(), 10);
        let t3 = s.prime_power_count(3.0).unwrap();
        assert_eq!(t3.pi_star(), 2);
        assert_eq!(t3.pi_tilde(), 0);
        let t8 = s.prime_power_count(8.0).unwrap();
        let m: Vec<(u32, u64)> = t8.by_exponent.iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(m, vec![(1, 4), (2, 1), (3, 1)]);
    }

    #[test]
    fn prime_power_count_vs_brute_force() {
        let s = SieveHandle::new(10_000).unwrap();
        for &x in &[100u64, 1234, 9999, 10_000, 2, 3, 4, 8, 9, 16, 9621] {
            let mut star = 0u64;
            let mut pi_weighted = Rational::new();
            for &p in s.primes() {
                if p > x {
                    break;
                }
                let mut pk = p as u128;
                let mut k = 1u32;
                while pk <= x as u128 {
                    star += 1;
                    pi_weighted += Rational::from((1u32, k));
                    pk *= p as u128;
                    k += 1;
                }
            }
            assert_eq!(s.prime_power_count(x as f64).unwrap().pi_star(), star, "x={x}");
            assert_eq!(s.riemann_prime_count_exact(x as f64).unwrap(), pi_weighted, "x={x}");
        }
    }

    #[test]
    fn riemann_prime_count_values() {
        let s = SieveHandle::new(1000).unwrap();
        assert_eq!(s.riemann_prime_count_exact(1.5).unwrap(), Rational::new());
        assert_eq!(s.riemann_prime_count_exact(4.0).unwrap(), Rational::from((5, 2)));
        // 25 + 4/2 + 2/3 + 2/4 + 1/5 + 1/6
        let expect = Rational::from((25, 1))
            + Rational::from((4, 2))
            + Rational::from((2, 3))
            + Rational::from((2, 4))
            + Rational::from((1, 5))
            + Rational::from((1, 6));
        assert_eq!(s.riemann_prime_count_exact(100.0).unwrap(), expect);
    }

    #[test]
    fn mobius_round_trip() {
        let s = SieveHandle::new(100_000).unwrap();
        for &x in &[1.5f64, 4.0, 100.0, 9999.0, 65536.0, 100_000.0] {
            let lhs = s.pi_from_pi_mobius_exact(x).unwrap();
            let rhs = Rational::from((Integer::from(s.prime_count(x).unwrap()), Integer::from(1)));
            assert_eq!(lhs, rhs, "x={x}");
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn floor_roots_exact_at_powers() {
        assert_eq!(floor_nth_root(100, 2), 10);
        assert_eq!(floor_nth_root(99, 2), 9);
        assert_eq!(floor_nth_root(1 << 60, 3), 1 << 20);
        assert_eq!(floor_nth_root((1 << 60) - 1, 3), (1 << 20) - 1);
        assert_eq!(floor_nth_root(u64::MAX, 64), 1);
        for n in 1..=40u32 {
            let r = floor_nth_root(10_000_000_019, n);
            assert!((r as u128).pow(n) <= 10_000_000_019u128);
            assert!((r as u128 + 1).pow(n) > 10_000_000_019u128);
        }
    }

    #[test]
    fn power_sum_values() {
        let ctx = PrecisionContext::default();
        let s = SieveHandle::new(1000).unwrap();
        let z = |re: f64| MpComplex::from_f64(&ctx, re, 0.0);
        let v0 = s.power_sum(10.0, &z(0.0), &ctx).unwrap();
        assert_eq!(v0.re.to_f64(), 4.0);
        let v1 = s.power_sum(10.0, &z(1.0), &ctx).unwrap();
        assert_eq!(v1.re.to_f64(), 17.0);
        let vm1 = s.power_sum(10.0, &z(-1.0), &ctx).unwrap();
        let expect = 1.0 / 2.0 + 1.0 / 3.0 + 1.0 / 5.0 + 1.0 / 7.0;
        assert!((vm1.re.to_f64() - expect).abs() < 1e-15);
        // complex exponent against direct f64 evaluation
        let sc = MpComplex::from_f64(&ctx, -0.5, 1.0);
        let vc = s.power_sum(10.0, &sc, &ctx).unwrap();
        let mut re = 0.0;
        let mut im = 0.0;
        for p in [2.0f64, 3.0, 5.0, 7.0] {
            let m = p.powf(-0.5);
            re += m * (p.ln()).cos();
            im += m * (p.ln()).sin();
        }
        assert!((vc.re.to_f64() - re).abs() < 1e-12);
        assert!((vc.im.to_f64() - im).abs() < 1e-12);
    }

    #[test]
    fn interval_sums() {
        let ctx = PrecisionContext::default();
        let s = SieveHandle::new(1000).unwrap();
        let v = s.reciprocal_sum_interval(10.0, 2.0, &ctx).unwrap();
        let expect = 1.0 / 11.0 + 1.0 / 13.0 + 1.0 / 17.0 + 1.0 / 19.0;
        assert!((v.to_f64() - expect).abs() < 1e-15);
        let empty = s.reciprocal_sum_interval(2.5, 1.1, &ctx).unwrap();
        assert!(empty.is_zero());
        let single = s.reciprocal_sum_interval(1.0, 2.0, &ctx).unwrap();
        assert!((single.to_f64() - 0.5).abs() < 1e-16);
    }

    #[test]
    fn mertens_product_interval() {
        let ctx = PrecisionContext::default();
        let s = SieveHandle::new(1000).unwrap();
        let v = s.log_mertens_product_interval(10.0, 2.0, 1.0, &ctx).unwrap();
        // independent oracle: the four logs directly
        let expect: f64 =
            (11f64 / 10.0).ln() + (13f64 / 12.0).ln() + (17f64 / 16.0).ln() + (19f64 / 18.0).ln();
        assert!((v.to_f64() - expect).abs() < 1e-15);
        assert!((v.to_f64() - 0.2900447).abs() < 1e-7);
        let empty = s.log_mertens_product_interval(2.5, 1.1, 1.0, &ctx).unwrap();
        assert!(empty.is_zero());
        // s -> 0 limit approaches the reciprocal sum
        let near = s.log_mertens_product_interval(10.0, 2.0, 1e-6, &ctx).unwrap();
        let recip = s.reciprocal_sum_interval(10.0, 2.0, &ctx).unwrap();
        assert!((near - recip).abs().to_f64() < 1e-6);
        assert!(s.log_mertens_product_interval(10.0, 2.0, 0.0, &ctx).is_err());
        assert!(s.log_mertens_product_interval(10.0, 2.0, 13.0, &ctx).is_err());
        assert!(s.log_mertens_product_interval(10.0, 2.0, 12.0, &ctx).is_err());
    }

    #[test]
    fn resource_budget() {
        let err = SieveBuilder::new(1 << 40).memory_budget(1 << 20).build();
        assert!(matches!(err, Err(Error::Resource { .. })));
    }

    #[test]
    fn pi_star_sandwich_small() {
        // pi <= pi* <= pi + pi(sqrt x) + 3 x^(1/3), checked on a small grid
        let s = SieveHandle::new(200_000).unwrap();
        let mut x = 9621f64;
        while x <= 200_000.0 {
            let pi = s.prime_count(x).unwrap() as f64;
            let star = s.prime_power_count(x).unwrap().pi_star() as f64;
            let bound = pi + s.prime_count(x.sqrt()).unwrap() as f64 + 3.0 * x.cbrt();
            assert!(pi <= star && star <= bound, "x={x}");
            x *= 1.7;
        }
    }
}
