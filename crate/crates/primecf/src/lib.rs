//! Weighted prime-power counting functions, their smooth approximations, and
//! continued-fraction approximants.
//!
//! The crate is organized around six pieces:
//!
//! * [`sieve`] — segmented sieve of Eratosthenes; exact pi(x), prime-power
//!   tallies, Riemann's Pi(x), Moebius inversion, and prime sums over
//!   intervals.
//! * [`special`] — extended-precision Ein/Ei/E1/li, the Gram series for
//!   Ri(x), the truncated Moebius R(x), zeta, the prime zeta function, and
//!   the Mertens constants M, H with the analytic families G(s), H(s).
//! * [`contfrac`] — generic continued-fraction evaluation, exact rational
//!   convergents, the named coefficient families, and the shifted Legendre
//!   polynomial structure of the log(1+1/x) approximants.
//! * [`moments`] — moments of exponential-density and uniform measures,
//!   Stieltjes transforms, and the quotient-difference (qd) pipeline turning
//!   moment sequences into continued-fraction coefficients.
//! * [`experiments`] — the verification harness reproducing the desk-scale
//!   numerical claims, with CSV output.
//! * [`precision`] — the precision context shared by everything above.
//!
//! Numeric backbone: MPFR via `rug` for extended-precision floats, GMP
//! rationals/integers for everything that must be exact.

pub mod contfrac;
pub mod error;
pub mod experiments;
pub mod moments;
pub mod poly;
pub mod precision;
pub mod sieve;
pub mod special;

pub use error::{Error, Result};
pub use precision::{MpComplex, PrecisionContext};
pub use sieve::{SieveBuilder, SieveHandle};

/// Pin the rayon pool size. A no-op without the `parallel` feature, or once
/// a pool already exists.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}
