//! Exact-arithmetic toolkit for escape-rate dynamics of polynomials of the
//! shape `f(z) = g(z^d)` with `g` monic over the rationals, plus the analogous
//! machinery over rational function fields in characteristic `p`.
//!
//! The crate is organised around certified quantities: non-archimedean
//! log-sizes are exact rational multiples of `log p`, archimedean ones are
//! directed intervals, and every dynamical certificate (escape, preperiodicity,
//! zero local Green value) states exactly what it guarantees.
//!
//! Modules:
//! - [`interval`]: directed `f64` intervals and complex rectangles.
//! - [`arith`]: places of Q, local log-sizes, Weil heights, product formula.
//! - [`poly`]: dense rational polynomials, composition `g(z^d)`, resultants.
//! - [`newton`]: Newton polygons (exact non-archimedean root sizes).
//! - [`complexroots`]: certified max root modulus via Weierstrass disks.
//! - [`branch`]: critical/branch data and coefficient-vs-root size bounds.
//! - [`dynamics`]: exact orbits with escape and preperiodicity certificates.
//! - [`green`]: local Green's functions, local critical lambda, critical height.
//! - [`pcf`]: PCF certification, unicritical enumeration, sampling experiments.
//! - [`charp`]: the same story over `F_p(t)`, where all error terms vanish.

pub mod arith;
pub mod branch;
pub mod charp;
pub mod complexroots;
pub mod dynamics;
pub mod green;
pub mod interval;
pub mod newton;
pub mod pcf;
pub mod poly;

use num_bigint::BigInt;

/// The scalar for all exact computation over Q: an arbitrary-precision
/// fraction, always reduced, with positive denominator.
pub type Rat = num_rational::Ratio<BigInt>;

/// Build a `Rat` from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Crate-level error type. Argument errors are reported, never papered over.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty tuple passed where at least one entry is required")]
    EmptyTuple,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("place p = {p} unsupported here: constants require p > m = {m}")]
    UnsupportedPlace { p: u64, m: usize },
    #[error("operation requires degree >= {need}, got {got}")]
    DegreeTooSmall { need: usize, got: usize },
    #[error("zero polynomial has no roots / no Newton polygon")]
    ZeroPolynomial,
    #[error("polynomial does not factor completely over Q")]
    IrrationalRoots,
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("integer factorization overflow: cofactor exceeds 128 bits")]
    FactorOverflow,
    #[error("characteristic-p hypothesis violated: deg(g) = {m} >= p = {p}")]
    CharPHypothesis { m: usize, p: u64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
