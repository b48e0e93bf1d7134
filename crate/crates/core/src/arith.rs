//! Places of Q, local log-sizes, and global heights.
//!
//! The normalization is the standard one for K = Q: all local degrees are 1,
//! `|x|_p = p^{-v_p(x)}`, and logarithms are natural. Non-archimedean sizes
//! stay symbolic as (rational coefficient) · log p until a caller aggregates
//! them; only then do they become intervals. This keeps every ultrametric
//! statement exact.

use crate::interval::{ln_rat_abs, rat_to_interval, Interval};
use crate::{Error, Rat, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// An absolute value of Q: the archimedean one or a p-adic one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Archimedean,
    Prime(u64),
}

impl Place {
    /// Construct a p-adic place, verifying primality.
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime_u64(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_arch(&self) -> bool {
        matches!(self, Place::Archimedean)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// A local log-size `log |x|_v`, kept exact wherever the place allows it.
#[derive(Debug, Clone, PartialEq)]
pub enum LogSize {
    /// log|0|_v, smaller than every finite size. Never silently treated as 0.
    NegInfinity,
    /// Exact value `coeff · log p` at a non-archimedean place. The coefficient
    /// is rational so Newton-polygon slopes fit without loss.
    NonArch { coeff: Rat, p: u64 },
    /// Directed enclosure in natural-log units at the archimedean place.
    Arch(Interval),
}

impl LogSize {
    pub fn non_arch(coeff: Rat, p: u64) -> Self {
        LogSize::NonArch { coeff, p }
    }

    pub fn zero_at(v: Place) -> Self {
        match v {
            Place::Archimedean => LogSize::Arch(Interval::ZERO),
            Place::Prime(p) => LogSize::NonArch { coeff: Rat::zero(), p },
        }
    }

    /// Collapse to an interval in natural-log units.
    pub fn to_interval(&self) -> Interval {
        match self {
            LogSize::NegInfinity => Interval::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
            LogSize::NonArch { coeff, p } => rat_to_interval(coeff).mul(Interval::ln_u64(*p)),
            LogSize::Arch(iv) => *iv,
        }
    }

    /// `max(0, ·)` — the log⁺ clamp, staying exact at non-archimedean places.
    pub fn clamp_nonneg(&self) -> LogSize {
        match self {
            LogSize::NegInfinity => LogSize::NegInfinity, // callers decide; see log_plus
            LogSize::NonArch { coeff, p } => LogSize::NonArch {
                coeff: if coeff.is_negative() { Rat::zero() } else { coeff.clone() },
                p: *p,
            },
            LogSize::Arch(iv) => LogSize::Arch(iv.clamp_nonneg()),
        }
    }

    /// log⁺ as a total operation: log⁺|0| = 0.
    pub fn log_plus(&self) -> LogSize {
        match self {
            LogSize::NegInfinity => LogSize::Arch(Interval::ZERO),
            other => other.clamp_nonneg(),
        }
    }

    /// Max of two sizes at the same place.
    pub fn max(&self, rhs: &LogSize) -> LogSize {
        match (self, rhs) {
            (LogSize::NegInfinity, x) | (x, LogSize::NegInfinity) => x.clone(),
            (LogSize::NonArch { coeff: a, p }, LogSize::NonArch { coeff: b, p: q }) => {
                assert_eq!(p, q, "mixed places in LogSize::max");
                LogSize::NonArch { coeff: a.clone().max(b.clone()), p: *p }
            }
            (LogSize::Arch(a), LogSize::Arch(b)) => LogSize::Arch(a.max(*b)),
            _ => panic!("mixed arch/non-arch in LogSize::max"),
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, LogSize::NegInfinity)
    }
}

/// A real value with a guaranteed enclosure half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightValue {
    pub value: f64,
    pub error: f64,
}

impl HeightValue {
    /// Enclose an interval, clamping below at 0 (heights are nonnegative).
    pub fn from_interval_nonneg(iv: Interval) -> Self {
        let iv = iv.clamp_nonneg();
        HeightValue {
            value: iv.mid(),
            error: 0.5 * iv.width(),
        }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.error
    }

    pub fn hi(&self) -> f64 {
        self.value + self.error
    }
}

// ---------------------------------------------------------------------------
// primality and factorization
// ---------------------------------------------------------------------------

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^127 here; use the shift-add fallback only when products overflow.
    if let (Some(x), true) = (a.checked_mul(b), m <= u64::MAX as u128 + 1) {
        return x % m;
    }
    let mut result = 0u128;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            result = (result + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    result
}

fn powmod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 (the 12-base set is proven exact
/// below 3.3 · 10^24).
pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    // Brent's variant; n is odd, composite, > 1.
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

fn factor_u128_into(n: u128, out: &mut BTreeSet<u64>) {
    let mut n = n;
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            out.insert(p as u64);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            out.insert(m.try_into().unwrap_or_else(|_| {
                panic!("prime factor exceeds u64: {m}");
            }));
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
}

/// Distinct prime factors of a nonzero big integer, ascending.
pub fn prime_factors(n: &BigInt) -> Result<Vec<u64>> {
    assert!(!n.is_zero());
    let mut mag: BigUint = n.magnitude().clone();
    let mut out = BTreeSet::new();
    // Strip small primes so most big inputs reduce into u128 range.
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let pb = BigUint::from(p);
        while (&mag % &pb).is_zero() {
            out.insert(p as u64);
            mag /= &pb;
        }
    }
    if mag.is_one() {
        return Ok(out.into_iter().collect());
    }
    let rest = mag.to_u128().ok_or(Error::FactorOverflow)?;
    factor_u128_into(rest, &mut out);
    Ok(out.into_iter().collect())
}

/// All positive divisors of |n| (n nonzero), ascending. Guarded by a count cap.
pub fn divisors(n: &BigInt, cap: usize) -> Result<Vec<BigUint>> {
    assert!(!n.is_zero());
    let mut mag = n.magnitude().clone();
    let primes = prime_factors(n)?;
    let mut out: Vec<BigUint> = vec![BigUint::one()];
    for p in primes {
        let pb = BigUint::from(p);
        let mut mult = 0usize;
        while (&mag % &pb).is_zero() {
            mult += 1;
            mag /= &pb;
        }
        let prev = out.clone();
        let mut power = BigUint::one();
        for _ in 0..mult {
            power *= &pb;
            for d in &prev {
                out.push(d * &power);
            }
            if out.len() > cap {
                return Err(Error::Invalid(format!("divisor count exceeds cap {cap}")));
            }
        }
    }
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------
// valuations and local sizes
// ---------------------------------------------------------------------------

/// p-adic valuation of a nonzero big integer.
pub fn valuation_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(x: &Rat, p: u64) -> i64 {
    assert!(!x.is_zero());
    let vn = valuation_int(x.numer(), p);
    if vn > 0 {
        vn
    } else {
        -valuation_int(x.denom(), p)
    }
}

/// `log |x|_v`. At a prime this is exactly `-v_p(x) · log p`; at the
/// archimedean place an enclosure of width a few ulps (far below the
/// documented default tolerance 2^-40).
pub fn abs_log(x: &Rat, v: Place) -> LogSize {
    if x.is_zero() {
        return LogSize::NegInfinity;
    }
    match v {
        Place::Archimedean => LogSize::Arch(ln_rat_abs(x)),
        Place::Prime(p) => LogSize::NonArch {
            coeff: Rat::from(BigInt::from(-valuation_rat(x, p))),
            p,
        },
    }
}

/// `log ‖xs‖_v = log max_i |x_i|_v` over a nonempty tuple.
pub fn tuple_sup_log(xs: &[Rat], v: Place) -> Result<LogSize> {
    if xs.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut acc = LogSize::NegInfinity;
    for x in xs {
        acc = acc.max(&abs_log(x, v));
    }
    Ok(acc)
}

/// Archimedean plus every prime dividing a numerator or denominator of the
/// tuple, ascending. This is the finite support that all log⁺ / escape
/// bookkeeping needs.
pub fn relevant_places(xs: &[Rat]) -> Result<Vec<Place>> {
    if xs.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut primes = BTreeSet::new();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        for p in prime_factors(x.numer())? {
            primes.insert(p);
        }
        for p in prime_factors(x.denom())? {
            primes.insert(p);
        }
    }
    let mut out = vec![Place::Archimedean];
    out.extend(primes.into_iter().map(Place::Prime));
    Ok(out)
}

/// Weil height of a tuple: `Σ_v log⁺ ‖xs‖_v` over the relevant places.
/// For a single rational p/q in lowest terms this is `log max(|p|, q)`.
pub fn height(xs: &[Rat]) -> Result<HeightValue> {
    Ok(HeightValue::from_interval_nonneg(height_interval(xs)?))
}

/// The same height as an interval, for callers that combine enclosures.
pub fn height_interval(xs: &[Rat]) -> Result<Interval> {
    if xs.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut total = Interval::ZERO;
    for v in relevant_places(xs)? {
        let t = tuple_sup_log(xs, v)?.log_plus();
        total = total.add(t.to_interval());
    }
    Ok(total)
}

/// Product-formula defect `Σ_v log|x|_v` as an interval; contains 0 for every
/// nonzero rational, and the non-archimedean parts cancel `log|x|` exactly.
pub fn product_formula_defect(x: &Rat) -> Result<Interval> {
    assert!(!x.is_zero());
    let mut total = Interval::ZERO;
    for v in relevant_places(std::slice::from_ref(x))? {
        total = total.add(abs_log(x, v).to_interval());
    }
    Ok(total)
}

/// Parse the CLI rational format: `p/q` or `p`, optional leading minus,
/// no whitespace.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_s).map_err(|_| bad())?;
    let den = BigInt::from_str(den_s).map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn abs_log_examples() {
        // |-2| at the archimedean place: log 2.
        let l = abs_log(&rat(-2, 1), Place::Archimedean).to_interval();
        assert!(l.contains(2f64.ln()));
        // |1/2|_2 = 2, so log-size is +1 · log 2.
        match abs_log(&rat(1, 2), Place::Prime(2)) {
            LogSize::NonArch { coeff, p } => {
                assert_eq!(coeff, rat(1, 1));
                assert_eq!(p, 2);
            }
            other => panic!("{other:?}"),
        }
        // v_2(12) = 2, so coeff = -2.
        match abs_log(&rat(12, 1), Place::Prime(2)) {
            LogSize::NonArch { coeff, .. } => assert_eq!(coeff, rat(-2, 1)),
            other => panic!("{other:?}"),
        }
        assert!(abs_log(&Rat::zero(), Place::Prime(3)).is_neg_infinity());
    }

    #[test]
    fn tuple_sup_examples() {
        let l = tuple_sup_log(&[rat(1, 1), rat(-2, 1), rat(1, 3)], Place::Prime(3)).unwrap();
        match l {
            LogSize::NonArch { coeff, .. } => assert_eq!(coeff, rat(1, 1)),
            other => panic!("{other:?}"),
        }
        let z = tuple_sup_log(&[Rat::zero(), Rat::zero()], Place::Archimedean).unwrap();
        assert!(z.is_neg_infinity());
        let l = tuple_sup_log(&[rat(3, 2), rat(-4, 1)], Place::Archimedean).unwrap();
        assert!(l.to_interval().contains(4f64.ln()));
        assert!(tuple_sup_log(&[], Place::Archimedean).is_err());
    }

    #[test]
    fn height_examples() {
        let h = height(&[rat(3, 2)]).unwrap();
        assert!((h.value - 3f64.ln()).abs() < 1e-12);
        let h = height(&[rat(-2, 1)]).unwrap();
        assert!((h.value - 2f64.ln()).abs() < 1e-12);
        let h = height(&[Rat::zero()]).unwrap();
        assert_eq!(h.value, 0.0);
    }

    #[test]
    fn relevant_places_examples() {
        assert_eq!(
            relevant_places(&[rat(1, 6)]).unwrap(),
            vec![Place::Archimedean, Place::Prime(2), Place::Prime(3)]
        );
        assert_eq!(
            relevant_places(&[rat(5, 1)]).unwrap(),
            vec![Place::Archimedean, Place::Prime(5)]
        );
        assert_eq!(relevant_places(&[Rat::zero()]).unwrap(), vec![Place::Archimedean]);
    }

    #[test]
    fn product_formula_small() {
        for (n, d) in [(3, 7), (-22, 5), (100, 243), (1, 1), (-17, 64)] {
            let defect = product_formula_defect(&rat(n, d)).unwrap();
            assert!(defect.contains(0.0), "defect {defect:?} for {n}/{d}");
            assert!(defect.width() < 1e-12);
        }
    }

    #[test]
    fn primality_and_factors() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert_eq!(
            prime_factors(&BigInt::from(-360)).unwrap(),
            vec![2, 3, 5]
        );
        let big = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        assert_eq!(prime_factors(&big).unwrap(), vec![1_000_003, 998_244_353]);
    }

    #[test]
    fn place_constructor_verifies_primality() {
        assert!(Place::prime(7).is_ok());
        assert_eq!(Place::prime(8), Err(Error::NotPrime(8)));
    }

    #[test]
    fn parse_rational_format() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("17").unwrap(), rat(17, 1));
        assert!(parse_rational("1 / 2").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
