//! Directed interval arithmetic over `f64`.
//!
//! Every archimedean quantity in this crate is carried as a closed interval
//! `[lo, hi]` guaranteed to contain the exact real value. Elementary
//! operations round outward by nudging the `f64` result a few ulps: one ulp
//! covers correctly-rounded arithmetic, and transcendental libm calls get a
//! wider pad (glibc's `ln`/`exp` are faithful to within ~1 ulp; we pad by 4).
//!
//! Conversions from big rationals go through explicit mantissa extraction so
//! the enclosure never depends on an unspecified rounding mode.

use crate::Rat;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Ulps of outward padding for transcendental libm results.
const LIBM_PAD: u32 = 4;

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::MIN_POSITIVE * f64::EPSILON; // smallest subnormal
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

fn pad_down(x: f64, ulps: u32) -> f64 {
    let mut y = x;
    for _ in 0..ulps {
        y = next_down(y);
    }
    y
}

fn pad_up(x: f64, ulps: u32) -> f64 {
    let mut y = x;
    for _ in 0..ulps {
        y = next_up(y);
    }
    y
}

/// A closed real interval with `f64` endpoints, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Natural log of 2, outward-rounded.
    pub fn ln2() -> Self {
        Interval::point(std::f64::consts::LN_2).pad(1)
    }

    /// Enclosure of `ln(n)` for a positive integer.
    pub fn ln_u64(n: u64) -> Self {
        assert!(n > 0);
        Interval::point(n as f64).ln()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    fn pad(self, ulps: u32) -> Self {
        Interval::new(pad_down(self.lo, ulps), pad_up(self.hi, ulps))
    }

    pub fn add(self, rhs: Self) -> Self {
        // x + 0 is exact; skipping the pad keeps exact zeros exact
        if rhs.lo == 0.0 && rhs.hi == 0.0 {
            return self;
        }
        if self.lo == 0.0 && self.hi == 0.0 {
            return rhs;
        }
        Interval::new(pad_down(self.lo + rhs.lo, 1), pad_up(self.hi + rhs.hi, 1))
    }

    pub fn sub(self, rhs: Self) -> Self {
        if rhs.lo == 0.0 && rhs.hi == 0.0 {
            return self;
        }
        Interval::new(pad_down(self.lo - rhs.hi, 1), pad_up(self.hi - rhs.lo, 1))
    }

    pub fn neg(self) -> Self {
        Interval::new(-self.hi, -self.lo)
    }

    pub fn mul(self, rhs: Self) -> Self {
        if (self.lo == 0.0 && self.hi == 0.0) || (rhs.lo == 0.0 && rhs.hi == 0.0) {
            return Interval::ZERO;
        }
        let cands = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = cands.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(pad_down(lo, 1), pad_up(hi, 1))
    }

    /// Scale by an exact small integer.
    pub fn scale(self, k: i64) -> Self {
        self.mul(Interval::point(k as f64))
    }

    /// Division; the divisor interval must not straddle zero.
    pub fn div(self, rhs: Self) -> Self {
        assert!(
            rhs.lo > 0.0 || rhs.hi < 0.0,
            "interval division by an interval containing zero"
        );
        let cands = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        let lo = cands.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(pad_down(lo, 1), pad_up(hi, 1))
    }

    /// Divide by an exact power `base^exp` (base a small positive integer).
    /// Exact when the power is representable; otherwise outward 1 ulp.
    pub fn div_pow(self, base: u64, exp: u32) -> Self {
        let p = (base as f64).powi(exp as i32);
        if p.is_finite() {
            Interval::new(pad_down(self.lo / p, 1), pad_up(self.hi / p, 1))
        } else {
            // D^k overflowed f64; the quotient is tiny. Bound crudely.
            let b = self.abs().hi;
            Interval::new(-b * f64::MIN_POSITIVE, b * f64::MIN_POSITIVE)
        }
    }

    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval::new(0.0, f64::max(-self.lo, self.hi))
        }
    }

    pub fn max(self, rhs: Self) -> Self {
        Interval::new(f64::max(self.lo, rhs.lo), f64::max(self.hi, rhs.hi))
    }

    pub fn min(self, rhs: Self) -> Self {
        Interval::new(f64::min(self.lo, rhs.lo), f64::min(self.hi, rhs.hi))
    }

    /// Hull of the union.
    pub fn hull(self, rhs: Self) -> Self {
        Interval::new(f64::min(self.lo, rhs.lo), f64::max(self.hi, rhs.hi))
    }

    /// max(0, self) pointwise — the `log^+` clamp.
    pub fn clamp_nonneg(self) -> Self {
        Interval::new(f64::max(self.lo, 0.0), f64::max(self.hi, 0.0))
    }

    /// Natural logarithm; requires a strictly positive interval.
    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of interval touching (-inf, 0]: {self:?}");
        Interval::new(pad_down(self.lo.ln(), LIBM_PAD), pad_up(self.hi.ln(), LIBM_PAD))
    }

    /// `ln(1 + x)` for |x| < 1, outward.
    pub fn ln_1p(self) -> Self {
        assert!(self.lo > -1.0);
        Interval::new(
            pad_down(self.lo.ln_1p(), LIBM_PAD),
            pad_up(self.hi.ln_1p(), LIBM_PAD),
        )
    }

    pub fn exp(self) -> Self {
        Interval::new(pad_down(self.lo.exp(), LIBM_PAD), pad_up(self.hi.exp(), LIBM_PAD))
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0);
        let lo = if self.lo == 0.0 { 0.0 } else { pad_down(self.lo.sqrt(), 1).max(0.0) };
        let hi = if self.hi == 0.0 { 0.0 } else { pad_up(self.hi.sqrt(), 1) };
        Interval::new(lo, hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects(&self, rhs: &Interval) -> bool {
        self.lo <= rhs.hi && rhs.lo <= self.hi
    }

    /// Certified strict comparison: every point of `self` exceeds every point
    /// of `rhs`.
    pub fn certainly_gt(&self, rhs: &Interval) -> bool {
        self.lo > rhs.hi
    }
}

/// Enclosure of `ln |n|` for a nonzero big integer of arbitrary size.
///
/// For wide integers the value is reconstructed from the top 63 bits and the
/// bit length, so it never overflows regardless of magnitude.
pub fn ln_bigint_abs(n: &BigInt) -> Interval {
    let mag = n.magnitude();
    assert!(!mag.is_zero(), "ln of zero");
    ln_biguint(mag)
}

fn ln_biguint(mag: &BigUint) -> Interval {
    let bits = mag.bits();
    if bits <= 53 {
        let v = mag.to_u64().unwrap() as f64; // exact
        return Interval::point(v).ln();
    }
    // mag = top * 2^shift + r with 0 <= r < 2^shift, top has 63 bits.
    let shift = bits - 63;
    let top = (mag >> shift).to_u64().unwrap();
    // top * 2^shift <= mag < (top+1) * 2^shift
    let lo = Interval::point(top as f64).ln().lo;
    let hi = Interval::point((top + 1) as f64).ln().hi;
    let shift_term = Interval::point(shift as f64).mul(Interval::ln2());
    Interval::new(lo, hi).add(shift_term)
}

/// Tight enclosure of a big rational as an `f64` interval.
///
/// Extracts 54 mantissa bits of `|num/den|` by shifting, so the result is an
/// honest two-sided bound even when the quotient is not representable.
pub fn rat_to_interval(r: &Rat) -> Interval {
    if r.is_zero() {
        return Interval::ZERO;
    }
    let neg = r.is_negative();
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Scale so q = floor(num · 2^s / den) has 52 or 53 bits: then both q and
    // q+1 are exact as f64 and scaling by 2^-s is exact in the normal range.
    let s = 52 - (nb - db);
    let (num_s, den_s) = if s >= 0 {
        (num << (s as u64), den)
    } else {
        (num, den << ((-s) as u64))
    };
    let q = &num_s / &den_s;
    let exact = (&q * &den_s) == num_s;
    let q64 = q.to_u64().expect("quotient sized to fit 53 bits");
    // |r| ∈ [q · 2^-s, (q+1) · 2^-s], the left end attained iff exact.
    let mut lo_mag = ldexp(q64 as f64, -s as i32);
    let mut hi_mag = if exact { lo_mag } else { ldexp((q64 + 1) as f64, -s as i32) };
    // Guard the extremes: overflow keeps a finite lower bound, and subnormal
    // scaling may round, so pad there.
    if !lo_mag.is_finite() {
        lo_mag = f64::MAX;
    }
    if lo_mag < 1e-300 {
        lo_mag = pad_down(lo_mag, 1).max(0.0);
        hi_mag = pad_up(hi_mag.max(f64::MIN_POSITIVE * f64::EPSILON), 1);
    }
    if neg {
        Interval::new(-hi_mag, -lo_mag)
    } else {
        Interval::new(lo_mag, hi_mag)
    }
}

fn ldexp(x: f64, e: i32) -> f64 {
    // x * 2^e without a libm dependency: split the exponent to stay in range.
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= f64::from_bits(((1023u64 + 1000) << 52) as u64);
        e -= 1000;
    }
    while e < -1000 {
        v *= f64::from_bits(((1023u64 - 1000) << 52) as u64);
        e += 1000;
    }
    v * f64::from_bits(((1023i64 + e as i64) << 52) as u64)
}

/// Enclosure of `ln |r|` for a nonzero rational, valid for any magnitude.
pub fn ln_rat_abs(r: &Rat) -> Interval {
    assert!(!r.is_zero());
    ln_bigint_abs(r.numer()).sub(ln_bigint_abs(r.denom()))
}

/// A complex rectangle: independent enclosures of real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(re: f64, im: f64) -> Self {
        ComplexInterval {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn from_rat(r: &Rat) -> Self {
        ComplexInterval {
            re: rat_to_interval(r),
            im: Interval::ZERO,
        }
    }

    pub fn add(self, rhs: Self) -> Self {
        ComplexInterval::new(self.re.add(rhs.re), self.im.add(rhs.im))
    }

    pub fn sub(self, rhs: Self) -> Self {
        ComplexInterval::new(self.re.sub(rhs.re), self.im.sub(rhs.im))
    }

    pub fn conj(self) -> Self {
        ComplexInterval::new(self.re, self.im.neg())
    }

    /// Division; the divisor's modulus must be bounded away from zero.
    pub fn div(self, rhs: Self) -> Self {
        let mag2 = rhs.re.mul(rhs.re).add(rhs.im.mul(rhs.im));
        assert!(mag2.lo > 0.0, "complex interval division by region containing 0");
        let num = self.mul(rhs.conj());
        ComplexInterval::new(num.re.div(mag2), num.im.div(mag2))
    }

    pub fn mul(self, rhs: Self) -> Self {
        ComplexInterval::new(
            self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        )
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = ComplexInterval::point(1.0, 0.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Enclosure of the modulus |z|.
    pub fn abs(self) -> Interval {
        let re2 = self.re.mul(self.re).clamp_nonneg();
        let im2 = self.im.mul(self.im).clamp_nonneg();
        // outward padding of the sum can dip below zero by a subnormal
        re2.add(im2).clamp_nonneg().sqrt()
    }

    /// Max over the rectangle of max(|re|, |im|) — cheap blow-up metric.
    pub fn sup_norm_hi(&self) -> f64 {
        f64::max(self.re.abs().hi, self.im.abs().hi)
    }

    pub fn width(&self) -> f64 {
        f64::max(self.re.width(), self.im.width())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use num_bigint::BigInt;

    #[test]
    fn interval_contains_exact_arithmetic() {
        let a = Interval::point(0.1).add(Interval::point(0.2));
        assert!(a.contains(0.1 + 0.2));
        assert!(a.width() < 1e-15);
    }

    #[test]
    fn ln_encloses_known_values() {
        let l = Interval::ln_u64(8);
        assert!(l.contains(3.0 * std::f64::consts::LN_2));
        assert!(l.width() < 1e-14);
    }

    #[test]
    fn rat_conversion_is_enclosure() {
        let r = rat(1, 3);
        let iv = rat_to_interval(&r);
        assert!(iv.lo <= 1.0 / 3.0 && 1.0 / 3.0 <= iv.hi);
        assert!(iv.width() < 3e-16);
        let neg = rat(-7, 2);
        let iv = rat_to_interval(&neg);
        assert_eq!(iv.lo, -3.5);
        assert_eq!(iv.hi, -3.5);
    }

    #[test]
    fn big_log_matches_small_log() {
        let n = BigInt::from(123456789u64);
        let l = ln_bigint_abs(&n);
        assert!(l.contains((123456789f64).ln()));
        // A 200-bit number: ln must be near 200*ln2 − ~0.
        let big = BigInt::from(1u8) << 200;
        let l = ln_bigint_abs(&big);
        assert!(l.contains(200.0 * std::f64::consts::LN_2));
        assert!(l.width() < 1e-12);
    }

    #[test]
    fn complex_abs() {
        let z = ComplexInterval::point(3.0, 4.0);
        assert!(z.abs().contains(5.0));
    }

    #[test]
    fn huge_rational_to_interval() {
        let r = Rat::new(BigInt::from(1u8) << 80, BigInt::from(3));
        let iv = rat_to_interval(&r);
        let approx = (2f64).powi(80) / 3.0;
        assert!(iv.lo <= approx && approx <= iv.hi);
        assert!(iv.width() / approx < 1e-15);
    }
}
