//! Dense univariate polynomials over Q.
//!
//! `Poly` is the general type (coefficients ascending, canonical: empty for
//! zero, last entry nonzero otherwise). `MonicPoly` stores only the m
//! non-leading coefficients of a monic degree-m polynomial, constant term
//! first, matching the CLI text format. Degrees here are tiny, so everything
//! is plain dense arithmetic.

use crate::arith::{divisors, valuation_int};
use crate::interval::{rat_to_interval, ComplexInterval, Interval};
use crate::{Error, Rat, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// A polynomial over Q, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: Interval) -> Interval {
        let mut acc = Interval::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(rat_to_interval(c));
        }
        acc
    }

    pub fn eval_complex(&self, z: ComplexInterval) -> ComplexInterval {
        let mut acc = ComplexInterval::point(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(ComplexInterval::from_rat(c));
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, rhs: &Poly) -> (Poly, Poly) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let dlead = rhs.leading().unwrap().clone();
        let dd = rhs.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &dlead;
            if !q.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    let t = &q * b;
                    rem[k + j] -= t;
                }
            }
            quot[k] = q;
            // the top coefficient is now exactly zero
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) && rem.len() > dd {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm over Q.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if let Some(lc) = a.leading().cloned() {
            a.scale(&(Rat::one() / lc))
        } else {
            a
        }
    }

    /// Square-free part: self / gcd(self, self′), monic-normalized.
    pub fn square_free_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            let lc = self.leading().unwrap().clone();
            return self.scale(&(Rat::one() / lc));
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        let lc = q.leading().unwrap().clone();
        q.scale(&(Rat::one() / lc))
    }

    /// Clear denominators and content: the primitive integer model, up to sign.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        ints.into_iter().map(|v| v / &content).collect()
    }

    /// All rational roots with multiplicity, via rational-root candidates on
    /// the primitive integer model and repeated exact division.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut poly = self.clone();
        let mut roots = Vec::new();
        // Strip roots at zero first.
        while poly.coeffs.len() > 1 && poly.coeffs[0].is_zero() {
            roots.push(Rat::zero());
            poly = Poly::new(poly.coeffs[1..].to_vec());
        }
        if poly.degree().unwrap_or(0) == 0 {
            roots.sort();
            return Ok(roots);
        }
        let ints = poly.primitive_integer_coeffs();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        const DIVISOR_CAP: usize = 200_000;
        let mut candidates: Vec<Rat> = Vec::new();
        for p in divisors(&a0, DIVISOR_CAP)? {
            for q in divisors(&an, DIVISOR_CAP)? {
                let r = Rat::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            while poly.degree().unwrap_or(0) >= 1 && poly.eval(&cand).is_zero() {
                roots.push(cand.clone());
                let lin = Poly::new(vec![-cand.clone(), Rat::one()]);
                let (q, r) = poly.div_rem(&lin);
                debug_assert!(r.is_zero());
                poly = q;
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Resultant of two polynomials over Q via the Euclidean remainder
    /// sequence. Exact; fine at the tiny degrees used here.
    pub fn resultant(&self, rhs: &Poly) -> Rat {
        fn go(a: &Poly, b: &Poly) -> Rat {
            let da = a.degree().expect("resultant of zero polynomial");
            match b.degree() {
                None => Rat::zero(),
                Some(0) => pow_rat(b.coeffs[0].clone(), da as u32),
                Some(db) => {
                    let (_, r) = a.div_rem(b);
                    let sign = if (da * db) % 2 == 1 { -Rat::one() } else { Rat::one() };
                    let dr = r.degree().map_or(0, |d| d);
                    if r.is_zero() {
                        return Rat::zero();
                    }
                    let lc = pow_rat(b.leading().unwrap().clone(), (da - dr) as u32);
                    sign * lc * go(b, &r)
                }
            }
        }
        if self.degree() < rhs.degree() {
            let da = self.degree().map_or(0, |d| d);
            let db = rhs.degree().unwrap();
            let sign = if (da * db) % 2 == 1 { -Rat::one() } else { Rat::one() };
            return sign * rhs.resultant(self);
        }
        go(self, rhs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rat]) -> Poly {
        let mut acc = Poly::constant(Rat::one());
        for r in roots {
            acc = acc.mul(&Poly::new(vec![-r.clone(), Rat::one()]));
        }
        acc
    }

    /// p-adic valuations of the coefficients, `None` where the coefficient is
    /// zero — the input points of a Newton polygon.
    pub fn coeff_valuations(&self, p: u64) -> Vec<Option<Rat>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    None
                } else {
                    let v = valuation_int(c.numer(), p) - valuation_int(c.denom(), p);
                    Some(Rat::from(BigInt::from(v)))
                }
            })
            .collect()
    }
}

fn pow_rat(base: Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= &base;
    }
    acc
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// A monic polynomial `z^m + c_{m-1} z^{m-1} + ... + c_0`, stored as the m
/// non-leading coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPoly {
    coeffs: Vec<Rat>,
}

impl MonicPoly {
    /// `coeffs[i]` is the coefficient of `z^i`; the leading 1 is implicit.
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall { need: 1, got: 0 });
        }
        Ok(MonicPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lower_coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn to_poly(&self) -> Poly {
        let mut cs = self.coeffs.clone();
        cs.push(Rat::one());
        Poly::new(cs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.to_poly().eval(x)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rat]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::DegreeTooSmall { need: 1, got: 0 });
        }
        let p = Poly::from_roots(roots);
        let mut cs = p.coeffs().to_vec();
        cs.pop(); // leading 1
        cs.resize(roots.len(), Rat::zero());
        Ok(MonicPoly { coeffs: cs })
    }

    /// `g(z^d)`: the coefficient of `z^{d·i}` is g's coefficient of `z^i`.
    pub fn compose_power(&self, d: usize) -> MonicPoly {
        assert!(d >= 1);
        let m = self.degree();
        let mut out = vec![Rat::zero(); d * m];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[d * i] = c.clone();
        }
        MonicPoly { coeffs: out }
    }

    pub fn derivative(&self) -> Poly {
        self.to_poly().derivative()
    }
}

/// The pair (g, d) representing `f(z) = g(z^d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedMap {
    pub g: MonicPoly,
    pub d: usize,
}

impl ComposedMap {
    /// Requires total degree `d · deg(g) >= 2` so the dynamics are nontrivial.
    pub fn new(g: MonicPoly, d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::Invalid("d must be >= 1".into()));
        }
        let total = d * g.degree();
        if total < 2 {
            return Err(Error::DegreeTooSmall { need: 2, got: total });
        }
        Ok(ComposedMap { g, d })
    }

    pub fn inner_degree(&self) -> usize {
        self.g.degree()
    }

    /// Total degree D = d·m.
    pub fn total_degree(&self) -> usize {
        self.d * self.g.degree()
    }

    /// The expanded polynomial f = g(z^d).
    pub fn expanded(&self) -> MonicPoly {
        self.g.compose_power(self.d)
    }

    /// f(x), evaluated as g(x^d) without expanding.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut xd = Rat::one();
        for _ in 0..self.d {
            xd *= x;
        }
        self.g.eval(&xd)
    }

    pub fn eval_complex(&self, z: ComplexInterval) -> ComplexInterval {
        let zd = z.pow(self.d as u32);
        let mut acc = ComplexInterval::point(1.0, 0.0);
        // Horner on g at z^d, with the implicit leading 1.
        for c in self.g.lower_coeffs().iter().rev() {
            acc = acc.mul(zd).add(ComplexInterval::from_rat(c));
        }
        acc
    }
}

/// `Res_y(g'(y), x - g(y))` normalized monic: the polynomial whose roots are
/// exactly the critical values g(c_j) of g, with multiplicity. Computed by
/// interpolation at x = 0, 1, ..., m-2 (exact over Q). Requires m >= 2.
pub fn critical_value_poly(g: &MonicPoly) -> Poly {
    let m = g.degree();
    assert!(m >= 2, "critical_value_poly needs deg(g) >= 2");
    let gp = g.derivative();
    let n = m - 1; // degree of the result
    let xs: Vec<Rat> = (0..=n as i64).map(|i| Rat::from(BigInt::from(i))).collect();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|x| {
            // Res_y(g'(y), x - g(y)) up to the constant m^m shared by all x.
            let shifted = Poly::constant(x.clone()).sub(&g.to_poly());
            gp.resultant(&shifted)
        })
        .collect();
    let interp = lagrange_interpolate(&xs, &ys);
    let lc = interp.leading().expect("nonzero resultant polynomial").clone();
    assert!(!lc.is_zero(), "degenerate critical-value resultant");
    interp.scale(&(Rat::one() / lc))
}

fn lagrange_interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let mut acc = Poly::zero();
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = Poly::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::new(vec![-xj.clone(), Rat::one()]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(ys[i].clone() / denom)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn monic(cs: &[(i64, i64)]) -> MonicPoly {
        MonicPoly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn compose_power_examples() {
        // (z - 2, d=2) -> z^2 - 2
        let g = monic(&[(-2, 1)]);
        let f = g.compose_power(2);
        assert_eq!(f.lower_coeffs(), &[rat(-2, 1), rat(0, 1)]);
        // (z^2 - 1, d=2) -> z^4 - 1
        let g = monic(&[(-1, 1), (0, 1)]);
        let f = g.compose_power(2);
        assert_eq!(f.lower_coeffs(), &[rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        // (z^2 + 3z + 1, d=3) -> z^6 + 3z^3 + 1
        let g = monic(&[(1, 1), (3, 1)]);
        let f = g.compose_power(3);
        assert_eq!(
            f.lower_coeffs(),
            &[rat(1, 1), rat(0, 1), rat(0, 1), rat(3, 1), rat(0, 1), rat(0, 1)]
        );
        // compose_power(g, 1) = g
        assert_eq!(g.compose_power(1), g);
    }

    #[test]
    fn compose_power_is_multiplicative() {
        let g = monic(&[(1, 2), (-3, 1), (0, 1)]);
        assert_eq!(g.compose_power(2).compose_power(3), g.compose_power(6));
    }

    #[test]
    fn derivative_examples() {
        let f = monic(&[(-2, 1), (0, 1)]).derivative(); // z^2 - 2 -> 2z
        assert_eq!(f.coeffs(), &[rat(0, 1), rat(2, 1)]);
        let f = monic(&[(-1, 1), (0, 1), (0, 1), (0, 1)]).derivative(); // z^4 - 1 -> 4z^3
        assert_eq!(f.coeffs(), &[rat(0, 1), rat(0, 1), rat(0, 1), rat(4, 1)]);
        let f = monic(&[(0, 1), (-3, 1), (0, 1)]).derivative(); // z^3 - 3z -> 3z^2 - 3
        assert_eq!(f.coeffs(), &[rat(-3, 1), rat(0, 1), rat(3, 1)]);
    }

    #[test]
    fn rational_roots_examples() {
        let p = Poly::new(vec![rat(0, 1), rat(2, 1)]); // 2z
        assert_eq!(p.rational_roots().unwrap(), vec![rat(0, 1)]);
        let p = Poly::new(vec![rat(-3, 1), rat(0, 1), rat(3, 1)]); // 3z^2 - 3
        assert_eq!(p.rational_roots().unwrap(), vec![rat(-1, 1), rat(1, 1)]);
        let p = Poly::new(vec![rat(-2, 1), rat(0, 1), rat(1, 1)]); // z^2 - 2
        assert!(p.rational_roots().unwrap().is_empty());
        assert!(Poly::zero().rational_roots().is_err());
    }

    #[test]
    fn rational_roots_multiplicity() {
        // (z - 1/2)^2 (z + 3)
        let p = Poly::from_roots(&[rat(1, 2), rat(1, 2), rat(-3, 1)]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![rat(-3, 1), rat(1, 2), rat(1, 2)]
        );
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = Poly::from_roots(&[rat(1, 1), rat(2, 1), rat(3, 1)]);
        let b = Poly::from_roots(&[rat(2, 1), rat(5, 1)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        let g = a.gcd(&b);
        assert_eq!(g, Poly::from_roots(&[rat(2, 1)]));
    }

    #[test]
    fn resultant_detects_common_roots() {
        let a = Poly::from_roots(&[rat(1, 1), rat(2, 1)]);
        let b = Poly::from_roots(&[rat(2, 1), rat(7, 1)]);
        assert!(a.resultant(&b).is_zero());
        let c = Poly::from_roots(&[rat(3, 1)]);
        // Res((z-1)(z-2), z-3) = (3-1)(3-2) = 2
        assert_eq!(a.resultant(&c), rat(2, 1));
    }

    #[test]
    fn critical_values_of_cubic() {
        // g = z^3 - 3z has critical points ±1 and critical values ∓2.
        let g = monic(&[(0, 1), (-3, 1), (0, 1)]);
        let cv = critical_value_poly(&g);
        // roots ±2 -> y^2 - 4
        assert_eq!(cv.coeffs(), &[rat(-4, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn critical_values_with_multiplicity() {
        // g = z^2 + z: critical point -1/2, value -1/4.
        let g = monic(&[(0, 1), (1, 1)]);
        let cv = critical_value_poly(&g);
        assert_eq!(cv.coeffs(), &[rat(1, 4), rat(1, 1)]);
    }

    #[test]
    fn square_free_part_strips_multiplicity() {
        let p = Poly::from_roots(&[rat(1, 1), rat(1, 1), rat(-2, 1)]);
        assert_eq!(p.square_free_part(), Poly::from_roots(&[rat(1, 1), rat(-2, 1)]));
    }

    #[test]
    fn composed_map_validation() {
        let g = monic(&[(-2, 1)]);
        assert!(ComposedMap::new(g.clone(), 1).is_err()); // degree 1
        let f = ComposedMap::new(g, 2).unwrap();
        assert_eq!(f.total_degree(), 2);
        assert_eq!(f.eval(&rat(3, 1)), rat(7, 1)); // 9 - 2
    }
}
