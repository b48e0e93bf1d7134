//! Certified complex root enclosures for exact rational polynomials.
//!
//! Approximate roots come from Durand–Kerner iteration in `f64`; certification
//! is a posteriori via Weierstrass disks: with `p` monic of degree n and
//! pairwise-distinct approximations `r_i`, the disks centered at `r_i` of
//! radius `n · |p(r_i) / Π_{j≠i}(r_i − r_j)|` cover all roots, and a connected
//! component made of k disks contains exactly k roots. The corrections are
//! evaluated in interval arithmetic against the exact coefficients, so the
//! resulting regions are genuine enclosures, not heuristics.

use crate::interval::{ComplexInterval, Interval};
use crate::poly::Poly;
use crate::{Error, Rat, Result};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

/// A certified region together with the number of roots it contains.
#[derive(Debug, Clone)]
pub struct RootRegion {
    pub region: ComplexInterval,
    pub count: usize,
}

/// Certified regions covering every distinct complex root of `p` (the root
/// *set*; multiplicities are collapsed). Roots at zero come back as an exact
/// point region.
pub fn certified_root_regions(p: &Poly) -> Result<Vec<RootRegion>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut regions = Vec::new();
    let mut q = p.clone();
    // Strip roots at zero exactly.
    let mut zero_roots = 0usize;
    while q.degree().unwrap_or(0) >= 1 && q.coeff(0).is_zero() {
        zero_roots += 1;
        q = Poly::new(q.coeffs()[1..].to_vec());
    }
    if zero_roots > 0 {
        regions.push(RootRegion {
            region: ComplexInterval::point(0.0, 0.0),
            count: 1,
        });
    }
    if q.degree().unwrap_or(0) == 0 {
        return Ok(regions);
    }
    let sf = q.square_free_part();
    if sf.degree() == Some(1) {
        // Exact rational root; no numerics needed.
        let root = -sf.coeff(0) / sf.coeff(1);
        regions.push(RootRegion {
            region: ComplexInterval::from_rat(&root),
            count: 1,
        });
        return Ok(regions);
    }
    let n = sf.degree().unwrap();
    let coeffs: Vec<Complex64> = sf
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    if coeffs.iter().any(|c| !c.re.is_finite()) {
        return Err(Error::Invalid("coefficient overflows f64 in root finding".into()));
    }
    let mut best: Option<Vec<RootRegion>> = None;
    for attempt in 0..3 {
        let approx = durand_kerner(&coeffs, 400 + 400 * attempt, 0.37 + 0.11 * attempt as f64);
        if let Some(mut regs) = certify(&sf, &approx, n) {
            let width: f64 = regs.iter().map(|r| r.region.width()).fold(0.0, f64::max);
            let better = match &best {
                None => true,
                Some(b) => {
                    width < b.iter().map(|r| r.region.width()).fold(0.0, f64::max)
                }
            };
            if better {
                regs.sort_by(|a, b| {
                    a.region
                        .re
                        .lo
                        .partial_cmp(&b.region.re.lo)
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
                best = Some(regs);
            }
            if width < 1e-10 {
                break;
            }
        }
    }
    match best {
        Some(regs) => {
            regions.extend(regs);
            Ok(regions)
        }
        None => Err(Error::Invalid(
            "root certification failed: approximations did not separate".into(),
        )),
    }
}

/// Enclosure of `max_i |root_i|`; `None` when the polynomial is a nonzero
/// constant (no roots). The zero polynomial is an error.
pub fn max_root_modulus(p: &Poly) -> Result<Option<Interval>> {
    let regions = certified_root_regions(p)?;
    if regions.is_empty() {
        return Ok(None);
    }
    let mut out: Option<Interval> = None;
    for r in &regions {
        let m = r.region.abs();
        out = Some(match out {
            None => m,
            Some(acc) => acc.max(m),
        });
    }
    Ok(out)
}

fn durand_kerner(coeffs: &[Complex64], iters: usize, phase: f64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy-style start radius.
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
            .min(1e150);
    let mut w: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius.max(0.5),
/* distinct angles */ 2.0 * std::f64::consts::PI * (k as f64 / n as f64 + phase),
            )
        })
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    for _ in 0..iters {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= w[i] - w[j];
                }
            }
            if denom.norm() == 0.0 || !denom.is_finite() {
                continue;
            }
            let delta = eval(w[i]) / denom;
            w[i] -= delta;
            let rel = delta.norm() / w[i].norm().max(1.0);
            max_step = max_step.max(rel);
        }
        if max_step < 1e-15 {
            break;
        }
    }
    w
}

fn certify(sf: &Poly, approx: &[Complex64], n: usize) -> Option<Vec<RootRegion>> {
    // Normalize to monic exactly (square_free_part already is, but be safe).
    let lc = sf.leading().unwrap().clone();
    let monic = sf.scale(&(Rat::one() / lc));
    let mut centers = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    for (i, &ri) in approx.iter().enumerate() {
        if !ri.is_finite() {
            return None;
        }
        let zi = ComplexInterval::point(ri.re, ri.im);
        let num = monic.eval_complex(zi);
        let mut den = ComplexInterval::point(1.0, 0.0);
        for (j, &rj) in approx.iter().enumerate() {
            if i != j {
                den = den.mul(zi.sub(ComplexInterval::point(rj.re, rj.im)));
            }
        }
        let den_mag = den.abs();
        if den_mag.lo <= 0.0 {
            return None; // coincident approximations; retry
        }
        let w = num.div(den);
        let rad = w.abs().hi * n as f64;
        if !rad.is_finite() {
            return None;
        }
        centers.push(ri);
        radii.push(rad);
    }
    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (centers[i] - centers[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut comps: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for (_, members) in comps {
        let mut re_lo = f64::INFINITY;
        let mut re_hi = f64::NEG_INFINITY;
        let mut im_lo = f64::INFINITY;
        let mut im_hi = f64::NEG_INFINITY;
        for &i in &members {
            re_lo = re_lo.min(centers[i].re - radii[i]);
            re_hi = re_hi.max(centers[i].re + radii[i]);
            im_lo = im_lo.min(centers[i].im - radii[i]);
            im_hi = im_hi.max(centers[i].im + radii[i]);
        }
        out.push(RootRegion {
            region: ComplexInterval::new(
                Interval::new(re_lo, re_hi),
                Interval::new(im_lo, im_hi),
            ),
            count: members.len(),
        });
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn quadratic_with_integer_roots() {
        // z^2 - 16: roots ±4.
        let p = Poly::new(vec![rat(-16, 1), rat(0, 1), rat(1, 1)]);
        let m = max_root_modulus(&p).unwrap().unwrap();
        assert!(m.contains(4.0));
        assert!(m.width() < 1e-10);
    }

    #[test]
    fn repeated_roots_are_collapsed() {
        // (z-1)^2 (z-2)
        let p = Poly::from_roots(&[rat(1, 1), rat(1, 1), rat(2, 1)]);
        let regions = certified_root_regions(&p).unwrap();
        assert_eq!(regions.len(), 2);
        let m = max_root_modulus(&p).unwrap().unwrap();
        assert!(m.contains(2.0));
        assert!(m.width() < 1e-9);
    }

    #[test]
    fn complex_pair() {
        // z^2 + 1: roots ±i, modulus 1.
        let p = Poly::new(vec![rat(1, 1), rat(0, 1), rat(1, 1)]);
        let m = max_root_modulus(&p).unwrap().unwrap();
        assert!(m.contains(1.0));
        assert!(m.width() < 1e-11);
    }

    #[test]
    fn zero_roots_and_linear_are_exact() {
        // z^3: all roots zero.
        let p = Poly::new(vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
        let m = max_root_modulus(&p).unwrap().unwrap();
        assert_eq!((m.lo, m.hi), (0.0, 0.0));
        // 2z + 3: root -3/2, exact.
        let p = Poly::new(vec![rat(3, 1), rat(2, 1)]);
        let m = max_root_modulus(&p).unwrap().unwrap();
        assert!(m.contains(1.5));
        assert!(m.width() < 1e-15);
    }

    #[test]
    fn wilkinson_light() {
        let roots: Vec<_> = (1..=8).map(|k| rat(k, 1)).collect();
        let p = Poly::from_roots(&roots);
        let m = max_root_modulus(&p).unwrap().unwrap();
        assert!(m.contains(8.0));
        assert!(m.width() < 1e-6, "width {}", m.width());
    }
}
