//! Newton polygons: exact non-archimedean root sizes without root extraction.
//!
//! For a polynomial `Σ a_i z^i` and a valuation `val`, the lower convex hull
//! of the points `(i, val(a_i))` determines the multiset of root valuations:
//! a hull segment of horizontal length ℓ and slope s carries ℓ roots of
//! valuation −s. Roots at zero (trailing zero coefficients) have valuation
//! +∞ and are tracked separately so multiplicities always sum to the degree.

use crate::poly::Poly;
use crate::{Error, Rat, Result};

/// The lower convex hull of coefficient valuations.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    /// Hull points `(coefficient index, valuation)`, ascending index, from the
    /// lowest nonzero coefficient to the leading one.
    pub vertices: Vec<(usize, Rat)>,
    /// `(root valuation, multiplicity)` per hull segment, in hull order.
    /// Root valuations are the negated hull slopes, so they appear in
    /// nonincreasing order; multiplicities plus `zero_roots` sum to the degree.
    pub slopes: Vec<(Rat, usize)>,
    /// Number of roots at zero (valuation +∞).
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Build the polygon from per-index valuations (`None` = zero coefficient).
    /// The final entry must be `Some` (nonzero leading coefficient).
    pub fn from_valuations(vals: &[Option<Rat>]) -> Result<Self> {
        if vals.is_empty() || vals.last().unwrap().is_none() {
            return Err(Error::ZeroPolynomial);
        }
        let first_nonzero = vals.iter().position(|v| v.is_some()).unwrap();
        let pts: Vec<(usize, Rat)> = vals
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.clone().map(|v| (i, v)))
            .collect();
        // Andrew-style lower hull over points with strictly increasing x.
        let mut hull: Vec<(usize, Rat)> = Vec::new();
        for (x, y) in pts {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2].clone();
                let (x2, y2) = hull[hull.len() - 1].clone();
                // pop if (x2,y2) lies on or above segment (x1,y1)-(x,y)
                let lhs = (&y2 - &y1) * Rat::from_integer((x as i64 - x1 as i64).into());
                let rhs = (&y - &y1) * Rat::from_integer((x2 as i64 - x1 as i64).into());
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((x, y));
        }
        let mut slopes = Vec::new();
        for w in hull.windows(2) {
            let (x1, y1) = &w[0];
            let (x2, y2) = &w[1];
            let run = Rat::from_integer(((x2 - x1) as i64).into());
            let slope = (y2 - y1) / run;
            slopes.push((-slope, x2 - x1));
        }
        Ok(NewtonPolygon {
            vertices: hull,
            slopes,
            zero_roots: first_nonzero,
        })
    }

    /// Log-size of the largest root, as a multiple of log p: the negative of
    /// the minimal root valuation. `None` when every root is zero.
    pub fn max_root_log_size(&self) -> Option<Rat> {
        // Valuations are nonincreasing along the hull, so the minimum is last.
        self.slopes.last().map(|(v, _)| -v.clone())
    }

    /// Total number of roots accounted for (must equal the degree).
    pub fn root_count(&self) -> usize {
        self.zero_roots + self.slopes.iter().map(|(_, m)| m).sum::<usize>()
    }

    /// The multiset of root valuations, `None` standing for +∞ (roots at 0).
    pub fn root_valuations(&self) -> Vec<(Option<Rat>, usize)> {
        let mut out: Vec<(Option<Rat>, usize)> = Vec::new();
        if self.zero_roots > 0 {
            out.push((None, self.zero_roots));
        }
        out.extend(self.slopes.iter().map(|(v, m)| (Some(v.clone()), *m)));
        out
    }
}

/// Newton polygon of a nonzero rational polynomial at the prime p.
pub fn newton_polygon(poly: &Poly, p: u64) -> Result<NewtonPolygon> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    NewtonPolygon::from_valuations(&poly.coeff_valuations(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::Rat;

    fn poly(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn square_minus_quarter_at_two() {
        // z^2 - 1/4 at p = 2: roots ±1/2 have valuation -1, size 2.
        let np = newton_polygon(&poly(&[(-1, 4), (0, 1), (1, 1)]), 2).unwrap();
        assert_eq!(np.slopes, vec![(rat(-1, 1), 2)]);
        assert_eq!(np.max_root_log_size(), Some(rat(1, 1)));
        assert_eq!(np.root_count(), 2);
    }

    #[test]
    fn square_minus_two_at_two() {
        // z^2 - 2 at p = 2: hull (0,1)-(2,0), roots of valuation 1/2,
        // size 2^(-1/2).
        let np = newton_polygon(&poly(&[(-2, 1), (0, 1), (1, 1)]), 2).unwrap();
        assert_eq!(np.slopes, vec![(rat(1, 2), 2)]);
        assert_eq!(np.max_root_log_size(), Some(rat(-1, 2)));
    }

    #[test]
    fn eisenstein_like_cubic_at_five() {
        // z^3 + 5z + 25 at p = 5: hull (0,2),(1,1),(3,0) — one root of
        // valuation 1, two of valuation 1/2; max size 5^(-1/2).
        let np = newton_polygon(&poly(&[(25, 1), (5, 1), (0, 1), (1, 1)]), 5).unwrap();
        assert_eq!(np.slopes, vec![(rat(1, 1), 1), (rat(1, 2), 2)]);
        assert_eq!(np.max_root_log_size(), Some(rat(-1, 2)));
        assert_eq!(np.vertices.len(), 3);
        assert_eq!(np.root_count(), 3);
    }

    #[test]
    fn zero_constant_term_counts_zero_roots() {
        // z^3 + 2z = z(z^2 + 2) at p = 2.
        let np = newton_polygon(&poly(&[(0, 1), (2, 1), (0, 1), (1, 1)]), 2).unwrap();
        assert_eq!(np.zero_roots, 1);
        assert_eq!(np.slopes, vec![(rat(1, 2), 2)]);
        assert_eq!(np.root_count(), 3);
    }

    #[test]
    fn valuations_nonincreasing_across_hull() {
        let np = newton_polygon(&poly(&[(8, 1), (1, 2), (0, 1), (3, 1), (1, 1)]), 2).unwrap();
        let vals: Vec<Rat> = np.slopes.iter().map(|(v, _)| v.clone()).collect();
        for w in vals.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert_eq!(np.root_count(), 4);
    }

    #[test]
    fn product_unions_slopes() {
        // (z^2 - 1/4)(z - 8) at 2: valuations -1, -1, +3.
        let a = poly(&[(-1, 4), (0, 1), (1, 1)]);
        let b = poly(&[(-8, 1), (1, 1)]);
        let np = newton_polygon(&a.mul(&b), 2).unwrap();
        assert_eq!(np.slopes, vec![(rat(3, 1), 1), (rat(-1, 1), 2)]);
    }
}
