//! Newton polygons of polynomials in F_q[T][x] at a place of F_q(T).

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, UniPoly};

/// A place of F_q(T): the zero of T, the point at infinity, or the zero of a
/// monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Zero,
    Infinity,
    Finite(UniPoly),
}

impl Place {
    pub fn finite(pi: UniPoly) -> Result<Place> {
        if !pi.is_irreducible() || pi.lc() != pi.field().one() {
            return Err(Error::InvalidArgument(format!("{pi} is not monic irreducible")));
        }
        if pi.as_monomial().is_some_and(|(_, k)| k == 1) {
            return Ok(Place::Zero);
        }
        Ok(Place::Finite(pi))
    }

    /// Residue-field degree over F_q.
    pub fn degree(&self) -> usize {
        match self {
            Place::Zero | Place::Infinity => 1,
            Place::Finite(pi) => pi.degree().unwrap_or(1),
        }
    }
}

/// Valuation of a nonzero polynomial in T at a place (None for zero).
pub fn valuation(a: &UniPoly, place: &Place) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    Some(match place {
        Place::Zero => a.ord0()? as i64,
        Place::Infinity => -(a.degree()? as i64),
        Place::Finite(pi) => a.ord_at(pi)? as i64,
    })
}

/// Lower convex hull of the points (i, v(a_i)), vertices left to right with
/// no collinear interior points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: (i64, i64),
    pub end: (i64, i64),
}

impl Segment {
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(self.end.1 - self.start.1, self.end.0 - self.start.0)
    }

    pub fn length(&self) -> i64 {
        self.end.0 - self.start.0
    }

    /// Does the segment contain no lattice points besides its endpoints?
    pub fn is_primitive(&self) -> bool {
        num_integer::gcd(self.end.1 - self.start.1, self.length()) == 1
    }
}

impl NewtonPolygon {
    pub fn from_points(mut pts: Vec<(i64, i64)>) -> Self {
        pts.sort();
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for p in pts {
            if hull.last().is_some_and(|l| l.0 == p.0) {
                continue; // same abscissa: the sort put the lower one first
            }
            while hull.len() >= 2 {
                let o = hull[hull.len() - 2];
                let a = hull[hull.len() - 1];
                let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        NewtonPolygon { vertices: hull }
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| Segment { start: w[0], end: w[1] })
            .collect()
    }

    /// (slope, horizontal length) per segment, slopes strictly increasing.
    pub fn slopes(&self) -> Vec<(Ratio<i64>, i64)> {
        self.segments().iter().map(|s| (s.slope(), s.length())).collect()
    }

    /// Sum of slope times length over the segments of positive slope. Equals
    /// the number of roots (with multiplicity, weighted by minus their
    /// valuation) that have negative valuation.
    pub fn pole_mass(&self) -> Ratio<i64> {
        self.slopes()
            .into_iter()
            .filter(|(s, _)| *s > Ratio::from_integer(0))
            .map(|(s, l)| s * l)
            .sum()
    }

    /// A single segment without interior lattice points forces
    /// irreducibility over the completion.
    pub fn is_single_primitive_segment(&self) -> bool {
        let segs = self.segments();
        segs.len() == 1 && segs[0].is_primitive()
    }

    /// min_i (v(a_i) + i*w): the lowest line of slope -w touching the hull.
    pub fn support(&self, w: Ratio<i64>) -> Ratio<i64> {
        self.vertices
            .iter()
            .map(|&(i, v)| Ratio::from_integer(v) + w * i)
            .min()
            .expect("nonempty polygon")
    }
}

pub fn newton_polygon(f: &BiPoly, place: &Place) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| valuation(a, place).map(|v| (i as i64, v)))
        .collect();
    Ok(NewtonPolygon::from_points(pts))
}
