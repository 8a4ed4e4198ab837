//! Heights of algebraic functions over F_q(T), the minimal-height criteria,
//! genus windows and composite polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::localfield::{root_branches, Reduction};
use crate::poly::{
    factor_univariate, is_squarefree, newton_polygon, normalize_minpoly, resultant_y, BiPoly,
    NewtonPolygon, Place, UniPoly, YPoly,
};

/// A nonnegative rational in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeightValue {
    num: u64,
    den: u64,
}

impl HeightValue {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        Ok(HeightValue { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn from_ratio(r: Ratio<i64>) -> Result<Self> {
        if *r.numer() < 0 {
            return Err(Error::InvalidArgument("negative height".into()));
        }
        Self::new(*r.numer() as u64, *r.denom() as u64)
    }
}

impl PartialOrd for HeightValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for HeightValue {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as u128 * o.den as u128).cmp(&(o.num as u128 * self.den as u128))
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for HeightValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { pos: 0, msg: format!("bad height '{s}'") };
        let (a, b) = s.split_once('/').unwrap_or((s, "1"));
        let num = a.trim().parse().map_err(|_| bad())?;
        let den = b.trim().parse().map_err(|_| bad())?;
        Self::new(num, den)
    }
}

impl Serialize for HeightValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HeightValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// deg_T f / deg_x f. This is the height of a root when f is irreducible.
pub fn height_minpoly(f: &BiPoly) -> Result<HeightValue> {
    let f = normalize_minpoly(f)?;
    let d = f.deg_x().unwrap();
    if d == 0 {
        return Err(Error::InvalidArgument("polynomial is constant in x".into()));
    }
    HeightValue::new(f.deg_t().unwrap() as u64, d as u64)
}

/// Contribution of each place to deg_x(f) * height, as (place, mass).
pub fn local_pole_masses(f: &BiPoly) -> Result<Vec<(Place, Ratio<i64>)>> {
    let f = normalize_minpoly(f)?;
    if f.deg_x() == Some(0) {
        return Err(Error::InvalidArgument("polynomial is constant in x".into()));
    }
    if !is_squarefree(&f) {
        return Err(Error::NotSquarefree);
    }
    let mut out = Vec::new();
    for (pi, _) in factor_univariate(&f.lc())? {
        let place = Place::finite(pi)?;
        let w = Ratio::from_integer(place.degree() as i64);
        out.push((place.clone(), newton_polygon(&f, &place)?.pole_mass() * w));
    }
    out.push((Place::Infinity, newton_polygon(&f, &Place::Infinity)?.pole_mass()));
    Ok(out)
}

/// Height as (1/d) times the total pole mass of the roots over all places
/// of F_q(T). Only places dividing the leading coefficient and infinity can
/// contribute.
pub fn height_local(f: &BiPoly) -> Result<HeightValue> {
    let d = f.deg_x().ok_or(Error::ZeroPolynomial)? as i64;
    let total: Ratio<i64> = local_pole_masses(f)?.into_iter().map(|(_, m)| m).sum();
    HeightValue::from_ratio(total / d)
}

/// Result of the minimal-height checks. `pass` is the conjunction of the
/// individual flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub r: usize,
    pub degree_relation: bool,
    pub newton_polygon: bool,
    /// Per shift u in field enumeration order.
    pub newton_polygon_per_shift: Vec<bool>,
    pub leading_coefficient: bool,
    pub constant_coefficient: bool,
    pub well_distributed: bool,
    pub ord_one: bool,
    pub pass: bool,
}

fn expected_polygon(r: i64, q: i64) -> NewtonPolygon {
    NewtonPolygon { vertices: vec![(0, r), (r, 0), (r * q, 0), (r * (q + 1), r)] }
}

/// Check f against the shape forced on a minimal polynomial of height
/// 1/(q+1). `r` defaults to deg_T f. Never fails: a malformed input only
/// produces false flags.
pub fn check_min_height_criteria(f: &BiPoly, r: Option<usize>) -> CriteriaReport {
    let field = f.field();
    let q = field.q() as usize;
    let f = normalize_minpoly(f).unwrap_or_else(|_| f.clone());
    let r = r.or(f.deg_t()).unwrap_or(0);
    let ri = r as i64;
    let t_r = UniPoly::monomial(field, field.one(), r);

    let degree_relation = r > 0 && f.deg_x() == Some(r * (q + 1)) && f.deg_t() == Some(r);
    let leading_coefficient = !f.is_zero() && f.lc() == t_r;

    let mut per_shift = Vec::with_capacity(q);
    let mut constant_coefficient = !f.is_zero();
    let want = expected_polygon(ri, q as i64);
    for u in field.elements() {
        let g = f.shift_x(u);
        per_shift.push(newton_polygon(&g, &Place::Zero).map_or(false, |np| np == want));
        let c = g.coeff(0);
        constant_coefficient &= c.as_monomial().is_some_and(|(_, k)| k == r);
    }
    let newton_ok = !per_shift.is_empty() && per_shift.iter().all(|&b| b);

    let (well_distributed, ord_one) = match (r > 0 && is_squarefree(&f))
        .then(|| root_branches(&f).ok())
        .flatten()
    {
        Some(branches) => {
            let mut counts = vec![0usize; q + 1];
            for b in &branches {
                match b.reduction() {
                    Reduction::Finite(u) => counts[u.index() as usize] += 1,
                    Reduction::Infinity => counts[q] += 1,
                }
            }
            let wd = Some(branches.len()) == f.deg_x() && counts.iter().all(|&c| c == r);
            (wd, !branches.is_empty() && branches.iter().all(|b| b.has_ord_one()))
        }
        None => (false, false),
    };

    let pass = degree_relation
        && newton_ok
        && leading_coefficient
        && constant_coefficient
        && well_distributed
        && ord_one;
    CriteriaReport {
        r,
        degree_relation,
        newton_polygon: newton_ok,
        newton_polygon_per_shift: per_shift,
        leading_coefficient,
        constant_coefficient,
        well_distributed,
        ord_one,
        pass,
    }
}

/// Genus window for a curve of gonality n over F_q carrying a function of
/// minimal height.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusBounds {
    /// (n-1)(q+1)/(2 sqrt q) as a number and as text.
    pub lower_real: f64,
    pub lower_expr: String,
    /// Smallest integer at least `lower_real`, computed exactly.
    pub lower: u64,
    pub upper: u64,
}

pub fn genus_bounds(q: u64, n: u64) -> Result<GenusBounds> {
    if n == 0 || q < 2 {
        return Err(Error::InvalidArgument("need q >= 2 and n >= 1".into()));
    }
    let a = (n - 1) * (q + 1);
    // least g with 2 g sqrt(q) >= a, i.e. 4 g^2 q >= a^2
    let mut lower = ((a as f64) / (2.0 * (q as f64).sqrt())).floor() as u64;
    lower = lower.saturating_sub(1);
    while 4 * (lower as u128).pow(2) * (q as u128) < (a as u128).pow(2) {
        lower += 1;
    }
    // (q+1)(n-1)^2/2 + (q-1)(n-1)/2, which is always an integer
    let upper = (n - 1) * (n * (q + 1) - 2) / 2;
    let g = a.gcd(&2);
    let lower_expr = if a == 0 {
        "0".to_string()
    } else if g == 2 {
        format!("{}/sqrt({q})", a / 2)
    } else {
        format!("{a}/(2*sqrt({q}))")
    };
    Ok(GenusBounds {
        lower_real: a as f64 / (2.0 * (q as f64).sqrt()),
        lower_expr,
        lower,
        upper,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositeOp {
    Sum,
    Product,
}

/// A polynomial whose roots are the sums (or products) alpha + beta over
/// roots alpha of f and beta of g, normalized.
pub fn composite_poly(f: &BiPoly, g: &BiPoly, op: CompositeOp) -> Result<BiPoly> {
    let field = f.field();
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field().q(), g.field().q()));
    }
    if !is_squarefree(f) || !is_squarefree(g) {
        return Err(Error::NotSquarefree);
    }
    let fy = YPoly::from_bipoly_in_y(f);
    let res = match op {
        CompositeOp::Sum => {
            let x_minus_y = YPoly::from_coeffs(field, vec![BiPoly::x(field), -&BiPoly::one(field)]);
            resultant_y(&fy, &YPoly::compose(g, &x_minus_y))?
        }
        CompositeOp::Product => {
            let e = g.deg_x().ok_or(Error::ZeroPolynomial)?;
            // y^e g(x/y) = sum_i b_i x^i y^(e-i)
            let mut c = vec![BiPoly::zero(field); e + 1];
            for (i, b) in g.coeffs().iter().enumerate() {
                c[e - i] = BiPoly::from_uni(b.clone()).shl_x(i);
            }
            let r = resultant_y(&fy, &YPoly::from_coeffs(field, c))?;
            strip_x_power(&r)
        }
    };
    normalize_minpoly(&res)
}

fn strip_x_power(f: &BiPoly) -> BiPoly {
    let k = f.coeffs().iter().take_while(|a| a.is_zero()).count();
    if k == 0 || f.is_zero() {
        return f.clone();
    }
    BiPoly::from_coeffs(f.field(), f.coeffs()[k..].to_vec())
}
