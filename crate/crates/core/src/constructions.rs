//! Explicit families of totally T-adic functions, each generated together
//! with a verification of its advertised properties.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::{newton_segment_certificate, recombine_irreducible, Certificate};
use crate::gf::{find_as_nonimage, find_nonsquare, irreducible_poly_where, Field};
use crate::heights::{check_min_height_criteria, height_local, height_minpoly, CriteriaReport, HeightValue};
use crate::localfield::{profile_of_branches, root_branches, SplitProfile};
use crate::poly::{normalize_minpoly, resultant_y, BiPoly, UniPoly, YPoly};

/// Largest x-degree a tower is allowed to reach by default.
pub const DEFAULT_TOWER_DEGREE_BUDGET: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GonalityOne,
    Cyclic,
    Char2Hyperelliptic,
    PhiTower,
    PsiTower,
    IntegralBase,
    UnitBase,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GonalityOne => "gonality-one",
            Family::Cyclic => "cyclic",
            Family::Char2Hyperelliptic => "char2",
            Family::PhiTower => "phi-tower",
            Family::PsiTower => "psi-tower",
            Family::IntegralBase => "integral-base",
            Family::UnitBase => "unit-base",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            Family::GonalityOne,
            Family::Cyclic,
            Family::Char2Hyperelliptic,
            Family::PhiTower,
            Family::PsiTower,
            Family::IntegralBase,
            Family::UnitBase,
        ];
        let norm = s.replace('_', "-");
        all.into_iter()
            .find(|f| f.name() == norm || (norm == "char2-hyperelliptic" && *f == Family::Char2Hyperelliptic))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family '{s}'")))
    }
}

/// A named structural identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Property {
    pub name: String,
    pub holds: bool,
}

impl Property {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Property { name: name.into(), holds }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub splits: bool,
    pub profile: SplitProfile,
    pub irreducible: Option<bool>,
    pub certificate: Option<Certificate>,
    pub height: HeightValue,
    pub height_local: Option<HeightValue>,
    pub height_matches: bool,
    pub criteria: Option<CriteriaReport>,
    pub properties: Vec<Property>,
    /// Every advertised property holds.
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub family: Family,
    pub q: u32,
    /// n for the cyclic family and the psi tower, j for the phi tower, 1
    /// otherwise.
    pub param: usize,
    pub poly: BiPoly,
    pub expected_height: HeightValue,
    pub verified: Verification,
}

impl Serialize for ConstructionResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConstructionResult", 7)?;
        st.serialize_field("family", self.family.name())?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("param", &self.param)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.serialize_field("height", &self.verified.height)?;
        st.serialize_field("expected_height", &self.expected_height)?;
        st.serialize_field("verified", &self.verified)?;
        st.end()
    }
}

/// Which checks a family advertises.
struct Claims {
    irreducible_by_recombination: bool,
    criteria_r: Option<usize>,
}

fn verify(f: &BiPoly, expected: HeightValue, claims: Claims, mut properties: Vec<Property>) -> Result<Verification> {
    let branches = root_branches(f)?;
    let profile = profile_of_branches(f, &branches);
    let (irreducible, certificate) = if f.deg_x() == Some(1) {
        (Some(true), Some(Certificate::Linear))
    } else if let Some(place) = newton_segment_certificate(f) {
        (Some(true), Some(Certificate::NewtonSegment(format!("{place:?}"))))
    } else if claims.irreducible_by_recombination && profile.splits {
        let fac = recombine_irreducible(f)?;
        (Some(fac.irreducible), Some(fac.certificate))
    } else {
        (None, None)
    };
    let height = height_minpoly(f)?;
    let height_local = height_local(f).ok();
    let height_matches = height == expected && height_local.map_or(true, |h| h == expected);
    let criteria = claims.criteria_r.map(|r| check_min_height_criteria(f, Some(r)));
    if let Some(c) = &criteria {
        properties.push(Property::new(format!("criteria with r = {}", c.r), c.pass));
    }
    let ok = profile.splits
        && irreducible == Some(true)
        && height_matches
        && properties.iter().all(|p| p.holds);
    Ok(Verification {
        splits: profile.splits,
        profile,
        irreducible,
        certificate,
        height,
        height_local,
        height_matches,
        criteria,
        properties,
        ok,
    })
}

fn hv(num: u64, den: u64) -> HeightValue {
    HeightValue::new(num, den).expect("nonzero denominator")
}

fn x_poly(f: Field, coeffs: &[(usize, crate::gf::FieldElem)]) -> BiPoly {
    let mut p = BiPoly::zero(f);
    for &(k, a) in coeffs {
        p.add_assign_ref(&BiPoly::monomial(f, a, 0, k));
    }
    p
}

/// x^q - x as a polynomial in x.
fn artin_schreier(f: Field) -> BiPoly {
    x_poly(f, &[(f.q() as usize, f.one()), (1, f.neg(f.one()))])
}

fn t_pow(f: Field, k: usize) -> BiPoly {
    BiPoly::monomial(f, f.one(), k, 0)
}

/// Height 1/(q+1) with r = 1: T x^(q+1) + x^q - x - c T for odd q with c a
/// nonsquare, T x^(q+1) + x^q + (T+1) x + c T for even q with x^2 + x + c
/// irreducible.
pub fn gonality_one(field: Field) -> Result<ConstructionResult> {
    let q = field.q() as usize;
    let t = BiPoly::t(field);
    let x = BiPoly::x(field);
    let mut f = &t * &x.pow(q as u64 + 1);
    f.add_assign_ref(&x.pow(q as u64));
    if field.p() == 2 {
        let c = find_as_nonimage(field)?;
        f.add_assign_ref(&(&(&t + &BiPoly::one(field)) * &x));
        f.add_assign_ref(&t.scale(c));
    } else {
        let c = find_nonsquare(field)?;
        f.sub_assign_ref(&x);
        f.sub_assign_ref(&t.scale(c));
    }
    let f = normalize_minpoly(&f)?;
    let expected = hv(1, q as u64 + 1);
    let verified = verify(&f, expected, Claims { irreducible_by_recombination: true, criteria_r: Some(1) }, vec![])?;
    Ok(ConstructionResult { family: Family::GonalityOne, q: field.q(), param: 1, poly: f, expected_height: expected, verified })
}

fn require_divides_q_minus_1(field: Field, n: usize) -> Result<()> {
    if n == 0 || (field.q() as usize - 1) % n != 0 {
        return Err(Error::InvalidArgument(format!("n = {n} must divide q - 1 = {}", field.q() - 1)));
    }
    Ok(())
}

/// T^n x^n (x^q - x)^n - (x^q - x)^n + T^n for n | q - 1.
pub fn cyclic_family(field: Field, n: usize) -> Result<ConstructionResult> {
    require_divides_q_minus_1(field, n)?;
    let a = artin_schreier(field).pow(n as u64);
    let tn = t_pow(field, n);
    let mut f = &(&tn * &BiPoly::x(field).pow(n as u64)) * &a;
    f.sub_assign_ref(&a);
    f.add_assign_ref(&tn);
    let f = normalize_minpoly(&f)?;
    let expected = hv(1, field.q() as u64 + 1);
    let verified = verify(&f, expected, Claims { irreducible_by_recombination: true, criteria_r: Some(n) }, vec![])?;
    Ok(ConstructionResult { family: Family::Cyclic, q: field.q(), param: n, poly: f, expected_height: expected, verified })
}

/// Is gcd(x^(2n) + 1, x^(q-1) - 2) = 1 over F_q? This decides when the
/// cyclic-family curve is nonsingular.
pub fn cyclic_smoothness(field: Field, n: usize) -> Result<bool> {
    require_divides_q_minus_1(field, n)?;
    let one = field.one();
    let a = &UniPoly::monomial(field, one, 2 * n) + &UniPoly::one(field);
    let b = &UniPoly::monomial(field, one, field.q() as usize - 1) - &UniPoly::constant(field, field.from_int(2));
    Ok(a.gcd(&b).is_one())
}

/// Characteristic 2, q = 2^s with s > 1. With zeta the first element of
/// F_q outside F_2, A = x^q + x, P = x A Q and R = zeta + (1 + zeta) Q + P,
/// eliminate y between y^2 + (1 + zeta) Q y + zeta P and T R - A (y + zeta).
/// The resultant is R(x) times the minimal polynomial; the factor R is the
/// x-content and is removed.
///
/// Q is the least monic irreducible of degree q + 1 with R(u) != 0 for all
/// u in F_q. When R(u) = 0 the zero of T at (u, zeta) cancels against R and
/// the result drops to x-degree 2q (this happens for the least irreducible
/// quintic over F_4).
pub fn char2_hyperelliptic(field: Field) -> Result<ConstructionResult> {
    if field.p() != 2 || field.s() < 2 {
        return Err(Error::InvalidArgument(format!(
            "char2 family needs q = 2^s with s > 1, got q = {}",
            field.q()
        )));
    }
    let q = field.q() as usize;
    let zeta = field.elem(2);
    let one_plus_zeta = field.add(field.one(), zeta);
    let ratio = field.div(zeta, one_plus_zeta);
    let qx = char2_q(field, ratio)?;
    let a = artin_schreier(field);
    let p = &(&BiPoly::x(field) * &a) * &qx;
    let mut r = qx.scale(one_plus_zeta);
    r.add_assign_ref(&p);
    r.add_assign_ref(&BiPoly::one(field).scale(zeta));

    let curve = YPoly::from_coeffs(field, vec![p.scale(zeta), qx.scale(one_plus_zeta), BiPoly::one(field)]);
    let mut c0 = &BiPoly::t(field) * &r;
    c0.sub_assign_ref(&a.scale(zeta));
    let function = YPoly::from_coeffs(field, vec![c0, -&a]);
    let res = resultant_y(&curve, &function)?;
    let f = normalize_minpoly(&res.remove_x_content())?;

    let properties = vec![
        Property::new(format!("deg_x = {}", 2 * (q + 1)), f.deg_x() == Some(2 * (q + 1))),
        Property::new("deg_T = 2", f.deg_t() == Some(2)),
    ];
    let expected = hv(1, q as u64 + 1);
    let verified = verify(&f, expected, Claims { irreducible_by_recombination: true, criteria_r: Some(2) }, properties)?;
    Ok(ConstructionResult {
        family: Family::Char2Hyperelliptic,
        q: field.q(),
        param: 1,
        poly: f,
        expected_height: expected,
        verified,
    })
}

/// Q(u) = zeta/(1 + zeta) is exactly R(u) = 0 for u in F_q.
fn char2_q(field: Field, ratio: crate::gf::FieldElem) -> Result<BiPoly> {
    let q = field.q() as usize;
    let qx = irreducible_poly_where(field, q + 1, |c| field.elements().all(|u| c.eval(u) != ratio))?;
    Ok(BiPoly::from_x_poly(&qx))
}

/// T^d g(num / T) for d = deg_x g, with num a polynomial in x.
fn tower_step(g: &BiPoly, num: &BiPoly) -> BiPoly {
    let d = g.deg_x().unwrap();
    let mut acc = BiPoly::from_uni(g.coeff(d));
    for i in (0..d).rev() {
        acc = &acc * num;
        let a = g.coeff(i);
        if !a.is_zero() {
            acc.add_assign_ref(&BiPoly::from_uni(a.shl(d - i)));
        }
    }
    acc
}

/// Iterate g -> T^deg g(num/T) starting from x - 1.
fn tower(field: Field, num: &BiPoly, steps: usize, budget: usize) -> Result<BiPoly> {
    let e = num.deg_x().unwrap();
    let mut deg = 1usize;
    for _ in 0..steps {
        deg = deg.checked_mul(e).filter(|&d| d <= budget).ok_or(Error::BudgetExceeded(budget as u64))?;
    }
    let mut g = x_poly(field, &[(1, field.one()), (0, field.neg(field.one()))]);
    for _ in 0..steps {
        g = tower_step(&g, num);
    }
    Ok(g)
}

fn geometric_sum(base: u64, terms: u32) -> u64 {
    (0..terms).map(|i| base.pow(i)).sum()
}

/// f_1 = x^q - x - T and f_(j+1) = T^(q^j) f_j((x^q - x)/T).
pub fn phi_tower(field: Field, j: usize) -> Result<ConstructionResult> {
    phi_tower_with_budget(field, j, DEFAULT_TOWER_DEGREE_BUDGET)
}

pub fn phi_tower_with_budget(field: Field, j: usize, budget: usize) -> Result<ConstructionResult> {
    if j == 0 {
        return Err(Error::InvalidArgument("tower index starts at 1".into()));
    }
    let q = field.q() as u64;
    let a = artin_schreier(field);
    let f = tower(field, &a, j, budget)?;
    let deg_t = geometric_sum(q, j as u32);
    let qj = q.pow(j as u32);
    let sign = if j % 2 == 0 { field.one() } else { field.neg(field.one()) };
    let derivative = BiPoly::monomial(field, sign, deg_t as usize - j, 0);
    let reduction = UniPoly::from_coeffs(field, a.coeffs().iter().map(|c| c.coeff(0)).collect())
        .pow(q.pow(j as u32 - 1));
    let properties = vec![
        Property::new(format!("monic of x-degree {qj}"), f.deg_x() == Some(qj as usize) && f.lc().is_one()),
        Property::new(format!("deg_T = {deg_t}"), f.deg_t() == Some(deg_t as usize)),
        Property::new(
            format!("df/dx = (-1)^{j} T^{}", deg_t as usize - j),
            f.derivative_x() == derivative,
        ),
        Property::new(format!("f mod T = (x^q - x)^{}", q.pow(j as u32 - 1)), f.reduce_mod_t() == reduction),
    ];
    let expected = hv(deg_t, qj);
    let mut verified = verify(&f, expected, Claims { irreducible_by_recombination: false, criteria_r: None }, properties)?;
    let integral = verified.profile.s == 0;
    verified.properties.push(Property::new("all roots have ord >= 0", integral));
    verified.ok &= integral;
    Ok(ConstructionResult { family: Family::PhiTower, q: field.q(), param: j, poly: f, expected_height: expected, verified })
}

/// g_1 = x^(q-1) - 1 - T and g_(n+1) = T^((q-1)^n) g_n((x^(q-1) - 1)/T).
/// For q = 2 every g_n is linear and the heights grow without bound.
pub fn psi_tower(field: Field, n: usize) -> Result<ConstructionResult> {
    psi_tower_with_budget(field, n, DEFAULT_TOWER_DEGREE_BUDGET)
}

pub fn psi_tower_with_budget(field: Field, n: usize, budget: usize) -> Result<ConstructionResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("tower index starts at 1".into()));
    }
    let q = field.q() as u64;
    let num = x_poly(field, &[(q as usize - 1, field.one()), (0, field.neg(field.one()))]);
    let f = tower(field, &num, n, budget)?;
    let deg_t = geometric_sum(q - 1, n as u32);
    let d = (q - 1).pow(n as u32);
    let mut properties = vec![
        Property::new(format!("monic of x-degree {d}"), f.deg_x() == Some(d as usize) && f.lc().is_one()),
        Property::new(format!("deg_T = {deg_t}"), f.deg_t() == Some(deg_t as usize)),
    ];
    if q == 2 {
        properties.push(Property::new("q = 2: heights diverge", true));
    }
    let expected = hv(deg_t, d);
    let mut verified = verify(&f, expected, Claims { irreducible_by_recombination: false, criteria_r: None }, properties)?;
    let units = verified.profile.r == 0 && verified.profile.s == 0;
    verified.properties.push(Property::new("all roots have ord = 0", units));
    verified.ok &= units;
    Ok(ConstructionResult { family: Family::PsiTower, q: field.q(), param: n, poly: f, expected_height: expected, verified })
}

/// x^q - x + T (integral, height 1/q) and x^(q-1) - 1 + T (unit, height
/// 1/(q-1)).
pub fn base_examples(field: Field) -> Result<(ConstructionResult, ConstructionResult)> {
    let q = field.q() as usize;
    let t = BiPoly::t(field);
    let integral = normalize_minpoly(&(&artin_schreier(field) + &t))?;
    let unit = normalize_minpoly(
        &(&x_poly(field, &[(q - 1, field.one()), (0, field.neg(field.one()))]) + &t),
    )?;
    let claims = || Claims { irreducible_by_recombination: true, criteria_r: None };

    let expected = hv(1, q as u64);
    let mut v = verify(&integral, expected, claims(), vec![])?;
    let ok = v.profile.s == 0;
    v.properties.push(Property::new("all roots have ord >= 0", ok));
    v.ok &= ok;
    let integral = ConstructionResult { family: Family::IntegralBase, q: field.q(), param: 1, poly: integral, expected_height: expected, verified: v };

    let expected = hv(1, q as u64 - 1);
    let mut v = verify(&unit, expected, claims(), vec![])?;
    let ok = v.profile.r == 0 && v.profile.s == 0;
    v.properties.push(Property::new("all roots have ord = 0", ok));
    v.ok &= ok;
    let unit = ConstructionResult { family: Family::UnitBase, q: field.q(), param: 1, poly: unit, expected_height: expected, verified: v };
    Ok((integral, unit))
}

/// Build a family member by name; `param` is n or j where relevant.
pub fn construct(family: Family, field: Field, param: usize) -> Result<Vec<ConstructionResult>> {
    Ok(match family {
        Family::GonalityOne => vec![gonality_one(field)?],
        Family::Cyclic => vec![cyclic_family(field, param)?],
        Family::Char2Hyperelliptic => vec![char2_hyperelliptic(field)?],
        Family::PhiTower => vec![phi_tower(field, param)?],
        Family::PsiTower => vec![psi_tower(field, param)?],
        Family::IntegralBase => vec![base_examples(field)?.0],
        Family::UnitBase => vec![base_examples(field)?.1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::parse_bipoly;

    #[test]
    fn gonality_one_small_fields() {
        let f2 = make_field(2, 1).unwrap();
        let r = gonality_one(f2).unwrap();
        assert_eq!(r.poly.to_string(), "T*x^3 + x^2 + (T+1)*x + T");
        assert!(r.verified.ok, "{:?}", r.verified);
        let f3 = make_field(3, 1).unwrap();
        let r = gonality_one(f3).unwrap();
        // c = 2 and -2T = T over F_3
        assert_eq!(r.poly, parse_bipoly(f3, "T*x^4 + x^3 + 2*x + T").unwrap());
        assert!(r.verified.ok);
        let f4 = make_field(2, 2).unwrap();
        let r = gonality_one(f4).unwrap();
        assert_eq!(r.poly, parse_bipoly(f4, "T*x^5 + x^4 + (T+1)*x + g*T").unwrap());
        assert!(r.verified.ok);
    }

    #[test]
    fn cyclic_q3_n2() {
        let f3 = make_field(3, 1).unwrap();
        let r = cyclic_family(f3, 2).unwrap();
        assert_eq!((r.poly.deg_x(), r.poly.deg_t()), (Some(8), Some(2)));
        assert!(r.verified.ok, "{:?}", r.verified);
        assert!(cyclic_family(f3, 3).is_err());
    }

    #[test]
    fn smoothness_gcds() {
        let f3 = make_field(3, 1).unwrap();
        let f7 = make_field(7, 1).unwrap();
        let f2 = make_field(2, 1).unwrap();
        // x^4 + 1 and x^2 + 1 share no factor over F_3 (x^4 + 1 = (x^2+x+2)(x^2+2x+2))
        assert!(cyclic_smoothness(f3, 2).unwrap());
        assert!(cyclic_smoothness(f7, 2).unwrap());
        assert!(cyclic_smoothness(f2, 1).unwrap());
        // F_5, n = 1: compare with a search for a common root in F_5
        let f5 = make_field(5, 1).unwrap();
        let a = cyclic_smoothness(f5, 1).unwrap();
        let roots_shared = f5.elements().any(|u| {
            f5.add(f5.mul(u, u), f5.one()).is_zero() && f5.sub(f5.pow(u, 4), f5.from_int(2)).is_zero()
        });
        assert_eq!(a, !roots_shared);
    }

    #[test]
    fn char2_closed_form() {
        let f4 = make_field(2, 2).unwrap();
        assert!(char2_hyperelliptic(make_field(2, 1).unwrap()).is_err());
        let r = char2_hyperelliptic(f4).unwrap();
        assert!(r.verified.ok, "{:?}", r.verified);
        // T^2 R + (1 + zeta) T Q A + zeta A^2, rebuilt term by term
        let zeta = f4.elem(2);
        let qx = char2_q(f4, f4.div(zeta, f4.add(f4.one(), zeta))).unwrap();
        let a = parse_bipoly(f4, "x^4 + x").unwrap();
        let p = &(&BiPoly::x(f4) * &a) * &qx;
        let mut rr = qx.scale(f4.add(f4.one(), zeta));
        rr.add_assign_ref(&p);
        rr.add_assign_ref(&BiPoly::one(f4).scale(zeta));
        let t = BiPoly::t(f4);
        let mut want = &(&t * &t) * &rr;
        want.add_assign_ref(&(&(&t * &qx) * &a).scale(f4.add(f4.one(), zeta)));
        want.add_assign_ref(&(&a * &a).scale(zeta));
        assert_eq!(r.poly, normalize_minpoly(&want).unwrap());
    }

    #[test]
    fn tower_examples() {
        let f2 = make_field(2, 1).unwrap();
        let r = phi_tower(f2, 1).unwrap();
        assert_eq!(r.poly.to_string(), "x^2 + x + T");
        let r = phi_tower(f2, 2).unwrap();
        assert_eq!(r.poly.to_string(), "x^4 + (T+1)*x^2 + T*x + T^3");
        assert_eq!(r.verified.height.to_string(), "3/4");
        assert!(r.verified.ok, "{:?}", r.verified);
        let f3 = make_field(3, 1).unwrap();
        let r = phi_tower(f3, 2).unwrap();
        assert_eq!((r.poly.deg_x(), r.poly.deg_t()), (Some(9), Some(4)));
        assert!(r.verified.ok);
        let r = psi_tower(f3, 1).unwrap();
        assert_eq!(r.poly, parse_bipoly(f3, "x^2 + 2 + 2*T").unwrap());
        let r = psi_tower(f3, 2).unwrap();
        assert_eq!((r.poly.deg_x(), r.poly.deg_t()), (Some(4), Some(3)));
        assert!(r.verified.ok, "{:?}", r.verified);
        let r = psi_tower(f2, 3).unwrap();
        assert_eq!(r.verified.height.to_string(), "3/1");
        assert!(phi_tower_with_budget(f2, 5, 16).is_err());
    }

    #[test]
    fn base_examples_f3() {
        let f3 = make_field(3, 1).unwrap();
        let (i, u) = base_examples(f3).unwrap();
        assert_eq!(i.poly.to_string(), "x^3 + 2*x + T");
        assert_eq!(u.poly.to_string(), "x^2 + T + 2");
        assert!(i.verified.ok && u.verified.ok);
        let (_, u2) = base_examples(make_field(2, 1).unwrap()).unwrap();
        assert_eq!(u2.verified.height.to_string(), "1/1");
    }
}
