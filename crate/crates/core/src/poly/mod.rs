//! Polynomials over F_q in T and x, with the algebra the rest of the crate
//! leans on: Newton polygons, Mobius changes of variable, substitution,
//! gcds, resultants and factorization in F_q[T].

mod bi;
mod factor_uni;
mod mobius;
mod newton;
mod resultant;
mod text;
mod uni;

pub use bi::{gcd_and_squarefree, gcd_x, is_squarefree, normalize_minpoly, BiPoly};
pub use factor_uni::factor_univariate;
pub use mobius::{transform_x, Mobius};
pub use newton::{newton_polygon, valuation, NewtonPolygon, Place, Segment};
pub use resultant::{resultant_y, YPoly};
pub use text::{format_bipoly, parse_bipoly, parse_unipoly};
pub use uni::UniPoly;

use crate::error::{Error, Result};

/// Result of substituting a rational function of T for x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSubstitution {
    /// sum_i a_i num^i den^(d - i), where d = deg_x f.
    pub cleared: UniPoly,
    /// ord at T = 0 of f(num/den) itself; None when it vanishes.
    pub ord0: Option<i64>,
}

impl RationalSubstitution {
    /// For den = T^k the value f(num/den) is the Laurent polynomial
    /// T^(-k d) * cleared; returned as (lowest exponent, coefficients).
    pub fn laurent(&self, den: &UniPoly, deg: usize) -> Option<(i64, Vec<crate::gf::FieldElem>)> {
        let (_, k) = den.as_monomial()?;
        let lo = self.cleared.ord0()?;
        Some((lo as i64 - (k * deg) as i64, self.cleared.coeffs()[lo..].to_vec()))
    }
}

/// f(num/den) with den cleared.
pub fn substitute_rational(f: &BiPoly, num: &UniPoly, den: &UniPoly) -> Result<RationalSubstitution> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = f.deg_x().ok_or(Error::ZeroPolynomial)?;
    let field = f.field();
    let mut cleared = UniPoly::zero(field);
    let mut num_pow = UniPoly::one(field);
    let den_pows: Vec<UniPoly> = {
        let mut v = vec![UniPoly::one(field)];
        for k in 0..d {
            let next = &v[k] * den;
            v.push(next);
        }
        v
    };
    for (i, a) in f.coeffs().iter().enumerate() {
        if !a.is_zero() {
            cleared.add_assign_ref(&(&(a * &num_pow) * &den_pows[d - i]));
        }
        num_pow = &num_pow * num;
    }
    let ord0 = cleared
        .ord0()
        .map(|k| k as i64 - (d as i64) * den.ord0().unwrap() as i64);
    Ok(RationalSubstitution { cleared, ord0 })
}
