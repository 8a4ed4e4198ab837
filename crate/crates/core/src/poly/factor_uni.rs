//! Factorization in F_q[T].
//!
//! Distinct-degree splitting isolates the product of all irreducible factors
//! of each degree d; inside that product the degree-d factors are found by
//! trial division over the monic degree-d polynomials. The leading
//! coefficients this is applied to have small degree.

use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::poly::UniPoly;

/// Monic irreducible factors with multiplicities, ordered by degree and then
/// by enumeration order.
pub fn factor_univariate(a: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = a.field();
    let q = field.q() as u64;
    let x = UniPoly::var(field);
    let mut rem = a.monic();
    let mut out = Vec::new();
    let mut d = 1usize;
    while rem.degree().unwrap_or(0) >= 2 * d {
        // x^(q^d) mod rem
        let mut h = x.clone();
        for _ in 0..d {
            h = h.powmod(q, &rem);
        }
        let g = (&h - &x).gcd(&rem);
        if g.degree().unwrap_or(0) >= d {
            let mut left = g.clone();
            for cand in monic_of_degree(field, d) {
                if left.degree() == Some(0) {
                    break;
                }
                if let Some(next) = left.exact_div(&cand) {
                    left = next;
                    let mut mult = 0;
                    while let Some(r) = rem.exact_div(&cand) {
                        rem = r;
                        mult += 1;
                    }
                    out.push((cand, mult));
                }
            }
        }
        d += 1;
    }
    if rem.degree().unwrap_or(0) >= 1 {
        out.push((rem, 1));
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
    });
    Ok(out)
}

/// Monic polynomials of degree d, in lexicographic order.
fn monic_of_degree(field: crate::gf::Field, d: usize) -> impl Iterator<Item = UniPoly> {
    let q = field.q() as u64;
    let total = q.saturating_pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut c: Vec<FieldElem> = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(field.elem((idx % q) as u32));
            idx /= q;
        }
        c.push(field.one());
        UniPoly::from_coeffs(field, c)
    })
}
