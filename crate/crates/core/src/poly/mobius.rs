//! Fractional linear changes of the variable x over F_q.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::{normalize_minpoly, BiPoly, UniPoly};

/// x -> (a x + b) / (c x + d), normalized so the first nonzero of (a, b) is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mobius {
    field: Field,
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mobius {
    pub fn new(field: Field, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Self> {
        let det = field.sub(field.mul(a, d), field.mul(b, c));
        if det.is_zero() {
            return Err(Error::DegenerateMobius);
        }
        let lead = if a.is_zero() { b } else { a };
        let k = field.inv(lead);
        Ok(Mobius {
            field,
            a: field.mul(k, a),
            b: field.mul(k, b),
            c: field.mul(k, c),
            d: field.mul(k, d),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn identity(field: Field) -> Self {
        let (z, o) = (field.zero(), field.one());
        Self::new(field, o, z, z, o).unwrap()
    }

    /// x -> x + u.
    pub fn translation(field: Field, u: FieldElem) -> Self {
        let (z, o) = (field.zero(), field.one());
        Self::new(field, o, u, z, o).unwrap()
    }

    /// x -> 1/x.
    pub fn reciprocal(field: Field) -> Self {
        let (z, o) = (field.zero(), field.one());
        Self::new(field, z, o, o, z).unwrap()
    }

    pub fn inverse(&self) -> Self {
        let f = self.field;
        Self::new(f, self.d, f.neg(self.b), f.neg(self.c), self.a).unwrap()
    }

    /// self after other: x -> self(other(x)).
    pub fn compose(&self, other: &Mobius) -> Self {
        let f = self.field;
        let m = |x: FieldElem, y: FieldElem, z: FieldElem, w: FieldElem| f.add(f.mul(x, y), f.mul(z, w));
        Self::new(
            f,
            m(self.a, other.a, self.b, other.c),
            m(self.a, other.b, self.b, other.d),
            m(self.c, other.a, self.d, other.c),
            m(self.c, other.b, self.d, other.d),
        )
        .unwrap()
    }

    /// Every element of PGL_2(F_q), q(q^2 - 1) of them.
    pub fn all(field: Field) -> Vec<Mobius> {
        let mut out = Vec::new();
        for a in field.elements() {
            for b in field.elements() {
                let lead = if a.is_zero() { b } else { a };
                if lead != field.one() {
                    continue;
                }
                for c in field.elements() {
                    for d in field.elements() {
                        if let Ok(m) = Mobius::new(field, a, b, c, d) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |v| self.field.format_elem(v);
        write!(f, "x -> ({}*x + {})/({}*x + {})", e(self.a), e(self.b), e(self.c), e(self.d))
    }
}

/// Normalized numerator of f((a x + b)/(c x + d)) (c x + d)^deg_x(f).
///
/// If f(alpha) = 0 then the result vanishes at m^(-1)(alpha).
pub fn transform_x(f: &BiPoly, m: &Mobius) -> Result<BiPoly> {
    let field = f.field();
    let n = f.deg_x().ok_or(Error::ZeroPolynomial)?;
    let lin = |s: FieldElem, t: FieldElem| BiPoly::from_x_poly(&UniPoly::from_coeffs(field, vec![t, s]));
    let num = lin(m.a, m.b);
    let den = lin(m.c, m.d);
    let mut num_pows = vec![BiPoly::one(field)];
    let mut den_pows = vec![BiPoly::one(field)];
    for k in 0..n {
        num_pows.push(&num_pows[k] * &num);
        den_pows.push(&den_pows[k] * &den);
    }
    let mut acc = BiPoly::zero(field);
    for (i, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = (&num_pows[i] * &den_pows[n - i]).scale_uni(a);
        acc.add_assign_ref(&term);
    }
    normalize_minpoly(&acc)
}
