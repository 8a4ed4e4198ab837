//! Resultants with respect to an auxiliary variable y.
//!
//! A [`YPoly`] is a polynomial in y whose coefficients live in F_q[T][x];
//! the Sylvester determinant is taken fraction-free (Bareiss), with every
//! division exact in F_q[T][x].

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::BiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoly {
    field: Field,
    c: Vec<BiPoly>,
}

impl YPoly {
    pub fn from_coeffs(field: Field, mut c: Vec<BiPoly>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        YPoly { field, c }
    }

    /// The variable y.
    pub fn y(field: Field) -> Self {
        Self::from_coeffs(field, vec![BiPoly::zero(field), BiPoly::one(field)])
    }

    pub fn constant(a: BiPoly) -> Self {
        let field = a.field();
        Self::from_coeffs(field, vec![a])
    }

    /// f(y) for f in F_q[T][x], i.e. x renamed to y.
    pub fn from_bipoly_in_y(f: &BiPoly) -> Self {
        let field = f.field();
        Self::from_coeffs(field, f.coeffs().iter().map(|a| BiPoly::from_uni(a.clone())).collect())
    }

    pub fn coeffs(&self) -> &[BiPoly] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn add(&self, o: &YPoly) -> YPoly {
        let n = self.c.len().max(o.c.len());
        let z = BiPoly::zero(self.field);
        let c = (0..n)
            .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
            .collect();
        Self::from_coeffs(self.field, c)
    }

    pub fn mul(&self, o: &YPoly) -> YPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::from_coeffs(self.field, vec![]);
        }
        let mut c = vec![BiPoly::zero(self.field); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_assign_ref(&(a * b));
            }
        }
        Self::from_coeffs(self.field, c)
    }

    /// f(g) where f has coefficients free of y and g is a y-polynomial.
    pub fn compose(f: &BiPoly, g: &YPoly) -> YPoly {
        let field = f.field();
        let mut acc = Self::from_coeffs(field, vec![]);
        for a in f.coeffs().iter().rev() {
            acc = acc.mul(g).add(&Self::constant(BiPoly::from_uni(a.clone())));
        }
        acc
    }
}

/// Res_y(f, g) as an element of F_q[T][x].
pub fn resultant_y(f: &YPoly, g: &YPoly) -> Result<BiPoly> {
    let field = f.field;
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Ok(f.c[0].pow(n as u64));
    }
    if n == 0 {
        return Ok(g.c[0].pow(m as u64));
    }
    let size = m + n;
    let zero = BiPoly::zero(field);
    let mut a = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for k in 0..=m {
            a[i][i + k] = f.c[m - k].clone();
        }
    }
    for i in 0..m {
        for k in 0..=n {
            a[n + i][i + k] = g.c[n - k].clone();
        }
    }
    let mut negate = false;
    let mut prev = BiPoly::one(field);
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(zero),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let mut v = &a[k][k] * &a[i][j];
                v.sub_assign_ref(&(&a[i][k] * &a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = zero.clone();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    Ok(if negate { -&det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn linear_resultant() {
        let f3 = make_field(3, 1).unwrap();
        let t = BiPoly::t(f3);
        let x = BiPoly::x(f3);
        // Res_y(y - T, y - x) = x - T up to sign
        let f = YPoly::from_coeffs(f3, vec![-&t, BiPoly::one(f3)]);
        let g = YPoly::from_coeffs(f3, vec![-&x, BiPoly::one(f3)]);
        let r = resultant_y(&f, &g).unwrap();
        assert!(r == &x - &t || r == &t - &x);
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        let f2 = make_field(2, 1).unwrap();
        let t = BiPoly::t(f2);
        let one = BiPoly::one(f2);
        // (y + 1)(y + T) and (y + 1)(y + x)
        let a = YPoly::from_coeffs(f2, vec![one.clone(), one.clone()]);
        let b = YPoly::from_coeffs(f2, vec![t.clone(), one.clone()]);
        let c = YPoly::from_coeffs(f2, vec![BiPoly::x(f2), one.clone()]);
        assert!(resultant_y(&a.mul(&b), &a.mul(&c)).unwrap().is_zero());
    }
}
