//! Dense univariate polynomials over F_q, lowest degree first.
//!
//! The same type serves for F_q[T] (coefficients of a [`BiPoly`]) and for
//! F_q[x] (reductions mod T); only the printed variable name differs.
//!
//! [`BiPoly`]: crate::poly::BiPoly

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    c: Vec<FieldElem>,
}

impl UniPoly {
    pub fn zero(field: Field) -> Self {
        UniPoly { field, c: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        UniPoly { field, c: vec![field.one()] }
    }

    pub fn constant(field: Field, a: FieldElem) -> Self {
        Self::from_coeffs(field, vec![a])
    }

    /// a * T^k.
    pub fn monomial(field: Field, a: FieldElem, k: usize) -> Self {
        if a.is_zero() {
            return Self::zero(field);
        }
        let mut c = vec![field.zero(); k + 1];
        c[k] = a;
        UniPoly { field, c }
    }

    /// The variable itself.
    pub fn var(field: Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn from_coeffs(field: Field, mut c: Vec<FieldElem>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        UniPoly { field, c }
    }

    /// Coefficients given by enumeration index (handy in tests).
    pub fn from_indices(field: Field, idx: &[u32]) -> Self {
        Self::from_coeffs(field, idx.iter().map(|&i| field.elem(i)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FieldElem {
        self.c.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.c.get(i).copied().unwrap_or_default()
    }

    /// Multiplicity of T as a factor; None for zero.
    pub fn ord0(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    /// Is this exactly a * T^k with a != 0?
    pub fn as_monomial(&self) -> Option<(FieldElem, usize)> {
        let k = self.ord0()?;
        (k + 1 == self.c.len()).then(|| (self.c[k], k))
    }

    pub fn scale(&self, a: FieldElem) -> Self {
        if a.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        UniPoly { field: f, c: self.c.iter().map(|&b| f.mul(a, b)).collect() }
    }

    /// Multiply by T^k.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend_from_slice(&self.c);
        UniPoly { field: self.field, c }
    }

    /// Drop the k lowest coefficients (exact division by T^k when they vanish).
    pub fn shr(&self, k: usize) -> Self {
        if k >= self.c.len() {
            return Self::zero(self.field);
        }
        UniPoly { field: self.field, c: self.c[k..].to_vec() }
    }

    /// Reduce mod T^n.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.field, self.c[..n.min(self.c.len())].to_vec())
    }

    pub fn add_assign_ref(&mut self, o: &UniPoly) {
        let f = self.field;
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), f.zero());
        }
        for (a, &b) in self.c.iter_mut().zip(&o.c) {
            *a = f.add(*a, b);
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, o: &UniPoly) {
        let f = self.field;
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), f.zero());
        }
        for (a, &b) in self.c.iter_mut().zip(&o.c) {
            *a = f.sub(*a, b);
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    /// Product truncated mod T^n.
    pub fn mul_trunc(&self, o: &UniPoly, n: usize) -> Self {
        let f = self.field;
        if self.is_zero() || o.is_zero() || n == 0 {
            return Self::zero(f);
        }
        let len = (self.c.len() + o.c.len() - 1).min(n);
        let mut c = vec![f.zero(); len];
        for (i, &a) in self.c.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate().take(len - i) {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::from_coeffs(f, c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder. Errors on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let f = self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let inv = f.inv(d.lc());
        let mut r = self.c.clone();
        let mut qv = vec![f.zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let t = f.mul(r[k + dd], inv);
            if t.is_zero() {
                continue;
            }
            qv[k] = t;
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(t, b));
            }
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(f, qv), Self::from_coeffs(f, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).expect("remainder by zero polynomial").1
    }

    /// self / d when the division is exact.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lc()))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let f = self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int(i as i64), a))
            .collect();
        Self::from_coeffs(f, c)
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = self.field;
        self.c.iter().rev().fold(f.zero(), |acc, &a| f.add(f.mul(acc, x), a))
    }

    /// self(g).
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = Self::zero(self.field);
        for &a in self.c.iter().rev() {
            acc = &acc * g;
            acc.add_assign_ref(&Self::constant(self.field, a));
        }
        acc
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    /// Multiplicity of `pi` as a factor (None when self is zero).
    pub fn ord_at(&self, pi: &UniPoly) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        if let Some((_, 1)) = pi.as_monomial() {
            return self.ord0();
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.exact_div(pi) {
            cur = next;
            k += 1;
        }
        Some(k)
    }

    /// Rabin-style test: gcd(x^(q^k) - x, f) = 1 for k <= deg/2.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let x = Self::var(self.field);
        let q = self.field.q() as u64;
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = h.powmod(q, &f);
            let g = (&h - &x).gcd(&f);
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Text form using `var` as the variable name, highest degree first.
    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = self.field;
        let mut terms = Vec::new();
        for (k, &a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(if k == 0 {
                f.format_elem(a)
            } else if a == f.one() {
                mono
            } else {
                format!("{}*{mono}", f.format_elem(a))
            });
        }
        terms.join("+")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_var("T"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{:?}]({})", self.field, self)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        r.sub_assign_ref(o);
        r
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        let f = self.field;
        UniPoly { field: f, c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        self.mul_trunc(o, usize::MAX)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(UniPoly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn division_identity() {
        let f = make_field(3, 1).unwrap();
        let a = UniPoly::from_indices(f, &[1, 2, 0, 1, 2]);
        let b = UniPoly::from_indices(f, &[2, 1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(a.divrem(&UniPoly::zero(f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_and_multiplicity() {
        let f = make_field(2, 1).unwrap();
        let t1 = UniPoly::from_indices(f, &[1, 1]);
        let t = UniPoly::var(f);
        let a = &t1.pow(3) * &t;
        let b = &t1.pow(2) * &UniPoly::from_indices(f, &[1, 1, 1]);
        assert_eq!(a.gcd(&b), t1.pow(2));
        assert_eq!(a.ord_at(&t1), Some(3));
        assert_eq!(a.ord_at(&t), Some(1));
        assert_eq!(a.ord0(), Some(1));
    }

    #[test]
    fn irreducibility_small() {
        let f = make_field(2, 1).unwrap();
        assert!(UniPoly::from_indices(f, &[1, 1, 1]).is_irreducible());
        assert!(!UniPoly::from_indices(f, &[1, 0, 1]).is_irreducible());
        assert!(UniPoly::from_indices(f, &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!UniPoly::from_indices(f, &[1, 0, 1, 0, 1]).is_irreducible());
    }

    #[test]
    fn formatting() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(UniPoly::from_indices(f, &[2, 1, 1]).to_string(), "T^2+T+2");
        assert_eq!(UniPoly::from_indices(f, &[0, 2]).to_string(), "2*T");
        assert_eq!(UniPoly::zero(f).to_string(), "0");
    }
}
