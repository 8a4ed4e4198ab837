//! Polynomials in F_q[T][x], stored as a vector of T-polynomials indexed by
//! x-degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::uni::{owned_ops, UniPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    c: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero(field: Field) -> Self {
        BiPoly { field, c: Vec::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::from_uni(UniPoly::one(field))
    }

    /// A polynomial free of x.
    pub fn from_uni(a: UniPoly) -> Self {
        let field = a.field();
        Self::from_coeffs(field, vec![a])
    }

    /// Polynomial in x with constant (T-free) coefficients.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        let f = p.field();
        Self::from_coeffs(f, p.coeffs().iter().map(|&a| UniPoly::constant(f, a)).collect())
    }

    /// a * T^t * x^k.
    pub fn monomial(field: Field, a: FieldElem, t: usize, k: usize) -> Self {
        if a.is_zero() {
            return Self::zero(field);
        }
        let mut c = vec![UniPoly::zero(field); k + 1];
        c[k] = UniPoly::monomial(field, a, t);
        BiPoly { field, c }
    }

    pub fn x(field: Field) -> Self {
        Self::monomial(field, field.one(), 0, 1)
    }

    pub fn t(field: Field) -> Self {
        Self::monomial(field, field.one(), 1, 0)
    }

    pub fn from_coeffs(field: Field, mut c: Vec<UniPoly>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        BiPoly { field, c }
    }

    /// Build from rows of enumeration indices: `rows[i][j]` is the coefficient
    /// of T^j x^i.
    pub fn from_index_rows(field: Field, rows: &[&[u32]]) -> Self {
        Self::from_coeffs(field, rows.iter().map(|r| UniPoly::from_indices(field, r)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.c.iter().filter_map(|a| a.degree()).max()
    }

    /// Leading coefficient in x.
    pub fn lc(&self) -> UniPoly {
        self.c.last().cloned().unwrap_or_else(|| UniPoly::zero(self.field))
    }

    pub fn coeff(&self, i: usize) -> UniPoly {
        self.c.get(i).cloned().unwrap_or_else(|| UniPoly::zero(self.field))
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&UniPoly> {
        self.c.get(i)
    }

    /// Coefficient of T^j x^i.
    pub fn term(&self, i: usize, j: usize) -> FieldElem {
        self.c.get(i).map(|a| a.coeff(j)).unwrap_or_default()
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    fn check_field(&self, o: &BiPoly) {
        assert!(
            self.field == o.field,
            "{}",
            Error::FieldMismatch(self.field.q(), o.field.q())
        );
    }

    pub fn add_assign_ref(&mut self, o: &BiPoly) {
        self.check_field(o);
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), UniPoly::zero(self.field));
        }
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            a.add_assign_ref(b);
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, o: &BiPoly) {
        self.check_field(o);
        if self.c.len() < o.c.len() {
            self.c.resize(o.c.len(), UniPoly::zero(self.field));
        }
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            a.sub_assign_ref(b);
        }
        self.trim();
    }

    pub fn scale(&self, a: FieldElem) -> Self {
        Self::from_coeffs(self.field, self.c.iter().map(|u| u.scale(a)).collect())
    }

    /// Multiply by a polynomial in T.
    pub fn scale_uni(&self, a: &UniPoly) -> Self {
        Self::from_coeffs(self.field, self.c.iter().map(|u| u * a).collect())
    }

    /// Multiply by x^k.
    pub fn shl_x(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![UniPoly::zero(self.field); k];
        c.extend_from_slice(&self.c);
        BiPoly { field: self.field, c }
    }

    /// Product with every T-coefficient reduced mod T^n.
    pub fn mul_trunc_t(&self, o: &BiPoly, n: usize) -> Self {
        self.check_field(o);
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f);
        }
        let mut c = vec![UniPoly::zero(f); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j].add_assign_ref(&a.mul_trunc(b, n));
                }
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

    /// f(u) for u in F_q, a polynomial in T.
    pub fn eval_x(&self, u: FieldElem) -> UniPoly {
        let f = self.field;
        let mut acc = UniPoly::zero(f);
        for a in self.c.iter().rev() {
            acc = acc.scale(u);
            acc.add_assign_ref(a);
        }
        acc
    }

    /// f(g(T)), a polynomial in T.
    pub fn eval_x_uni(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(self.field);
        for a in self.c.iter().rev() {
            acc = &acc * g;
            acc.add_assign_ref(a);
        }
        acc
    }

    /// f(x + u).
    pub fn shift_x(&self, u: FieldElem) -> Self {
        if u.is_zero() || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = self.c.clone();
        let d = c.len() - 1;
        for i in 0..d {
            for j in (i..d).rev() {
                let t = c[j + 1].scale(u);
                c[j].add_assign_ref(&t);
            }
        }
        Self::from_coeffs(self.field, c)
    }

    /// f(T x).
    pub fn scale_x_by_t(&self) -> Self {
        Self::from_coeffs(
            self.field,
            self.c.iter().enumerate().map(|(i, a)| a.shl(i)).collect(),
        )
    }

    /// f(g) for g in F_q[T][x].
    pub fn compose_x(&self, g: &BiPoly) -> Self {
        self.check_field(g);
        let mut acc = Self::zero(self.field);
        for a in self.c.iter().rev() {
            acc = &acc * g;
            acc.add_assign_ref(&Self::from_uni(a.clone()));
        }
        acc
    }

    /// x^d f(1/x) with d = deg_x f.
    pub fn reverse_x(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::from_coeffs(self.field, c)
    }

    pub fn derivative_x(&self) -> Self {
        let f = self.field;
        Self::from_coeffs(
            f,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.scale(f.from_int(i as i64)))
                .collect(),
        )
    }

    /// Largest k with T^k dividing every coefficient (None for zero).
    pub fn t_adic_content(&self) -> Option<usize> {
        self.c.iter().filter_map(|a| a.ord0()).min()
    }

    /// Divide every coefficient by T^k (the low coefficients are discarded).
    pub fn shr_t(&self, k: usize) -> Self {
        Self::from_coeffs(self.field, self.c.iter().map(|a| a.shr(k)).collect())
    }

    /// Every coefficient reduced mod T^n.
    pub fn truncate_t(&self, n: usize) -> Self {
        Self::from_coeffs(self.field, self.c.iter().map(|a| a.truncate(n)).collect())
    }

    /// f mod T as a polynomial in x.
    pub fn reduce_mod_t(&self) -> UniPoly {
        UniPoly::from_coeffs(self.field, self.c.iter().map(|a| a.coeff(0)).collect())
    }

    /// Monic gcd of the T-coefficients.
    pub fn content(&self) -> UniPoly {
        let mut g = UniPoly::zero(self.field);
        for a in &self.c {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// f divided by its content.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::from_coeffs(
            self.field,
            self.c.iter().map(|a| a.exact_div(&g).expect("content divides")).collect(),
        )
    }

    /// The transpose: coefficient of T^j x^i moves to T^i x^j.
    pub fn swap_vars(&self) -> Self {
        let f = self.field;
        let dt = match self.deg_t() {
            Some(d) => d,
            None => return self.clone(),
        };
        let mut rows = vec![vec![f.zero(); self.c.len()]; dt + 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, &b) in a.coeffs().iter().enumerate() {
                rows[j][i] = b;
            }
        }
        Self::from_coeffs(f, rows.into_iter().map(|r| UniPoly::from_coeffs(f, r)).collect())
    }

    /// Monic gcd over F_q[x] of the coefficients of the powers of T, as a
    /// polynomial in x alone.
    pub fn x_content(&self) -> UniPoly {
        self.swap_vars().content()
    }

    /// Remove the T-free factor returned by [`BiPoly::x_content`].
    pub fn remove_x_content(&self) -> Self {
        let g = self.x_content();
        if g.is_zero() || g.is_constant() {
            return self.clone();
        }
        let s = self.swap_vars();
        let d = Self::from_coeffs(
            self.field,
            s.c.iter().map(|a| a.exact_div(&g).expect("x-content divides")).collect(),
        );
        d.swap_vars()
    }

    /// Exact quotient in F_q[T][x], or None if `d` does not divide.
    pub fn exact_div(&self, d: &BiPoly) -> Option<Self> {
        self.check_field(d);
        let f = self.field;
        let dd = d.deg_x()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.deg_x()?;
        if n < dd {
            return None;
        }
        let lcd = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![UniPoly::zero(f); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let t = top.exact_div(&lcd)?;
            for (j, b) in d.c.iter().enumerate() {
                let prod = &t * b;
                r[k + j].sub_assign_ref(&prod);
            }
            q[k] = t;
        }
        if r.iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(f, q))
    }

    /// A remainder of self by d after scaling by powers of lc(d).
    pub fn pseudo_rem(&self, d: &BiPoly) -> Self {
        let dd = d.deg_x().expect("pseudo remainder by zero");
        let lcd = d.lc();
        let mut r = self.clone();
        while let Some(n) = r.deg_x() {
            if n < dd {
                break;
            }
            let lr = r.lc();
            let mut next = r.scale_uni(&lcd);
            let sub = d.shl_x(n - dd).scale_uni(&lr);
            next.sub_assign_ref(&sub);
            r = next;
        }
        r
    }

    /// Is this polynomial free of x?
    pub fn is_x_free(&self) -> bool {
        self.c.len() <= 1
    }

    /// The first element of F_q (enumeration order) at which f vanishes
    /// identically in T.
    pub fn has_rational_root(&self) -> Option<FieldElem> {
        self.field.elements().find(|&u| self.eval_x(u).is_zero())
    }
}

/// Content removed and leading x-coefficient made monic in T.
pub fn normalize_minpoly(f: &BiPoly) -> Result<BiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.primitive_part();
    let a = p.lc().lc();
    Ok(p.scale(p.field.inv(a)))
}

/// gcd over F_q(T) of f and g, normalized; primitive pseudo-remainder
/// sequence keeps all arithmetic inside F_q[T][x].
pub fn gcd_x(f: &BiPoly, g: &BiPoly) -> Result<BiPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (f.primitive_part(), g.primitive_part());
    if a.deg_x() < b.deg_x() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    normalize_minpoly(&a)
}

/// (gcd(f, df/dx) normalized, whether f is squarefree over F_q(T)).
///
/// In characteristic p a vanishing derivative makes the gcd f itself, which
/// counts as not squarefree: such an f is a polynomial in x^p.
pub fn gcd_and_squarefree(f: &BiPoly) -> Result<(BiPoly, bool)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let df = f.derivative_x();
    if df.is_zero() {
        let g = normalize_minpoly(f)?;
        let sf = g.deg_x() == Some(0);
        return Ok((g, sf));
    }
    let g = gcd_x(f, &df)?;
    let sf = g.deg_x() == Some(0);
    Ok((g, sf))
}

pub fn is_squarefree(f: &BiPoly) -> bool {
    gcd_and_squarefree(f).map(|(_, s)| s).unwrap_or(false)
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{:?}]({})", self.field, self)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        r.sub_assign_ref(o);
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_coeffs(self.field, self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        self.mul_trunc_t(o, usize::MAX)
    }
}

owned_ops!(BiPoly);
