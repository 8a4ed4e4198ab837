//! Truncated Laurent series in F_q((T)).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::UniPoly;

/// Known coefficients of T^val, ..., T^(val + len - 1); everything from
/// T^(val + len) on is unknown. The first stored coefficient is nonzero,
/// except for a series that is zero to its precision, which stores nothing
/// and keeps its absolute precision in `val`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    field: Field,
    val: i64,
    c: Vec<FieldElem>,
}

impl TruncSeries {
    pub fn new(field: Field, val: i64, mut c: Vec<FieldElem>) -> Self {
        let lead = c.iter().position(|a| !a.is_zero()).unwrap_or(c.len());
        let abs = val + c.len() as i64;
        c.drain(..lead);
        let val = if c.is_empty() { abs } else { val + lead as i64 };
        TruncSeries { field, val, c }
    }

    /// O(T^abs_prec).
    pub fn zero(field: Field, abs_prec: i64) -> Self {
        TruncSeries { field, val: abs_prec, c: Vec::new() }
    }

    /// A polynomial known up to (excluding) T^abs_prec.
    pub fn from_uni(a: &UniPoly, abs_prec: i64) -> Self {
        let n = abs_prec.max(0) as usize;
        let mut c = a.coeffs()[..n.min(a.coeffs().len())].to_vec();
        c.resize(n, a.field().zero());
        Self::new(a.field(), 0, c)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Valuation, None when zero to the known precision.
    pub fn ord(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.val)
    }

    /// Exponent of the first unknown coefficient.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    /// Number of known coefficients from the valuation on.
    pub fn rel_prec(&self) -> usize {
        self.c.len()
    }

    /// Coefficients from the valuation on.
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    /// Coefficient of T^e, None if beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<FieldElem> {
        if e >= self.abs_prec() {
            None
        } else if e < self.val {
            Some(self.field.zero())
        } else {
            Some(self.c[(e - self.val) as usize])
        }
    }

    /// Forget everything from T^abs on.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_prec() {
            return self.clone();
        }
        if abs <= self.val {
            return Self::zero(self.field, abs);
        }
        Self::new(self.field, self.val, self.c[..(abs - self.val) as usize].to_vec())
    }

    /// Keep at most n coefficients from the valuation on.
    pub fn truncate_rel(&self, n: usize) -> Self {
        if self.c.len() <= n {
            return self.clone();
        }
        Self::new(self.field, self.val, self.c[..n].to_vec())
    }

    pub fn add(&self, o: &TruncSeries) -> Self {
        let f = self.field;
        let abs = self.abs_prec().min(o.abs_prec());
        let lo = self.val.min(o.val).min(abs);
        let c = (lo..abs)
            .map(|e| f.add(self.coeff(e).unwrap(), o.coeff(e).unwrap()))
            .collect();
        Self::new(f, lo, c)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        TruncSeries { field: f, val: self.val, c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn sub(&self, o: &TruncSeries) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: FieldElem) -> Self {
        let f = self.field;
        if a.is_zero() {
            return Self::zero(f, self.abs_prec());
        }
        TruncSeries { field: f, val: self.val, c: self.c.iter().map(|&b| f.mul(a, b)).collect() }
    }

    /// Multiply by T^k.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries { field: self.field, val: self.val + k, c: self.c.clone() }
    }

    pub fn mul(&self, o: &TruncSeries) -> Self {
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            // precision of the product is governed by the known part
            let abs = match (self.ord(), o.ord()) {
                (None, Some(v)) => self.val + v,
                (Some(v), None) => v + o.val,
                _ => self.val + o.val,
            };
            return Self::zero(f, abs);
        }
        let n = self.c.len().min(o.c.len());
        let mut c = vec![f.zero(); n];
        for (i, &a) in self.c.iter().take(n).enumerate() {
            for (j, &b) in o.c.iter().take(n - i).enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(f, self.val + o.val, c)
    }

    /// Product with an exact polynomial in T; the relative precision is
    /// unchanged.
    pub fn mul_uni(&self, a: &UniPoly) -> Self {
        let f = self.field;
        let lo = match a.ord0() {
            Some(lo) => lo,
            None => return Self::zero(f, i64::MAX / 4),
        };
        if self.is_zero() {
            return Self::zero(f, self.val + lo as i64);
        }
        let ac = &a.coeffs()[lo..];
        let n = self.c.len();
        let mut c = vec![f.zero(); n];
        for (i, &x) in self.c.iter().enumerate() {
            for (j, &y) in ac.iter().take(n - i).enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(x, y));
            }
        }
        Self::new(f, self.val + lo as i64, c)
    }

    pub fn inv(&self) -> Result<Self> {
        let f = self.field;
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.c.len();
        let a0 = f.inv(self.c[0]);
        let mut b = vec![f.zero(); n];
        b[0] = a0;
        for k in 1..n {
            let mut s = f.zero();
            for j in 1..=k {
                s = f.add(s, f.mul(self.c[j], b[k - j]));
            }
            b[k] = f.neg(f.mul(s, a0));
        }
        Ok(Self::new(f, -self.val, b))
    }

    pub fn div(&self, o: &TruncSeries) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
}

impl fmt::Display for TruncSeries {
    /// "T^v*(c0 + c1*T + ...) + O(T^(v+prec))".
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "O(T^{})", self.val);
        }
        let f = self.field;
        let mut terms = Vec::new();
        for (k, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = f.format_elem(a);
            terms.push(match (k, a == f.one()) {
                (0, _) => e,
                (1, true) => "T".into(),
                (1, false) => format!("{e}*T"),
                (_, true) => format!("T^{k}"),
                (_, false) => format!("{e}*T^{k}"),
            });
        }
        write!(fm, "T^{}*({}) + O(T^{})", self.val, terms.join(" + "), self.abs_prec())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn cancellation_keeps_precision() {
        let f2 = make_field(2, 1).unwrap();
        let a = TruncSeries::from_uni(&UniPoly::from_indices(f2, &[1, 1]), 5);
        let z = a.add(&a);
        assert!(z.is_zero());
        assert_eq!(z.abs_prec(), 5);
        assert_eq!(z.to_string(), "O(T^5)");
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let f3 = make_field(3, 1).unwrap();
        let a = TruncSeries::new(f3, 0, vec![f3.one(), f3.from_int(2), f3.zero(), f3.zero()]);
        let b = a.inv().unwrap();
        assert_eq!(b.coeffs(), &[f3.one(); 4]);
        assert_eq!(b.to_string(), "T^0*(1 + T + T^2 + T^3) + O(T^4)");
        let c = a.mul(&b);
        assert_eq!(c.coeffs()[0], f3.one());
        assert!(c.coeffs()[1..].iter().all(|e| e.is_zero()));
    }

    #[test]
    fn negative_valuation_product() {
        let f2 = make_field(2, 1).unwrap();
        let a = TruncSeries::new(f2, -2, vec![f2.one(), f2.one(), f2.zero()]);
        let b = a.inv().unwrap();
        assert_eq!(b.ord(), Some(2));
        assert_eq!(a.mul(&b).ord(), Some(0));
        assert!(TruncSeries::zero(f2, 3).inv().is_err());
    }
}
