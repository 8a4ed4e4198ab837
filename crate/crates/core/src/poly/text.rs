//! Canonical text form of polynomials in F_q[T][x].
//!
//! Printing: terms by strictly decreasing x-degree joined by " + "; a
//! coefficient with several T-monomials is parenthesized, e.g.
//! "T^2*x^6 + (T^2+T+1)*x^4 + T^2". Exponent 1 and coefficient 1 are
//! omitted and zero prints as "0". Elements of non-prime fields print as
//! polynomials in g, e.g. "(g+1)*T".
//!
//! Parsing accepts any sum of products of integers, g, T, x and
//! parenthesized subexpressions with '^' exponents, '-' and implicit
//! multiplication, so "T*x^3 + x^2 + (T+1)*x + T" and "Tx^3+x^2+(T+1)x+T"
//! both parse.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::{BiPoly, UniPoly};

fn format_monomial(field: Field, a: FieldElem, t: usize, x: usize) -> String {
    let mut parts = Vec::new();
    if a != field.one() {
        parts.push(field.format_elem(a));
    }
    match t {
        0 => {}
        1 => parts.push("T".into()),
        _ => parts.push(format!("T^{t}")),
    }
    match x {
        0 => {}
        1 => parts.push("x".into()),
        _ => parts.push(format!("x^{x}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn format_bipoly(f: &BiPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let field = f.field();
    let mut terms = Vec::new();
    for (i, a) in f.coeffs().iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        if let Some((e, k)) = a.as_monomial() {
            terms.push(format_monomial(field, e, k, i));
        } else if i == 0 {
            for (k, &e) in a.coeffs().iter().enumerate().rev() {
                if !e.is_zero() {
                    terms.push(format_monomial(field, e, k, 0));
                }
            }
        } else {
            let xs = if i == 1 { "x".to_string() } else { format!("x^{i}") };
            terms.push(format!("({})*{xs}", a.format_var("T")));
        }
    }
    terms.join(" + ")
}

impl std::fmt::Display for BiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_bipoly(self))
    }
}

struct Parser<'a> {
    field: Field,
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .or_else(|_| self.err("number out of range"))
    }

    fn sum(&mut self) -> Result<BiPoly> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let first = self.product()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc.add_assign_ref(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.product()?;
                    acc.sub_assign_ref(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<BiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, b'T' | b'x' | b'g' | b'(') => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            if e > 1 << 20 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let f = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'T') => {
                self.pos += 1;
                Ok(BiPoly::t(f))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x(f))
            }
            Some(b'g') => {
                if f.is_prime_field() {
                    return self.err("'g' only exists in non-prime fields");
                }
                self.pos += 1;
                Ok(BiPoly::from_uni(UniPoly::constant(f, f.generator())))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let e = f.from_int((n % f.p() as u64) as i64);
                Ok(BiPoly::from_uni(UniPoly::constant(f, e)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_bipoly(field: Field, s: &str) -> Result<BiPoly> {
    let mut p = Parser { field, s: s.as_bytes(), pos: 0 };
    let f = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parse a polynomial in T alone.
pub fn parse_unipoly(field: Field, s: &str) -> Result<UniPoly> {
    let f = parse_bipoly(field, s)?;
    if !f.is_x_free() {
        return Err(Error::Parse { pos: 0, msg: "expected a polynomial in T only".into() });
    }
    Ok(f.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn canonical_example_roundtrip() {
        let f2 = make_field(2, 1).unwrap();
        let s = "T^2*x^6 + T^2*x^5 + (T^2+T+1)*x^4 + T^2*x^3 + (T^2+T+1)*x^2 + T^2*x + T^2";
        let f = parse_bipoly(f2, s).unwrap();
        assert_eq!(f.to_string(), s);
    }

    #[test]
    fn loose_input() {
        let f2 = make_field(2, 1).unwrap();
        let a = parse_bipoly(f2, "T*x^3 + x^2 + (T+1)*x + T").unwrap();
        let b = parse_bipoly(f2, "Tx^3+x^2+(T+1)x+T").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "T*x^3 + x^2 + (T+1)*x + T");
    }

    #[test]
    fn extension_field_elements() {
        let f4 = make_field(2, 2).unwrap();
        let f = parse_bipoly(f4, "T*x^5 + x^4 + (T+1)*x + g*T").unwrap();
        assert_eq!(f.to_string(), "T*x^5 + x^4 + (T+1)*x + (g)*T");
        assert_eq!(parse_bipoly(f4, &f.to_string()).unwrap(), f);
        let h = parse_bipoly(f4, "((g+1)*T + g)*x^2 + 1").unwrap();
        assert_eq!(h.to_string(), "((g+1)*T+(g))*x^2 + 1");
        assert_eq!(parse_bipoly(f4, &h.to_string()).unwrap(), h);
    }

    #[test]
    fn prime_field_coefficients_and_errors() {
        let f3 = make_field(3, 1).unwrap();
        let f = parse_bipoly(f3, "x^3 - x + T").unwrap();
        assert_eq!(f.to_string(), "x^3 + 2*x + T");
        assert_eq!(parse_bipoly(f3, "0").unwrap().to_string(), "0");
        assert!(matches!(parse_bipoly(f3, "x^2 + g"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly(f3, "x^2 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly(f3, "(x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly(f3, "x ? 2"), Err(Error::Parse { pos: 2, .. })));
    }
}
