//! Finite fields F_q, q = p^s.
//!
//! An element is stored as the integer whose base-p digits are its
//! coordinates on the basis 1, g, ..., g^(s-1), where g is a root of the
//! modulus. Enumeration order is increasing integer order, so 0 comes first
//! and the prime subfield occupies 0..p. Multiplication goes through
//! log/antilog tables; fields are interned so a [`Field`] handle is `Copy`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Default cap on q for table-driven fields.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 16;

/// Candidate cap when enumerating monic polynomials for irreducibility.
const IRREDUCIBLE_SEARCH_BUDGET: u64 = 1 << 24;

/// An element of some F_q. Meaningless without its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Position in the field's enumeration order.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    s: u32,
    q: u32,
    /// Modulus coefficients over F_p, lowest degree first, monic, length s+1.
    modulus: Vec<u32>,
    /// exp[i] = w^i for a fixed primitive element w, doubled to skip a modulo.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Full addition table, present when s > 1, p > 2 and q is small.
    add: Option<Vec<u32>>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.s == other.0.s
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.s.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldData>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, s) with q = p^s.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut s = 0u32;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        s += 1;
    }
    if m != 1 || p > u32::MAX as u64 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, s))
}

/// F_{p^s} with the default size bound.
pub fn make_field(p: u32, s: u32) -> Result<Field> {
    make_field_with_bound(p, s, DEFAULT_FIELD_BOUND)
}

/// F_q from q itself.
pub fn field_of_order(q: u64) -> Result<Field> {
    let (p, s) = prime_power(q)?;
    make_field(p, s)
}

pub fn make_field_with_bound(p: u32, s: u32, bound: u64) -> Result<Field> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if s == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = (p as u64).checked_pow(s);
    match q {
        Some(q) if q <= bound && q <= u32::MAX as u64 => {}
        _ => return Err(Error::FieldTooLarge { p, s, bound }),
    }
    if let Some(f) = registry().lock().unwrap().get(&(p, s)) {
        return Ok(Field(f));
    }
    let modulus = if s == 1 {
        vec![0, 1]
    } else {
        let fp = make_field(p, 1)?;
        let m = irreducible_poly(fp, s as usize)?;
        m.coeffs().iter().map(|c| c.0).collect()
    };
    let data = build_tables(p, s, modulus);
    let mut reg = registry().lock().unwrap();
    let entry = reg.entry((p, s)).or_insert_with(|| Box::leak(Box::new(data)));
    Ok(Field(entry))
}

fn to_digits(mut a: u32, p: u32, s: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(s as usize);
    for _ in 0..s {
        d.push(a % p);
        a /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn slow_mul(a: u32, b: u32, p: u32, s: u32, modulus: &[u32]) -> u32 {
    let s = s as usize;
    let da = to_digits(a, p, s as u32);
    let db = to_digits(b, p, s as u32);
    let mut prod = vec![0u64; 2 * s];
    for i in 0..s {
        for j in 0..s {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p as u64;
        }
    }
    for k in (s..2 * s).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..s {
            let sub = c * modulus[i] as u64 % p as u64;
            prod[k - s + i] = (prod[k - s + i] + p as u64 - sub) % p as u64;
        }
    }
    let digits: Vec<u32> = prod[..s].iter().map(|&c| c as u32).collect();
    from_digits(&digits, p)
}

fn build_tables(p: u32, s: u32, modulus: Vec<u32>) -> FieldData {
    let q = p.pow(s);
    let order = q - 1;
    let mut exp = vec![0u32; 2 * order.max(1) as usize];
    let mut log = vec![0u32; q as usize];
    // first element (in enumeration order) whose powers cover F_q^*
    let mut found = false;
    for w in 1..q {
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..order {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp[i as usize] = x;
            x = slow_mul(x, w, p, s, &modulus);
        }
        if ok && x == 1 {
            found = true;
            break;
        }
    }
    assert!(found, "F_{q} has no primitive element: modulus not irreducible");
    for i in 0..order as usize {
        exp[i + order as usize] = exp[i];
        log[exp[i] as usize] = i as u32;
    }
    let neg: Vec<u32> = (0..q)
        .map(|a| {
            let d: Vec<u32> = to_digits(a, p, s).iter().map(|&c| (p - c) % p).collect();
            from_digits(&d, p)
        })
        .collect();
    let add = if p > 2 && s > 1 && q <= 256 {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            let da = to_digits(a, p, s);
            for b in 0..q {
                let db = to_digits(b, p, s);
                let d: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                t[(a * q + b) as usize] = from_digits(&d, p);
            }
        }
        Some(t)
    } else {
        None
    };
    FieldData { p, s, q, modulus, exp, log, neg, add }
}

impl Field {
    pub fn p(self) -> u32 {
        self.0.p
    }
    pub fn s(self) -> u32 {
        self.0.s
    }
    pub fn q(self) -> u32 {
        self.0.q
    }
    pub fn is_prime_field(self) -> bool {
        self.0.s == 1
    }

    /// Coefficients of the defining modulus over F_p, lowest degree first.
    pub fn modulus(self) -> Vec<u32> {
        self.0.modulus.clone()
    }

    pub fn zero(self) -> FieldElem {
        FieldElem(0)
    }
    pub fn one(self) -> FieldElem {
        FieldElem(1)
    }

    /// The element with enumeration index `idx`.
    pub fn elem(self, idx: u32) -> FieldElem {
        assert!(idx < self.0.q, "index {idx} out of range for F_{}", self.0.q);
        FieldElem(idx)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// The class of the modulus root g (for prime fields, 1 is returned).
    pub fn generator(self) -> FieldElem {
        if self.0.s == 1 {
            FieldElem(1)
        } else {
            FieldElem(self.0.p)
        }
    }

    /// All elements in enumeration order.
    pub fn elements(self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    pub fn nonzero_elements(self) -> impl Iterator<Item = FieldElem> {
        (1..self.0.q).map(FieldElem)
    }

    /// Coordinates on 1, g, ..., g^(s-1).
    pub fn coords(self, a: FieldElem) -> Vec<u32> {
        to_digits(a.0, self.0.p, self.0.s)
    }

    pub fn from_coords(self, c: &[u32]) -> FieldElem {
        let d: Vec<u32> = (0..self.0.s as usize)
            .map(|i| c.get(i).copied().unwrap_or(0) % self.0.p)
            .collect();
        FieldElem(from_digits(&d, self.0.p))
    }

    #[inline]
    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let d = self.0;
        if d.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if d.s == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= d.p { s - d.p } else { s });
        }
        if let Some(t) = &d.add {
            return FieldElem(t[(a.0 * d.q + b.0) as usize]);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % d.p + y % d.p) % d.p) * place;
            x /= d.p;
            y /= d.p;
            place *= d.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        let d = self.0;
        FieldElem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse. Panics on zero; see [`Field::checked_inv`].
    #[inline]
    pub fn inv(self, a: FieldElem) -> FieldElem {
        self.checked_inv(a).expect("inverse of zero in a finite field")
    }

    pub fn checked_inv(self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = self.0;
        let order = d.q - 1;
        Ok(FieldElem(d.exp[((order - d.log[a.0 as usize]) % order) as usize]))
    }

    /// a / b. Panics when b = 0; see [`Field::checked_div`].
    #[inline]
    pub fn div(self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    pub fn checked_div(self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.checked_inv(b)?))
    }

    pub fn pow(self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem(1);
        }
        if a.0 == 0 {
            return FieldElem(0);
        }
        let d = self.0;
        let order = (d.q - 1) as u64;
        let l = d.log[a.0 as usize] as u64 * (e % order) % order;
        FieldElem(d.exp[l as usize])
    }

    pub fn frobenius(self, a: FieldElem) -> FieldElem {
        self.pow(a, self.0.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(self, a: FieldElem) -> u64 {
        assert!(!a.is_zero());
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        n / num_integer::gcd(n, l)
    }

    pub fn is_square(self, a: FieldElem) -> bool {
        a.is_zero() || self.0.p == 2 || self.0.log[a.0 as usize] % 2 == 0
    }

    /// Canonical text: an integer for prime-subfield elements, otherwise a
    /// parenthesized polynomial in g such as "(g+1)".
    pub fn format_elem(self, a: FieldElem) -> String {
        if a.0 < self.0.p {
            return a.0.to_string();
        }
        let digits = self.coords(a);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}*{var}"),
            });
        }
        format!("({})", terms.join("+"))
    }
}

/// First nonsquare of F_q in enumeration order (q odd).
pub fn find_nonsquare(f: Field) -> Result<FieldElem> {
    if f.p() == 2 {
        return Err(Error::InvalidArgument(format!(
            "F_{} has characteristic 2: every element is a square",
            f.q()
        )));
    }
    Ok(f.nonzero_elements()
        .find(|&a| !f.is_square(a))
        .expect("odd q has nonsquares"))
}

/// First c in enumeration order for which x^2 + x + c has no root (q even).
pub fn find_as_nonimage(f: Field) -> Result<FieldElem> {
    if f.p() != 2 {
        return Err(Error::InvalidArgument(format!(
            "F_{} has odd characteristic",
            f.q()
        )));
    }
    let mut image = vec![false; f.q() as usize];
    for x in f.elements() {
        image[f.add(f.mul(x, x), x).0 as usize] = true;
    }
    Ok(f.elements()
        .find(|c| !image[c.0 as usize])
        .expect("x^2 + x is two-to-one in characteristic 2"))
}

/// Lexicographically least monic irreducible of degree `d` over `f`.
///
/// Candidates x^d + c_(d-1) x^(d-1) + ... + c_0 are ordered by the integer
/// whose base-q digits are c_0, ..., c_(d-1), so c_(d-1) is most significant.
pub fn irreducible_poly(f: Field, d: usize) -> Result<UniPoly> {
    irreducible_poly_where(f, d, |_| true)
}

/// The least monic irreducible of degree `d`, in the order above, that
/// also satisfies `accept`.
pub fn irreducible_poly_where(f: Field, d: usize, mut accept: impl FnMut(&UniPoly) -> bool) -> Result<UniPoly> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let q = f.q() as u64;
    let total = q.checked_pow(d as u32);
    let mut idx = 0u64;
    loop {
        if idx >= IRREDUCIBLE_SEARCH_BUDGET || total.is_some_and(|t| idx >= t) {
            return Err(Error::BudgetExceeded(IRREDUCIBLE_SEARCH_BUDGET));
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut m = idx;
        for _ in 0..d {
            coeffs.push(FieldElem((m % q) as u32));
            m /= q;
        }
        coeffs.push(f.one());
        // x | candidate whenever c_0 = 0 (and d > 1)
        if d == 1 || !coeffs[0].is_zero() {
            let cand = UniPoly::from_coeffs(f, coeffs);
            if cand.is_irreducible() && accept(&cand) {
                return Ok(cand);
            }
        }
        idx += 1;
    }
}
