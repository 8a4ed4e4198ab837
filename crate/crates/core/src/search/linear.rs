//! The affine space of candidate polynomials cut out by the linear
//! conditions every minimal polynomial of height 1/(q+1) and gonality n must
//! satisfy.
//!
//! The ansatz is f = T^n x^(n(q+1)) + sum_(0 < i < n(q+1)) A_i x^i + A_0
//! with deg A_i <= n. Over F_2 the conditions are the literal list
//!
//! * T^(n-i) | A_i and T^(n-i) | A_(3n-i) for 0 < i < n,
//! * A_n(0) = A_(2n)(0) = 1 and A_0 = T^n,
//! * ord_0 f(1/T) >= -n, ord_0 f(T) >= 2n and ord_0 f(T+1) >= 2n,
//!
//! the last three read off the forced shape of the roots (near infinity,
//! 0 and 1 every root starts 1/T, T or 1 + T). Over larger fields the
//! leading digits of the roots are only known to be nonzero, which is not a
//! linear condition, so the system keeps what is linear:
//!
//! * f mod T = c (x^q - x)^n with c = A_(nq)(0),
//! * for every u in F_q the coefficients B_i of f(x + u) satisfy
//!   T^(n-i) | B_i for i < n and T^(i-nq) | B_i for i > nq,
//! * A_0 = a T^n with a free.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::{substitute_rational, BiPoly, UniPoly};

/// One labelled F_q-linear equation sum_k coeffs[k] v_k = rhs.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<FieldElem>,
    pub rhs: FieldElem,
}

/// particular + span(basis), with coordinates indexed by `vars`.
#[derive(Clone, Debug)]
pub struct AffineSpace {
    pub field: Field,
    pub n: usize,
    /// (i, j) for the coefficient of T^j x^i, in vector order.
    pub vars: Vec<(usize, usize)>,
    pub var_index: BTreeMap<(usize, usize), usize>,
    pub constraints: Vec<Constraint>,
    pub particular: Vec<FieldElem>,
    pub basis: Vec<Vec<FieldElem>>,
    /// The part of the ansatz not covered by any variable.
    pub fixed: BiPoly,
    /// False when the equations have no solution; the space is then empty.
    pub consistent: bool,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of points, None on overflow.
    pub fn size(&self) -> Option<u64> {
        if !self.consistent {
            return Some(0);
        }
        (self.q() as u64).checked_pow(self.dim() as u32)
    }

    /// The polynomial with coefficient vector v.
    pub fn poly_of_vector(&self, v: &[FieldElem]) -> BiPoly {
        let mut f = self.fixed.clone();
        for (k, &(i, j)) in self.vars.iter().enumerate() {
            if !v[k].is_zero() {
                f.add_assign_ref(&BiPoly::monomial(self.field, v[k], j, i));
            }
        }
        f
    }

    /// The vector particular + sum_k t_k basis_k.
    pub fn point(&self, t: &[u32]) -> Vec<FieldElem> {
        let f = self.field;
        let mut v = self.particular.clone();
        for (k, &tk) in t.iter().enumerate() {
            if tk != 0 {
                let c = f.elem(tk);
                for (a, &b) in v.iter_mut().zip(&self.basis[k]) {
                    *a = f.add(*a, f.mul(c, b));
                }
            }
        }
        v
    }

    /// sha256 over q, n, the particular vector and the basis, as hex.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("q={};n={};consistent={};", self.q(), self.n, self.consistent));
        for &(i, j) in &self.vars {
            h.update(format!("v{i},{j};"));
        }
        let mut put = |v: &[FieldElem]| {
            for a in v {
                h.update(a.index().to_le_bytes());
            }
            h.update(b"|");
        };
        put(&self.particular);
        for b in &self.basis {
            put(b);
        }
        h.update(self.fixed.to_string());
        h.finalize().iter().take(16).map(|b| format!("{b:02x}")).collect()
    }
}

struct SystemBuilder {
    field: Field,
    vars: Vec<(usize, usize)>,
    fixed: BiPoly,
    constraints: Vec<Constraint>,
}

impl SystemBuilder {
    /// Impose `form(f) = rhs` for a linear form on polynomials.
    fn impose(&mut self, label: String, rhs: FieldElem, form: impl Fn(&BiPoly) -> FieldElem) {
        let f = self.field;
        let coeffs = self
            .vars
            .iter()
            .map(|&(i, j)| form(&BiPoly::monomial(f, f.one(), j, i)))
            .collect();
        let rhs = f.sub(rhs, form(&self.fixed));
        self.constraints.push(Constraint { label, coeffs, rhs });
    }
}

/// Coefficient of T^e in f(1/T).
fn coeff_at_inverse_t(f: &BiPoly, e: i64) -> FieldElem {
    let field = f.field();
    let t = UniPoly::var(field);
    let s = substitute_rational(f, &UniPoly::one(field), &t).expect("x-degree present");
    match s.laurent(&t, f.deg_x().unwrap()) {
        None => field.zero(),
        Some((lo, c)) => {
            let k = e - lo;
            if k < 0 || k as usize >= c.len() {
                field.zero()
            } else {
                c[k as usize]
            }
        }
    }
}

/// Coefficient of T^e in f(g(T)).
fn coeff_at_substitution(f: &BiPoly, g: &UniPoly, e: usize) -> FieldElem {
    f.eval_x_uni(g).coeff(e)
}

pub fn build_linear_system(field: Field, n: usize) -> Result<AffineSpace> {
    if n == 0 {
        return Err(Error::InvalidArgument("gonality must be positive".into()));
    }
    let q = field.q() as usize;
    let d = n * (q + 1);
    let one = field.one();
    let zero = field.zero();
    let lead = BiPoly::monomial(field, one, n, d);
    let mut vars: Vec<(usize, usize)> = Vec::new();
    let mut fixed = lead;
    if q == 2 {
        fixed.add_assign_ref(&BiPoly::monomial(field, one, n, 0));
    } else {
        vars.push((0, n));
    }
    for i in 1..d {
        for j in 0..=n {
            vars.push((i, j));
        }
    }
    let mut b = SystemBuilder { field, vars, fixed, constraints: Vec::new() };

    if q == 2 {
        for i in 1..n {
            for j in 0..n - i {
                b.impose(format!("T^{} | A_{i}: a_{i},{j} = 0", n - i), zero, |f| f.term(i, j));
                let k = 3 * n - i;
                b.impose(format!("T^{} | A_{k}: a_{k},{j} = 0", n - i), zero, |f| f.term(k, j));
            }
        }
        b.impose(format!("A_{n}(0) = 1"), one, |f| f.term(n, 0));
        b.impose(format!("A_{}(0) = 1", 2 * n), one, |f| f.term(2 * n, 0));
        let lo = -(3 * n as i64 - 1);
        for e in lo..=-(n as i64 + 1) {
            b.impose(format!("[T^{e}] f(1/T) = 0"), zero, |f| coeff_at_inverse_t(f, e));
        }
        let t = UniPoly::var(field);
        for e in 1..2 * n {
            b.impose(format!("[T^{e}] f(T) = 0"), zero, |f| coeff_at_substitution(f, &t, e));
        }
        let t1 = &t + &UniPoly::one(field);
        for e in 0..2 * n {
            b.impose(format!("[T^{e}] f(T+1) = 0"), zero, |f| coeff_at_substitution(f, &t1, e));
        }
    } else {
        // f mod T = c (x^q - x)^n with c = A_(nq)(0)
        let shape = (&UniPoly::monomial(field, one, q) - &UniPoly::var(field)).pow(n as u64);
        for i in 0..d {
            if i == n * q {
                continue;
            }
            let e = shape.coeff(i);
            b.impose(format!("A_{i}(0) = {} A_{}(0)", field.format_elem(e), n * q), zero, move |f| {
                field.sub(f.term(i, 0), field.mul(e, f.term(n * q, 0)))
            });
        }
        for u in field.elements() {
            let us = field.format_elem(u);
            for i in 0..n {
                for j in 1..n - i {
                    b.impose(format!("T^{} | B_{i} of f(x+{us}): [T^{j}]", n - i), zero, move |f| {
                        f.shift_x(u).term(i, j)
                    });
                }
            }
            for i in n * q + 1..d {
                for j in 1..i - n * q {
                    b.impose(format!("T^{} | B_{i} of f(x+{us}): [T^{j}]", i - n * q), zero, move |f| {
                        f.shift_x(u).term(i, j)
                    });
                }
            }
        }
    }
    solve(b, n)
}

/// Reduced row echelon form; free variables in increasing index order give
/// the basis, the particular solution has every free variable zero.
fn solve(b: SystemBuilder, n: usize) -> Result<AffineSpace> {
    let f = b.field;
    let nv = b.vars.len();
    let mut rows: Vec<(Vec<FieldElem>, FieldElem)> =
        b.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs)).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..nv {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r].0[col]);
        for a in rows[r].0.iter_mut() {
            *a = f.mul(*a, inv);
        }
        rows[r].1 = f.mul(rows[r].1, inv);
        let (pr, prhs) = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row.0[col].is_zero() {
                continue;
            }
            let c = row.0[col];
            for (a, &pa) in row.0.iter_mut().zip(&pr) {
                *a = f.sub(*a, f.mul(c, pa));
            }
            row.1 = f.sub(row.1, f.mul(c, prhs));
        }
        pivots.push(col);
        r += 1;
    }
    let consistent = rows[r..].iter().all(|(_, rhs)| rhs.is_zero());
    let mut particular = vec![f.zero(); nv];
    for (k, &col) in pivots.iter().enumerate() {
        particular[col] = rows[k].1;
    }
    let free: Vec<usize> = (0..nv).filter(|c| !pivots.contains(c)).collect();
    let basis = if consistent {
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); nv];
                v[fc] = f.one();
                for (k, &col) in pivots.iter().enumerate() {
                    v[col] = f.neg(rows[k].0[fc]);
                }
                v
            })
            .collect()
    } else {
        Vec::new()
    };
    let var_index = b.vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    Ok(AffineSpace {
        field: f,
        n,
        vars: b.vars,
        var_index,
        constraints: b.constraints,
        particular,
        basis,
        fixed: b.fixed,
        consistent,
    })
}
