//! Roots of f in F_q((T)).
//!
//! Roots of non-negative valuation come from an exact recursion: remove the
//! T-content of g, reduce mod T, and for each root u in F_q of the
//! reduction either record a branch (u simple, so Hensel lifting applies) or
//! recurse on g(u + T x). Roots of negative valuation are the inverses of
//! the positive-valuation roots of the reversal x^d f(1/x). Everything
//! before the final lift is exact arithmetic in F_q[T][x], so counting roots
//! never depends on a working precision; only the printed series do.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::localfield::TruncSeries;
use crate::poly::{is_squarefree, BiPoly, UniPoly};

/// Recursion depth guard; squarefree inputs separate long before this.
const MAX_DEPTH: usize = 1 << 12;

/// Where a root of f lands in P^1(F_q) after reduction mod T.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    Finite(FieldElem),
    Infinity,
}

/// One root of f, known as prefix + T^k * rho where rho is the unique root
/// of `residual` congruent to `residue` mod T. For a reversed branch this
/// describes 1/alpha instead of the root alpha.
#[derive(Clone, Debug)]
pub struct RootBranch {
    prefix: Vec<FieldElem>,
    residual: BiPoly,
    residue: FieldElem,
    reversed: bool,
}

impl RootBranch {
    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn reduction(&self) -> Reduction {
        if self.reversed {
            Reduction::Infinity
        } else {
            Reduction::Finite(self.prefix.first().copied().unwrap_or(self.residue))
        }
    }

    /// First n T-adic digits of the branch value (of 1/alpha when reversed).
    pub fn digits(&self, n: usize) -> Vec<FieldElem> {
        let k = self.prefix.len();
        let mut d = self.prefix.clone();
        if n <= k {
            d.truncate(n);
            return d;
        }
        d.extend(lift_simple_root(&self.residual, self.residue, n - k));
        d
    }

    /// ord(beta - u) = 1 for a root reducing to u, or ord(1/beta) = 1 for a
    /// root reducing to infinity.
    pub fn has_ord_one(&self) -> bool {
        let d = self.digits(2);
        !d[1].is_zero()
    }

    /// The root as a series with `prec` coefficients from its valuation on.
    /// `ord_bound` bounds the valuation of the branch value from above.
    pub fn to_series(&self, prec: usize, ord_bound: usize) -> TruncSeries {
        let f = self.residual.field();
        let w = TruncSeries::new(f, 0, self.digits(prec + ord_bound));
        if self.reversed {
            w.truncate_rel(prec).inv().expect("1/alpha has bounded valuation")
        } else {
            w.truncate_rel(prec)
        }
    }
}

fn multiplicity(p: &UniPoly, u: FieldElem) -> usize {
    let f = p.field();
    let mut c = p.coeffs().to_vec();
    let mut m = 0;
    while c.len() > 1 {
        // synthetic division by x - u
        let mut q = vec![f.zero(); c.len() - 1];
        let mut acc = f.zero();
        for i in (0..c.len()).rev() {
            acc = f.add(f.mul(acc, u), c[i]);
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        if !acc.is_zero() {
            break;
        }
        c = q;
        m += 1;
    }
    m
}

struct Explorer {
    split_only: bool,
    out: Vec<RootBranch>,
}

impl Explorer {
    /// Returns false when `split_only` detects a root outside F_q((T)).
    fn explore(
        &mut self,
        g: BiPoly,
        prefix: &mut Vec<FieldElem>,
        reversed: bool,
        only_zero: bool,
        expected: Option<usize>,
    ) -> Result<bool> {
        if prefix.len() > MAX_DEPTH {
            return Err(Error::PrecisionExhausted(prefix.len()));
        }
        let k = g.t_adic_content().ok_or(Error::ZeroPolynomial)?;
        let g = g.shr_t(k);
        let gbar = g.reduce_mod_t();
        let dbar = gbar.degree().expect("T-content removed");
        if self.split_only && expected.is_some_and(|m| dbar < m) {
            // part of the cluster has fractional valuation
            return Ok(false);
        }
        let field = g.field();
        let residues: Vec<FieldElem> = if only_zero {
            vec![field.zero()]
        } else {
            field.elements().collect()
        };
        let mut total = 0;
        for u in residues {
            let m = multiplicity(&gbar, u);
            if m == 0 {
                continue;
            }
            total += m;
            if m == 1 {
                self.out.push(RootBranch {
                    prefix: prefix.clone(),
                    residual: g.clone(),
                    residue: u,
                    reversed,
                });
                continue;
            }
            let h = g.shift_x(u).scale_x_by_t();
            prefix.push(u);
            let ok = self.explore(h, prefix, reversed, false, Some(m))?;
            prefix.pop();
            if !ok {
                return Ok(false);
            }
        }
        if self.split_only && !only_zero && total < dbar {
            // residues outside F_q
            return Ok(false);
        }
        Ok(true)
    }
}

fn check_input(f: &BiPoly) -> Result<()> {
    match f.deg_x() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::InvalidArgument("polynomial has no x-degree".into())),
        _ if !is_squarefree(f) => Err(Error::NotSquarefree),
        _ => Ok(()),
    }
}

fn explore_all(f: &BiPoly, split_only: bool) -> Result<Option<Vec<RootBranch>>> {
    let mut ex = Explorer { split_only, out: Vec::new() };
    let mut prefix = Vec::new();
    if !ex.explore(f.clone(), &mut prefix, false, false, None)? {
        return Ok(None);
    }
    if !ex.explore(f.reverse_x(), &mut prefix, true, true, None)? {
        return Ok(None);
    }
    Ok(Some(ex.out))
}

/// All roots of a squarefree f in F_q((T)) as branches, non-reversed ones
/// first in residue enumeration order.
pub fn root_branches(f: &BiPoly) -> Result<Vec<RootBranch>> {
    check_input(f)?;
    Ok(explore_all(f, false)?.expect("collect mode never aborts"))
}

/// Does a squarefree f split into linear factors over F_q((T))? Aborts at
/// the first residue or segment that cannot produce a root.
pub fn splits_completely(f: &BiPoly) -> Result<bool> {
    check_input(f)?;
    Ok(splits_assuming_squarefree(f))
}

pub(crate) fn splits_assuming_squarefree(f: &BiPoly) -> bool {
    match explore_all(f, true) {
        Ok(Some(b)) => Some(b.len()) == f.deg_x(),
        _ => false,
    }
}

#[derive(Clone, Debug)]
pub struct LaurentRoot {
    pub series: TruncSeries,
    pub simple: bool,
}

/// Default number of coefficients per returned root.
pub fn default_precision(f: &BiPoly) -> usize {
    4 * (f.deg_t().unwrap_or(0) + f.deg_x().unwrap_or(0)) + 8
}

/// Every root of f in F_q((T)), each with `prec` coefficients from its
/// valuation on (a root equal to 0 comes back as O(T^N)).
pub fn roots_in_laurent(f: &BiPoly, prec: Option<usize>) -> Result<Vec<LaurentRoot>> {
    let branches = root_branches(f)?;
    let prec = prec.unwrap_or_else(|| default_precision(f));
    let bound = f.deg_t().unwrap_or(0);
    Ok(branches
        .iter()
        .map(|b| LaurentRoot { series: b.to_series(prec, bound), simple: true })
        .collect())
}

/// Counts of roots by valuation: r with ord > 0, ell with ord = 0, s with
/// ord < 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProfile {
    pub r: usize,
    pub ell: usize,
    pub s: usize,
    pub total_found: usize,
    pub splits: bool,
}

pub fn profile_of_branches(f: &BiPoly, branches: &[RootBranch]) -> SplitProfile {
    let (mut r, mut ell, mut s) = (0, 0, 0);
    for b in branches {
        match b.reduction() {
            Reduction::Infinity => s += 1,
            Reduction::Finite(u) if u.is_zero() => r += 1,
            Reduction::Finite(_) => ell += 1,
        }
    }
    let total = r + ell + s;
    SplitProfile { r, ell, s, total_found: total, splits: Some(total) == f.deg_x() }
}

pub fn split_profile(f: &BiPoly) -> Result<SplitProfile> {
    let b = root_branches(f)?;
    Ok(profile_of_branches(f, &b))
}

/// h(rho) mod T^n.
fn eval_trunc(h: &BiPoly, rho: &UniPoly, n: usize) -> UniPoly {
    let mut acc = UniPoly::zero(h.field());
    for a in h.coeffs().iter().rev() {
        acc = acc.mul_trunc(rho, n);
        acc.add_assign_ref(&a.truncate(n));
    }
    acc
}

/// 1/a mod T^n for a(0) != 0.
fn inv_trunc(a: &UniPoly, n: usize) -> UniPoly {
    let f = a.field();
    let a0 = f.inv(a.coeff(0));
    let mut b = vec![f.zero(); n];
    if n == 0 {
        return UniPoly::zero(f);
    }
    b[0] = a0;
    for k in 1..n {
        let mut s = f.zero();
        for j in 1..=k.min(a.coeffs().len().saturating_sub(1)) {
            s = f.add(s, f.mul(a.coeff(j), b[k - j]));
        }
        b[k] = f.neg(f.mul(s, a0));
    }
    UniPoly::from_coeffs(f, b)
}

/// Digits of the root of h congruent to u, u a simple root of h mod T.
fn lift_simple_root(h: &BiPoly, u: FieldElem, n: usize) -> Vec<FieldElem> {
    let f = h.field();
    let dh = h.derivative_x();
    let mut rho = UniPoly::constant(f, u);
    let mut p = 1;
    while p < n {
        p = (2 * p).min(n);
        let hv = eval_trunc(h, &rho, p);
        let dv = eval_trunc(&dh, &rho, p);
        let corr = hv.mul_trunc(&inv_trunc(&dv, p), p);
        rho = (&rho - &corr).truncate(p);
    }
    let mut d = rho.into_coeffs();
    d.resize(n, f.zero());
    d
}

/// Newton refinement of an approximate simple root to absolute precision
/// `target` (exponents below `target` are correct on return).
///
/// Works in the integral coordinate y = T^s x, s = max(0, -ord(approx)),
/// and requires ord g(y0) > 2 ord g'(y0) there.
pub fn hensel_refine(f: &BiPoly, approx: &TruncSeries, target: i64) -> Result<TruncSeries> {
    let field = f.field();
    let d = f.deg_x().ok_or(Error::ZeroPolynomial)?;
    let s = (-approx.ord().unwrap_or(0)).max(0) as usize;
    let g = BiPoly::from_coeffs(
        field,
        f.coeffs().iter().enumerate().map(|(i, a)| a.shl(s * (d - i))).collect(),
    );
    let known = approx.abs_prec() + s as i64;
    if known <= 0 {
        return Err(Error::InvalidArgument("approximation carries no digits".into()));
    }
    let known = known as usize;
    let y0 = UniPoly::from_coeffs(
        field,
        (0..known as i64).map(|e| approx.coeff(e - s as i64).unwrap()).collect(),
    );
    let dg = g.derivative_x();
    let e = eval_trunc(&dg, &y0, known)
        .ord0()
        .ok_or_else(|| Error::InvalidArgument("derivative vanishes to the known precision".into()))?;
    if eval_trunc(&g, &y0, known).ord0().is_some_and(|o| o <= 2 * e) {
        return Err(Error::InvalidArgument(
            "approximation too coarse for Newton refinement".into(),
        ));
    }
    let want = (target + s as i64).max(0) as usize;
    let w = want + e + 1;
    let mut y = y0;
    for _ in 0..128 {
        let gv = eval_trunc(&g, &y, w);
        if gv.ord0().map_or(true, |o| o >= want + e) {
            let mut digits = y.truncate(want).into_coeffs();
            digits.resize(want, field.zero());
            return Ok(TruncSeries::new(field, -(s as i64), digits));
        }
        let dv = eval_trunc(&dg, &y, w);
        let delta = gv.shr(e).mul_trunc(&inv_trunc(&dv.shr(e), w - e), w - e);
        y = (&y - &delta).truncate(w);
    }
    Err(Error::PrecisionExhausted(w))
}

/// f(rho) with precision tracking.
pub fn eval_at_series(f: &BiPoly, rho: &TruncSeries) -> TruncSeries {
    let field = f.field();
    let d = match f.deg_x() {
        None => return TruncSeries::zero(field, i64::MAX / 4),
        Some(d) => d,
    };
    if d == 0 {
        let a = f.coeff(0);
        return TruncSeries::from_uni(&a, a.degree().unwrap() as i64 + 1);
    }
    let mut acc = rho.mul_uni(&f.coeff(d));
    for i in (0..d).rev() {
        let p = acc.abs_prec();
        let ai = if p > 0 {
            TruncSeries::from_uni(&f.coeff(i), p)
        } else {
            TruncSeries::zero(field, p)
        };
        acc = acc.add(&ai);
        if i > 0 {
            acc = acc.mul(rho);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::parse_bipoly;

    #[test]
    fn artin_schreier_quadratic() {
        let f2 = make_field(2, 1).unwrap();
        let f = parse_bipoly(f2, "x^2 + x + T").unwrap();
        let roots = roots_in_laurent(&f, Some(16)).unwrap();
        assert_eq!(roots.len(), 2);
        // T + T^2 + T^4 + T^8 + ... and its translate by 1
        let mut want = vec![f2.zero(); 16];
        for k in [1usize, 2, 4, 8] {
            want[k] = f2.one();
        }
        let a = TruncSeries::new(f2, 0, want.clone());
        want[0] = f2.one();
        let b = TruncSeries::new(f2, 0, want);
        let got: Vec<_> = roots.iter().map(|r| r.series.truncate_abs(16)).collect();
        assert!(got.contains(&a.truncate_abs(16)));
        assert!(got.contains(&b));
        let p = split_profile(&f).unwrap();
        assert_eq!((p.r, p.ell, p.s, p.splits), (1, 1, 0, true));
    }

    #[test]
    fn constant_irreducible_has_no_roots() {
        let f2 = make_field(2, 1).unwrap();
        let f = parse_bipoly(f2, "x^2 + x + 1").unwrap();
        let p = split_profile(&f).unwrap();
        assert_eq!((p.total_found, p.splits), (0, false));
        assert!(!splits_completely(&f).unwrap());
    }

    #[test]
    fn gonality_one_cubic_profile() {
        let f2 = make_field(2, 1).unwrap();
        let f = parse_bipoly(f2, "T*x^3 + x^2 + (T+1)*x + T").unwrap();
        let p = split_profile(&f).unwrap();
        assert_eq!((p.r, p.ell, p.s, p.splits), (1, 1, 1, true));
        assert!(splits_completely(&f).unwrap());
        for r in roots_in_laurent(&f, Some(12)).unwrap() {
            let v = eval_at_series(&f, &r.series);
            assert!(v.is_zero(), "{} leaves {}", r.series, v);
        }
    }

    #[test]
    fn not_squarefree_rejected() {
        let f2 = make_field(2, 1).unwrap();
        let f = parse_bipoly(f2, "(x + T)^2").unwrap();
        assert_eq!(split_profile(&f).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn refine_examples() {
        let f2 = make_field(2, 1).unwrap();
        let f = parse_bipoly(f2, "x^2 + x + T").unwrap();
        let approx = TruncSeries::new(f2, 1, vec![f2.one()]);
        let r = hensel_refine(&f, &approx, 16).unwrap();
        assert_eq!(r.to_string(), "T^1*(1 + T + T^3 + T^7) + O(T^16)");
        let f5 = make_field(5, 1).unwrap();
        let g = parse_bipoly(f5, "x^5 - x - T").unwrap();
        let r = hensel_refine(&g, &TruncSeries::zero(f5, 1), 6).unwrap();
        // the root is -T - T^5 + ...
        assert_eq!(r.to_string(), "T^1*(4 + 4*T^4) + O(T^6)");
    }
}
