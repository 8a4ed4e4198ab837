//! Factoring split polynomials by recombining their Laurent roots.
//!
//! When f splits over F_q((T)), every factor g of f in F_q[T][x] is
//! lc(g) * prod_{i in S} (x - rho_i) for some set S of roots, and
//! lc(f) * prod_{i in S} (x - rho_i) is a polynomial of T-degree at most
//! deg_T f + deg lc(f). Subsets are walked in Gray-code order so the trace
//! (the x^(|S|-1) coefficient) updates with one addition per step and prunes
//! almost every subset before any product is formed; survivors are confirmed
//! by exact division.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::localfield::{root_branches, Reduction, RootBranch, TruncSeries};
use crate::poly::{
    is_squarefree, newton_polygon, normalize_minpoly, BiPoly, Place, UniPoly,
};

/// How irreducibility (or a factorization) was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// x-degree one.
    Linear,
    /// A Newton polygon made of one segment with no interior lattice point.
    NewtonSegment(String),
    /// Exhaustive subset recombination found no proper factor.
    Recombination { subsets: u64 },
    /// A proper factorization was found.
    Factored,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    /// Normalized irreducible factors, in discovery order.
    pub factors: Vec<BiPoly>,
    pub irreducible: bool,
    pub certificate: Certificate,
}

/// Irreducibility from a single primitive Newton segment at T = 0 or at
/// infinity (Eisenstein-Dumas).
pub fn newton_segment_certificate(f: &BiPoly) -> Option<Place> {
    let d = f.deg_x()? as i64;
    for place in [Place::Infinity, Place::Zero] {
        let np = newton_polygon(f, &place).ok()?;
        // a vanishing constant term leaves the hull short of i = 0
        let spans = np.vertices.first().map(|v| v.0) == Some(0) && np.vertices.last().map(|v| v.0) == Some(d);
        if spans && np.is_single_primitive_segment() {
            return Some(place);
        }
    }
    None
}

struct Root {
    series: TruncSeries,
    reduction: Reduction,
}

/// lc * rho_i as coefficient arrays on exponents 0..width.
struct ScaledRoots {
    width: usize,
    cols: Vec<Vec<FieldElem>>,
}

fn scaled_roots(lc: &UniPoly, roots: &[Root]) -> ScaledRoots {
    let scaled: Vec<TruncSeries> = roots.iter().map(|r| r.series.mul_uni(lc)).collect();
    let width = scaled.iter().map(|s| s.abs_prec()).min().unwrap_or(0).max(0) as usize;
    let cols = scaled
        .iter()
        .map(|s| {
            debug_assert!(s.ord().map_or(true, |v| v >= 0));
            (0..width as i64).map(|e| s.coeff(e).unwrap()).collect()
        })
        .collect();
    ScaledRoots { width, cols }
}

struct Recombiner<'a> {
    f: &'a BiPoly,
    lc: UniPoly,
    bound: usize,
    subsets: u64,
}

impl<'a> Recombiner<'a> {
    fn new(f: &'a BiPoly) -> Self {
        let lc = f.lc();
        let bound = f.deg_t().unwrap_or(0) + lc.degree().unwrap_or(0);
        Recombiner { f, lc, bound, subsets: 0 }
    }

    fn trace_ok(&self, sum: &[FieldElem]) -> bool {
        sum.iter().skip(self.bound + 1).all(|c| c.is_zero())
    }

    /// The factor with roots S, if lc(f) prod_S (x - rho) is a polynomial
    /// that divides f.
    fn try_subset(&self, roots: &[Root], subset: &[usize]) -> Option<(BiPoly, BiPoly)> {
        let field = self.f.field();
        // non-leading coefficients of the monic prod (x - rho), lowest first
        let mut prod: Vec<TruncSeries> = Vec::with_capacity(subset.len());
        for &i in subset {
            let rho = &roots[i].series;
            let k = prod.len();
            let mut next = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let t = if j < k { prod[j].mul(rho) } else { rho.clone() };
                next.push(if j > 0 { prod[j - 1].sub(&t) } else { t.neg() });
            }
            prod = next;
        }
        let mut coeffs = Vec::with_capacity(prod.len() + 1);
        for c in &prod {
            let s = c.mul_uni(&self.lc);
            if s.ord().is_some_and(|v| v < 0) {
                return None;
            }
            let mut digits = Vec::new();
            for e in 0..s.abs_prec().max(0) {
                let a = s.coeff(e).unwrap();
                if e as usize > self.bound {
                    if !a.is_zero() {
                        return None;
                    }
                } else {
                    digits.push(a);
                }
            }
            coeffs.push(UniPoly::from_coeffs(field, digits));
        }
        coeffs.push(self.lc.clone());
        let g = BiPoly::from_coeffs(field, coeffs).primitive_part();
        let h = self.f.exact_div(&g)?;
        Some((normalize_minpoly(&g).ok()?, normalize_minpoly(&h).ok()?))
    }

    /// Gray-code walk over subsets of all roots but the last.
    fn search_generic(&mut self, roots: &[Root]) -> Option<(Vec<usize>, BiPoly, BiPoly)> {
        let d = roots.len();
        if d < 2 {
            return None;
        }
        let field = self.f.field();
        let sr = scaled_roots(&self.lc, roots);
        let total: Vec<FieldElem> = (0..sr.width)
            .map(|e| sr.cols.iter().fold(field.zero(), |a, c| field.add(a, c[e])))
            .collect();
        let mut sum = vec![field.zero(); sr.width];
        let mut member = vec![false; d - 1];
        let mut size = 0usize;
        let steps: u64 = 1u64 << (d - 1);
        for t in 1..steps {
            let bit = t.trailing_zeros() as usize;
            member[bit] = !member[bit];
            let col = &sr.cols[bit];
            if member[bit] {
                size += 1;
                for (s, &c) in sum.iter_mut().zip(col) {
                    *s = field.add(*s, c);
                }
            } else {
                size -= 1;
                for (s, &c) in sum.iter_mut().zip(col) {
                    *s = field.sub(*s, c);
                }
            }
            self.subsets += 1;
            let use_complement = 2 * size > d;
            let ok = if use_complement {
                let comp: Vec<FieldElem> =
                    total.iter().zip(&sum).map(|(&a, &b)| field.sub(a, b)).collect();
                self.trace_ok(&comp)
            } else {
                self.trace_ok(&sum)
            };
            if !ok {
                continue;
            }
            let subset: Vec<usize> = if use_complement {
                (0..d).filter(|&i| i == d - 1 || !member[i]).collect()
            } else {
                (0..d - 1).filter(|&i| member[i]).collect()
            };
            if let Some((g, h)) = self.try_subset(roots, &subset) {
                return Some((subset, g, h));
            }
        }
        None
    }

    /// Balanced subsets: k roots from each residue class, k <= r/2.
    fn search_balanced(&mut self, roots: &[Root], classes: &[Vec<usize>], r: usize) -> Option<(Vec<usize>, BiPoly, BiPoly)> {
        let field = self.f.field();
        let sr = scaled_roots(&self.lc, roots);
        for k in 1..=r / 2 {
            let combos: Vec<Vec<Vec<usize>>> =
                classes.iter().map(|c| combinations(c, k)).collect();
            let mut idx = vec![0usize; classes.len()];
            loop {
                self.subsets += 1;
                let subset: Vec<usize> =
                    idx.iter().enumerate().flat_map(|(ci, &j)| combos[ci][j].clone()).collect();
                let mut sum = vec![field.zero(); sr.width];
                for &i in &subset {
                    for (s, &c) in sum.iter_mut().zip(&sr.cols[i]) {
                        *s = field.add(*s, c);
                    }
                }
                if self.trace_ok(&sum) {
                    if let Some((g, h)) = self.try_subset(roots, &subset) {
                        return Some((subset, g, h));
                    }
                }
                // mixed-radix increment
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < combos[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
        None
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut cur, &mut out);
    out
}

/// If every residue class of P^1(F_q) holds exactly r = deg_T f roots and
/// deg_x f = (q+1) r with no root in F_q, each factor of f has the same
/// shape, so only balanced subsets need testing. Returns the classes.
fn balanced_classes(f: &BiPoly, roots: &[Root]) -> Option<(Vec<Vec<usize>>, usize)> {
    let field = f.field();
    let q = field.q() as usize;
    let r = f.deg_t()?;
    if r == 0 || f.deg_x()? != (q + 1) * r || f.has_rational_root().is_some() {
        return None;
    }
    let mut classes = vec![Vec::new(); q + 1];
    for (i, root) in roots.iter().enumerate() {
        let slot = match root.reduction {
            Reduction::Finite(u) => u.index() as usize,
            Reduction::Infinity => q,
        };
        classes[slot].push(i);
    }
    classes.iter().all(|c| c.len() == r).then_some((classes, r))
}

fn recombine_roots(f: &BiPoly, roots: Vec<Root>, subsets: &mut u64) -> Vec<BiPoly> {
    if roots.len() <= 1 {
        return vec![f.clone()];
    }
    let mut rc = Recombiner::new(f);
    let found = match balanced_classes(f, &roots) {
        Some((classes, r)) => rc.search_balanced(&roots, &classes, r),
        None => rc.search_generic(&roots),
    };
    *subsets += rc.subsets;
    match found {
        None => vec![f.clone()],
        Some((subset, g, h)) => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, r) in roots.into_iter().enumerate() {
                if subset.contains(&i) {
                    left.push(r);
                } else {
                    right.push(r);
                }
            }
            let mut out = recombine_roots(&g, left, subsets);
            out.extend(recombine_roots(&h, right, subsets));
            out
        }
    }
}

fn roots_for_recombination(f: &BiPoly, branches: &[RootBranch]) -> Vec<Root> {
    let lc = f.lc();
    let bound = f.deg_t().unwrap_or(0) + lc.degree().unwrap_or(0);
    let prec = bound + f.deg_x().unwrap_or(0) + 4;
    let ord_bound = f.deg_t().unwrap_or(0);
    branches
        .iter()
        .map(|b| Root { series: b.to_series(prec, ord_bound), reduction: b.reduction() })
        .collect()
}

/// Factor a squarefree f that splits completely over F_q((T)) into
/// irreducibles of F_q[T][x].
pub fn recombine_irreducible(f: &BiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = normalize_minpoly(f)?;
    let d = f.deg_x().unwrap();
    if d == 0 {
        return Err(Error::InvalidArgument("polynomial has no x-degree".into()));
    }
    if !is_squarefree(&f) {
        return Err(Error::NotSquarefree);
    }
    if d == 1 {
        return Ok(Factorization { factors: vec![f], irreducible: true, certificate: Certificate::Linear });
    }
    let branches = root_branches(&f)?;
    if branches.len() != d {
        return Err(Error::InvalidArgument("polynomial does not split over F_q((T))".into()));
    }
    if let Some(place) = newton_segment_certificate(&f) {
        return Ok(Factorization {
            factors: vec![f],
            irreducible: true,
            certificate: Certificate::NewtonSegment(format!("{place:?}")),
        });
    }
    let roots = roots_for_recombination(&f, &branches);
    let mut subsets = 0;
    let factors = recombine_roots(&f, roots, &mut subsets);
    let irreducible = factors.len() == 1;
    Ok(Factorization {
        factors,
        irreducible,
        certificate: if irreducible {
            Certificate::Recombination { subsets }
        } else {
            Certificate::Factored
        },
    })
}

/// Irreducibility of a squarefree f when it can be decided here: linear,
/// a primitive Newton segment, a root in F_q, or a complete split.
/// None when f does not split and no cheap certificate applies.
pub fn certify_irreducible(f: &BiPoly) -> Result<Option<bool>> {
    let f = normalize_minpoly(f)?;
    match f.deg_x() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(Some(false)),
        Some(1) => return Ok(Some(true)),
        _ => {}
    }
    if newton_segment_certificate(&f).is_some() {
        return Ok(Some(true));
    }
    if f.has_rational_root().is_some() {
        return Ok(Some(false));
    }
    if !is_squarefree(&f) {
        return Err(Error::NotSquarefree);
    }
    let branches = root_branches(&f)?;
    if Some(branches.len()) != f.deg_x() {
        return Ok(None);
    }
    Ok(Some(recombine_irreducible(&f)?.irreducible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::parse_bipoly;

    #[test]
    fn product_of_the_two_cubics_recombines() {
        let f2 = make_field(2, 1).unwrap();
        let a = parse_bipoly(f2, "T*x^3 + x^2 + (T+1)*x + T").unwrap();
        let b = parse_bipoly(f2, "T*x^3 + (T+1)*x^2 + x + T").unwrap();
        let third = parse_bipoly(
            f2,
            "T^2*x^6 + T^2*x^5 + (T^2+T+1)*x^4 + T^2*x^3 + (T^2+T+1)*x^2 + T^2*x + T^2",
        )
        .unwrap();
        assert_eq!(&a * &b, third);
        let fac = recombine_irreducible(&third).unwrap();
        assert!(!fac.irreducible);
        let mut got = fac.factors.clone();
        got.sort_by_key(|p| p.to_string());
        let mut want = vec![a.clone(), b.clone()];
        want.sort_by_key(|p| p.to_string());
        assert_eq!(got, want);
        assert!(recombine_irreducible(&a).unwrap().irreducible);
    }

    #[test]
    fn segment_certificate() {
        let f3 = make_field(3, 1).unwrap();
        let f = parse_bipoly(f3, "x^3 - x + T").unwrap();
        assert_eq!(newton_segment_certificate(&f), Some(Place::Infinity));
        assert_eq!(certify_irreducible(&f).unwrap(), Some(true));
        // the hull of x((T^2+1)x + T^2) at T = 0 is one primitive segment
        // that stops short of i = 0
        let f2 = make_field(2, 1).unwrap();
        let g = parse_bipoly(f2, "(T^2+1)*x^2 + T^2*x").unwrap();
        assert_eq!(newton_segment_certificate(&g), None);
        assert!(!recombine_irreducible(&g).unwrap().irreducible);
    }

    #[test]
    fn non_split_rejected() {
        let f2 = make_field(2, 1).unwrap();
        let f = parse_bipoly(f2, "x^2 + x + 1").unwrap();
        assert!(recombine_irreducible(&f).is_err());
    }
}
