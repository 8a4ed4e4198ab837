//! The per-candidate filter cascade shared by both searches.

use crate::factor::recombine_irreducible;
use crate::localfield::splits_assuming_squarefree;
use crate::poly::{is_squarefree, newton_polygon, BiPoly, NewtonPolygon, Place};
use crate::search::SearchReport;

/// True iff for every u in F_q the Newton polygon of f(x+u) at T = 0 has
/// vertices (0,n), (n,0), (nq,0), (n(q+1),n).
pub fn newton_filter(f: &BiPoly, n: usize) -> bool {
    let field = f.field();
    let (n, q) = (n as i64, field.q() as i64);
    let want = NewtonPolygon { vertices: vec![(0, n), (n, 0), (n * q, 0), (n * (q + 1), n)] };
    if f.deg_x() != Some((n * (q + 1)) as usize) {
        return false;
    }
    field
        .elements()
        .all(|u| newton_polygon(&f.shift_x(u), &Place::Zero).is_ok_and(|np| np == want))
}

pub fn rootless(f: &BiPoly) -> bool {
    f.has_rational_root().is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Rootless,
    Newton,
    Squarefree,
    Split,
    Irreducible,
}

/// Exhaustive order: the linear system already forces the polygon at
/// u = 0, and the rational-root test is nearly free.
pub const EXHAUSTIVE_ORDER: [Stage; 5] =
    [Stage::Rootless, Stage::Newton, Stage::Squarefree, Stage::Split, Stage::Irreducible];

/// Random order: random candidates mostly fail the polygon test.
pub const RANDOM_ORDER: [Stage; 5] =
    [Stage::Newton, Stage::Rootless, Stage::Squarefree, Stage::Split, Stage::Irreducible];

/// Run f through the stages, bumping the matching counters; true when f
/// survives them all. Split and irreducible assume the squarefree stage
/// came first.
pub fn run_cascade(f: &BiPoly, n: usize, order: &[Stage], rep: &mut SearchReport) -> bool {
    for &stage in order {
        let ok = match stage {
            Stage::Rootless => rootless(f),
            Stage::Newton => newton_filter(f, n),
            Stage::Squarefree => is_squarefree(f),
            Stage::Split => splits_assuming_squarefree(f),
            Stage::Irreducible => recombine_irreducible(f).is_ok_and(|r| r.irreducible),
        };
        if !ok {
            return false;
        }
        match stage {
            Stage::Rootless => rep.passed_rootless += 1,
            Stage::Newton => rep.passed_newton += 1,
            Stage::Squarefree => rep.passed_squarefree += 1,
            Stage::Split => rep.split += 1,
            Stage::Irreducible => rep.irreducible += 1,
        }
    }
    true
}
