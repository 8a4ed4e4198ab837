//! Randomized search: multiply out linear factors with the root shape a
//! minimal-height polynomial must have, truncate mod T^(n+1), and test.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::heights::check_min_height_criteria;
use crate::poly::{BiPoly, UniPoly};
use crate::search::cascade::{run_cascade, RANDOM_ORDER};
use crate::search::SearchReport;

/// Draws per parallel work unit; results do not depend on it.
const CHUNK: u64 = 1 << 10;

#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub field: Field,
    pub n: usize,
    pub budget: u64,
    pub seed: u64,
    /// Stop at the first hit instead of spending the whole budget.
    pub stop_at_first: bool,
}

/// A polynomial of degree <= deg with nonzero constant term; coefficients
/// are drawn low to high, the constant one by rejection.
fn draw_poly(field: Field, deg: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let q = field.q();
    let mut c = Vec::with_capacity(deg + 1);
    loop {
        let a = rng.gen_range(0..q);
        if a != 0 {
            c.push(field.elem(a));
            break;
        }
    }
    for _ in 0..deg {
        c.push(field.elem(rng.gen_range(0..q)));
    }
    UniPoly::from_coeffs(field, c)
}

/// The linear factors of draw k: ChaCha8 seeded with `seed` on stream k;
/// T x - a_i for i = 1..n first, then x - u - T b_(u,i) for u in field
/// order.
fn random_factors(spec: &RandomSpec, k: u64) -> Vec<BiPoly> {
    let field = spec.field;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(k);
    let tx = BiPoly::monomial(field, field.one(), 1, 1);
    let mut out = Vec::with_capacity(n * (field.q() as usize + 1));
    for _ in 0..n {
        let a = draw_poly(field, n, &mut rng);
        out.push(&tx - &BiPoly::from_uni(a));
    }
    for u in field.elements() {
        for _ in 0..n {
            let b = draw_poly(field, n - 1, &mut rng);
            let c = &UniPoly::constant(field, u) + &b.shl(1);
            out.push(&BiPoly::x(field) - &BiPoly::from_uni(c));
        }
    }
    out
}

/// The untruncated product f_0 of draw k.
pub fn random_product(spec: &RandomSpec, k: u64) -> BiPoly {
    random_factors(spec, k).iter().fold(BiPoly::one(spec.field), |acc, l| &acc * l)
}

/// Draw k: f_0 truncated to T-degree <= n.
pub fn random_candidate(spec: &RandomSpec, k: u64) -> BiPoly {
    let m = spec.n + 1;
    random_factors(spec, k).iter().fold(BiPoly::one(spec.field), |acc, l| acc.mul_trunc_t(l, m))
}

fn run_range(spec: &RandomSpec, lo: u64, hi: u64) -> (SearchReport, Vec<(u64, String)>) {
    let mut rep = SearchReport::default();
    let mut hits = Vec::new();
    for k in lo..hi {
        let f = random_candidate(spec, k);
        rep.tested += 1;
        if run_cascade(&f, spec.n, &RANDOM_ORDER, &mut rep) && check_min_height_criteria(&f, Some(spec.n)).pass {
            hits.push((k, f.to_string()));
            if spec.stop_at_first {
                break;
            }
        }
    }
    (rep, hits)
}

/// Draws k = 1..=B. With `stop_at_first` the counters cover exactly the
/// draws up to and including the first hit.
pub fn random_search(spec: &RandomSpec) -> Result<SearchReport> {
    if spec.budget == 0 || spec.n == 0 {
        return Err(Error::InvalidArgument("budget and n must be positive".into()));
    }
    let start = Instant::now();
    let mut rep = SearchReport::new(
        spec.field.q(),
        spec.n,
        0,
        1,
        format!("seed={},budget={},rng=chacha8-stream", spec.seed, spec.budget),
    );
    let chunks: Vec<(u64, u64)> = (0..spec.budget.div_ceil(CHUNK))
        .map(|c| (1 + c * CHUNK, (1 + (c + 1) * CHUNK).min(spec.budget + 1)))
        .collect();
    // waves of chunks so that stop_at_first does not spend the whole budget
    let wave = 4 * rayon::current_num_threads().max(1);
    for w in chunks.chunks(wave) {
        let results: Vec<(SearchReport, Vec<(u64, String)>)> =
            w.par_iter().map(|&(lo, hi)| run_range(spec, lo, hi)).collect();
        for (r, h) in &results {
            rep.merge(r);
            rep.hits.extend(h.iter().map(|(_, s)| s.clone()));
            if spec.stop_at_first && !h.is_empty() {
                rep.wall_time_s = start.elapsed().as_secs_f64();
                return Ok(rep);
            }
        }
    }
    rep.wall_time_s = start.elapsed().as_secs_f64();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn candidate_shape_q2_n1() {
        let f2 = make_field(2, 1).unwrap();
        let spec = RandomSpec { field: f2, n: 1, budget: 10, seed: 7, stop_at_first: false };
        for k in 0..20 {
            let f0 = random_product(&spec, k);
            let f = random_candidate(&spec, k);
            assert_eq!(f.deg_x(), Some(3));
            assert_eq!(f.lc(), UniPoly::var(f2));
            assert!(f.deg_t().unwrap() <= 1);
            let diff = &f0 - &f;
            assert!(diff.coeffs().iter().all(|a| a.ord0().map_or(true, |o| o >= 2)));
        }
        assert_eq!(random_candidate(&spec, 3), random_candidate(&spec, 3));
    }

    #[test]
    fn budget_one() {
        let f3 = make_field(3, 1).unwrap();
        let spec = RandomSpec { field: f3, n: 3, budget: 1, seed: 1, stop_at_first: false };
        let rep = random_search(&spec).unwrap();
        assert_eq!(rep.tested, 1);
    }
}
