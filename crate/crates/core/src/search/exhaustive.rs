//! Exhaustive enumeration of an affine candidate space.
//!
//! Points are particular + sum_k t_k basis_k. A shard fixes the top m
//! coordinates (total_shards = q^m) to the base-q digits of its index and
//! walks the remaining ones in modular q-ary Gray-code order, so each step
//! adds a single basis vector. Step l -> l+1 changes the Gray digit whose
//! position is the number of trailing (q-1) digits of l.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, UniPoly};
use crate::search::cascade::{run_cascade, EXHAUSTIVE_ORDER};
use crate::search::{AffineSpace, SearchReport};

pub const DEFAULT_CHECKPOINT_INTERVAL: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_interval: u64,
    /// Stop (after checkpointing) once this many candidates were handled in
    /// this call. Used to interrupt and resume runs.
    pub max_candidates: Option<u64>,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions { checkpoint: None, checkpoint_interval: DEFAULT_CHECKPOINT_INTERVAL, max_candidates: None }
    }
}

/// m with q^m = total_shards, checked against the space dimension.
pub fn shard_digits(space: &AffineSpace, shard: u64, total_shards: u64) -> Result<usize> {
    let q = space.q() as u64;
    let mut m = 0usize;
    let mut p = 1u64;
    while p < total_shards {
        p = p.saturating_mul(q);
        m += 1;
    }
    if total_shards == 0 || p != total_shards {
        return Err(Error::InvalidShard(format!("total_shards = {total_shards} is not a power of q = {q}")));
    }
    if shard >= total_shards {
        return Err(Error::InvalidShard(format!("shard {shard} out of range 0..{total_shards}")));
    }
    if m > space.dim() {
        return Err(Error::InvalidShard(format!(
            "{total_shards} shards exceed the {} points of the space",
            space.size().map_or("many".to_string(), |s| s.to_string())
        )));
    }
    Ok(m)
}

/// Modular Gray digits of l (little endian, `len` of them).
pub fn gray_digits(mut l: u64, q: u64, len: usize) -> Vec<u32> {
    let mut b = Vec::with_capacity(len + 1);
    for _ in 0..len {
        b.push(l % q);
        l /= q;
    }
    b.push(0);
    (0..len).map(|i| ((b[i] + q - b[i + 1]) % q) as u32).collect()
}

/// Gray digit that changes on the step l -> l+1.
pub fn gray_step_digit(mut l: u64, q: u64) -> usize {
    let mut t = 0;
    while l % q == q - 1 {
        l /= q;
        t += 1;
    }
    t
}

/// Coefficients of a q = 2 candidate packed as one word per x-degree, bit j
/// of word i being the coefficient of T^j x^i.
struct Packed {
    words: Vec<u64>,
    basis: Vec<Vec<u64>>,
}

impl Packed {
    fn pack(field_q: u32, f: &BiPoly, d: usize) -> Option<Vec<u64>> {
        if field_q != 2 {
            return None;
        }
        let mut w = vec![0u64; d + 1];
        for (i, a) in f.coeffs().iter().enumerate() {
            for (j, c) in a.coeffs().iter().enumerate() {
                if j >= 64 {
                    return None;
                }
                if !c.is_zero() {
                    w[i] |= 1 << j;
                }
            }
        }
        Some(w)
    }

    fn unpack(&self, field: crate::gf::Field) -> BiPoly {
        let c = self
            .words
            .iter()
            .map(|&w| {
                let idx: Vec<u32> = (0..64 - w.leading_zeros()).map(|j| ((w >> j) & 1) as u32).collect();
                UniPoly::from_indices(field, &idx)
            })
            .collect();
        BiPoly::from_coeffs(field, c)
    }

    /// f(1) != 0: the only possible root in F_2, since f(0) = T^n.
    fn one_is_not_a_root(&self) -> bool {
        self.words.iter().fold(0, |a, w| a ^ w) != 0
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Checkpoint {
    space_hash: String,
    q: u32,
    n: usize,
    shard: u64,
    total_shards: u64,
    next_index: u64,
    report: SearchReport,
}

impl Checkpoint {
    fn write(&self, path: &Path) -> Result<()> {
        let r = &self.report;
        let mut s = String::from("# tadic exhaustive checkpoint v1\n");
        s += &format!(
            "space_hash={}\nq={}\nn={}\nshard={}\ntotal_shards={}\nnext_index={}\n",
            self.space_hash, self.q, self.n, self.shard, self.total_shards, self.next_index
        );
        s += &format!(
            "tested={}\npassed_newton={}\npassed_rootless={}\npassed_squarefree={}\nsplit={}\nirreducible={}\n",
            r.tested, r.passed_newton, r.passed_rootless, r.passed_squarefree, r.split, r.irreducible
        );
        for h in &r.hits {
            s += &format!("hit={h}\n");
        }
        let tmp = path.with_extension("tmp");
        let mut file = fs::File::create(&tmp)?;
        file.write_all(s.as_bytes())?;
        file.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn read(path: &Path, template: &SearchReport) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let bad = |m: String| Error::CheckpointFormat(format!("{}: {m}", path.display()));
        let mut kv: Vec<(String, String)> = Vec::new();
        for line in text.lines() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("malformed line '{line}'")))?;
            kv.push((k.to_string(), v.to_string()));
        }
        let get = |k: &str| -> Result<String> {
            kv.iter()
                .find(|(a, _)| a == k)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| bad(format!("missing key {k}")))
        };
        let num = |k: &str| -> Result<u64> { get(k)?.parse().map_err(|_| bad(format!("bad value for {k}"))) };
        let mut report = template.clone();
        report.tested = num("tested")?;
        report.passed_newton = num("passed_newton")?;
        report.passed_rootless = num("passed_rootless")?;
        report.passed_squarefree = num("passed_squarefree")?;
        report.split = num("split")?;
        report.irreducible = num("irreducible")?;
        report.hits = kv.iter().filter(|(k, _)| k == "hit").map(|(_, v)| v.clone()).collect();
        Ok(Checkpoint {
            space_hash: get("space_hash")?,
            q: num("q")? as u32,
            n: num("n")? as usize,
            shard: num("shard")?,
            total_shards: num("total_shards")?,
            next_index: num("next_index")?,
            report,
        })
    }

    /// Differences in identifying fields, one per line.
    fn mismatches(&self, other: &Checkpoint) -> Vec<String> {
        let mut out = Vec::new();
        let mut cmp = |name: &str, a: String, b: String| {
            if a != b {
                out.push(format!("{name}: checkpoint has {a}, current run has {b}"));
            }
        };
        cmp("space_hash", self.space_hash.clone(), other.space_hash.clone());
        cmp("q", self.q.to_string(), other.q.to_string());
        cmp("n", self.n.to_string(), other.n.to_string());
        cmp("shard", self.shard.to_string(), other.shard.to_string());
        cmp("total_shards", self.total_shards.to_string(), other.total_shards.to_string());
        out
    }
}

/// One shard with default options.
pub fn exhaustive_search(
    space: &AffineSpace,
    shard: u64,
    total_shards: u64,
    checkpoint: Option<&Path>,
) -> Result<SearchReport> {
    let opts = ExhaustiveOptions { checkpoint: checkpoint.map(Path::to_path_buf), ..Default::default() };
    Ok(exhaustive_search_with(space, shard, total_shards, &opts)?.0)
}

/// One shard; the flag is false when `max_candidates` interrupted the run.
pub fn exhaustive_search_with(
    space: &AffineSpace,
    shard: u64,
    total_shards: u64,
    opts: &ExhaustiveOptions,
) -> Result<(SearchReport, bool)> {
    let start = Instant::now();
    let field = space.field;
    let q = space.q() as u64;
    let m = shard_digits(space, shard, total_shards)?;
    let dim = space.dim();
    let local = dim - m;
    let local_size = q
        .checked_pow(local as u32)
        .ok_or_else(|| Error::InvalidShard(format!("shard of q^{local} points is too large")))?;
    let hash = space.hash();
    let template = SearchReport::new(
        space.q(),
        space.n,
        shard,
        total_shards,
        format!("space={hash},dim={dim},consistent={}", space.consistent),
    );
    let mut current = Checkpoint {
        space_hash: hash.clone(),
        q: space.q(),
        n: space.n,
        shard,
        total_shards,
        next_index: 0,
        report: template.clone(),
    };
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let saved = Checkpoint::read(path, &template)?;
            let diff = saved.mismatches(&current);
            if !diff.is_empty() {
                return Err(Error::CheckpointMismatch(diff.join("; ")));
            }
            if saved.next_index > local_size {
                return Err(Error::CheckpointFormat(format!("next_index {} beyond shard size", saved.next_index)));
            }
            current = saved;
        }
    }
    if !space.consistent {
        current.report.wall_time_s = start.elapsed().as_secs_f64();
        return Ok((current.report, true));
    }

    // shard digits on the top coordinates, Gray digits below
    let mut t = gray_digits(current.next_index, q, local);
    let mut s = shard;
    for _ in 0..m {
        t.push((s % q) as u32);
        s /= q;
    }
    let d = space.fixed.deg_x().unwrap_or(0);
    let start_poly = space.poly_of_vector(&space.point(&t));
    let basis_polys: Vec<BiPoly> = space.basis[..local]
        .iter()
        .map(|b| {
            let mut p = space.poly_of_vector(b);
            p.sub_assign_ref(&space.fixed);
            p
        })
        .collect();
    let mut packed = Packed::pack(space.q(), &start_poly, d).and_then(|words| {
        let basis = basis_polys.iter().map(|b| Packed::pack(2, b, d)).collect::<Option<Vec<_>>>()?;
        Some(Packed { words, basis })
    });
    let mut poly = start_poly;

    let mut l = current.next_index;
    let mut handled = 0u64;
    let rep = &mut current.report;
    while l < local_size {
        rep.tested += 1;
        let survived = match &packed {
            Some(p) => {
                if p.one_is_not_a_root() {
                    run_cascade(&p.unpack(field), space.n, &EXHAUSTIVE_ORDER, rep)
                } else {
                    false
                }
            }
            None => run_cascade(&poly, space.n, &EXHAUSTIVE_ORDER, rep),
        };
        if survived {
            let f = packed.as_ref().map_or_else(|| poly.clone(), |p| p.unpack(field));
            rep.hits.push(f.to_string());
        }
        // advance
        if l + 1 < local_size {
            let k = gray_step_digit(l, q);
            match &mut packed {
                Some(p) => {
                    for (w, b) in p.words.iter_mut().zip(&p.basis[k]) {
                        *w ^= b;
                    }
                }
                None => poly.add_assign_ref(&basis_polys[k]),
            }
        }
        l += 1;
        handled += 1;
        let interrupted = opts.max_candidates.is_some_and(|mx| handled >= mx) && l < local_size;
        if let Some(path) = &opts.checkpoint {
            if l % opts.checkpoint_interval.max(1) == 0 || l == local_size || interrupted {
                let snapshot = Checkpoint {
                    space_hash: hash.clone(),
                    q: space.q(),
                    n: space.n,
                    shard,
                    total_shards,
                    next_index: l,
                    report: rep.clone(),
                };
                snapshot.write(path)?;
            }
        }
        if interrupted {
            rep.wall_time_s = start.elapsed().as_secs_f64();
            return Ok((rep.clone(), false));
        }
    }
    rep.wall_time_s = start.elapsed().as_secs_f64();
    Ok((rep.clone(), true))
}

/// All shards of a layout, run in parallel and merged in shard order.
/// Checkpoints, when a directory is given, go to one file per shard.
pub fn exhaustive_search_all(
    space: &AffineSpace,
    total_shards: u64,
    checkpoint_dir: Option<&Path>,
) -> Result<SearchReport> {
    let start = Instant::now();
    shard_digits(space, 0, total_shards)?;
    let reports: Vec<Result<SearchReport>> = (0..total_shards)
        .into_par_iter()
        .map(|s| {
            let cp = checkpoint_dir.map(|d| d.join(format!("shard-{s}-of-{total_shards}.ckpt")));
            exhaustive_search(space, s, total_shards, cp.as_deref())
        })
        .collect();
    let mut merged = SearchReport::new(
        space.q(),
        space.n,
        0,
        total_shards,
        format!("space={},dim={},consistent={}", space.hash(), space.dim(), space.consistent),
    );
    for r in reports {
        merged.merge(&r?);
    }
    merged.wall_time_s = start.elapsed().as_secs_f64();
    Ok(merged)
}
