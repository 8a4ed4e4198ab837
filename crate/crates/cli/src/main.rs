//! `tadic`: verify, construct and search for totally T-adic functions of
//! small height from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tadic::constructions::{construct, Family};
use tadic::heights::{height_local, height_minpoly, local_pole_masses};
use tadic::pipeline::{verify_candidate, CandidateReport};
use tadic::poly::{newton_polygon, parse_bipoly, parse_unipoly, Place};
use tadic::search::{
    build_linear_system, exhaustive_search_all, exhaustive_search_with, random_search, ExhaustiveOptions,
    RandomSpec, SearchReport, DEFAULT_CHECKPOINT_INTERVAL,
};
use tadic::{field_of_order, BiPoly, Field};

/// Spaces larger than this trigger a warning before an exhaustive run.
const LARGE_SPACE_LOG2: u32 = 34;

#[derive(Parser, Debug)]
#[command(name = "tadic", version, about = "Totally T-adic functions of small height over F_q(T)")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline on a polynomial; exit 0 iff it is a certified
    /// minimal-height example.
    Verify(PolyArgs),
    /// Build and verify a member of an explicit family.
    Construct(ConstructArgs),
    /// Exact height of the function defined by a minimal polynomial.
    Height(PolyArgs),
    /// Newton polygon of a polynomial at a place of F_q(T).
    Np(NpArgs),
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Polynomial in T and x, e.g. "T*x^3 + x^2 + (T+1)*x + T".
    poly: String,
    #[arg(long)]
    q: u64,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// gonality-one, cyclic, char2, phi-tower, psi-tower, integral-base or unit-base.
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: u64,
    /// Gonality parameter (cyclic, psi-tower).
    #[arg(long)]
    n: Option<usize>,
    /// Tower level (phi-tower).
    #[arg(long)]
    j: Option<usize>,
}

#[derive(Args, Debug)]
struct NpArgs {
    poly: String,
    #[arg(long)]
    q: u64,
    /// "0", "inf", or a monic irreducible polynomial in T.
    #[arg(long, default_value = "0")]
    place: String,
    /// Replace x by x + u first; u is a constant such as "1" or "g+1".
    #[arg(long)]
    shift: Option<String>,
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Random products of linear factors, truncated and filtered.
    Random(RandomArgs),
    /// Enumerate the affine space cut out by the linear conditions.
    Exhaustive(ExhaustiveArgs),
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    #[arg(long)]
    seed: u64,
    /// Return after the first hit.
    #[arg(long)]
    stop_at_first: bool,
}

#[derive(Args, Debug)]
struct ExhaustiveArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    /// Run only this shard. Without it every shard runs, in parallel.
    #[arg(long)]
    shard: Option<u64>,
    /// Number of shards; must be a power of q.
    #[arg(long, default_value_t = 1)]
    total_shards: u64,
    /// Checkpoint file for a single shard, or a directory when all shards
    /// run.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CHECKPOINT_INTERVAL)]
    checkpoint_interval: u64,
}

/// Failure modes mapped onto exit codes.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    match &cli.cmd {
        Command::Verify(a) => cmd_verify(cli, a),
        Command::Construct(a) => cmd_construct(cli, a),
        Command::Height(a) => cmd_height(cli, a),
        Command::Np(a) => cmd_np(cli, a),
        Command::Search(SearchCmd::Random(a)) => cmd_random(cli, a),
        Command::Search(SearchCmd::Exhaustive(a)) => cmd_exhaustive(cli, a),
    }
}

fn field(q: u64) -> Result<Field> {
    field_of_order(q).with_context(|| format!("--q {q}"))
}

fn parse_poly(f: Field, s: &str) -> Result<BiPoly> {
    let p = parse_bipoly(f, s).with_context(|| format!("cannot parse '{s}'"))?;
    if p.is_zero() {
        bail!("the zero polynomial is not allowed");
    }
    Ok(p)
}

fn emit(cli: &Cli, json: &Value, text: String) -> Result<()> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Text => text,
    };
    match &cli.out {
        Some(p) => write_atomic(p, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, body: &str) -> Result<()> {
    let tmp = path.with_extension("partial");
    fs::write(&tmp, body).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn candidate_text(r: &CandidateReport) -> String {
    let mut s = format!("polynomial      {}\n", r.poly);
    s += &format!("field           F_{}\n", r.q);
    s += &format!("degrees         deg_x {}, deg_T {}\n", r.deg_x, r.deg_t);
    s += &format!("squarefree      {}\n", yes_no(r.squarefree));
    if let Some(u) = &r.rational_root {
        s += &format!("rational root   {u}\n");
    }
    if let Some(p) = &r.profile {
        s += &format!(
            "roots in F_q((T)) {} of {} (ord>0: {}, ord=0: {}, ord<0: {})\n",
            p.total_found, r.deg_x, p.r, p.ell, p.s
        );
    }
    s += &format!(
        "irreducible     {}\n",
        match r.irreducible {
            Some(b) => yes_no(b),
            None => "unknown",
        }
    );
    for g in &r.factors {
        s += &format!("  factor        {g}\n");
    }
    s += &format!("height          {}\n", r.height);
    if let Some(h) = &r.height_local {
        s += &format!("height (local)  {h}\n");
    }
    let c = &r.criteria;
    s += &format!(
        "criteria (r={}) degrees {}, polygon {}, lc {}, constant {}, distributed {}, ord one {}\n",
        c.r,
        yes_no(c.degree_relation),
        yes_no(c.newton_polygon),
        yes_no(c.leading_coefficient),
        yes_no(c.constant_coefficient),
        yes_no(c.well_distributed),
        yes_no(c.ord_one)
    );
    s += &format!("minimal height  {}\n", yes_no(r.minimal_height));
    s
}

fn cmd_verify(cli: &Cli, a: &PolyArgs) -> Result<Outcome> {
    let f = parse_poly(field(a.q)?, &a.poly)?;
    let r = verify_candidate(&f)?;
    emit(cli, &serde_json::to_value(&r)?, candidate_text(&r))?;
    Ok(if r.minimal_height { Outcome::Ok } else { Outcome::Failed })
}

fn cmd_construct(cli: &Cli, a: &ConstructArgs) -> Result<Outcome> {
    let family: Family = a.family.parse()?;
    let param = match family {
        Family::PhiTower => a.j.or(a.n).context("phi-tower needs --j")?,
        Family::Cyclic | Family::PsiTower => a.n.or(a.j).with_context(|| format!("{family} needs --n"))?,
        _ => 1,
    };
    let results = construct(family, field(a.q)?, param)?;
    let json = if results.len() == 1 { serde_json::to_value(&results[0])? } else { serde_json::to_value(&results)? };
    let mut text = String::new();
    for r in &results {
        text += &format!("{} q={} param={}\n", r.family, r.q, r.param);
        text += &format!("  polynomial  {}\n", r.poly);
        text += &format!("  height      {} (expected {})\n", r.verified.height, r.expected_height);
        text += &format!("  split       {}\n", yes_no(r.verified.splits));
        text += &format!(
            "  irreducible {}\n",
            r.verified.irreducible.map_or("unknown", yes_no)
        );
        for p in &r.verified.properties {
            text += &format!("  {:<11} {}\n", p.name, yes_no(p.holds));
        }
        text += &format!("  verified    {}\n", yes_no(r.verified.ok));
    }
    emit(cli, &json, text)?;
    Ok(if results.iter().all(|r| r.verified.ok) { Outcome::Ok } else { Outcome::Failed })
}

fn place_name(p: &Place) -> String {
    match p {
        Place::Zero => "T".into(),
        Place::Infinity => "inf".into(),
        Place::Finite(pi) => pi.to_string(),
    }
}

fn cmd_height(cli: &Cli, a: &PolyArgs) -> Result<Outcome> {
    let f = parse_poly(field(a.q)?, &a.poly)?;
    let h = height_minpoly(&f)?;
    let hl = height_local(&f).ok();
    let masses = local_pole_masses(&f).unwrap_or_default();
    let json = json!({
        "poly": f.to_string(),
        "height": h,
        "height_local": hl,
        "pole_masses": masses.iter().map(|(p, m)| json!({"place": place_name(p), "mass": m.to_string()})).collect::<Vec<_>>(),
    });
    let mut text = format!("height {h}\n");
    if let Some(hl) = hl {
        text += &format!("height from pole masses {hl}\n");
    }
    for (p, m) in &masses {
        text += &format!("  place {:<12} pole mass {m}\n", place_name(p));
    }
    emit(cli, &json, text)?;
    Ok(Outcome::Ok)
}

fn cmd_np(cli: &Cli, a: &NpArgs) -> Result<Outcome> {
    let fld = field(a.q)?;
    let mut f = parse_poly(fld, &a.poly)?;
    if let Some(u) = &a.shift {
        let u = parse_unipoly(fld, u).with_context(|| format!("cannot parse shift '{u}'"))?;
        if u.degree().unwrap_or(0) > 0 {
            bail!("--shift must be a constant");
        }
        f = f.shift_x(u.coeff(0));
    }
    let place = match a.place.as_str() {
        "0" | "T" => Place::Zero,
        "inf" | "infinity" => Place::Infinity,
        s => Place::finite(parse_unipoly(fld, s).with_context(|| format!("cannot parse place '{s}'"))?)?,
    };
    let np = newton_polygon(&f, &place)?;
    let segs: Vec<Value> = np
        .segments()
        .iter()
        .map(|s| json!({"start": s.start, "end": s.end, "slope": s.slope().to_string(), "length": s.length()}))
        .collect();
    let json = json!({
        "poly": f.to_string(),
        "place": place_name(&place),
        "vertices": np.vertices,
        "segments": segs,
        "pole_mass": np.pole_mass().to_string(),
    });
    let mut text = format!("place {}\nvertices", place_name(&place));
    for v in &np.vertices {
        text += &format!(" ({},{})", v.0, v.1);
    }
    text += "\n";
    for s in np.segments() {
        text += &format!("  slope {:>6}  length {}\n", s.slope().to_string(), s.length());
    }
    text += &format!("pole mass {}\n", np.pole_mass());
    emit(cli, &json, text)?;
    Ok(Outcome::Ok)
}

fn report_text(r: &SearchReport) -> String {
    let mut s = format!("q={} n={} shard {}/{}  [{}]\n", r.q, r.n, r.shard, r.total_shards, r.seed_or_space);
    for (name, v) in [
        ("tested", r.tested),
        ("rootless", r.passed_rootless),
        ("newton", r.passed_newton),
        ("squarefree", r.passed_squarefree),
        ("split", r.split),
        ("irreducible", r.irreducible),
    ] {
        s += &format!("  {name:<12} {v}\n");
    }
    s += &format!("  hits         {}\n", r.hits.len());
    for h in &r.hits {
        s += &format!("    {h}\n");
    }
    s += &format!("  wall time    {:.3}s\n", r.wall_time_s);
    s
}

fn cmd_random(cli: &Cli, a: &RandomArgs) -> Result<Outcome> {
    if a.n == 0 || a.budget == 0 {
        bail!("--n and --budget must be positive");
    }
    let spec = RandomSpec { field: field(a.q)?, n: a.n, budget: a.budget, seed: a.seed, stop_at_first: a.stop_at_first };
    let r = random_search(&spec)?;
    emit(cli, &serde_json::to_value(&r)?, report_text(&r))?;
    Ok(Outcome::Ok)
}

fn cmd_exhaustive(cli: &Cli, a: &ExhaustiveArgs) -> Result<Outcome> {
    if a.n == 0 {
        bail!("--n must be positive");
    }
    let space = build_linear_system(field(a.q)?, a.n)?;
    let log2 = (a.q as f64).log2() * space.dim() as f64;
    if log2 > LARGE_SPACE_LOG2 as f64 {
        log::warn!(
            "the space has q^dim = {}^{} (about 2^{:.1}) points; this will not finish at desk scale",
            a.q,
            space.dim(),
            log2
        );
    }
    let r = match a.shard {
        Some(s) => {
            let opts = ExhaustiveOptions {
                checkpoint: a.checkpoint.clone(),
                checkpoint_interval: a.checkpoint_interval,
                max_candidates: None,
            };
            exhaustive_search_with(&space, s, a.total_shards, &opts)?.0
        }
        None => {
            if let Some(d) = &a.checkpoint {
                fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
            }
            exhaustive_search_all(&space, a.total_shards, a.checkpoint.as_deref())?
        }
    };
    emit(cli, &serde_json::to_value(&r)?, report_text(&r))?;
    Ok(Outcome::Ok)
}
