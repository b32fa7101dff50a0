//! `monopath`: generate, realize, verify and search simple 4-polytopes with
//! monotone Hamilton paths.

mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use log::info;
use monopath_core::combinatorics::{
    check_isomorphic, f_vector, generate_dual_cyclic, generate_qtilde, h_vector, CombinatorialPolytope,
};
use monopath_core::hamilton::{build_path, check_aof, check_holt_klee, orientation_from_path};
use monopath_core::io::{
    combinatorial_from_json, combinatorial_to_json, read_json, realized_from_json, realized_to_json, write_json,
    CombinatorialJson, IoError, RealizedJson,
};
use monopath_core::realization::{certify, realize, realize_sweep_frame, RealizationError, RealizeOptions};
use monopath_core::search::{search_hamilton_aof, Checkpoint, SearchOptions};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "monopath", version, about = "Simple polar-to-neighborly 4-polytopes with monotone Hamilton paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the combinatorial type of Q̃_m^d or of a dual-cyclic 4-polytope.
    Generate(GenerateArgs),
    /// Construct exact coordinates for Q_m and certify them.
    Realize(RealizeArgs),
    /// Re-check a realized (or combinatorial) JSON file from scratch.
    Verify(VerifyArgs),
    /// Search all Hamilton paths for AOF and Holt-Klee orientations.
    SearchAof(SearchArgs),
    /// Decide whether two combinatorial types are isomorphic.
    Isocheck(IsoArgs),
    /// Draw a coordinate projection of a realized polytope as SVG.
    Plot(PlotArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Dimension (even, at least 4).
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// Number of cuts; the polytope has m + d + 1 facets.
    #[arg(long, conflicts_with = "dual_cyclic", required_unless_present = "dual_cyclic")]
    m: Option<usize>,
    /// Generate the polar of the cyclic polytope C_4(n) instead.
    #[arg(long, value_name = "N")]
    dual_cyclic: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cut and pencil attempts allowed per inductive step.
    #[arg(long, default_value_t = 10_000)]
    max_retries: usize,
    /// Also check the Holt-Klee property of the path orientation.
    #[arg(long)]
    holt_klee: bool,
    /// Keep exact coordinates without rounding facet planes to dyadic rationals.
    #[arg(long)]
    no_snap: bool,
    /// Output Q_m in the frame of the next step's pencil and record its center O.
    #[arg(long)]
    sweep_center: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long)]
    holt_klee: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Search the dual-cyclic polytope with n facets.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    n: Option<usize>,
    /// Search a combinatorial JSON file instead.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    holt_klee: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Stop after this many seconds; progress is kept in the checkpoint.
    #[arg(long, value_name = "SECONDS")]
    budget: Option<f64>,
    /// Checkpoint file, resumed from when it exists and written on exit.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    prefix_depth: usize,
    #[arg(long, default_value_t = 100)]
    max_witnesses: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IsoArgs {
    /// A combinatorial JSON file, `qtilde:M`, `qtilde:M:D` or `dual-cyclic:N`.
    a: String,
    b: String,
}

#[derive(Args)]
struct PlotArgs {
    file: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// The two coordinates to project onto, e.g. 34.
    #[arg(long, default_value = "34")]
    plane: String,
}

enum Failure {
    Verification(String),
    Usage(String),
    Exhausted(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Exhausted(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Exhausted(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<RealizationError> for Failure {
    fn from(e: RealizationError) -> Self {
        if e.is_schedule_exhausted() {
            Failure::Exhausted(e.to_string())
        } else {
            Failure::Verification(e.to_string())
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Writes a line to standard output; a closed pipe is not an error.
fn say(text: &str) -> Result<(), Failure> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(e)),
        _ => Ok(()),
    }
}

fn emit(out: Option<&Path>, value: &impl serde::Serialize) -> Result<(), Failure> {
    match out {
        Some(p) => Ok(write_json(p, value)?),
        None => say(&serde_json::to_string_pretty(value).map_err(usage)?),
    }
}

fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let p = match (args.m, args.dual_cyclic) {
        (Some(m), _) => generate_qtilde(args.d, m).map_err(usage)?,
        (None, Some(n)) if args.d == 4 => generate_dual_cyclic(4, n).map_err(usage)?,
        (None, Some(_)) => return Err(Failure::Usage("dual-cyclic polytopes are available for d = 4 only".into())),
        (None, None) => unreachable!("clap requires one of --m and --dual-cyclic"),
    };
    emit(args.out.as_deref(), &combinatorial_to_json(&p))?;
    let mut tip_sizes = vec![0usize; p.d + 1];
    for t in p.tips().unwrap_or_default() {
        tip_sizes[t] += 1;
    }
    eprintln!(
        "d = {}, n = {}: f-vector {:?}, tip sizes {:?}",
        p.d,
        p.n,
        f_vector(&p).map_err(usage)?,
        tip_sizes
    );
    Ok(())
}

fn realize_cmd(args: &RealizeArgs) -> Result<(), Failure> {
    let opts = RealizeOptions {
        max_retries: args.max_retries,
        snap: !args.no_snap,
        holt_klee: args.holt_klee,
        ..Default::default()
    };
    let (q, center) = if args.sweep_center {
        let (q, o) = realize_sweep_frame(args.m, &opts)?;
        (q, Some(o))
    } else {
        (realize(args.m, &opts)?, None)
    };
    let cert = q.certificate.clone().expect("realize certifies by default");
    let mut j = realized_to_json(&q);
    j.sweep_center = center;
    emit(args.out.as_deref(), &j)?;
    eprintln!(
        "m = {}: {} vertices, path of {} vertices, max coordinate size {} bits",
        q.m,
        q.coords.len(),
        cert.path_length,
        cert.max_coordinate_bits
    );
    if cert.all_ok() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("certificate failed: {}", serde_json::to_string(&cert).unwrap_or_default())))
    }
}

fn verify_combinatorial(j: &CombinatorialJson, holt_klee: bool) -> Result<(Value, bool), Failure> {
    let p = combinatorial_from_json(j)?;
    let simple = p.check_simple().is_ok() && p.is_connected();
    let h = h_vector(&p).ok();
    let neighborly = p.d == 4 && p.len() == p.n * (p.n - 3) / 2;
    let qtilde = p.d == 4 && p.n >= 5 && generate_qtilde(4, p.n - 5).is_ok_and(|g| g.vertices == p.vertices);
    let (mut path_aof, mut path_hk) = (None, None);
    if qtilde {
        let path = build_path(p.n - 5).map_err(|e| Failure::Verification(e.to_string()))?;
        let o = orientation_from_path(&path, &p);
        path_aof = Some(check_aof(&o, &p).map_err(|e| Failure::Verification(e.to_string()))?.is_aof());
        if holt_klee {
            path_hk = Some(check_holt_klee(&o, &p).map_err(|e| Failure::Verification(e.to_string()))?);
        }
    }
    let ok = simple && path_aof != Some(false) && path_hk != Some(false);
    let report = json!({
        "kind": "combinatorial",
        "d": p.d,
        "n": p.n,
        "vertices": p.len(),
        "simple": simple,
        "fVector": f_vector(&p).ok(),
        "hVector": h,
        "polarToNeighborly": neighborly,
        "matchesGenerator": qtilde,
        "pathAof": path_aof,
        "pathHoltKlee": path_hk,
    });
    Ok((report, ok))
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let raw: Value = read_json(&args.file)?;
    let (report, ok) = if raw.get("coords").is_some() {
        let j: RealizedJson = serde_json::from_value(raw).map_err(|e| Failure::Usage(format!("malformed realized file: {e}")))?;
        let q = realized_from_json(&j)?;
        let cert = certify(&q, args.holt_klee)?;
        let path_matches = build_path(q.m).is_ok_and(|p| p == q.path);
        let ok = cert.all_ok() && path_matches;
        (json!({ "kind": "realized", "m": q.m, "storedPathMatches": path_matches, "certificate": cert }), ok)
    } else {
        let j: CombinatorialJson =
            serde_json::from_value(raw).map_err(|e| Failure::Usage(format!("malformed combinatorial file: {e}")))?;
        verify_combinatorial(&j, args.holt_klee)?
    };
    say(&serde_json::to_string_pretty(&report).map_err(usage)?)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}

fn search(args: &SearchArgs) -> Result<(), Failure> {
    let (p, name) = match (&args.file, args.n) {
        (Some(f), _) => (combinatorial_from_json(&read_json(f)?)?, f.display().to_string()),
        (None, Some(n)) => (generate_dual_cyclic(4, n).map_err(usage)?, format!("dual-cyclic(4,{n})")),
        (None, None) => unreachable!("clap requires --n or --file"),
    };
    if p.d != 4 || p.check_simple().is_err() {
        return Err(Failure::Usage("search needs a simple 4-polytope".into()));
    }
    let budget = match args.budget {
        Some(s) if !(s >= 0.0 && s.is_finite()) => return Err(Failure::Usage("budget must be a nonnegative number".into())),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let resume: Option<Checkpoint> = match &args.checkpoint {
        Some(c) if c.exists() => {
            info!("resuming from {}", c.display());
            Some(read_json(c)?)
        }
        _ => None,
    };
    let opts = SearchOptions {
        require_holt_klee: args.holt_klee,
        jobs: args.jobs,
        prefix_depth: args.prefix_depth,
        budget,
        max_witnesses: args.max_witnesses,
        ..Default::default()
    };
    let (outcome, ck) = search_hamilton_aof(&p, &name, &opts, resume);
    if let Some(c) = &args.checkpoint {
        write_json(c, &ck)?;
    }
    emit(args.out.as_deref(), &outcome)?;
    let witnesses = if args.holt_klee { outcome.holt_klee_witnesses.len() } else { outcome.aof_witnesses.len() };
    eprintln!("witnesses: {witnesses}, exhausted: {}", outcome.exhausted);
    Ok(())
}

fn load_spec(spec: &str) -> Result<CombinatorialPolytope, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| Failure::Usage(format!("bad number in {spec:?}")));
    match parts.as_slice() {
        ["qtilde", m] => generate_qtilde(4, num(m)?).map_err(usage),
        ["qtilde", m, d] => generate_qtilde(num(d)?, num(m)?).map_err(usage),
        ["dual-cyclic", n] => generate_dual_cyclic(4, num(n)?).map_err(usage),
        _ => Ok(combinatorial_from_json(&read_json(Path::new(spec))?)?),
    }
}

fn isocheck(args: &IsoArgs) -> Result<(), Failure> {
    let (a, b) = (load_spec(&args.a)?, load_spec(&args.b)?);
    match check_isomorphic(&a, &b) {
        Some(sigma) => {
            let map: Vec<String> = sigma.iter().enumerate().map(|(i, s)| format!("{}->{}", i + 1, s)).collect();
            say(&format!("isomorphic: {}", map.join(" ")))?;
        }
        None => say("non-isomorphic")?,
    }
    Ok(())
}

fn plot_cmd(args: &PlotArgs) -> Result<(), Failure> {
    let plane: Vec<usize> = args.plane.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
    if plane.len() != 2 || plane.iter().any(|&c| !(1..=4).contains(&c)) || plane[0] == plane[1] || args.plane.len() != 2 {
        return Err(Failure::Usage(format!("--plane needs two distinct coordinates from 1..4, got {:?}", args.plane)));
    }
    let j: RealizedJson = read_json(&args.file)?;
    realized_from_json(&j)?;
    let svg = plot::render(&j, (plane[0] - 1, plane[1] - 1));
    std::fs::write(&args.out, svg).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", args.out.display())))?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MONOPATH_LOG", "warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Realize(a) => realize_cmd(a),
        Command::Verify(a) => verify(a),
        Command::SearchAof(a) => search(a),
        Command::Isocheck(a) => isocheck(a),
        Command::Plot(a) => plot_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
