//! `frametrace` command line.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on
//! malformed input (bad files, invalid groups or lattices, bad flags).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use frametrace_core::commutant::{character_commutant_dim, commutant_basis, is_tracial_pair, is_tracial_pair_regular};
use frametrace_core::frames::{
    canonical_dual, coefficient_operator, is_admissible_pair, natural_trace, projection_from_spanning,
    synthesis_analysis, tighten, InvariantProjection, Subrepresentation, TraceFunctional,
};
use frametrace_core::gabor::{
    gabor_canonical_dual, gabor_frame_operator, gabor_reconstruction_residual, reference_window, wexler_raz_check,
    wexler_raz_inner_products, wh_bridge_check, wh_group_build, GaborSystem,
};
use frametrace_core::group::{builtin_group, left_regular_rep, FiniteGroup, GroupVector, Rep};
use frametrace_core::numerics::inner;
use frametrace_core::plancherel::{
    builtin_irreps, fiber_admissibility_check, fiber_projections, inverse_plancherel, numeric_irreps,
    plancherel_transform, rank_measure, IrrepTable,
};
use frametrace_core::{sample, CMatrix, Check, Error, C64, DEFAULT_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::io::{self, IoError};
use crate::report::{report_write, RunReport};

/// Above this order the commutant of `λ_G` is not built numerically.
const NUMERIC_COMMUTANT_MAX_ORDER: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "frametrace",
    version,
    about = "Admissible pairs, natural traces, Plancherel fibers and Gabor duals on finite groups"
)]
pub struct Cli {
    /// Seed for every sampled quantity (ChaCha8).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for all checks [default: 1e-9].
    #[arg(long, global = true, env = "FRAMETRACE_TOL")]
    pub tol: Option<f64>,
    /// Write the run report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a group and its Plancherel data.
    Group(GroupArgs),
    /// Frames, duals and admissibility in ℓ²(G) and its invariant subspaces.
    Frame(FrameArgs),
    /// Gabor systems on C^L.
    Gabor(GaborArgs),
}

#[derive(Debug, Args)]
pub struct GroupSource {
    /// Built-in group spec, e.g. `dihedral:4` or `cyclic:2*heisenberg:3`.
    #[arg(long, conflicts_with = "file")]
    pub builtin: Option<String>,
    /// Group file `{"label", "order", "cayley"}`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[command(flatten)]
    pub source: GroupSource,
    #[command(subcommand)]
    pub action: GroupAction,
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    Analyze {
        /// Irrep table to validate and use instead of the built-in one.
        #[arg(long)]
        irreps: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct FrameArgs {
    #[command(flatten)]
    pub source: GroupSource,
    #[command(subcommand)]
    pub action: FrameAction,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Vector file `{"group", "data"}`.
    #[arg(long)]
    pub window: PathBuf,
    /// Restrict to the smallest invariant subspace containing these vectors.
    #[arg(long)]
    pub subspace: Option<PathBuf>,
    /// Write the resulting vector here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FrameAction {
    /// Canonical dual `S⁻¹η`.
    Dual(WindowArgs),
    /// Self-dual window `S^{-1/2}η`.
    Tighten(WindowArgs),
    /// Admissibility, traciality and the fiber criterion for a pair.
    Check {
        #[arg(long, num_args = 2, value_names = ["ETA", "PSI"], required = true)]
        pair: Vec<PathBuf>,
        #[arg(long)]
        subspace: Option<PathBuf>,
        #[arg(long)]
        irreps: Option<PathBuf>,
    },
    /// Fiber ranks of an invariant projection and its rank measure.
    Decompose {
        #[arg(long)]
        subspace: Option<PathBuf>,
        #[arg(long)]
        irreps: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GaborArgs {
    #[command(subcommand)]
    pub action: GaborAction,
}

#[derive(Debug, Args)]
pub struct Lattice {
    /// Signal length.
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Time step (divides L).
    #[arg(long)]
    pub a: Option<usize>,
    /// Frequency step (divides L).
    #[arg(long)]
    pub b: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum GaborAction {
    /// Canonical dual window; a seeded random window is used without --window.
    Dual {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        window: Option<PathBuf>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Biorthogonality of a candidate dual over the adjoint lattice.
    WexlerRaz {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        window: Option<PathBuf>,
        /// Candidate dual; the canonical dual is used without it.
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
    /// The tight window √(b/L)·χ_[0,a).
    Reference {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Reduction of the Weyl-Heisenberg group coefficients to the lattice.
    Bridge {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long)]
        window: Option<PathBuf>,
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = report_write(&report, path) {
                eprintln!("error: {e}");
                return 2;
            }
        }
        None => print!("{}", report.to_json()),
    }
    if report.pass {
        0
    } else {
        1
    }
}

struct Ctx {
    seed: u64,
    tol: f64,
}

impl Ctx {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn execute(cli: &Cli) -> CliResult<RunReport> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "tolerance must be a finite non-negative number, got {tol}"
        )));
    }
    let ctx = Ctx { seed: cli.seed, tol };
    match &cli.command {
        Command::Group(args) => cmd_group(&ctx, args),
        Command::Frame(args) => cmd_frame(&ctx, args),
        Command::Gabor(args) => cmd_gabor(&ctx, args),
    }
}

fn new_report(ctx: &Ctx, command: &str) -> RunReport {
    let mut r = RunReport::new("frametrace");
    r.value("command", command);
    r.value("seed", ctx.seed);
    r.value("tol", ctx.tol);
    r
}

fn pairs(v: &[C64]) -> Value {
    json!(v.iter().map(io::to_pair).collect::<Vec<_>>())
}

/// Short variant name of an error, for failure records.
fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotInvertible { .. } | Error::NotAFrame { .. } => "NotAFrame",
        Error::NotInRange(_) => "NotInRange",
        Error::NotInvariant(_) => "NotInvariant",
        _ => "Error",
    }
}

fn record_error(report: &mut RunReport, check: &str, tol: f64, e: &Error) {
    report.check(&Check::failed(check, tol));
    report.value("error", format!("{}: {e}", error_kind(e)));
}

fn resolve_group(source: &GroupSource, fallback: Option<&Path>, report: &mut RunReport) -> CliResult<Arc<FiniteGroup>> {
    let group = match (&source.builtin, &source.file, fallback) {
        (Some(spec), _, _) => builtin_group(spec)?,
        (None, Some(path), _) => {
            let loaded = io::load_group(path)?;
            report.input(loaded.name, loaded.sha256);
            loaded.value
        }
        (None, None, Some(path)) => {
            let label = io::peek_group_label(path)?;
            io::group_from_label(path, &label)?
        }
        (None, None, None) => return Err(CliError::Usage("pass --builtin <spec> or --file <group.json>".into())),
    };
    report.value("group", group.label());
    report.value("order", group.order());
    Ok(Arc::new(group))
}

fn irrep_table(
    ctx: &Ctx,
    group: &Arc<FiniteGroup>,
    path: Option<&Path>,
    report: &mut RunReport,
) -> CliResult<IrrepTable> {
    if let Some(path) = path {
        let loaded = io::load_irreps(path, group)?;
        report.input(loaded.name, loaded.sha256);
        report.value("irreps_source", "file");
        return Ok(loaded.value);
    }
    match builtin_irreps(group) {
        Ok(t) => {
            report.value("irreps_source", "builtin");
            Ok(t)
        }
        Err(Error::UnsupportedGroup(_)) => {
            report.value("irreps_source", "numeric");
            Ok(numeric_irreps(group, &mut ctx.rng())?)
        }
        Err(e) => Err(e.into()),
    }
}

fn irrep_summary(table: &IrrepTable) -> Value {
    json!(table
        .irreps()
        .iter()
        .map(|i| json!({"label": i.label, "dim": i.rep.dim()}))
        .collect::<Vec<_>>())
}

fn cmd_group(ctx: &Ctx, args: &GroupArgs) -> CliResult<RunReport> {
    let GroupAction::Analyze { irreps } = &args.action;
    let mut report = new_report(ctx, "group analyze");
    let g = resolve_group(&args.source, None, &mut report)?;
    let table = irrep_table(ctx, &g, irreps.as_deref(), &mut report)?;
    let n = g.order();
    let dims = table.dims();
    let sum_sq: usize = dims.iter().map(|d| d * d).sum();

    report.value("abelian", g.is_abelian());
    report.value("conjugacy_classes", g.conjugacy_classes().len());
    report.value("irreps", irrep_summary(&table));
    report.value("characters", dims.iter().filter(|&&d| d == 1).count());

    let lam = left_regular_rep(&g);
    let commutant_dim = if n <= NUMERIC_COMMUTANT_MAX_ORDER {
        report.value("commutant_method", "numeric");
        commutant_basis(&lam).len()
    } else {
        report.value("commutant_method", "character");
        character_commutant_dim(&lam)
    };
    report.value("commutant_dim", commutant_dim);
    report.check(&Check::new("commutant-dim", commutant_dim.abs_diff(sum_sq) as f64, 0.0));
    report.check(&Check::new("plancherel-completeness", sum_sq.abs_diff(n) as f64, 0.0));

    let mut rng = ctx.rng();
    let samples = if n <= 128 { 20 } else { 3 };
    report.value("samples", samples);
    let mut trace_res: f64 = 0.0;
    let mut pars_res: f64 = 0.0;
    let mut round_res: f64 = 0.0;
    for _ in 0..samples {
        let f = sample::group_vector(&mut rng, &g);
        let h = sample::group_vector(&mut rng, &g);
        let m = synthesis_analysis(&lam, h.data(), f.data())?;
        trace_res = trace_res.max((natural_trace(&m, &g)? - inner(f.data(), h.data())).norm());
        let hat = plancherel_transform(&table, &f)?;
        pars_res = pars_res.max((hat.weighted_norm_sqr() - f.norm().powi(2)).abs());
        let back = inverse_plancherel(&hat);
        round_res = round_res.max(frametrace_core::numerics::vec_dist(back.data(), f.data()));
    }
    report.check(&Check::new("trace-identity", trace_res, ctx.tol));
    report.check(&Check::new("parseval", pars_res, ctx.tol));
    report.check(&Check::new("plancherel-round-trip", round_res, ctx.tol));
    Ok(report)
}

/// The representation a frame command acts on: `λ_G` or a subrepresentation.
struct Setting {
    group: Arc<FiniteGroup>,
    lam: Rep,
    sub: Option<Subrepresentation>,
}

impl Setting {
    fn new(group: Arc<FiniteGroup>, subspace: Option<&Path>, report: &mut RunReport) -> CliResult<Self> {
        let lam = left_regular_rep(&group);
        let sub = match subspace {
            Some(path) => {
                let loaded = io::load_subspace(path, &group)?;
                report.input(loaded.name, loaded.sha256);
                let p = projection_from_spanning(&lam, &loaded.value)?;
                let sub = Subrepresentation::new(p)?;
                report.value("subspace_dim", sub.dim());
                Some(sub)
            }
            None => None,
        };
        Ok(Setting { group, lam, sub })
    }

    fn rep(&self) -> &Rep {
        self.sub.as_ref().map_or(&self.lam, Subrepresentation::rep)
    }

    fn projection(&self) -> InvariantProjection {
        match &self.sub {
            Some(s) => s.projection().clone(),
            None => InvariantProjection::identity(self.group.clone()),
        }
    }

    fn coords(&self, v: &[C64]) -> Vec<C64> {
        self.sub.as_ref().map_or_else(|| v.to_vec(), |s| s.coords(v))
    }

    fn embed(&self, c: &[C64]) -> Vec<C64> {
        self.sub.as_ref().map_or_else(|| c.to_vec(), |s| s.embed(c))
    }

    /// Records the range check; `false` when some vector leaves the subspace.
    fn in_range(&self, name: &str, vectors: &[&[C64]], tol: f64, report: &mut RunReport) -> bool {
        let Some(sub) = &self.sub else {
            return true;
        };
        let r = vectors
            .iter()
            .map(|v| sub.projection().range_residual(v))
            .fold(0.0, f64::max);
        let c = Check::new(name.to_string(), r, tol);
        report.check(&c);
        c.pass
    }
}

fn load_window_vector(group: &Arc<FiniteGroup>, path: &Path, report: &mut RunReport) -> CliResult<GroupVector> {
    let loaded = io::load_vector(path, group)?;
    report.input(loaded.name, loaded.sha256);
    Ok(loaded.value)
}

fn emit_vector(group: &Arc<FiniteGroup>, data: Vec<C64>, path: Option<&Path>) -> CliResult<()> {
    if let Some(path) = path {
        io::write_json(path, &io::vector_file(&GroupVector::new(group.clone(), data)?))?;
    }
    Ok(())
}

fn cmd_frame(ctx: &Ctx, args: &FrameArgs) -> CliResult<RunReport> {
    match &args.action {
        FrameAction::Dual(w) => frame_window(ctx, &args.source, w, false),
        FrameAction::Tighten(w) => frame_window(ctx, &args.source, w, true),
        FrameAction::Check { pair, subspace, irreps } => frame_check(
            ctx,
            &args.source,
            &pair[0],
            &pair[1],
            subspace.as_deref(),
            irreps.as_deref(),
        ),
        FrameAction::Decompose { subspace, irreps } => {
            frame_decompose(ctx, &args.source, subspace.as_deref(), irreps.as_deref())
        }
    }
}

fn frame_window(ctx: &Ctx, source: &GroupSource, args: &WindowArgs, tight: bool) -> CliResult<RunReport> {
    let mut report = new_report(ctx, if tight { "frame tighten" } else { "frame dual" });
    let g = resolve_group(source, Some(&args.window), &mut report)?;
    let eta = load_window_vector(&g, &args.window, &mut report)?;
    let setting = Setting::new(g.clone(), args.subspace.as_deref(), &mut report)?;
    if !setting.in_range("window-in-subspace", &[eta.data()], ctx.tol, &mut report) {
        return Ok(report);
    }
    let rep = setting.rep();
    let coords = setting.coords(eta.data());
    let v = coefficient_operator(rep, &coords)?;
    let result = if tight { tighten(&v) } else { canonical_dual(&v) };
    let out = match result {
        Ok(out) => out,
        Err(e @ Error::NotInvertible { .. }) => {
            record_error(&mut report, "frame-vector", ctx.tol, &e);
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let (check_name, c) = if tight {
        ("self-dual", is_admissible_pair(rep, &out, &out, ctx.tol)?)
    } else {
        ("reconstruction", is_admissible_pair(rep, &coords, &out, ctx.tol)?)
    };
    report.check_named(check_name, &c);
    let embedded = setting.embed(&out);
    report.value(if tight { "tight_window" } else { "dual" }, pairs(&embedded));
    emit_vector(&g, embedded, args.emit.as_deref())?;
    Ok(report)
}

fn frame_check(
    ctx: &Ctx,
    source: &GroupSource,
    eta_path: &Path,
    psi_path: &Path,
    subspace: Option<&Path>,
    irreps: Option<&Path>,
) -> CliResult<RunReport> {
    let mut report = new_report(ctx, "frame check");
    let g = resolve_group(source, Some(eta_path), &mut report)?;
    let eta = load_window_vector(&g, eta_path, &mut report)?;
    let psi = load_window_vector(&g, psi_path, &mut report)?;
    let setting = Setting::new(g.clone(), subspace, &mut report)?;
    let table = irrep_table(ctx, &g, irreps, &mut report)?;
    if !setting.in_range("pair-in-subspace", &[eta.data(), psi.data()], ctx.tol, &mut report) {
        return Ok(report);
    }
    let (ce, cp) = (setting.coords(eta.data()), setting.coords(psi.data()));
    let admissible = is_admissible_pair(setting.rep(), &ce, &cp, ctx.tol)?;
    let tracial = match &setting.sub {
        Some(sub) => {
            let basis = commutant_basis(sub.rep());
            report.value("commutant_dim", basis.len());
            is_tracial_pair(&basis, &TraceFunctional::for_group(&g), &ce, &cp, ctx.tol)?
        }
        None => is_tracial_pair_regular(&g, &ce, &cp, ctx.tol)?,
    };
    let p = setting.projection();
    let fiber = fiber_admissibility_check(&table, &p, &eta, &psi, ctx.tol)?;
    report.check_named("admissible", &admissible);
    report.check_named("tracial", &tracial);
    report.check_named("fiber", &fiber);
    let agree = admissible.pass == tracial.pass && tracial.pass == fiber.pass;
    report.check(&Check::new("criteria-agree", if agree { 0.0 } else { 1.0 }, 0.0));
    Ok(report)
}

fn frame_decompose(
    ctx: &Ctx,
    source: &GroupSource,
    subspace: Option<&Path>,
    irreps: Option<&Path>,
) -> CliResult<RunReport> {
    let mut report = new_report(ctx, "frame decompose");
    let g = resolve_group(source, subspace, &mut report)?;
    let setting = Setting::new(g.clone(), subspace, &mut report)?;
    let table = irrep_table(ctx, &g, irreps, &mut report)?;
    let p = setting.projection();
    let field = fiber_projections(&table, &p, f64::INFINITY)?;
    report.check(&Check::new(
        "projection-invariant",
        field.reconstruction_residual(),
        ctx.tol,
    ));
    report.value("irreps", irrep_summary(&table));
    report.value("ranks", json!(field.ranks()));
    let nu = rank_measure(&field);
    let tr = natural_trace(p.matrix(), &g)?.re;
    report.value("nu", nu);
    report.value("natural_trace", tr);
    report.check(&Check::new("rank-measure-trace", (nu - tr).abs(), ctx.tol));
    Ok(report)
}

/// Lattice from flags, falling back to (and checked against) a window file.
fn resolve_lattice(lattice: &Lattice, file: Option<&io::WindowFile>) -> CliResult<(usize, usize, usize)> {
    let pick = |flag: Option<usize>, from_file: Option<usize>, name: &str| -> CliResult<usize> {
        match (flag, from_file) {
            (Some(x), Some(y)) if x != y => Err(CliError::Usage(format!(
                "--{name} {x} disagrees with the window file ({y})"
            ))),
            (Some(x), _) | (None, Some(x)) => Ok(x),
            (None, None) => Err(CliError::Usage(format!("missing --{name}"))),
        }
    };
    Ok((
        pick(lattice.l, file.map(|f| f.l), "L")?,
        pick(lattice.a, file.map(|f| f.a), "a")?,
        pick(lattice.b, file.map(|f| f.b), "b")?,
    ))
}

fn load_window_file(path: Option<&Path>, report: &mut RunReport) -> CliResult<Option<io::WindowFile>> {
    match path {
        Some(path) => {
            let loaded = io::load_window(path)?;
            report.input(loaded.name, loaded.sha256);
            Ok(Some(loaded.value))
        }
        None => Ok(None),
    }
}

/// Window from a file, or a seeded random one.
fn gabor_window(
    lattice: &Lattice,
    path: Option<&Path>,
    rng: &mut ChaCha8Rng,
    report: &mut RunReport,
) -> CliResult<GaborSystem> {
    let file = load_window_file(path, report)?;
    let (l, a, b) = resolve_lattice(lattice, file.as_ref())?;
    report.value("L", l);
    report.value("a", a);
    report.value("b", b);
    let window = match &file {
        Some(f) => {
            report.value("window_source", "file");
            io::window_data(f)
        }
        None => {
            report.value("window_source", "random");
            sample::vector(rng, l)
        }
    };
    let sys = GaborSystem::new(l, a, b, window)?;
    report.value("redundancy", sys.redundancy());
    Ok(sys)
}

fn candidate_window(sys: &GaborSystem, path: Option<&Path>, report: &mut RunReport) -> CliResult<Option<Vec<C64>>> {
    let Some(file) = load_window_file(path, report)? else {
        return Ok(None);
    };
    if (file.l, file.a, file.b) != (sys.len(), sys.time_step(), sys.freq_step()) {
        return Err(CliError::Usage(format!(
            "candidate lattice ({}, {}, {}) differs from the window's",
            file.l, file.a, file.b
        )));
    }
    Ok(Some(io::window_data(&file)))
}

fn cmd_gabor(ctx: &Ctx, args: &GaborArgs) -> CliResult<RunReport> {
    let mut rng = ctx.rng();
    match &args.action {
        GaborAction::Dual { lattice, window, emit } => {
            let mut report = new_report(ctx, "gabor dual");
            let sys = gabor_window(lattice, window.as_deref(), &mut rng, &mut report)?;
            match gabor_canonical_dual(&sys) {
                Ok(gamma) => {
                    report.check(&Check::new(
                        "reconstruction",
                        gabor_reconstruction_residual(&sys, &gamma)?,
                        ctx.tol,
                    ));
                    report.value("dual", pairs(&gamma));
                    if let Some(path) = emit {
                        io::write_json(
                            path,
                            &io::window_file(sys.len(), sys.time_step(), sys.freq_step(), &gamma),
                        )?;
                    }
                }
                Err(e @ Error::NotAFrame { .. }) => record_error(&mut report, "frame-window", ctx.tol, &e),
                Err(e) => return Err(e.into()),
            }
            Ok(report)
        }
        GaborAction::WexlerRaz {
            lattice,
            window,
            candidate,
        } => {
            let mut report = new_report(ctx, "gabor wexler-raz");
            let sys = gabor_window(lattice, window.as_deref(), &mut rng, &mut report)?;
            let gamma = match candidate_window(&sys, candidate.as_deref(), &mut report)? {
                Some(c) => {
                    report.value("candidate_source", "file");
                    c
                }
                None => {
                    report.value("candidate_source", "canonical-dual");
                    match gabor_canonical_dual(&sys) {
                        Ok(c) => c,
                        Err(e @ Error::NotAFrame { .. }) => {
                            record_error(&mut report, "frame-window", ctx.tol, &e);
                            return Ok(report);
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            };
            report.value("constant", sys.wexler_raz_constant());
            report.value("inner_products", pairs(&wexler_raz_inner_products(&sys, &gamma)?));
            let wr = wexler_raz_check(&sys, &gamma, ctx.tol)?;
            let rec = Check::new("reconstruction", gabor_reconstruction_residual(&sys, &gamma)?, ctx.tol);
            report.check(&wr);
            report.check(&rec);
            report.check(&Check::new(
                "criteria-agree",
                if wr.pass == rec.pass { 0.0 } else { 1.0 },
                0.0,
            ));
            Ok(report)
        }
        GaborAction::Reference { lattice, emit } => {
            let mut report = new_report(ctx, "gabor reference");
            let (l, a, b) = resolve_lattice(lattice, None)?;
            report.value("L", l);
            report.value("a", a);
            report.value("b", b);
            let g0 = reference_window(l, a, b)?;
            let sys = GaborSystem::new(l, a, b, g0.clone())?;
            let tight = gabor_frame_operator(&sys).dist(&CMatrix::identity(l));
            report.check(&Check::new("tight", tight, ctx.tol));
            report.check_named("self-dual", &wexler_raz_check(&sys, &g0, ctx.tol)?);
            report.value("window", pairs(&g0));
            if let Some(path) = emit {
                io::write_json(path, &io::window_file(l, a, b, &g0))?;
            }
            Ok(report)
        }
        GaborAction::Bridge {
            lattice,
            window,
            candidate,
        } => {
            let mut report = new_report(ctx, "gabor bridge");
            let sys = gabor_window(lattice, window.as_deref(), &mut rng, &mut report)?;
            let g = match candidate_window(&sys, candidate.as_deref(), &mut report)? {
                Some(c) => c,
                None => sample::vector(&mut rng, sys.len()),
            };
            let (l, a, b) = (sys.len(), sys.time_step(), sys.freq_step());
            let wh = wh_group_build(l, a, b)?;
            report.value("wh_order", wh.group().order());
            report.value("central_order", wh.central_order());
            report.check(&wh_bridge_check(l, a, b, sys.window(), &g, ctx.tol)?);
            Ok(report)
        }
    }
}
