//! Command-line front end behind the `circlefit` binary.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 fit failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebraic::PrefitMethod;
use crate::error::Error;
use crate::geometric::{FitOptions, FitStatus, IterativeMethod};
use crate::geometry::{contour_grid, objective, DataSet, GeneralizedCircle, Window};
use crate::harness::{
    census_local_minima, run_convergence_experiment, run_pairing_experiment, ConvergenceConfig,
    DataFamily, ExperimentReport, PairingConfig,
};
use crate::io::{format_dataset, read_dataset, write_atomic};
use crate::synthetic::{gen_arc, gen_multi_minima, gen_uniform_square, ArcSpec, Seed};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_FIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "circlefit", version, about = "Least-squares circle and line fitting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit a circle (or line) to a dataset file.
    Fit(FitArgs),
    /// Write a synthetic dataset.
    Generate(GenerateArgs),
    /// Run a Monte-Carlo experiment and emit a CSV report.
    Bench(BenchArgs),
    /// Sample the reduced objective on a grid over the center plane.
    Contour(ContourArgs),
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Dataset file: one `x y` pair per line.
    input: PathBuf,
    #[arg(long, default_value = "lma")]
    method: Method,
    /// Initial guess for an iterative method (default af2).
    #[arg(long)]
    prefit: Option<Prefit>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seeds LMA origin shifts.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the iteration path as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    family: Family,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 360.0)]
    arc: f64,
    #[arg(long, default_value_t = 0.01)]
    sigma: f64,
    /// Origin-cluster size for the `multi` family.
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    experiment: Experiment,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 100)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// A single arc in degrees; the default is a sweep.
    #[arg(long)]
    arc: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    sigma: f64,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for `<experiment>.csv` and `<experiment>.json`;
    /// the CSV goes to standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ContourArgs {
    input: PathBuf,
    /// `A0,A1,B0,B1`; defaults to the data bounding box padded by its size.
    #[arg(long, value_parser = parse_window)]
    window: Option<Window>,
    #[arg(long, value_parser = parse_res, default_value = "200,200")]
    res: (usize, usize),
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Af1,
    Af2,
    Af3,
    Tri,
    Cen,
    Lmc,
    Lma,
    Landau,
    Spath,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Prefit {
    Af1,
    Af2,
    Af3,
    Tri,
    Cen,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Square,
    Arc,
    Multi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Experiment {
    /// Local-minima census on uniform squares.
    Table1,
    /// Random-start convergence over arc sizes.
    Arcs,
    /// Random-start convergence on uniform squares.
    Squares,
    /// All prefit + iterative pairs over arc sizes.
    Pairing,
    /// LMC escapes on half-circle data.
    Escape,
}

impl Method {
    fn split(self) -> Result<IterativeMethod, PrefitMethod> {
        match self {
            Self::Af1 => Err(PrefitMethod::Af1),
            Self::Af2 => Err(PrefitMethod::Af2),
            Self::Af3 => Err(PrefitMethod::Af3),
            Self::Tri => Err(PrefitMethod::Tri),
            Self::Cen => Err(PrefitMethod::Cen),
            Self::Lmc => Ok(IterativeMethod::Lmc),
            Self::Lma => Ok(IterativeMethod::Lma),
            Self::Landau => Ok(IterativeMethod::Landau),
            Self::Spath => Ok(IterativeMethod::Spath),
        }
    }
}

impl From<Prefit> for PrefitMethod {
    fn from(p: Prefit) -> Self {
        match p {
            Prefit::Af1 => Self::Af1,
            Prefit::Af2 => Self::Af2,
            Prefit::Af3 => Self::Af3,
            Prefit::Tri => Self::Tri,
            Prefit::Cen => Self::Cen,
        }
    }
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers"));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.trim().parse().map_err(|e| format!("{p:?}: {e}"))?;
    }
    Ok(out)
}

fn parse_window(s: &str) -> Result<Window, String> {
    let [a0, a1, b0, b1] = parse_floats::<4>(s)?;
    Window::new(a0, a1, b0, b1).map_err(|e| e.to_string())
}

fn parse_res(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [nx, ny] = parts.as_slice() else {
        return Err("expected NX,NY".into());
    };
    let nx = nx.trim().parse().map_err(|e| format!("{nx:?}: {e}"))?;
    let ny = ny.trim().parse().map_err(|e| format!("{ny:?}: {e}"))?;
    if nx < 2 || ny < 2 {
        return Err("resolution must be at least 2,2".into());
    }
    Ok((nx, ny))
}

enum Failure {
    Usage(String),
    Data(String),
    Fit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => Self::Usage(m),
            Error::NoConvergence { .. } | Error::NoMinimumFound => Self::Fit(e.to_string()),
            other => Self::Data(other.to_string()),
        }
    }
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Fit(a) => fit(a, out),
        Command::Generate(a) => generate(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Contour(a) => contour(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Data(m) => (EXIT_DATA, m),
                Failure::Fit(m) => (EXIT_FIT, m),
            };
            let _ = writeln!(err, "circlefit: {msg}");
            code
        }
    }
}

fn load_options(config: Option<&Path>, seed: Option<u64>) -> Result<FitOptions, Failure> {
    let mut opts = FitOptions::default();
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        opts.apply_config(&text)?;
    }
    if let Some(seed) = seed {
        opts.rng_seed = seed;
    }
    Ok(opts)
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, text).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Data(e.to_string())),
    }
}

fn describe_fit(label: &str, status: &str, c: &GeneralizedCircle, f: f64, iterations: usize, extra: &str) -> String {
    let mut s = format!("method = {label}\nstatus = {status}\n");
    match c {
        GeneralizedCircle::Circle(c) => {
            let _ = write!(s, "kind = circle\na = {:.16e}\nb = {:.16e}\nR = {:.16e}\n", c.a, c.b, c.r);
        }
        GeneralizedCircle::Line(l) => {
            let _ = write!(s, "kind = line\nB = {:.16e}\nC = {:.16e}\nD = {:.16e}\n", l.b, l.c, l.d);
        }
    }
    let _ = write!(s, "F = {f:.16e}\niterations = {iterations}\n{extra}");
    s
}

fn fit(args: FitArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let opts = load_options(args.config.as_deref(), args.seed)?;
    let data = read_dataset(&args.input).map_err(|e| Failure::Data(format!("{}: {e}", args.input.display())))?;
    match args.method.split() {
        Err(prefit) => {
            if args.prefit.is_some() {
                return Err(Failure::Usage("--prefit only applies to iterative methods".into()));
            }
            if args.trace.is_some() {
                return Err(Failure::Usage("--trace only applies to iterative methods".into()));
            }
            let pre = prefit.run(&data)?;
            let f = objective(&pre.estimate, &data);
            let extra = format!("newton_steps = {}\n", pre.newton_steps);
            let text = describe_fit(prefit.label(), FitStatus::Converged.label(), &pre.estimate, f, 0, &extra);
            write_output(None, &text, out)
        }
        Ok(method) => {
            let prefit: PrefitMethod = args.prefit.map(Into::into).unwrap_or(PrefitMethod::Af2);
            let pre = prefit.run(&data)?;
            let o = method.run(&data, &pre.estimate, &opts)?;
            if let Some(path) = &args.trace {
                write_atomic(path, &o.trace_csv()).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
            }
            let label = format!("{}+{}", prefit.label(), method.label());
            let extra = format!("origin_shifts = {}\n", o.origin_shifts);
            let text = describe_fit(&label, o.status.label(), &o.result, o.objective, o.iterations, &extra);
            write_output(None, &text, out)?;
            if o.status != FitStatus::Converged {
                return Err(Failure::Fit(format!("fit did not converge: status {}", o.status.label())));
            }
            Ok(())
        }
    }
}

fn generate(args: GenerateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let seed = Seed(args.seed);
    let (data, family): (DataSet, String) = match args.family {
        Family::Square => (gen_uniform_square(args.n, seed)?, format!("uniform square, n={}", args.n)),
        Family::Arc => {
            let spec = ArcSpec::new(args.arc, args.sigma, args.n);
            (gen_arc(&spec, seed)?, DataFamily::Arc(spec).describe())
        }
        Family::Multi => (gen_multi_minima(args.k)?, format!("multi-minima, k={}", args.k)),
    };
    let header = vec![format!("family = {family}"), format!("seed = {}", args.seed)];
    write_output(args.out.as_deref(), &format_dataset(&data, &header), out)
}

const ARC_SWEEP: [f64; 11] = [10.0, 20.0, 30.0, 45.0, 60.0, 90.0, 120.0, 180.0, 240.0, 300.0, 360.0];
const PAIRING_SWEEP: [f64; 5] = [20.0, 60.0, 100.0, 140.0, 180.0];

fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let opts = load_options(args.config.as_deref(), None)?;
    let seed = Seed(args.seed);
    let arcs = |sweep: &[f64]| args.arc.map(|a| vec![a]).unwrap_or_else(|| sweep.to_vec());
    let (name, csv, json) = match args.experiment {
        Experiment::Table1 => {
            let r = census_local_minima(args.n.unwrap_or(25), args.samples, args.starts, seed)?;
            ("table1", r.to_csv(), r.to_json())
        }
        Experiment::Arcs | Experiment::Pairing => {
            let pairing = matches!(args.experiment, Experiment::Pairing);
            let sweep = if pairing { arcs(&PAIRING_SWEEP) } else { arcs(&ARC_SWEEP) };
            let mut report: Option<ExperimentReport> = None;
            for arc in sweep {
                let family = DataFamily::Arc(ArcSpec::new(arc, args.sigma, args.n.unwrap_or(20)));
                let r = if pairing {
                    let mut cfg = PairingConfig::new(family, args.samples, args.starts, seed);
                    cfg.options = opts.clone();
                    cfg.x = arc;
                    run_pairing_experiment(&cfg)?
                } else {
                    let mut cfg = ConvergenceConfig::new(family, args.samples, args.starts, seed);
                    cfg.options = opts.clone();
                    cfg.x = arc;
                    run_convergence_experiment(&cfg)?
                };
                match &mut report {
                    Some(acc) => acc.extend(r),
                    None => report = Some(r),
                }
            }
            let r = report.ok_or_else(|| Failure::Usage("empty arc sweep".into()))?;
            (if pairing { "pairing" } else { "arcs" }, r.to_csv(), r.to_json())
        }
        Experiment::Squares => {
            let mut cfg =
                ConvergenceConfig::new(DataFamily::UniformSquare { n: args.n.unwrap_or(20) }, args.samples, args.starts, seed);
            cfg.options = opts;
            let r = run_convergence_experiment(&cfg)?;
            ("squares", r.to_csv(), r.to_json())
        }
        Experiment::Escape => {
            let spec = ArcSpec::new(args.arc.unwrap_or(180.0), args.sigma, args.n.unwrap_or(50));
            let mut cfg = ConvergenceConfig::new(DataFamily::Arc(spec), args.samples, args.starts, seed);
            cfg.methods = vec![IterativeMethod::Lmc];
            cfg.exclude_local_minima = false;
            cfg.options = opts;
            cfg.x = spec.arc_degrees;
            let r = run_convergence_experiment(&cfg)?;
            ("escape", r.to_csv(), r.to_json())
        }
    };
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Failure::Data(format!("{}: {e}", dir.display())))?;
            write_output(Some(&dir.join(format!("{name}.csv"))), &csv, out)?;
            write_output(Some(&dir.join(format!("{name}.json"))), &json, out)
        }
        None => write_output(None, &csv, out),
    }
}

fn default_window(data: &DataSet) -> Result<Window, Failure> {
    let pts = data.points();
    let fold = |f: fn(f64, f64) -> f64, init: f64, g: fn(&crate::geometry::Point) -> f64| pts.iter().map(g).fold(init, f);
    let (x0, x1) = (fold(f64::min, f64::INFINITY, |p| p.x), fold(f64::max, f64::NEG_INFINITY, |p| p.x));
    let (y0, y1) = (fold(f64::min, f64::INFINITY, |p| p.y), fold(f64::max, f64::NEG_INFINITY, |p| p.y));
    let pad = (x1 - x0).max(y1 - y0);
    Ok(Window::new(x0 - pad, x1 + pad, y0 - pad, y1 + pad)?)
}

fn contour(args: ContourArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let data = read_dataset(&args.input).map_err(|e| Failure::Data(format!("{}: {e}", args.input.display())))?;
    let window = match args.window {
        Some(w) => w,
        None => default_window(&data)?,
    };
    let (nx, ny) = args.res;
    let grid = contour_grid(&data, window, nx, ny)?;
    let mut text = format!(
        "# input = {}\n# window = {:.16e},{:.16e},{:.16e},{:.16e}\n# res = {nx},{ny}\na,b,F\n",
        args.input.display(),
        window.a_min,
        window.a_max,
        window.b_min,
        window.b_max
    );
    for row in 0..ny {
        for col in 0..nx {
            let _ = writeln!(text, "{:.16e},{:.16e},{:.16e}", grid.a_at(col), grid.b_at(row), grid.get(row, col));
        }
    }
    write_output(args.out.as_deref(), &text, out)
}
