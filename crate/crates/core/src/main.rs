use clap::{Args, Parser, Subcommand, ValueEnum};
use lconvex::config::{parse_grid, RunConfig};
use lconvex::descriptor::Descriptor;
use lconvex::invariants::{classify, count_f2, degree_x, is_flower, phi, psi};
use lconvex::report::{write_jsonl, Record};
use lconvex::sphere::sampled::{curve_from_samples, parse_samples};
use lconvex::sphere::{local_convexity_margin_at, Curve, Vec3};
use lconvex::svg::{render_curve, render_sheet, Projection, SvgScene};
use lconvex::{suite, LcError};
use std::path::{Path, PathBuf};
use std::io::Write;
use std::process::ExitCode;

/// println! that stops quietly when stdout is closed, e.g. piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

#[derive(Parser)]
#[command(name = "lconvex", version, about = "Locally convex curves on the sphere: lifts, families, flowers and invariants")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Chart grid, AxB.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Samples per curve.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the acceptance suite and write report.jsonl.
    Verify {
        /// Only these criteria, e.g. 1,4,5.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Degree grid and time steps.
        #[arg(long)]
        degree_grid: Option<usize>,
        /// Also run the degree at twice the resolution.
        #[arg(long)]
        long: bool,
    },
    /// Component, lift endpoint and margin of a curve file or descriptor.
    Classify {
        #[arg(required = true, num_args = 1..)]
        input: Vec<String>,
    },
    /// SVG of a curve, or a sheet of small multiples for a family.
    Render {
        #[arg(required = true, num_args = 1..)]
        descriptor: Vec<String>,
        /// Viewpoint x,y,z.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        view: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "orthographic")]
        projection: Proj,
        /// Output file; defaults to <out>/<tag>.svg.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Degree or flower count of a family, or the flower test of a curve.
    Invariant {
        name: Invariant,
        #[arg(required = true, num_args = 1..)]
        descriptor: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Proj {
    Orthographic,
    Stereographic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Degree,
    F2,
    Flowers,
}

/// Exit 2 for bad input or configuration, 1 for everything else.
fn code_of(e: &LcError) -> u8 {
    match e {
        LcError::Parse(_) | LcError::Config(_) => 2,
        _ => 1,
    }
}

fn fail(e: &LcError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        LcError::NonIntegerDegree { .. } | LcError::MaskBoundaryZero { .. } => {
            eprintln!("hint: raise the resolution with --grid")
        }
        LcError::NotLocallyConvex { index, .. } => eprintln!("diagnostic: first failing sample index {index}"),
        _ => {}
    }
    ExitCode::from(code_of(e))
}

fn config(c: &Common) -> Result<RunConfig, LcError> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = &c.out {
        cfg.out = o.clone();
    }
    if let Some(g) = &c.grid {
        cfg.grid = parse_grid(g)?;
    }
    if let Some(n) = c.samples {
        cfg.samples = n;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_curve(words: &[String]) -> Result<Curve, LcError> {
    if let [one] = words {
        let p = Path::new(one);
        if p.is_file() {
            let text = std::fs::read_to_string(p).map_err(|e| LcError::Parse(format!("{}: {e}", p.display())))?;
            return Ok(curve_from_samples(parse_samples(&text)?));
        }
    }
    Descriptor::parse(&words.join(" "))?.curve()
}

fn write_file(path: &Path, text: &str) -> Result<(), LcError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| LcError::Config(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| LcError::Config(format!("{}: {e}", path.display())))
}

fn verify(mut cfg: RunConfig, only: &[u8], degree_grid: Option<usize>, long: bool) -> Result<bool, LcError> {
    if let Some(m) = degree_grid {
        cfg.degree_grid = m;
    }
    cfg.long |= long;
    suite::check(&cfg)?;
    if let Some(k) = only.iter().find(|k| !(1..=10).contains(*k)) {
        return Err(LcError::Config(format!("no criterion {k}")));
    }
    let records = suite::run(&cfg, only);
    std::fs::create_dir_all(&cfg.out).map_err(|e| LcError::Config(format!("{}: {e}", cfg.out.display())))?;
    let path = cfg.out.join("report.jsonl");
    let file = std::fs::File::create(&path).map_err(|e| LcError::Config(format!("{}: {e}", path.display())))?;
    write_jsonl(std::io::BufWriter::new(file), &records).map_err(|e| LcError::Config(e.to_string()))?;
    for r in &records {
        out!("{} {} value={} expected={}", status_word(r), r.criterion, r.value, r.expected);
    }
    let failed = records.iter().filter(|r| !r.passed()).count();
    out!("{} records, {} failed; report at {}", records.len(), failed, path.display());
    Ok(failed == 0)
}

fn status_word(r: &Record) -> &'static str {
    if r.passed() {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> Result<bool, LcError> {
    let cfg = config(&cli.common)?;
    let sheet = if cli.common.grid.is_some() { cfg.grid } else { [6, 8] };
    match cli.cmd {
        Cmd::Verify { only, degree_grid, long } => verify(cfg, &only, degree_grid, long),
        Cmd::Classify { input } => {
            let c = load_curve(&input)?;
            let (margin, index) = local_convexity_margin_at(&c, cfg.samples);
            if !(margin > 0.0) {
                return Err(LcError::NotLocallyConvex { index, margin });
            }
            let class = classify(&c)?;
            let q = phi(&c)?;
            out!("class     {class}");
            out!("endpoint  {:+.9} {:+.9} {:+.9} {:+.9}", q.w, q.x, q.y, q.z);
            out!("margin    {margin:.6e}  (N = {})", cfg.samples);
            Ok(true)
        }
        Cmd::Render { descriptor, view, projection, file } => {
            let d = Descriptor::parse(&descriptor.join(" "))?;
            let mut scene = SvgScene::default();
            if let Some(v) = view {
                let [x, y, z] = v[..] else {
                    return Err(LcError::Config(format!("--view needs three numbers, got {}", v.len())));
                };
                scene = scene.with_view(Vec3::new(x, y, z))?;
            }
            scene.projection = match projection {
                Proj::Orthographic => Projection::Orthographic,
                Proj::Stereographic => Projection::Stereographic,
            };
            let svg = if d.is_family() {
                render_sheet(&d.family(sheet)?, &scene, cfg.samples)
            } else {
                render_curve(&d.curve()?, &scene, cfg.samples)
            };
            let path = file.unwrap_or_else(|| cfg.out.join(format!("{}.svg", d.tag)));
            write_file(&path, &svg)?;
            out!("{}", path.display());
            Ok(true)
        }
        Cmd::Invariant { name, descriptor } => {
            let d = Descriptor::parse(&descriptor.join(" "))?;
            match name {
                Invariant::Degree => {
                    let m = cfg.degree_grid;
                    let f = d.family([m, m])?;
                    let r = degree_x(&f, f.m1)?;
                    out!("degree    {}", r.value);
                    out!("integral  {:.6}  residual {:.3e}  grid {}x{}x{}", r.integral, r.residual, r.m1, r.m2, r.nt);
                }
                Invariant::F2 => {
                    let f = d.family(cfg.grid)?;
                    let r = count_f2(&f)?;
                    out!("f2        {}", r.value);
                    out!(
                        "raw {}  cells {}  evaluable {}  min boundary |psi| {:.3e}  grid {}x{}",
                        r.raw, r.cells, r.evaluable, r.min_boundary_psi, f.m1, f.m2
                    );
                    for (u, v, w) in &r.zeros {
                        out!("zero      ({u:.4}, {v:.4}) winding {w}");
                    }
                }
                Invariant::Flowers => {
                    let c = d.curve()?;
                    match is_flower(&c)? {
                        Some(r) => {
                            out!("petal_count {}", r.petal_count);
                            out!("times     {:?}", r.times);
                            out!("residual  {:?}", r.residual);
                            out!("thetas    {:?}", r.thetas);
                        }
                        None => {
                            out!("petal_count none");
                            if let Ok(p) = psi(&c, 1) {
                                out!("psi2      {:?}  ordered {}  degenerate {}", p.values, p.ordered, p.degenerate);
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}
