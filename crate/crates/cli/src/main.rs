mod render;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use horotile::algebra::{DyadicRes, Scalar};
use horotile::density::{
    curve_to_csv, density_curve, gap_area_mc, hexagonal_disk_density, ideal_gap_area, CoreUnion, DensityEstimate,
    Empty, Geometry, HexagonalDisks, HoroballUnion, RegionOracle, Window,
};
use horotile::tiling::{
    enumerate_ford, enumerate_hecke, AnyApprox, DegenerateTiling, HoroPacking, LabeledApprox, ModelScalar, PackingSource,
};
use serde_json::{json, Value};

use render::{Figure, Model};
use verify::Suite;

#[derive(Parser)]
#[command(name = "horotile", version, about = "Modified binary tilings of the hyperbolic plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        precision: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        w: i128,
        #[arg(long, default_value_t = 12)]
        word_len: u32,
        #[arg(long, default_value_t = 50)]
        qmax: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a labelled approximant and write it as JSON.
    Build {
        #[arg(long, value_enum, default_value = "triangular")]
        model: BuildModel,
        #[arg(long, default_value_t = 16)]
        precision: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        w: i128,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        /// Base labels, comma separated: two for triangles, four for pentagons.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        base: Option<Vec<i128>>,
        #[arg(long, default_value_t = 10)]
        qmax: u64,
        #[arg(long, default_value_t = 8)]
        word_len: u32,
        /// Window `lo,hi` of tangent points.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        window: Option<Vec<i64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add `e` to every index of an approximant.
    Conjugate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        e: i128,
        /// Expected precision of the input, if given.
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw one of the figures as SVG.
    Render {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long, value_enum, default_value = "half-plane")]
        model: Model,
        #[arg(long, default_value_t = 20)]
        qmax: u64,
        #[arg(long, default_value_t = 8)]
        word_len: u32,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        rows: u32,
        #[arg(long, default_value_t = 8)]
        precision: u32,
        #[arg(long, default_value_t = 1.0)]
        stroke: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate covered fractions of balls.
    Density {
        #[arg(long, value_enum)]
        oracle: OracleKind,
        /// Approximant file for `--oracle packing`.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildModel {
    Triangular,
    Pentagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Hexagonal,
    Gap,
    Full,
    Empty,
    Packing,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failures mapped to exit codes: usage problems give 2, failed checks 1.
enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn dyadic(v: i128, n: u32) -> Result<DyadicRes, Failure> {
    Ok(DyadicRes::new(v, n)?)
}

fn cmd_verify(suite: Suite, params: verify::Params, out: &Option<PathBuf>) -> Result<(), Failure> {
    if params.precision == 0 || params.precision > 64 || params.word_len == 0 || params.q_max == 0 {
        return Err(Failure::Usage("precision must be in 1..=64 and bounds positive".into()));
    }
    let checks = verify::run(suite, &params).map_err(Failure::Usage)?;
    let pass = checks.iter().all(|c| c.pass);
    emit(out, &pretty(&json!({ "checks": checks, "pass": pass })))?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    model: BuildModel,
    precision: u32,
    w: i128,
    k: i64,
    base: Option<Vec<i128>>,
    qmax: u64,
    word_len: u32,
    window: Option<Vec<i64>>,
) -> Result<Value, Failure> {
    let window = match window.as_deref() {
        None => None,
        Some(&[lo, hi]) => Some((lo, hi)),
        Some(_) => return Err(Failure::Usage("window takes two integers lo,hi".into())),
    };
    let w = dyadic(w, precision)?;
    match model {
        BuildModel::Triangular => {
            let base = base.unwrap_or_else(|| vec![0, 0]);
            if base.len() != 2 {
                return Err(Failure::Usage("triangular base takes two labels".into()));
            }
            let base = base.iter().map(|&x| dyadic(x, precision)).collect::<Result<Vec<_>, _>>()?;
            let p = enumerate_ford(qmax, window.unwrap_or((0, 1)))?;
            Ok(LabeledApprox::assign(p, w, k, &base)?.to_json())
        }
        BuildModel::Pentagonal => {
            let base = base.unwrap_or_else(|| vec![0, 0, 0, 0]);
            if base.len() != 4 {
                return Err(Failure::Usage("pentagonal base takes four labels".into()));
            }
            let base = base.iter().map(|&x| dyadic(x, precision)).collect::<Result<Vec<_>, _>>()?;
            let p = enumerate_hecke(word_len, window)?;
            Ok(LabeledApprox::assign(p, w, k, &base)?.to_json())
        }
    }
}

fn read_approx(path: &PathBuf) -> Result<AnyApprox, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)?;
    Ok(AnyApprox::from_json(&v)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    figure: Figure,
    model: Model,
    qmax: u64,
    word_len: u32,
    depth: usize,
    rows: u32,
    precision: u32,
    stroke: f64,
) -> Result<String, Failure> {
    if !(stroke > 0.0) || qmax == 0 || word_len == 0 || rows == 0 || precision == 0 || precision > 64 {
        return Err(Failure::Usage("render bounds must be positive and precision at most 64".into()));
    }
    let lam = render::lambda();
    let scene = match figure {
        Figure::Ford => render::packing_scene(&enumerate_ford(qmax, (0, 1))?, (-0.1, 1.1, 1.3)),
        Figure::Hecke => render::packing_scene(&enumerate_hecke(word_len, None)?, (-lam, 2.0 * lam, 1.3)),
        Figure::Binary => {
            let choices: Vec<bool> = (0..depth).map(|i| i % 3 == 1).collect();
            let t = DegenerateTiling::build(&choices, depth)?;
            let top = 2f64.powi(depth as i32 + 1);
            render::binary_scene(&t, (-top, top, top))
        }
        Figure::Hexagonal => render::hexagonal_scene(3),
        Figure::Tile => render::single_tile_scene(1.0),
        Figure::TilePentagonal => render::single_tile_scene(lam),
        Figure::Tile3prong => render::three_prong_scene(),
        Figure::Layers => {
            let n = precision.max(rows);
            let p = enumerate_ford(qmax, (0, 1))?;
            let base = [dyadic(0, n)?, dyadic(0, n)?];
            let t = LabeledApprox::assign(p, dyadic(0, n)?, 0, &base)?;
            render::layers_scene(&t, rows, (-0.1, 1.1, 2f64.powi(rows as i32) + 0.5)).map_err(Failure::Usage)?
        }
    };
    render::to_svg(&scene, model, stroke).map_err(Failure::Usage)
}

fn packing_oracle<S: ModelScalar>(p: &HoroPacking<S>) -> (HoroballUnion, (f64, f64)) {
    let (lo, hi, min_d) = match *p.source() {
        PackingSource::Ford { q_max, window } => (window.0 as f64, window.1 as f64, 1.0 / (q_max * q_max) as f64),
        PackingSource::Hecke { .. } => {
            let xs: Vec<f64> = p.horoballs().iter().filter_map(|h| h.tangent().finite().map(Scalar::as_f64)).collect();
            let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo.max(-1.0), hi.min(1.0), 0.05)
        }
    };
    let window = Window { x0: lo, x1: hi, y0: min_d, y1: f64::INFINITY };
    (HoroballUnion::new(p.horoballs(), window), ((lo + hi) / 2.0, 1.0))
}

fn cmd_density(
    oracle: OracleKind,
    input: Option<PathBuf>,
    radii: Option<Vec<f64>>,
    samples: u64,
    seed: u64,
) -> Result<(Value, Vec<DensityEstimate>), Failure> {
    if samples == 0 {
        return Err(Failure::Usage("samples must be positive".into()));
    }
    let curve = |o: &dyn RegionOracle, g: Geometry, c: (f64, f64), default: &[f64]| {
        let r = radii.clone().unwrap_or_else(|| default.to_vec());
        density_curve(o, g, c, &r, samples, seed)
    };
    let (name, geometry, expected, estimates) = match oracle {
        OracleKind::Hexagonal => (
            "hexagonal",
            Geometry::Euclidean,
            Some(hexagonal_disk_density()),
            curve(&HexagonalDisks, Geometry::Euclidean, (0.0, 0.0), &[20.0])?,
        ),
        OracleKind::Gap => {
            if radii.is_some() {
                return Err(Failure::Usage("the gap oracle uses a fixed ball".into()));
            }
            ("gap", Geometry::Hyperbolic, Some(ideal_gap_area()), vec![gap_area_mc(samples, seed)?])
        }
        OracleKind::Full => {
            let t = DegenerateTiling::build(&[false; 12], 12)?;
            ("full", Geometry::Hyperbolic, Some(1.0), curve(&CoreUnion { tiling: &t }, Geometry::Hyperbolic, (0.0, 8.0), &[0.5, 1.0, 2.0])?)
        }
        OracleKind::Empty => ("empty", Geometry::Hyperbolic, Some(0.0), curve(&Empty, Geometry::Hyperbolic, (0.0, 1.0), &[0.5, 1.0, 2.0])?),
        OracleKind::Packing => {
            let path = input.ok_or_else(|| Failure::Usage("--oracle packing needs --in".into()))?;
            let est = match read_approx(&path)? {
                AnyApprox::Triangular(t) => {
                    let (o, c) = packing_oracle(t.packing());
                    curve(&o, Geometry::Hyperbolic, c, &[0.25, 0.5])?
                }
                AnyApprox::Pentagonal(t) => {
                    let (o, c) = packing_oracle(t.packing());
                    curve(&o, Geometry::Hyperbolic, c, &[0.25, 0.5])?
                }
            };
            ("packing", Geometry::Hyperbolic, None, est)
        }
    };
    let report = json!({ "oracle": name, "geometry": geometry, "expected": expected, "estimates": estimates });
    Ok((report, estimates))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { suite, precision, k, w, word_len, qmax, samples, seed, out } => {
            let params = verify::Params { precision, k, w, word_len, q_max: qmax, samples, seed };
            cmd_verify(suite, params, &out)
        }
        Command::Build { model, precision, w, k, base, qmax, word_len, window, out } => {
            let v = cmd_build(model, precision, w, k, base, qmax, word_len, window)?;
            emit(&out, &pretty(&v))
        }
        Command::Conjugate { input, e, precision, out } => {
            let t = read_approx(&input)?;
            if let Some(n) = precision {
                if n != t.precision() {
                    return Err(Failure::Usage(format!("file has precision {}, not {n}", t.precision())));
                }
            }
            let shifted = t.conjugate_shift(dyadic(e, t.precision())?)?;
            emit(&out, &pretty(&shifted.to_json()))
        }
        Command::Render { figure, model, qmax, word_len, depth, rows, precision, stroke, out } => {
            let svg = cmd_render(figure, model, qmax, word_len, depth, rows, precision, stroke)?;
            emit(&out, &svg)
        }
        Command::Density { oracle, input, radii, samples, seed, format, out } => {
            let (report, estimates) = cmd_density(oracle, input, radii, samples, seed)?;
            match format {
                Format::Json => emit(&out, &pretty(&report)),
                Format::Csv => emit(&out, &curve_to_csv(&estimates)),
            }
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("HOROTILE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
