//! The `fisheye` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 numeric
//! or domain error. JSON results go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::imageio::{load_image, save_image};
use crate::model::{fov_of_canvas, CameraModel, Mode};
use crate::synth::{self, Pattern, TargetSpec};
use crate::warp::{build_lut, remap, Interpolation, Lut, WarpConfig};

#[derive(Debug, Parser)]
#[command(name = "fisheye", version, about = "Equidistant fisheye distortion correction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correct a fisheye image.
    Correct(CorrectArgs),
    /// Render a synthetic fisheye target.
    Generate(GenerateArgs),
    /// Build a lookup table without an image.
    Lut(LutArgs),
    /// Measure distortion metrics.
    Metrics(MetricsArgs),
    /// Angle of view of a simple-mode canvas.
    Fov(FovArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CameraArgs {
    /// Radius in pixels of the 45° circle (R0 = 2 r0).
    #[arg(long, allow_negative_numbers = true)]
    pub r0: Option<f64>,
    /// Radius in pixels of the 90° rim.
    #[arg(long = "big-r0", allow_negative_numbers = true)]
    pub big_r0: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Simple,
    Modified,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Simple => Mode::Simple,
            ModeArg::Modified => Mode::Modified,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InterpArg {
    Nearest,
    Bilinear,
    Bicubic,
}

impl From<InterpArg> for Interpolation {
    fn from(m: InterpArg) -> Self {
        match m {
            InterpArg::Nearest => Interpolation::Nearest,
            InterpArg::Bilinear => Interpolation::Bilinear,
            InterpArg::Bicubic => Interpolation::Bicubic,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PatternArg {
    Rings,
    Checker,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricKind {
    Straightness,
}

#[derive(Debug, Args)]
pub struct CorrectArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub camera: CameraArgs,
    #[arg(long, value_enum, default_value = "full")]
    pub mode: ModeArg,
    /// Output side relative to the input side [default: 1 for simple, 2 otherwise].
    #[arg(long)]
    pub scale: Option<f64>,
    #[arg(long, value_enum, default_value = "bilinear")]
    pub interp: InterpArg,
    /// Also write the lookup table used.
    #[arg(long = "lut-out")]
    pub lut_out: Option<PathBuf>,
    /// Use a previously written lookup table instead of building one.
    #[arg(long = "lut-in")]
    pub lut_in: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub pattern: PatternArg,
    /// Image size as WxH.
    #[arg(long, value_parser = parse_size)]
    pub size: (usize, usize),
    #[arg(long = "big-r0", allow_negative_numbers = true)]
    pub big_r0: f64,
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long)]
    pub rings: Option<usize>,
    #[arg(long = "checker-cells")]
    pub checker_cells: Option<usize>,
    #[arg(long = "wall-distance")]
    pub wall_distance: Option<f64>,
    #[arg(long = "ring-thickness")]
    pub ring_thickness: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LutArgs {
    #[command(flatten)]
    pub camera: CameraArgs,
    #[arg(long = "src-size", value_parser = parse_size)]
    pub src_size: (usize, usize),
    #[arg(long = "out-size", value_parser = parse_size)]
    pub out_size: (usize, usize),
    #[arg(long, value_enum, default_value = "full")]
    pub mode: ModeArg,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Points file ("x,y" pairs separated by ';' or newlines), used when
    /// --points is not given.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "straightness")]
    pub kind: MetricKind,
    /// Points as "x1,y1;x2,y2;...".
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Debug, Args)]
pub struct FovArgs {
    #[arg(long = "radius-ratio", allow_negative_numbers = true)]
    pub radius_ratio: f64,
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: usize = w.trim().parse().map_err(|_| format!("bad width in {s:?}"))?;
    let h: usize = h.trim().parse().map_err(|_| format!("bad height in {s:?}"))?;
    if w == 0 || h == 0 {
        return Err(format!("size must be positive, got {s:?}"));
    }
    Ok((w, h))
}

/// Parses "x1,y1;x2,y2;..." (newlines also separate points).
pub fn parse_points(s: &str) -> Result<Vec<[f64; 2]>, String> {
    s.split([';', '\n'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (x, y) = t.split_once(',').ok_or_else(|| format!("expected x,y, got {t:?}"))?;
            let x: f64 = x.trim().parse().map_err(|_| format!("bad x in {t:?}"))?;
            let y: f64 = y.trim().parse().map_err(|_| format!("bad y in {t:?}"))?;
            Ok([x, y])
        })
        .collect()
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Lib(e) => match e {
                Error::Argument(_) => 1,
                Error::Io(_) | Error::Format(_) => 2,
                Error::Domain(_) | Error::Config(_) | Error::Detection(_) => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn camera(args: &CameraArgs) -> Result<CameraModel, CliError> {
    let (value, big) = match (args.r0, args.big_r0) {
        (Some(r0), None) => (r0, 2.0 * r0),
        (None, Some(big)) => (big, big),
        _ => return Err(usage("exactly one of --r0 / --big-r0 is required")),
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(usage(format!("R0 must be positive, got {value}")));
    }
    Ok(CameraModel::new(big)?)
}

fn correct(args: &CorrectArgs) -> Result<String, CliError> {
    let cam = camera(&args.camera)?;
    if let Some(s) = args.scale {
        if !(s.is_finite() && s > 0.0) {
            return Err(usage(format!("--scale must be positive, got {s}")));
        }
    }
    let src = load_image(&args.input)?;
    let interp = Interpolation::from(args.interp);
    let lut = match &args.lut_in {
        Some(path) => Lut::load(path)?,
        None => {
            let cfg = WarpConfig::for_source(args.mode.into(), cam, args.scale, src.width(), src.height())?;
            build_lut(&cfg, src.width(), src.height())?
        }
    };
    if let Some(path) = &args.lut_out {
        lut.save(path)?;
    }
    let out = remap(&src, &lut, interp)?;
    save_image(&args.output, &out)?;
    eprintln!(
        "wrote {}x{} image to {} ({} of {} pixels outside the source)",
        out.width(),
        out.height(),
        args.output.display(),
        lut.sentinel_count(),
        lut.width() * lut.height()
    );
    Ok(String::new())
}

fn generate(args: &GenerateArgs) -> Result<String, CliError> {
    if !(args.big_r0.is_finite() && args.big_r0 > 0.0) {
        return Err(usage(format!("R0 must be positive, got {}", args.big_r0)));
    }
    let cam = CameraModel::new(args.big_r0)?;
    let defaults = TargetSpec::default();
    let spec = TargetSpec {
        pattern: match args.pattern {
            PatternArg::Rings => Pattern::Rings,
            PatternArg::Checker => Pattern::Checker,
        },
        rings: args.rings.unwrap_or(defaults.rings),
        ring_thickness: args.ring_thickness.unwrap_or(defaults.ring_thickness),
        checker_cells: args.checker_cells.unwrap_or(defaults.checker_cells),
        wall_distance: args.wall_distance.unwrap_or(defaults.wall_distance),
        supersample: defaults.supersample,
    };
    let (w, h) = args.size;
    let img = synth::render(&spec, &cam, w, h)?;
    save_image(&args.output, &img)?;
    Ok(String::new())
}

fn lut(args: &LutArgs) -> Result<String, CliError> {
    let cam = camera(&args.camera)?;
    let (sw, sh) = args.src_size;
    let (ow, oh) = args.out_size;
    let cfg = WarpConfig::with_output_size(args.mode.into(), cam, ow, oh)?;
    build_lut(&cfg, sw, sh)?.save(&args.output)?;
    Ok(String::new())
}

fn metrics(args: &MetricsArgs) -> Result<String, CliError> {
    let MetricKind::Straightness = args.kind;
    let text = match (&args.points, &args.input) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(Error::from)?,
        (None, None) => return Err(usage("straightness needs --points or an --input points file")),
    };
    let points = parse_points(&text).map_err(usage)?;
    let residual = synth::straightness_residual(&points)?;
    Ok(serde_json::json!({ "residual_px": residual }).to_string())
}

fn fov(args: &FovArgs) -> Result<String, CliError> {
    if !(args.radius_ratio.is_finite() && args.radius_ratio > 0.0) {
        return Err(usage(format!("--radius-ratio must be positive, got {}", args.radius_ratio)));
    }
    let deg = fov_of_canvas(args.radius_ratio)?;
    let rounded = (deg * 100.0).round() / 100.0;
    Ok(serde_json::json!({ "fov_deg": rounded }).to_string())
}

/// Executes a parsed invocation and returns what it prints on stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Correct(a) => correct(a),
        Command::Generate(a) => generate(a),
        Command::Lut(a) => lut(a),
        Command::Metrics(a) => metrics(a),
        Command::Fov(a) => fov(a),
    }
}

/// Parses `args`, runs, prints, and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fisheye: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
