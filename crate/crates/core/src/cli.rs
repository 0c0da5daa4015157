//! Command-line front end.
//!
//! Every successful command prints one `key=value` record per line on
//! standard output; diagnostics go to standard error. Exit status is 0 on
//! success, 2 for usage errors and invalid values, 1 for I/O and numerical
//! failures.

use std::ffi::OsString;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::curves::{Curve, CurveSpec, FrequencyWarp};
use crate::geometry::{summarize, summarize_shape, GeometrySummary, QuadratureConfig, ShapeSummary};
use crate::render::{emit_csv, emit_svg, RenderStyle};
use crate::sampling::{default_sample_count, sample_curve, Polyline};
use crate::ulam::{build_raster, emit_spiral_pgm};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Sample count used for the 5000-prime panel of `reproduce` without `--big`.
pub const REDUCED_SAMPLES: usize = 65_537;

/// Side of the Ulam raster written by `reproduce`.
pub const REPRODUCE_SPIRAL_SIDE: usize = 201;

#[derive(Debug, Parser)]
#[command(name = "prime-lissajous", version, about = "Lissajous curves with prime frequencies, their geometry, and Ulam spirals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classic Lissajous curve x = sin(a·t + delta), y = cos(b·t).
    Classic {
        #[command(flatten)]
        params: ClassicArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sum of the first N prime harmonics on both axes.
    Primesum {
        #[command(flatten)]
        params: PrimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Odd-position primes on x, even-position primes on y (N per axis).
    Altprimesum {
        #[command(flatten)]
        params: PrimeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ulam spiral as a binary PGM.
    Ulam {
        /// Odd side length of the square window.
        #[arg(long, default_value_t = 201)]
        side: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Arc length over [t0, t1].
    Length {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        interval: IntervalArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Arc length, bounding box, peak curvature and mirror asymmetry.
    Metrics {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        interval: IntervalArgs,
        /// Sample count (default: max(4096, 16·f_max), made odd).
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Regenerate every figure analogue into a directory.
    Reproduce {
        #[arg(long)]
        outdir: PathBuf,
        /// Render the 5000-prime panel at full resolution and integrate its length.
        #[arg(long)]
        big: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Classic,
    Primesum,
    Altprimesum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WarpKind {
    Identity,
    Log,
    Sqrt,
    Power,
}

#[derive(Debug, Args)]
struct ClassicArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Phase in radians; also accepts pi, pi/2 and pi/4.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    delta: f64,
}

#[derive(Debug, Args)]
struct PrimeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = WarpKind::Identity)]
    warp: WarpKind,
    /// Exponent for `--warp power`.
    #[arg(long, default_value_t = 1.0)]
    exponent: f64,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long = "spec", value_enum)]
    family: Family,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = WarpKind::Identity)]
    warp: WarpKind,
    #[arg(long, default_value_t = 1.0)]
    exponent: f64,
}

#[derive(Debug, Args)]
struct IntervalArgs {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
    t0: f64,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "2pi")]
    t1: f64,
}

#[derive(Debug, Args)]
struct QuadArgs {
    #[arg(long, default_value_t = 1e-9)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    abs_tol: f64,
    #[arg(long, default_value_t = 1 << 24)]
    max_subdivisions: u64,
}

impl QuadArgs {
    fn config(&self) -> QuadratureConfig {
        QuadratureConfig { rel_tol: self.rel_tol, abs_tol: self.abs_tol, max_subdivisions: self.max_subdivisions }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; `.csv` writes samples, anything else an SVG.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    interval: IntervalArgs,
    /// Sample count (default: max(4096, 16·f_max), made odd).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    width: u32,
    #[arg(long, default_value_t = 1000)]
    height: u32,
    #[arg(long, default_value_t = 1.0)]
    stroke: f64,
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    /// Drop SVG vertices within this many pixels of the simplified line; 0 keeps all.
    #[arg(long, default_value_t = 0.05)]
    decimate: f64,
}

impl OutputArgs {
    fn style(&self) -> RenderStyle {
        RenderStyle {
            width_px: self.width,
            height_px: self.height,
            stroke_width: self.stroke,
            margin_fraction: self.margin,
            decimate_px: (self.decimate > 0.0).then_some(self.decimate),
        }
    }
}

/// Decimal radians, or `pi`, `2pi`, `pi/2`, `pi/4` with an optional sign.
fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s),
    };
    let value = match body {
        "pi" => PI,
        "2pi" => TAU,
        "pi/2" => FRAC_PI_2,
        "pi/4" => FRAC_PI_4,
        _ => body.parse::<f64>().map_err(|e| format!("`{s}` is not an angle: {e}"))?,
    };
    if !value.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(sign * value)
}

fn warp(kind: WarpKind, exponent: f64) -> FrequencyWarp {
    match kind {
        WarpKind::Identity => FrequencyWarp::Identity,
        WarpKind::Log => FrequencyWarp::Logarithmic,
        WarpKind::Sqrt => FrequencyWarp::SquareRoot,
        WarpKind::Power => FrequencyWarp::PowerLaw { exponent },
    }
}

impl CurveArgs {
    fn spec(&self) -> Result<CurveSpec> {
        let missing = |flag: &str| Error::InvalidSpec(format!("--spec {:?} requires --{flag}", self.family).to_lowercase());
        Ok(match self.family {
            Family::Classic => CurveSpec::Classic {
                a: self.a.ok_or_else(|| missing("a"))?,
                b: self.b.ok_or_else(|| missing("b"))?,
                delta: self.delta.ok_or_else(|| missing("delta"))?,
            },
            Family::Primesum => CurveSpec::PrimeSum { n: self.n.ok_or_else(|| missing("n"))?, warp: warp(self.warp, self.exponent) },
            Family::Altprimesum => {
                CurveSpec::AlternatingPrimeSum { n: self.n.ok_or_else(|| missing("n"))?, warp: warp(self.warp, self.exponent) }
            }
        })
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrimeCapExceeded { .. }
        | Error::InvalidSpec(_)
        | Error::InvalidInterval { .. }
        | Error::InvalidSampleCount(_)
        | Error::InvalidQuadrature(_)
        | Error::InvalidStyle(_)
        | Error::EvenSide(_)
        | Error::SideTooLarge { .. } => EXIT_USAGE,
        Error::NonConvergence { .. } | Error::SingularPoint { .. } | Error::EmptyPolyline | Error::Parse { .. } | Error::Io { .. } => {
            EXIT_FAILURE
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<()> {
    let line = match command {
        Command::Classic { params, output } => render_curve(&CurveSpec::classic(params.a, params.b, params.delta), &output)?,
        Command::Primesum { params, output } => {
            render_curve(&CurveSpec::PrimeSum { n: params.n, warp: warp(params.warp, params.exponent) }, &output)?
        }
        Command::Altprimesum { params, output } => {
            render_curve(&CurveSpec::AlternatingPrimeSum { n: params.n, warp: warp(params.warp, params.exponent) }, &output)?
        }
        Command::Ulam { side, out } => {
            let raster = build_raster(side)?;
            emit_spiral_pgm(&raster, &out)?;
            format!("side={side} cells={} primes={} out={}", side * side, raster.prime_count(), out.display())
        }
        Command::Length { curve, interval, quad } => {
            let spec = curve.spec()?;
            let c = Curve::new(&spec)?;
            let length = crate::geometry::arc_length(&c, interval.t0, interval.t1, &quad.config())?;
            format!("curve={spec} t0={} t1={} length={length}", interval.t0, interval.t1)
        }
        Command::Metrics { curve, interval, samples, quad } => {
            let spec = curve.spec()?;
            let c = Curve::new(&spec)?;
            let count = samples.unwrap_or_else(|| default_sample_count(&c));
            let line = sample_curve(&c, interval.t0, interval.t1, count)?;
            let summary = summarize(&c, &line, &quad.config())?;
            format!("curve={spec} samples={count} {}", format_summary(&summary))
        }
        Command::Reproduce { outdir, big } => {
            for record in reproduce_all(&outdir, big)? {
                write_line(stdout, &record)?;
            }
            return Ok(());
        }
    };
    write_line(stdout, &line)
}

fn write_line(stdout: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(stdout, "{line}").map_err(|e| Error::io("<stdout>", e))
}

fn render_curve(spec: &CurveSpec, output: &OutputArgs) -> Result<String> {
    let curve = Curve::new(spec)?;
    let count = output.samples.unwrap_or_else(|| default_sample_count(&curve));
    let line = sample_curve(&curve, output.interval.t0, output.interval.t1, count)?;
    write_polyline(&line, &output.out, &output.style())?;
    Ok(format!("curve={spec} samples={count} closed={} out={}", line.closed, output.out.display()))
}

fn write_polyline(line: &Polyline, out: &Path, style: &RenderStyle) -> Result<()> {
    match out.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => emit_csv(line, out),
        _ => emit_svg(line, style, out),
    }
}

fn format_shape(s: &ShapeSummary) -> String {
    format!(
        "xmin={} xmax={} ymin={} ymax={} max_abs_curvature={} asymmetry={}",
        s.bbox.xmin, s.bbox.xmax, s.bbox.ymin, s.bbox.ymax, s.max_abs_curvature, s.asymmetry
    )
}

fn format_summary(s: &GeometrySummary) -> String {
    let shape = ShapeSummary { bbox: s.bbox, max_abs_curvature: s.max_abs_curvature, asymmetry: s.asymmetry };
    format!("length={} {}", s.length, format_shape(&shape))
}

/// One figure panel written by [`reproduce_all`].
struct Panel {
    file: &'static str,
    spec: CurveSpec,
    /// Render at this count and skip the arc length instead of using the
    /// full default grid.
    reduced: bool,
}

fn panels(big: bool) -> Vec<Panel> {
    let panel = |file, spec| Panel { file, spec, reduced: false };
    vec![
        panel("fig2a_classic_a1_b2.svg", CurveSpec::classic(1.0, 2.0, FRAC_PI_2)),
        panel("fig2b_classic_a3_b2.svg", CurveSpec::classic(3.0, 2.0, FRAC_PI_2)),
        panel("fig2c_classic_a3_b4.svg", CurveSpec::classic(3.0, 4.0, FRAC_PI_4)),
        panel("fig3a_primesum_100.svg", CurveSpec::prime_sum(100)),
        panel("fig3b_primesum_1000.svg", CurveSpec::prime_sum(1000)),
        Panel { file: "fig3c_primesum_5000.svg", spec: CurveSpec::prime_sum(5000), reduced: !big },
        panel("fig4a_altprimesum_100.svg", CurveSpec::alternating(100)),
        panel("fig4b_altprimesum_1000.svg", CurveSpec::alternating(1000)),
    ]
}

/// Writes the eight curve panels and the Ulam raster into `outdir` and
/// returns one manifest record per file.
///
/// Without `big`, the 5000-prime panel is drawn from a 65 537-point grid and
/// its arc length is reported as `skipped`.
pub fn reproduce_all(outdir: &Path, big: bool) -> Result<Vec<String>> {
    std::fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let style = RenderStyle { decimate_px: Some(0.05), ..RenderStyle::default() };
    let cfg = QuadratureConfig::default();
    let mut manifest = Vec::with_capacity(9);

    let raster = build_raster(REPRODUCE_SPIRAL_SIDE)?;
    let ulam_file = "fig1_ulam_spiral.pgm";
    emit_spiral_pgm(&raster, outdir.join(ulam_file))?;
    manifest.push(format!("file={ulam_file} side={} primes={}", raster.side(), raster.prime_count()));

    for panel in panels(big) {
        let curve = Curve::new(&panel.spec)?;
        let count = if panel.reduced { REDUCED_SAMPLES } else { default_sample_count(&curve) };
        let line = sample_curve(&curve, 0.0, TAU, count)?;
        emit_svg(&line, &style, outdir.join(panel.file))?;
        let mut record = format!("file={} curve={} samples={count} ", panel.file, panel.spec);
        if panel.reduced {
            write!(record, "length=skipped {}", format_shape(&summarize_shape(&curve, &line)?)).unwrap();
        } else {
            record.push_str(&format_summary(&summarize(&curve, &line, &cfg)?));
        }
        manifest.push(record);
    }
    Ok(manifest)
}
