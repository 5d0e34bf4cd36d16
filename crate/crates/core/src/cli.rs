//! Command-line front end.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::args::{parse_blade, parse_complex, parse_dims, parse_extents, parse_frequency};
use crate::bergman::{bergman_norm, bergman_slab, weighted_spectral_norm, BergmanDensity};
use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::extension::{cauchy_extend, poisson_extend, spectral_extend};
use crate::field::{FieldHeader, GridField, SpectralField};
use crate::format::{read_field, write_csv_file, write_field};
use crate::generators::{Channels, Generator};
use crate::spectral::Side;
use crate::transforms::{hardy_project, hilbert, riesz, OperatorReport};
use crate::verify::{run_suite, Mutation, Profile};

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Clifford-valued Hardy space toolkit on periodic grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a field
    Gen(GenArgs),
    /// Split a field into its χ₊ and χ₋ parts
    Decompose(DecomposeArgs),
    /// Extend a boundary field to height x0
    Extend(ExtendArgs),
    /// Apply the Riesz transform along one axis
    Riesz(RieszArgs),
    /// Apply the Clifford Hilbert transformation
    Hilbert(IoArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
    /// Compare the weighted spectral norm of a density with its Bergman norm
    Bergman(BergmanArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Algebra dimension; implied by --dims when given
    #[arg(long)]
    pub n: Option<usize>,
    /// Points per axis, e.g. 64,64 (default 32 per axis)
    #[arg(long)]
    pub dims: Option<String>,
    /// Box side lengths, one value or one per axis (default 1)
    #[arg(long)]
    pub extent: Option<String>,
}

impl GridArgs {
    pub fn header(&self) -> Result<FieldHeader> {
        let dims = match (&self.dims, self.n) {
            (Some(d), n) => {
                let dims = parse_dims(d)?;
                if n.is_some_and(|n| n != dims.len()) {
                    return Err(Error::DimensionMismatch {
                        left: n.unwrap_or(0),
                        right: dims.len(),
                    });
                }
                dims
            }
            (None, Some(n)) => vec![32; n],
            (None, None) => return Err(Error::InvalidParameter("give --n or --dims".into())),
        };
        let extent = match &self.extent {
            None => vec![1.0; dims.len()],
            Some(e) => {
                let e = parse_extents(e)?;
                if e.len() == 1 {
                    vec![e[0]; dims.len()]
                } else {
                    e
                }
            }
        };
        FieldHeader::new(dims, extent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    PlaneWave,
    GaussianRing,
    RandomBandlimited,
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Scalar,
    Vector,
    All,
}

#[derive(Debug, Args)]
pub struct ValueArgs {
    /// Coefficient, `re` or `re,im`
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub value: String,
    /// Blade carrying the coefficient: 1, e1, e12, ...
    #[arg(long, default_value = "1")]
    pub blade: String,
}

impl ValueArgs {
    pub fn multivector(&self, n: usize) -> Result<Multivector> {
        Multivector::blade(n, parse_blade(&self.blade, n)?, parse_complex(&self.value)?)
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub generator: GeneratorKind,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub value: ValueArgs,
    /// Lattice frequency of a plane wave, e.g. 3,0
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Ring radius (physical frequency)
    #[arg(long, default_value_t = 4.0)]
    pub radius: f64,
    /// Ring width
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest physical frequency of a random field
    #[arg(long, default_value_t = 4.0)]
    pub band: f64,
    #[arg(long, value_enum, default_value_t = ChannelArg::All)]
    pub channels: ChannelArg,
    /// Keep only the real part of a random field
    #[arg(long)]
    pub real: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a lossy CSV view
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out_plus: PathBuf,
    #[arg(long)]
    pub out_minus: PathBuf,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Poisson,
    Cauchy,
    Spectral,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: f64,
    #[arg(long, value_enum, default_value_t = Method::Spectral)]
    pub method: Method,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RieszArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Axis, 1-based
    #[arg(long, default_value_t = 1)]
    pub axis: usize,
}

#[derive(Debug, Args)]
pub struct IoArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "quick")]
    pub profile: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the machine-readable report here as well
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, hide = true, default_value = "none")]
    pub mutate: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    SingleMode,
    GaussianRing,
    Zero,
}

#[derive(Debug, Args)]
pub struct BergmanArgs {
    #[arg(long, value_enum, default_value_t = DensityKind::SingleMode)]
    pub density: DensityKind,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub value: ValueArgs,
    /// Lattice frequency of a single-mode density
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, default_value_t = 4.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[arg(long)]
    pub p: f64,
    /// Number of heights in the x0 quadrature
    #[arg(long, default_value_t = 1200)]
    pub heights: usize,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Outcome of a command: text for standard output and the exit status.
#[derive(Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

fn save(path: &Path, csv: Option<&PathBuf>, field: &GridField) -> Result<()> {
    write_field(path, field)?;
    if let Some(csv) = csv {
        write_csv_file(csv, field)?;
    }
    Ok(())
}

/// Largest and mean pointwise coefficient norm of `a - b`.
fn residuals(a: &GridField, b: &GridField) -> Result<(f64, f64)> {
    let d = a.sub(b)?;
    let norms: Vec<f64> = (0..d.len()).map(|p| d.get(p).norm()).collect();
    let max = norms.iter().copied().fold(0.0, f64::max);
    Ok((max, norms.iter().sum::<f64>() / norms.len() as f64))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn cmd_gen(args: &GenArgs) -> Result<Outcome> {
    let header = args.grid.header()?;
    let n = header.n();
    let generator = match args.generator {
        GeneratorKind::PlaneWave => Generator::PlaneWave {
            m: parse_frequency(
                args.m
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParameter("plane-wave needs --m".into()))?,
            )?,
            value: args.value.multivector(n)?,
        },
        GeneratorKind::GaussianRing => Generator::GaussianRing {
            radius: args.radius,
            width: args.width,
            value: args.value.multivector(n)?,
        },
        GeneratorKind::RandomBandlimited => Generator::RandomBandlimited {
            seed: args.seed,
            band: args.band,
            channels: match args.channels {
                ChannelArg::Scalar => Channels::Scalar,
                ChannelArg::Vector => Channels::Vector,
                ChannelArg::All => Channels::All,
            },
            real: args.real,
        },
        GeneratorKind::Constant => Generator::Constant {
            value: args.value.multivector(n)?,
        },
    };
    let field = generator.generate(&header)?;
    save(&args.out, args.csv.as_ref(), &field)?;
    Ok(Outcome::ok(format!(
        "generator={}\npoints={}\nblades={}\nout={}\n",
        generator.name(),
        header.points(),
        header.blades(),
        args.out.display()
    )))
}

pub fn cmd_decompose(args: &DecomposeArgs) -> Result<Outcome> {
    let f = read_field(&args.input)?;
    let plus = hardy_project(Side::Plus, &f)?;
    let minus = hardy_project(Side::Minus, &f)?;
    let (max, mean) = residuals(&f, &plus.add(&minus)?)?;
    save(&args.out_plus, args.csv.as_ref().map(|c| with_suffix(c, ".plus")).as_ref(), &plus)?;
    save(&args.out_minus, args.csv.as_ref().map(|c| with_suffix(c, ".minus")).as_ref(), &minus)?;
    let report = OperatorReport::new("decompose", f.header(), plus.header(), true).with_residuals(max, mean);
    let energy = |g: &GridField| g.l2_norm().powi(2);
    Ok(Outcome::ok(format!(
        "{}energy_plus={:e}\nenergy_minus={:e}\n",
        report.to_key_values(),
        energy(&plus),
        energy(&minus)
    )))
}

pub fn cmd_extend(args: &ExtendArgs) -> Result<Outcome> {
    let f = read_field(&args.input)?;
    let (name, out) = match args.method {
        Method::Poisson => ("extend.poisson", poisson_extend(&f, args.x0)?),
        Method::Cauchy => ("extend.cauchy", cauchy_extend(&f, args.x0)?),
        Method::Spectral => ("extend.spectral", spectral_extend(&f, args.x0)?),
    };
    save(&args.out, args.csv.as_ref(), &out)?;
    let report = OperatorReport::new(name, f.header(), out.header(), args.method == Method::Spectral);
    Ok(Outcome::ok(format!("{}x0={:e}\n", report.to_key_values(), args.x0)))
}

pub fn cmd_riesz(args: &RieszArgs) -> Result<Outcome> {
    let f = read_field(&args.io.input)?;
    let out = riesz(args.axis, &f)?;
    save(&args.io.out, args.io.csv.as_ref(), &out)?;
    let report = OperatorReport::new(&format!("riesz{}", args.axis), f.header(), out.header(), true);
    Ok(Outcome::ok(report.to_key_values()))
}

pub fn cmd_hilbert(args: &IoArgs) -> Result<Outcome> {
    let f = read_field(&args.input)?;
    let out = hilbert(&f)?;
    save(&args.out, args.csv.as_ref(), &out)?;
    let report = OperatorReport::new("hilbert", f.header(), out.header(), true);
    Ok(Outcome::ok(report.to_key_values()))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let profile = Profile::parse(&args.profile)?;
    let mutation = Mutation::parse(&args.mutate)?;
    let report = run_suite(profile, args.seed, mutation)?;
    let machine = report.machine_readable();
    if let Some(path) = &args.report {
        fs::write(path, &machine)?;
    }
    Ok(Outcome {
        stdout: machine,
        stderr: report.human_readable(),
        code: if report.all_passed() { 0 } else { 1 },
    })
}

pub fn cmd_bergman(args: &BergmanArgs) -> Result<Outcome> {
    let p = args.p;
    if !(p == 1.0 || (p > 1.0 && p <= 2.0)) {
        return Err(Error::InvalidExponent(p));
    }
    let header = args.grid.header()?;
    let n = header.n();
    let density = match args.density {
        DensityKind::SingleMode => {
            let m = parse_frequency(
                args.m
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParameter("single-mode density needs --m".into()))?,
            )?;
            BergmanDensity::single_mode(header, &m, &args.value.multivector(n)?)?
        }
        DensityKind::GaussianRing => {
            BergmanDensity::gaussian_ring(header, args.radius, args.width, &args.value.multivector(n)?)?
        }
        DensityKind::Zero => BergmanDensity::new(SpectralField::zeros(header))?,
    };
    let lhs = weighted_spectral_norm(&density, p)?;
    let mut out = format!(
        "density={}\np={p:e}\nform={}\nweighted_spectral_norm={lhs:e}\n",
        match args.density {
            DensityKind::SingleMode => "single-mode",
            DensityKind::GaussianRing => "gaussian-ring",
            DensityKind::Zero => "zero",
        },
        if p == 1.0 { "sup" } else { "weighted-q" }
    );
    match density.height_grid(p, 1e-14, args.heights) {
        Ok(heights) => {
            let (x0_min, x0_max) = (heights[0], heights[heights.len() - 1]);
            let norm = bergman_norm(&bergman_slab(&density, heights)?, p)?;
            let ratio = if norm.value > 0.0 { lhs / norm.value } else { 0.0 };
            out += &format!(
                "bergman_norm={:e}\nratio={ratio:e}\nx0_min={x0_min:e}\nx0_max={x0_max:e}\nheights={}\nhead_mass={:e}\ntail_estimate={:e}\n",
                norm.value, args.heights, norm.head_mass, norm.tail_estimate
            );
        }
        // no nonzero mode: F vanishes identically
        Err(_) if density.min_frequency().is_none() => {
            out += "bergman_norm=0e0\nratio=0e0\ntail_estimate=0e0\n";
        }
        Err(e) => return Err(e),
    }
    if let Some(path) = &args.report {
        fs::write(path, &out)?;
    }
    Ok(Outcome::ok(out))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Extend(a) => cmd_extend(a),
        Command::Riesz(a) => cmd_riesz(a),
        Command::Hilbert(a) => cmd_hilbert(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bergman(a) => cmd_bergman(a),
    }
}

/// Parses `argv`, runs the command and prints its output; returns the exit
/// status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            eprint!("{}", outcome.stderr);
            let _ = std::io::stdout().flush();
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
