//! Command-line front end.
//!
//! Values come from flags first, then from an optional flat JSON config file
//! (`--config`), then from built-in defaults. Exit status is 0 on success,
//! 1 when a check fails and 2 for usage, configuration or runtime errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::approx::{
    convergence_table_with_profile, Exponent, FunctionSpec, ModulusProfile, NPolicy,
};
use crate::cesaro::CesaroTable;
use crate::error::{Error, Result};
use crate::group::RadixStructure;
use crate::io::format_float;
use crate::kernel::shell_profile;
use crate::selftest;
use crate::transform::{forward, inverse, Spectrum, StepFunction};

const DEFAULT_RADICES: &str = "2,3,2,3";
const DEFAULT_ALPHA: f64 = 0.5;
const DEFAULT_P: &str = "inf";
const DEFAULT_FUNCTION: &str = "lacunary:beta=0.9";
const DEFAULT_SEED: u64 = 42;
const DEFAULT_N_POLICY: &str = "mk";
/// Largest grid the convergence experiment accepts unless overridden.
const DEFAULT_MAX_SIZE: usize = 46656;

#[derive(Debug, Parser)]
#[command(
    name = "vilenkin",
    version,
    about = "Vilenkin-Fourier analysis and Cesàro means of negative order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the identity suites and report every residual.
    Selftest(Common),
    /// Tabulate ‖σ_n^{−α} f − f‖_p against the theorem's bound per level.
    Converge(Common),
    /// Shell profiles of the Cesàro tail kernels per level.
    Kernels(Common),
    /// Print A_0^α … A_n^α.
    CesaroTable(Common),
    /// Forward or inverse transform between CSV/JSON files.
    Transform(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Flat JSON object with any of the option names below as keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Radix spec, e.g. `2,3,2,3`, `2^13`, `2,3^4` or `(2,3)^6`.
    #[arg(long)]
    radices: Option<String>,
    /// Truncation level N; the radix list is repeated or cut to this length.
    #[arg(long)]
    level: Option<usize>,
    /// α in (0, 1) for the means; the order itself for `cesaro-table`.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Norm exponent: a number >= 1 or `inf`.
    #[arg(long)]
    p: Option<String>,
    /// Test function: `lacunary:beta=B`, `indicator:r=R,label=L`,
    /// `random:seed=S,r=R` or `constant:c=C`.
    #[arg(long)]
    function: Option<String>,
    /// `mk`, `mk1`, `random` or `random:SEED`.
    #[arg(long)]
    n_policy: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    k_min: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    /// Table length for `cesaro-table`.
    #[arg(long)]
    n: Option<usize>,
    /// Refuse grids larger than this in `converge`.
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long, value_enum)]
    out: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Input file for `transform`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Run the inverse transform.
    #[arg(long)]
    inverse: bool,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    radices: Option<String>,
    level: Option<usize>,
    alpha: Option<f64>,
    p: Option<String>,
    function: Option<String>,
    n_policy: Option<String>,
    seed: Option<u64>,
    k_min: Option<usize>,
    k_max: Option<usize>,
    n: Option<usize>,
    max_size: Option<usize>,
    out: Option<Format>,
    output: Option<PathBuf>,
    input: Option<PathBuf>,
    inverse: Option<bool>,
}

/// Effective configuration after merging; echoed into JSON artifacts.
#[derive(Debug, Serialize)]
struct RunConfig {
    radices: String,
    level: Option<usize>,
    alpha: f64,
    p: String,
    function: String,
    n_policy: String,
    seed: u64,
    k_min: Option<usize>,
    k_max: Option<usize>,
    n: Option<usize>,
    max_size: usize,
    out: Format,
    #[serde(skip)]
    output: Option<PathBuf>,
    #[serde(skip)]
    input: Option<PathBuf>,
    #[serde(skip)]
    inverse: bool,
}

impl RunConfig {
    fn resolve(args: Common) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let reader = BufReader::new(File::open(path)?);
                serde_json::from_reader(reader)?
            }
            None => FileConfig::default(),
        };
        Ok(RunConfig {
            radices: args
                .radices
                .or(file.radices)
                .unwrap_or_else(|| DEFAULT_RADICES.into()),
            level: args.level.or(file.level),
            alpha: args.alpha.or(file.alpha).unwrap_or(DEFAULT_ALPHA),
            p: args.p.or(file.p).unwrap_or_else(|| DEFAULT_P.into()),
            function: args
                .function
                .or(file.function)
                .unwrap_or_else(|| DEFAULT_FUNCTION.into()),
            n_policy: args
                .n_policy
                .or(file.n_policy)
                .unwrap_or_else(|| DEFAULT_N_POLICY.into()),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            k_min: args.k_min.or(file.k_min),
            k_max: args.k_max.or(file.k_max),
            n: args.n.or(file.n),
            max_size: args.max_size.or(file.max_size).unwrap_or(DEFAULT_MAX_SIZE),
            out: args.out.or(file.out).unwrap_or(Format::Csv),
            output: args.output.or(file.output),
            input: args.input.or(file.input),
            inverse: args.inverse || file.inverse.unwrap_or(false),
        })
    }

    fn structure(&self) -> Result<RadixStructure> {
        RadixStructure::from_spec(&self.radices, self.level)
    }

    fn exponent(&self) -> Result<Exponent> {
        self.p.parse()
    }

    fn policy(&self) -> Result<NPolicy> {
        if self.n_policy.trim() == "random" {
            return Ok(NPolicy::Random(self.seed));
        }
        self.n_policy.parse()
    }

    fn function_spec(&self) -> Result<FunctionSpec> {
        self.function.parse()
    }

    /// Level range, defaulting to `[lo, N − 1]`.
    fn levels(&self, st: &RadixStructure, lo: usize) -> (usize, usize) {
        (
            self.k_min.unwrap_or(lo),
            self.k_max.unwrap_or(st.level().saturating_sub(1)),
        )
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

/// Parses `std::env::args`, runs the command and returns the exit status.
pub fn main() -> i32 {
    run(std::env::args_os())
}

/// As [`main`] with explicit arguments (the first one is the program name).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Selftest(args) => cmd_selftest(RunConfig::resolve(args)?),
        Command::Converge(args) => cmd_converge(RunConfig::resolve(args)?).map(|_| 0),
        Command::Kernels(args) => cmd_kernels(RunConfig::resolve(args)?).map(|_| 0),
        Command::CesaroTable(args) => cmd_cesaro_table(RunConfig::resolve(args)?).map(|_| 0),
        Command::Transform(args) => cmd_transform(RunConfig::resolve(args)?).map(|_| 0),
    }
}

fn cmd_selftest(cfg: RunConfig) -> Result<i32> {
    let st = cfg.structure()?;
    let report = selftest::run(&st, cfg.seed)?;
    let mut out = cfg.sink()?;
    match cfg.out {
        Format::Csv => writeln!(out, "structure {st} (M_N = {})\n{report}", st.size())?,
        Format::Json => {
            let doc = json!({
                "config": cfg,
                "radices": st.radices(),
                "passed": report.passed(),
                "checks": report.checks,
                "skipped": report.skipped,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_converge(cfg: RunConfig) -> Result<()> {
    let st = cfg.structure()?;
    if st.size() > cfg.max_size {
        return Err(Error::out_of_range(
            "M_N",
            st.size(),
            format!("at most {} (see --max-size)", cfg.max_size),
        ));
    }
    let p = cfg.exponent()?;
    let policy = cfg.policy()?;
    let spec = cfg.function_spec()?;
    let (k_min, k_max) = cfg.levels(&st, 3);
    let f = spec.build(&st)?;
    let profile = ModulusProfile::compute(&f, p);
    let rows = convergence_table_with_profile(&f, &profile, cfg.alpha, k_min..=k_max, policy)?;

    let mut out = cfg.sink()?;
    match cfg.out {
        Format::Csv => {
            writeln!(out, "k,n,error,bound,ratio")?;
            for r in &rows {
                let ratio = r.ratio.map(format_float).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{ratio}",
                    r.k,
                    r.n,
                    format_float(r.error),
                    format_float(r.bound)
                )?;
            }
        }
        Format::Json => {
            let tail = (k_min..=k_max)
                .map(|k| {
                    let (stated, proof) = profile.tail_bounds(k)?;
                    Ok(json!({ "k": k, "stated": stated, "proof": proof }))
                })
                .collect::<Result<Vec<_>>>()?;
            let doc = json!({
                "config": cfg,
                "metadata": {
                    "radices": st.radices(),
                    "level": st.level(),
                    "size": st.size(),
                    "function": spec.to_string(),
                    "n_policy": policy.to_string(),
                    "seeds": { "seed": cfg.seed },
                    "tolerances": { "identity": selftest::IDENTITY_TOL, "cesaro": selftest::CESARO_TOL },
                },
                "modulus_profile": profile,
                "tail_bounds": tail,
                "rows": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_kernels(cfg: RunConfig) -> Result<()> {
    let st = cfg.structure()?;
    let (k_min, k_max) = cfg.levels(&st, 2);
    if k_min > k_max {
        return Err(Error::level(k_min, format!("at most k_max = {k_max}")));
    }
    let profiles = (k_min..=k_max)
        .map(|k| shell_profile(&st, k, st.coset_count(k), cfg.alpha))
        .collect::<Result<Vec<_>>>()?;

    let mut out = cfg.sink()?;
    match cfg.out {
        Format::Csv => {
            writeln!(out, "k,A,shell_max,normalizer,ratio")?;
            for prof in &profiles {
                for s in &prof.shells {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        prof.k,
                        s.shell,
                        format_float(s.max),
                        format_float(s.normalizer),
                        format_float(s.ratio)
                    )?;
                }
            }
        }
        Format::Json => {
            let levels: Vec<_> = profiles
                .iter()
                .map(|prof| {
                    json!({
                        "k": prof.k,
                        "n": prof.n,
                        "l1_norm": prof.l1_norm,
                        "max_ratio": prof.max_ratio(),
                        "profile": prof,
                    })
                })
                .collect();
            let doc = json!({ "config": cfg, "radices": st.radices(), "levels": levels });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_cesaro_table(cfg: RunConfig) -> Result<()> {
    let n = cfg
        .n
        .ok_or_else(|| Error::Parse("cesaro-table needs --n".into()))?;
    let table = CesaroTable::new(cfg.alpha, n)?;
    let mut out = cfg.sink()?;
    match cfg.out {
        Format::Csv => table.write_csv(&mut out)?,
        Format::Json => {
            let doc = json!({ "config": cfg, "order": table.order(), "values": table.values() });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn cmd_transform(cfg: RunConfig) -> Result<()> {
    let input = cfg
        .input
        .clone()
        .ok_or_else(|| Error::Parse("transform needs --input".into()))?;
    let output_json = match &cfg.output {
        Some(path) => is_json(path) || cfg.out == Format::Json,
        None => cfg.out == Format::Json,
    };
    let reader = BufReader::new(File::open(&input)?);
    let mut out = cfg.sink()?;
    if cfg.inverse {
        let spectrum = if is_json(&input) {
            Spectrum::from_json(reader)?
        } else {
            Spectrum::read_csv(&cfg.structure()?, reader)?
        };
        let f = inverse(&spectrum);
        if output_json {
            writeln!(out, "{}", f.to_json()?)?;
        } else {
            f.write_csv(&mut out)?;
        }
    } else {
        let f = if is_json(&input) {
            StepFunction::from_json(reader)?
        } else {
            StepFunction::read_csv(&cfg.structure()?, reader)?
        };
        let spectrum = forward(&f);
        if output_json {
            writeln!(out, "{}", spectrum.to_json()?)?;
        } else {
            spectrum.write_csv(&mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}
