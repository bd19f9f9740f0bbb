//! `dsim`: encode, decode and analyse multiple-output channel simulation codewords.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use dsim_core::analysis::{
    empirical_length, exact_expected_length_unit, unit_interval_bound, verify, BoundKind,
    BoundParams, SchemeInput,
};
use dsim_core::bitcodes::{read_container, Scheme};
use dsim_core::distributions::Distribution;
use dsim_core::report::{real, write_exact_csv, write_samples_csv, BenchRow, BenchTable, ExactRow};
use dsim_core::rng::seeded;
use dsim_core::{dyadic_codec, halfline_codec, integer_codec};

#[derive(Parser, Debug)]
#[command(
    name = "dsim",
    version,
    about = "Multiple-output channel simulation codecs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw n samples, encode them and write a container file.
    Encode {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        dist: Distribution,
        #[arg(short = 'n', long = "n")]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Regenerate samples from a container file.
    Decode {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte-Carlo mean payload length over a list of n, as CSV.
    Bench {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        dist: Distribution,
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Evaluate a closed-form expected-length bound: 1 integer power tail,
    /// 2 integer exponential tail, 3 unit interval, 4 half-line.
    Bound {
        #[arg(long = "theorem", value_name = "1-4")]
        kind: BoundKind,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        f0: Option<f64>,
        #[arg(short = 'n', long = "n")]
        n: u64,
    },
    /// Exact expected unit-interval length summed over rectangles with k <= kmax, as CSV.
    ExactLength {
        #[arg(long)]
        dist: Distribution,
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long = "kmax", default_value_t = 8)]
        k_max: u32,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Round-trip trials with a goodness-of-fit test on each decoded sample.
    Verify {
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        dist: Distribution,
        #[arg(short = 'n', long = "n")]
        n: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
        /// Exit nonzero when the fraction of passing trials is below this.
        #[arg(long = "min-pass-rate", default_value_t = 0.9)]
        min_pass_rate: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn scheme_input(scheme: Scheme, dist: &Distribution) -> Result<SchemeInput> {
    SchemeInput::new(scheme, dist).context("checking scheme/distribution compatibility")
}

/// Returns `Ok(false)` when the command ran but its check did not pass.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Encode {
            scheme,
            dist,
            n,
            seed,
            output,
        } => {
            let input = scheme_input(scheme, &dist)?;
            let bytes = input
                .encode(n, &mut seeded(seed))
                .with_context(|| format!("encoding {n} samples of {}", dist.name()))?;
            fs::write(&output, &bytes).with_context(|| format!("writing {}", output.display()))?;
        }
        Command::Decode {
            input,
            seed,
            output,
            format,
        } => {
            let bytes = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let (header, _) = read_container(&bytes).context("parsing container header")?;
            let mut rng = seeded(seed);
            let values: Vec<String> = match header.scheme {
                Scheme::Integer => integer_codec::desimulate(&bytes, &mut rng)
                    .context("decoding integer payload")?
                    .into_iter()
                    .map(|v| v.to_string())
                    .collect(),
                Scheme::UnitInterval => dyadic_codec::desimulate(&bytes, &mut rng)
                    .context("decoding unit-interval payload")?
                    .into_iter()
                    .map(real)
                    .collect(),
                Scheme::HalfLine => halfline_codec::desimulate(&bytes, &mut rng)
                    .context("decoding half-line payload")?
                    .into_iter()
                    .map(real)
                    .collect(),
            };
            let mut out = open_output(output.as_deref())?;
            match format {
                Format::Text => {
                    for v in &values {
                        writeln!(out, "{v}").context("writing samples")?;
                    }
                    out.flush().context("writing samples")?;
                }
                Format::Csv => write_samples_csv(&values, out).context("writing samples")?,
            }
        }
        Command::Bench {
            scheme,
            dist,
            n_list,
            trials,
            seed,
            output,
        } => {
            let input = scheme_input(scheme, &dist)?;
            let mut rows = Vec::with_capacity(n_list.len());
            for &n in &n_list {
                let stats = empirical_length(&input, n, trials, seed)
                    .with_context(|| format!("benchmarking n = {n}"))?;
                rows.push(BenchRow {
                    n,
                    stats,
                    bound: input.bound(n),
                });
            }
            let table = BenchTable {
                scheme,
                dist: dist.name(),
                trials,
                rows,
            };
            table
                .write_csv(open_output(output.as_deref())?)
                .context("writing benchmark CSV")?;
        }
        Command::Bound {
            kind,
            c,
            lambda,
            f0,
            n,
        } => {
            let need = |v: Option<f64>, flag: &str| {
                v.with_context(|| format!("bound {kind} needs --{flag}"))
            };
            let params = match kind {
                BoundKind::IntegerPowerTail | BoundKind::IntegerExpTail => BoundParams {
                    c: need(c, "c")?,
                    lambda: need(lambda, "lambda")?,
                    f0: 0.0,
                    n,
                },
                BoundKind::UnitInterval => BoundParams {
                    c: 0.0,
                    lambda: 0.0,
                    f0: need(f0, "f0")?,
                    n,
                },
                BoundKind::HalfLine => BoundParams {
                    c: need(c, "c")?,
                    lambda: need(lambda, "lambda")?,
                    f0: need(f0, "f0")?,
                    n,
                },
            };
            let value = params.evaluate(kind).context("evaluating bound")?;
            println!("{}", real(value));
        }
        Command::ExactLength {
            dist,
            n_list,
            k_max,
            output,
        } => {
            let Some(f) = dist.as_continuous() else {
                bail!("exact-length needs a pdf on [0, 1], got {}", dist.name());
            };
            let mut rows = Vec::with_capacity(n_list.len());
            for &n in &n_list {
                let expected = exact_expected_length_unit(f.as_ref(), n, k_max)
                    .with_context(|| format!("enumerating rectangles for n = {n}"))?;
                rows.push(ExactRow {
                    n,
                    expected_bits: expected,
                    bound_bits: unit_interval_bound(f.f0(), n).context("evaluating bound")?,
                });
            }
            write_exact_csv(&dist.name(), k_max, &rows, open_output(output.as_deref())?)
                .context("writing exact-length CSV")?;
        }
        Command::Verify {
            scheme,
            dist,
            n,
            trials,
            seed,
            alpha,
            min_pass_rate,
        } => {
            if !(alpha > 0.0 && alpha < 1.0) {
                bail!("--alpha must lie in (0, 1), got {alpha}");
            }
            let input = scheme_input(scheme, &dist)?;
            let report =
                verify(&input, n, trials, seed, alpha).context("running round-trip trials")?;
            let test = if scheme == Scheme::Integer {
                "chi-square"
            } else {
                "ks"
            };
            let ok = report.pass_rate() >= min_pass_rate;
            println!(
                "scheme={scheme} dist={} n={n} trials={trials} test={test} alpha={alpha} passes={} pass_rate={} result={}",
                dist.name(),
                report.passes(),
                report.pass_rate(),
                if ok { "PASS" } else { "FAIL" }
            );
            return Ok(ok);
        }
    }
    Ok(true)
}
