use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use randalg::closed_form::{expected_h_er, expected_h_level};
use randalg::harness::{run_experiment, summarize_tables, ExperimentConfig};
use randalg::hilbert::hilbert_function;
use randalg::models::{sample_er_ideal, sample_level_socle, Cap, ErConfig, LevelConfig, Regime};
use randalg::monomial::{IdealJson, MonomialIdeal};
use randalg::oracle::run_small_suite;
use randalg::wlp::{has_wlp, WlpOptions, DEFAULT_PRIME};

#[derive(Parser)]
#[command(name = "randalg", version, about = "Random monomial algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Unimodal,
    Peaks,
    Logconcave,
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleModel {
    Er,
    Level,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectedModel {
    ErRaw,
    ErVarpowers,
    ErMaxpower,
    Level,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Small,
}

#[derive(Subcommand)]
enum Command {
    /// Print the h-vector of S/I and one predicate.
    Hilbert {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum, default_value = "unimodal")]
        check: Check,
    },
    /// Draw random ideals, one JSON line each.
    Sample {
        #[arg(long, value_enum)]
        model: SampleModel,
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        degree: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value = "var-powers")]
        regime: Regime,
        #[arg(long, default_value = "D+1")]
        cap: Cap,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Redraw empty level socles.
        #[arg(long)]
        nonempty: bool,
    },
    /// Closed-form expected h-vector entries.
    Expected {
        #[arg(long, value_enum)]
        model: ExpectedModel,
        #[arg(long)]
        n: usize,
        #[arg(long = "D")]
        degree: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value = "D+1")]
        cap: Cap,
        /// Inclusive range `a..b`.
        #[arg(long, default_value = "0..10")]
        degrees: String,
    },
    /// Decide the weak Lefschetz property.
    Wlp {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long)]
        no_verify: bool,
        #[arg(long)]
        fast: bool,
    },
    /// Run a Monte Carlo experiment from a TOML config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Brute-force cross-checks.
    Oracle {
        #[arg(long, value_enum, default_value = "small")]
        suite: Suite,
    },
}

fn read_ideal(path: &PathBuf) -> Result<MonomialIdeal> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let j: IdealJson = serde_json::from_str(&text).context("parsing ideal json")?;
    Ok(MonomialIdeal::from_json(&j)?)
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let Some((a, b)) = s.split_once("..") else {
        bail!("expected a range like 0..10, got {s:?}");
    };
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Hilbert { ideal, check } => {
            let h = hilbert_function(&read_ideal(&ideal)?)?;
            writeln!(out, "{}", h.to_csv())?;
            match check {
                Check::Unimodal => writeln!(out, "unimodal,{}", h.is_unimodal())?,
                Check::Peaks => writeln!(out, "peaks,{}", h.count_peaks())?,
                Check::Logconcave => writeln!(out, "logconcave,{}", h.is_log_concave())?,
            }
        }
        Command::Sample {
            model,
            n,
            degree,
            p,
            t,
            regime,
            cap,
            seed,
            count,
            nonempty,
        } => match model {
            SampleModel::Er => {
                let p = p.context("--p is required for the er model")?;
                let cfg = ErConfig {
                    nvars: n,
                    max_degree: degree,
                    p,
                    regime,
                    cap,
                    seed,
                };
                for i in 0..count {
                    let ideal = sample_er_ideal(&cfg, i as u64)?;
                    let mut v = serde_json::to_value(ideal.to_json())?;
                    v["stream"] = i.into();
                    writeln!(out, "{v}")?;
                }
            }
            SampleModel::Level => {
                let mut cfg = match (p, t) {
                    (Some(p), None) => LevelConfig::bernoulli(n, degree, p, seed),
                    (None, Some(t)) => LevelConfig::uniform(n, degree, t, seed),
                    _ => bail!("give exactly one of --p and --t for the level model"),
                };
                cfg.condition_nonempty |= nonempty;
                for i in 0..count {
                    let draw = sample_level_socle(&cfg, i as u64)?;
                    let socle: Vec<Vec<u32>> =
                        draw.socle.members().iter().map(|m| m.exponents().to_vec()).collect();
                    let mut v = if draw.socle.is_empty() {
                        // Ann of nothing is the unit ideal
                        serde_json::json!({ "nvars": n, "generators": [vec![0u32; n]] })
                    } else {
                        serde_json::to_value(draw.socle.annihilator()?.to_json())?
                    };
                    v["socle"] = serde_json::to_value(socle)?;
                    v["stream"] = i.into();
                    v["retries"] = draw.retries.into();
                    writeln!(out, "{v}")?;
                }
            }
        },
        Command::Expected {
            model,
            n,
            degree,
            p,
            cap,
            degrees,
        } => {
            let (a, b) = parse_range(&degrees)?;
            for d in a..=b {
                let value = match model {
                    ExpectedModel::Level if d > degree => 0.0,
                    ExpectedModel::Level => expected_h_level(d, n, degree, p)?,
                    _ if d == 0 => 1.0,
                    ExpectedModel::ErRaw => expected_h_er(d, n, degree, p, Regime::Raw, cap)?,
                    ExpectedModel::ErVarpowers => expected_h_er(d, n, degree, p, Regime::VarPowers, cap)?,
                    ExpectedModel::ErMaxpower => expected_h_er(d, n, degree, p, Regime::MaxPower, cap)?,
                };
                writeln!(out, "{d},{value}")?;
            }
        }
        Command::Wlp {
            ideal,
            prime,
            no_verify,
            fast,
        } => {
            let opts = WlpOptions {
                prime,
                verify_char0: !no_verify,
                fast,
                ..WlpOptions::default()
            };
            let verdict = has_wlp(&read_ideal(&ideal)?, &opts)?;
            for line in verdict.to_lines() {
                writeln!(out, "{line}")?;
            }
        }
        Command::Experiment {
            config,
            out: csv_path,
            json,
            workers,
        } => {
            let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = ExperimentConfig::from_toml(&text)?;
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rec = run_experiment(&cfg, workers)?;
            fs::write(&csv_path, summarize_tables(std::slice::from_ref(&rec)))?;
            if let Some(path) = json {
                fs::write(path, serde_json::to_string_pretty(&rec)?)?;
            }
            for w in &rec.warnings {
                eprintln!("warning: {w}");
            }
            if rec.incomplete {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Oracle { suite: Suite::Small } => {
            let mut ok = true;
            for s in run_small_suite() {
                let status = if s.passed() { "pass" } else { "fail" };
                writeln!(out, "{},{},{} checks", s.name, status, s.checks)?;
                for f in &s.failures {
                    writeln!(out, "  {f}")?;
                }
                ok &= s.passed();
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
