//! Reproducible Monte Carlo experiments over the random models.
//!
//! Sample `i` of repetition `r` draws from stream `(r << 32) | i` of the
//! base seed, so results do not depend on scheduling or worker count.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_function, HVector};
use crate::models::{sample_er_ideal, sample_level_socle, Cap, ErConfig, LevelConfig, LevelModel, Regime};
use crate::wlp::{has_wlp, Tier, WlpOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ModelConfig {
    Er(ErConfig),
    Level(LevelConfig),
}

impl ModelConfig {
    fn with_seed(&self, seed: u64) -> ModelConfig {
        let mut m = self.clone();
        match &mut m {
            ModelConfig::Er(c) => c.seed = seed,
            ModelConfig::Level(c) => c.seed = seed,
        }
        m
    }

    fn validate(&self) -> Result<()> {
        match self {
            ModelConfig::Er(c) => c.validate(),
            ModelConfig::Level(c) => c.validate(),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            ModelConfig::Er(c) => c.nvars,
            ModelConfig::Level(c) => c.nvars,
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            ModelConfig::Er(c) => c.max_degree,
            ModelConfig::Level(c) => c.degree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Output {
    Nu,
    Omega,
    Meanh,
    RawVerdicts,
}

pub const DEFAULT_BUDGET_SECONDS: f64 = 1800.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub samples: usize,
    pub repetitions: usize,
    #[serde(default)]
    pub seed: u64,
    /// Drop non-Artinian draws of the raw regime before computing rates.
    #[serde(default = "yes")]
    pub keep_only_artinian: bool,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Output>,
    #[serde(default = "default_budget")]
    pub budget_seconds: f64,
    #[serde(default = "harness_wlp")]
    pub wlp: WlpOptions,
}

fn yes() -> bool {
    true
}

fn default_outputs() -> Vec<Output> {
    vec![Output::Nu, Output::Omega, Output::Meanh]
}

fn default_budget() -> f64 {
    DEFAULT_BUDGET_SECONDS
}

/// Early exit, exact verification only for small deficient maps.
pub fn harness_wlp() -> WlpOptions {
    WlpOptions {
        fast: true,
        exact_limit: Some(150),
        ..WlpOptions::default()
    }
}

impl ExperimentConfig {
    pub fn new(model: ModelConfig, samples: usize, repetitions: usize, seed: u64) -> Self {
        ExperimentConfig {
            model,
            samples,
            repetitions,
            seed,
            keep_only_artinian: true,
            outputs: default_outputs(),
            budget_seconds: DEFAULT_BUDGET_SECONDS,
            wlp: harness_wlp(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.repetitions == 0 {
            return Err(Error::Config("N and R must be at least 1".into()));
        }
        if self.samples as u64 > u64::from(u32::MAX) || self.repetitions as u64 > u64::from(u32::MAX) {
            return Err(Error::Config("N and R must fit in 32 bits".into()));
        }
        if self.budget_seconds.is_nan() || self.budget_seconds <= 0.0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        self.model.validate()
    }
}

pub fn stream_index(repetition: usize, sample: usize) -> u64 {
    ((repetition as u64) << 32) | sample as u64
}

/// What happened to one draw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleVerdict {
    pub repetition: usize,
    pub sample: usize,
    pub stream: u64,
    /// Counted toward the rates.
    pub kept: bool,
    pub artinian: bool,
    pub hvector: Option<HVector>,
    pub unimodal: Option<bool>,
    pub wlp: Option<bool>,
    pub tier: Option<Tier>,
    /// Rejected empty draws before this one (conditioned level model).
    pub retries: u64,
    /// Persistence checks on the verdict passed.
    pub invariants_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepetitionStats {
    pub repetition: usize,
    pub drawn: usize,
    pub kept: usize,
    pub discarded: usize,
    pub non_unimodal: usize,
    pub wlp: Option<usize>,
    pub nu: Option<f64>,
    pub omega: Option<f64>,
    pub mean_h: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedLedger {
    pub base_seed: u64,
    pub first_stream: u64,
    pub last_stream: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: ExperimentConfig,
    pub repetitions: Vec<RepetitionStats>,
    pub kept_mean: f64,
    pub nu_hat: Option<f64>,
    pub nu_sd: Option<f64>,
    pub omega_hat: Option<f64>,
    pub omega_sd: Option<f64>,
    /// Pooled mean h-vector. Level draws with an empty socle count as the
    /// zero vector; non-Artinian draws are left out.
    pub mean_h: Option<Vec<f64>>,
    /// Standard error of each pooled mean entry.
    pub mean_h_se: Option<Vec<f64>>,
    pub prime_only_verdicts: usize,
    pub invariant_violations: usize,
    pub seconds: f64,
    pub incomplete: bool,
    pub warnings: Vec<String>,
    pub seeds: SeedLedger,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Vec<SampleVerdict>>,
}

fn evaluate(cfg: &ExperimentConfig, model: &ModelConfig, rep: usize, i: usize) -> Result<SampleVerdict> {
    let stream = stream_index(rep, i);
    let (ideal, retries, level) = match model {
        ModelConfig::Er(c) => (Some(sample_er_ideal(c, stream)?), 0, false),
        ModelConfig::Level(c) => {
            let draw = sample_level_socle(c, stream)?;
            let ideal = if draw.socle.is_empty() {
                None
            } else {
                Some(draw.socle.annihilator()?)
            };
            (ideal, draw.retries, true)
        }
    };
    let mut v = SampleVerdict {
        repetition: rep,
        sample: i,
        stream,
        kept: false,
        artinian: false,
        hvector: None,
        unimodal: None,
        wlp: None,
        tier: None,
        retries,
        invariants_ok: true,
    };
    let Some(ideal) = ideal else {
        // zero algebra: contributes h = 0 to the mean only
        v.artinian = true;
        v.hvector = Some(HVector::new(Vec::new()));
        return Ok(v);
    };
    if !ideal.is_artinian() {
        v.kept = !cfg.keep_only_artinian;
        return Ok(v);
    }
    v.artinian = true;
    v.kept = true;
    let h = hilbert_function(&ideal)?;
    v.unimodal = Some(h.is_unimodal());
    if cfg.wants(Output::Omega) {
        let verdict = has_wlp(&ideal, &cfg.wlp)?;
        v.invariants_ok = verdict.invariants_hold(level);
        if verdict.has_wlp && !v.unimodal.unwrap_or(false) {
            v.invariants_ok = false;
        }
        v.wlp = Some(verdict.has_wlp);
        v.tier = Some(verdict.tier);
    }
    v.hvector = Some(h);
    Ok(v)
}

fn mean_sd(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = if values.len() > 1 {
        let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
        Some((ss / (n - 1.0)).sqrt())
    } else {
        None
    };
    (Some(mean), sd)
}

/// Entrywise mean and standard error, padded with zeros.
fn pooled(vectors: &[&HVector]) -> (Vec<f64>, Vec<f64>) {
    let len = vectors.iter().map(|h| h.len()).max().unwrap_or(0);
    let n = vectors.len() as f64;
    let mut mean = vec![0.0; len];
    for h in vectors {
        for (d, &x) in h.values().iter().enumerate() {
            mean[d] += x as f64;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut se = vec![0.0; len];
    if vectors.len() > 1 {
        for (d, s) in se.iter_mut().enumerate() {
            let ss: f64 = vectors
                .iter()
                .map(|h| (h.get(d) as f64 - mean[d]).powi(2))
                .sum();
            *s = (ss / (n - 1.0)).sqrt() / n.sqrt();
        }
    }
    (mean, se)
}

#[cfg(feature = "parallel")]
fn run_all<F>(jobs: &[(usize, usize)], workers: usize, f: F) -> Result<Vec<Option<Result<SampleVerdict>>>>
where
    F: Fn(usize, usize) -> Option<Result<SampleVerdict>> + Sync,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(|| jobs.par_iter().map(|&(r, i)| f(r, i)).collect()))
}

#[cfg(not(feature = "parallel"))]
fn run_all<F>(jobs: &[(usize, usize)], _workers: usize, f: F) -> Result<Vec<Option<Result<SampleVerdict>>>>
where
    F: Fn(usize, usize) -> Option<Result<SampleVerdict>>,
{
    Ok(jobs.iter().map(|&(r, i)| f(r, i)).collect())
}

/// Draw and analyze `N * R` samples on `workers` threads.
pub fn run_experiment(cfg: &ExperimentConfig, workers: usize) -> Result<ExperimentRecord> {
    cfg.validate()?;
    let model = cfg.model.with_seed(cfg.seed);
    let start = Instant::now();
    let budget = Duration::from_secs_f64(cfg.budget_seconds);
    let jobs: Vec<(usize, usize)> = (0..cfg.repetitions)
        .flat_map(|r| (0..cfg.samples).map(move |i| (r, i)))
        .collect();
    let results = run_all(&jobs, workers, |r, i| {
        if start.elapsed() > budget {
            None
        } else {
            Some(evaluate(cfg, &model, r, i))
        }
    })?;
    let mut verdicts = Vec::with_capacity(results.len());
    let mut incomplete = false;
    for res in results {
        match res {
            Some(v) => verdicts.push(v?),
            None => incomplete = true,
        }
    }
    let seconds = start.elapsed().as_secs_f64();

    let mut warnings = Vec::new();
    if incomplete {
        warnings.push(format!(
            "budget of {} s exhausted after {} of {} samples",
            cfg.budget_seconds,
            verdicts.len(),
            jobs.len()
        ));
    }
    let mut reps = Vec::with_capacity(cfg.repetitions);
    for r in 0..cfg.repetitions {
        let mine: Vec<&SampleVerdict> = verdicts.iter().filter(|v| v.repetition == r).collect();
        let kept: Vec<&&SampleVerdict> = mine.iter().filter(|v| v.kept).collect();
        let non_unimodal = kept.iter().filter(|v| v.unimodal == Some(false)).count();
        let wlp = cfg
            .wants(Output::Omega)
            .then(|| kept.iter().filter(|v| v.wlp == Some(true)).count());
        let denom = kept.len();
        if denom == 0 && !mine.is_empty() {
            warnings.push(format!("repetition {r} kept no samples; its rates are undefined"));
        }
        let rate = |c: usize| (denom > 0).then(|| c as f64 / denom as f64);
        let hs: Vec<&HVector> = mine.iter().filter_map(|v| v.hvector.as_ref()).collect();
        reps.push(RepetitionStats {
            repetition: r,
            drawn: mine.len(),
            kept: denom,
            discarded: mine.len() - denom,
            non_unimodal,
            wlp,
            nu: if cfg.wants(Output::Nu) { rate(non_unimodal) } else { None },
            omega: wlp.and_then(rate),
            mean_h: (cfg.wants(Output::Meanh) && !hs.is_empty()).then(|| pooled(&hs).0),
        });
    }
    let nus: Vec<f64> = reps.iter().filter_map(|r| r.nu).collect();
    let omegas: Vec<f64> = reps.iter().filter_map(|r| r.omega).collect();
    let (nu_hat, nu_sd) = mean_sd(&nus);
    let (omega_hat, omega_sd) = mean_sd(&omegas);
    let kept_mean = reps.iter().map(|r| r.kept as f64).sum::<f64>() / reps.len() as f64;
    let all_h: Vec<&HVector> = verdicts.iter().filter_map(|v| v.hvector.as_ref()).collect();
    let (mean_h, mean_h_se) = if cfg.wants(Output::Meanh) && !all_h.is_empty() {
        let (m, s) = pooled(&all_h);
        (Some(m), Some(s))
    } else {
        (None, None)
    };
    let prime_only_verdicts = verdicts
        .iter()
        .filter(|v| v.tier == Some(Tier::PrimeOnly))
        .count();
    let invariant_violations = verdicts.iter().filter(|v| !v.invariants_ok).count();
    if invariant_violations > 0 {
        warnings.push(format!("{invariant_violations} verdicts failed persistence checks"));
    }
    Ok(ExperimentRecord {
        config: cfg.clone(),
        repetitions: reps,
        kept_mean,
        nu_hat,
        nu_sd,
        omega_hat,
        omega_sd,
        mean_h,
        mean_h_se,
        prime_only_verdicts,
        invariant_violations,
        seconds,
        incomplete,
        warnings,
        seeds: SeedLedger {
            base_seed: cfg.seed,
            first_stream: stream_index(0, 0),
            last_stream: stream_index(cfg.repetitions - 1, cfg.samples - 1),
        },
        verdicts: cfg.wants(Output::RawVerdicts).then_some(verdicts),
    })
}

/// One row of the summary table.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub max_degree: usize,
    pub p: Option<f64>,
    pub t: Option<usize>,
    pub regime: String,
    pub cap: Option<Cap>,
    pub samples: usize,
    pub repetitions: usize,
    pub kept_mean: f64,
    pub nu_hat: Option<f64>,
    pub nu_sd: Option<f64>,
    pub omega_hat: Option<f64>,
    pub omega_sd: Option<f64>,
    pub seconds: Option<f64>,
}

impl SummaryRow {
    pub fn from_record(rec: &ExperimentRecord) -> Self {
        let cfg = &rec.config;
        let (p, t, regime, cap) = match &cfg.model {
            ModelConfig::Er(c) => (Some(c.p), None, c.regime.name().to_string(), Some(c.cap)),
            ModelConfig::Level(c) => match c.model {
                LevelModel::Bernoulli { p } => (Some(p), None, "level".to_string(), None),
                LevelModel::Uniform { t } => (None, Some(t), "level-uniform".to_string(), None),
            },
        };
        SummaryRow {
            n: cfg.model.nvars(),
            max_degree: cfg.model.max_degree(),
            p,
            t,
            regime,
            cap,
            samples: cfg.samples,
            repetitions: cfg.repetitions,
            kept_mean: rec.kept_mean,
            nu_hat: rec.nu_hat,
            nu_sd: rec.nu_sd,
            omega_hat: rec.omega_hat,
            omega_sd: rec.omega_sd,
            seconds: Some(rec.seconds),
        }
    }

    fn sort_key(&self) -> (usize, usize, f64, usize) {
        (
            self.n,
            self.max_degree,
            self.p.unwrap_or(f64::NEG_INFINITY),
            self.t.unwrap_or(0),
        )
    }
}

const HEADER: [&str; 14] = [
    "n", "D", "p", "t", "regime", "cap", "N", "R", "kept_mean", "nu_hat", "nu_sd", "omega_hat",
    "omega_sd", "seconds",
];

fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "null".to_string(), |v| v.to_string())
}

fn fmt_blank<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

/// CSV table sorted by `(n, D, p, t)`. Parameters that do not apply are
/// blank; undefined estimates are `null`.
pub fn summarize_tables(records: &[ExperimentRecord]) -> String {
    summarize_tables_with(records, true)
}

/// As [`summarize_tables`], optionally without the timing column so that
/// reruns can be compared byte for byte.
pub fn summarize_tables_with(records: &[ExperimentRecord], timing: bool) -> String {
    let mut rows: Vec<SummaryRow> = records.iter().map(SummaryRow::from_record).collect();
    rows.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap_or(std::cmp::Ordering::Equal));
    let cols = if timing { HEADER.len() } else { HEADER.len() - 1 };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&HEADER[..cols]).expect("in-memory write");
    for r in &rows {
        let mut fields = vec![
            r.n.to_string(),
            r.max_degree.to_string(),
            fmt_blank(r.p),
            fmt_blank(r.t),
            r.regime.clone(),
            fmt_blank(r.cap.map(Cap::name)),
            r.samples.to_string(),
            r.repetitions.to_string(),
            r.kept_mean.to_string(),
            fmt_opt(r.nu_hat),
            fmt_opt(r.nu_sd),
            fmt_opt(r.omega_hat),
            fmt_opt(r.omega_sd),
        ];
        if timing {
            fields.push(fmt_opt(r.seconds));
        }
        w.write_record(&fields).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Reads a table written by [`summarize_tables_with`].
pub fn parse_summary(text: &str) -> Result<Vec<SummaryRow>> {
    let bad = |e: String| Error::Config(format!("summary csv: {e}"));
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| bad(e.to_string()))?.clone();
    let timing = header.len() == HEADER.len();
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let get = |k: usize| rec.get(k).unwrap_or("");
        let num = |k: usize| -> Result<f64> { get(k).parse::<f64>().map_err(|e| bad(e.to_string())) };
        let int = |k: usize| -> Result<usize> { get(k).parse::<usize>().map_err(|e| bad(e.to_string())) };
        let nullable = |k: usize| -> Result<Option<f64>> {
            match get(k) {
                "null" | "" => Ok(None),
                s => s.parse().map(Some).map_err(|e: std::num::ParseFloatError| bad(e.to_string())),
            }
        };
        out.push(SummaryRow {
            n: int(0)?,
            max_degree: int(1)?,
            p: nullable(2)?,
            t: match get(3) {
                "" => None,
                _ => Some(int(3)?),
            },
            regime: get(4).to_string(),
            cap: match get(5) {
                "" => None,
                s => Some(s.parse()?),
            },
            samples: int(6)?,
            repetitions: int(7)?,
            kept_mean: num(8)?,
            nu_hat: nullable(9)?,
            nu_sd: nullable(10)?,
            omega_hat: nullable(11)?,
            omega_sd: nullable(12)?,
            seconds: if timing { nullable(13)? } else { None },
        });
    }
    Ok(out)
}

/// Convenience for the ER family.
#[allow(clippy::too_many_arguments)]
pub fn er_experiment(
    nvars: usize,
    max_degree: usize,
    p: f64,
    regime: Regime,
    cap: Cap,
    samples: usize,
    repetitions: usize,
    seed: u64,
) -> ExperimentConfig {
    ExperimentConfig::new(
        ModelConfig::Er(ErConfig {
            nvars,
            max_degree,
            p,
            regime,
            cap,
            seed,
        }),
        samples,
        repetitions,
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(n: usize, d: usize, p: f64, samples: usize, reps: usize) -> ExperimentConfig {
        ExperimentConfig::new(
            ModelConfig::Level(LevelConfig::bernoulli(n, d, p, 0)),
            samples,
            reps,
            11,
        )
    }

    #[test]
    fn level_mean_matches_closed_form() {
        let rec = run_experiment(&level(2, 3, 0.5, 500, 4), 1).unwrap();
        let mean = rec.mean_h.as_ref().unwrap();
        let se = rec.mean_h_se.as_ref().unwrap();
        assert!((mean[1] - 1.75).abs() <= 4.0 * se[1]);
        assert!(!rec.incomplete);
    }

    #[test]
    fn full_socle_always_has_wlp() {
        let rec = run_experiment(&level(3, 4, 1.0, 20, 2), 1).unwrap();
        assert_eq!(rec.omega_hat, Some(1.0));
        assert_eq!(rec.nu_hat, Some(0.0));
        assert_eq!(rec.omega_sd, Some(0.0));
    }

    #[test]
    fn undefined_rates_are_null() {
        // p = 0 never produces a socle, so nothing is kept
        let rec = run_experiment(&level(2, 3, 0.0, 5, 2), 1).unwrap();
        assert_eq!(rec.nu_hat, None);
        assert_eq!(rec.kept_mean, 0.0);
        assert!(!rec.warnings.is_empty());
        let csv = summarize_tables(&[rec]);
        assert!(csv.lines().nth(1).unwrap().contains("null"));
    }

    #[test]
    fn raw_regime_discards() {
        let cfg = er_experiment(2, 3, 0.2, Regime::Raw, Cap::DegreePlusOne, 50, 2, 5);
        let rec = run_experiment(&cfg, 1).unwrap();
        assert!(rec.repetitions.iter().all(|r| r.kept + r.discarded == 50));
        assert!(rec.repetitions.iter().any(|r| r.discarded > 0));
        let mut keep_all = cfg.clone();
        keep_all.keep_only_artinian = false;
        let all = run_experiment(&keep_all, 1).unwrap();
        assert!(all.repetitions.iter().all(|r| r.kept == 50));
    }

    #[test]
    fn summary_round_trip_and_order() {
        let a = run_experiment(&level(2, 3, 0.5, 10, 2), 1).unwrap();
        let b = run_experiment(&level(2, 2, 0.7, 10, 2), 1).unwrap();
        let c = run_experiment(
            &er_experiment(2, 3, 0.3, Regime::VarPowers, Cap::Degree, 10, 3, 1),
            1,
        )
        .unwrap();
        let csv = summarize_tables(&[a.clone(), b, c]);
        let rows = parse_summary(&csv).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!((rows[0].max_degree, rows[0].p), (2, Some(0.7)));
        assert_eq!(rows[1].regime, "var-powers");
        assert_eq!(rows[2].regime, "level");
        let again = SummaryRow::from_record(&a);
        assert_eq!(rows[2], again);
        let no_time = summarize_tables_with(&[a], false);
        assert!(!no_time.contains("seconds"));
        assert_eq!(parse_summary(&no_time).unwrap()[0].seconds, None);
    }

    #[test]
    fn toml_config() {
        let cfg = ExperimentConfig::from_toml(
            r#"
samples = 10
repetitions = 2
seed = 3
outputs = ["nu", "raw-verdicts"]

[model]
family = "er"
nvars = 2
max_degree = 4
p = 0.3
regime = "max-power"
cap = "D"

[wlp]
fast = true
"#,
        )
        .unwrap();
        assert_eq!(cfg.samples, 10);
        assert!(cfg.wants(Output::RawVerdicts) && !cfg.wants(Output::Omega));
        let rec = run_experiment(&cfg, 1).unwrap();
        assert_eq!(rec.verdicts.as_ref().unwrap().len(), 20);
        assert_eq!(rec.omega_hat, None);

        let lvl = ExperimentConfig::from_toml(
            r#"
samples = 4
repetitions = 1
[model]
family = "level"
nvars = 3
degree = 3
model = { kind = "uniform", t = 2 }
condition_nonempty = true
"#,
        )
        .unwrap();
        assert!(run_experiment(&lvl, 1).is_ok());
        assert!(ExperimentConfig::from_toml("samples = 0\nrepetitions = 1\n[model]\nfamily = \"er\"\nnvars = 2\nmax_degree = 2\np = 0.5").is_ok_and(|c| c.validate().is_err()));
    }

    #[test]
    fn budget_truncates() {
        let mut cfg = level(3, 6, 0.3, 200, 2);
        cfg.budget_seconds = 1e-9;
        let rec = run_experiment(&cfg, 1).unwrap();
        assert!(rec.incomplete);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let cfg = er_experiment(3, 6, 0.1, Regime::VarPowers, Cap::Degree, 30, 2, 9);
        let a = run_experiment(&cfg, 1).unwrap();
        let b = run_experiment(&cfg, 4).unwrap();
        assert_eq!(summarize_tables_with(std::slice::from_ref(&a), false), summarize_tables_with(std::slice::from_ref(&b), false));
        assert_eq!(a.mean_h, b.mean_h);
    }
}
