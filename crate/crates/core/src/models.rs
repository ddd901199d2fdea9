//! Samplers for the Erdős–Rényi-type ideal model, its three Artinian
//! regimes, and the two random level-algebra socle models.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{count_of_degree, monomials_of_degree, monomials_up_to, Monomial, MonomialIdeal, SocleSet};
use crate::rng::StreamRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `S/I`.
    Raw,
    /// `S/(I + <x_1^c, ..., x_n^c>)`.
    VarPowers,
    /// `S/(I + m^c)`.
    MaxPower,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Raw => "raw",
            Regime::VarPowers => "var-powers",
            Regime::MaxPower => "max-power",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Regime::Raw),
            "var-powers" | "varpowers" => Ok(Regime::VarPowers),
            "max-power" | "maxpower" => Ok(Regime::MaxPower),
            other => Err(Error::Config(format!("unknown regime {other:?}"))),
        }
    }
}

/// Exponent `c` of the added powers: `D` or `D + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Cap {
    #[serde(rename = "D")]
    Degree,
    #[default]
    #[serde(rename = "D+1")]
    DegreePlusOne,
}

impl Cap {
    pub fn exponent(self, max_degree: usize) -> usize {
        match self {
            Cap::Degree => max_degree,
            Cap::DegreePlusOne => max_degree + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Cap::Degree => "D",
            Cap::DegreePlusOne => "D+1",
        }
    }
}

impl std::str::FromStr for Cap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(Cap::Degree),
            "D+1" => Ok(Cap::DegreePlusOne),
            other => Err(Error::Config(format!("cap must be D or D+1, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErConfig {
    pub nvars: usize,
    pub max_degree: usize,
    pub p: f64,
    #[serde(default = "default_regime")]
    pub regime: Regime,
    #[serde(default)]
    pub cap: Cap,
    #[serde(default)]
    pub seed: u64,
}

fn default_regime() -> Regime {
    Regime::VarPowers
}

impl ErConfig {
    pub fn validate(&self) -> Result<()> {
        check_probability(self.p)?;
        if self.nvars == 0 || self.max_degree == 0 {
            return Err(Error::Config("n and D must be positive".into()));
        }
        Ok(())
    }

    pub fn cap_exponent(&self) -> usize {
        self.cap.exponent(self.max_degree)
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Each non-constant monomial of degree `<= D` kept independently with
/// probability `p`, in graded lexicographic order; draw `k` decides the
/// `k`-th monomial.
pub fn sample_er_generators(cfg: &ErConfig, stream: u64) -> Result<Vec<Monomial>> {
    cfg.validate()?;
    let mut rng = StreamRng::new(cfg.seed, stream);
    Ok(monomials_up_to(cfg.nvars, cfg.max_degree)
        .filter(|_| rng.bernoulli(cfg.p))
        .collect())
}

pub fn build_regime(gens: Vec<Monomial>, cfg: &ErConfig) -> Result<MonomialIdeal> {
    let n = cfg.nvars;
    let c = cfg.cap_exponent();
    match cfg.regime {
        Regime::Raw => MonomialIdeal::minimalize(n, gens),
        Regime::VarPowers => {
            let powers = (0..n).map(|i| Monomial::pure_power(n, i, c as u32));
            MonomialIdeal::minimalize(n, gens.into_iter().chain(powers))
        }
        Regime::MaxPower => {
            MonomialIdeal::minimalize(n, gens.into_iter().chain(monomials_of_degree(n, c)))
        }
    }
}

pub fn sample_er_ideal(cfg: &ErConfig, stream: u64) -> Result<MonomialIdeal> {
    build_regime(sample_er_generators(cfg, stream)?, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LevelModel {
    /// Each monomial of `Mon(n, D)` independently with probability `p`.
    Bernoulli { p: f64 },
    /// A uniformly random `t`-subset of `Mon(n, D)`.
    Uniform { t: usize },
}

pub const DEFAULT_RETRY_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelConfig {
    pub nvars: usize,
    pub degree: usize,
    pub model: LevelModel,
    #[serde(default)]
    pub condition_nonempty: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_retry_cap")]
    pub retry_cap: u64,
}

fn default_retry_cap() -> u64 {
    DEFAULT_RETRY_CAP
}

impl LevelConfig {
    pub fn bernoulli(nvars: usize, degree: usize, p: f64, seed: u64) -> Self {
        LevelConfig {
            nvars,
            degree,
            model: LevelModel::Bernoulli { p },
            condition_nonempty: false,
            seed,
            retry_cap: DEFAULT_RETRY_CAP,
        }
    }

    pub fn uniform(nvars: usize, degree: usize, t: usize, seed: u64) -> Self {
        LevelConfig {
            nvars,
            degree,
            model: LevelModel::Uniform { t },
            condition_nonempty: true,
            seed,
            retry_cap: DEFAULT_RETRY_CAP,
        }
    }

    /// `|Mon(n, D)|`.
    pub fn pool_size(&self) -> usize {
        count_of_degree(self.nvars, self.degree) as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.nvars == 0 || self.degree == 0 {
            return Err(Error::Config("n and D must be positive".into()));
        }
        match self.model {
            LevelModel::Bernoulli { p } => check_probability(p),
            LevelModel::Uniform { t } => {
                if t == 0 || t > self.pool_size() {
                    Err(Error::Config(format!(
                        "t = {t} outside 1..={}",
                        self.pool_size()
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// A sampled socle with the number of rejected (empty) draws before it.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelDraw {
    pub socle: SocleSet,
    pub retries: u64,
}

pub fn sample_level_socle_bernoulli(cfg: &LevelConfig, stream: u64) -> Result<LevelDraw> {
    cfg.validate()?;
    let LevelModel::Bernoulli { p } = cfg.model else {
        return Err(Error::Config("expected the bernoulli level model".into()));
    };
    let mut attempt: u64 = 0;
    loop {
        let mut rng = StreamRng::with_substream(cfg.seed, stream, attempt as u32);
        let members: Vec<Monomial> = monomials_of_degree(cfg.nvars, cfg.degree)
            .filter(|_| rng.bernoulli(p))
            .collect();
        if !members.is_empty() || !cfg.condition_nonempty {
            return Ok(LevelDraw {
                socle: SocleSet::new(cfg.nvars, cfg.degree, members)?,
                retries: attempt,
            });
        }
        attempt += 1;
        if attempt >= cfg.retry_cap || attempt > u64::from(u32::MAX) {
            return Err(Error::NonTermination(attempt));
        }
    }
}

/// Floyd's subset sampling over positions of `Mon(n, D)` in lexicographic
/// descending order.
pub fn sample_level_socle_uniform(cfg: &LevelConfig, stream: u64) -> Result<LevelDraw> {
    cfg.validate()?;
    let LevelModel::Uniform { t } = cfg.model else {
        return Err(Error::Config("expected the uniform level model".into()));
    };
    let pool = cfg.pool_size();
    let mut rng = StreamRng::new(cfg.seed, stream);
    let mut chosen = BTreeSet::new();
    for j in (pool - t)..pool {
        let r = rng.next_below(j as u64 + 1) as usize;
        if !chosen.insert(r) {
            chosen.insert(j);
        }
    }
    let members = monomials_of_degree(cfg.nvars, cfg.degree)
        .enumerate()
        .filter(|(i, _)| chosen.contains(i))
        .map(|(_, m)| m);
    Ok(LevelDraw {
        socle: SocleSet::new(cfg.nvars, cfg.degree, members)?,
        retries: 0,
    })
}

pub fn sample_level_socle(cfg: &LevelConfig, stream: u64) -> Result<LevelDraw> {
    match cfg.model {
        LevelModel::Bernoulli { .. } => sample_level_socle_bernoulli(cfg, stream),
        LevelModel::Uniform { .. } => sample_level_socle_uniform(cfg, stream),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::binomial;

    fn er(n: usize, d: usize, p: f64, regime: Regime, cap: Cap) -> ErConfig {
        ErConfig {
            nvars: n,
            max_degree: d,
            p,
            regime,
            cap,
            seed: 11,
        }
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn extreme_probabilities() {
        let cfg = er(3, 4, 0.0, Regime::Raw, Cap::Degree);
        for s in 0..20 {
            assert!(sample_er_generators(&cfg, s).unwrap().is_empty());
        }
        let cfg = er(3, 4, 1.0, Regime::Raw, Cap::Degree);
        let all = sample_er_generators(&cfg, 0).unwrap();
        assert_eq!(all.len() as u128, binomial(7, 3) - 1);
        assert!(sample_er_generators(&er(2, 2, 1.5, Regime::Raw, Cap::Degree), 0).is_err());
    }

    #[test]
    fn er_cardinality_mean() {
        let cfg = er(2, 4, 0.3, Regime::Raw, Cap::Degree);
        let pool = (binomial(6, 2) - 1) as f64;
        let draws = 10_000;
        let mean = (0..draws)
            .map(|s| sample_er_generators(&cfg, s).unwrap().len() as f64)
            .sum::<f64>()
            / draws as f64;
        let se = (pool * 0.3 * 0.7 / draws as f64).sqrt();
        assert!((mean - pool * 0.3).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn regimes() {
        let c3 = er(2, 2, 0.5, Regime::VarPowers, Cap::DegreePlusOne);
        assert_eq!(
            build_regime(vec![], &c3).unwrap().generators(),
            &[m(&[0, 3]), m(&[3, 0])]
        );
        let mp = er(2, 2, 0.5, Regime::MaxPower, Cap::DegreePlusOne);
        assert_eq!(
            build_regime(vec![m(&[1, 1])], &mp).unwrap().generators(),
            &[m(&[0, 3]), m(&[1, 1]), m(&[3, 0])]
        );
        let c5 = er(2, 4, 0.5, Regime::VarPowers, Cap::DegreePlusOne);
        assert_eq!(
            build_regime(vec![m(&[1, 0])], &c5).unwrap().generators(),
            &[m(&[0, 5]), m(&[1, 0])]
        );
    }

    #[test]
    fn artinian_regimes_always_artinian() {
        for regime in [Regime::VarPowers, Regime::MaxPower] {
            for cap in [Cap::Degree, Cap::DegreePlusOne] {
                let cfg = er(3, 5, 0.05, regime, cap);
                for s in 0..50 {
                    assert!(sample_er_ideal(&cfg, s).unwrap().is_artinian());
                }
            }
        }
    }

    #[test]
    fn raw_artinian_frequency_increases_with_p() {
        let grid = [0.05, 0.2, 0.4, 0.7];
        let draws = 400u64;
        let rates: Vec<f64> = grid
            .iter()
            .map(|&p| {
                let cfg = er(3, 4, p, Regime::Raw, Cap::Degree);
                (0..draws)
                    .filter(|&s| sample_er_ideal(&cfg, s).unwrap().is_artinian())
                    .count() as f64
                    / draws as f64
            })
            .collect();
        for w in rates.windows(2) {
            let se = (0.25 / draws as f64).sqrt();
            assert!(w[1] + 4.0 * se >= w[0], "rates {rates:?}");
        }
        assert!(rates[3] > rates[0]);
    }

    #[test]
    fn level_bernoulli_edges() {
        let cfg = LevelConfig::bernoulli(3, 3, 1.0, 5);
        let d = sample_level_socle_bernoulli(&cfg, 0).unwrap();
        assert_eq!(d.socle.len(), 10);

        let mut cfg = LevelConfig::bernoulli(3, 3, 0.05, 5);
        cfg.condition_nonempty = true;
        let mut retried = false;
        for s in 0..200 {
            let d = sample_level_socle_bernoulli(&cfg, s).unwrap();
            assert!(!d.socle.is_empty());
            retried |= d.retries > 0;
        }
        assert!(retried);

        let mut cfg = LevelConfig::bernoulli(2, 2, 0.0, 5);
        cfg.condition_nonempty = true;
        cfg.retry_cap = 50;
        assert_eq!(
            sample_level_socle_bernoulli(&cfg, 0),
            Err(Error::NonTermination(50))
        );
    }

    #[test]
    fn level_uniform_edges() {
        let cfg = LevelConfig::uniform(3, 2, 6, 1);
        assert_eq!(sample_level_socle_uniform(&cfg, 0).unwrap().socle.len(), 6);
        let cfg = LevelConfig::uniform(3, 2, 2, 1);
        for s in 0..100 {
            assert_eq!(sample_level_socle_uniform(&cfg, s).unwrap().socle.len(), 2);
        }
        assert!(sample_level_socle_uniform(&LevelConfig::uniform(3, 2, 7, 1), 0).is_err());
        assert!(sample_level_socle_uniform(&LevelConfig::uniform(3, 2, 0, 1), 0).is_err());
    }

    #[test]
    fn uniform_singletons_are_uniform() {
        let cfg = LevelConfig::uniform(2, 5, 1, 99);
        let draws = 100_000u64;
        let mut counts = [0u64; 6];
        for s in 0..draws {
            let d = sample_level_socle_uniform(&cfg, s).unwrap();
            let idx = monomials_of_degree(2, 5)
                .position(|x| x == d.socle.members()[0])
                .unwrap();
            counts[idx] += 1;
        }
        let pr = 1.0 / 6.0;
        let se = (pr * (1.0 - pr) / draws as f64).sqrt();
        for c in counts {
            assert!((c as f64 / draws as f64 - pr).abs() < 4.0 * se, "{counts:?}");
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("var-powers".parse::<Regime>().unwrap(), Regime::VarPowers);
        assert_eq!("D".parse::<Cap>().unwrap(), Cap::Degree);
        assert_eq!("D+1".parse::<Cap>().unwrap(), Cap::DegreePlusOne);
        assert!("E".parse::<Cap>().is_err());
    }
}
