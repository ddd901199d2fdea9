//! Closed-form expectations for the random models and the log-concavity
//! witness function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{ci_hilbert, HVector};
use crate::models::{check_probability, Cap, Regime};
use crate::monomial::{binomial, count_of_degree, monomials_of_degree, Monomial};

/// Expected values indexed by degree.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpectedVector(pub Vec<f64>);

impl ExpectedVector {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, d: usize) -> f64 {
        self.0.get(d).copied().unwrap_or(0.0)
    }
}

/// `q^exponent` with `q = 1 - p`, evaluated in log space; exact 0 at `q = 0`.
fn q_pow(p: f64, exponent: u128) -> f64 {
    if exponent == 0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    ((exponent as f64) * (-p).ln_1p()).exp()
}

/// `1 - q^exponent`, accurate for small `p`.
fn one_minus_q_pow(p: f64, exponent: u128) -> f64 {
    if exponent == 0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    -((exponent as f64) * (-p).ln_1p()).exp_m1()
}

/// Number of divisors of `x^a` with degree at most `max_degree`,
/// constant included.
pub fn divisor_count_up_to(a: &[u32], max_degree: usize) -> u128 {
    let total: u128 = a.iter().map(|&e| u128::from(e) + 1).product();
    let deg: usize = a.iter().map(|&e| e as usize).sum();
    if deg <= max_degree {
        return total;
    }
    let h = ci_hilbert(a);
    total - h[max_degree + 1..].iter().sum::<u128>()
}

/// `P(x^a not in I)` for `I ~ I(n, D, p)`: `q^(N-1)` with `N` the number of
/// divisors of `x^a` of degree `<= D`.
pub fn prob_not_in_ideal(a: &Monomial, max_degree: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    let n_div = divisor_count_up_to(a.exponents(), max_degree);
    Ok(q_pow(p, n_div - 1))
}

/// `E[h_d]` for the three Erdős–Rényi regimes, `d >= 1`.
pub fn expected_h_er(
    d: usize,
    nvars: usize,
    max_degree: usize,
    p: f64,
    regime: Regime,
    cap: Cap,
) -> Result<f64> {
    check_probability(p)?;
    if d < 1 {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            min: 1,
            max: usize::MAX,
        });
    }
    let c = cap.exponent(max_degree);
    match regime {
        Regime::VarPowers if d > nvars * (c - 1) => return Ok(0.0),
        Regime::MaxPower if d >= c => return Ok(0.0),
        _ => {}
    }
    let mut sum = 0.0;
    for a in monomials_of_degree(nvars, d) {
        if regime == Regime::VarPowers && a.exponents().iter().any(|&e| e as usize >= c) {
            continue;
        }
        let n_div = divisor_count_up_to(a.exponents(), max_degree);
        sum += q_pow(p, n_div - 1);
    }
    Ok(sum)
}

/// `(E[h_0], ..., E[h_top])` for an Erdős–Rényi regime; `E[h_0] = 1`.
pub fn expected_vector_er(
    nvars: usize,
    max_degree: usize,
    p: f64,
    regime: Regime,
    cap: Cap,
    top: usize,
) -> Result<ExpectedVector> {
    let mut out = vec![1.0];
    for d in 1..=top {
        out.push(expected_h_er(d, nvars, max_degree, p, regime, cap)?);
    }
    Ok(ExpectedVector(out))
}

/// `E[h_j] = C(j+n-1, n-1) (1 - q^C(D-j+n-1, n-1))` under the unconditioned
/// Bernoulli socle model. `j = D` is accepted and equals the expected type.
pub fn expected_h_level(j: usize, nvars: usize, degree: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    if j > degree {
        return Err(Error::DegreeOutOfRange {
            degree: j,
            min: 0,
            max: degree,
        });
    }
    let width = count_of_degree(nvars, j) as f64;
    Ok(width * one_minus_q_pow(p, count_of_degree(nvars, degree - j)))
}

pub fn expected_vector_level(nvars: usize, degree: usize, p: f64) -> Result<ExpectedVector> {
    (0..=degree)
        .map(|j| expected_h_level(j, nvars, degree, p))
        .collect::<Result<Vec<_>>>()
        .map(ExpectedVector)
}

/// `p * C(D+n-1, n-1)`.
pub fn expected_type(nvars: usize, degree: usize, p: f64) -> f64 {
    p * count_of_degree(nvars, degree) as f64
}

/// `f(x) = [1 - x^C(m+k+1,m)]^2 - [1 - x^C(m+k+2,m)] [1 - x^C(m+k,m)]`.
pub fn logconcavity_witness_f(x: f64, m: u64, k: u64) -> f64 {
    let e_mid = binomial(m + k + 1, m) as f64;
    let e_hi = binomial(m + k + 2, m) as f64;
    let e_lo = binomial(m + k, m) as f64;
    let mid = 1.0 - x.powf(e_mid);
    mid * mid - (1.0 - x.powf(e_hi)) * (1.0 - x.powf(e_lo))
}

/// Entrywise mean after padding with zeros to the longest vector.
pub fn mean_hilbert(samples: &[HVector]) -> Result<ExpectedVector> {
    Ok(hilbert_moments(samples)?.mean)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HilbertMoments {
    pub mean: ExpectedVector,
    /// Standard error of each entry's mean (sample SD over `sqrt(N)`).
    pub std_error: Vec<f64>,
    pub count: usize,
}

pub fn hilbert_moments(samples: &[HVector]) -> Result<HilbertMoments> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("no Hilbert functions to average"));
    }
    let len = samples.iter().map(HVector::len).max().unwrap_or(0);
    let n = samples.len() as f64;
    let mut mean = vec![0.0; len];
    for h in samples {
        for (d, &v) in h.values().iter().enumerate() {
            mean[d] += v as f64;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut std_error = vec![0.0; len];
    if samples.len() > 1 {
        for (d, se) in std_error.iter_mut().enumerate() {
            let ss: f64 = samples
                .iter()
                .map(|h| {
                    let dev = h.get(d) as f64 - mean[d];
                    dev * dev
                })
                .sum();
            *se = (ss / (n - 1.0)).sqrt() / n.sqrt();
        }
    }
    Ok(HilbertMoments {
        mean: ExpectedVector(mean),
        std_error,
        count: samples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn prob_not_in_ideal_examples() {
        assert_eq!(prob_not_in_ideal(&Monomial::new(&[0, 0]), 3, 0.5).unwrap(), 1.0);
        assert!(close(prob_not_in_ideal(&Monomial::new(&[1, 1]), 3, 0.5).unwrap(), 0.125));
        assert!(close(prob_not_in_ideal(&Monomial::new(&[2, 1]), 2, 0.5).unwrap(), 0.0625));
        assert!(prob_not_in_ideal(&Monomial::new(&[1]), 2, -0.1).is_err());
    }

    #[test]
    fn divisor_count_tail_matches_direct_count() {
        for a in [[3u32, 1, 4], [0, 5, 2], [2, 2, 2]] {
            for bound in 0..=12 {
                let direct = (0..=a[0])
                    .flat_map(|i| (0..=a[1]).flat_map(move |j| (0..=a[2]).map(move |k| i + j + k)))
                    .filter(|&s| s as usize <= bound)
                    .count() as u128;
                assert_eq!(divisor_count_up_to(&a, bound), direct);
            }
        }
    }

    #[test]
    fn prob_monotone_in_p_and_divisibility() {
        let a = Monomial::new(&[2, 1, 0]);
        let b = Monomial::new(&[2, 2, 1]);
        let mut last = 1.0;
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let pa = prob_not_in_ideal(&a, 3, p).unwrap();
            let pb = prob_not_in_ideal(&b, 3, p).unwrap();
            assert!(pa <= last + 1e-15);
            assert!(pb <= pa + 1e-15);
            last = pa;
        }
    }

    #[test]
    fn er_expectation_examples() {
        let v = expected_h_er(1, 2, 2, 0.5, Regime::Raw, Cap::DegreePlusOne).unwrap();
        assert!(close(v, 1.0));
        let v = expected_h_er(2, 2, 2, 0.5, Regime::MaxPower, Cap::DegreePlusOne).unwrap();
        assert!(close(v, 0.625));
        // p = 0: every admissible composition counts once
        let v = expected_h_er(3, 3, 4, 0.0, Regime::Raw, Cap::DegreePlusOne).unwrap();
        assert!(close(v, 10.0));
        let v = expected_h_er(5, 2, 3, 0.0, Regime::VarPowers, Cap::DegreePlusOne).unwrap();
        // compositions of 5 into 2 parts with both parts <= 3: (2,3), (3,2)
        assert!(close(v, 2.0));
        assert_eq!(
            expected_h_er(4, 2, 3, 0.0, Regime::MaxPower, Cap::DegreePlusOne).unwrap(),
            0.0
        );
        assert_eq!(
            expected_h_er(7, 2, 3, 0.3, Regime::VarPowers, Cap::DegreePlusOne).unwrap(),
            0.0
        );
        assert!(expected_h_er(0, 2, 3, 0.3, Regime::Raw, Cap::Degree).is_err());
    }

    #[test]
    fn level_expectation_examples() {
        assert!(close(expected_h_level(2, 3, 4, 1.0).unwrap(), 6.0));
        assert!(close(expected_h_level(1, 2, 3, 0.5).unwrap(), 1.75));
        assert_eq!(expected_h_level(2, 3, 4, 0.0).unwrap(), 0.0);
        assert!(close(expected_type(2, 3, 0.5), 2.0));
        assert!(close(expected_type(3, 4, 1.0), 15.0));
        for p in [0.1, 0.5, 0.9] {
            assert!(close(
                expected_h_level(4, 3, 4, p).unwrap(),
                expected_type(3, 4, p)
            ));
        }
        assert!(expected_h_level(5, 3, 4, 0.5).is_err());
    }

    #[test]
    fn witness_values() {
        for m in 0..5 {
            for k in 0..6 {
                assert!(logconcavity_witness_f(1.0, m, k).abs() < 1e-15);
                assert!(logconcavity_witness_f(0.0, m, k).abs() < 1e-15);
            }
        }
        assert!(close(logconcavity_witness_f(0.5, 2, 0), 0.2734375));
    }

    #[test]
    fn means() {
        let a = HVector::new(vec![1, 2, 1]);
        assert_eq!(mean_hilbert(std::slice::from_ref(&a)).unwrap().0, vec![1.0, 2.0, 1.0]);
        let b = HVector::new(vec![1, 2]);
        assert_eq!(mean_hilbert(&[a, b]).unwrap().0, vec![1.0, 2.0, 0.5]);
        assert!(mean_hilbert(&[]).is_err());
    }
}
