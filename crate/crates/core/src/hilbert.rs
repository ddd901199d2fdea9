//! Hilbert functions of Artinian monomial quotients and h-vector predicates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// `(h_0, ..., h_e)` with trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(mut values: Vec<u64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        HVector(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `h_d`, zero past the socle degree.
    pub fn get(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    /// Socle degree `e`; `None` for the zero algebra.
    pub fn socle_degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.0)
    }

    pub fn count_peaks(&self) -> usize {
        count_peaks(&self.0)
    }

    pub fn is_log_concave(&self) -> bool {
        is_log_concave(&self.0)
    }

    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Standard monomials of `S/I` by degree, each layer sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    layers: Vec<Vec<Monomial>>,
}

impl GradedBasis {
    pub fn layers(&self) -> &[Vec<Monomial>] {
        &self.layers
    }

    /// Layer `d`, empty past the socle degree.
    pub fn degree(&self, d: usize) -> &[Monomial] {
        self.layers.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn top_degree(&self) -> usize {
        self.layers.len() - 1
    }

    /// Position of `m` inside its degree layer.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.layers.get(m.degree())?.binary_search(m).ok()
    }

    pub fn hvector(&self) -> HVector {
        HVector::new(self.layers.iter().map(|l| l.len() as u64).collect())
    }
}

/// Standard monomials of degree `d + 1` from those of degree `d`.
///
/// Each monomial is produced once, from its quotient by the last variable in
/// its support; that quotient is standard whenever the monomial is.
fn next_layer(ideal: &MonomialIdeal, layer: &[Monomial]) -> Vec<Monomial> {
    let n = ideal.nvars();
    let mut out = Vec::new();
    for m in layer {
        let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
        for i in last..n {
            let c = m.times_var(i);
            if !ideal.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

pub fn graded_basis(ideal: &MonomialIdeal) -> Result<GradedBasis> {
    if !ideal.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let mut layers = vec![vec![Monomial::one(ideal.nvars())]];
    loop {
        let mut next = next_layer(ideal, layers.last().unwrap());
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        layers.push(next);
    }
    Ok(GradedBasis { layers })
}

pub fn hilbert_function(ideal: &MonomialIdeal) -> Result<HVector> {
    if !ideal.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let mut values = vec![1u64];
    let mut layer = vec![Monomial::one(ideal.nvars())];
    loop {
        layer = next_layer(ideal, &layer);
        if layer.is_empty() {
            break;
        }
        values.push(layer.len() as u64);
    }
    Ok(HVector::new(values))
}

/// Coefficients of `prod_i (1 + z + ... + z^{a_i})`: the Hilbert function of
/// `S/<x_1^{a_1+1}, ..., x_n^{a_n+1}>`.
pub fn ci_hilbert(a: &[u32]) -> Vec<u128> {
    let mut coeffs: Vec<u128> = vec![1];
    for &ai in a {
        let ai = ai as usize;
        let len = coeffs.len() + ai;
        let mut next = vec![0u128; len];
        // sliding window sum of width ai + 1
        let mut window: u128 = 0;
        for (j, slot) in next.iter_mut().enumerate() {
            if j < coeffs.len() {
                window += coeffs[j];
            }
            if j > ai {
                window -= coeffs[j - ai - 1];
            }
            *slot = window;
        }
        coeffs = next;
    }
    coeffs
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal(h: &[u64]) -> bool {
    let mut decreasing = false;
    for w in h.windows(2) {
        if w[1] < w[0] {
            decreasing = true;
        } else if w[1] > w[0] && decreasing {
            return false;
        }
    }
    true
}

/// Maximal constant runs strictly above their neighbors on each side that
/// has a neighbor.
pub fn count_peaks<T: PartialOrd + Copy>(h: &[T]) -> usize {
    let mut runs: Vec<T> = Vec::new();
    for &v in h {
        if runs.last().is_none_or(|&last| last != v) {
            runs.push(v);
        }
    }
    (0..runs.len())
        .filter(|&i| {
            let left = i == 0 || runs[i - 1] < runs[i];
            let right = i + 1 == runs.len() || runs[i + 1] < runs[i];
            left && right
        })
        .count()
}

/// `h_j^2 >= h_{j-1} h_{j+1}` for every interior `j`, in exact arithmetic.
pub fn is_log_concave(h: &[u64]) -> bool {
    h.windows(3).all(|w| {
        let mid = u128::from(w[1]) * u128::from(w[1]);
        mid >= u128::from(w[0]) * u128::from(w[2])
    })
}

/// Real-valued log-concavity with a relative tolerance on each inequality.
pub fn is_log_concave_real(h: &[f64], rel_tol: f64) -> bool {
    h.windows(3).all(|w| {
        let mid = w[1] * w[1];
        let outer = w[0] * w[2];
        mid - outer >= -rel_tol * mid.max(outer)
    })
}

pub const DEFAULT_LOG_CONCAVE_TOL: f64 = 1e-9;
