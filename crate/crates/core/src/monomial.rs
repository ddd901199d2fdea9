//! Monomials, monomial ideals and socle sets.
//!
//! A monomial is stored as its exponent vector; all ideals are kept as the
//! minimal antichain of generators, sorted lexicographically by exponent
//! vector so that serialization is deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::hilbert;

/// Exponent vector `x^a = x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn new(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// `x_i^e` in `nvars` variables.
    pub fn pure_power(nvars: usize, var: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check_ambient(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::AmbientMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.divides_unchecked(other))
    }

    #[inline]
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_ambient(other)?;
        Ok(self.lcm_unchecked(other))
    }

    pub(crate) fn lcm_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// `x_var * self`.
    pub fn times_var(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.0[var] += 1;
        m
    }

    /// Index of the single variable in the support, if this is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    /// Bitmask of variables with positive exponent (n <= 64).
    pub(crate) fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Number of monomials of degree `d` in `n` variables, `C(d+n-1, n-1)`.
pub fn count_of_degree(n: usize, d: usize) -> u128 {
    if n == 0 {
        return u128::from(d == 0);
    }
    binomial((d + n - 1) as u64, (n - 1) as u64)
}

/// Exact binomial coefficient; saturates at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Iterator over the monomials of degree exactly `d` in `n` variables, in
/// lexicographically descending order (`x_1^d` first).
#[derive(Clone, Debug)]
pub struct DegreeMonomials {
    current: Option<SmallVec<[u32; 4]>>,
}

impl Iterator for DegreeMonomials {
    type Item = Monomial;

    fn next(&mut self) -> Option<Monomial> {
        let cur = self.current.as_mut()?;
        let out = Monomial(cur.clone());
        let n = cur.len();
        if n <= 1 {
            self.current = None;
            return Some(out);
        }
        let tail = cur[n - 1];
        cur[n - 1] = 0;
        match (0..n - 1).rev().find(|&i| cur[i] > 0) {
            Some(i) => {
                cur[i] -= 1;
                cur[i + 1] = tail + 1;
            }
            None => self.current = None,
        }
        Some(out)
    }
}

pub fn monomials_of_degree(n: usize, d: usize) -> DegreeMonomials {
    if n == 0 {
        return DegreeMonomials {
            current: if d == 0 { Some(SmallVec::new()) } else { None },
        };
    }
    let mut start = SmallVec::from_elem(0, n);
    start[0] = d as u32;
    DegreeMonomials {
        current: Some(start),
    }
}

/// Non-constant monomials of degree at most `max_degree`, graded then
/// lexicographically descending. This order fixes the draw-to-monomial map
/// of the samplers.
pub fn monomials_up_to(n: usize, max_degree: usize) -> impl Iterator<Item = Monomial> {
    (1..=max_degree).flat_map(move |d| monomials_of_degree(n, d))
}

/// A monomial ideal given by its minimal generators. The unit ideal cannot
/// be represented.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    /// Build the ideal generated by `gens`, reduced to its minimal antichain.
    pub fn minimalize(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut all: Vec<Monomial> = Vec::new();
        for g in gens {
            if g.nvars() != nvars {
                return Err(Error::AmbientMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            if g.is_constant() {
                return Err(Error::InvalidGenerator);
            }
            all.push(g);
        }
        Ok(MonomialIdeal {
            nvars,
            gens: minimal_antichain(all),
        })
    }

    /// All monomials of degree exactly `d`: the power `m^d` of the maximal ideal.
    pub fn max_ideal_power(nvars: usize, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGenerator);
        }
        Self::minimalize(nvars, monomials_of_degree(nvars, d))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.nvars(), self.nvars);
        self.gens.iter().any(|g| g.divides_unchecked(m))
    }

    /// Ideal sum: generated by the union of generators.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        Self::minimalize(
            self.nvars,
            self.gens.iter().chain(other.gens.iter()).cloned(),
        )
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                lcms.push(a.lcm_unchecked(b));
            }
        }
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens: minimal_antichain(lcms),
        })
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    /// Every variable has a pure power among the generators.
    pub fn is_artinian(&self) -> bool {
        let mut seen = vec![false; self.nvars];
        for g in &self.gens {
            if let Some(i) = g.pure_power_var() {
                seen[i] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Largest variable subset `V` such that no generator is supported in `V`.
    pub fn krull_dim(&self) -> usize {
        let n = self.nvars;
        assert!(n < 64, "krull_dim supports fewer than 64 variables");
        let supports: Vec<u64> = self.gens.iter().map(Monomial::support_mask).collect();
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        best
    }

    /// Largest pure-power exponent per variable (the box containing every
    /// standard monomial), if Artinian.
    pub fn pure_power_box(&self) -> Option<Vec<u32>> {
        let mut bound = vec![u32::MAX; self.nvars];
        for g in &self.gens {
            if let Some(i) = g.pure_power_var() {
                bound[i] = bound[i].min(g.exponents()[i]);
            }
        }
        if bound.contains(&u32::MAX) {
            None
        } else {
            Some(bound)
        }
    }

    /// Standard monomials `m` with `x_i m` in the ideal for every `i`, with
    /// their degrees, in degree then lexicographic order.
    pub fn socle_monomials(&self) -> Result<Vec<(usize, Monomial)>> {
        if !self.is_artinian() {
            return Err(Error::NotArtinian);
        }
        let basis = hilbert::graded_basis(self)?;
        let mut out = Vec::new();
        for (d, layer) in basis.layers().iter().enumerate() {
            for m in layer {
                if (0..self.nvars).all(|i| self.contains(&m.times_var(i))) {
                    out.push((d, m.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Serialization form: minimal generators sorted lexicographically.
    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            nvars: self.nvars,
            generators: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        if j.nvars == 0 {
            return Err(Error::Config("nvars must be positive".into()));
        }
        Self::minimalize(j.nvars, j.generators.iter().map(|g| Monomial::new(g)))
    }
}

/// Socle vector, level predicate and type computed from `socle_monomials`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleSummary {
    /// `s_d` for `d = 0..=e`.
    pub vector: Vec<usize>,
}

impl SocleSummary {
    pub fn from_socle(socle: &[(usize, Monomial)]) -> Self {
        let top = socle.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut vector = vec![0; top + 1];
        for (d, _) in socle {
            vector[*d] += 1;
        }
        SocleSummary { vector }
    }

    pub fn socle_degree(&self) -> usize {
        self.vector.len() - 1
    }

    pub fn is_level(&self) -> bool {
        let e = self.socle_degree();
        self.vector[e] > 0 && self.vector[..e].iter().all(|&s| s == 0)
    }

    /// Number of socle generators in the top degree.
    pub fn top_type(&self) -> usize {
        *self.vector.last().unwrap_or(&0)
    }
}

/// JSON schema shared by every CLI subcommand:
/// `{ "nvars": n, "generators": [[e1, ..., en], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub nvars: usize,
    pub generators: Vec<Vec<u32>>,
}

/// A set of distinct monomials of one common degree `D`; an antichain by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleSet {
    nvars: usize,
    degree: usize,
    members: Vec<Monomial>,
}

impl SocleSet {
    pub fn new(nvars: usize, degree: usize, members: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut ms: Vec<Monomial> = Vec::new();
        for m in members {
            if m.nvars() != nvars {
                return Err(Error::AmbientMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::Config(format!(
                    "socle member {m} has degree {} instead of {degree}",
                    m.degree()
                )));
            }
            ms.push(m);
        }
        ms.sort();
        ms.dedup();
        Ok(SocleSet {
            nvars,
            degree,
            members: ms,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Macaulay inverse-system annihilator: the intersection over `b` of
    /// `<x_1^{b_1+1}, ..., x_n^{b_n+1}>`, folded one member at a time.
    pub fn annihilator(&self) -> Result<MonomialIdeal> {
        let (first, rest) = self.members.split_first().ok_or(Error::EmptySocle)?;
        let mut acc = annihilator_of_monomial(first);
        for b in rest {
            acc = acc.intersect(&annihilator_of_monomial(b))?;
        }
        Ok(acc)
    }
}

/// `Ann(x^b) = <x_1^{b_1+1}, ..., x_n^{b_n+1}>`.
pub fn annihilator_of_monomial(b: &Monomial) -> MonomialIdeal {
    let n = b.nvars();
    let gens = (0..n)
        .map(|i| Monomial::pure_power(n, i, b.exponents()[i] + 1))
        .collect::<Vec<_>>();
    MonomialIdeal {
        nvars: n,
        gens: minimal_antichain(gens),
    }
}

pub fn annihilator_of_socle(b: &SocleSet) -> Result<MonomialIdeal> {
    b.annihilator()
}

/// Reduce to the minimal antichain, sorted lexicographically.
fn minimal_antichain(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    // a divisor has degree <= its multiple, so scanning by degree lets each
    // candidate be checked against already-kept generators only
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}
