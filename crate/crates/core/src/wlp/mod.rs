//! Weak Lefschetz property of Artinian monomial quotients.
//!
//! For a monomial ideal it suffices to test `L = x_1 + ... + x_n`. Ranks are
//! computed over a large prime field; a map of full rank there has full rank
//! over the rationals too, so only deficient degrees need the exact
//! rational rank.

mod exact;
mod matrix;
mod modp;
mod quotient;

pub use exact::{rank_exact, rank_integer};
pub use matrix::{multiplication_matrix, MultiplicationMatrix};
pub use modp::{is_prime, rank_mod_p, DEFAULT_PRIME};
pub use quotient::cokernel_dims;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{graded_basis, hilbert_function, GradedBasis, HVector};
use crate::monomial::{count_of_degree, MonomialIdeal, SocleSummary};

/// How ranks over the prime field are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RankBackend {
    /// Eliminate each multiplication matrix.
    Matrix,
    /// Read ranks off `S/(I + (L))` in `n - 1` variables.
    Quotient,
    /// Whichever works with shorter vectors.
    #[default]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WlpOptions {
    pub prime: u64,
    /// Re-check degrees that are deficient mod `prime` over the rationals.
    pub verify_char0: bool,
    /// Stop at the first degree that fails maximal rank.
    pub fast: bool,
    pub backend: RankBackend,
    /// Skip exact verification of matrices whose smaller side exceeds this.
    pub exact_limit: Option<usize>,
}

impl Default for WlpOptions {
    fn default() -> Self {
        WlpOptions {
            prime: DEFAULT_PRIME,
            verify_char0: true,
            fast: false,
            backend: RankBackend::Auto,
            exact_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    PrimeOnly,
    Char0Verified,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::PrimeOnly => "prime-only",
            Tier::Char0Verified => "char0-verified",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Prime(u64),
    CharacteristicZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub full_rank: bool,
    /// Rank was confirmed by exact rational elimination.
    pub exact: bool,
}

impl DegreeRecord {
    pub fn is_injective(&self) -> bool {
        self.rank == self.dim_source
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.dim_target
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WlpVerdict {
    pub records: Vec<DegreeRecord>,
    pub has_wlp: bool,
    pub field: Field,
    pub tier: Tier,
    pub hvector: HVector,
}

impl WlpVerdict {
    /// Once a map is surjective, every later map is.
    pub fn surjectivity_persists(&self) -> bool {
        match self.records.iter().position(DegreeRecord::is_surjective) {
            Some(first) => self.records[first..].iter().all(DegreeRecord::is_surjective),
            None => true,
        }
    }

    /// Once a map is injective, every earlier map is. Holds for level
    /// algebras.
    pub fn injectivity_persists_downward(&self) -> bool {
        match self.records.iter().rposition(DegreeRecord::is_injective) {
            Some(last) => self.records[..=last].iter().all(DegreeRecord::is_injective),
            None => true,
        }
    }

    /// Persistence checks appropriate for the algebra; `level` enables the
    /// downward injectivity check.
    pub fn invariants_hold(&self, level: bool) -> bool {
        let consistent = self.records.iter().all(|r| {
            r.rank <= r.dim_source.min(r.dim_target)
                && r.full_rank == (r.rank == r.dim_source.min(r.dim_target))
        });
        let wlp_matches = self.has_wlp == self.records.iter().all(|r| r.full_rank);
        consistent
            && wlp_matches
            && self.surjectivity_persists()
            && (!level || self.injectivity_persists_downward())
    }

    /// `d,dim_d,dim_{d+1},rank,full` lines followed by `WLP,<bool>,<tier>`.
    pub fn to_lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .records
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{}",
                    r.degree, r.dim_source, r.dim_target, r.rank, r.full_rank
                )
            })
            .collect();
        lines.push(format!("WLP,{},{}", self.has_wlp, self.tier.name()));
        lines
    }
}

fn choose_backend(ideal: &MonomialIdeal, h: &HVector, requested: RankBackend) -> RankBackend {
    match requested {
        RankBackend::Auto => {
            let n = ideal.nvars();
            let top = h.len();
            let quotient_width = if n <= 1 {
                0
            } else {
                (0..=top).map(|t| count_of_degree(n - 1, t)).max().unwrap_or(0)
            };
            let widest = h.values().iter().copied().max().unwrap_or(0);
            if quotient_width <= u128::from(widest) {
                RankBackend::Quotient
            } else {
                RankBackend::Matrix
            }
        }
        other => other,
    }
}

/// Decide the WLP of `S/I` by the ranks of `x (x_1 + ... + x_n)` in every
/// degree `0..=e`.
pub fn has_wlp(ideal: &MonomialIdeal, opts: &WlpOptions) -> Result<WlpVerdict> {
    if !ideal.is_artinian() {
        return Err(Error::NotArtinian);
    }
    if !is_prime(opts.prime) || opts.prime >= (1 << 32) {
        return Err(Error::Config(format!(
            "{} is not a prime below 2^32",
            opts.prime
        )));
    }
    let mut basis: Option<GradedBasis> = None;
    let h = match opts.backend {
        RankBackend::Matrix => {
            let b = graded_basis(ideal)?;
            let h = b.hvector();
            basis = Some(b);
            h
        }
        _ => hilbert_function(ideal)?,
    };
    let backend = choose_backend(ideal, &h, opts.backend);
    if backend == RankBackend::Matrix && basis.is_none() {
        basis = Some(graded_basis(ideal)?);
    }
    let top = h.len() - 1;
    let cokernels = match backend {
        RankBackend::Quotient => Some(cokernel_dims(ideal, top + 1, opts.prime)),
        _ => None,
    };

    let mut records = Vec::with_capacity(top + 1);
    let mut all_certified = true;
    for d in 0..=top {
        let dim_source = h.get(d) as usize;
        let dim_target = h.get(d + 1) as usize;
        let bound = dim_source.min(dim_target);
        let mut rank = match &cokernels {
            Some(ck) => dim_target - ck[d + 1],
            None => {
                let m = multiplication_matrix(basis.as_ref().unwrap(), d)?;
                rank_mod_p(&m, opts.prime)
            }
        };
        let mut exact = false;
        if rank < bound {
            let within_limit = opts.exact_limit.is_none_or(|lim| bound <= lim);
            if opts.verify_char0 && within_limit {
                if basis.is_none() {
                    basis = Some(graded_basis(ideal)?);
                }
                let m = multiplication_matrix(basis.as_ref().unwrap(), d)?;
                rank = rank_exact(&m);
                exact = true;
            } else {
                all_certified = false;
            }
        }
        let full_rank = rank == bound;
        records.push(DegreeRecord {
            degree: d,
            dim_source,
            dim_target,
            rank,
            full_rank,
            exact,
        });
        if opts.fast && !full_rank {
            break;
        }
    }
    let has_wlp = records.iter().all(|r| r.full_rank);
    let (field, tier) = if all_certified {
        (Field::CharacteristicZero, Tier::Char0Verified)
    } else {
        (Field::Prime(opts.prime), Tier::PrimeOnly)
    };
    Ok(WlpVerdict {
        records,
        has_wlp,
        field,
        tier,
        hvector: h,
    })
}

/// Whether the socle of `S/I` is concentrated in one degree.
pub fn is_level(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(SocleSummary::from_socle(&ideal.socle_monomials()?).is_level())
}
