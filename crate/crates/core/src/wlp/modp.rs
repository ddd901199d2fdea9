//! Rank over a prime field by incremental elimination: sparse pivots while
//! fill stays low, dense rows once stored entries pass a fifth of the matrix.

use super::matrix::MultiplicationMatrix;

/// Largest prime below `2^31 - 1`; leaves headroom for sums of two
/// residues and products below `2^62`.
pub const DEFAULT_PRIME: u64 = 2_147_483_629;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

type SparseVec = Vec<(u32, u64)>;

enum Pivots {
    Sparse(Vec<Option<SparseVec>>),
    Dense(Vec<Option<Vec<u64>>>),
}

/// Incremental row echelon form over `F_p` for vectors of length `dim`.
/// Pivot vectors are normalized to a leading 1 and are zero before their
/// leading position.
pub(crate) struct Eliminator {
    dim: usize,
    prime: u64,
    pivots: Pivots,
    stored: usize,
    fill_limit: usize,
    rank: usize,
}

impl Eliminator {
    pub(crate) fn new(dim: usize, expected_vectors: usize, prime: u64) -> Self {
        assert!(prime < (1 << 32), "prime must fit in 32 bits");
        Eliminator {
            dim,
            prime,
            pivots: Pivots::Sparse(vec![None; dim]),
            stored: 0,
            fill_limit: (dim * expected_vectors) / 5,
            rank: 0,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    /// Insert a vector given by sorted `(index, value)` pairs; returns
    /// whether it raised the rank.
    pub(crate) fn insert_sparse(&mut self, mut v: SparseVec) -> bool {
        let p = self.prime;
        let added = match &mut self.pivots {
            Pivots::Sparse(pivots) => loop {
                let Some(&(lead, coef)) = v.first() else {
                    break false;
                };
                match &pivots[lead as usize] {
                    Some(pv) => v = axpy_sparse(&v, coef, pv, p),
                    None => {
                        let inv = inv_mod(coef, p);
                        for e in v.iter_mut() {
                            e.1 = mul_mod(e.1, inv, p);
                        }
                        self.stored += v.len();
                        pivots[lead as usize] = Some(v);
                        break true;
                    }
                }
            },
            Pivots::Dense(_) => {
                let mut dense = vec![0u64; self.dim];
                for (i, x) in v {
                    dense[i as usize] = x;
                }
                return self.insert_dense(dense);
            }
        };
        if added {
            self.rank += 1;
            if self.stored > self.fill_limit {
                self.densify();
            }
        }
        added
    }

    fn densify(&mut self) {
        if let Pivots::Sparse(pivots) = &mut self.pivots {
            let dim = self.dim;
            let dense = pivots
                .iter_mut()
                .map(|slot| {
                    slot.take().map(|sv| {
                        let mut row = vec![0u64; dim];
                        for (i, x) in sv {
                            row[i as usize] = x;
                        }
                        row
                    })
                })
                .collect();
            self.pivots = Pivots::Dense(dense);
        }
    }

    /// Pivot rows as `(leading position, dense row)`, by leading position.
    pub(crate) fn into_dense_rows(self) -> Vec<(usize, Vec<u64>)> {
        let dim = self.dim;
        match self.pivots {
            Pivots::Dense(rows) => rows
                .into_iter()
                .enumerate()
                .filter_map(|(k, r)| r.map(|r| (k, r)))
                .collect(),
            Pivots::Sparse(rows) => rows
                .into_iter()
                .enumerate()
                .filter_map(|(k, r)| {
                    r.map(|sv| {
                        let mut row = vec![0u64; dim];
                        for (i, x) in sv {
                            row[i as usize] = x;
                        }
                        (k, row)
                    })
                })
                .collect(),
        }
    }

    pub(crate) fn insert_dense(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.prime;
        let Pivots::Dense(pivots) = &mut self.pivots else {
            let sparse = v
                .into_iter()
                .enumerate()
                .filter(|(_, x)| *x != 0)
                .map(|(i, x)| (i as u32, x))
                .collect();
            return self.insert_sparse(sparse);
        };
        for k in 0..self.dim {
            let coef = v[k];
            if coef == 0 {
                continue;
            }
            match &pivots[k] {
                Some(row) => {
                    let neg = p - coef;
                    for j in k..self.dim {
                        if row[j] != 0 {
                            v[j] = (v[j] + mul_mod(neg, row[j], p)) % p;
                        }
                    }
                }
                None => {
                    let inv = inv_mod(coef, p);
                    for x in v[k..].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    pivots[k] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// `v - coef * pivot` over `F_p`, sparse merge.
fn axpy_sparse(v: &[(u32, u64)], coef: u64, pivot: &[(u32, u64)], p: u64) -> SparseVec {
    let neg = p - coef;
    let mut out = Vec::with_capacity(v.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < pivot.len() {
        let vi = v.get(i).map_or(u32::MAX, |e| e.0);
        let pj = pivot.get(j).map_or(u32::MAX, |e| e.0);
        if vi < pj {
            out.push(v[i]);
            i += 1;
        } else if pj < vi {
            out.push((pj, mul_mod(neg, pivot[j].1, p)));
            j += 1;
        } else {
            let x = (v[i].1 + mul_mod(neg, pivot[j].1, p)) % p;
            if x != 0 {
                out.push((vi, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the 0/1 matrix over the field with `prime` elements.
pub fn rank_mod_p(m: &MultiplicationMatrix, prime: u64) -> usize {
    debug_assert!(is_prime(prime));
    let bound = m.nrows().min(m.ncols());
    if bound == 0 {
        return 0;
    }
    let mut elim = Eliminator::new(m.nrows(), m.ncols(), prime);
    for col in m.columns() {
        let v: SparseVec = col.iter().map(|&r| (r, 1 % prime)).filter(|e| e.1 != 0).collect();
        elim.insert_sparse(v);
        if elim.rank() == bound {
            break;
        }
    }
    elim.rank()
}
