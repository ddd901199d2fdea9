//! Ranks of `x L : [A]_d -> [A]_{d+1}` read off the cokernel.
//!
//! With `L = x_1 + ... + x_n`, the cokernel of the degree-`d` map is
//! `[S/(I + (L))]_{d+1}`. Substituting `x_n = -(x_1 + ... + x_{n-1})`
//! identifies `S/(L)` with `R = k[y_1, ..., y_{n-1}]`, so the cokernel is
//! `[R/J]_{d+1}` with `J` generated by the images of the generators of `I`.
//! Then `rank = h_{d+1} - dim [R/J]_{d+1}`, and only vectors of length
//! `dim R_{d+1}` are ever eliminated.

use super::modp::{mul_mod, Eliminator};
use crate::monomial::{binomial, count_of_degree, monomials_of_degree, MonomialIdeal};

/// Position of a composition in the lexicographically descending list of
/// monomials of its degree.
pub(crate) fn lex_position(c: &[u32]) -> usize {
    let m = c.len();
    let mut rem: u64 = c.iter().map(|&e| u64::from(e)).sum();
    let mut pos: u128 = 0;
    for (i, &ci) in c.iter().enumerate().take(m.saturating_sub(1)) {
        let ci = u64::from(ci);
        let after = (m - 1 - i) as u64;
        if rem > ci {
            pos += binomial(rem - ci - 1 + after, after);
        }
        rem -= ci;
    }
    pos as usize
}

struct Pascal {
    rows: Vec<Vec<u64>>,
}

impl Pascal {
    fn new(max: usize, p: u64) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut row = vec![1 % p; n + 1];
            for k in 1..n {
                row[k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % p;
            }
            rows.push(row);
        }
        Pascal { rows }
    }

    fn get(&self, n: usize, k: usize) -> u64 {
        self.rows[n][k]
    }
}

/// Echelon basis of `J_t` as dense rows over `R_t`.
struct Layer {
    rows: Vec<(usize, Vec<u64>)>,
    full: bool,
}

/// `dim [R/J]_t` for `t = 0..=through`, over `F_prime`.
pub fn cokernel_dims(ideal: &MonomialIdeal, through: usize, prime: u64) -> Vec<usize> {
    let n = ideal.nvars();
    let mut out = vec![1usize];
    if n <= 1 {
        out.resize(through + 1, 0);
        return out;
    }
    let m = n - 1;
    let max_last = ideal
        .generators()
        .iter()
        .map(|g| g.exponents()[m] as usize)
        .max()
        .unwrap_or(0);
    let pascal = Pascal::new(max_last, prime);

    let mut prev = Layer {
        rows: Vec::new(),
        full: false,
    };
    for t in 1..=through {
        if prev.full {
            out.push(0);
            continue;
        }
        let dim = count_of_degree(m, t) as usize;
        let prev_monomials: Vec<_> = monomials_of_degree(m, t - 1).collect();
        // image positions of y_i * (monomial at position k of R_{t-1})
        let shift: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                prev_monomials
                    .iter()
                    .map(|mono| {
                        let mut c = mono.exponents().to_vec();
                        c[i] += 1;
                        lex_position(&c)
                    })
                    .collect()
            })
            .collect();

        let candidates = ideal.generators().iter().filter(|g| g.degree() == t).count();
        let mut elim = Eliminator::new(dim, prev.rows.len() * m + candidates, prime);
        // y_1 * J_{t-1} keeps distinct leading positions under lex order
        let mut deferred = Vec::new();
        for (i, map) in shift.iter().enumerate() {
            for (_, row) in &prev.rows {
                if elim.rank() == dim {
                    break;
                }
                let mut v = vec![0u64; dim];
                for (k, &x) in row.iter().enumerate() {
                    if x != 0 {
                        v[map[k]] = x;
                    }
                }
                if i == 0 {
                    elim.insert_dense(v);
                } else {
                    deferred.push(v);
                }
            }
        }
        for v in deferred {
            if elim.rank() == dim {
                break;
            }
            elim.insert_dense(v);
        }
        for g in ideal.generators().iter().filter(|g| g.degree() == t) {
            if elim.rank() == dim {
                break;
            }
            elim.insert_dense(project_generator(g.exponents(), dim, &pascal, prime));
        }
        let rank = elim.rank();
        out.push(dim - rank);
        prev = Layer {
            rows: elim.into_dense_rows(),
            full: rank == dim,
        };
    }
    out
}

/// Image of `x^g` in `R_{|g|}`: `y^{g'} (-(y_1 + ... + y_m))^{g_n}`.
fn project_generator(g: &[u32], dim: usize, pascal: &Pascal, p: u64) -> Vec<u64> {
    let m = g.len() - 1;
    let s = g[m] as usize;
    let sign_negative = s % 2 == 1;
    let mut v = vec![0u64; dim];
    for c in monomials_of_degree(m, s) {
        let mut coef = 1 % p;
        let mut left = s;
        for &ci in c.exponents() {
            coef = mul_mod(coef, pascal.get(left, ci as usize), p);
            left -= ci as usize;
        }
        if coef == 0 {
            continue;
        }
        if sign_negative {
            coef = p - coef;
        }
        let exps: Vec<u32> = (0..m).map(|i| g[i] + c.exponents()[i]).collect();
        let slot = &mut v[lex_position(&exps)];
        *slot = (*slot + coef) % p;
    }
    v
}
