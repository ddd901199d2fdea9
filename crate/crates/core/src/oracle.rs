//! Brute-force reference computations used to cross-check the fast paths.
//!
//! Nothing here shares code with the routines it checks beyond monomial
//! enumeration: membership is tested by raw componentwise comparison,
//! expectations by summing over every subset, and ranks by Gaussian
//! elimination over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::closed_form::{expected_h_er, expected_h_level};
use crate::hilbert::{graded_basis, hilbert_function};
use crate::models::{Cap, Regime};
use crate::monomial::{monomials_of_degree, monomials_up_to, Monomial, MonomialIdeal, SocleSet};
use crate::rng::StreamRng;
use crate::wlp::{has_wlp, multiplication_matrix, rank_exact, rank_mod_p, MultiplicationMatrix, RankBackend, WlpOptions, DEFAULT_PRIME};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_span(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Every monomial in `[0, bound]^n` reachable as `g * x^c` for a generator.
pub fn box_multiples(gens: &[Vec<u32>], n: usize, bound: u32) -> std::collections::HashSet<Vec<u32>> {
    let mut out = std::collections::HashSet::new();
    for g in gens {
        if g.iter().any(|&e| e > bound) {
            continue;
        }
        let mut c = g.clone();
        loop {
            out.insert(c.clone());
            // odometer over the box above g
            let mut i = 0;
            while i < n {
                if c[i] < bound {
                    c[i] += 1;
                    break;
                }
                c[i] = g[i];
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out
}

/// All of `[0, bound]^n`.
fn box_points(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=bound).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    pts
}

fn regime_generators(subset: &[Vec<u32>], n: usize, regime: Regime, c: u32) -> Vec<Vec<u32>> {
    let mut gens = subset.to_vec();
    match regime {
        Regime::Raw => {}
        Regime::VarPowers => {
            for i in 0..n {
                let mut e = vec![0; n];
                e[i] = c;
                gens.push(e);
            }
        }
        Regime::MaxPower => gens.extend(monomials_of_degree(n, c as usize).map(|m| m.exponents().to_vec())),
    }
    gens
}

/// `E[h_d]` for `d = 0..=top` by summing over all `2^|Mon_{<=D}|` generator
/// sets with their probabilities.
pub fn er_expectation_oracle(n: usize, max_degree: usize, p: f64, regime: Regime, cap: Cap, top: usize) -> Vec<f64> {
    let pool: Vec<Vec<u32>> = monomials_up_to(n, max_degree).map(|m| m.exponents().to_vec()).collect();
    assert!(pool.len() < 24, "exhaustive oracle limited to small pools");
    let c = cap.exponent(max_degree) as u32;
    let by_degree: Vec<Vec<Vec<u32>>> = (0..=top)
        .map(|d| monomials_of_degree(n, d).map(|m| m.exponents().to_vec()).collect())
        .collect();
    let mut out = vec![0.0; top + 1];
    for mask in 0u32..(1 << pool.len()) {
        let chosen: Vec<Vec<u32>> = (0..pool.len())
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| pool[k].clone())
            .collect();
        let k = chosen.len() as i32;
        let weight = p.powi(k) * (1.0 - p).powi(pool.len() as i32 - k);
        let gens = regime_generators(&chosen, n, regime, c);
        for (d, layer) in by_degree.iter().enumerate() {
            let standard = layer.iter().filter(|m| !in_span(&gens, m)).count();
            out[d] += weight * standard as f64;
        }
    }
    out
}

/// `E[h_j]` of `S/Ann(B)`, `B` a Bernoulli subset of `Mon(n, D)`, summing
/// over every subset; the empty subset contributes zero.
pub fn level_expectation_oracle(n: usize, degree: usize, p: f64) -> Vec<f64> {
    let pool: Vec<Vec<u32>> = monomials_of_degree(n, degree).map(|m| m.exponents().to_vec()).collect();
    assert!(pool.len() < 24, "exhaustive oracle limited to small pools");
    let mut out = vec![0.0; degree + 1];
    for mask in 0u32..(1 << pool.len()) {
        let chosen: Vec<&Vec<u32>> = (0..pool.len()).filter(|&k| mask >> k & 1 == 1).map(|k| &pool[k]).collect();
        let k = chosen.len() as i32;
        let weight = p.powi(k) * (1.0 - p).powi(pool.len() as i32 - k);
        for (j, slot) in out.iter_mut().enumerate() {
            // standard monomials of the annihilator are divisors of members
            let standard = monomials_of_degree(n, j)
                .filter(|m| chosen.iter().any(|b| divides(m.exponents(), b)))
                .count();
            *slot += weight * standard as f64;
        }
    }
    out
}

/// Rank over the rationals by textbook Gauss-Jordan elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = BigRational::one() / a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot) {
                    *x -= &f * pv;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of one oracle suite.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_ideal(rng: &mut StreamRng, n: usize, bound: u32, artinian: bool) -> MonomialIdeal {
    let k = 1 + rng.next_below(5) as usize;
    let mut gens: Vec<Monomial> = (0..k)
        .map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.next_below(u64::from(bound) + 1) as u32).collect();
            Monomial::new(&e)
        })
        .filter(|m| !m.is_constant())
        .collect();
    if artinian {
        for i in 0..n {
            let c = 1 + rng.next_below(u64::from(bound)) as u32;
            gens.push(Monomial::pure_power(n, i, c));
        }
    }
    if gens.is_empty() {
        gens.push(Monomial::pure_power(n, 0, 1));
    }
    MonomialIdeal::minimalize(n, gens).expect("non-constant generators")
}

/// Membership, Hilbert function, socle and annihilator against the box.
pub fn membership_suite(trials: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("membership");
    for t in 0..trials {
        let mut rng = StreamRng::new(seed, t as u64);
        let n = 1 + (t % 3);
        let bound = 4;
        let ideal = random_ideal(&mut rng, n, bound, t % 2 == 0);
        let gens: Vec<Vec<u32>> = ideal.generators().iter().map(|g| g.exponents().to_vec()).collect();
        let multiples = box_multiples(&gens, n, bound + 1);
        for pt in box_points(n, bound + 1) {
            let m = Monomial::new(&pt);
            rep.check(ideal.contains(&m) == multiples.contains(&pt), || {
                format!("membership of {m} in trial {t}")
            });
        }
        if ideal.is_artinian() {
            // every standard monomial lies inside the box of pure powers
            let h = hilbert_function(&ideal).expect("artinian");
            let pts = box_points(n, bound + 1);
            let mut counts = vec![0u64; h.len() + 1];
            let mut socle = 0usize;
            for pt in &pts {
                if multiples.contains(pt) {
                    continue;
                }
                let d: usize = pt.iter().map(|&e| e as usize).sum();
                if d < counts.len() {
                    counts[d] += 1;
                }
                let is_socle = (0..n).all(|i| {
                    let mut q = pt.clone();
                    q[i] += 1;
                    in_span(&gens, &q)
                });
                socle += usize::from(is_socle);
            }
            rep.check(counts[..h.len()] == *h.values() && counts[h.len()] == 0, || {
                format!("hilbert function in trial {t}")
            });
            let s = ideal.socle_monomials().expect("artinian");
            rep.check(s.len() == socle, || format!("socle size in trial {t}"));
        }
    }
    // annihilators: standard monomials are exactly divisors of members
    for t in 0..trials {
        let mut rng = StreamRng::new(seed ^ 0xa5a5, t as u64);
        let n = 2 + (t % 2);
        let degree = 1 + rng.next_below(4) as usize;
        let pool: Vec<Monomial> = monomials_of_degree(n, degree).collect();
        let members: Vec<Monomial> = pool.iter().filter(|_| rng.bernoulli(0.4)).cloned().collect();
        if members.is_empty() {
            continue;
        }
        let b = SocleSet::new(n, degree, members.clone()).expect("valid socle");
        let ann = b.annihilator().expect("non-empty");
        for d in 0..=degree + 1 {
            for m in monomials_of_degree(n, d) {
                let divisor = members.iter().any(|x| divides(m.exponents(), x.exponents()));
                rep.check(ann.contains(&m) != divisor, || format!("annihilator membership of {m}"));
            }
        }
        let socle = ann.socle_monomials().expect("artinian");
        rep.check(socle.iter().all(|(d, _)| *d == degree) && socle.len() == members.len(), || {
            format!("annihilator socle in trial {t}")
        });
    }
    rep
}

const P_GRID: [f64; 3] = [0.25, 0.5, 0.75];

fn regime_top(n: usize, max_degree: usize, regime: Regime, cap: Cap) -> usize {
    let c = cap.exponent(max_degree);
    match regime {
        Regime::Raw => 2 * max_degree + 2,
        Regime::VarPowers => n * (c - 1) + 1,
        Regime::MaxPower => c,
    }
}

/// Closed forms against exhaustive subset sums, absolute tolerance `tol`.
pub fn expectation_suite(tol: f64) -> SuiteReport {
    let mut rep = SuiteReport::new("expectation");
    for max_degree in [2, 3] {
        for regime in [Regime::Raw, Regime::VarPowers, Regime::MaxPower] {
            for cap in [Cap::DegreePlusOne, Cap::Degree] {
                for p in P_GRID {
                    let top = regime_top(2, max_degree, regime, cap);
                    let oracle = er_expectation_oracle(2, max_degree, p, regime, cap, top);
                    for (d, &want) in oracle.iter().enumerate().skip(1) {
                        let got = expected_h_er(d, 2, max_degree, p, regime, cap).expect("valid");
                        rep.check((got - want).abs() <= tol, || {
                            format!("E h_{d} for n=2 D={max_degree} p={p} {} cap {}: {got} vs {want}", regime.name(), cap.name())
                        });
                    }
                }
            }
        }
    }
    for (n, degree) in [(2, 3), (3, 2)] {
        for p in P_GRID {
            let oracle = level_expectation_oracle(n, degree, p);
            for (j, &want) in oracle.iter().enumerate() {
                let got = expected_h_level(j, n, degree, p).expect("valid");
                rep.check((got - want).abs() <= tol, || {
                    format!("level E h_{j} for n={n} D={degree} p={p}: {got} vs {want}")
                });
            }
        }
    }
    rep
}

/// Exact and modular ranks against rational elimination, and the two WLP
/// rank backends against each other.
pub fn rank_suite(trials: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("rank");
    for t in 0..trials {
        let mut rng = StreamRng::new(seed, t as u64);
        let nr = 1 + rng.next_below(8) as usize;
        let nc = 1 + rng.next_below(8) as usize;
        let density = [0.2, 0.5, 0.8][t % 3];
        let dense: Vec<Vec<u8>> = (0..nr)
            .map(|_| (0..nc).map(|_| u8::from(rng.bernoulli(density))).collect())
            .collect();
        let refs: Vec<&[u8]> = dense.iter().map(Vec::as_slice).collect();
        let m = MultiplicationMatrix::from_dense(&refs);
        let ints: Vec<Vec<i64>> = dense.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
        let truth = rational_rank(&ints);
        let exact = rank_exact(&m);
        rep.check(exact == truth, || format!("exact rank {exact} vs {truth} in trial {t}"));
        for p in [2, 3, 5, DEFAULT_PRIME] {
            let r = rank_mod_p(&m, p);
            rep.check(r <= truth, || format!("rank mod {p} exceeds rational rank in trial {t}"));
        }
        rep.check(rank_mod_p(&m, DEFAULT_PRIME) == truth, || format!("large prime rank in trial {t}"));
    }
    for t in 0..trials {
        let mut rng = StreamRng::new(seed ^ 0x5a5a, t as u64);
        let n = 2 + (t % 3);
        let ideal = random_ideal(&mut rng, n, 4, true);
        let basis = graded_basis(&ideal).expect("artinian");
        let opts = |backend| WlpOptions {
            backend,
            ..WlpOptions::default()
        };
        let a = has_wlp(&ideal, &opts(RankBackend::Matrix)).expect("artinian");
        let b = has_wlp(&ideal, &opts(RankBackend::Quotient)).expect("artinian");
        let ranks = |v: &crate::wlp::WlpVerdict| v.records.iter().map(|r| r.rank).collect::<Vec<_>>();
        rep.check(ranks(&a) == ranks(&b), || format!("backends disagree on trial {t}"));
        for d in 0..=basis.top_degree() {
            let mm = multiplication_matrix(&basis, d).expect("in range");
            if mm.nrows().min(mm.ncols()) <= 12 {
                let dense: Vec<Vec<i64>> = mm.to_dense().iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
                rep.check(a.records[d].rank == rational_rank(&dense), || {
                    format!("verdict rank at degree {d} in trial {t}")
                });
            }
        }
    }
    rep
}

/// The three suites at desk-check size.
pub fn run_small_suite() -> Vec<SuiteReport> {
    vec![
        membership_suite(60, 1),
        expectation_suite(1e-12),
        rank_suite(80, 2),
    ]
}
