use std::collections::HashSet;

use proptest::prelude::*;

use randalg::closed_form::{expected_h_level, expected_vector_level, prob_not_in_ideal};
use randalg::hilbert::{ci_hilbert, graded_basis, hilbert_function, is_log_concave, is_log_concave_real, is_unimodal};
use randalg::models::{build_regime, sample_er_generators, sample_er_ideal, Cap, ErConfig, Regime};
use randalg::monomial::{monomials_of_degree, Monomial, MonomialIdeal, SocleSet};
use randalg::oracle::box_multiples;
use randalg::wlp::{has_wlp, rank_exact, rank_mod_p, MultiplicationMatrix, RankBackend, WlpOptions, DEFAULT_PRIME};

fn exps(n: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, n).prop_filter("non-constant", |e| e.iter().any(|&x| x > 0))
}

fn ideal_strategy(max_n: usize, max_e: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(exps(n, max_e), 1..6)
            .prop_map(move |gens| MonomialIdeal::minimalize(n, gens.iter().map(|g| Monomial::new(g))).unwrap())
    })
}

/// Random ideal made Artinian by adding a pure power of each variable.
fn artinian_strategy(max_n: usize, max_e: u32) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(exps(n, max_e), 0..5),
            prop::collection::vec(1..=max_e, n),
        )
            .prop_map(move |(gens, powers)| {
                let pure = powers.iter().enumerate().map(|(i, &c)| Monomial::pure_power(n, i, c));
                MonomialIdeal::minimalize(n, gens.iter().map(|g| Monomial::new(g)).chain(pure)).unwrap()
            })
    })
}

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

fn all_up_to(n: usize, d: usize) -> impl Iterator<Item = Monomial> {
    (0..=d).flat_map(move |k| monomials_of_degree(n, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimalize_preserves_membership(n in 1usize..=3, gens in prop::collection::vec(prop::collection::vec(0u32..=4, 3), 1..7)) {
        let gens: Vec<Monomial> = gens.iter().map(|g| Monomial::new(&g[..n])).filter(|m| !m.is_constant()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = MonomialIdeal::minimalize(n, gens.clone()).unwrap();
        let again = MonomialIdeal::minimalize(n, ideal.generators().to_vec()).unwrap();
        prop_assert_eq!(&again, &ideal);
        let max_deg = gens.iter().map(Monomial::degree).max().unwrap();
        for m in all_up_to(n, 2 * max_deg) {
            let naive = gens.iter().any(|g| g.exponents().iter().zip(m.exponents()).all(|(a, b)| a <= b));
            prop_assert_eq!(ideal.contains(&m), naive);
        }
    }

    #[test]
    fn intersection_is_conjunction(i in ideal_strategy(3, 4), seed in any::<u64>()) {
        let n = i.nvars();
        let mut rng = randalg::rng::StreamRng::new(seed, 0);
        let other: Vec<Monomial> = (0..3)
            .map(|_| Monomial::new(&(0..n).map(|_| 1 + rng.next_below(4) as u32).collect::<Vec<_>>()))
            .collect();
        let j = MonomialIdeal::minimalize(n, other).unwrap();
        let both = i.intersect(&j).unwrap();
        let sum = i.sum(&j).unwrap();
        for pt in box_points(n, 6) {
            let m = Monomial::new(&pt);
            prop_assert_eq!(both.contains(&m), i.contains(&m) && j.contains(&m));
            prop_assert_eq!(sum.contains(&m), i.contains(&m) || j.contains(&m));
        }
    }

    #[test]
    fn annihilator_duality(n in 2usize..=3, degree in 1usize..=5, mask in any::<u64>()) {
        let pool: Vec<Monomial> = monomials_of_degree(n, degree).collect();
        let members: Vec<Monomial> = pool.iter().enumerate().filter(|(k, _)| mask >> (k % 64) & 1 == 1).map(|(_, m)| m.clone()).collect();
        prop_assume!(!members.is_empty());
        let b = SocleSet::new(n, degree, members.clone()).unwrap();
        let ann = b.annihilator().unwrap();
        for pt in box_points(n, degree as u32) {
            let dominated = members.iter().any(|x| pt.iter().zip(x.exponents()).all(|(a, b)| a <= b));
            prop_assert_eq!(!ann.contains(&Monomial::new(&pt)), dominated);
        }
        let socle = ann.socle_monomials().unwrap();
        let got: HashSet<Monomial> = socle.iter().map(|(_, m)| m.clone()).collect();
        let want: HashSet<Monomial> = members.into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn krull_dim_zero_iff_artinian(i in ideal_strategy(3, 3)) {
        prop_assert_eq!(i.krull_dim() == 0, i.is_artinian());
        prop_assert!(i.krull_dim() <= i.nvars());
    }

    #[test]
    fn socle_is_standard_antichain(i in artinian_strategy(3, 5)) {
        let socle = i.socle_monomials().unwrap();
        prop_assert!(!socle.is_empty());
        for (d, m) in &socle {
            prop_assert_eq!(*d, m.degree());
            prop_assert!(!i.contains(m));
            for k in 0..i.nvars() {
                prop_assert!(i.contains(&m.times_var(k)));
            }
            for (_, o) in &socle {
                prop_assert!(o == m || !m.divides(o).unwrap());
            }
        }
    }

    #[test]
    fn hilbert_total_matches_box(i in artinian_strategy(3, 6)) {
        let n = i.nvars();
        let bound = i.pure_power_box().unwrap();
        let top = *bound.iter().max().unwrap();
        let gens: Vec<Vec<u32>> = i.generators().iter().map(|g| g.exponents().to_vec()).collect();
        let inside = box_multiples(&gens, n, top);
        let standard = box_points(n, top)
            .into_iter()
            .filter(|pt| pt.iter().zip(&bound).all(|(a, b)| a < b))
            .filter(|pt| !inside.contains(pt))
            .count() as u64;
        let h = hilbert_function(&i).unwrap();
        prop_assert_eq!(h.total(), standard);
        prop_assert_eq!(h.get(0), 1);
    }

    #[test]
    fn graded_basis_closed_under_division(i in artinian_strategy(3, 5)) {
        let basis = graded_basis(&i).unwrap();
        prop_assert_eq!(basis.hvector(), hilbert_function(&i).unwrap());
        for d in 1..=basis.top_degree() {
            for m in basis.degree(d) {
                for k in 0..i.nvars() {
                    if m.exponents()[k] > 0 {
                        let mut e = m.exponents().to_vec();
                        e[k] -= 1;
                        prop_assert!(basis.index_of(&Monomial::new(&e)).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn log_concave_positive_implies_unimodal(h in prop::collection::vec(1u64..50, 0..12)) {
        if is_log_concave(&h) {
            prop_assert!(is_unimodal(&h));
        }
    }

    #[test]
    fn ci_hilbert_symmetric(a in prop::collection::vec(0u32..6, 1..5)) {
        let h = ci_hilbert(&a);
        let total: u128 = a.iter().map(|&x| u128::from(x) + 1).product();
        prop_assert_eq!(h.iter().sum::<u128>(), total);
        let rev: Vec<u128> = h.iter().rev().copied().collect();
        prop_assert_eq!(rev, h);
    }

    #[test]
    fn regimes_are_artinian(n in 1usize..=3, d in 1usize..=5, p in 0.0f64..=1.0, seed in any::<u64>(), cap_d in any::<bool>()) {
        let cap = if cap_d { Cap::Degree } else { Cap::DegreePlusOne };
        prop_assume!(!(cap_d && d == 0));
        for regime in [Regime::VarPowers, Regime::MaxPower] {
            let cfg = ErConfig { nvars: n, max_degree: d, p, regime, cap, seed };
            prop_assert!(sample_er_ideal(&cfg, 3).unwrap().is_artinian());
        }
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), stream in any::<u64>()) {
        let cfg = ErConfig { nvars: 3, max_degree: 6, p: 0.2, regime: Regime::Raw, cap: Cap::DegreePlusOne, seed };
        let a = sample_er_generators(&cfg, stream).unwrap();
        prop_assert_eq!(&a, &sample_er_generators(&cfg, stream).unwrap());
        prop_assert_eq!(build_regime(a.clone(), &cfg).unwrap(), sample_er_ideal(&cfg, stream).unwrap());
    }

    #[test]
    fn prob_not_in_ideal_monotone(a in prop::collection::vec(0u32..5, 2..4), d in 1usize..8, p in 0.0f64..0.99, dp in 0.0f64..0.01) {
        let m = Monomial::new(&a);
        let lo = prob_not_in_ideal(&m, d, p).unwrap();
        let hi = prob_not_in_ideal(&m, d, (p + dp).min(1.0)).unwrap();
        prop_assert!(hi <= lo + 1e-15);
        for k in 0..a.len() {
            let bigger = m.times_var(k);
            prop_assert!(prob_not_in_ideal(&bigger, d, p).unwrap() <= lo + 1e-15);
        }
    }

    #[test]
    fn expected_level_log_concave(n in 1usize..=5, d in 1usize..=30, p in 0.0f64..=1.0) {
        let v = expected_vector_level(n, d, p).unwrap();
        prop_assert!(is_log_concave_real(v.values(), 1e-9));
        for j in 1..d {
            let e = |k| expected_h_level(k, n, d, p).unwrap();
            let scale = e(j).powi(2).max(1.0);
            prop_assert!(e(j).powi(2) - e(j - 1) * e(j + 1) >= -1e-9 * scale);
        }
    }

    #[test]
    fn rank_mod_p_below_exact(nr in 1usize..9, nc in 1usize..9, bits in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7, 101, DEFAULT_PRIME])) {
        let dense: Vec<Vec<u8>> = (0..nr).map(|i| (0..nc).map(|j| ((bits >> ((i * 8 + j) % 64)) & 1) as u8).collect()).collect();
        let refs: Vec<&[u8]> = dense.iter().map(Vec::as_slice).collect();
        let m = MultiplicationMatrix::from_dense(&refs);
        let exact = rank_exact(&m);
        prop_assert!(rank_mod_p(&m, p) <= exact);
        prop_assert!(exact <= nr.min(nc));
    }

    #[test]
    fn wlp_verdict_invariants(i in artinian_strategy(4, 4)) {
        for backend in [RankBackend::Matrix, RankBackend::Quotient] {
            let v = has_wlp(&i, &WlpOptions { backend, ..WlpOptions::default() }).unwrap();
            let level = randalg::wlp::is_level(&i).unwrap();
            prop_assert!(v.invariants_hold(level));
            prop_assert_eq!(v.records.len(), v.hvector.len());
            if v.has_wlp {
                prop_assert!(v.hvector.is_unimodal());
            }
            if i.nvars() <= 2 {
                prop_assert!(v.has_wlp);
            }
        }
    }

    #[test]
    fn backends_agree(i in artinian_strategy(4, 5)) {
        let a = has_wlp(&i, &WlpOptions { backend: RankBackend::Matrix, verify_char0: false, ..WlpOptions::default() }).unwrap();
        let b = has_wlp(&i, &WlpOptions { backend: RankBackend::Quotient, verify_char0: false, ..WlpOptions::default() }).unwrap();
        prop_assert_eq!(a.records, b.records);
    }

    #[test]
    fn level_injectivity_persists(n in 3usize..=4, degree in 2usize..=5, mask in any::<u64>()) {
        let members: Vec<Monomial> = monomials_of_degree(n, degree).enumerate().filter(|(k, _)| mask >> (k % 64) & 1 == 1).map(|(_, m)| m).collect();
        prop_assume!(!members.is_empty());
        let ideal = SocleSet::new(n, degree, members).unwrap().annihilator().unwrap();
        let v = has_wlp(&ideal, &WlpOptions::default()).unwrap();
        prop_assert!(v.injectivity_persists_downward());
        prop_assert!(v.surjectivity_persists());
    }
}

#[test]
fn principal_family_strictly_increasing() {
    for d in 1..=5usize {
        for a in monomials_of_degree(3, d) {
            if a.exponents().contains(&0) {
                continue;
            }
            for big_d in d + 2..=d + 4 {
                let gens = std::iter::once(a.clone()).chain(monomials_of_degree(3, big_d));
                let h = hilbert_function(&MonomialIdeal::minimalize(3, gens).unwrap()).unwrap();
                assert!(
                    (1..big_d).all(|k| h.get(k) > h.get(k - 1)),
                    "x^{a} with D = {big_d}: {:?}",
                    h.values()
                );
            }
        }
    }
}

#[test]
fn raw_regime_artinian_rate_increases() {
    // kept proportion across a p-grid, 4 standard errors of slack per step
    let grid = [0.05, 0.15, 0.3, 0.5, 0.8];
    let trials = 400;
    let rates: Vec<f64> = grid
        .iter()
        .map(|&p| {
            let cfg = ErConfig { nvars: 3, max_degree: 5, p, regime: Regime::Raw, cap: Cap::DegreePlusOne, seed: 21 };
            (0..trials).filter(|&s| sample_er_ideal(&cfg, s).unwrap().is_artinian()).count() as f64 / trials as f64
        })
        .collect();
    for w in rates.windows(2) {
        let se = ((w[0] * (1.0 - w[0]) + w[1] * (1.0 - w[1])) / trials as f64).sqrt();
        assert!(w[1] >= w[0] - 4.0 * se.max(1e-9), "{rates:?}");
    }
    assert!(rates[rates.len() - 1] > rates[0]);
}

#[test]
fn complete_intersections_three_variables() {
    for e1 in 1..=4 {
        for e2 in 1..=4 {
            for e3 in 1..=4 {
                let i = MonomialIdeal::minimalize(
                    3,
                    [Monomial::new(&[e1, 0, 0]), Monomial::new(&[0, e2, 0]), Monomial::new(&[0, 0, e3])],
                )
                .unwrap();
                let v = has_wlp(&i, &WlpOptions::default()).unwrap();
                assert!(v.has_wlp && v.tier == randalg::wlp::Tier::Char0Verified);
                let h = hilbert_function(&i).unwrap();
                let ci: Vec<u64> = ci_hilbert(&[e1 - 1, e2 - 1, e3 - 1]).iter().map(|&x| x as u64).collect();
                assert_eq!(h.values(), &ci[..]);
            }
        }
    }
}
