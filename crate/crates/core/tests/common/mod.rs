//! Randomized properties shared by the property suite and the acceptance
//! runner. Each property takes a case count and reports the first failure.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use trisig::classifier::{candidate_generators, factor_over_generators};
use trisig::hilbert::fsum_polynomial;
use trisig::oracle::graded_basis;
use trisig::poly::DensePoly;
use trisig::{enumerate_candidates, Int, Monomial, Signature};

pub fn candidates4() -> &'static [Signature] {
    static SET: OnceLock<Vec<Signature>> = OnceLock::new();
    SET.get_or_init(|| enumerate_candidates(4).unwrap().signatures)
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Any signature with `n` in `3..=5`, entries in `2..=60`, reciprocal sum below 1.
pub fn arb_signature() -> impl Strategy<Value = Signature> {
    (3usize..=5)
        .prop_flat_map(|n| proptest::collection::vec(2i128..=60, n))
        .prop_filter_map("reciprocal sum >= 1", |p| Signature::derive(&p).ok())
}

/// A random signature of length 4 with defect `1/N`.
pub fn arb_candidate() -> impl Strategy<Value = Signature> {
    (0..candidates4().len()).prop_map(|i| candidates4()[i].clone())
}

/// `m(j + N t) = m(j) + t` for defect `1/N`, and `m(j) + (defect N) t` in general.
pub fn periodicity(cases: u32) -> Result<(), String> {
    run(cases, (arb_candidate(), -1_000_000i64..1_000_000, -1000i64..1000), |(s, j, t)| {
        let lcm = s.lcm() as i64;
        prop_assert_eq!(s.level(j + lcm * t), s.level(j) + Int::from(t));
        Ok(())
    })?;
    run(cases, (arb_signature(), -100_000i64..100_000, -100i64..100), |(s, j, t)| {
        let lcm = i64::try_from(s.lcm()).unwrap();
        let step = *s.defect().numer() * (s.lcm() / *s.defect().denom());
        prop_assert_eq!(s.level(j + lcm * t), s.level(j) + step * Int::from(t));
        Ok(())
    })
}

/// `m(0) = 0`, `m(1) = -(n-1)`, and `-(n-2) <= m(k) <= 0` for `2 <= k < N`.
pub fn range_bounds(cases: u32) -> Result<(), String> {
    run(cases, (arb_candidate(), any::<u64>()), |(s, seed)| {
        let n = s.n() as Int;
        prop_assert_eq!(s.level(0), 0);
        prop_assert_eq!(s.level(1), -(n - 1));
        let lcm = s.lcm() as u64;
        let k = 2 + (seed % (lcm - 2)) as i64;
        let m = s.level(k);
        prop_assert!(-(n - 2) <= m && m <= 0, "m({}) = {} for {}", k, m, s);
        Ok(())
    })
}

/// Offsets satisfy `a_i = -k mod p_i` with `0 <= a_i < p_i`, and the level
/// is `k - sum (k + a_i) / p_i`.
pub fn reduction_consistency(cases: u32) -> Result<(), String> {
    run(cases, (arb_signature(), -100_000i64..100_000), |(s, k)| {
        let class = s.reduced_class(k);
        let kk = Int::from(k);
        let mut ceil_sum = 0;
        for (a, p) in class.offsets.iter().zip(s.exponents()) {
            prop_assert!(0 <= *a && a < p);
            prop_assert_eq!((a + kk).mod_floor(p), 0);
            ceil_sum += (kk + a) / p;
        }
        // k w = k c - k sum X_i, and -k X_i = a_i X_i - ceil(k/p_i) c
        prop_assert_eq!(class.level, kk - ceil_sum);
        prop_assert_eq!(class.level, s.level(k));
        Ok(())
    })
}

/// `monomial_degree(M(k w)) = k - N m(k)` for `0 <= k < N`, so `= k` when `m(k) = 0`.
pub fn degree_round_trip(cases: u32) -> Result<(), String> {
    run(cases, (arb_candidate(), any::<u64>()), |(s, seed)| {
        let k = (seed % s.lcm() as u64) as i64;
        let d = s.monomial_degree(&s.reduced_monomial(k));
        prop_assert_eq!(d, Some(Int::from(k) - s.lcm() * s.level(k)));
        if s.level(k) == 0 {
            prop_assert_eq!(d, Some(Int::from(k)));
        }
        Ok(())
    })
}

/// Closed-form `dim R_k` equals the size of the explicit basis, `k <= 3N`.
pub fn dim_matches_basis(cases: u32) -> Result<(), String> {
    run(cases, (arb_candidate(), any::<u64>()), |(s, seed)| {
        let k = (seed % (3 * s.lcm() as u64 + 1)) as i64;
        prop_assert_eq!(graded_basis(&s, k).unwrap().dim() as Int, s.dim_r::<Int>(k).unwrap());
        Ok(())
    })?;
    run(cases, (arb_signature(), 0i64..400), |(s, k)| {
        prop_assert_eq!(graded_basis(&s, k).unwrap().dim() as Int, s.dim_r::<Int>(k).unwrap());
        Ok(())
    })
}

/// Deterministic sweep: `dim R_k` formula against the basis for every
/// `k <= 3N` on `count` candidates chosen by `seed`.
pub fn dim_sweep(count: usize, seed: u64) -> Result<(), String> {
    let all = candidates4();
    let mut state = seed;
    for _ in 0..count {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let s = &all[(state >> 33) as usize % all.len()];
        for k in 0..=3 * s.lcm() as i64 {
            let counted = graded_basis(s, k).map_err(|e| e.to_string())?.dim() as Int;
            let formula = s.dim_r::<Int>(k).map_err(|e| e.to_string())?;
            if counted != formula {
                return Err(format!("{s}: k = {k}, basis {counted}, formula {formula}"));
            }
        }
    }
    Ok(())
}

fn brute_force_factor(target: &[u64], gens: &[Monomial], from: usize) -> bool {
    if target.iter().all(|&e| e == 0) {
        return true;
    }
    if from == gens.len() {
        return false;
    }
    let g = gens[from].exps();
    if g.iter().all(|&e| e == 0) {
        return brute_force_factor(target, gens, from + 1);
    }
    let mut rest = target.to_vec();
    loop {
        if brute_force_factor(&rest, gens, from + 1) {
            return true;
        }
        if rest.iter().zip(g).any(|(r, e)| r < e) {
            return false;
        }
        for (r, e) in rest.iter_mut().zip(g) {
            *r -= e;
        }
    }
}

fn check_factorization(mono: &Monomial, gens: &[Monomial]) -> Result<(), TestCaseError> {
    match factor_over_generators(mono, gens) {
        Some(mult) => {
            let n = mono.n();
            let product = gens.iter().zip(&mult).fold(Monomial::one(n), |acc, (g, &c)| acc.mul(&g.pow(c)));
            prop_assert_eq!(&product, mono);
        }
        None => prop_assert!(!brute_force_factor(mono.exps(), gens, 0), "missed factorization of {:?}", mono),
    }
    Ok(())
}

/// Every successful factorization multiplies back to the input, and every
/// failure is confirmed by exhaustive search.
pub fn factorization_soundness(cases: u32) -> Result<(), String> {
    run(cases, (arb_candidate(), any::<u64>()), |(s, seed)| {
        let k = (seed % s.lcm() as u64) as i64;
        let mono = s.reduced_monomial(k);
        for choice in candidate_generators(&s).unwrap() {
            check_factorization(&mono, &choice.generators)?;
        }
        Ok(())
    })?;
    let mono = proptest::collection::vec(0u64..12, 3);
    let gens = proptest::collection::vec(proptest::collection::vec(0u64..4, 3), 1..5);
    run(cases, (mono, gens), |(m, g)| {
        let gens: Vec<Monomial> = g.into_iter().map(Monomial::new).collect();
        check_factorization(&Monomial::new(m), &gens)
    })
}

/// `m(a) + m(b) + sum carries = m(a + b)`, hence `m(a) + m(b) <= m(a + b)`.
pub fn superadditivity(cases: u32) -> Result<(), String> {
    run(cases, (arb_signature(), -50_000i64..50_000, -50_000i64..50_000), |(s, a, b)| {
        let ra = s.reduced_class(a);
        let rb = s.reduced_class(b);
        let carries = ra
            .offsets
            .iter()
            .zip(&rb.offsets)
            .zip(s.exponents())
            .filter(|((x, y), p)| *x + *y >= **p)
            .count() as Int;
        prop_assert_eq!(s.level(a) + s.level(b) + carries, s.level(a + b));
        prop_assert!(s.level(a) + s.level(b) <= s.level(a + b));
        Ok(())
    })
}

/// Naive scan of all `p_1 <= .. <= p_4 <= limit` against the enumeration.
pub fn completeness_against_naive(limit: Int) -> Result<(), String> {
    let mut naive = Vec::new();
    for a in 2..=limit {
        for b in a..=limit {
            for c in b..=limit {
                for d in c..=limit {
                    let p = [a, b, c, d];
                    let lcm = p.iter().fold(1, |acc: Int, x| acc.lcm(x));
                    // sum lcm/p_i + 1 = lcm
                    if p.iter().map(|x| lcm / x).sum::<Int>() + 1 == lcm {
                        naive.push(p.to_vec());
                    }
                }
            }
        }
    }
    let listed: Vec<Vec<Int>> = candidates4()
        .iter()
        .filter(|s| s.exponents().iter().all(|&x| x <= limit))
        .map(|s| s.exponents().to_vec())
        .collect();
    if naive == listed {
        Ok(())
    } else {
        Err(format!("naive scan found {} signatures, enumeration {}", naive.len(), listed.len()))
    }
}

/// The first `(n-1)N + 2` coefficients of `fsum / (1 - t^N)^{n-1}` are `dim R_k`.
pub fn truncated_series(cases: u32) -> Result<(), String> {
    let small: Vec<Signature> = candidates4().iter().filter(|s| s.lcm() <= 200).cloned().collect();
    run(cases, 0..small.len(), |i| {
        let s = &small[i];
        let lcm = s.lcm() as usize;
        let len = (s.n() - 1) * lcm + 2;
        let fsum: DensePoly<BigInt> = fsum_polynomial(s).unwrap();
        let mut series = fsum;
        for _ in 0..s.n() - 1 {
            series = series.series_div_one_minus_power(lcm, len).unwrap();
        }
        for k in 0..len {
            let expected: BigInt = s.dim_r(k as i64).unwrap();
            prop_assert_eq!(series.coeff(k), expected, "{} at k = {}", s, k);
        }
        Ok(())
    })
}
