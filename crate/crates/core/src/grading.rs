//! Arithmetic in the rank-one grading group.
//!
//! A signature `(p_1, ..., p_n)` defines the group generated by classes
//! `X_1, ..., X_n, c` subject to `p_i X_i = c`. Every class has a unique
//! canonical form `level * c + sum a_i X_i` with `0 <= a_i < p_i`. The
//! dualizing class is `w = c - sum X_i`, and the degree-`k` piece of the
//! canonical ring lives in class `k w`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Coeff};
use crate::Int;

/// A signature together with its derived exact invariants.
///
/// Exponents are kept sorted nondecreasing; the order the caller supplied is
/// retained for display only and does not take part in equality.
#[derive(Clone, Debug)]
pub struct Signature {
    exponents: Vec<Int>,
    input: Vec<Int>,
    defect: Ratio<Int>,
    lcm: Int,
    lcm_without: Vec<Int>,
    pure_powers: Vec<Int>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.exponents == other.exponents
    }
}

impl Eq for Signature {}

impl std::hash::Hash for Signature {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.exponents.hash(state);
    }
}

pub(crate) fn checked_lcm(a: Int, b: Int) -> Result<Int> {
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

impl Signature {
    /// Validates `p` and computes the defect `1 - sum 1/p_i`, the lcm `N`,
    /// the partial lcms `N_i` and the pure-power exponents `q_i`.
    pub fn derive(p: &[Int]) -> Result<Self> {
        if p.len() < 3 {
            return Err(Error::TooFewExponents { min: 3, got: p.len() });
        }
        if let Some(bad) = p.iter().find(|&&x| x < 2) {
            return Err(Error::InvalidSignature(format!("exponent {bad} is smaller than 2")));
        }
        let input = p.to_vec();
        let mut exponents = input.clone();
        exponents.sort_unstable();
        let n = exponents.len();

        let mut prefix = vec![Int::one(); n + 1];
        for i in 0..n {
            prefix[i + 1] = checked_lcm(prefix[i], exponents[i])?;
        }
        let mut suffix = vec![Int::one(); n + 1];
        for i in (0..n).rev() {
            suffix[i] = checked_lcm(suffix[i + 1], exponents[i])?;
        }
        let lcm = prefix[n];
        let lcm_without = (0..n)
            .map(|i| checked_lcm(prefix[i], suffix[i + 1]))
            .collect::<Result<Vec<_>>>()?;

        // defect * lcm is always an integer
        let mut scaled = lcm;
        for &x in &exponents {
            scaled -= lcm / x;
        }
        if scaled <= 0 {
            return Err(Error::InvalidSignature(format!(
                "{} has sum of reciprocals >= 1",
                fmt_tuple(&input)
            )));
        }
        let defect = Ratio::new(scaled, lcm);

        // q_i = defect * p_i * N_i = (defect * N) * gcd(p_i, N_i), an integer
        let pure_powers = exponents
            .iter()
            .zip(&lcm_without)
            .map(|(pi, ni)| scaled.checked_mul(pi.gcd(ni)).ok_or(Error::Overflow("pure power exponent")))
            .collect::<Result<Vec<_>>>()?;

        Ok(Signature { exponents, input, defect, lcm, lcm_without, pure_powers })
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// Sorted exponents.
    pub fn exponents(&self) -> &[Int] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> Int {
        self.exponents[i]
    }

    /// Exponents in the order they were supplied.
    pub fn input_order(&self) -> &[Int] {
        &self.input
    }

    /// `1 - sum 1/p_i`, always positive.
    pub fn defect(&self) -> Ratio<Int> {
        self.defect
    }

    /// `N = lcm(p_1, ..., p_n)`.
    pub fn lcm(&self) -> Int {
        self.lcm
    }

    /// `N_i`, the lcm of all exponents except the `i`-th.
    pub fn lcm_without(&self, i: usize) -> Int {
        self.lcm_without[i]
    }

    pub fn lcms_without(&self) -> &[Int] {
        &self.lcm_without
    }

    /// `q_i = defect * p_i * N_i`, the smallest exponent with `X_i^q` in the
    /// canonical ring. Always an integer.
    pub fn pure_power(&self, i: usize) -> Int {
        self.pure_powers[i]
    }

    pub fn pure_powers(&self) -> &[Int] {
        &self.pure_powers
    }

    /// `defect * N`; the class `N w` equals this multiple of `c`.
    fn defect_times_lcm(&self) -> Int {
        *self.defect.numer() * (self.lcm / *self.defect.denom())
    }

    /// Whether the defect equals `1/N`, the necessary condition for a
    /// hypersurface when `n >= 4`.
    pub fn is_candidate(&self) -> bool {
        self.defect_times_lcm() == 1
    }

    /// `m(k)`: the coefficient of `c` in the canonical form of `k w`,
    /// `k - sum ceil(k / p_i)`.
    pub fn level(&self, k: i64) -> Int {
        let k = Int::from(k);
        k - self.exponents.iter().map(|p| Integer::div_ceil(&k, p)).sum::<Int>()
    }

    /// Canonical form of the class `k w`.
    pub fn reduced_class(&self, k: i64) -> LClass {
        let kk = Int::from(k);
        let offsets = self
            .exponents
            .iter()
            .map(|p| p * Integer::div_ceil(&kk, p) - kk)
            .collect();
        LClass { level: self.level(k), offsets }
    }

    /// The reduced monomial `M(k w)`: the `X`-part of the canonical form.
    pub fn reduced_monomial(&self, k: i64) -> Monomial {
        let kk = Int::from(k);
        Monomial::new(
            self.exponents
                .iter()
                .map(|p| (p * Integer::div_ceil(&kk, p) - kk) as u64)
                .collect(),
        )
    }

    /// The degree `d >= 0` with `d w` equal to the class
    /// `level * c + sum offsets_i X_i`, where `0 <= offsets_i < p_i`.
    fn degree_of_class(&self, level: Int, offsets: &[Int]) -> Option<Int> {
        // residue system: j = -offset_i mod p_i for all i
        let mut residue = Int::zero();
        let mut modulus = Int::one();
        for (a, p) in offsets.iter().zip(&self.exponents) {
            let target = (-a).mod_floor(p);
            let eg = modulus.extended_gcd(p);
            let g = eg.gcd;
            let diff = target - residue;
            if diff % g != 0 {
                return None;
            }
            let step = p / g;
            let t = ((diff / g) % step * (eg.x % step)).mod_floor(&step);
            residue += modulus * t;
            modulus *= step;
            residue = residue.mod_floor(&modulus);
        }
        debug_assert_eq!(modulus, self.lcm);
        let j = i64::try_from(residue).ok()?;
        let missing = level - self.level(j);
        let per_period = self.defect_times_lcm();
        if missing % per_period != 0 {
            return None;
        }
        let d = residue + self.lcm * (missing / per_period);
        (d >= 0).then_some(d)
    }

    /// Degree of a reduced monomial in the `w`-grading, or `None` when the
    /// monomial does not lie in the canonical ring.
    pub fn monomial_degree(&self, mono: &Monomial) -> Option<Int> {
        if !mono.is_reduced(self) {
            return None;
        }
        let offsets: Vec<Int> = mono.exps().iter().map(|&e| Int::from(e)).collect();
        self.degree_of_class(0, &offsets)
    }

    /// Degree of an arbitrary monomial. Each `X_i^{p_i}` contributes a
    /// factor of class `c`.
    pub fn weighted_degree(&self, mono: &Monomial) -> Option<Int> {
        if mono.n() != self.n() {
            return None;
        }
        let mut level = Int::zero();
        let mut offsets = Vec::with_capacity(self.n());
        for (&e, &p) in mono.exps().iter().zip(&self.exponents) {
            let e = Int::from(e);
            level += e / p;
            offsets.push(e % p);
        }
        self.degree_of_class(level, &offsets)
    }

    /// `dim R_k = C(m(k) + n - 2, n - 2)` when `m(k) >= 0`, else 0.
    pub fn dim_r<T: Coeff>(&self, k: i64) -> Result<T> {
        if k < 0 {
            return Ok(T::zero());
        }
        let level = self.level(k);
        if level < 0 {
            return Ok(T::zero());
        }
        let r = (self.n() - 2) as u64;
        let top = u64::try_from(level).map_err(|_| Error::Overflow("dimension"))? + r;
        T::from_bigint(&binomial(top, r)).ok_or(Error::Overflow("dimension"))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tuple(&self.input))
    }
}

pub(crate) fn fmt_tuple<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Canonical form `level * c + sum offsets_i X_i` of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LClass {
    pub level: Int,
    pub offsets: Vec<Int>,
}

/// Exponent vector over `X_1, ..., X_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// `X_i^e`.
    pub fn power(n: usize, i: usize, e: u64) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_reduced(&self, sig: &Signature) -> bool {
        self.exps.len() == sig.n() && self.exps.iter().zip(sig.exponents()).all(|(&e, &p)| Int::from(e) < p)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, e: u64) -> Monomial {
        Monomial { exps: self.exps.iter().map(|a| a * e).collect() }
    }

    /// Renders the monomial as a product of named variables, e.g. `XZW^2`.
    pub fn render(&self, names: &[String]) -> String {
        let spaced = names.iter().any(|s| s.chars().count() > 1);
        let mut parts = Vec::new();
        for (e, name) in self.exps.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else if spaced {
            parts.join("*")
        } else {
            parts.concat()
        }
    }
}

/// Display names of the ambient variables: `X, Y, Z, W` up to four
/// variables, `X1, ..., Xn` beyond.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["X", "Y", "Z", "W"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("X{i}")).collect()
    }
}

/// Display names of generator symbols, the lowercase counterparts of
/// [`variable_names`].
pub fn symbol_names(n: usize) -> Vec<String> {
    variable_names(n).into_iter().map(|s| s.to_lowercase()).collect()
}
