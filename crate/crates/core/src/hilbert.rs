//! Hilbert series of the canonical ring and the identities that certify a
//! hypersurface presentation.
//!
//! When the defect is `1/N`, `(1 - t^N)^{n-1} F(t)` collapses to the finite
//! sum `sum_{j=0}^{N-1} t^{j - N m(j)}` ("fsum"). A presentation with
//! generator weights `a_j` and relation degree `h` has
//! `F(t) = (1 - t^h) / prod (1 - t^{a_j})`, so it is correct exactly when
//! `fsum * prod (1 - t^{a_j}) = (1 - t^h) (1 - t^N)^{n-1}`. All checks are
//! finite polynomial identities over exact integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::grading::Signature;
use crate::poly::DensePoly;
use crate::scalar::{binomial, Coeff};
use crate::Int;

/// `dim R_k`, the `k`-th coefficient of the Hilbert series.
pub fn hilbert_coefficient<T: Coeff>(sig: &Signature, k: i64) -> Result<T> {
    sig.dim_r(k)
}

fn require_candidate(sig: &Signature) -> Result<()> {
    if sig.is_candidate() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{sig} does not have defect 1/N")))
    }
}

fn to_usize(v: Int, what: &'static str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Overflow(what))
}

fn lcm_as_i64(sig: &Signature) -> Result<i64> {
    i64::try_from(sig.lcm()).map_err(|_| Error::Overflow("lcm exceeds 64 bits"))
}

/// `sum_{j=0}^{N-1} t^{j - N m(j)}`, collected.
pub fn fsum_polynomial<T: Coeff>(sig: &Signature) -> Result<DensePoly<T>> {
    fsum_with_room(sig, 0)
}

/// fsum with spare capacity for `extra` more degrees, so later products by
/// `1 - t^a` do not reallocate.
fn fsum_with_room<T: Coeff>(sig: &Signature, extra: Int) -> Result<DensePoly<T>> {
    require_candidate(sig)?;
    let top = (sig.n() as Int - 1) * sig.lcm() + 1;
    let mut p = DensePoly::with_capacity(to_usize(top + extra, "series degree")?);
    fill_fsum(sig, &mut p)?;
    Ok(p)
}

fn fill_fsum<T: Coeff>(sig: &Signature, p: &mut DensePoly<T>) -> Result<()> {
    let lcm = lcm_as_i64(sig)?;
    let one = T::one();
    for j in 0..lcm {
        let e = Int::from(j) - sig.lcm() * sig.level(j);
        p.add_term(to_usize(e, "series degree")?, &one)?;
    }
    Ok(())
}

/// `(1 - t^h)(1 - t^N)^{n-1}` as a sparse map from degree to coefficient.
fn product_side<T: Coeff>(sig: &Signature, h: usize) -> Result<BTreeMap<usize, T>> {
    let lcm = to_usize(sig.lcm(), "lcm")?;
    let e = (sig.n() - 1) as u64;
    let mut out: BTreeMap<usize, T> = BTreeMap::new();
    for i in 0..=e {
        let mut c = T::from_bigint(&binomial(e, i)).ok_or(Error::Overflow("binomial"))?;
        if i % 2 == 1 {
            c = -c;
        }
        let d = lcm.checked_mul(i as usize).ok_or(Error::Overflow("series degree"))?;
        for (deg, sign) in [(d, c.clone()), (d + h, -c)] {
            let entry = out.entry(deg).or_insert_with(T::zero);
            *entry = entry.add_checked(&sign)?;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn matches_sparse<T: Coeff>(dense: &DensePoly<T>, sparse: &BTreeMap<usize, T>) -> bool {
    let len = dense.coeffs().len();
    if sparse.keys().any(|&d| d >= len) {
        return false;
    }
    dense.coeffs().iter().enumerate().all(|(d, c)| match sparse.get(&d) {
        Some(s) => s == c,
        None => c.is_zero(),
    })
}

/// Checks `fsum * prod (1 - t^{a_j}) = (1 - t^h)(1 - t^N)^{n-1}` exactly,
/// with coefficients in `T`.
pub fn verify_hypersurface_identity_in<T: Coeff>(sig: &Signature, weights: &[Int], h: Int) -> Result<bool> {
    require_candidate(sig)?;
    if weights.len() != sig.n() || weights.iter().any(|&a| a <= 0) || h <= 0 {
        return Ok(false);
    }
    let mut lhs = fsum_with_room::<T>(sig, weights.iter().sum())?;
    for &a in weights {
        lhs.mul_one_minus_power(to_usize(a, "weight")?)?;
    }
    Ok(matches_sparse(&lhs, &product_side(sig, to_usize(h, "relation degree")?)?))
}

/// [`verify_hypersurface_identity_in`] over checked 128-bit integers.
pub fn verify_hypersurface_identity(sig: &Signature, weights: &[Int], h: Int) -> Result<bool> {
    verify_hypersurface_identity_in::<Int>(sig, weights, h)
}

/// `a = h - sum a_j`.
pub fn a_invariant(weights: &[Int], h: Int) -> Int {
    h - weights.iter().sum::<Int>()
}

/// `h * N^{n-2} = prod a_j`, in arbitrary precision.
pub fn weight_product_identity(sig: &Signature, weights: &[Int], h: Int) -> bool {
    let lhs = BigInt::from(h) * num_traits::pow(BigInt::from(sig.lcm()), sig.n() - 2);
    let rhs: BigInt = weights.iter().map(|&a| BigInt::from(a)).product();
    lhs == rhs
}

/// Compares `(1 - t^h) / prod (1 - t^{a_j})` with `dim R_k` for `k <= up_to`.
/// Needs no assumption on the defect.
pub fn series_agrees_termwise(sig: &Signature, weights: &[Int], h: Int, up_to: usize) -> Result<bool> {
    let len = up_to + 1;
    let mut series = DensePoly::<BigInt>::one();
    series.mul_one_minus_power(to_usize(h, "relation degree")?)?;
    for &a in weights {
        series = series.series_div_one_minus_power(to_usize(a, "weight")?, len)?;
    }
    for k in 0..len {
        let expected: BigInt = sig.dim_r(k as i64)?;
        if series.coeff(k) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of each identity check on a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateChecks {
    pub hypersurface_identity: bool,
    pub fsum_degree: bool,
    pub fsum_coeff_sum: bool,
    pub a_invariant_one: bool,
    pub weight_product: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.hypersurface_identity
            && self.fsum_degree
            && self.fsum_coeff_sum
            && self.a_invariant_one
            && self.weight_product
    }
}

/// Series data backing a hypersurface verdict. The fsum polynomial itself
/// is summarized (it has `(n-1)N + 2` coefficients) and can be recomputed
/// with [`fsum_polynomial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCertificate {
    pub fsum_degree: Int,
    pub fsum_coeff_sum: Int,
    pub h: Int,
    pub weights: Vec<Int>,
    pub checks: CertificateChecks,
}

/// Runs every series identity for a proposed presentation.
pub fn certify(sig: &Signature, weights: &[Int], h: Int) -> Result<SeriesCertificate> {
    require_candidate(sig)?;
    let extra = weights.iter().filter(|&&a| a > 0).sum();
    let mut poly = fsum_with_room::<Int>(sig, extra)?;
    let fsum_degree = poly.degree().map(|d| d as Int).unwrap_or(-1);
    let fsum_coeff_sum = poly.coeff_sum()?;

    let valid_shape = weights.len() == sig.n() && weights.iter().all(|&a| a > 0) && h > 0;
    let hypersurface_identity = if valid_shape {
        for &a in weights {
            poly.mul_one_minus_power(to_usize(a, "weight")?)?;
        }
        matches_sparse(&poly, &product_side(sig, to_usize(h, "relation degree")?)?)
    } else {
        false
    };

    let checks = CertificateChecks {
        hypersurface_identity,
        fsum_degree: fsum_degree == (sig.n() as Int - 1) * sig.lcm() + 1,
        fsum_coeff_sum: fsum_coeff_sum == sig.lcm(),
        a_invariant_one: a_invariant(weights, h).is_one(),
        weight_product: weight_product_identity(sig, weights, h),
    };
    Ok(SeriesCertificate { fsum_degree, fsum_coeff_sum, h, weights: weights.to_vec(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: &[Int]) -> Signature {
        Signature::derive(p).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let s = sig(&[2, 3, 7, 43]);
        assert_eq!(hilbert_coefficient::<Int>(&s, 0).unwrap(), 1);
        assert_eq!(hilbert_coefficient::<Int>(&s, 42).unwrap(), 1);
        assert_eq!(hilbert_coefficient::<Int>(&s, 1806).unwrap(), 3);
    }

    #[test]
    fn fsum_of_5555() {
        // m(j) for j = 0..4 is 0, -3, -2, -1, 0
        let p = fsum_polynomial::<Int>(&sig(&[5, 5, 5, 5])).unwrap();
        let mut expected = vec![0; 17];
        for e in [0, 16, 12, 8, 4] {
            expected[e] += 1;
        }
        assert_eq!(p.coeffs(), &expected[..]);
        assert_eq!(p.degree(), Some(16));
        assert_eq!(p.coeff_sum().unwrap(), 5);
    }

    #[test]
    fn fsum_rejects_non_candidate() {
        assert!(matches!(fsum_polynomial::<Int>(&sig(&[2, 3, 7, 50])), Err(Error::Precondition(_))));
    }

    #[test]
    fn identity_examples() {
        let s = sig(&[2, 3, 7, 43]);
        assert!(verify_hypersurface_identity(&s, &[903, 602, 258, 42], 1806).unwrap());
        assert!(!verify_hypersurface_identity(&s, &[904, 602, 258, 42], 1806).unwrap());
        let s = sig(&[5, 5, 5, 5]);
        assert!(verify_hypersurface_identity(&s, &[5, 5, 5, 4], 20).unwrap());
        assert!(verify_hypersurface_identity_in::<BigInt>(&s, &[5, 5, 5, 4], 20).unwrap());
        assert!(!verify_hypersurface_identity(&s, &[5, 5, 5, 4], 21).unwrap());
    }

    #[test]
    fn a_invariant_examples() {
        assert_eq!(a_invariant(&[903, 602, 258, 42], 1806), 1);
        assert_eq!(a_invariant(&[60, 24, 20, 15], 120), 1);
        assert_eq!(a_invariant(&[3, 4, 5], 12), 0);
    }

    #[test]
    fn weight_product_examples() {
        let s = sig(&[2, 3, 7, 43]);
        assert!(weight_product_identity(&s, &[903, 602, 258, 42], 1806));
        let s = sig(&[4, 4, 4, 5]);
        assert!(weight_product_identity(&s, &[20, 20, 15, 4], 60));
        assert!(!weight_product_identity(&s, &[20, 20, 15, 4], 61));
    }

    #[test]
    fn termwise_series_for_triangle_case() {
        // (2,3,7) with weights (21,14,6;42)
        let s = sig(&[2, 3, 7]);
        assert!(series_agrees_termwise(&s, &[21, 14, 6], 42, 200).unwrap());
        assert!(!series_agrees_termwise(&s, &[21, 14, 7], 42, 200).unwrap());
    }

    #[test]
    fn certificate_flags() {
        let s = sig(&[2, 3, 7, 44]);
        let c = certify(&s, &[483, 308, 132, 42], 966).unwrap();
        assert!(c.checks.all(), "{c:?}");
        assert_eq!(c.fsum_degree, 3 * 924 + 1);
        let c = certify(&s, &[483, 308, 132, 42], 967).unwrap();
        assert!(!c.checks.hypersurface_identity);
        assert!(!c.checks.a_invariant_one);
    }
}
