//! Dense univariate and sparse multivariate polynomials over a [`Coeff`] ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Dense univariate polynomial, coefficient `i` is the coefficient of `t^i`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> DensePoly<T> {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly { coeffs: vec![T::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = DensePoly { coeffs };
        p.trim();
        p
    }

    /// Zero polynomial with room for terms up to `degree`.
    pub fn with_capacity(degree: usize) -> Self {
        DensePoly { coeffs: Vec::with_capacity(degree + 1) }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> T {
        self.coeffs.get(d).cloned().unwrap_or_else(T::zero)
    }

    /// Adds `c * t^d` in place.
    pub fn add_term(&mut self, d: usize, c: &T) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if self.coeffs.len() <= d {
            self.coeffs.resize(d + 1, T::zero());
        }
        self.coeffs[d] = self.coeffs[d].add_checked(c)?;
        self.trim();
        Ok(())
    }

    /// Multiplies in place by `1 - t^shift`.
    pub fn mul_one_minus_power(&mut self, shift: usize) -> Result<()> {
        if self.is_zero() {
            return Ok(());
        }
        if shift == 0 {
            self.coeffs.clear();
            return Ok(());
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + shift, T::zero());
        for d in (shift..self.coeffs.len()).rev() {
            let lower = self.coeffs[d - shift].clone();
            if !lower.is_zero() {
                self.coeffs[d] = self.coeffs[d].sub_checked(&lower)?;
            }
        }
        self.trim();
        Ok(())
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_checked(&a.mul_checked(b)?)?;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    /// `(1 - t^shift)^exp`, expanded.
    pub fn one_minus_power_pow(shift: usize, exp: u32) -> Result<Self> {
        let mut p = Self::one();
        for _ in 0..exp {
            p.mul_one_minus_power(shift)?;
        }
        Ok(p)
    }

    /// Power series `self / (1 - t^shift)` truncated to degrees `< len`.
    pub fn series_div_one_minus_power(&self, shift: usize, len: usize) -> Result<Self> {
        if shift == 0 {
            return Err(Error::Precondition("division by 1 - t^0".into()));
        }
        let mut out: Vec<T> = (0..len).map(|d| self.coeff(d)).collect();
        for d in shift..len {
            let lower = out[d - shift].clone();
            out[d] = out[d].add_checked(&lower)?;
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn coeff_sum(&self) -> Result<T> {
        self.coeffs.iter().try_fold(T::zero(), |acc, c| acc.add_checked(c))
    }

    /// Number of nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<T: Coeff> fmt::Display for DensePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{d}")?,
                _ => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u64>, T>,
}

impl<T: Coeff> SparsePoly<T> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<u64>, c: T) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic order of exponent vectors, so the
    /// first variable dominates.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &T)> {
        self.terms.iter().rev()
    }

    pub fn add_term(&mut self, exps: Vec<u64>, c: &T) -> Result<()> {
        if exps.len() != self.nvars {
            return Err(Error::Precondition(format!(
                "exponent vector of length {} in a {}-variable polynomial",
                exps.len(),
                self.nvars
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&exps) {
            Some(old) => old.add_checked(c)?,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &ca.mul_checked(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u64) -> Result<Self> {
        let mut out = Self::monomial(vec![0; self.nvars], T::one());
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Renames variables: variable `v` becomes variable `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (v, x) in e.iter().enumerate() {
                ne[perm[v]] = *x;
            }
            terms.insert(ne, c.clone());
        }
        SparsePoly { nvars: self.nvars, terms }
    }

    /// The common weighted degree of all terms, if the polynomial is
    /// weighted homogeneous and nonzero.
    pub fn weighted_degree(&self, weights: &[i128]) -> Option<i128> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(x, w)| *x as i128 * w).sum::<i128>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// Componentwise minimum of exponent vectors.
pub(crate) fn exps_gcd<'a>(mut it: impl Iterator<Item = &'a Vec<u64>>) -> Option<Vec<u64>> {
    let mut acc = it.next()?.clone();
    for e in it {
        for (a, x) in acc.iter_mut().zip(e) {
            *a = (*a).min(*x);
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn dense_mul_one_minus_power() {
        let mut p = DensePoly::<i64>::from_coeffs(vec![1, 1]);
        p.mul_one_minus_power(2).unwrap();
        assert_eq!(p.coeffs(), &[1, 1, -1, -1]);
        let q = DensePoly::<i64>::one_minus_power_pow(1, 3).unwrap();
        assert_eq!(q.coeffs(), &[1, -3, 3, -1]);
    }

    #[test]
    fn dense_trim_and_degree() {
        let p = DensePoly::<i64>::from_coeffs(vec![0, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(DensePoly::<i64>::zero().degree(), None);
        let mut z = DensePoly::<i64>::zero();
        z.add_term(4, &3).unwrap();
        z.add_term(4, &-3).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn series_division_inverts_multiplication() {
        let p = DensePoly::<BigInt>::from_coeffs(vec![BigInt::from(2), BigInt::from(-1), BigInt::from(5)]);
        let mut q = p.clone();
        q.mul_one_minus_power(3).unwrap();
        let back = q.series_div_one_minus_power(3, 20).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn dense_product_matches_shift_form() {
        let p = DensePoly::<i128>::from_coeffs(vec![1, 2, 3]);
        let mut a = p.clone();
        a.mul_one_minus_power(4).unwrap();
        let b = p.mul(&DensePoly::from_coeffs(vec![1, 0, 0, 0, -1])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dense_overflow_is_an_error() {
        let mut p = DensePoly::<i32>::from_coeffs(vec![i32::MIN, 0, 1]);
        assert!(p.mul_one_minus_power(2).is_err());
    }

    #[test]
    fn sparse_ops() {
        let x = SparsePoly::<i64>::monomial(vec![1, 0], 1);
        let y = SparsePoly::<i64>::monomial(vec![0, 1], 1);
        let s = x.add(&y).unwrap();
        let sq = s.pow(2).unwrap();
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.weighted_degree(&[1, 1]), Some(2));
        assert_eq!(sq.weighted_degree(&[1, 2]), None);
        assert!(sq.sub(&sq).unwrap().is_zero());
        let swapped = x.permute(&[1, 0]);
        assert_eq!(swapped, y);
        let first: Vec<_> = sq.terms().map(|(e, _)| e.clone()).collect();
        assert_eq!(first[0], vec![2, 0]);
    }
}
