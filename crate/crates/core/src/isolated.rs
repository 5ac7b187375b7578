//! Isolatedness of the singularity at the vertex.
//!
//! The singular locus away from the origin is a union of curves carrying
//! `A_{s-1}` singularities, one for each pair `i < j` with
//! `s = gcd(p_i, p_j) > 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::classifier::{Classification, Verdict};
use crate::error::{Error, Result};
use crate::Int;

/// A curve of `A_{s-1}` singularities along the coordinate plane of the
/// pair `(i, j)`, indices into the sorted exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonIsolatedPair {
    pub i: usize,
    pub j: usize,
    pub s: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatednessReport {
    /// `sum 1/p_i + 1/prod p_i = 1`, evaluated exactly.
    pub fraction_test: bool,
    /// The classifier found the canonical ring to be the whole Fermat ring.
    pub structural_test: bool,
    /// `gcd(p_i, N_i) = 1` for every `i`.
    pub gcd_test: bool,
    pub non_isolated_pairs: Vec<NonIsolatedPair>,
}

impl IsolatednessReport {
    pub fn is_isolated(&self) -> bool {
        self.fraction_test
    }
}

/// Runs the three isolatedness tests and lists the non-isolated loci.
///
/// For a hypersurface verdict the tests must agree; disagreement is an
/// [`Error::Invariant`].
pub fn isolatedness(cls: &Classification) -> Result<IsolatednessReport> {
    let sig = &cls.signature;
    if sig.n() < 4 {
        return Err(Error::Precondition(format!("isolatedness needs n >= 4, got {}", sig.n())));
    }
    let p = sig.exponents();

    let product: BigInt = p.iter().map(|&x| BigInt::from(x)).product();
    let mut total = BigRational::new(BigInt::one(), product);
    for &x in p {
        total += BigRational::new(BigInt::one(), BigInt::from(x));
    }
    let fraction_test = total.is_one();

    let structural_test = match &cls.verdict {
        Verdict::Hypersurface { presentation, .. } => {
            presentation.chosen.is_none() && sig.pure_powers().iter().all(|q| q.is_one())
        }
        _ => false,
    };

    let gcd_test = p.iter().zip(sig.lcms_without()).all(|(pi, ni)| pi.gcd(ni).is_one());

    let mut non_isolated_pairs = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let s = p[i].gcd(&p[j]);
            if s > 1 {
                non_isolated_pairs.push(NonIsolatedPair { i, j, s });
            }
        }
    }

    let report = IsolatednessReport { fraction_test, structural_test, gcd_test, non_isolated_pairs };
    if cls.is_hypersurface()
        && (fraction_test != structural_test
            || fraction_test != gcd_test
            || fraction_test != report.non_isolated_pairs.is_empty())
    {
        return Err(Error::Invariant(format!("isolatedness tests disagree for {sig}: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{classify, Signature};

    fn report(p: &[Int]) -> IsolatednessReport {
        isolatedness(&classify(&Signature::derive(p).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn fermat_ring_is_isolated() {
        let r = report(&[2, 3, 7, 43]);
        assert!(r.fraction_test && r.structural_test && r.gcd_test);
        assert!(r.non_isolated_pairs.is_empty());
    }

    #[test]
    fn shared_factor_gives_a1_family() {
        let r = report(&[2, 3, 7, 44]);
        assert!(!r.fraction_test && !r.structural_test && !r.gcd_test);
        assert_eq!(r.non_isolated_pairs, vec![NonIsolatedPair { i: 0, j: 3, s: 2 }]);
    }

    #[test]
    fn equal_exponents_give_six_pairs() {
        let r = report(&[5, 5, 5, 5]);
        assert!(!r.fraction_test);
        assert_eq!(r.non_isolated_pairs.len(), 6);
        assert!(r.non_isolated_pairs.iter().all(|p| p.s == 5));
    }

    #[test]
    fn not_candidate_still_reports() {
        let r = report(&[2, 3, 7, 50]);
        assert!(!r.fraction_test && !r.structural_test);
        assert_eq!(r.non_isolated_pairs, vec![NonIsolatedPair { i: 0, j: 3, s: 2 }]);
    }

    #[test]
    fn rejects_n3() {
        let s = Signature::derive(&[2, 3, 7]).unwrap();
        let cls = Classification { signature: s, verdict: Verdict::NotCandidate };
        assert!(isolatedness(&cls).is_err());
    }
}
