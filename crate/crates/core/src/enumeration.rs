//! Exhaustive search for signatures with `sum 1/p_i + 1/lcm(p) = 1`.
//!
//! With `p_1 <= ... <= p_n` and residual `r = 1 - sum_{j<i} 1/p_j`, every
//! remaining term and `1/N` are at most `1/p_i`, so
//! `1/r < p_i <= (n - i + 2)/r`. At the last position
//! `1/p_n < r <= 2/p_n`, and the equation is tested exactly with the true lcm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedSub, One, Zero};

use crate::error::{Error, Result};
use crate::grading::{checked_lcm, Signature};
use crate::Int;

/// All signatures of length `n` whose defect is `1/N`, in ascending
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub n: usize,
    pub signatures: Vec<Signature>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.signatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signatures.is_empty()
    }
}

type Q = Ratio<Int>;

fn floor_div_by(numer: Int, r: &Q) -> Int {
    // floor(numer / r)
    Integer::div_floor(&(numer * r.denom()), r.numer())
}

struct Search {
    n: usize,
    prefix: Vec<Int>,
    found: Vec<Vec<Int>>,
}

impl Search {
    fn descend(&mut self, residual: Q, lcm: Int) -> Result<()> {
        let i = self.prefix.len(); // 0-based position
        let floor = self.prefix.last().copied().unwrap_or(2);
        let lo = floor.max(floor_div_by(1, &residual) + 1);
        if i + 1 == self.n {
            let hi = floor_div_by(2, &residual);
            for p in lo..=hi {
                let total = checked_lcm(lcm, p)?;
                let lhs = Q::new(1, p) + Q::new(1, total);
                if lhs == residual {
                    let mut sig = self.prefix.clone();
                    sig.push(p);
                    self.found.push(sig);
                }
            }
            return Ok(());
        }
        let remaining = (self.n - i + 1) as Int;
        let hi = floor_div_by(remaining, &residual);
        for p in lo..=hi {
            let next = residual
                .checked_sub(&Q::new(1, p))
                .ok_or(Error::Overflow("enumeration residual"))?;
            debug_assert!(next > Q::zero() && next < residual);
            self.prefix.push(p);
            self.descend(next, checked_lcm(lcm, p)?)?;
            self.prefix.pop();
        }
        Ok(())
    }
}

/// Every nondecreasing `(p_1, ..., p_n)` with `p_i >= 2` and
/// `sum 1/p_i + 1/lcm(p) = 1`.
pub fn enumerate_candidates(n: usize) -> Result<CandidateSet> {
    if n < 4 {
        return Err(Error::Precondition(format!(
            "candidate enumeration needs n >= 4, got {n}"
        )));
    }
    let mut search = Search { n, prefix: Vec::with_capacity(n), found: Vec::new() };
    search.descend(Q::one(), 1)?;
    search.found.sort();
    search.found.dedup();
    let signatures = search
        .found
        .iter()
        .map(|p| Signature::derive(p))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = signatures.iter().find(|s| !s.is_candidate()) {
        return Err(Error::Invariant(format!("enumerated {bad} does not have defect 1/N")));
    }
    Ok(CandidateSet { n, signatures })
}

/// Whether `p_i` divides `prod_{j != i} p_j + 1` for every `i`.
pub fn znam_divisibility(p: &[Int]) -> bool {
    (0..p.len()).all(|i| {
        let rest: BigInt = p
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| BigInt::from(x))
            .product();
        ((rest + 1u32) % BigInt::from(p[i])).is_zero()
    })
}
