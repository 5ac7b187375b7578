//! Brute-force generator count by linear algebra on explicit graded pieces.
//!
//! `R_k = M(k w) * (C[Y_1..Y_n] / (Y_1 + ... + Y_n))_{m(k)}` where
//! `Y_i = X_i^{p_i}`. Eliminating `Y_n` leaves the monomials of degree
//! `m(k)` in `Y_1..Y_{n-1}` as a basis. The number of minimal generators in
//! degree `k` is `dim R_k - dim (m^2)_k`, and `(m^2)_k` is spanned by the
//! products `R_a * R_b` with `a + b = k`, `a, b >= 1`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::{Monomial, Signature};
use crate::hilbert;
use crate::linalg::Echelon;
use crate::{Int, Rational};

/// Upper end of the default `n = 3` scan box.
pub const DEFAULT_SCAN_MAX: Int = 50;

/// Default degree bound for `n = 3`; every result is certified afterwards.
pub const DEFAULT_TRIANGLE_BOUND: i64 = 64;

/// Explicit basis of one graded piece `R_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub k: i64,
    /// `M(k w)`.
    pub lead: Monomial,
    /// Exponent vectors over `Y_1..Y_{n-1}` of total degree `m(k)`.
    pub y_basis: Vec<Vec<u64>>,
}

impl GradedPieceBasis {
    pub fn dim(&self) -> usize {
        self.y_basis.len()
    }
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut current = vec![0; parts];
    fill_compositions(total, 0, &mut current, &mut out);
    out
}

fn fill_compositions(left: u64, pos: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if pos + 1 == current.len() {
        current[pos] = left;
        out.push(current.clone());
        return;
    }
    for e in (0..=left).rev() {
        current[pos] = e;
        fill_compositions(left - e, pos + 1, current, out);
    }
}

/// The basis of `R_k`. Empty when `m(k) < 0`.
pub fn graded_basis(sig: &Signature, k: i64) -> Result<GradedPieceBasis> {
    if k < 0 {
        return Err(Error::Precondition(format!("graded pieces start at degree 0, got {k}")));
    }
    let level = sig.level(k);
    let y_basis = if level < 0 {
        Vec::new()
    } else {
        let total = u64::try_from(level).map_err(|_| Error::Overflow("level"))?;
        compositions(total, sig.n() - 1)
    };
    Ok(GradedPieceBasis { k, lead: sig.reduced_monomial(k), y_basis })
}

/// Product of the basis elements `M(k1 w) Y^beta` and `M(k2 w) Y^gamma`,
/// as a `Y`-cofactor of `M((k1 + k2) w)` with `Y_n` eliminated.
pub fn multiply_basis(
    sig: &Signature,
    left: (&GradedPieceBasis, usize),
    right: (&GradedPieceBasis, usize),
) -> Vec<(Vec<u64>, Int)> {
    let (a, i) = left;
    let (b, j) = right;
    let n = sig.n();
    let mut y: Vec<u64> = a.y_basis[i].iter().zip(&b.y_basis[j]).map(|(x, z)| x + z).collect();
    let mut last_carry = false;
    for (v, (x, z)) in a.lead.exps().iter().zip(b.lead.exps()).enumerate() {
        if Int::from(x + z) >= sig.exponent(v) {
            match y.get_mut(v) {
                Some(e) => *e += 1,
                None => last_carry = true,
            }
        }
    }
    if !last_carry {
        return vec![(y, 1)];
    }
    (0..n - 1)
        .map(|v| {
            let mut e = y.clone();
            e[v] += 1;
            (e, -1)
        })
        .collect()
}

/// One minimal generator: the basis element `lead * Y^y_exps` of degree
/// `degree`, chosen so that it is independent of `(m^2)_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRep {
    pub degree: i64,
    pub lead: Monomial,
    pub y_exps: Vec<u64>,
}

impl GeneratorRep {
    /// The representative as a monomial in the `X_i`, substituting
    /// `Y_i = X_i^{p_i}`.
    pub fn as_monomial(&self, sig: &Signature) -> Monomial {
        let mut exps = self.lead.exps().to_vec();
        for (v, &e) in self.y_exps.iter().enumerate() {
            exps[v] += e * sig.exponent(v) as u64;
        }
        Monomial::new(exps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorLedger {
    /// `dim (m/m^2)_k` for every degree with new generators.
    pub per_degree: BTreeMap<i64, usize>,
    pub embdim: usize,
    pub generators: Vec<GeneratorRep>,
    pub degree_bound: i64,
    /// False when the count was abandoned after exceeding a cap.
    pub complete: bool,
}

impl GeneratorLedger {
    /// Generator degrees, largest first.
    pub fn degrees(&self) -> Vec<Int> {
        let mut d: Vec<Int> = self.generators.iter().map(|g| Int::from(g.degree)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Minimal generators of `R` in degrees `1..=degree_bound`.
///
/// For defect `1/N` and `n >= 4` the bound must be at least `(n-1)N + 1`,
/// which covers every generator.
pub fn embedding_dimension(sig: &Signature, degree_bound: i64) -> Result<GeneratorLedger> {
    if sig.n() >= 4 && sig.is_candidate() {
        let needed = (sig.n() as Int - 1) * sig.lcm() + 1;
        if Int::from(degree_bound) < needed {
            return Err(Error::Precondition(format!(
                "degree bound {degree_bound} for {sig} is below {needed}"
            )));
        }
    }
    embedding_dimension_capped(sig, degree_bound, None)
}

/// As [`embedding_dimension`] with no lower limit on the bound, stopping as
/// soon as more than `cap` generators have been found.
pub fn embedding_dimension_capped(
    sig: &Signature,
    degree_bound: i64,
    cap: Option<usize>,
) -> Result<GeneratorLedger> {
    if degree_bound <= 0 {
        return Err(Error::Precondition(format!("degree bound must be positive, got {degree_bound}")));
    }
    let len = usize::try_from(degree_bound).map_err(|_| Error::Overflow("degree bound"))? + 1;
    let mut pieces: Vec<Option<GradedPieceBasis>> = Vec::with_capacity(len);
    let mut nonzero: Vec<i64> = Vec::new();

    let mut ledger = GeneratorLedger {
        per_degree: BTreeMap::new(),
        embdim: 0,
        generators: Vec::new(),
        degree_bound,
        complete: true,
    };

    for k in 0..=degree_bound {
        let piece = graded_basis(sig, k)?;
        if piece.dim() == 0 {
            pieces.push(None);
            continue;
        }
        let lookup: HashMap<Vec<u64>, usize> =
            piece.y_basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();

        if k > 0 {
            let mut span = Echelon::<Rational>::new(piece.dim());
            'pairs: for &a in nonzero.iter().filter(|&&a| a >= 1 && 2 * a <= k) {
                let Some(right) = &pieces[(k - a) as usize] else { continue };
                let left = pieces[a as usize].as_ref().expect("nonzero degree has a basis");
                for i in 0..left.dim() {
                    let start = if a == k - a { i } else { 0 };
                    for j in start..right.dim() {
                        let mut v = vec![Rational::zero(); piece.dim()];
                        for (e, c) in multiply_basis(sig, (left, i), (right, j)) {
                            let slot = lookup.get(&e).ok_or_else(|| {
                                Error::Invariant(format!("product in degree {k} of {sig} leaves the basis"))
                            })?;
                            v[*slot] = Rational::from_integer(c.into());
                        }
                        span.insert(v);
                        if span.is_full() {
                            break 'pairs;
                        }
                    }
                }
            }
            if !span.is_full() {
                let mut fresh = 0;
                for u in 0..piece.dim() {
                    if span.insert_unit(u) {
                        fresh += 1;
                        ledger.generators.push(GeneratorRep {
                            degree: k,
                            lead: piece.lead.clone(),
                            y_exps: piece.y_basis[u].clone(),
                        });
                    }
                }
                ledger.per_degree.insert(k, fresh);
                ledger.embdim += fresh;
                if cap.is_some_and(|c| ledger.embdim > c) {
                    ledger.complete = false;
                    return Ok(ledger);
                }
            }
        }
        nonzero.push(k);
        pieces.push(Some(piece));
    }
    Ok(ledger)
}

/// A triangle signature whose canonical ring is a hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleHypersurface {
    pub signature: Signature,
    /// Generator representatives, matched with `weights`.
    pub generators: Vec<Monomial>,
    /// Weights, largest first.
    pub weights: Vec<Int>,
    pub h: Int,
}

impl TriangleHypersurface {
    pub fn a_invariant(&self) -> Int {
        hilbert::a_invariant(&self.weights, self.h)
    }
}

/// Decides one triangle signature from the generators below `degree_bound`.
///
/// Three generators give a hypersurface with relation degree
/// `h = sum a_j + 1`, accepted only if `(1 - t^h) / prod (1 - t^{a_j})`
/// reproduces `dim R_k` up to `h + sum a_j`. Fewer than three, or a failed
/// series check, means the bound hides a generator.
pub fn triangle_hypersurface(sig: &Signature, degree_bound: i64) -> Result<Option<TriangleHypersurface>> {
    if sig.n() != 3 {
        return Err(Error::Precondition(format!("expected three exponents, got {}", sig.n())));
    }
    let ledger = embedding_dimension_capped(sig, degree_bound, Some(3))?;
    if !ledger.complete {
        return Ok(None);
    }
    if ledger.embdim < 3 {
        return Err(Error::BoundTooSmall {
            bound: degree_bound,
            detail: format!("{sig} has only {} generators below the bound", ledger.embdim),
        });
    }
    let mut gens: Vec<(Int, Monomial)> = ledger
        .generators
        .iter()
        .map(|g| (Int::from(g.degree), g.as_monomial(sig)))
        .collect();
    gens.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.exps().cmp(a.1.exps())));
    let weights: Vec<Int> = gens.iter().map(|g| g.0).collect();
    let total: Int = weights.iter().sum();
    let h = total + 1;
    let up_to = usize::try_from(h + total).map_err(|_| Error::Overflow("series length"))?;
    if !hilbert::series_agrees_termwise(sig, &weights, h, up_to)? {
        return Err(Error::BoundTooSmall {
            bound: degree_bound,
            detail: format!("{sig} with weights {weights:?} fails the series check"),
        });
    }
    Ok(Some(TriangleHypersurface {
        signature: sig.clone(),
        generators: gens.into_iter().map(|g| g.1).collect(),
        weights,
        h,
    }))
}

/// All hypersurface triangle signatures `2 <= p <= q <= r <= scan_max`.
pub fn classify_n3(scan_max: Int) -> Result<Vec<TriangleHypersurface>> {
    classify_n3_with_bound(scan_max, DEFAULT_TRIANGLE_BOUND)
}

pub fn classify_n3_with_bound(scan_max: Int, degree_bound: i64) -> Result<Vec<TriangleHypersurface>> {
    if scan_max < 2 {
        return Err(Error::Precondition(format!("scan bound must be at least 2, got {scan_max}")));
    }
    let mut out = Vec::new();
    for p in 2..=scan_max {
        for q in p..=scan_max {
            for r in q..=scan_max {
                // 1/p + 1/q + 1/r < 1
                if q * r + p * r + p * q >= p * q * r {
                    continue;
                }
                let sig = Signature::derive(&[p, q, r])?;
                if let Some(found) = triangle_hypersurface(&sig, degree_bound)? {
                    out.push(found);
                }
            }
        }
    }
    Ok(out)
}

/// Whether `dim R_k` from the explicit basis equals the closed formula for
/// every `k <= up_to`.
pub fn basis_matches_formula(sig: &Signature, up_to: i64) -> Result<bool> {
    for k in 0..=up_to {
        let counted = graded_basis(sig, k)?.dim() as Int;
        if counted != sig.dim_r::<Int>(k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a ledger proves a hypersurface: exactly one more generator than
/// the Krull dimension, with the count complete.
pub fn is_hypersurface(ledger: &GeneratorLedger, sig: &Signature) -> bool {
    ledger.complete && ledger.embdim == sig.n()
}
