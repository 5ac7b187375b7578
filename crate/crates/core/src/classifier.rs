//! Hypersurface decision for signatures with defect `1/N` and `n >= 4`.
//!
//! Either every `q_i` is 1, the canonical ring is the whole Fermat ring and
//! the generators are the variables themselves; or some index `i` has
//! `q_i = p_i` and the candidate generators are `X_j^{q_j}` for `j != i`
//! together with `prod_{q_k != 1} X_k`. A candidate set generates the ring
//! iff every reduced monomial `M(k w)`, `0 <= k < N`, factors over it.

use std::cmp::Reverse;
use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::grading::{symbol_names, variable_names, Monomial, Signature};
use crate::hilbert::{self, SeriesCertificate};
use crate::poly::{exps_gcd, SparsePoly};
use crate::{Int, SymbolPoly};

/// At most this many failing degrees are kept per rejected attempt.
pub const FAILING_SAMPLE: usize = 32;

/// One candidate generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorChoice {
    /// Index `i` with `q_i = p_i` whose generator is the mixed product;
    /// `None` when every `q_i` is 1.
    pub chosen: Option<usize>,
    pub generators: Vec<Monomial>,
    pub weights: Vec<Int>,
}

/// Generators, weights and defining relation of a hypersurface canonical
/// ring, in display order (weight descending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfacePresentation {
    pub generators: Vec<Monomial>,
    pub weights: Vec<Int>,
    pub h: Int,
    /// Relation in the generator symbols; variable `j` is `generators[j]`.
    pub relation: SymbolPoly,
    pub chosen: Option<usize>,
}

impl HypersurfacePresentation {
    pub fn a_invariant(&self) -> Int {
        hilbert::a_invariant(&self.weights, self.h)
    }

    /// Generators as products of ambient variables, e.g. `XZW`.
    pub fn generator_strings(&self) -> Vec<String> {
        let names = variable_names(self.generators.first().map_or(0, |g| g.n()));
        self.generators.iter().map(|g| g.render(&names)).collect()
    }

    /// Factored relation, e.g. `x^2+w(y^3+z^7+w^22)`.
    pub fn relation_display(&self) -> String {
        relation_display(&self.relation, &symbol_names(self.relation.nvars()))
    }
}

/// A rejected attempt with one generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub chosen: Option<usize>,
    /// The first few `k` in `[0, N)` whose `M(k w)` does not factor.
    pub failing: Vec<i64>,
    pub failing_count: usize,
    /// Whether the series identity held; `None` if never reached.
    pub identity_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The defect is not `1/N`, so the ring cannot be a hypersurface.
    NotCandidate,
    /// Defect `1/N`, but no generating set of the required shape works.
    /// Empty `attempts` means no index has `q_i = p_i`.
    CandidateRejected { attempts: Vec<Attempt> },
    Hypersurface { presentation: HypersurfacePresentation, certificate: SeriesCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub signature: Signature,
    pub verdict: Verdict,
}

impl Classification {
    pub fn is_hypersurface(&self) -> bool {
        matches!(self.verdict, Verdict::Hypersurface { .. })
    }

    pub fn presentation(&self) -> Option<&HypersurfacePresentation> {
        match &self.verdict {
            Verdict::Hypersurface { presentation, .. } => Some(presentation),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&SeriesCertificate> {
        match &self.verdict {
            Verdict::Hypersurface { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.verdict {
            Verdict::NotCandidate => "not_candidate",
            Verdict::CandidateRejected { .. } => "rejected",
            Verdict::Hypersurface { .. } => "hypersurface",
        }
    }
}

fn exp_u64(v: Int) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow("exponent"))
}

/// Candidate generating sets in ascending order of the chosen index.
pub fn candidate_generators(sig: &Signature) -> Result<Vec<GeneratorChoice>> {
    if !sig.is_candidate() {
        return Err(Error::Precondition(format!("{sig} does not have defect 1/N")));
    }
    let n = sig.n();
    let lcm = sig.lcm();
    let q = sig.pure_powers();

    if q.iter().all(|x| x.is_one()) {
        let generators = (0..n).map(|j| Monomial::power(n, j, 1)).collect();
        let weights = sig.exponents().iter().map(|p| lcm / p).collect();
        return Ok(vec![GeneratorChoice { chosen: None, generators, weights }]);
    }

    let mixed = Monomial::new(q.iter().map(|x| u64::from(!x.is_one())).collect());
    let mixed_weight = lcm
        - 1
        - (0..n).filter(|&k| q[k].is_one()).map(|k| sig.lcm_without(k)).sum::<Int>();

    let mut out = Vec::new();
    for i in (0..n).filter(|&i| q[i] == sig.exponent(i)) {
        let mut generators = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for (j, &qj) in q.iter().enumerate() {
            if j == i {
                generators.push(mixed.clone());
                weights.push(mixed_weight);
            } else {
                generators.push(Monomial::power(n, j, exp_u64(qj)?));
                weights.push(sig.lcm_without(j));
            }
        }
        out.push(GeneratorChoice { chosen: Some(i), generators, weights });
    }
    Ok(out)
}

/// Nonnegative multiplicities `c` with `sum c_j * gens_j = mono`, or `None`.
///
/// Depth-first search over generators, widest support first. A generator
/// that is the last one covering some variable has its multiplicity forced.
pub fn factor_over_generators(mono: &Monomial, gens: &[Monomial]) -> Option<Vec<u64>> {
    let n = mono.n();
    if gens.iter().any(|g| g.n() != n) {
        return None;
    }
    let mut order: Vec<usize> = (0..gens.len()).filter(|&j| !gens[j].is_one()).collect();
    order.sort_by_key(|&j| Reverse(gens[j].exps().iter().filter(|&&e| e > 0).count()));

    let mut forced_by: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for v in 0..n {
        match order.iter().rposition(|&j| gens[j].exps()[v] > 0) {
            Some(pos) => forced_by[pos].push(v),
            None if mono.exps()[v] > 0 => return None,
            None => {}
        }
    }

    let mut search = FactorSearch {
        gens,
        order: &order,
        forced_by: &forced_by,
        remaining: mono.exps().to_vec(),
        mult: vec![0; gens.len()],
    };
    if !search.descend(0) {
        return None;
    }
    debug_assert_eq!(
        gens.iter()
            .zip(&search.mult)
            .fold(Monomial::one(n), |acc, (g, &c)| acc.mul(&g.pow(c))),
        *mono,
        "factorization does not reproduce the monomial"
    );
    Some(search.mult)
}

struct FactorSearch<'a> {
    gens: &'a [Monomial],
    order: &'a [usize],
    forced_by: &'a [Vec<usize>],
    remaining: Vec<u64>,
    mult: Vec<u64>,
}

impl FactorSearch<'_> {
    fn descend(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return self.remaining.iter().all(|&e| e == 0);
        }
        let j = self.order[pos];
        let g = self.gens[j].exps();
        let hi = g
            .iter()
            .zip(&self.remaining)
            .filter(|(&ge, _)| ge > 0)
            .map(|(ge, r)| r / ge)
            .min()
            .unwrap_or(0);

        let mut forced = None;
        for &v in &self.forced_by[pos] {
            if !self.remaining[v].is_multiple_of(g[v]) {
                return false;
            }
            let c = self.remaining[v] / g[v];
            if forced.is_some_and(|f| f != c) {
                return false;
            }
            forced = Some(c);
        }
        let (lo, hi) = match forced {
            Some(c) if c > hi => return false,
            Some(c) => (c, c),
            None => (0, hi),
        };
        for c in (lo..=hi).rev() {
            for (r, ge) in self.remaining.iter_mut().zip(g) {
                *r -= c * ge;
            }
            self.mult[j] = c;
            if self.descend(pos + 1) {
                return true;
            }
            for (r, ge) in self.remaining.iter_mut().zip(g) {
                *r += c * ge;
            }
        }
        self.mult[j] = 0;
        false
    }
}

/// Builds the defining relation for an accepted generating set.
///
/// The relation is the ambient polynomial `M * (X_1^{p_1} + ... + X_n^{p_n})`
/// with `M = prod_{k in S, k != i} X_k^{q_k}`, `S = {k : q_k != 1}`, rewritten
/// term by term in the generator symbols. Returns the relation and its
/// degree `h = deg M + N`.
pub fn build_relation(sig: &Signature, choice: &GeneratorChoice) -> Result<(SymbolPoly, Int)> {
    let n = sig.n();
    let q = sig.pure_powers();
    let cofactor = Monomial::new(
        (0..n)
            .map(|k| {
                if Some(k) == choice.chosen || q[k].is_one() {
                    Ok(0)
                } else {
                    exp_u64(q[k])
                }
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let cofactor_degree = sig
        .weighted_degree(&cofactor)
        .ok_or_else(|| Error::Invariant(format!("relation cofactor of {sig} has no degree")))?;
    let h = cofactor_degree + sig.lcm();

    let mut relation = SparsePoly::zero(n);
    let mut ambient = SparsePoly::<Int>::zero(n);
    let mut expected = SparsePoly::<Int>::zero(n);
    for j in 0..n {
        let term = cofactor.mul(&Monomial::power(n, j, exp_u64(sig.exponent(j))?));
        expected.add_term(term.exps().to_vec(), &1)?;
        let mult = factor_over_generators(&term, &choice.generators).ok_or_else(|| {
            Error::Invariant(format!("relation term {:?} of {sig} does not factor", term.exps()))
        })?;
        let degree: Int = mult.iter().zip(&choice.weights).map(|(&c, &w)| Int::from(c) * w).sum();
        if degree != h {
            return Err(Error::Invariant(format!(
                "relation term of {sig} has degree {degree}, expected {h}"
            )));
        }
        if relation.terms().any(|(e, _)| *e == mult) {
            return Err(Error::Invariant(format!("relation of {sig} has a repeated term")));
        }
        let back = choice
            .generators
            .iter()
            .zip(&mult)
            .fold(Monomial::one(n), |acc, (g, &c)| acc.mul(&g.pow(c)));
        ambient.add_term(back.exps().to_vec(), &1)?;
        relation.add_term(mult, &1)?;
    }
    if !ambient.sub(&expected)?.is_zero() {
        return Err(Error::Invariant(format!("relation of {sig} does not substitute back")));
    }
    Ok((relation, h))
}

/// Reorders a presentation by weight descending, ties broken so that
/// generators with more of an earlier variable come first.
fn normalize(choice: GeneratorChoice, relation: SymbolPoly, h: Int) -> HypersurfacePresentation {
    let n = choice.generators.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        choice.weights[b]
            .cmp(&choice.weights[a])
            .then_with(|| choice.generators[b].exps().cmp(choice.generators[a].exps()))
    });
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    HypersurfacePresentation {
        generators: order.iter().map(|&j| choice.generators[j].clone()).collect(),
        weights: order.iter().map(|&j| choice.weights[j]).collect(),
        h,
        relation: relation.permute(&position),
        chosen: choice.chosen,
    }
}

/// Decides whether the canonical ring of `sig` is a hypersurface.
pub fn classify(sig: &Signature) -> Result<Classification> {
    if sig.n() < 4 {
        return Err(Error::Precondition(format!(
            "the classifier needs n >= 4, got {}; use the oracle for n = 3",
            sig.n()
        )));
    }
    if !sig.is_candidate() {
        return Ok(Classification { signature: sig.clone(), verdict: Verdict::NotCandidate });
    }
    let lcm = i64::try_from(sig.lcm()).map_err(|_| Error::Overflow("lcm exceeds 64 bits"))?;

    let mut attempts = Vec::new();
    for choice in candidate_generators(sig)? {
        let mut failing = Vec::new();
        let mut failing_count = 0;
        for k in 0..lcm {
            if factor_over_generators(&sig.reduced_monomial(k), &choice.generators).is_none() {
                failing_count += 1;
                if failing.len() < FAILING_SAMPLE {
                    failing.push(k);
                }
            }
        }
        if failing_count > 0 {
            attempts.push(Attempt { chosen: choice.chosen, failing, failing_count, identity_holds: None });
            continue;
        }

        for (g, &w) in choice.generators.iter().zip(&choice.weights) {
            if sig.weighted_degree(g) != Some(w) {
                return Err(Error::Invariant(format!(
                    "generator {:?} of {sig} does not have weight {w}",
                    g.exps()
                )));
            }
        }
        let (relation, h) = build_relation(sig, &choice)?;
        let certificate = hilbert::certify(sig, &choice.weights, h)?;
        if !certificate.checks.hypersurface_identity {
            attempts.push(Attempt {
                chosen: choice.chosen,
                failing,
                failing_count,
                identity_holds: Some(false),
            });
            continue;
        }
        if !certificate.checks.all() {
            return Err(Error::Invariant(format!(
                "{sig}: series identity holds but {:?}",
                certificate.checks
            )));
        }
        let presentation = normalize(choice, relation, h);
        return Ok(Classification {
            signature: sig.clone(),
            verdict: Verdict::Hypersurface { presentation, certificate },
        });
    }
    Ok(Classification { signature: sig.clone(), verdict: Verdict::CandidateRejected { attempts } })
}

fn render_term(c: &Int, exps: &[u64], names: &[String], first: bool) -> String {
    let mono = Monomial::new(exps.to_vec()).render(names);
    let mut out = String::new();
    if c.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let abs = c.abs();
    match (abs.is_one(), mono.as_str()) {
        (true, _) => out.push_str(&mono),
        (false, "1") => write!(out, "{abs}").unwrap(),
        (false, _) => write!(out, "{abs}{mono}").unwrap(),
    }
    out
}

fn render_sum<'a>(terms: impl Iterator<Item = (&'a Vec<u64>, &'a Int)>, names: &[String]) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.enumerate() {
        out.push_str(&render_term(c, e, names, i == 0));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders a relation, pulling the largest common factor out of all terms
/// but one: `x^2+w(y^3+z^7+w^22)`.
pub fn relation_display(relation: &SymbolPoly, names: &[String]) -> String {
    let terms: Vec<(&Vec<u64>, &Int)> = relation.terms().collect();
    if terms.len() < 3 {
        return render_sum(terms.into_iter(), names);
    }
    let mut best: Option<(usize, Vec<u64>, u64)> = None;
    for skip in 0..terms.len() {
        let others = terms.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, (e, _))| *e);
        let common = exps_gcd(others).unwrap_or_default();
        let size: u64 = common.iter().sum();
        if best.as_ref().is_none_or(|(_, _, s)| size > *s) {
            best = Some((skip, common, size));
        }
    }
    let Some((skip, common, size)) = best.filter(|b| b.2 > 0) else {
        return render_sum(terms.into_iter(), names);
    };
    debug_assert!(size > 0);
    let (lead_e, lead_c) = terms[skip];
    let mut out = render_term(lead_c, lead_e, names, true);
    out.push('+');
    out.push_str(&Monomial::new(common.clone()).render(names));
    let inner: Vec<(Vec<u64>, Int)> = terms
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, (e, c))| (e.iter().zip(&common).map(|(a, b)| a - b).collect(), **c))
        .collect();
    out.push('(');
    out.push_str(&render_sum(inner.iter().map(|(e, c)| (e, c)), names));
    out.push(')');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: &[Int]) -> Signature {
        Signature::derive(p).unwrap()
    }

    fn mono(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn candidate_generators_case_one() {
        let c = candidate_generators(&sig(&[2, 3, 7, 43])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].chosen, None);
        assert_eq!(c[0].weights, vec![903, 602, 258, 42]);
        assert_eq!(c[0].generators[3], mono(&[0, 0, 0, 1]));
    }

    #[test]
    fn candidate_generators_case_two() {
        let c = candidate_generators(&sig(&[2, 3, 7, 44])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].chosen, Some(0));
        assert_eq!(
            c[0].generators,
            vec![mono(&[1, 0, 0, 1]), mono(&[0, 1, 0, 0]), mono(&[0, 0, 1, 0]), mono(&[0, 0, 0, 2])]
        );
        assert_eq!(c[0].weights, vec![483, 308, 132, 42]);

        let c = candidate_generators(&sig(&[2, 5, 5, 15])).unwrap();
        assert_eq!(c.iter().map(|x| x.chosen).collect::<Vec<_>>(), vec![Some(1), Some(2)]);
        assert_eq!(
            c[1].generators,
            vec![mono(&[1, 0, 0, 0]), mono(&[0, 5, 0, 0]), mono(&[0, 1, 1, 1]), mono(&[0, 0, 0, 5])]
        );
        assert_eq!(c[1].weights, vec![15, 30, 14, 10]);
    }

    #[test]
    fn candidate_generators_requires_candidate() {
        assert!(candidate_generators(&sig(&[2, 3, 7, 50])).is_err());
    }

    #[test]
    fn factor_examples() {
        let gens = candidate_generators(&sig(&[2, 3, 7, 44])).unwrap().remove(0).generators;
        assert_eq!(factor_over_generators(&mono(&[1, 0, 0, 1]), &gens), Some(vec![1, 0, 0, 0]));
        assert_eq!(factor_over_generators(&mono(&[0; 4]), &gens), Some(vec![0; 4]));
        assert_eq!(factor_over_generators(&mono(&[1, 0, 0, 0]), &gens), None);
        assert_eq!(factor_over_generators(&mono(&[1, 2, 0, 3]), &gens), Some(vec![1, 2, 0, 1]));
    }

    #[test]
    fn factor_unreachable_residues_for_2_3_8_28() {
        // generators XZW, Y, Z^4, W^4: Z-exponents reachable without X are 4c
        let gens = vec![mono(&[1, 0, 1, 1]), mono(&[0, 1, 0, 0]), mono(&[0, 0, 4, 0]), mono(&[0, 0, 0, 4])];
        for z in [2u64, 3, 6, 7] {
            for w in 0..28 {
                for y in 0..3 {
                    assert_eq!(factor_over_generators(&mono(&[0, y, z, w]), &gens), None);
                }
            }
        }
    }

    #[test]
    fn factor_needs_search_when_not_forced() {
        // two generators share both variables; only one combination works
        let gens = vec![mono(&[2, 1]), mono(&[1, 2])];
        assert_eq!(factor_over_generators(&mono(&[4, 5]), &gens), Some(vec![1, 2]));
        assert_eq!(factor_over_generators(&mono(&[4, 4]), &gens), None);
    }

    #[test]
    fn classify_examples() {
        let c = classify(&sig(&[2, 3, 7, 45])).unwrap();
        let p = c.presentation().unwrap();
        assert_eq!(p.weights, vec![315, 224, 90, 42]);
        assert_eq!(p.h, 672);

        let c = classify(&sig(&[2, 3, 7, 49])).unwrap();
        let p = c.presentation().unwrap();
        assert_eq!(p.weights, vec![147, 98, 48, 42]);
        assert_eq!(p.h, 336);
        assert_eq!(p.generator_strings(), vec!["X", "Y", "ZW", "W^7"]);

        let c = classify(&sig(&[2, 3, 8, 28])).unwrap();
        assert!(matches!(c.verdict, Verdict::CandidateRejected { .. }));

        let c = classify(&sig(&[2, 3, 7, 50])).unwrap();
        assert_eq!(c.verdict, Verdict::NotCandidate);
    }

    #[test]
    fn classify_rejects_n3() {
        assert!(matches!(classify(&sig(&[2, 3, 7])), Err(Error::Precondition(_))));
    }

    #[test]
    fn relations_match_table_rows() {
        let c = classify(&sig(&[2, 3, 7, 44])).unwrap();
        assert_eq!(c.presentation().unwrap().relation_display(), "x^2+w(y^3+z^7+w^22)");
        let c = classify(&sig(&[2, 3, 7, 43])).unwrap();
        assert_eq!(c.presentation().unwrap().relation_display(), "x^2+y^3+z^7+w^43");
        let c = classify(&sig(&[5, 5, 5, 5])).unwrap();
        let p = c.presentation().unwrap();
        assert_eq!(p.relation_display(), "w^5+xyz(x+y+z)");
        assert_eq!(p.weights, vec![5, 5, 5, 4]);
        assert_eq!(p.relation.len(), 4);
        let c = classify(&sig(&[2, 3, 9, 21])).unwrap();
        let p = c.presentation().unwrap();
        assert_eq!(p.relation_display(), "y^3+zw(x^2+z^3+w^7)");
        assert_eq!((p.weights.clone(), p.h), (vec![63, 62, 42, 18], 186));
    }

    #[test]
    fn rejection_records_failures() {
        let c = classify(&sig(&[2, 3, 8, 28])).unwrap();
        let Verdict::CandidateRejected { attempts } = c.verdict else { panic!() };
        assert!(!attempts.is_empty());
        assert!(attempts.iter().all(|a| a.failing_count > 0 && !a.failing.is_empty()));
    }

    #[test]
    fn display_of_plain_sum_and_coefficients() {
        let mut r = SymbolPoly::zero(3);
        r.add_term(vec![2, 0, 0], &1).unwrap();
        r.add_term(vec![0, 1, 0], &-3).unwrap();
        assert_eq!(relation_display(&r, &symbol_names(3)), "x^2-3y");
    }
}
