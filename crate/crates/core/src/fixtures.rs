//! Reference tables of hypersurface signatures and the diff against a fresh
//! computation.

use serde::{Deserialize, Serialize};

use crate::classifier::classify;
use crate::enumeration::enumerate_candidates;
use crate::error::{Error, Result};
use crate::grading::{fmt_tuple, symbol_names, variable_names, Monomial, Signature};
use crate::oracle::{classify_n3, DEFAULT_SCAN_MAX};
use crate::poly::SparsePoly;
use crate::{Int, SymbolPoly};

pub const TABLE1_JSON: &str = include_str!("../fixtures/table1.json");
pub const TABLE2_JSON: &str = include_str!("../fixtures/table2.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub signature: Vec<Int>,
    /// Generators as products of `X, Y, Z, W`, e.g. `XZW` or `Y^2`.
    pub generators: Vec<String>,
    pub weights: Vec<Int>,
    pub h: Int,
    /// Relation in the generator symbols `x, y, z, w`, in generator order.
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub table: String,
    pub n: usize,
    pub rows: Vec<FixtureRow>,
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: Fixture = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        if f.n < 3 {
            return Err(Error::Fixture(format!("tables need n >= 3, got {}", f.n)));
        }
        for row in &f.rows {
            let len = row.signature.len();
            if len != f.n || row.generators.len() != f.n || row.weights.len() != f.n {
                return Err(Error::Fixture(format!(
                    "row {} does not have {} entries per column",
                    fmt_tuple(&row.signature),
                    f.n
                )));
            }
        }
        Ok(f)
    }

    pub fn table1() -> Self {
        Self::from_json(TABLE1_JSON).expect("embedded table1 is valid")
    }

    pub fn table2() -> Self {
        Self::from_json(TABLE2_JSON).expect("embedded table2 is valid")
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn skip_space(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_space();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at position {} in {text:?}", self.pos))
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("expected a number"))
    }

    fn sum(&mut self) -> Result<SymbolPoly> {
        let mut acc = SparsePoly::zero(self.names.len());
        let mut sign = 1;
        if let Some(c @ ('+' | '-')) = self.peek() {
            sign = if c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let term = self.term()?;
            let signed = term.mul(&SparsePoly::monomial(vec![0; self.names.len()], sign))?;
            acc = acc.add(&signed)?;
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SymbolPoly> {
        let n = self.names.len();
        let mut acc = SparsePoly::monomial(vec![0; n], 1);
        let mut any = false;
        while let Some(c) = self.peek() {
            let factor = if c.is_ascii_digit() {
                let v = self.number()?;
                SparsePoly::monomial(vec![0; n], Int::from(v))
            } else if c == '(' || c.is_alphabetic() {
                self.power()?
            } else {
                break;
            };
            acc = acc.mul(&factor)?;
            any = true;
        }
        if any {
            Ok(acc)
        } else {
            Err(self.error("expected a term"))
        }
    }

    fn power(&mut self) -> Result<SymbolPoly> {
        let base = self.primary()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp = if self.peek() == Some('{') {
            self.pos += 1;
            let e = self.number()?;
            if self.peek() != Some('}') {
                return Err(self.error("expected '}'"));
            }
            self.pos += 1;
            e
        } else {
            self.number()?
        };
        base.pow(exp)
    }

    fn primary(&mut self) -> Result<SymbolPoly> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let inner = self.sum()?;
            if self.peek() != Some(')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        let start = self.pos;
        if self.pos < self.chars.len() && self.chars[self.pos].is_alphabetic() {
            self.pos += 1;
        }
        // multi-letter names carry an index: x1, x12
        if self.names.iter().any(|s| s.len() > 1) {
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let v = self
            .names
            .iter()
            .position(|s| *s == name)
            .ok_or_else(|| self.error(&format!("unknown variable {name:?}")))?;
        let mut e = vec![0; self.names.len()];
        e[v] = 1;
        Ok(SparsePoly::monomial(e, 1))
    }
}

/// Parses a polynomial such as `x^2+w(y^3+z^7+w^{22})` over the given
/// variable names. Juxtaposition, spaces and `*` all mean multiplication.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<SymbolPoly> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, names };
    let out = p.sum()?;
    if p.peek().is_some() {
        return Err(p.error("unexpected character"));
    }
    Ok(out)
}

/// Parses a relation in the generator symbols `x, y, z, w` (or `x1..xn`).
pub fn parse_relation(text: &str, n: usize) -> Result<SymbolPoly> {
    parse_polynomial(text, &symbol_names(n))
}

/// Parses a generator written in the ambient variables, e.g. `X Y^4`.
pub fn parse_generator(text: &str, n: usize) -> Result<Monomial> {
    let p = parse_polynomial(text, &variable_names(n))?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) if *c == 1 => Ok(Monomial::new(e.clone())),
        _ => Err(Error::Parse(format!("{text:?} is not a monomial"))),
    }
}

/// Outcome of comparing a table with a fresh computation. Each entry of
/// `diffs` is one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub table: String,
    pub rows: usize,
    pub diffs: Vec<String>,
}

impl VerifyReport {
    pub fn is_match(&self) -> bool {
        self.diffs.is_empty()
    }
}

struct Computed {
    signature: Vec<Int>,
    weights: Vec<Int>,
    h: Int,
    relation: Option<SymbolPoly>,
}

fn sorted_desc(v: &[Int]) -> Vec<Int> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for slot in 0..n {
            let mut p = rest.clone();
            p.insert(slot, n - 1);
            out.push(p);
        }
    }
    out
}

/// Whether some renaming of fixture symbols onto computed symbols with equal
/// weights carries one relation to the other.
fn relations_match(fixture: &SymbolPoly, fixture_weights: &[Int], computed: &SymbolPoly, weights: &[Int]) -> bool {
    permutations(weights.len()).into_iter().any(|perm| {
        perm.iter().enumerate().all(|(v, &t)| fixture_weights[v] == weights[t]) && fixture.permute(&perm) == *computed
    })
}

fn row_issues(row: &FixtureRow, n: usize, computed: &Computed) -> Vec<String> {
    let mut issues = Vec::new();
    let fixture_sorted = sorted_desc(&row.weights);
    if fixture_sorted != computed.weights || row.h != computed.h {
        issues.push(format!(
            "weights {}; h={} but computed {}; h={}",
            fmt_tuple(&row.weights),
            row.h,
            fmt_tuple(&computed.weights),
            computed.h
        ));
    }
    match Signature::derive(&row.signature) {
        Ok(sig) => {
            for (g, &w) in row.generators.iter().zip(&row.weights) {
                match parse_generator(g, n) {
                    Ok(m) => match sig.weighted_degree(&m) {
                        Some(d) if d == w => {}
                        Some(d) => issues.push(format!("generator {g} has degree {d}, listed as {w}")),
                        None => issues.push(format!("generator {g} is not in the canonical ring")),
                    },
                    Err(e) => issues.push(e.to_string()),
                }
            }
        }
        Err(e) => issues.push(e.to_string()),
    }
    match parse_relation(&row.relation, n) {
        Ok(rel) => {
            if rel.weighted_degree(&row.weights) != Some(row.h) {
                issues.push(format!("relation {} is not homogeneous of degree {}", row.relation, row.h));
            } else if let Some(ours) = &computed.relation {
                if fixture_sorted == computed.weights && !relations_match(&rel, &row.weights, ours, &computed.weights) {
                    issues.push(format!("relation {} differs from the computed one", row.relation));
                }
            }
        }
        Err(e) => issues.push(e.to_string()),
    }
    issues
}

fn compute(f: &Fixture) -> Result<Vec<Computed>> {
    if f.n == 3 {
        let largest = f.rows.iter().flat_map(|r| r.signature.iter().copied()).max().unwrap_or(0);
        let found = classify_n3(DEFAULT_SCAN_MAX.max(largest))?;
        return Ok(found
            .into_iter()
            .map(|t| Computed {
                signature: t.signature.exponents().to_vec(),
                weights: t.weights,
                h: t.h,
                relation: None,
            })
            .collect());
    }
    let mut out = Vec::new();
    for sig in enumerate_candidates(f.n)?.signatures {
        let cls = classify(&sig)?;
        if let Some(p) = cls.presentation() {
            out.push(Computed {
                signature: sig.exponents().to_vec(),
                weights: p.weights.clone(),
                h: p.h,
                relation: Some(p.relation.clone()),
            });
        }
    }
    Ok(out)
}

/// Recomputes the hypersurface signatures of length `fixture.n` and diffs
/// them against the fixture rows.
pub fn verify(fixture: &Fixture) -> Result<VerifyReport> {
    let computed = compute(fixture)?;
    let mut diffs = Vec::new();
    for row in &fixture.rows {
        let mut key = row.signature.clone();
        key.sort_unstable();
        let label = fmt_tuple(&row.signature);
        match computed.iter().find(|c| c.signature == key) {
            None => diffs.push(format!("{label}: listed but not a computed hypersurface")),
            Some(c) => {
                let issues = row_issues(row, fixture.n, c);
                if !issues.is_empty() {
                    diffs.push(format!("{label}: {}", issues.join("; ")));
                }
            }
        }
    }
    for c in &computed {
        let listed = fixture.rows.iter().any(|r| {
            let mut key = r.signature.clone();
            key.sort_unstable();
            key == c.signature
        });
        if !listed {
            diffs.push(format!(
                "{}: computed hypersurface {}; h={} missing from the table",
                fmt_tuple(&c.signature),
                fmt_tuple(&c.weights),
                c.h
            ));
        }
    }
    Ok(VerifyReport { table: fixture.table.clone(), rows: fixture.rows.len(), diffs })
}
