//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict or a
//! table mismatch, 2 usage error, 3 internal certificate failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classifier::{classify, Classification, Verdict};
use crate::enumeration::enumerate_candidates;
use crate::error::Error;
use crate::fixtures::{self, Fixture, VerifyReport};
use crate::grading::{fmt_tuple, variable_names, Signature};
use crate::hilbert;
use crate::isolated::{isolatedness, IsolatednessReport};
use crate::oracle::{classify_n3_with_bound, TriangleHypersurface, DEFAULT_SCAN_MAX, DEFAULT_TRIANGLE_BOUND};
use crate::Int;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

const PROPERTY_NOTE: &str =
    "n >= 5: no reference table exists; these results are property-verified only";

#[derive(Parser, Debug)]
#[command(name = "trisig", version, about = "Hypersurface triangle singularities by signature")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the signatures of length n with defect 1/N and their verdicts.
    Enumerate {
        #[arg(short = 'n')]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also list candidates that are not hypersurfaces.
        #[arg(long)]
        include_rejected: bool,
    },
    /// Classify one signature, given as comma-separated exponents.
    Classify {
        signature: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hypersurface signatures with three exponents.
    Table1 {
        #[arg(long, default_value_t = DEFAULT_SCAN_MAX as i64)]
        scan_max: i64,
        /// Highest degree searched for generators before certification.
        #[arg(long, default_value_t = DEFAULT_TRIANGLE_BOUND)]
        degree_bound: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute a reference table and report differences.
    Verify {
        /// JSON table; defaults to both embedded tables.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Hilbert function of the canonical ring.
    Hilbert {
        signature: String,
        #[arg(long, default_value_t = 40)]
        max_degree: i64,
    },
}

/// One term of an expanded relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedTerm {
    pub coeff: Int,
    pub exps: Vec<u64>,
}

/// Machine-readable classification of one signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub signature: Vec<Int>,
    pub status: String,
    pub generators: Vec<String>,
    pub weights: Vec<Int>,
    pub h: Int,
    pub relation: String,
    pub relation_expanded: Vec<ExpandedTerm>,
    pub isolated: bool,
    pub a_invariant: Int,
    /// 1-based index whose generator is the mixed product.
    pub chosen_i: Option<usize>,
    /// 1-based `[i, j, s]` with `s = gcd(p_i, p_j) > 1`.
    pub pairs: Vec<[Int; 3]>,
}

impl OutputRecord {
    pub fn new(cls: &Classification, iso: &IsolatednessReport) -> Self {
        let pairs = iso
            .non_isolated_pairs
            .iter()
            .map(|p| [p.i as Int + 1, p.j as Int + 1, p.s])
            .collect();
        let mut rec = OutputRecord {
            signature: cls.signature.exponents().to_vec(),
            status: cls.status().to_string(),
            generators: Vec::new(),
            weights: Vec::new(),
            h: 0,
            relation: String::new(),
            relation_expanded: Vec::new(),
            isolated: iso.fraction_test,
            a_invariant: 0,
            chosen_i: None,
            pairs,
        };
        if let Some(p) = cls.presentation() {
            rec.generators = p.generator_strings();
            rec.weights = p.weights.clone();
            rec.h = p.h;
            rec.relation = p.relation_display();
            rec.relation_expanded =
                p.relation.terms().map(|(e, c)| ExpandedTerm { coeff: *c, exps: e.clone() }).collect();
            rec.a_invariant = p.a_invariant();
            rec.chosen_i = p.chosen.map(|i| i + 1);
        }
        rec
    }

    fn weights_cell(&self) -> String {
        if self.weights.is_empty() {
            "-".to_string()
        } else {
            let w: Vec<String> = self.weights.iter().map(|x| x.to_string()).collect();
            format!("({};{})", w.join(","), self.h)
        }
    }

    fn csv_row(&self) -> [String; 7] {
        [
            fmt_tuple(&self.signature),
            self.status.clone(),
            self.generators.join(","),
            self.weights.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            self.h.to_string(),
            self.relation.clone(),
            self.isolated.to_string(),
        ]
    }
}

/// Triangle table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub signature: Vec<Int>,
    pub generators: Vec<String>,
    pub weights: Vec<Int>,
    pub h: Int,
    pub a_invariant: Int,
}

impl TriangleRecord {
    pub fn new(t: &TriangleHypersurface) -> Self {
        let names = variable_names(3);
        TriangleRecord {
            signature: t.signature.exponents().to_vec(),
            generators: t.generators.iter().map(|g| g.render(&names)).collect(),
            weights: t.weights.clone(),
            h: t.h,
            a_invariant: t.a_invariant(),
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invariant(_) | Error::BoundTooSmall { .. } => EXIT_CERTIFICATE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure { code: EXIT_OK, message: String::new() };
        }
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: EXIT_CERTIFICATE, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: EXIT_CERTIFICATE, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `2,3,9,21` or `(2,3,9,21)`.
pub fn parse_signature(text: &str) -> crate::Result<Signature> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let exps = inner
        .split(',')
        .map(|s| s.trim().parse::<Int>().map_err(|_| Error::Parse(format!("bad exponent {s:?} in {text:?}"))))
        .collect::<crate::Result<Vec<_>>>()?;
    Signature::derive(&exps)
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Enumerate { n, format, include_rejected } => cmd_enumerate(n, format, include_rejected, out, err),
        Command::Classify { signature, format } => cmd_classify(&signature, format, out),
        Command::Table1 { scan_max, degree_bound, format } => cmd_table1(scan_max, degree_bound, format, out),
        Command::Verify { fixture } => cmd_verify(fixture, out),
        Command::Hilbert { signature, max_degree } => cmd_hilbert(&signature, max_degree, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn record_for(sig: &Signature) -> std::result::Result<(Classification, OutputRecord), Failure> {
    let cls = classify(sig)?;
    let iso = isolatedness(&cls)?;
    let rec = OutputRecord::new(&cls, &iso);
    Ok((cls, rec))
}

fn write_table(rows: &[Vec<String>], out: &mut dyn Write) -> std::io::Result<()> {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}  ", w = widths[c]));
            }
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}

fn write_csv(records: &[OutputRecord], out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(out);
    w.write_record(["signature", "status", "generators", "weights", "h", "relation", "isolated"])?;
    for r in records {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_enumerate(n: i64, format: Format, include_rejected: bool, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if n == 3 {
        return Err(usage("enumerate needs n >= 4; run `trisig table1` for three exponents"));
    }
    if n < 4 {
        return Err(usage(format!("enumerate needs n >= 4, got {n}")));
    }
    let set = enumerate_candidates(n as usize)?;
    let mut records = Vec::new();
    for sig in &set.signatures {
        let (cls, rec) = record_for(sig)?;
        if include_rejected || cls.is_hypersurface() {
            records.push(rec);
        }
    }
    let hypersurfaces = records.iter().filter(|r| r.status == "hypersurface").count();
    match format {
        Format::Text => {
            if n >= 5 {
                writeln!(out, "# {PROPERTY_NOTE}")?;
            }
            writeln!(
                out,
                "# n = {n}: {} candidates with defect 1/N, {hypersurfaces} hypersurfaces",
                set.len()
            )?;
            let mut rows = vec![vec![
                "signature".to_string(),
                "status".to_string(),
                "generators".to_string(),
                "weights".to_string(),
                "isolated".to_string(),
                "relation".to_string(),
            ]];
            for r in &records {
                rows.push(vec![
                    fmt_tuple(&r.signature),
                    r.status.clone(),
                    if r.generators.is_empty() { "-".to_string() } else { r.generators.join(",") },
                    r.weights_cell(),
                    if r.isolated { "yes" } else { "no" }.to_string(),
                    if r.relation.is_empty() { "-".to_string() } else { r.relation.clone() },
                ]);
            }
            write_table(&rows, out)?;
        }
        Format::Json => {
            if n >= 5 {
                writeln!(err, "note: {PROPERTY_NOTE}")?;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?;
        }
        Format::Csv => {
            if n >= 5 {
                writeln!(err, "note: {PROPERTY_NOTE}")?;
            }
            write_csv(&records, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_classify(text: &str, format: Format, out: &mut dyn Write) -> CmdResult {
    let sig = parse_signature(text)?;
    if sig.n() == 3 {
        return Err(usage("classify needs n >= 4; run `trisig table1` for three exponents"));
    }
    let (cls, rec) = record_for(&sig)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rec)?)?,
        Format::Csv => write_csv(std::slice::from_ref(&rec), out)?,
        Format::Text => write_classification(&cls, &rec, out)?,
    }
    Ok(if cls.is_hypersurface() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn write_classification(cls: &Classification, rec: &OutputRecord, out: &mut dyn Write) -> std::io::Result<()> {
    let sig = &cls.signature;
    writeln!(out, "signature    {}", fmt_tuple(&rec.signature))?;
    writeln!(out, "defect       {}", sig.defect())?;
    writeln!(out, "lcm          {}", sig.lcm())?;
    writeln!(out, "status       {}", rec.status)?;
    match &cls.verdict {
        Verdict::NotCandidate => {
            writeln!(out, "reason       defect is not 1/{}", sig.lcm())?;
        }
        Verdict::CandidateRejected { attempts } => {
            if attempts.is_empty() {
                writeln!(out, "reason       no index has q_i = p_i")?;
            }
            for a in attempts {
                let label = a.chosen.map_or("all q_i = 1".to_string(), |i| format!("i = {}", i + 1));
                if a.failing_count > 0 {
                    let ks: Vec<String> = a.failing.iter().map(|k| k.to_string()).collect();
                    let more = if a.failing_count > a.failing.len() { ", ..." } else { "" };
                    writeln!(
                        out,
                        "attempt      {label}: {} degrees do not factor: {}{more}",
                        a.failing_count,
                        ks.join(", ")
                    )?;
                } else {
                    writeln!(out, "attempt      {label}: series identity fails")?;
                }
            }
        }
        Verdict::Hypersurface { .. } => {
            writeln!(out, "generators   {}", rec.generators.join(", "))?;
            writeln!(out, "weights      {}", rec.weights_cell())?;
            writeln!(out, "relation     {}", rec.relation)?;
            writeln!(out, "a-invariant  {}", rec.a_invariant)?;
        }
    }
    if rec.isolated {
        writeln!(out, "isolated     yes")?;
    } else {
        let pairs: Vec<String> =
            rec.pairs.iter().map(|[i, j, s]| format!("A_{} along ({i},{j})", s - 1)).collect();
        writeln!(out, "isolated     no: {}", pairs.join(", "))?;
    }
    Ok(())
}

fn cmd_table1(scan_max: i64, degree_bound: i64, format: Format, out: &mut dyn Write) -> CmdResult {
    let rows = classify_n3_with_bound(Int::from(scan_max), degree_bound)?;
    let records: Vec<TriangleRecord> = rows.iter().map(TriangleRecord::new).collect();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?,
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(&mut *out);
            w.write_record(["signature", "generators", "weights", "h"])?;
            for r in &records {
                let w_cell: Vec<String> = r.weights.iter().map(|x| x.to_string()).collect();
                w.write_record([fmt_tuple(&r.signature), r.generators.join(","), w_cell.join(","), r.h.to_string()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "# {} hypersurface signatures with p <= q <= r <= {scan_max}", records.len())?;
            let mut table = vec![vec!["signature".to_string(), "generators".to_string(), "weights".to_string()]];
            for r in &records {
                let w: Vec<String> = r.weights.iter().map(|x| x.to_string()).collect();
                table.push(vec![
                    fmt_tuple(&r.signature),
                    r.generators.join(","),
                    format!("({};{})", w.join(","), r.h),
                ]);
            }
            write_table(&table, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_report(report: &VerifyReport, out: &mut dyn Write) -> std::io::Result<()> {
    if report.is_match() {
        writeln!(out, "{}: {} rows match", report.table, report.rows)
    } else {
        writeln!(out, "{}: {} rows, {} differences", report.table, report.rows, report.diffs.len())?;
        for d in &report.diffs {
            writeln!(out, "- {d}")?;
        }
        Ok(())
    }
}

fn cmd_verify(path: Option<PathBuf>, out: &mut dyn Write) -> CmdResult {
    let tables = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            vec![Fixture::from_json(&text)?]
        }
        None => vec![Fixture::table2(), Fixture::table1()],
    };
    let mut all_match = true;
    for t in &tables {
        let report = fixtures::verify(t)?;
        all_match &= report.is_match();
        write_report(&report, out)?;
    }
    Ok(if all_match { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_hilbert(text: &str, max_degree: i64, out: &mut dyn Write) -> CmdResult {
    if max_degree < 0 {
        return Err(usage(format!("max degree must be nonnegative, got {max_degree}")));
    }
    let sig = parse_signature(text)?;
    writeln!(out, "signature  {}", fmt_tuple(sig.exponents()))?;
    writeln!(out, "defect     {}", sig.defect())?;
    writeln!(out, "lcm        {}", sig.lcm())?;
    if sig.n() >= 4 && sig.is_candidate() {
        let cls = classify(&sig)?;
        if let Some(cert) = cls.certificate() {
            let w: Vec<String> = cert.weights.iter().map(|x| x.to_string()).collect();
            writeln!(out, "series     (1-t^{})/prod(1-t^a), a = ({})", cert.h, w.join(","))?;
            writeln!(out, "identity   {}", if cert.checks.hypersurface_identity { "holds" } else { "fails" })?;
        } else {
            writeln!(out, "series     not a hypersurface")?;
        }
    }
    writeln!(out, "k  dim R_k")?;
    for k in 0..=max_degree {
        let d: Int = hilbert::hilbert_coefficient(&sig, k)?;
        writeln!(out, "{k}  {d}")?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["trisig"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_table_row() {
        let (code, out, _) = call(&["classify", "2,3,9,21"]);
        assert_eq!(code, 0);
        assert!(out.contains("(63,62,42,18;186)"));
        assert!(out.contains("y^3+zw(x^2+z^3+w^7)"));
    }

    #[test]
    fn classify_negative_and_errors() {
        assert_eq!(call(&["classify", "2,3,7,50"]).0, 1);
        assert_eq!(call(&["classify", "2,3"]).0, 2);
        assert_eq!(call(&["classify", "2,x,7"]).0, 2);
        assert_eq!(call(&["classify", "2,3,7"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
    }

    #[test]
    fn json_record_round_trips() {
        let (code, out, _) = call(&["classify", "2,3,7,44", "--format", "json"]);
        assert_eq!(code, 0);
        let rec: OutputRecord = serde_json::from_str(&out).unwrap();
        assert_eq!(rec.weights, vec![483, 308, 132, 42]);
        assert_eq!(rec.chosen_i, Some(1));
        assert_eq!(rec.pairs, vec![[1, 4, 2]]);
        assert_eq!(serde_json::to_string_pretty(&rec).unwrap(), out.trim_end());
    }

    #[test]
    fn signature_parsing() {
        assert_eq!(parse_signature("(2,3,7,43)").unwrap().exponents(), &[2, 3, 7, 43]);
        assert_eq!(parse_signature(" 43, 2,7 ,3").unwrap().exponents(), &[2, 3, 7, 43]);
        assert!(parse_signature("2,,3").is_err());
    }
}
