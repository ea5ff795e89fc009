//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! [`run`] never exits the process; it returns the exit code so the binary
//! and the tests share one code path. Exit codes: 0 on success, 1 on usage
//! and domain errors (bad input, caps exceeded), 2 when `verify` finds a
//! mismatch.

pub mod records;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use semifactor::classifier::{
    classify, exhaustive_scan, match_hits, verify_known_cases, ClassificationReport, ClassifierConfig, FamilyKind,
    Verdict,
};
use semifactor::factorizer::{Factorizer, FactorizerConfig};
use semifactor::graph::{format_graph, graph_factorizations, parse_graph_file, FactorLimits, GraphSum, Product};
use semifactor::gridorder::enumerate_bijections;
use semifactor::poly::{format, parse_with, ParseOptions, DEFAULT_EXPONENT_CAP};
use semifactor::{ClassifyError, FactorError, GraphError, GridShape, PolyError, SparsePoly};

use records::Record;

#[derive(Debug, Parser)]
#[command(name = "semifactor", version, about = "Factorization in N[X] and of disconnected graphs")]
pub struct Cli {
    /// Worker threads for classification and scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every complete factorization of a polynomial.
    Factor(FactorArgs),
    /// Print the grid bijections compatible with dominance for an r x s grid.
    Bijections(BijectionArgs),
    /// Classify every non-unique factorization with t terms.
    Classify(ClassifyArgs),
    /// List all primitive univariate t-term polynomials up to a degree with
    /// several factorizations.
    Scan(ScanArgs),
    /// Factor a disconnected graph read from a file.
    GraphFactor(GraphArgs),
    /// Check the known identities and classification counts.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// Polynomial such as `1+X+X^2+X^3+X^4+X^5` or `2*X1*X2^3 + 1`.
    pub poly: String,
    /// Largest term count accepted, coefficients counted.
    #[arg(long, default_value_t = FactorizerConfig::default().max_terms)]
    pub max_terms: usize,
    /// Largest exponent accepted while parsing.
    #[arg(long, default_value_t = DEFAULT_EXPONENT_CAP)]
    pub exponent_cap: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BijectionArgs {
    pub rows: usize,
    pub cols: usize,
    /// Identify a bijection with its transpose (square grids only).
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifierFlags {
    /// Largest term count classified.
    #[arg(long, default_value_t = ClassifierConfig::default().max_t)]
    pub max_t: usize,
    /// Largest exponent used when comparing families by their instances.
    #[arg(long, default_value_t = ClassifierConfig::default().family_bound)]
    pub family_bound: u64,
    /// Cap on parameter points per bounded instance set.
    #[arg(long, default_value_t = ClassifierConfig::default().instance_budget)]
    pub instance_budget: u128,
    /// Cap on tuples visited by an exhaustive scan.
    #[arg(long, default_value_t = ClassifierConfig::default().scan_budget)]
    pub scan_budget: u128,
    /// Largest term count the factorizer accepts.
    #[arg(long, default_value_t = FactorizerConfig::default().max_terms)]
    pub max_terms: usize,
}

impl ClassifierFlags {
    fn config(&self) -> ClassifierConfig {
        ClassifierConfig {
            max_t: self.max_t,
            family_bound: self.family_bound,
            instance_budget: self.instance_budget,
            scan_budget: self.scan_budget,
            factorizer: FactorizerConfig {
                max_terms: self.max_terms,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub t: usize,
    /// Degree bound of the cross-check scan.
    #[arg(long, default_value_t = 10)]
    pub max_exp: u64,
    /// Cross-check the classification against an exhaustive scan.
    #[arg(long)]
    pub scan: bool,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub caps: ClassifierFlags,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub t: usize,
    #[arg(long, default_value_t = 10)]
    pub max_exp: u64,
    /// Also match every hit against the classification for `t`.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub caps: ClassifierFlags,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file: blocks `n=<count> [loops]` followed by `u v` edge lines.
    pub file: PathBuf,
    #[arg(long, value_parser = parse_product)]
    pub product: Product,
    /// Largest candidate factor enumerated outright.
    #[arg(long, default_value_t = FactorLimits::default().max_factor_vertices)]
    pub max_factor_vertices: usize,
    /// Vertex subsets visited when reading larger factors off the graph.
    #[arg(long, default_value_t = FactorLimits::default().layer_budget)]
    pub layer_budget: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Classify every term count up to this one.
    #[arg(long, default_value_t = 10)]
    pub max_t: usize,
    #[arg(long)]
    pub json: bool,
}

fn parse_product(s: &str) -> Result<Product, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Where a command writes: plain text or one JSON record per line.
struct Sink<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Sink<'_> {
    fn record(&mut self, r: &Record) -> Result<(), CliError> {
        if self.json {
            serde_json::to_writer(&mut *self.out, r)?;
            writeln!(self.out)?;
        }
        Ok(())
    }

    fn text(&mut self, line: impl AsRef<str>) -> Result<(), CliError> {
        if !self.json {
            writeln!(self.out, "{}", line.as_ref())?;
        }
        Ok(())
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return 1;
        }
        // A second call in the same process keeps the first pool, which only
        // matters to in-process tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Factor(a) => factor(&a, &mut Sink { out, json: a.json }).map(|_| 0),
        Command::Bijections(a) => bijections(&a, &mut Sink { out, json: a.json }).map(|_| 0),
        Command::Classify(a) => classify_cmd(&a, &mut Sink { out, json: a.json }).map(|_| 0),
        Command::Scan(a) => scan(&a, &mut Sink { out, json: a.json }).map(|_| 0),
        Command::GraphFactor(a) => graph_factor(&a, &mut Sink { out, json: a.json }).map(|_| 0),
        Command::Verify(a) => verify(&a, &mut Sink { out, json: a.json }),
    }
}

fn factor(a: &FactorArgs, sink: &mut Sink) -> Result<(), CliError> {
    let options = ParseOptions {
        exponent_cap: a.exponent_cap,
        max_terms: a.max_terms,
    };
    let p = parse_with(&a.poly, None, &options)?;
    let mut fz = Factorizer::new(FactorizerConfig { max_terms: a.max_terms });
    let fs = fz.all_factorizations(&p)?;
    let text = format(&p);
    for f in &fs {
        sink.text(f.to_string())?;
        sink.record(&Record::Factorization {
            polynomial: text.clone(),
            content: format(&SparsePoly::monomial(f.content.clone())),
            factors: f.factors.iter().map(format).collect(),
        })?;
    }
    sink.text(format!("factorizations: {}", fs.len()))?;
    sink.record(&Record::FactorSummary {
        polynomial: text,
        factorizations: fs.len(),
    })
}

fn bijections(a: &BijectionArgs, sink: &mut Sink) -> Result<(), CliError> {
    if a.rows == 0 || a.cols == 0 {
        return Err(CliError::Usage("grid sides must be positive".to_string()));
    }
    if a.symmetric && a.rows != a.cols {
        return Err(CliError::Usage("--symmetric needs a square grid".to_string()));
    }
    if a.rows * a.cols > 16 {
        return Err(CliError::Usage(format!(
            "{}x{} has more than 16 cells; enumeration is capped there",
            a.rows, a.cols
        )));
    }
    let shape = GridShape::new(a.rows, a.cols);
    for (k, b) in enumerate_bijections(shape, a.symmetric).iter().enumerate() {
        sink.text(b.table_row(k + 1))?;
        sink.record(&Record::Bijection {
            shape,
            case: k + 1,
            cells: b.cells().iter().map(|c| (c.row + 1, c.col + 1)).collect(),
        })?;
    }
    Ok(())
}

fn family_label(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Sporadic => "sporadic",
        FamilyKind::Parametric => "parametric",
    }
}

fn keys_text(keys: &[semifactor::classifier::PairKey]) -> String {
    if keys.is_empty() {
        return "-".to_string();
    }
    keys.iter()
        .map(|k| format!("{}:({},{})", k.shape, k.first, k.second))
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit_report(report: &ClassificationReport, sink: &mut Sink) -> Result<(), CliError> {
    sink.text(format!("# classification of {}-term polynomials", report.t))?;
    for s in &report.shapes {
        let sym = if s.symmetric { ", symmetric" } else { "" };
        sink.text(format!("\n## bijections {} ({} cases{sym})", s.shape, s.bijections))?;
        sink.record(&Record::Shape {
            shape: s.shape,
            symmetric: s.symmetric,
            bijections: s.bijections,
        })?;
        for (k, b) in enumerate_bijections(s.shape, s.symmetric).iter().enumerate() {
            sink.text(b.table_row(k + 1))?;
        }
    }
    for s in &report.shapes {
        sink.text(format!("\n## verdicts {}", s.shape))?;
        sink.text(". equivalent, f forced by nonnegativity, r equivalent after refinement, N non-unique")?;
        for row in report.verdict_matrix(s.shape) {
            sink.text(row.trim_end())?;
        }
    }
    for p in report.pairs.iter().filter(|p| p.verdict != Verdict::Equivalent) {
        sink.record(&Record::Pair {
            key: p.key,
            verdict: p.verdict,
            patterns: p.patterns.clone(),
            left_ratio: p.left_ratio,
        })?;
    }
    let buckets = report.ratio_buckets();
    if !buckets.is_empty() {
        sink.text("\n## non-unique pairs by exponent ratio of the two-term factors")?;
        for (ratio, keys) in &buckets {
            sink.text(format!("{}:{} ({}) {}", ratio.0, ratio.1, keys.len(), keys_text(keys)))?;
        }
    }
    sink.text("\n## families")?;
    if report.families.is_empty() {
        sink.text("none")?;
    }
    for f in &report.families {
        let rep: Vec<String> = f.representative.iter().map(u64::to_string).collect();
        sink.text(format!(
            "{} (dimension {}): exponents {}",
            family_label(f.kind),
            f.dimension,
            rep.join(" ")
        ))?;
        let (p1, p2) = &f.patterns;
        sink.text(format!(
            "  ({}) * ({}) = ({}) * ({})",
            p1.left.join(", "),
            p1.right.join(", "),
            p2.left.join(", "),
            p2.right.join(", ")
        ))?;
        sink.text(format!("  pairs: {}", keys_text(&f.pairs)))?;
        sink.text(format!("  specializations: {}", keys_text(&f.specializations)))?;
        sink.record(&Record::Family {
            family: f.kind,
            dimension: f.dimension,
            representative: f.representative.clone(),
            patterns: f.patterns.clone(),
            pairs: f.pairs.clone(),
            specializations: f.specializations.clone(),
        })?;
    }
    Ok(())
}

fn summary(report: &ClassificationReport) -> Record {
    Record::ClassifySummary {
        t: report.t,
        unique: report.unique,
        inequivalent_pairs: report.inequivalent_pairs(),
        non_unique_pairs: report.count(Verdict::NonUnique),
        sporadic_families: report.families_of(FamilyKind::Sporadic).count(),
        parametric_families: report.families_of(FamilyKind::Parametric).count(),
    }
}

fn classify_cmd(a: &ClassifyArgs, sink: &mut Sink) -> Result<(), CliError> {
    let config = a.caps.config();
    let report = classify(a.t, &config)?;
    emit_report(&report, sink)?;
    if a.scan {
        let hits = exhaustive_scan(a.t, a.max_exp, &config)?;
        let check = match_hits(&report, &hits, a.max_exp, &config)?;
        sink.text(format!(
            "\n## scan up to degree {}: {} hits, {} matched, {} unmatched",
            a.max_exp,
            check.hits,
            check.matched,
            check.unmatched.len()
        ))?;
        for u in &check.unmatched {
            sink.text(format!("unmatched {u:?}"))?;
        }
        sink.record(&Record::ScanSummary {
            t: a.t,
            max_exp: a.max_exp,
            hits: check.hits,
            matched: Some(check.matched),
            unmatched: check.unmatched.clone(),
        })?;
    }
    sink.text(format!(
        "\nunique factorization for {} terms: {}",
        a.t,
        if report.unique { "yes" } else { "no" }
    ))?;
    sink.record(&summary(&report))
}

fn scan(a: &ScanArgs, sink: &mut Sink) -> Result<(), CliError> {
    let config = a.caps.config();
    let hits = exhaustive_scan(a.t, a.max_exp, &config)?;
    for h in &hits {
        sink.text(format!("{}  [{} factorizations]", format(&h.poly), h.factorizations))?;
        sink.record(&Record::ScanHit {
            t: a.t,
            exponents: h.exponents.clone(),
            factorizations: h.factorizations,
        })?;
    }
    let (matched, unmatched) = if a.check {
        let report = classify(a.t, &config)?;
        let check = match_hits(&report, &hits, a.max_exp, &config)?;
        (Some(check.matched), check.unmatched)
    } else {
        (None, Vec::new())
    };
    let mut line = format!("hits: {}", hits.len());
    if let Some(m) = matched {
        line.push_str(&format!(", matched: {m}, unmatched: {}", unmatched.len()));
    }
    sink.text(line)?;
    sink.record(&Record::ScanSummary {
        t: a.t,
        max_exp: a.max_exp,
        hits: hits.len(),
        matched,
        unmatched,
    })
}

fn graph_factor(a: &GraphArgs, sink: &mut Sink) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&a.file).map_err(|source| CliError::Read {
        path: a.file.clone(),
        source,
    })?;
    let gs = GraphSum::from_graph(&parse_graph_file(&text)?)?;
    if gs.is_empty() {
        return Err(CliError::Usage("the graph has no vertices".to_string()));
    }
    let limits = FactorLimits {
        max_factor_vertices: a.max_factor_vertices,
        layer_budget: a.layer_budget,
    };
    let (dict, fs) = graph_factorizations(&gs, a.product, &limits)?;
    for (i, f) in fs.iter().enumerate() {
        let content = dict.monomial_text(f.polynomial.content.as_slice());
        let factors: Vec<String> = f.polynomial.factors.iter().map(|q| dict.sum_text(q)).collect();
        let mut parts = Vec::new();
        if f.polynomial.content.as_slice().iter().any(|&e| e > 0) {
            parts.push(content.clone());
        }
        parts.extend(factors.iter().map(|s| format!("({s})")));
        let joined = if parts.is_empty() { content.clone() } else { parts.join(&format!(" {} ", a.product.symbol())) };
        sink.text(format!("factorization {}: {joined}", i + 1))?;
        sink.record(&Record::GraphFactorization {
            product: a.product,
            index: i + 1,
            content,
            factors,
        })?;
    }
    sink.text(format!("factorizations: {}", fs.len()))?;
    sink.text("\ndictionary:")?;
    for (i, g) in dict.graphs().iter().enumerate() {
        let name = format!("G{}", i + 1);
        sink.text(format!("{name}: {}", format_graph(g).trim_end().replace('\n', "; ")))?;
        sink.record(&Record::GraphVariable {
            name,
            vertices: g.vertex_count(),
            edges: g.edges(),
        })?;
    }
    sink.record(&Record::GraphSummary {
        product: a.product,
        factorizations: fs.len(),
    })
}

fn verify(a: &VerifyArgs, sink: &mut Sink) -> Result<i32, CliError> {
    let mut checks: Vec<(String, bool, String)> = verify_known_cases()
        .into_iter()
        .map(|c| (c.name, c.passed, c.detail))
        .collect();
    let config = ClassifierConfig {
        max_t: a.max_t.max(ClassifierConfig::default().max_t),
        ..ClassifierConfig::default()
    };
    for t in 1..=a.max_t {
        let report = classify(t, &config)?;
        let expected = !matches!(t, 6 | 10);
        checks.push((
            format!("{t}-term polynomials {}", if expected { "factor uniquely" } else { "admit non-unique factorization" }),
            report.unique == expected,
            format!("{} inequivalent pairs, {} non-unique", report.inequivalent_pairs(), report.count(Verdict::NonUnique)),
        ));
        if t == 10 {
            let sporadic = report.families_of(FamilyKind::Sporadic).count();
            let parametric = report.families_of(FamilyKind::Parametric).filter(|f| f.dimension == 2).count();
            checks.push((
                "ten terms: 102 inequivalent pairs".to_string(),
                report.inequivalent_pairs() == 102,
                format!("found {}", report.inequivalent_pairs()),
            ));
            checks.push((
                "ten terms: 3 sporadic identities and 2 two-parameter families".to_string(),
                sporadic == 3 && parametric == 2 && report.families.len() == 5,
                format!("found {sporadic} sporadic, {parametric} two-parameter"),
            ));
        }
    }
    let failed = checks.iter().filter(|c| !c.1).count();
    for (name, passed, detail) in &checks {
        let status = if *passed { "PASS" } else { "FAIL" };
        if detail.is_empty() {
            sink.text(format!("{status} {name}"))?;
        } else {
            sink.text(format!("{status} {name}: {detail}"))?;
        }
        sink.record(&Record::Check {
            name: name.clone(),
            passed: *passed,
            detail: detail.clone(),
        })?;
    }
    sink.text(format!("{} passed, {failed} failed", checks.len() - failed))?;
    sink.record(&Record::VerifySummary {
        passed: checks.len() - failed,
        failed,
    })?;
    Ok(if failed == 0 { 0 } else { 2 })
}
