//! The `extremal` command line: constructions, bounds, cluster analysis,
//! folding, search and the verification suites.
//!
//! Every subcommand produces [`VerificationReport`]s; `--format` picks a
//! text table, line-delimited JSON, or bare graph6 lines.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use extremal_core::cluster::{self, blue_triangle_bound, excluded_red_predicate, q_value, ClusterError};
use extremal_core::colex::{self, ColexError};
use extremal_core::graph6::{self, Graph6Error};
use extremal_core::multiset::{mk_oracle, MultisetError};
use extremal_core::report::{Case, Counterexample, ReportParseError, VerificationReport};
use extremal_core::search::{self, SearchError, SearchOptions, SearchSpec};
use extremal_core::verify::{self, Suite, SuiteConfig, VerifyError};
use extremal_core::{binomial, Graph};
use thiserror::Error;

/// Exit status when every assertion holds.
pub const EXIT_OK: i32 = 0;
/// Exit status when an assertion fails; the output carries a counterexample.
pub const EXIT_ASSERTION: i32 = 1;
/// Exit status for bad flags, unreadable or malformed input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Clique counts in graphs of bounded maximum degree")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output here instead of stdout (`-` is stdout).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    /// One JSON report per line.
    Structured,
    /// Only the graphs produced, one graph6 string per line.
    Graph6,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build C(b), or the rainbow graph R_ω(m), and count its K_t.
    Colex {
        #[arg(long, conflicts_with_all = ["omega", "m"])]
        b: Option<usize>,
        #[arg(long, requires = "m")]
        omega: Option<u64>,
        #[arg(long, requires = "omega")]
        m: Option<usize>,
        #[arg(long, default_value_t = 3)]
        t: usize,
    },
    /// Split m = a·C(r+1,2) + b with b = C(c,2) + d.
    Decompose {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
    },
    /// g_t, the asymptotic bound, and the degree-multiset bounds 3M_k, 3M*_k.
    Bound {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 3)]
        t: u64,
        /// Penalty on degree-r entries of the multiset bound.
        #[arg(long, default_value_t = 5)]
        k: u64,
    },
    /// List the clusters of each input graph with Q(R) and exclusion verdicts.
    Clusters {
        /// File of graph6 lines, or `-` for stdin.
        input: String,
        #[arg(long)]
        r: usize,
    },
    /// Fold every foldable cluster and compare k_3 before and after.
    Fold {
        /// File of graph6 lines, or `-` for stdin.
        input: String,
        #[arg(long)]
        r: usize,
    },
    /// Compute f_t(m, r) by exhaustive search and compare with g_t(m, r).
    Search {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Only connected graphs.
        #[arg(long)]
        connected: bool,
        /// Clique-number cap ω.
        #[arg(long)]
        omega: Option<usize>,
        #[arg(long)]
        vertex_cap: Option<usize>,
        /// Maximum number of generated classes.
        #[arg(long, env = "EXTREMAL_BUDGET")]
        budget: Option<u64>,
        /// Progress file; an interrupted search resumes from it.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a named verification suite.
    Verify {
        /// s-2 | compincr | QR | half | D2 | b1b2 | seqopt | r8-table |
        /// r8-identity | main-desk | formula | kk | rainbow
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Instances for the randomized suites.
        #[arg(long, default_value_t = 10_000)]
        instances: u64,
        #[arg(long, env = "EXTREMAL_BUDGET")]
        budget: Option<u64>,
        /// Directory for search checkpoints.
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Aggregate structured reports from files (or `-`).
    Report {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Colex(#[from] ColexError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A malformed input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub source: String,
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.source, self.line, self.message)
    }
}

/// Graphs read from a graph6 file, with their line numbers.
#[derive(Debug, Default)]
pub struct Corpus {
    pub graphs: Vec<(usize, Graph)>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses newline-separated graph6 records. Blank lines are skipped; a bad
/// line becomes a diagnostic and the rest are still read.
pub fn parse_corpus(source: &str, reader: impl BufRead) -> Result<Corpus, io::Error> {
    let mut corpus = Corpus::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let parsed = if text.starts_with(':') || text.starts_with(">>sparse6<<") {
            Err("sparse6 records are not supported".to_string())
        } else {
            graph6::decode(text).map_err(|e: Graph6Error| e.to_string())
        };
        match parsed {
            Ok(g) => corpus.graphs.push((i + 1, g)),
            Err(message) => corpus.diagnostics.push(Diagnostic { source: source.to_string(), line: i + 1, message }),
        }
    }
    Ok(corpus)
}

/// Reads a graph6 corpus from `path`, or stdin for `-`.
pub fn ingest_corpus(path: &str) -> Result<Corpus, CliError> {
    let io_err = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        parse_corpus("<stdin>", io::stdin().lock()).map_err(io_err)
    } else {
        let file = File::open(Path::new(path)).map_err(io_err)?;
        parse_corpus(path, BufReader::new(file)).map_err(io_err)
    }
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub reports: Vec<VerificationReport>,
    /// Graphs for `--format graph6`.
    pub graphs: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Outcome {
    fn single(report: VerificationReport, graphs: Vec<String>) -> Self {
        Outcome { reports: vec![report], graphs, diagnostics: Vec::new() }
    }

    pub fn exit_code(&self) -> i32 {
        if !self.diagnostics.is_empty() {
            EXIT_USAGE
        } else if self.reports.iter().all(|r| r.passed) {
            EXIT_OK
        } else {
            EXIT_ASSERTION
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Table => {
                for (i, report) in self.reports.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&report.render_table());
                }
            }
            Format::Structured => {
                for report in &self.reports {
                    out.push_str(&report.to_jsonl());
                    out.push('\n');
                }
            }
            Format::Graph6 => {
                for g in &self.graphs {
                    out.push_str(g);
                    out.push('\n');
                }
            }
        }
        out
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Colex { b: Some(b), t, .. } => colex_cmd(*b, *t),
        Command::Colex { omega: Some(omega), m: Some(m), t, .. } => rainbow_cmd(*omega, *m, *t),
        Command::Colex { .. } => Err(CliError::Usage("colex needs --b, or --omega with --m".into())),
        Command::Decompose { m, r } => decompose_cmd(*m, *r),
        Command::Bound { m, r, t, k } => bound_cmd(*m, *r, *t, *k),
        Command::Clusters { input, r } => clusters_cmd(input, *r),
        Command::Fold { input, r } => fold_cmd(input, *r),
        Command::Search { m, r, t, connected, omega, vertex_cap, budget, checkpoint, threads } => {
            let mut spec = SearchSpec::new(*m, *r, *t).connected_only(*connected).clique_number_cap(*omega);
            if let Some(cap) = vertex_cap {
                spec = spec.vertex_cap(*cap);
            }
            let opts = SearchOptions { budget: *budget, checkpoint: checkpoint.clone(), threads: *threads };
            search_cmd(&spec, &opts)
        }
        Command::Verify { suite, seed, instances, budget, checkpoint_dir, threads } => {
            let suite: Suite = suite.parse().map_err(|e: VerifyError| CliError::Usage(e.to_string()))?;
            let config = SuiteConfig {
                seed: *seed,
                instances: *instances,
                budget: *budget,
                checkpoint_dir: checkpoint_dir.clone(),
                threads: *threads,
            };
            Ok(Outcome::single(verify::run_suite(suite, &config)?, Vec::new()))
        }
        Command::Report { inputs } => report_cmd(inputs),
    }
}

fn colex_cmd(b: usize, t: usize) -> Result<Outcome, CliError> {
    let g = colex::colex_graph(b)?;
    let (c, d) = colex::split_remainder(b as u64);
    let counted = g.count_cliques(t);
    let closed = colex::colex_clique_count(c, d, t as u64);
    let g6 = graph6::encode(&g);
    let id = format!("C({b})");
    let case = if counted == closed {
        Case::pass(id, 1)
    } else {
        Case::fail(
            id,
            1,
            Counterexample::new("clique count differs from C(c,t)+C(d,t-1)")
                .graph(g6.clone())
                .with("closed_form", closed),
        )
    };
    let mut report = VerificationReport::new("colex", &["conj:allt"]).param("b", b).param("t", t);
    report.push(
        case.with("graph6", g6.clone()).with("n", g.order()).with("c", c).with("d", d).with(&format!("k_{t}"), counted),
    );
    Ok(Outcome::single(report, vec![g6]))
}

fn rainbow_cmd(omega: u64, m: usize, t: usize) -> Result<Outcome, CliError> {
    let g = colex::rainbow_colex_graph(omega, m)?;
    let g6 = graph6::encode(&g);
    let mut report =
        VerificationReport::new("rainbow-colex", &["cor:rainbow"]).param("omega", omega).param("m", m).param("t", t);
    report.push(
        Case::pass(format!("R_{omega}({m})"), 1)
            .with("graph6", g6.clone())
            .with("n", g.order())
            .with(&format!("k_{t}"), g.count_cliques(t)),
    );
    Ok(Outcome::single(report, vec![g6]))
}

fn decompose_cmd(m: u64, r: u64) -> Result<Outcome, CliError> {
    let dec = colex::decompose(m, r)?;
    let rebuilt = dec.a * dec.block_edges() + binomial(dec.c, 2) + dec.d;
    let id = format!("m={m},r={r}");
    let case = if rebuilt == m && dec.d <= dec.c {
        Case::pass(id, 1)
    } else {
        Case::fail(id, 1, Counterexample::new("decomposition does not rebuild m").with("rebuilt", rebuilt))
    };
    let mut report = VerificationReport::new("decompose", &[]).param("m", m).param("r", r);
    report.push(case.with("a", dec.a).with("b", dec.b).with("c", dec.c).with("d", dec.d));
    Ok(Outcome::single(report, Vec::new()))
}

fn bound_cmd(m: u64, r: u64, t: u64, k: u64) -> Result<Outcome, CliError> {
    if t < 2 || t > r + 1 {
        return Err(CliError::Usage(format!("--t must lie in 2..={}", r + 1)));
    }
    let dec = colex::decompose(m, r)?;
    let mut case = Case::pass(format!("m={m},r={r},t={t}"), 1)
        .with("a", dec.a)
        .with("b", dec.b)
        .with("c", dec.c)
        .with("d", dec.d)
        .with(&format!("g_{t}"), dec.clique_count(t));
    if t >= 3 {
        case = case.with("asymptotic", colex::asymptotic_upper_bound(m, r, t)?.to_string());
    }
    let r_usize = r as usize;
    for (require_r, label) in [(false, format!("3M_{k}")), (true, format!("3M*_{k}"))] {
        case = match mk_oracle(m, r_usize, k, require_r) {
            Ok((value, witness)) => case.with(&label, value).with(&format!("{label} witness"), witness.to_string()),
            Err(e) => case.with(&label, format!("n/a ({e})")),
        };
    }
    let mut report =
        VerificationReport::new("bound", &["asymp", "lem:ub"]).param("m", m).param("r", r).param("t", t).param("k", k);
    report.push(case);
    Ok(Outcome::single(report, Vec::new()))
}

fn load(input: &str) -> Result<Corpus, CliError> {
    ingest_corpus(input)
}

fn clusters_cmd(input: &str, r: usize) -> Result<Outcome, CliError> {
    let corpus = load(input)?;
    let mut report =
        VerificationReport::new("clusters", &["lem:half", "thm:s=2", "thm:e=3", "thm:e=4", "lem:matching", "lem:D2b"])
            .param("r", r)
            .param("input", input);
    for (line, g) in &corpus.graphs {
        for (j, cl) in cluster::clusters(g, r)?.iter().enumerate() {
            let verdicts: Vec<String> = excluded_red_predicate(cl, r).iter().map(|e| e.to_string()).collect();
            report.push(
                Case::pass(format!("line{line}/cluster{j}"), 1)
                    .with("T", format!("{:?}", cl.tight))
                    .with("S", format!("{:?}", cl.common))
                    .with("e(R)", cl.red_edges())
                    .with("e(B)", cl.blue_edges())
                    .with("Q", q_value(&cl.red, r))
                    .with("blue_bound", blue_triangle_bound(&cl.red))
                    .with("excluded", if verdicts.is_empty() { "-".to_string() } else { verdicts.join(",") }),
            );
        }
    }
    let graphs = corpus.graphs.iter().map(|(_, g)| graph6::encode(g)).collect();
    Ok(Outcome { reports: vec![report], graphs, diagnostics: corpus.diagnostics })
}

fn fold_cmd(input: &str, r: usize) -> Result<Outcome, CliError> {
    let corpus = load(input)?;
    let mut report = VerificationReport::new("fold", &["lem:QR"]).param("r", r).param("input", input);
    let mut graphs = Vec::new();
    for (line, g) in &corpus.graphs {
        let before = g.count_cliques(3) as i64;
        for (j, cl) in cluster::clusters(g, r)?.iter().enumerate() {
            let id = format!("line{line}/cluster{j}");
            let folded = match cluster::fold(g, cl) {
                Ok(folded) => folded,
                Err(ClusterError::FoldRefused { blue, red }) => {
                    report.push(Case::pass(id, 0).with("skipped", format!("e(B)={blue} < e(R)={red}")));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let after = folded.count_cliques(3) as i64;
            let q = q_value(&cl.red, r);
            let g6 = graph6::encode(&folded);
            let case = if after - before >= q {
                Case::pass(id, 1)
            } else {
                Case::fail(
                    id,
                    1,
                    Counterexample::new("folding gained less than Q(R)")
                        .graph(graph6::encode(g))
                        .with("gain", after - before)
                        .with("Q", q),
                )
            };
            report.push(case.with("k3_before", before).with("k3_after", after).with("Q", q).with("folded", g6.clone()));
            graphs.push(g6);
        }
    }
    Ok(Outcome { reports: vec![report], graphs, diagnostics: corpus.diagnostics })
}

fn search_cmd(spec: &SearchSpec, opts: &SearchOptions) -> Result<Outcome, CliError> {
    let mut report = VerificationReport::new("search", &["conj:allt", "sec:mainthm"])
        .param("m", spec.m)
        .param("r", spec.r)
        .param("t", spec.t)
        .param("connected_only", spec.connected_only)
        .param("vertex_cap", spec.vertex_cap);
    if let Some(omega) = spec.clique_number_cap {
        report = report.param("omega", omega);
    }
    let id = format!("m={},r={},t={}", spec.m, spec.r, spec.t);
    match search::compute_f_with(spec, opts) {
        Ok(result) => {
            let case = if result.matches_conjecture {
                Case::pass(id, result.graphs_visited)
            } else {
                let mut cx =
                    Counterexample::new("f_t differs from g_t").with("f", result.f_value).with("g", result.g_value);
                if let Some(g6) = result.extremal_graphs.first() {
                    cx = cx.graph(g6.clone());
                }
                Case::fail(id, result.graphs_visited, cx)
            };
            report.push(
                case.with("f", result.f_value)
                    .with("g", result.g_value)
                    .with("extremal_classes", result.extremal_graphs.len()),
            );
            Ok(Outcome::single(report, result.extremal_graphs))
        }
        Err(SearchError::BudgetExceeded(progress)) => {
            let mut cx = Counterexample::new("budget exhausted before the search finished")
                .with("generated", progress.generated)
                .with("completed_subtrees", progress.completed_subtrees)
                .with("total_subtrees", progress.total_subtrees);
            if let Some(best) = progress.partial_max {
                cx = cx.with("partial_max", best);
            }
            report.push(Case::fail(id, progress.generated, cx));
            Ok(Outcome::single(report, Vec::new()))
        }
        Err(e) => Err(e.into()),
    }
}

fn report_cmd(inputs: &[String]) -> Result<Outcome, CliError> {
    let mut reports = Vec::new();
    let mut diagnostics = Vec::new();
    for input in inputs {
        let io_err = |source| CliError::Io { path: input.clone(), source };
        let mut text = String::new();
        if input == "-" {
            io::stdin().read_to_string(&mut text).map_err(io_err)?;
        } else {
            File::open(input).and_then(|mut f| f.read_to_string(&mut text)).map_err(io_err)?;
        }
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match VerificationReport::from_jsonl(line) {
                Ok(rep) => reports.push(rep),
                Err(e @ (ReportParseError::Json(_) | ReportParseError::Schema(_))) => {
                    diagnostics.push(Diagnostic { source: input.clone(), line: i + 1, message: e.to_string() })
                }
            }
        }
    }
    let mut summary = VerificationReport::new("report", &[]).param("reports", reports.len());
    for rep in &reports {
        let failed = rep.failures().count();
        let id = rep.suite.clone();
        let case = if rep.passed {
            Case::pass(id, rep.cases.len() as u64)
        } else {
            let first = rep.failures().next().map(|c| c.id.clone()).unwrap_or_default();
            Case::fail(id, rep.cases.len() as u64, Counterexample::new("suite failed").with("first_failure", first))
        };
        summary.push(case.with("failed_cases", failed));
    }
    reports.push(summary);
    Ok(Outcome { reports, graphs: Vec::new(), diagnostics })
}

/// Parses `args`, runs the command, writes output, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match run(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    let text = outcome.render(cli.format);
    let written = match cli.output.as_deref() {
        Some(path) if path != Path::new("-") => std::fs::write(path, &text),
        _ => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return EXIT_USAGE;
    }
    outcome.exit_code()
}
