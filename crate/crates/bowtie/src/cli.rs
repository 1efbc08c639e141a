//! Argument parsing, dispatch and report output for the `bowtie` binary.
//!
//! Exit codes: 0 on success or a confirmed claim, 1 when a `verify` check
//! fails, 2 on usage errors, 3 when an enumeration exhausts its budget,
//! 4 on other runtime failures.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use bowtie_core::pspectral::{p_spectral_radius_with, PSpectralOptions};
use bowtie_core::spectral::{spectral_radius_with, SpectralOptions, VERIFY_TOL};
use bowtie_core::{canonical_form, contains_fan, count_bowties, FamilySpec, Graph, SpectralError};
use clap::builder::PossibleValuesParser;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::enumerate::{enumerate_classes, EnumConstraint, EnumError};
use crate::io::{read_graph6, write_graph6, ReadError};
use crate::report::{CommandEcho, GraphRecord, PSpectralRecord, Payload, Report};
use crate::scan::{extremal_scan, Bracket, ScanError};
use crate::search::{hill_climb, SearchConfig, SearchError, SearchMode};
use crate::verify::{self, CrosscheckRanges, VerifyError};
use crate::DEFAULT_SEED;

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "BOWTIE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONTRADICTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "bowtie", version, about = "Spectral extremal problems for friendship-free graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; overrides BOWTIE_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Bracket width for spectral radii; each verb has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Build family members or re-emit graphs.
    Gen {
        #[command(flatten)]
        source: GraphSource,
        /// Emit canonical forms.
        #[arg(long)]
        canonical: bool,
    },
    /// Look for a k-fan and count bowties.
    Detect {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Certified spectral radius brackets.
    Spectral {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Exhaustive scan over isomorphism classes of fixed order or size.
    #[command(group(ArgGroup::new("shape").required(true).args(["n", "m"])))]
    Enumerate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Forbid the k-fan.
        #[arg(long)]
        k: Option<usize>,
        /// Vertex cap in fixed-size mode.
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Largest number of classes kept at any level.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a claim; exits 1 when a check fails.
    Verify(VerifyArgs),
    /// Tabu hill climbing for a spectral maximizer.
    #[command(group(ArgGroup::new("shape").required(true).args(["n", "m"])))]
    Search {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[command(flatten)]
        knobs: SearchKnobs,
    },
    /// Lower bound on the p-spectral radius by multi-start ascent.
    Pspectral {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long)]
        max_iter: Option<usize>,
    },
}

/// Graphs come from a graph6 file, literal graph6 strings, or a family.
#[derive(Debug, Clone, Default, Args)]
pub struct GraphSource {
    /// graph6 file, one graph per line; `-` reads stdin.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long = "graph6")]
    pub graph6: Vec<String>,
    #[arg(long, value_parser = PossibleValuesParser::new(FamilySpec::KINDS))]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// The family's own `k` (clique size, fan size).
    #[arg(long)]
    pub family_k: Option<usize>,
    /// Apex-pair cross edges as `i-j` pairs, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub cross: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct SearchKnobs {
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub moves: Option<usize>,
    #[arg(long)]
    pub tabu: Option<usize>,
    #[arg(long)]
    pub patience: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    TheoremN,
    TheoremM,
    RemarkN6,
    RemarkM7,
    CubicCrosscheck,
    Shifting,
    ApexPair,
    SmallSizeCases,
    Turan,
    BowtieCount,
    Conjecture,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// Order; for cubic-crosscheck and shifting, the largest order.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// First order or size of a range.
    #[arg(long)]
    pub from: Option<usize>,
    /// Last order or size of a range.
    #[arg(long)]
    pub to: Option<usize>,
    #[arg(long)]
    pub part_max: Option<u64>,
    #[arg(long)]
    pub bound_max: Option<u64>,
    #[command(flatten)]
    pub knobs: SearchKnobs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{flag}: {message}")]
    Usage { flag: String, message: String },
    #[error("resource limit: {0}")]
    Exhausted(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn usage(flag: &str, message: impl Into<String>) -> Self {
        CliError::Usage {
            flag: flag.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            CliError::Usage { .. } => EXIT_USAGE,
            CliError::Exhausted(_) => EXIT_EXHAUSTED,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::BudgetExceeded { .. } => CliError::Exhausted(e.to_string()),
            EnumError::InvalidConstraint(msg) => CliError::usage("enumerate", msg),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Enumeration(e) => e.into(),
            ScanError::Spectral(e) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::InvalidConfig(msg) => CliError::usage("search", msg),
            SearchError::Scan(e) => e.into(),
            SearchError::Spectral(e) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Scan(e) => e.into(),
            VerifyError::Search(e) => e.into(),
            VerifyError::Enumeration(e) => e.into(),
            VerifyError::Graph(e) => CliError::usage("verify", e.to_string()),
            VerifyError::Spectral(e) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Failure(e.to_string())
    }
}

/// A finished run: the report, its rendering, and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub rendered: String,
    pub exit_code: i32,
}

pub fn parse<I, T>(args: I) -> Result<Cli, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    cli.validate()?;
    Ok(cli)
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(flag, format!("{what} needs {flag}")))
}

impl Cli {
    /// Range checks that clap cannot express.
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(tol) = self.global.tol {
            if !(tol > 0.0 && tol <= 1.0) {
                return Err(CliError::usage("--tol", format!("must lie in (0, 1], got {tol}")));
            }
        }
        if self.global.threads == Some(0) {
            return Err(CliError::usage("--threads", "must be at least 1"));
        }
        match &self.verb {
            Verb::Detect { k, .. } if *k == 0 => Err(CliError::usage("--k", "must be at least 1")),
            Verb::Pspectral { p, restarts, .. } => {
                if !(p.is_finite() && *p >= 1.0) {
                    Err(CliError::usage("--p", format!("must be finite and at least 1, got {p}")))
                } else if *restarts == 0 {
                    Err(CliError::usage("--restarts", "must be at least 1"))
                } else {
                    Ok(())
                }
            }
            Verb::Enumerate { .. } => self.constraint().map(|_| ()),
            Verb::Search { .. } => self.search_config().map(|_| ()),
            _ => Ok(()),
        }
    }

    fn constraint(&self) -> Result<EnumConstraint, CliError> {
        let Verb::Enumerate {
            n,
            m,
            k,
            max_vertices,
            budget,
        } = &self.verb
        else {
            unreachable!("only called for enumerate")
        };
        let (mut c, flag) = match (n, m) {
            (Some(n), _) => (EnumConstraint::order(*n), "--n"),
            (_, Some(m)) => (EnumConstraint::size(*m), "--m"),
            _ => unreachable!("clap requires one of --n and --m"),
        };
        if let Some(k) = k {
            if *k == 0 {
                return Err(CliError::usage("--k", "must be at least 1"));
            }
            c = c.forbidding(*k);
        }
        if let Some(cap) = max_vertices {
            if n.is_some() {
                return Err(CliError::usage("--max-vertices", "only applies with --m"));
            }
            c = c.with_max_vertices(*cap);
        }
        if let Some(b) = budget {
            c = c.with_budget(*b);
        }
        let flag = if max_vertices.is_some() { "--max-vertices" } else { flag };
        c.validate().map_err(|e| CliError::usage(flag, e.to_string()))?;
        Ok(c)
    }

    fn search_config(&self) -> Result<SearchConfig, CliError> {
        let Verb::Search { n, m, k, knobs } = &self.verb else {
            unreachable!("only called for search")
        };
        let (mode, flag) = match (n, m) {
            (Some(n), _) => (SearchMode::FixedOrder { n: *n }, "--n"),
            (_, Some(m)) => (SearchMode::FixedSize { m: *m }, "--m"),
            _ => unreachable!("clap requires one of --n and --m"),
        };
        let cfg = knobs.apply(SearchConfig::new(mode, *k), &self.global);
        check_search(&cfg, flag)?;
        Ok(cfg)
    }
}

fn check_search(cfg: &SearchConfig, shape_flag: &str) -> Result<(), CliError> {
    if cfg.k == 0 {
        return Err(CliError::usage("--k", "must be at least 1"));
    }
    for (flag, v) in [
        ("--restarts", cfg.restarts),
        ("--steps", cfg.steps),
        ("--moves", cfg.moves_per_step),
        ("--patience", cfg.patience),
    ] {
        if v == 0 {
            return Err(CliError::usage(flag, "must be at least 1"));
        }
    }
    cfg.validate().map_err(|e| CliError::usage(shape_flag, e.to_string()))
}

impl SearchKnobs {
    fn apply(&self, mut cfg: SearchConfig, g: &GlobalArgs) -> SearchConfig {
        cfg.restarts = self.restarts.unwrap_or(cfg.restarts);
        cfg.steps = self.steps.unwrap_or(cfg.steps);
        cfg.moves_per_step = self.moves.unwrap_or(cfg.moves_per_step);
        cfg.tabu = self.tabu.unwrap_or(cfg.tabu);
        cfg.patience = self.patience.unwrap_or(cfg.patience);
        cfg.tol = g.tol.unwrap_or(cfg.tol);
        cfg.seed = g.seed;
        cfg
    }
}

impl GraphSource {
    fn family_spec(&self, kind: &str) -> Result<FamilySpec, CliError> {
        let n = || need(self.n, "--n", kind);
        let a = || need(self.a, "--a", kind);
        let b = || need(self.b, "--b", kind);
        let s = || need(self.s, "--s", kind);
        let t = || need(self.t, "--t", kind);
        let r = || need(self.r, "--r", kind);
        let k = || need(self.family_k, "--family-k", kind);
        Ok(match kind {
            "balanced_plus" => FamilySpec::BalancedPlus { n: n()? },
            "bipartite_plus" => FamilySpec::BipartitePlus { a: a()?, b: b()? },
            "split_join" => FamilySpec::SplitJoin { k: k()?, s: s()? },
            "fan" => FamilySpec::Fan { k: k()? },
            "turan" => FamilySpec::Turan { n: n()?, r: r()? },
            "two_k2" => FamilySpec::TwoK2 { n: n()? },
            "efgg_odd" => FamilySpec::EfggOdd { n: n()?, k: k()? },
            "zlx_even" => FamilySpec::ZlxEven { n: n()?, k: k()? },
            "zlx_even_h" => FamilySpec::ZlxEvenH { k: k()? },
            "apex_pair" => FamilySpec::ApexPair {
                s: s()?,
                t: t()?,
                cross: self.cross_pairs()?,
            },
            other => return Err(CliError::usage("--family", format!("unknown family {other}"))),
        })
    }

    fn cross_pairs(&self) -> Result<Vec<(usize, usize)>, CliError> {
        self.cross
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.split_once('-')
                    .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                    .ok_or_else(|| CliError::usage("--cross", format!("expected i-j, got {p:?}")))
            })
            .collect()
    }

    /// Labelled graphs in input order.
    pub fn load(&self) -> Result<Vec<(String, Graph)>, CliError> {
        let sources = [self.input.is_some(), !self.graph6.is_empty(), self.family.is_some()];
        if sources.iter().filter(|&&x| x).count() != 1 {
            return Err(CliError::usage("--family", "give exactly one of --in, --graph6 and --family"));
        }
        if let Some(kind) = &self.family {
            let spec = self.family_spec(kind)?;
            let g = spec.build().map_err(|e| CliError::usage("--family", e.to_string()))?;
            return Ok(vec![(spec.kind().to_owned(), g)]);
        }
        if !self.graph6.is_empty() {
            return self
                .graph6
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    bowtie_core::graph6::decode(s)
                        .map(|g| (format!("graph {i}"), g))
                        .map_err(|e| CliError::usage("--graph6", format!("{s:?}: {e}")))
                })
                .collect();
        }
        let path = self.input.as_ref().expect("checked above");
        let graphs = if path.as_os_str() == "-" {
            read_graph6(io::stdin().lock())
        } else {
            let f = File::open(path).map_err(|e| CliError::usage("--in", format!("{}: {e}", path.display())))?;
            read_graph6(BufReader::new(f))
        }
        .map_err(|e| match e {
            ReadError::Io(e) => CliError::Failure(e.to_string()),
            e @ ReadError::Parse { .. } => CliError::usage("--in", e.to_string()),
        })?;
        Ok(graphs.into_iter().enumerate().map(|(i, g)| (format!("line {}", i + 1), g)).collect())
    }
}

fn thread_count(global: &GlobalArgs) -> Result<Option<usize>, CliError> {
    if let Some(t) = global.threads {
        return Ok(Some(t));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::usage(THREADS_ENV, format!("expected a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(None),
    }
}

fn range(v: &VerifyArgs, from: usize, to: usize) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let (a, b) = (v.from.unwrap_or(from), v.to.unwrap_or(to));
    if a > b {
        return Err(CliError::usage("--from", format!("{a} exceeds --to {b}")));
    }
    Ok(a..=b)
}

fn run_verify(v: &VerifyArgs, g: &GlobalArgs) -> Result<crate::report::Verification, CliError> {
    let seed = g.seed;
    Ok(match v.target {
        Target::TheoremN => verify::theorem_order(need(v.n, "--n", "theorem-n")?, seed)?,
        Target::TheoremM => verify::theorem_size(need(v.m, "--m", "theorem-m")?, seed)?,
        Target::RemarkN6 => verify::remark_order_six(seed)?,
        Target::RemarkM7 => verify::remark_size_seven(seed)?,
        Target::CubicCrosscheck => {
            let d = CrosscheckRanges::default();
            let r = CrosscheckRanges {
                order_max: v.n.map_or(d.order_max, |n| n as u64),
                part_max: v.part_max.unwrap_or(d.part_max),
                bound_max: v.bound_max.unwrap_or(d.bound_max),
            };
            if r.order_max < 8 || r.part_max < 2 || r.bound_max < 7 {
                return Err(CliError::usage("--n", "ranges need --n >= 8, --part-max >= 2, --bound-max >= 7"));
            }
            verify::cubic_crosscheck(r)?
        }
        Target::Shifting => verify::shifting(v.n.unwrap_or(100))?,
        Target::ApexPair => verify::apex_pair_property(v.samples.unwrap_or(1000), seed)?,
        Target::SmallSizeCases => verify::small_size_cases()?,
        Target::Turan => {
            let k = v.k.unwrap_or(2);
            if k == 0 {
                return Err(CliError::usage("--k", "must be at least 1"));
            }
            verify::turan(need(v.n, "--n", "turan")?, k)?
        }
        Target::BowtieCount => {
            let r = range(v, 8, 30)?;
            if *r.start() < 4 {
                return Err(CliError::usage("--from", "the construction needs n >= 4"));
            }
            verify::bowtie_count(r)?
        }
        Target::Conjecture => {
            let k = v.k.unwrap_or(3);
            if k < 2 {
                return Err(CliError::usage("--k", "the conjecture harness needs k >= 2"));
            }
            let first = k * (k - 1) / 2 + k;
            let sizes = range(v, first, 30)?;
            let cfg = v.knobs.apply(SearchConfig::fixed_size(*sizes.start(), k), g);
            check_search(&cfg, "--from")?;
            verify::conjecture(k, sizes, &cfg)?
        }
    })
}

fn spectral_opts(g: &GlobalArgs, max_iter: Option<usize>) -> SpectralOptions {
    let mut o = SpectralOptions::with_tol(g.tol.unwrap_or(VERIFY_TOL));
    if let Some(it) = max_iter {
        o.max_iter = it;
    }
    o
}

/// Runs a parsed command. Graph6 output for `enumerate` lists every class.
pub fn execute(cli: &Cli, echo: CommandEcho) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let g = &cli.global;
    let mut class_list: Option<Vec<Graph>> = None;
    let mut exit_code = EXIT_OK;
    let payload = match &cli.verb {
        Verb::Gen { source, canonical } => {
            let graphs = source
                .load()?
                .into_iter()
                .map(|(label, gr)| {
                    let gr = if *canonical { canonical_form(&gr) } else { gr };
                    GraphRecord::new(label, &gr)
                })
                .collect();
            Payload::Graphs { graphs }
        }
        Verb::Detect { source, k } => {
            let graphs = source
                .load()?
                .into_iter()
                .map(|(label, gr)| {
                    let mut rec = GraphRecord::new(label, &gr).with_fan(*k, contains_fan(&gr, *k));
                    rec.bowties = Some(count_bowties(&gr));
                    rec
                })
                .collect();
            Payload::Graphs { graphs }
        }
        Verb::Spectral { source, max_iter } => {
            let opts = spectral_opts(g, *max_iter);
            let graphs = source
                .load()?
                .into_iter()
                .map(|(label, gr)| {
                    let b = if gr.vertex_count() == 0 {
                        Bracket { lower: 0.0, upper: 0.0 }
                    } else {
                        let e = spectral_radius_with(&gr, &opts)?;
                        Bracket {
                            lower: e.lower,
                            upper: e.upper,
                        }
                    };
                    Ok(GraphRecord::new(label, &gr).with_lambda(b))
                })
                .collect::<Result<_, CliError>>()?;
            Payload::Graphs { graphs }
        }
        Verb::Enumerate { .. } => {
            let c = cli.constraint()?;
            if g.format == Format::Graph6 {
                let (classes, stats) = enumerate_classes(&c)?;
                let report = crate::scan::EnumerationReport {
                    schema_version: crate::scan::SCHEMA_VERSION.into(),
                    constraint: c,
                    total_graphs: classes.len() as u64,
                    pruned: stats.pruned,
                    argmax: Vec::new(),
                    runner_up: None,
                    runner_up_gap: None,
                    tie: false,
                    exact_adjudication: false,
                    edge_max: classes.iter().map(Graph::edge_count).max().unwrap_or(0),
                    runtime_ms: started.elapsed().as_millis() as u64,
                    seed: g.seed,
                };
                class_list = Some(classes);
                Payload::Enumeration(report)
            } else {
                Payload::Enumeration(extremal_scan(&c, g.seed)?)
            }
        }
        Verb::Verify(v) => {
            let ver = run_verify(v, g)?;
            if !ver.confirmed {
                exit_code = EXIT_CONTRADICTED;
            }
            Payload::Verification(ver)
        }
        Verb::Search { .. } => Payload::Search {
            results: vec![hill_climb(&cli.search_config()?)?],
        },
        Verb::Pspectral {
            source,
            p,
            restarts,
            max_iter,
        } => {
            let mut opts = PSpectralOptions::default();
            if let Some(it) = max_iter {
                opts.max_iter = *it;
            }
            let graphs = source
                .load()?
                .into_iter()
                .map(|(label, gr)| {
                    let e = p_spectral_radius_with(&gr, *p, *restarts, g.seed, &opts)?;
                    let mut rec = GraphRecord::new(label, &gr);
                    rec.p_spectral = Some(PSpectralRecord::from(&e));
                    Ok(rec)
                })
                .collect::<Result<_, CliError>>()?;
            Payload::Graphs { graphs }
        }
    };
    let report = Report::new(echo, payload, started.elapsed().as_millis() as u64, g.seed);
    let rendered = match (g.format, class_list) {
        (Format::Json, _) => report.to_json() + "\n",
        (Format::Csv, _) => report.to_csv(),
        (Format::Graph6, Some(classes)) => {
            let mut buf = Vec::new();
            write_graph6(&mut buf, &classes).expect("in-memory write");
            String::from_utf8(buf).expect("graph6 is ascii")
        }
        (Format::Graph6, None) => report.graph6_lines().iter().map(|l| format!("{l}\n")).collect(),
    };
    Ok(Outcome {
        report,
        rendered,
        exit_code,
    })
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Gen { .. } => "gen",
        Verb::Detect { .. } => "detect",
        Verb::Spectral { .. } => "spectral",
        Verb::Enumerate { .. } => "enumerate",
        Verb::Verify(_) => "verify",
        Verb::Search { .. } => "search",
        Verb::Pspectral { .. } => "pspectral",
    }
}

fn run_parsed(cli: &Cli, echo: CommandEcho) -> Result<Outcome, CliError> {
    match thread_count(&cli.global)? {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Failure(e.to_string()))?
            .install(|| execute(cli, echo)),
        None => execute(cli, echo),
    }
}

/// Parses, executes and writes output; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match parse(args.clone()) {
        Ok(cli) => cli,
        Err(CliError::Clap(e)) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let echo = CommandEcho {
        verb: verb_name(&cli.verb).into(),
        args: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
    };
    let outcome = match run_parsed(&cli, echo) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.rendered),
        None => stdout.write_all(outcome.rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: writing output: {e}");
        return EXIT_FAILURE;
    }
    if let Payload::Verification(v) = &outcome.report.result {
        let status = if v.confirmed { "confirmed" } else { "contradicted" };
        let _ = writeln!(stderr, "verify {}: {status}", v.target);
        for c in v.failed() {
            let _ = writeln!(stderr, "  failed {}: {}", c.name, c.detail);
        }
    }
    outcome.exit_code
}
