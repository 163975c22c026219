use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use genus_core::certificate::CertificateError;
use genus_core::cycles::count_cycles_up_to;
use genus_core::distribution::{generate_distributions, order_by_face_count};
use genus_core::engine::{compute_genus, EngineConfig, EngineError};
use genus_core::oracle::{brute_force_genus, OracleError, DEFAULT_ORACLE_CAP};
use genus_core::search::{Budget, SearchConfig};
use genus_core::{
    deserialize_certificate, encode_graph6, generate, parse_edge_list, parse_graph6,
    serialize_certificate, verify_certificate, BoundsSession, Graph, RefineOutcome,
};

/// `println!` that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_FINGERPRINT: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_BENCH: u8 = 5;

#[derive(Parser)]
#[command(name = "genus", version, about = "Exact minimum genus of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the genus and optionally write a certificate.
    Genus {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Narrow a genus bracket until it closes or time runs out.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Total time for the whole run.
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// Random rotation systems tried for the first upper bound.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Count simple cycles by length.
    Cycles {
        #[command(flatten)]
        input: InputArgs,
        /// Longest cycle counted (default: number of vertices).
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// List cycle distributions, most faces first.
    Distributions {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        max_length: Option<usize>,
        /// Print at most this many.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Brute-force genus over all rotation systems.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u128,
        /// Also print the optimal rotation.
        #[arg(long)]
        witness: bool,
    },
    /// Run a table of cases and compare against expected genera.
    Bench {
        /// File with lines `name spec [expected]`; `-` for none.
        #[arg(long)]
        cases: Option<PathBuf>,
        /// Built-in suite.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print a generated graph.
    Generate {
        #[arg(long = "gen")]
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Graph file.
    #[arg(long, conflicts_with = "spec")]
    input: Option<PathBuf>,
    /// Generator spec such as `complete:7` or `circulant:14:1,2,3,6`.
    #[arg(long = "gen")]
    spec: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[arg(long)]
    max_seconds: Option<f64>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    emit_certificate: Option<PathBuf>,
    /// Print progress lines on stderr.
    #[arg(long)]
    progress: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edges,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cages,
    Complete,
    Bipartite,
    Cocktail,
    Circulant,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_graph(args: &InputArgs) -> Result<Graph, Failure> {
    match (&args.input, &args.spec) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            let format = args.format.unwrap_or_else(|| {
                let g6 = path.extension().is_some_and(|x| x == "g6")
                    || text.trim_start().starts_with(">>graph6<<");
                if g6 {
                    Format::Graph6
                } else {
                    Format::Edges
                }
            });
            match format {
                Format::Edges => parse_edge_list(&text),
                Format::Graph6 => parse_graph6(&text),
            }
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
        }
        (None, Some(spec)) => generate(spec).map_err(|e| Failure::input(format!("{spec}: {e}"))),
        (None, None) => Err(Failure::input("one of --input or --gen is required")),
        (Some(_), Some(_)) => Err(Failure::input("--input and --gen are exclusive")),
    }
}

fn budget(run: &RunArgs) -> Budget {
    Budget {
        max_nodes: run.max_nodes,
        max_time: run.max_seconds.map(Duration::from_secs_f64),
    }
}

fn engine_config(run: &RunArgs) -> EngineConfig {
    EngineConfig {
        search: SearchConfig {
            threads: run.threads as usize,
            ..SearchConfig::default()
        },
        budget: budget(run),
        progress_every: run.progress.then_some(100_000),
        ..EngineConfig::default()
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_genus(input: &InputArgs, run: &RunArgs) -> CmdResult {
    let g = read_graph(input)?;
    match compute_genus(&g, &engine_config(run)) {
        Ok(report) => {
            out!("genus={}", report.genus);
            out!("faces={}", report.certificate.face_count());
            for d in &report.block_distributions {
                out!("block {d}");
            }
            if let Some(path) = &run.emit_certificate {
                write_file(path, &serialize_certificate(&report.certificate))?;
            }
            log::info!(
                "{} nodes, {} distributions",
                report.nodes,
                report.distributions_tried
            );
            Ok(0)
        }
        Err(EngineError::BudgetExceeded { lower, upper }) => {
            out!("budget exhausted");
            out!("lower={lower} upper={upper}");
            Ok(EXIT_BUDGET)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_bounds(input: &InputArgs, run: &RunArgs, total: Option<f64>, samples: usize) -> CmdResult {
    let g = read_graph(input)?;
    let start = Instant::now();
    let limit = total.or(run.max_seconds).map(Duration::from_secs_f64);
    let mut session = BoundsSession::new(&g, engine_config(run));
    let mut shown = None;
    let mut show = |session: &BoundsSession| {
        let s = session.state();
        if shown != Some((s.lower, s.upper)) {
            shown = Some((s.lower, s.upper));
            out!(
                "k={} lower={} upper={} elapsed={:.3}",
                s.iteration,
                s.lower,
                s.upper,
                start.elapsed().as_secs_f64()
            );
        }
    };
    show(&session);
    session.sample_upper(samples, run.seed);
    show(&session);
    loop {
        if session.state().is_closed() {
            break;
        }
        let remaining = match limit {
            Some(l) if start.elapsed() >= l => break,
            Some(l) => Some(l - start.elapsed()),
            None => None,
        };
        let step = Budget {
            max_nodes: run.max_nodes,
            max_time: remaining,
        };
        match session.refine(step) {
            Ok(RefineOutcome::Progress) => show(&session),
            Ok(RefineOutcome::Closed) => break,
            Ok(RefineOutcome::BudgetExceeded) => break,
            Err(e) => {
                eprintln!("error: {e}");
                break;
            }
        }
    }
    show(&session);
    let s = session.state();
    if s.is_closed() {
        out!("genus={}", s.lower);
        if let (Some(path), Some(cert)) = (&run.emit_certificate, session.certificate()) {
            write_file(path, &serialize_certificate(cert))?;
        }
        Ok(0)
    } else {
        out!("open bracket lower={} upper={}", s.lower, s.upper);
        Ok(EXIT_BUDGET)
    }
}

fn cmd_verify(input: &InputArgs, certificate: &PathBuf) -> CmdResult {
    let g = read_graph(input)?;
    let text = std::fs::read_to_string(certificate)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", certificate.display())))?;
    let cert = deserialize_certificate(&text).map_err(|e| Failure::input(e.to_string()))?;
    match verify_certificate(&g, &cert) {
        Ok(report) if report.is_valid() => {
            out!("valid genus={}", cert.claimed_genus);
            Ok(0)
        }
        Ok(report) => {
            for v in &report.violations {
                out!("violation {:?}: {v}", v.condition());
            }
            Ok(EXIT_VIOLATION)
        }
        Err(e @ CertificateError::FingerprintMismatch { .. }) => {
            out!("{e}");
            Ok(EXIT_FINGERPRINT)
        }
        Err(e) => Err(Failure::input(e.to_string())),
    }
}

fn cmd_cycles(input: &InputArgs, max_length: Option<usize>) -> CmdResult {
    let g = read_graph(input)?;
    let counts = count_cycles_up_to(&g, max_length.unwrap_or(g.n()));
    for (len, count) in counts {
        out!("length={len} count={count}");
    }
    Ok(0)
}

fn cmd_distributions(input: &InputArgs, max_length: Option<usize>, limit: Option<usize>) -> CmdResult {
    let g = read_graph(input)?;
    let counts = count_cycles_up_to(&g, max_length.unwrap_or(g.n()));
    let population: Vec<(usize, usize)> =
        counts.iter().map(|(&l, &c)| (l, 2 * c as usize)).collect();
    let s = 2 * g.m();
    let all: Vec<_> = generate_distributions(&population, s).collect();
    let ordered = order_by_face_count(all, usize::MAX).map_err(|e| Failure::input(e.to_string()))?;
    for d in ordered.iter().take(limit.unwrap_or(usize::MAX)) {
        let terms: Vec<String> = d
            .parts()
            .iter()
            .rev()
            .map(|(l, c)| format!("{c}×{l}"))
            .collect();
        out!(
            "{} = {s} ({} faces, genus candidate {})",
            terms.join(" + "),
            d.face_count(),
            d.genus_candidate(g.n(), g.m())
        );
    }
    Ok(0)
}

fn cmd_oracle(input: &InputArgs, cap: u128, witness: bool) -> CmdResult {
    let g = read_graph(input)?;
    match brute_force_genus(&g, cap) {
        Ok((genus, rot)) => {
            out!("genus={genus}");
            if witness {
                for v in 0..g.n() {
                    let cyc: Vec<String> = rot
                        .neighbor_cycle(&g, v)
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    out!("rot {v}: {}", cyc.join(" "));
                }
            }
            Ok(0)
        }
        Err(e @ OracleError::CapExceeded { .. }) => Err(Failure::input(e.to_string())),
    }
}

struct Case {
    name: String,
    spec: String,
    expected: Option<usize>,
}

fn suite_cases(suite: Suite) -> Vec<Case> {
    let case = |name: &str, spec: String, expected: usize| Case {
        name: name.to_string(),
        spec,
        expected: Some(expected),
    };
    match suite {
        Suite::Cages => [(3, 0), (4, 1), (5, 1), (6, 1), (7, 2), (8, 4)]
            .iter()
            .map(|&(girth, g)| case(&format!("(3,{girth})"), format!("cage:3:{girth}"), g))
            .collect(),
        Suite::Complete => (3..=8)
            .map(|n| {
                case(
                    &format!("K{n}"),
                    format!("complete:{n}"),
                    genus_core::formulas::genus_formula_complete(n),
                )
            })
            .collect(),
        Suite::Bipartite => {
            let mut out = Vec::new();
            for a in 2..=4 {
                for b in a..=9 - a {
                    out.push(case(
                        &format!("K{a},{b}"),
                        format!("bipartite:{a},{b}"),
                        genus_core::formulas::genus_formula_complete_bipartite(a, b),
                    ));
                }
            }
            out
        }
        Suite::Cocktail => [(2, 0), (3, 0), (4, 1), (5, 3)]
            .iter()
            .map(|&(k, g)| {
                let parts = vec!["2"; k].join(",");
                case(&format!("K2x{k}"), format!("multipartite:{parts}"), g)
            })
            .collect(),
        Suite::Circulant => [
            ("C14_1,2,3,6", "circulant:14:1,2,3,6", 4),
            ("C18_1,3,9", "circulant:18:1,3,9", 4),
            ("C20_1,3,5", "circulant:20:1,3,5", 6),
            ("C20_1,6,9", "circulant:20:1,6,9", 6),
        ]
        .iter()
        .map(|&(n, s, g)| case(n, s.to_string(), g))
        .collect(),
    }
}

fn parse_cases(text: &str) -> Result<Vec<Case>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Failure::input(format!("cases line {}: expected `name spec [genus]`", i + 1)));
        }
        let expected = match fields.get(2) {
            None | Some(&"-") => None,
            Some(x) => Some(x.parse().map_err(|_| {
                Failure::input(format!("cases line {}: bad genus `{x}`", i + 1))
            })?),
        };
        out.push(Case {
            name: fields[0].to_string(),
            spec: fields[1].to_string(),
            expected,
        });
    }
    Ok(out)
}

fn cmd_bench(cases: Option<&PathBuf>, suite: Option<Suite>, run: &RunArgs) -> CmdResult {
    let mut list = Vec::new();
    if let Some(path) = cases {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        list.extend(parse_cases(&text)?);
    }
    if let Some(s) = suite {
        list.extend(suite_cases(s));
    }
    let mut table = String::new();
    writeln!(table, "{:<16} {:>5} {:>6} {:>6} {:>10}", "case", "n", "m", "genus", "seconds").unwrap();
    let mut mismatch = false;
    for case in &list {
        let g = generate(&case.spec).map_err(|e| Failure::input(format!("{}: {e}", case.spec)))?;
        let start = Instant::now();
        let result = compute_genus(&g, &engine_config(run));
        let secs = start.elapsed().as_secs_f64();
        let (genus, flag) = match result {
            Ok(r) => {
                let bad = case.expected.is_some_and(|e| e != r.genus);
                mismatch |= bad;
                let flag = if bad {
                    format!("  MISMATCH expected {}", case.expected.unwrap())
                } else {
                    String::new()
                };
                (r.genus.to_string(), flag)
            }
            Err(EngineError::BudgetExceeded { .. }) => ("DNF".to_string(), String::new()),
            Err(e) => ("ERR".to_string(), format!("  {e}")),
        };
        writeln!(
            table,
            "{:<16} {:>5} {:>6} {:>6} {:>10.3}{flag}",
            case.name,
            g.n(),
            g.m(),
            genus,
            secs
        )
        .unwrap();
    }
    out!("{}", table.trim_end());
    Ok(if mismatch { EXIT_BENCH } else { 0 })
}

fn cmd_generate(spec: &str, format: Format) -> CmdResult {
    let g = generate(spec).map_err(|e| Failure::input(format!("{spec}: {e}")))?;
    match format {
        Format::Edges => out!("{}", g.to_string().trim_end()),
        Format::Graph6 => out!(
            "{}",
            encode_graph6(&g).map_err(|e| Failure::input(e.to_string()))?
        ),
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Genus { input, run } => cmd_genus(input, run),
        Command::Bounds {
            input,
            run,
            budget_seconds,
            samples,
        } => cmd_bounds(input, run, *budget_seconds, *samples),
        Command::Verify { input, certificate } => cmd_verify(input, certificate),
        Command::Cycles { input, max_length } => cmd_cycles(input, *max_length),
        Command::Distributions {
            input,
            max_length,
            limit,
        } => cmd_distributions(input, *max_length, *limit),
        Command::Oracle {
            input,
            cap,
            witness,
        } => cmd_oracle(input, *cap, *witness),
        Command::Bench { cases, suite, run } => cmd_bench(cases.as_ref(), *suite, run),
        Command::Generate { spec, format } => cmd_generate(spec, *format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
