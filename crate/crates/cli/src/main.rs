use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use qgrass::cauchon::{restore, single_step_deletion, verify_restored_relations};
use qgrass::diagrams::{count_recurrence, enumerate, hspec_census, williams_total};
use qgrass::posets::{GammaCell, IndexSet, PiPoset};
use qgrass::qmatrix::{MatrixShape, Partition};
use qgrass::qminor::Grassmannian;

const SCHEMA_VERSION: u32 = 1;
const THREADS_ENV: &str = "QGRASS_THREADS";
/// Largest diagram for which `count --partition` also enumerates.
const ENUMERATION_CHECK_LIMIT: usize = 16;
/// Most Schubert cells a census may visit.
const CENSUS_CELL_LIMIT: u128 = 50_000;
/// Most nodes `poset` will draw.
const POSET_NODE_LIMIT: u128 = 5_000;
/// Most squares `diagrams` will list.
const LISTING_SQUARE_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "qgrass",
    version,
    about = "Torus-invariant primes of quantum grassmannians: counts, posets, and exact checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Diagnostics on stderr
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-formula total for G(m,n), or the number of Cauchon diagrams on one partition
    Count(CountArgs),
    /// Per-cell count of torus-invariant primes of O_q(G(m,n))
    Census { m: usize, n: usize },
    /// Hasse diagram of the index sets of G(m,n)
    Poset { m: usize, n: usize },
    /// Partition and ladder of one Schubert cell
    Cell {
        #[arg(long)]
        n: usize,
        /// Index set, e.g. 1,3,6
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        gamma: Vec<usize>,
    },
    /// All Cauchon diagrams on a partition
    Diagrams {
        /// Parts, e.g. 2 2 or 2,2
        #[arg(value_delimiter = ',')]
        parts: Vec<usize>,
    },
    /// Exact verification suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CountArgs {
    /// m n
    #[arg(long, num_args = 2, value_names = ["M", "N"])]
    grassmannian: Option<Vec<usize>>,
    /// Parts of λ
    #[arg(long, num_args = 0.., value_delimiter = ',')]
    partition: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// m n for asl and ladder; the parts of λ for restore and delete
    #[arg(value_delimiter = ',')]
    params: Vec<usize>,
    /// Allow G(3,6)-sized runs
    #[arg(long)]
    slow: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Asl,
    Ladder,
    Restore,
    Delete,
}

enum Failure {
    Usage(String),
    Refused(String),
    Verification(Output),
    Internal(String),
}

impl From<qgrass::Error> for Failure {
    fn from(e: qgrass::Error) -> Self {
        match e {
            qgrass::Error::Domain(_) | qgrass::Error::ShapeMismatch(_) | qgrass::Error::Parse { .. } => {
                Failure::Usage(e.to_string())
            }
            qgrass::Error::Overflow(_) => Failure::Refused(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Rendered result.
struct Output(String);

fn json_doc(mut v: Value) -> Output {
    if let Value::Object(map) = &mut v {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    Output(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k.min(n - k)).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn big_json(x: &BigInt) -> Value {
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

fn pick(format: Option<Format>, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!("format {f:?} is not available for this command")))
    }
}

fn shape(m: usize, n: usize) -> Result<MatrixShape, Failure> {
    if m == 0 || m > n {
        return Err(Failure::Usage(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    Ok(MatrixShape::new(m, n)?)
}

fn partition(parts: &[usize]) -> Result<Partition, Failure> {
    Ok(Partition::new(parts.to_vec())?)
}

fn cmd_count(args: &CountArgs, format: Option<Format>) -> Result<Output, Failure> {
    let f = pick(format, &[Format::Json, Format::Text])?;
    if let Some(mn) = &args.grassmannian {
        let (m, n) = (mn[0], mn[1]);
        shape(m, n)?;
        let total = williams_total(m, n)?;
        let census = if binom(n, m) <= CENSUS_CELL_LIMIT { Some(hspec_census(m, n)) } else { None };
        let check = match &census {
            Some(Ok(_)) => "ok",
            Some(Err(_)) => "mismatch",
            None => "skipped",
        };
        let out = match f {
            Format::Json => json_doc(json!({ "m": m, "n": n, "total": big_json(&total), "check": check })),
            _ => Output(format!("{total}\ncross-check against the cell census: {check}\n")),
        };
        return match census {
            Some(Err(qgrass::Error::Consistency(_))) => Err(Failure::Verification(out)),
            Some(Err(e)) => Err(e.into()),
            _ => Ok(out),
        };
    }
    let parts = args.partition.clone().unwrap_or_default();
    let lambda = partition(&parts)?;
    let count = count_recurrence(&lambda)?;
    let check =
        if lambda.size() <= ENUMERATION_CHECK_LIMIT { Some(enumerate(&lambda).count() as u128 == count) } else { None };
    let check_text = match check {
        Some(true) => "ok",
        Some(false) => "mismatch",
        None => "skipped",
    };
    let out = match f {
        Format::Json => json_doc(json!({ "partition": lambda.trimmed().parts(), "count": count, "check": check_text })),
        _ => Output(format!("{count}\ncross-check against enumeration: {check_text}\n")),
    };
    if check == Some(false) {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

fn cmd_census(m: usize, n: usize, format: Option<Format>) -> Result<Output, Failure> {
    let f = pick(format, &[Format::Json, Format::Text])?;
    shape(m, n)?;
    if binom(n, m) > CENSUS_CELL_LIMIT {
        return Err(Failure::Refused(format!("G({m},{n}) has more than {CENSUS_CELL_LIMIT} cells")));
    }
    let census = match hspec_census(m, n) {
        Ok(c) => c,
        Err(qgrass::Error::Consistency(msg)) => return Err(Failure::Verification(Output(msg + "\n"))),
        Err(e) => return Err(e.into()),
    };
    Ok(match f {
        Format::Json => json_doc(serde_json::to_value(&census).expect("serializable")),
        _ => {
            let mut s = String::new();
            for c in &census.cells {
                let gamma = IndexSet::new(c.gamma.clone()).map(|g| g.to_string()).unwrap_or_default();
                writeln!(s, "{gamma}\t{}\t{}", Partition::new(c.lambda.clone()).expect("valid"), c.count).unwrap();
            }
            writeln!(s, "irrelevant\t\t{}", census.irrelevant).unwrap();
            writeln!(s, "total\t\t{}", census.total).unwrap();
            Output(s)
        }
    })
}

fn cmd_poset(m: usize, n: usize, format: Option<Format>) -> Result<Output, Failure> {
    let f = pick(format, &[Format::Dot, Format::Json, Format::Text])?;
    let s = shape(m, n)?;
    if binom(n, m) > POSET_NODE_LIMIT {
        return Err(Failure::Refused(format!("G({m},{n}) has more than {POSET_NODE_LIMIT} index sets")));
    }
    let p = PiPoset::new(s);
    Ok(match f {
        Format::Dot => Output(p.to_dot()),
        Format::Json => {
            let nodes: Vec<Vec<usize>> = p.sorted_for_display().iter().map(|s| s.entries().to_vec()).collect();
            let edges: Vec<[Vec<usize>; 2]> =
                p.hasse_edges().into_iter().map(|(a, b)| [a.entries().to_vec(), b.entries().to_vec()]).collect();
            json_doc(json!({ "m": m, "n": n, "nodes": nodes, "covers": edges }))
        }
        Format::Text => {
            let mut s = String::new();
            for (a, b) in p.hasse_edges() {
                writeln!(s, "{a} < {b}").unwrap();
            }
            Output(s)
        }
    })
}

fn cmd_cell(n: usize, gamma: &[usize], format: Option<Format>) -> Result<Output, Failure> {
    let f = pick(format, &[Format::Json, Format::Dot, Format::Text])?;
    let s = shape(gamma.len(), n)?;
    let cell = GammaCell::new(IndexSet::in_shape(gamma.to_vec(), s)?, s)?;
    Ok(match f {
        Format::Json => json_doc(serde_json::to_value(cell.to_json()).expect("serializable")),
        Format::Dot => Output(cell.to_dot()),
        Format::Text => {
            let ladder: Vec<String> = cell.ladder().iter().map(|v| format!("x[{},{}]", v.row, v.col)).collect();
            Output(format!("gamma {}\nlambda {}\nladder {}\n", cell.gamma(), cell.lambda(), ladder.join(" ")))
        }
    })
}

fn cmd_diagrams(parts: &[usize], format: Option<Format>) -> Result<Output, Failure> {
    let f = pick(format, &[Format::Text, Format::Json])?;
    let lambda = partition(parts)?;
    if lambda.size() > LISTING_SQUARE_LIMIT {
        return Err(Failure::Refused(format!("{lambda} has more than {LISTING_SQUARE_LIMIT} squares")));
    }
    let all: Vec<_> = enumerate(&lambda).collect();
    Ok(match f {
        Format::Json => {
            let items: Vec<Value> = all
                .iter()
                .map(|d| {
                    let gens: Vec<[usize; 2]> = d.black_squares().iter().map(|v| [v.row, v.col]).collect();
                    json!({ "label": d.label(), "black": d.black_count(), "k_generators": gens })
                })
                .collect();
            json_doc(json!({ "partition": lambda.trimmed().parts(), "count": all.len(), "diagrams": items }))
        }
        _ => {
            let mut s = String::new();
            for d in &all {
                writeln!(s, "{}  ({} black)", d.label(), d.black_count()).unwrap();
                s.push_str(&d.art());
                s.push('\n');
            }
            writeln!(s, "{} diagrams", all.len()).unwrap();
            Output(s)
        }
    })
}

fn in_box(lambda: &Partition, rows: usize, cols: usize) -> bool {
    lambda.fits_in_box(rows, cols)
}

fn cmd_verify(args: &VerifyArgs, format: Option<Format>, verbose: bool) -> Result<Output, Failure> {
    let f = pick(format, &[Format::Json, Format::Text])?;
    let started = Instant::now();
    let (passed, doc, text) = match args.suite {
        Suite::Asl | Suite::Ladder => {
            let [m, n] = args.params[..] else {
                return Err(Failure::Usage("asl and ladder take two parameters: m n".into()));
            };
            let s = shape(m, n)?;
            let within = if args.slow { m <= 3 && n <= 6 } else { m <= 2 && n <= 5 };
            if !within {
                return Err(Failure::Refused(format!(
                    "G({m},{n}) is over the size cap: m <= 2 and n <= 5, or m <= 3 and n <= 6 with --slow"
                )));
            }
            let g = Grassmannian::new(s)?;
            if args.suite == Suite::Asl {
                let r = g.check_asl();
                let text = format!(
                    "{} asl G({m},{n}): {} blocks, {} standard monomials, {} products ({} incomparable), {} quasi-commutations, constants {{{}}}\n{}",
                    verdict(r.passed()),
                    r.blocks,
                    r.chains,
                    r.products,
                    r.incomparable,
                    r.commutations,
                    r.constants.join(", "),
                    failure_lines(&r.failures)
                );
                (r.passed(), json!({ "suite": "asl", "passed": r.passed(), "report": r }), text)
            } else {
                let mut reports = Vec::new();
                let mut text = String::new();
                for gamma in g.index_sets() {
                    let cell = GammaCell::new(gamma.clone(), s)?;
                    let r = g.check_ladder_relations(&cell)?;
                    writeln!(text, "{} ladder {}: {} checks", verdict(r.passed()), gamma, r.checked).unwrap();
                    text.push_str(&failure_lines(&r.failures));
                    reports.push(r);
                }
                let passed = reports.iter().all(|r| r.passed());
                (passed, json!({ "suite": "ladder", "m": m, "n": n, "passed": passed, "cells": reports }), text)
            }
        }
        Suite::Restore | Suite::Delete => {
            let lambda = partition(&args.params)?;
            let (rows, cols) = if args.suite == Suite::Restore { (4, 4) } else { (3, 3) };
            if !in_box(&lambda, rows, cols) {
                return Err(Failure::Refused(format!(
                    "{lambda} is over the size cap: it must fit in a {rows}x{cols} box"
                )));
            }
            if lambda.is_empty() {
                return Err(Failure::Usage("λ must have at least one square".into()));
            }
            if args.suite == Suite::Restore {
                let r = verify_restored_relations(&lambda)?;
                let gens = restore(&lambda)?.lines();
                let text = format!(
                    "{} restore {}: {} relations\n{}{}\n",
                    verdict(r.passed()),
                    lambda.trimmed(),
                    r.checked,
                    failure_lines(&r.failures),
                    gens.join("\n")
                );
                let mut doc = serde_json::to_value(&r).expect("serializable");
                doc["suite"] = json!("restore");
                doc["passed"] = json!(r.passed());
                doc["generators"] = json!(gens);
                (r.passed(), doc, text)
            } else {
                let r = single_step_deletion(&lambda)?;
                let text = format!(
                    "{} delete {} -> {}: {} checks\n{}",
                    verdict(r.passed()),
                    lambda.trimmed(),
                    Partition::new(r.lambda_prime.clone()).expect("valid"),
                    r.checked,
                    failure_lines(&r.failures)
                );
                let mut doc = serde_json::to_value(&r).expect("serializable");
                doc["suite"] = json!("delete");
                doc["passed"] = json!(r.passed());
                (r.passed(), doc, text)
            }
        }
    };
    if verbose {
        eprintln!("verify {:?} finished in {:.3?}", args.suite, started.elapsed());
    }
    let out = match f {
        Format::Json => json_doc(doc),
        _ => Output(text),
    };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn failure_lines(failures: &[String]) -> String {
    failures.iter().map(|f| format!("  {f}\n")).collect()
}

fn configure_threads(verbose: bool) -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize =
        raw.parse().map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    if n == 0 {
        return Err(Failure::Usage(format!("{THREADS_ENV} must be positive")));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))?;
    if verbose {
        eprintln!("using {n} threads");
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    configure_threads(cli.verbose)?;
    match &cli.command {
        Command::Count(args) => cmd_count(args, cli.format),
        Command::Census { m, n } => cmd_census(*m, *n, cli.format),
        Command::Poset { m, n } => cmd_poset(*m, *n, cli.format),
        Command::Cell { n, gamma } => cmd_cell(*n, gamma, cli.format),
        Command::Diagrams { parts } => cmd_diagrams(parts, cli.format),
        Command::Verify(args) => cmd_verify(args, cli.format, cli.verbose),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, &out.0).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.0.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = match dispatch(&cli) {
        Ok(out) => (Some(out), 0),
        Err(Failure::Verification(out)) => (Some(out), 1),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            (None, 1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            (None, 2)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            (None, 3)
        }
    };
    if let Some(out) = out {
        if let Err(msg) = emit(&cli, &out) {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
