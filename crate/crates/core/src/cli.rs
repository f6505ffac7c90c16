//! Command-line front end. The binary only parses arguments and calls
//! [`run`]; everything here writes to caller-supplied streams so it can be
//! tested in-process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input or I/O failure,
//! 3 aborted by the time limit (a partial report is still written).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{certify_with, CertifyOptions, Verdict};
use crate::crosscheck::{check_knot, check_link};
use crate::error::Error;
use crate::graph::AuxGraph;
use crate::links::explore_link_case;
use crate::sequence::{binomial, enumerate_balanced, Mode, SignSeq};

pub const MAX_N_ENV: &str = "PRETZEL_SLICE_MAX_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "pretzel-slice",
    version,
    about = "Double slicing band systems for odd pretzel knots"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (defaults per command).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for exhaustive sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest n accepted by exhaustive commands.
    #[arg(long, global = true, env = MAX_N_ENV, default_value_t = 12)]
    pub max_n: usize,

    /// Random band orders spot-checked per certificate and direction.
    #[arg(long, global = true, default_value_t = 4)]
    pub random_orders: usize,

    /// Odd twist magnitude a, used for labels only.
    #[arg(
        long,
        global = true,
        default_value_t = 3,
        allow_negative_numbers = true
    )]
    pub twist: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify one sign sequence such as "+-+-+".
    Certify { sequence: String },
    /// Certify every odd sequence with n minus signs.
    Enumerate {
        /// Number of minus signs; sequences have length 2n+1.
        n: usize,
        /// Stop after this many seconds and report what was done.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Explore the even-length link case with n boxes of each sign.
    Links { n: usize },
    /// Write the auxiliary graph of a sequence as Graphviz DOT.
    ExportDot { sequence: String },
    /// Compare literal band surgery with the bookkeeping for all sequences
    /// up to n.
    DiagramCheck { n: usize },
}

struct Output {
    code: i32,
    artifact: String,
    /// Extra lines for stderr (timings, notes).
    notes: String,
}

impl Output {
    fn ok(artifact: String) -> Self {
        Output {
            code: 0,
            artifact,
            notes: String::new(),
        }
    }
}

#[derive(Debug)]
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

/// Run a parsed configuration, writing the artifact to `stdout` (or the
/// `--out` file) and diagnostics to `stderr`. Returns the exit code.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let pool = match config.jobs {
        Some(0) => {
            let _ = writeln!(stderr, "error: --jobs must be at least 1");
            return 2;
        }
        Some(j) => rayon::ThreadPoolBuilder::new().num_threads(j).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let result = pool.install(|| dispatch(config));
    let out = match result {
        Ok(out) => out,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let _ = stderr.write_all(out.notes.as_bytes());
    match &config.out {
        Some(path) => {
            if let Err(source) = std::fs::write(path, &out.artifact) {
                let e = Error::Io {
                    path: path.clone(),
                    source,
                };
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(out.artifact.as_bytes());
        }
    }
    out.code
}

fn dispatch(config: &RunConfig) -> Result<Output, Usage> {
    if config.twist % 2 == 0 {
        return Err(Usage(format!(
            "twist magnitude must be odd, got {}",
            config.twist
        )));
    }
    match &config.command {
        Command::Certify { sequence } => cmd_certify(config, sequence),
        Command::Enumerate { n, time_limit } => {
            check_bound(*n, config.max_n)?;
            cmd_enumerate(config, *n, time_limit.map(Duration::from_secs_f64))
        }
        Command::Links { n } => {
            check_bound(*n, config.max_n)?;
            cmd_links(config, *n)
        }
        Command::ExportDot { sequence } => cmd_export_dot(config, sequence),
        Command::DiagramCheck { n } => {
            check_bound(*n, config.max_n)?;
            cmd_diagram_check(config, *n)
        }
    }
}

fn check_bound(n: usize, max: usize) -> Result<(), Usage> {
    if n > max {
        return Err(Error::BoundExceeded { n, max }.into());
    }
    Ok(())
}

fn format_or(config: &RunConfig, default: Format, allowed: &[Format]) -> Result<Format, Usage> {
    let f = config.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Usage(format!(
            "format {} is not available for this command",
            f.to_possible_value().unwrap().get_name()
        )))
    }
}

fn parse_knot(sequence: &str) -> Result<SignSeq, Usage> {
    let seq: SignSeq = sequence.parse()?;
    seq.validate(Mode::OddKnot)?;
    Ok(seq)
}

/// `P(3,-3,3)` style label.
pub fn pretzel_label(seq: &SignSeq, twist: i64) -> String {
    let parts: Vec<String> = seq
        .signs()
        .iter()
        .map(|s| if s.is_plus() { twist } else { -twist }.to_string())
        .collect();
    format!("P({})", parts.join(","))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn options(config: &RunConfig) -> CertifyOptions {
    CertifyOptions {
        random_orders: config.random_orders,
        ..CertifyOptions::default()
    }
}

pub fn cmd_certify_text(cert: &crate::certify::SliceCertificate, twist: i64) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "knot       {} = {}",
        cert.sequence,
        pretzel_label(&cert.sequence, twist)
    )
    .unwrap();
    let pairs = |m: &crate::pairing::BandMatching| {
        m.pairs
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(out, "A bands    {}", pairs(&cert.matching_a)).unwrap();
    writeln!(out, "B bands    {}", pairs(&cert.matching_b)).unwrap();
    match &cert.path {
        Some(p) => writeln!(out, "G is path  {:?}", p).unwrap(),
        None => writeln!(out, "G is path  no").unwrap(),
    }
    writeln!(out, "K*A*B_k    {:?}", cert.stage_components_ab).unwrap();
    writeln!(out, "K*B*A_k    {:?}", cert.stage_components_ba).unwrap();
    match &cert.verdict {
        Verdict::Certified => writeln!(out, "verdict    certified doubly slice").unwrap(),
        Verdict::Failed { reason } => writeln!(out, "verdict    failed: {reason}").unwrap(),
    }
    out
}

fn cmd_certify(config: &RunConfig, sequence: &str) -> Result<Output, Usage> {
    let seq = parse_knot(sequence)?;
    let cert = certify_with(&seq, options(config))?;
    let artifact = match format_or(config, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => json(&cert),
        _ => cmd_certify_text(&cert, config.twist),
    };
    let code = if cert.verdict.is_certified() { 0 } else { 1 };
    Ok(Output {
        code,
        artifact,
        notes: String::new(),
    })
}

#[derive(Debug, Serialize)]
struct EnumerationSummary {
    n: usize,
    total: u64,
    processed: u64,
    certified: u64,
    dihedral_classes: usize,
    failed: Vec<SignSeq>,
    complete: bool,
}

fn cmd_enumerate(config: &RunConfig, n: usize, limit: Option<Duration>) -> Result<Output, Usage> {
    let format = format_or(
        config,
        Format::Text,
        &[Format::Text, Format::Json, Format::Csv],
    )?;
    let opts = options(config);
    let started = Instant::now();
    let total = binomial(2 * n as u64 + 1, n as u64);
    let mut stream = enumerate_balanced(n, Mode::OddKnot);
    let mut processed = 0u64;
    let mut certified = 0u64;
    let mut failed = Vec::new();
    let mut classes = HashSet::new();
    let mut csv = String::from("sequence,class,verdict\n");
    let mut complete = true;
    const CHUNK: usize = 8192;
    loop {
        if limit.is_some_and(|l| started.elapsed() > l) {
            complete = false;
            break;
        }
        let chunk: Vec<SignSeq> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<(SignSeq, SignSeq, bool)> = chunk
            .into_par_iter()
            .map(|s| {
                let ok = certify_with(&s, opts).is_ok_and(|c| c.verdict.is_certified());
                let class = s.canonical_form().0;
                (s, class, ok)
            })
            .collect();
        for (s, class, ok) in results {
            processed += 1;
            if ok {
                certified += 1;
            } else {
                failed.push(s.clone());
            }
            if format == Format::Csv {
                writeln!(
                    csv,
                    "{s},{class},{}",
                    if ok { "certified" } else { "failed" }
                )
                .unwrap();
            }
            classes.insert(class);
        }
    }

    let summary = EnumerationSummary {
        n,
        total,
        processed,
        certified,
        dihedral_classes: classes.len(),
        failed,
        complete,
    };
    let artifact = match format {
        Format::Json => json(&summary),
        Format::Csv => csv,
        _ => {
            let mut s = String::new();
            writeln!(
                s,
                "n = {n}: {certified}/{total} certified doubly slice ({} dihedral classes)",
                summary.dihedral_classes
            )
            .unwrap();
            if !complete {
                writeln!(
                    s,
                    "ABORTED after {processed} of {total} sequences (time limit)"
                )
                .unwrap();
            }
            for f in &summary.failed {
                writeln!(s, "FAILED {f}").unwrap();
            }
            s
        }
    };
    let code = if !summary.failed.is_empty() {
        1
    } else if !complete {
        3
    } else {
        0
    };
    let notes = format!(
        "enumerate n={n}: {processed} certificates in {:.2?}\n",
        started.elapsed()
    );
    Ok(Output {
        code,
        artifact,
        notes,
    })
}

fn cmd_links(config: &RunConfig, n: usize) -> Result<Output, Usage> {
    let format = format_or(
        config,
        Format::Text,
        &[Format::Text, Format::Json, Format::Csv],
    )?;
    let report = explore_link_case(n)?;
    let artifact = match format {
        Format::Json => json(&report),
        Format::Csv => report.to_csv(),
        _ => report.to_text(),
    };
    let mut out = Output::ok(artifact);
    if !report.conforms {
        out.code = 1;
        out.notes = "NONCONFORMING link result: see report\n".into();
    }
    Ok(out)
}

fn cmd_export_dot(config: &RunConfig, sequence: &str) -> Result<Output, Usage> {
    format_or(config, Format::Dot, &[Format::Dot])?;
    let seq = parse_knot(sequence)?;
    Ok(Output::ok(AuxGraph::build(&seq)?.to_dot()))
}

#[derive(Debug, Serialize)]
struct DiagramSummary {
    n: usize,
    knots_checked: usize,
    knot_disagreements: Vec<SignSeq>,
    link_trials_checked: usize,
    link_disagreements: Vec<(SignSeq, usize, usize)>,
}

fn cmd_diagram_check(config: &RunConfig, n: usize) -> Result<Output, Usage> {
    let format = format_or(config, Format::Text, &[Format::Text, Format::Json])?;
    let knots: Vec<SignSeq> = (0..=n)
        .flat_map(|k| enumerate_balanced(k, Mode::OddKnot))
        .collect();
    let knot_results = knots
        .par_iter()
        .map(|s| check_knot(s).map(|c| c.agrees()))
        .collect::<crate::error::Result<Vec<bool>>>()?;
    let links: Vec<(SignSeq, usize, usize)> = (1..=n)
        .flat_map(|k| enumerate_balanced(k, Mode::EvenLink))
        .flat_map(|s| {
            let k = s.n();
            (0..k)
                .flat_map(move |i| (0..k).map(move |j| (i, j)))
                .map(move |(i, j)| (s.clone(), i, j))
        })
        .collect();
    let link_results = links
        .par_iter()
        .map(|(s, i, j)| check_link(s, *i, *j).map(|c| c.agrees()))
        .collect::<crate::error::Result<Vec<bool>>>()?;

    let summary = DiagramSummary {
        n,
        knots_checked: knots.len(),
        knot_disagreements: knots
            .iter()
            .zip(&knot_results)
            .filter(|(_, &ok)| !ok)
            .map(|(s, _)| s.clone())
            .collect(),
        link_trials_checked: links.len(),
        link_disagreements: links
            .iter()
            .zip(&link_results)
            .filter(|(_, &ok)| !ok)
            .map(|(t, _)| t.clone())
            .collect(),
    };
    let all_agree = summary.knot_disagreements.is_empty() && summary.link_disagreements.is_empty();
    let artifact = match format {
        Format::Json => json(&summary),
        _ => {
            let mut s = String::new();
            writeln!(
                s,
                "knots: {} sequences with n <= {n}",
                summary.knots_checked
            )
            .unwrap();
            writeln!(
                s,
                "links: {} drop choices with n <= {n}",
                summary.link_trials_checked
            )
            .unwrap();
            if all_agree {
                writeln!(s, "all stages agree").unwrap();
            } else {
                for d in &summary.knot_disagreements {
                    writeln!(s, "DISAGREE knot {d}").unwrap();
                }
                for (d, i, j) in &summary.link_disagreements {
                    writeln!(s, "DISAGREE link {d} drop ({i},{j})").unwrap();
                }
            }
            s
        }
    };
    Ok(Output {
        code: if all_agree { 0 } else { 1 },
        artifact,
        notes: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let config =
            RunConfig::try_parse_from(std::iter::once("pretzel-slice").chain(args.iter().copied()))
                .unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&config, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn certify_exit_codes() {
        assert_eq!(run_args(&["certify", "+-+-+"]).0, 0);
        assert_eq!(run_args(&["certify", "+"]).0, 0);
        let (code, _, err) = run_args(&["certify", "+--"]);
        assert_eq!(code, 2);
        assert!(err.contains("1 plus and 2 minus"), "{err}");
        assert_eq!(run_args(&["certify", "+x+"]).0, 2);
    }

    #[test]
    fn labels_use_twist() {
        let (_, out, _) = run_args(&["certify", "+-+", "--twist", "5"]);
        assert!(out.contains("P(5,-5,5)"), "{out}");
        assert_eq!(run_args(&["certify", "+-+", "--twist", "4"]).0, 2);
    }

    #[test]
    fn bound_is_enforced() {
        let (code, _, err) = run_args(&["enumerate", "5", "--max-n", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("exceeds"), "{err}");
    }

    #[test]
    fn enumerate_small() {
        let (code, out, _) = run_args(&["enumerate", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n = 2: 10/10 certified"), "{out}");
    }

    #[test]
    fn wrong_format_is_usage_error() {
        assert_eq!(run_args(&["export-dot", "+-+", "--format", "json"]).0, 2);
    }

    #[test]
    fn label_format() {
        assert_eq!(pretzel_label(&"+-+".parse().unwrap(), 3), "P(3,-3,3)");
    }
}
