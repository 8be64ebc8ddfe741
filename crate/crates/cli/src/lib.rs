//! Command-line front end for the `ucycle` library.
//!
//! Parsing lives in [`Cli`]; [`run`] executes a parsed command against any
//! writer so the binary and the tests share one code path.

use std::io::{self, Write};
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ucycle::graphoracle::{
    self, build_cayley, build_coset_graph_from, export_dot, BruteForce, DotGraph, Verdict,
    CHECK_MAX_ORDER, GRAPH_MAX_ORDER,
};
use ucycle::permstream::{permutation_walk, ucycle_stream};
use ucycle::rankstat::{min_sigma_edges, rank, sigma_n_count, unrank};
use ucycle::seqcore::{
    build_r_recursive, instrumented_counting_stream, instrumented_loopless_stream,
    loopless_position_stream, position_stream, BitStream,
};
use ucycle::{Limits, Permutation, RotationBit};

#[derive(Debug, Parser)]
#[command(name = "ucycle", version, about = "Universal cycles for (n-1)-permutations of [n]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the rotation bits S_n.
    Bits(StreamArgs),
    /// Print the change positions R_n.
    Rseq(StreamArgs),
    /// Print the universal cycle U_n.
    Ucycle(StreamArgs),
    /// Print the permutations in cycle order, one per line.
    Perms(StreamArgs),
    /// Print the position of a permutation in cycle order.
    Rank(RankArgs),
    /// Print the permutation at a position in cycle order.
    Unrank(UnrankArgs),
    /// Print rotation counts for order n.
    Stats(StatsArgs),
    /// Run the cycle checks for order n.
    Verify(VerifyArgs),
    /// Print the Cayley graph or its coset graph as DOT.
    Dot(DotArgs),
    /// Count generator operations per emitted bit.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum MethodArg {
    Recursive,
    Counting,
    #[default]
    Loopless,
}

impl From<MethodArg> for ucycle::Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Recursive => ucycle::Method::Recursive,
            MethodArg::Counting => ucycle::Method::Counting,
            MethodArg::Loopless => ucycle::Method::Loopless,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Compact,
    Lines,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum GraphKind {
    #[default]
    Cayley,
    Coset,
}

#[derive(Debug, Clone, Args)]
pub struct StreamArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Stop after this many symbols.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct RankArgs {
    /// One-line notation, e.g. `2431` or `10 9 8 7 6 5 4 3 2 1`.
    pub perm: String,
}

#[derive(Debug, Clone, Args)]
pub struct UnrankArgs {
    #[arg(long)]
    pub n: usize,
    pub rank: String,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    pub format: Format,
    /// Seconds allowed for the exhaustive minimum search (n in 3..=5).
    #[arg(long)]
    pub budget: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DotArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub graph: GraphKind,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    /// Draw the edges of S_n in bold.
    #[arg(long)]
    pub highlight: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 4)]
    pub from: usize,
    #[arg(long, default_value_t = 10)]
    pub to: usize,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    pub format: Format,
    /// Bits generated per order.
    #[arg(long)]
    pub limit: Option<u64>,
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

pub fn run<W: Write>(command: &Command, out: &mut W) -> anyhow::Result<Outcome> {
    match command {
        Command::Bits(a) => bits(a, out)?,
        Command::Rseq(a) => rseq(a, out)?,
        Command::Ucycle(a) => ucycle_cmd(a, out)?,
        Command::Perms(a) => perms(a, out)?,
        Command::Rank(a) => {
            let p: Permutation = a.perm.parse().context("invalid permutation")?;
            writeln!(out, "{}", rank(&p))?;
        }
        Command::Unrank(a) => {
            let r: BigUint = a.rank.parse().context("rank must be a non-negative integer")?;
            writeln!(out, "{}", unrank(a.n, &r)?)?;
        }
        Command::Stats(a) => stats(a, out)?,
        Command::Verify(a) => return verify(a, out),
        Command::Dot(a) => dot(a, out)?,
        Command::Bench(a) => bench(a, out)?,
    }
    out.flush()?;
    Ok(Outcome::Success)
}

/// Writes a stream of small numbers in one of the three layouts.
struct SymbolWriter<'w, W: Write> {
    out: &'w mut W,
    format: Format,
    separate: bool,
    index: u64,
}

impl<'w, W: Write> SymbolWriter<'w, W> {
    fn new(out: &'w mut W, format: Format, separate: bool, header: &str) -> io::Result<Self> {
        if format == Format::Csv {
            writeln!(out, "index,{header}")?;
        }
        Ok(SymbolWriter {
            out,
            format,
            separate,
            index: 0,
        })
    }

    #[inline]
    fn push(&mut self, value: usize) -> io::Result<()> {
        match self.format {
            Format::Compact => {
                if self.separate && self.index > 0 {
                    self.out.write_all(b" ")?;
                }
                if value < 10 {
                    self.out.write_all(&[b'0' + value as u8])?;
                } else {
                    write!(self.out, "{value}")?;
                }
            }
            Format::Lines => writeln!(self.out, "{value}")?,
            Format::Csv => writeln!(self.out, "{},{value}", self.index)?,
        }
        self.index += 1;
        Ok(())
    }

    fn finish(self) -> io::Result<()> {
        if self.format == Format::Compact {
            self.out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn capped<I: Iterator>(it: I, limit: Option<u64>) -> impl Iterator<Item = I::Item> {
    it.take(limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX)))
}

fn bit_stream(n: usize, method: MethodArg) -> anyhow::Result<BitStream> {
    Ok(BitStream::with_limits(n, method.into(), &Limits::default())?)
}

fn bits<W: Write>(a: &StreamArgs, out: &mut W) -> anyhow::Result<()> {
    let stream = bit_stream(a.n, a.method)?;
    let mut w = SymbolWriter::new(out, a.format, false, "bit")?;
    for b in capped(stream, a.limit) {
        w.push(b.as_u8() as usize)?;
    }
    w.finish()?;
    Ok(())
}

fn rseq<W: Write>(a: &StreamArgs, out: &mut W) -> anyhow::Result<()> {
    let positions: Box<dyn Iterator<Item = usize>> = match a.method {
        MethodArg::Recursive => Box::new(build_r_recursive(a.n)?.positions().to_vec().into_iter()),
        MethodArg::Counting => Box::new(position_stream(a.n)?),
        MethodArg::Loopless => Box::new(loopless_position_stream(a.n)?),
    };
    let mut w = SymbolWriter::new(out, a.format, a.n > 9, "position")?;
    for p in capped(positions, a.limit) {
        w.push(p)?;
    }
    w.finish()?;
    Ok(())
}

fn ucycle_cmd<W: Write>(a: &StreamArgs, out: &mut W) -> anyhow::Result<()> {
    let symbols = ucycle_stream(a.n, bit_stream(a.n, a.method)?)?;
    let mut w = SymbolWriter::new(out, a.format, a.n > 9, "symbol")?;
    for s in capped(symbols, a.limit) {
        w.push(s as usize)?;
    }
    w.finish()?;
    Ok(())
}

fn perms<W: Write>(a: &StreamArgs, out: &mut W) -> anyhow::Result<()> {
    let walk = permutation_walk(a.n, bit_stream(a.n, a.method)?)?;
    if a.format == Format::Csv {
        writeln!(out, "rank,permutation")?;
    }
    for (i, (p, _)) in capped(walk, a.limit).enumerate() {
        match a.format {
            Format::Csv => writeln!(out, "{i},{p}")?,
            _ => writeln!(out, "{p}")?,
        }
    }
    Ok(())
}

/// Largest order whose bits `stats` counts by running a generator.
const STATS_COUNT_MAX_ORDER: usize = Limits::DEFAULT_MAX_MATERIALIZED_ORDER;

fn stats<W: Write>(a: &StatsArgs, out: &mut W) -> anyhow::Result<()> {
    if a.n < 2 {
        bail!("order n = {} is below the minimum of 2", a.n);
    }
    let total = ucycle::rankstat::factorial_big(a.n);
    let f = sigma_n_count(a.n)?;
    let mut rows: Vec<(&str, String)> = vec![
        ("n", a.n.to_string()),
        ("permutations", total.to_string()),
        ("sigma_n_steps", f.to_string()),
        ("sigma_n_minus_1_steps", (&total - &f).to_string()),
    ];
    if a.n >= 3 {
        rows.push(("min_sigma_n_steps_any_cycle", min_sigma_edges(a.n)?.to_string()));
    }
    if a.n <= STATS_COUNT_MAX_ORDER {
        let mut zeros = 0u64;
        let mut ones = 0u64;
        for b in bit_stream(a.n, a.method)? {
            match b {
                RotationBit::Zero => zeros += 1,
                RotationBit::One => ones += 1,
            }
        }
        rows.push(("counted_zero_bits", zeros.to_string()));
        rows.push(("counted_one_bits", ones.to_string()));
    } else {
        eprintln!(
            "note: bit counts skipped, n = {} exceeds the bit count limit of {STATS_COUNT_MAX_ORDER}",
            a.n
        );
    }
    match a.format {
        Format::Csv => {
            writeln!(out, "statistic,value")?;
            for (k, v) in rows {
                writeln!(out, "{k},{v}")?;
            }
        }
        _ => {
            for (k, v) in rows {
                writeln!(out, "{k}: {v}")?;
            }
        }
    }
    Ok(())
}

struct CheckLine {
    name: &'static str,
    passed: bool,
    detail: String,
}

impl CheckLine {
    fn from_verdict(name: &'static str, v: Verdict) -> Self {
        match v {
            Verdict::Pass => CheckLine {
                name,
                passed: true,
                detail: String::new(),
            },
            Verdict::Fail { index, reason } => CheckLine {
                name,
                passed: false,
                detail: format!("at {index}: {reason}"),
            },
        }
    }
}

fn verify<W: Write>(a: &VerifyArgs, out: &mut W) -> anyhow::Result<Outcome> {
    let n = a.n;
    if n < 2 {
        bail!("order n = {n} is below the minimum of 2");
    }
    if n > CHECK_MAX_ORDER {
        bail!("order n = {n} exceeds the verification limit of {CHECK_MAX_ORDER}");
    }
    let bits: Vec<RotationBit> = bit_stream(n, a.method)?.collect();
    let mut lines = Vec::new();

    let report = graphoracle::validate_hamilton(&bits, n)?;
    lines.push(CheckLine {
        name: "validate_hamilton",
        passed: report.is_valid(),
        detail: match (report.first_revisit, report.closes) {
            (Some(step), _) => format!("revisits a permutation at step {step}"),
            (None, false) => "does not return to the start".to_string(),
            (None, true) => String::new(),
        },
    });

    let u: Vec<u8> = ucycle_stream(n, bits.iter().copied())?.collect();
    lines.push(CheckLine::from_verdict(
        "verify_universal",
        graphoracle::verify_universal(&u, n),
    ));

    let flat: Vec<u8> = permutation_walk(n, bits.iter().copied())?
        .flat_map(|(p, _)| p.into_symbols())
        .collect();
    lines.push(CheckLine::from_verdict(
        "verify_multiversal",
        graphoracle::verify_multiversal(&flat, n),
    ));
    lines.push(CheckLine::from_verdict(
        "check_shift_lemma",
        graphoracle::check_shift_lemma(&flat, n),
    ));

    if let Some(secs) = a.budget {
        if !(secs.is_finite() && secs >= 0.0) {
            bail!("budget must be a non-negative number of seconds");
        }
        if (3..=5).contains(&n) {
            lines.push(bruteforce_line(n, Duration::from_secs_f64(secs))?);
        } else {
            eprintln!("note: the minimum search only runs for n in 3..=5");
        }
    }

    let passed = lines.iter().filter(|l| l.passed).count();
    match a.format {
        Format::Csv => {
            writeln!(out, "check,n,result,detail")?;
            for l in &lines {
                writeln!(out, "{},{n},{},{}", l.name, verdict_word(l.passed), l.detail)?;
            }
        }
        _ => {
            for l in &lines {
                write!(out, "{:<20} n={n} {}", l.name, verdict_word(l.passed))?;
                if !l.detail.is_empty() {
                    write!(out, " ({})", l.detail)?;
                }
                writeln!(out)?;
            }
            writeln!(out, "{passed}/{} checks passed", lines.len())?;
        }
    }
    out.flush()?;
    Ok(if passed == lines.len() {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

fn bruteforce_line(n: usize, budget: Duration) -> anyhow::Result<CheckLine> {
    let bound: usize = min_sigma_edges(n)?.try_into().expect("small n");
    let result = graphoracle::min_hamilton_sigma_edges_bruteforce(n, Some(budget))?;
    Ok(match result {
        BruteForce::Exact {
            min_sigma_edges,
            nodes,
        } => CheckLine {
            name: "min_sigma_edges",
            passed: min_sigma_edges == bound,
            detail: format!("found {min_sigma_edges}, bound {bound}, {nodes} nodes"),
        },
        BruteForce::Inconclusive { best_so_far, nodes } => CheckLine {
            name: "min_sigma_edges",
            passed: false,
            detail: format!(
                "inconclusive after {nodes} nodes, best so far {}",
                best_so_far.map_or("none".to_string(), |b| b.to_string())
            ),
        },
    })
}

fn verdict_word(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn dot<W: Write>(a: &DotArgs, out: &mut W) -> anyhow::Result<()> {
    if a.n > GRAPH_MAX_ORDER {
        bail!(
            "order n = {} exceeds the graph size limit of {GRAPH_MAX_ORDER}",
            a.n
        );
    }
    let g = build_cayley(a.n)?;
    let bits: Option<Vec<RotationBit>> = if a.highlight {
        Some(bit_stream(a.n, a.method)?.collect())
    } else {
        None
    };
    let text = match a.graph {
        GraphKind::Cayley => export_dot(DotGraph::Cayley(&g), bits.as_deref()),
        GraphKind::Coset => {
            let q = build_coset_graph_from(&g)?;
            export_dot(DotGraph::Coset(&q, &g), bits.as_deref())
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Per-order operation counts from both streaming generators.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub symbols: u64,
    pub loopless_max: u32,
    pub loopless_mean: f64,
    pub counting_max: u32,
    pub counting_mean: f64,
}

fn summarize(ops: impl Iterator<Item = u32>) -> (u64, u32, f64) {
    let (mut count, mut max, mut sum) = (0u64, 0u32, 0u64);
    for o in ops {
        count += 1;
        max = max.max(o);
        sum += o as u64;
    }
    let mean = if count == 0 { 0.0 } else { sum as f64 / count as f64 };
    (count, max, mean)
}

pub fn bench_row(n: usize, limit: Option<u64>) -> anyhow::Result<BenchRow> {
    let (symbols, loopless_max, loopless_mean) =
        summarize(capped(instrumented_loopless_stream(n)?, limit).map(|(_, ops)| ops));
    let (_, counting_max, counting_mean) =
        summarize(capped(instrumented_counting_stream(n)?, limit).map(|(_, ops)| ops));
    Ok(BenchRow {
        n,
        symbols,
        loopless_max,
        loopless_mean,
        counting_max,
        counting_mean,
    })
}

fn bench<W: Write>(a: &BenchArgs, out: &mut W) -> anyhow::Result<()> {
    if a.from > a.to {
        bail!("--from {} is greater than --to {}", a.from, a.to);
    }
    if a.format == Format::Csv {
        writeln!(
            out,
            "n,symbols,loopless_max,loopless_mean,counting_max,counting_mean"
        )?;
    } else {
        writeln!(
            out,
            "{:>3} {:>12} {:>12} {:>13} {:>12} {:>13}",
            "n", "symbols", "loopless_max", "loopless_mean", "counting_max", "counting_mean"
        )?;
    }
    for n in a.from..=a.to {
        let r = bench_row(n, a.limit)?;
        if a.format == Format::Csv {
            writeln!(
                out,
                "{},{},{},{:.4},{},{:.4}",
                r.n, r.symbols, r.loopless_max, r.loopless_mean, r.counting_max, r.counting_mean
            )?;
        } else {
            writeln!(
                out,
                "{:>3} {:>12} {:>12} {:>13.4} {:>12} {:>13.4}",
                r.n, r.symbols, r.loopless_max, r.loopless_mean, r.counting_max, r.counting_mean
            )?;
        }
    }
    Ok(())
}
