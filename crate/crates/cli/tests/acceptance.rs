//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact unless a bound is
//! stated in the criterion's detail line.

mod common;

use std::io;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use ucycle::graphoracle::{
    build_coset_graph, check_shift_lemma, min_hamilton_sigma_edges_bruteforce, multiversal_rows,
    sigma_edges_spanning_check, validate_hamilton, verify_multiversal, verify_universal,
    BruteForce,
};
use ucycle::permstream::{flatten, pi_list};
use ucycle::rankstat::{min_sigma_edges, rank, sigma_n_count, unrank};
use ucycle::seqcore::{
    build_r_recursive, build_s_recursive, counting_stream, instrumented_counting_stream,
    instrumented_loopless_stream, loopless_stream, position_stream, LooplessState,
};
use ucycle::{Limits, RotationBit, UniversalCycleString};
use ucycle_cli::{run, Command, Format, MethodArg, StreamArgs};

#[global_allocator]
static ALLOC: common::ThreadAlloc = common::ThreadAlloc;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn bits_str(bits: &[RotationBit]) -> String {
    bits.iter().map(|b| char::from(b'0' + b.as_u8())).collect()
}

fn symbols_str(s: &[u8]) -> String {
    s.iter().map(|d| d.to_string()).collect()
}

fn c01_bit_exact() -> Outcome {
    for n in 2..=8 {
        let reference = build_s_recursive(n).unwrap().into_bits();
        let counting: Vec<RotationBit> = counting_stream(n).unwrap().collect();
        let loopless: Vec<RotationBit> = loopless_stream(n).unwrap().collect();
        ensure!(counting == reference, "counting differs from recursive at n={n}");
        ensure!(loopless == reference, "loopless differs from recursive at n={n}");
    }
    Ok("recursive = counting = loopless for n in 2..=8".into())
}

// Rows of the n = 4 table: (a) counter, (b) R_4, (c) Gray code, (d) S_4
// indented by R_4, (e) Π(4), (f) U_4, (g) rank.
const TABLE_1: &str = "\
000 & 3 & 000 & . . 0 & 4321 &  4 & 0
001 & 3 & 001 & . . 0 & 3214 &  3 & 1
002 & 3 & 002 & . . 1 & 2143 &  2 & 2
003 & 2 & 003 & . 1 . & 1423 &  1 & 3
010 & 3 & 013 & . . 0 & 4213 &  4 & 4
011 & 3 & 012 & . . 0 & 2134 &  2 & 5
012 & 3 & 011 & . . 1 & 1342 &  1 & 6
013 & 2 & 010 & . 1 . & 3412 &  3 & 7
020 & 3 & 020 & . . 0 & 4132 &  4 & 8
021 & 3 & 021 & . . 0 & 1324 &  1 & 9
022 & 3 & 022 & . . 1 & 3241 & 3 & 10
023 & 1 & 023 & 0 . . & 2431 & 2 & 11
100 & 3 & 123 & . . 0 & 4312 & 4 & 12
101 & 3 & 122 & . . 0 & 3124 & 3 & 13
102 & 3 & 121 & . . 1 & 1243 & 1 & 14
103 & 2 & 120 & . 1 . & 2413 & 2 & 15
110 & 3 & 110 & . . 0 & 4123 & 4 & 16
111 & 3 & 111 & . . 0 & 1234 & 1 & 17
112 & 3 & 112 & . . 1 & 2341 & 2 & 18
113 & 2 & 113 & . 1 . & 3421 & 3 & 19
120 & 3 & 103 & . . 0 & 4231 & 4 & 20
121 & 3 & 102 & . . 0 & 2314 & 2 & 21
122 & 3 & 101 & . . 1 & 3142 & 3 & 22
123 & 1 & 100 & 0 . . & 1432 & 1 & 23";

fn c02_table() -> Outcome {
    let n = 4;
    let r_rec = build_r_recursive(n).unwrap().positions().to_vec();
    let r_count: Vec<usize> = position_stream(n).unwrap().collect();
    let s = build_s_recursive(n).unwrap().into_bits();
    let pi = pi_list(n).unwrap();
    let u = UniversalCycleString::generate(n, &Limits::default()).unwrap();
    let mut gray = LooplessState::new(n).unwrap();

    let rows: Vec<Vec<&str>> = TABLE_1
        .lines()
        .map(|l| l.split('&').map(str::trim).collect())
        .collect();
    ensure!(rows.len() == 24, "table has {} rows", rows.len());
    for (r, row) in rows.iter().enumerate() {
        let [_, b, c, d, e, f, g] = row[..] else {
            return Err(format!("row {r} is malformed"));
        };
        let b: usize = b.parse().unwrap();
        ensure!(r_rec[r] == b, "row {r}: R_4 {} != {b}", r_rec[r]);
        ensure!(r_count[r] == b, "row {r}: counted R_4 {} != {b}", r_count[r]);

        let digits: String = (1..n).rev().map(|j| gray.digit(j).to_string()).collect();
        ensure!(digits == c, "row {r}: Gray code {digits} != {c}");
        gray.step();

        let cells: Vec<&str> = d.split_whitespace().collect();
        let (col, bit) = cells
            .iter()
            .enumerate()
            .find(|(_, c)| **c != ".")
            .ok_or(format!("row {r}: no bit in column (d)"))?;
        ensure!(col + 1 == b, "row {r}: S_4 bit sits in column {} not {b}", col + 1);
        ensure!(
            s[r].as_u8().to_string() == *bit,
            "row {r}: S_4 bit {} != {bit}",
            s[r].as_u8()
        );

        ensure!(pi[r].to_string() == e, "row {r}: Π(4) {} != {e}", pi[r]);
        ensure!(
            u.symbols()[r].to_string() == f,
            "row {r}: U_4 {} != {f}",
            u.symbols()[r]
        );
        let g: u32 = g.parse().unwrap();
        ensure!(g as usize == r, "row {r}: rank column reads {g}");
        ensure!(rank(&pi[r]) == BigUint::from(g), "row {r}: rank({}) != {g}", pi[r]);
    }
    Ok("columns (b) (c) (d) (e) (f) (g), 24 rows".into())
}

fn c03_hamilton() -> Outcome {
    for n in 2..=8 {
        let bits = build_s_recursive(n).unwrap().into_bits();
        let report = validate_hamilton(&bits, n).map_err(|e| e.to_string())?;
        ensure!(report.is_valid(), "n={n}: {report:?}");
    }
    Ok("n! distinct permutations and closure for n in 2..=8".into())
}

fn c04_universal() -> Outcome {
    for n in 2..=8 {
        let u = UniversalCycleString::generate(n, &Limits::default()).unwrap();
        let verdict = verify_universal(u.symbols(), n);
        ensure!(verdict.is_pass(), "n={n}: {verdict:?}");
    }
    Ok("all circular windows distinct for n in 2..=8".into())
}

fn c05_ranking() -> Outcome {
    let mut checks = 0usize;
    for n in 2..=7 {
        for (r, p) in pi_list(n).unwrap().iter().enumerate() {
            let r_big = BigUint::from(r);
            ensure!(rank(p) == r_big, "n={n}: rank({p}) != {r}");
            let q = unrank(n, &r_big).map_err(|e| e.to_string())?;
            ensure!(&q == p, "n={n}: unrank({r}) = {q}, expected {p}");
            checks += 1;
        }
    }
    for (p, r) in [("4321", 0u32), ("2431", 11), ("1432", 23)] {
        let got = rank(&p.parse().unwrap());
        ensure!(got == BigUint::from(r), "rank({p}) = {got}, expected {r}");
    }
    Ok(format!("{checks} rank/unrank round trips for n in 2..=7, table ranks 0, 11, 23"))
}

fn c06_f_values() -> Outcome {
    let expected = [1u64, 2, 4, 14, 58, 302, 1858, 13262, 107698, 980942];
    for (i, &f) in expected.iter().enumerate() {
        let n = i + 1;
        let got = sigma_n_count(n).map_err(|e| e.to_string())?;
        ensure!(got == BigUint::from(f), "f_{n} = {got}, expected {f}");
    }
    for n in 2..=10 {
        let zeros = build_s_recursive(n).unwrap().count_zeros() as u64;
        ensure!(
            zeros == expected[n - 1],
            "n={n}: S_n has {zeros} zero bits, expected {}",
            expected[n - 1]
        );
    }
    Ok("f_1..f_10 exact, zero-bit counts of S_2..S_10 agree".into())
}

fn c07_bruteforce() -> Outcome {
    let mut detail = Vec::new();
    for n in [3, 4] {
        let bound: usize = min_sigma_edges(n).unwrap().try_into().unwrap();
        let started = Instant::now();
        let result = min_hamilton_sigma_edges_bruteforce(n, Some(Duration::from_secs(300)))
            .map_err(|e| e.to_string())?;
        match result {
            BruteForce::Exact {
                min_sigma_edges,
                nodes,
            } => {
                ensure!(
                    min_sigma_edges == bound,
                    "n={n}: search found {min_sigma_edges}, bound is {bound}"
                );
                detail.push(format!(
                    "n={n}: {min_sigma_edges} ({nodes} nodes, {:.2?})",
                    started.elapsed()
                ));
            }
            BruteForce::Inconclusive { .. } => {
                return Err(format!("n={n}: search did not finish within 300 s"))
            }
        }
    }
    Ok(detail.join(", "))
}

fn c08_spanning() -> Outcome {
    for (n, expect) in [(4, true), (5, true), (6, false)] {
        let report = sigma_edges_spanning_check(n).map_err(|e| e.to_string())?;
        ensure!(
            report.is_tree == expect,
            "n={n}: is_tree = {}, expected {expect}",
            report.is_tree
        );
    }
    Ok("is_tree: n=4 true, n=5 true, n=6 false".into())
}

const OFFSETS_N3: &str = "\
0 & 32 & 21 & 13 & 31 & 12 & 23
1 & 21 & 13 & 32 & 12 & 23 & 31
2 & 12 & 31 & 23 & 21 & 32 & 13";

/// Offset table rows: the offset, then the windows.
fn parse_offsets(text: &str) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    for line in text.lines() {
        let mut cells = line.split('&').map(str::trim);
        let label = cells.next().unwrap();
        if !label.is_empty() {
            rows.push(Vec::new());
        }
        rows.last_mut().unwrap().extend(cells.map(String::from));
    }
    rows
}

fn c09_multiversal() -> Outcome {
    for n in 3..=7 {
        let flat = flatten(n).unwrap();
        let v = verify_multiversal(&flat, n);
        ensure!(v.is_pass(), "n={n}: multiversal {v:?}");
        let v = check_shift_lemma(&flat, n);
        ensure!(v.is_pass(), "n={n}: shift lemma {v:?}");
    }
    let expected = parse_offsets(OFFSETS_N3);
    let got: Vec<Vec<String>> = multiversal_rows(&flatten(3).unwrap(), 3)
        .iter()
        .map(|row| row.iter().map(|w| symbols_str(w)).collect())
        .collect();
    ensure!(got == expected, "n=3: offset table differs: {got:?}");
    Ok("n in 3..=7 multiversal and shifted; n=3 offset table verbatim".into())
}

/// Peak heap bytes of a streaming command writing to a sink.
fn stream_peak(command: Command) -> Result<usize, String> {
    let mut err = None;
    let peak = common::peak_heap(|| {
        if let Err(e) = run(&command, &mut io::sink()) {
            err = Some(e.to_string());
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(peak),
    }
}

fn stream_args(n: usize, limit: Option<u64>) -> StreamArgs {
    StreamArgs {
        n,
        method: MethodArg::Loopless,
        format: Format::Compact,
        limit,
    }
}

fn c10_loopless() -> Outcome {
    let mut maxima = Vec::new();
    for n in [4, 6, 8, 10, 12] {
        let max = instrumented_loopless_stream(n)
            .unwrap()
            .map(|(_, ops)| ops)
            .max()
            .unwrap();
        maxima.push((n, max));
    }
    let c = maxima[0].1;
    ensure!(
        maxima.iter().all(|&(_, m)| m == c),
        "loopless maxima differ: {maxima:?}"
    );
    let counting_max = |n| {
        instrumented_counting_stream(n)
            .unwrap()
            .map(|(_, ops)| ops)
            .max()
            .unwrap()
    };
    let (c4, c10) = (counting_max(4), counting_max(10));
    ensure!(c10 > c4, "counting maxima should grow: {c4} at n=4, {c10} at n=10");

    // Linear growth: peak(12) may not exceed peak(8) scaled by 12/8. The
    // cycle itself is streamed in full; the others stop after 10^7 symbols.
    let mut peaks = Vec::new();
    type Make = fn(StreamArgs) -> Command;
    let commands: [(&str, Make, Option<u64>); 4] = [
        ("ucycle", Command::Ucycle, None),
        ("bits", Command::Bits, Some(10_000_000)),
        ("rseq", Command::Rseq, Some(10_000_000)),
        ("perms", Command::Perms, Some(1_000_000)),
    ];
    for (name, make, limit) in commands {
        let p8 = stream_peak(make(stream_args(8, limit)))?;
        let p12 = stream_peak(make(stream_args(12, limit)))?;
        ensure!(
            p12 * 8 <= p8 * 12,
            "{name}: peak heap {p12} B at n=12 exceeds 12/8 of {p8} B at n=8"
        );
        peaks.push(format!("{name} {p8}/{p12} B"));
    }
    Ok(format!(
        "loopless max ops C = {c} for n in {{4,6,8,10,12}} (counting: {c4} at n=4, {c10} at n=10); peak heap n=8/n=12: {}",
        peaks.join(", ")
    ))
}

fn c11_q4() -> Outcome {
    let q = build_coset_graph(4).map_err(|e| e.to_string())?;
    ensure!(
        q.supervertex_count() == 8,
        "{} supervertices",
        q.supervertex_count()
    );
    let degrees = q.degrees();
    ensure!(degrees.iter().all(|&d| d == 3), "degrees {degrees:?}");
    ensure!(q.diameter() == Some(3), "diameter {:?}", q.diameter());
    Ok("8 supervertices, 3-regular, diameter 3".into())
}

// The two generator boxes exactly as printed, with the `j even` parity test.
fn printed_counting_box(n: usize) -> Vec<u8> {
    let mut out = Vec::new();
    let mut a = vec![0i64; n + 2];
    loop {
        let mut j = 1;
        while a[j] == n as i64 - j as i64 {
            a[j] = 0;
            j += 1;
        }
        out.push(((j % 2 == 0) ^ (a[j] <= 1)) as u8);
        a[j] += 1;
        if j >= n {
            break;
        }
    }
    out
}

fn printed_loopless_box(n: usize) -> Vec<u8> {
    let mut out = Vec::new();
    let mut a = vec![0i64; n + 2];
    let mut d = vec![1i64; n + 2];
    let mut f: Vec<usize> = (0..n + 2).collect();
    f[n] = n + 1;
    loop {
        let j = f[1];
        f[1] = 1;
        let edge = a[j] - d[j] <= 0 || a[j] - d[j] >= n as i64 - j as i64;
        out.push(((j % 2 == 0) ^ edge) as u8);
        a[j] += d[j];
        if a[j] == 0 || a[j] == n as i64 - j as i64 {
            d[j] = -d[j];
            f[j] = f[j + 1];
            f[j + 1] = j + 1;
        }
        if j >= n {
            break;
        }
    }
    out
}

fn c12_parity_erratum() -> Outcome {
    let s3 = build_s_recursive(3).unwrap().into_bits();
    ensure!(bits_str(&s3) == "001001", "S_3 = {}", bits_str(&s3));
    let complement: String = s3.iter().map(|b| char::from(b'0' + b.flipped().as_u8())).collect();
    for (name, printed) in [
        ("counting", printed_counting_box(3)),
        ("loopless", printed_loopless_box(3)),
    ] {
        let printed = symbols_str(&printed);
        ensure!(
            printed == complement,
            "printed {name} box emits {printed}, complement of S_3 is {complement}"
        );
    }
    let calibrated_c: Vec<RotationBit> = counting_stream(3).unwrap().collect();
    let calibrated_l: Vec<RotationBit> = loopless_stream(3).unwrap().collect();
    ensure!(calibrated_c == s3 && calibrated_l == s3, "calibrated generators do not emit S_3");
    Ok(format!(
        "printed `j even` boxes emit {complement} = complement of S_3 = 001001; calibrated `j odd` emits S_3"
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "bit-exact S_n", c01_bit_exact),
        (2, "table reproduction n=4", c02_table),
        (3, "Hamiltonicity", c03_hamilton),
        (4, "universality", c04_universal),
        (5, "ranking", c05_ranking),
        (6, "f_n values", c06_f_values),
        (7, "minimum sigma_n edges by search", c07_bruteforce),
        (8, "sigma_n edges spanning tree", c08_spanning),
        (9, "multiversality and shift", c09_multiversal),
        (10, "loopless and streaming memory", c10_loopless),
        (11, "Q_4 structure", c11_q4),
        (12, "printed parity erratum", c12_parity_erratum),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in criteria {
        let started = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let elapsed = started.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{elapsed:.2?}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}]: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
