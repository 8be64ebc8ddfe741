use num_bigint::BigUint;
use serde_json::{json, Value};

use ucycle::graphoracle::{multiversal_rows, verify_multiversal};
use ucycle::permstream::{flatten, permutation_walk, write_symbols};
use ucycle::rankstat::{rank, unrank};
use ucycle::seqcore::{loopless_position_stream, BitStream};
use ucycle::{Method, Permutation};

/// Largest order the page will walk; 7! rows is already a long table.
pub const WALK_MAX_ORDER: usize = 7;
pub const OFFSET_MAX_ORDER: usize = 5;

fn parse_method(name: &str) -> Result<Method, String> {
    match name {
        "recursive" => Ok(Method::Recursive),
        "counting" => Ok(Method::Counting),
        "loopless" => Ok(Method::Loopless),
        other => Err(format!("unknown method `{other}`")),
    }
}

fn check_order(n: usize, min: usize, max: usize) -> Result<(), String> {
    if !(min..=max).contains(&n) {
        return Err(format!("n must be between {min} and {max}"));
    }
    Ok(())
}

fn text(symbols: &[u8]) -> String {
    let mut s = String::new();
    write_symbols(&mut s, symbols).unwrap();
    s
}

/// `{n, method, cycle, bits, steps: [{perm, bit, symbol, position}]}` where
/// `symbol` is the first symbol of `perm` and `position` the `R_n` entry.
pub fn cycle_walk(n: usize, method: &str) -> Result<String, String> {
    check_order(n, 2, WALK_MAX_ORDER)?;
    let method = parse_method(method)?;
    let bits = BitStream::new(n, method).map_err(|e| e.to_string())?;
    let positions = loopless_position_stream(n).map_err(|e| e.to_string())?;
    let walk = permutation_walk(n, bits).map_err(|e| e.to_string())?;

    let mut cycle = Vec::new();
    let mut bit_text = String::new();
    let steps: Vec<Value> = walk
        .zip(positions)
        .map(|((p, bit), position)| {
            let symbol = p.symbols()[0];
            cycle.push(symbol);
            bit_text.push(char::from(b'0' + bit.as_u8()));
            json!({
                "perm": p.to_string(),
                "bit": bit.as_u8(),
                "symbol": symbol,
                "position": position,
            })
        })
        .collect();
    Ok(json!({
        "n": n,
        "method": format!("{method:?}").to_lowercase(),
        "cycle": text(&cycle),
        "bits": bit_text,
        "steps": steps,
    })
    .to_string())
}

pub fn rank_of(perm: &str) -> Result<String, String> {
    let p: Permutation = perm.trim().parse().map_err(|e: ucycle::Error| e.to_string())?;
    Ok(json!({ "perm": p.to_string(), "rank": rank(&p).to_string() }).to_string())
}

pub fn unrank_at(n: usize, r: &str) -> Result<String, String> {
    let r: BigUint = r
        .trim()
        .parse()
        .map_err(|_| "rank must be a non-negative integer".to_string())?;
    let p = unrank(n, &r).map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "rank": r.to_string(), "perm": p.to_string() }).to_string())
}

/// `{n, multiversal, rows: [[window, …], …]}`, one row per offset.
pub fn offset_table(n: usize) -> Result<String, String> {
    check_order(n, 3, OFFSET_MAX_ORDER)?;
    let flat = flatten(n).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<String>> = multiversal_rows(&flat, n)
        .iter()
        .map(|row| row.iter().map(|w| text(w)).collect())
        .collect();
    Ok(json!({
        "n": n,
        "multiversal": verify_multiversal(&flat, n).is_pass(),
        "rows": rows,
    })
    .to_string())
}
