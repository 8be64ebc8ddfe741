//! Permutations driven by rotation bits.
//!
//! `σ_k` acts on positions: it moves the symbol in position 1 to position `k`
//! and shifts positions `2..=k` one place left. Symbols are `1..=n`; all
//! public indices are 0-based.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::seqcore::{Limits, RotationBit};
use crate::{check_min_order, factorial, Error, Result};

/// A permutation of `1..=m` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        validate_permutation(&symbols)?;
        Ok(Permutation(symbols))
    }

    /// `n n-1 … 1`, the first entry of `Π(n)`.
    pub fn descending(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub(crate) fn from_vec_unchecked(symbols: Vec<u8>) -> Self {
        Permutation(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn rotate(&self, k: usize) -> Result<Self> {
        apply_rotation(self, k)
    }
}

impl AsRef<[u8]> for Permutation {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `4321` for `n ≤ 9`, or symbols separated by spaces or commas.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::NotPermutation {
            len: 0,
            reason: format!("{reason}: {s:?}"),
        };
        let symbols: Vec<u8> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| bad("unparsable symbol")))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| bad("unparsable symbol"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(symbols)
    }
}

/// Writes symbols without separators when every symbol is a single digit,
/// space separated otherwise.
pub fn write_symbols<W: fmt::Write>(out: &mut W, symbols: &[u8]) -> fmt::Result {
    if symbols.iter().all(|&s| s <= 9) {
        for s in symbols {
            write!(out, "{s}")?;
        }
    } else {
        for (i, s) in symbols.iter().enumerate() {
            if i > 0 {
                out.write_char(' ')?;
            }
            write!(out, "{s}")?;
        }
    }
    Ok(())
}

fn validate_permutation(symbols: &[u8]) -> Result<()> {
    let len = symbols.len();
    let mut seen = vec![false; len + 1];
    for &s in symbols {
        let idx = s as usize;
        if idx == 0 || idx > len {
            return Err(Error::NotPermutation {
                len,
                reason: format!("symbol {s} out of range"),
            });
        }
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::NotPermutation {
                len,
                reason: format!("symbol {s} repeated"),
            });
        }
    }
    Ok(())
}

/// `σ_k(p)`: the first `k` positions rotate left by one.
pub fn apply_rotation(p: &Permutation, k: usize) -> Result<Permutation> {
    let mut out = p.0.clone();
    rotate_prefix(&mut out, k)?;
    Ok(Permutation(out))
}

/// `σ_k⁻¹(p)`: the first `k` positions rotate right by one.
pub fn apply_inverse_rotation(p: &Permutation, k: usize) -> Result<Permutation> {
    let mut out = p.0.clone();
    check_rotation(k, out.len())?;
    out[..k].rotate_right(1);
    Ok(Permutation(out))
}

/// In-place `σ_k` on a raw symbol slice.
pub fn rotate_prefix(symbols: &mut [u8], k: usize) -> Result<()> {
    check_rotation(k, symbols.len())?;
    symbols[..k].rotate_left(1);
    Ok(())
}

fn check_rotation(k: usize, len: usize) -> Result<()> {
    if k < 2 || k > len {
        return Err(Error::RotationOutOfRange { k, len });
    }
    Ok(())
}

/// The current permutation held in a circular array.
///
/// The window is the `n` cells read circularly starting just after `last`.
/// A `σ_n` step only moves `last`; a `σ_{n-1}` step also swaps the two cells
/// at the old and new `last`, so every step costs O(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularWindow {
    backing: Vec<u8>,
    last: usize,
}

impl CircularWindow {
    /// Starts at `n n-1 … 1`.
    pub fn new(n: usize) -> Result<Self> {
        check_min_order(n, 2)?;
        Ok(Self::from_permutation(&Permutation::descending(n)))
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        CircularWindow {
            backing: p.0.clone(),
            last: p.len() - 1,
        }
    }

    pub fn order(&self) -> usize {
        self.backing.len()
    }

    /// Physical index of the window's last cell.
    pub fn last_index(&self) -> usize {
        self.last
    }

    pub fn backing(&self) -> &[u8] {
        &self.backing
    }

    #[inline]
    pub fn first(&self) -> u8 {
        let n = self.backing.len();
        self.backing[(self.last + 1) % n]
    }

    /// Symbol at window position `i` (0-based).
    pub fn get(&self, i: usize) -> u8 {
        let n = self.backing.len();
        self.backing[(self.last + 1 + i) % n]
    }

    pub fn current(&self) -> Permutation {
        Permutation((0..self.order()).map(|i| self.get(i)).collect())
    }

    /// Emits the window's first symbol, then applies the rotation `bit` selects.
    #[inline]
    pub fn step(&mut self, bit: RotationBit) -> u8 {
        let n = self.backing.len();
        let first = self.first();
        let prev = self.last;
        self.last = if prev + 1 == n { 0 } else { prev + 1 };
        if bit == RotationBit::One {
            self.backing.swap(self.last, prev);
        }
        first
    }
}

pub fn circular_step(window: &mut CircularWindow, bit: RotationBit) -> u8 {
    window.step(bit)
}

/// Streams the universal cycle: one symbol per rotation bit.
#[derive(Debug, Clone)]
pub struct UCycleStream<I> {
    window: CircularWindow,
    bits: I,
}

pub fn ucycle_stream<I>(n: usize, bits: I) -> Result<UCycleStream<I::IntoIter>>
where
    I: IntoIterator<Item = RotationBit>,
{
    Ok(UCycleStream {
        window: CircularWindow::new(n)?,
        bits: bits.into_iter(),
    })
}

impl<I> UCycleStream<I> {
    pub fn window(&self) -> &CircularWindow {
        &self.window
    }
}

impl<I: Iterator<Item = RotationBit>> Iterator for UCycleStream<I> {
    type Item = u8;

    #[inline]
    fn next(&mut self) -> Option<u8> {
        let bit = self.bits.next()?;
        Some(self.window.step(bit))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.bits.size_hint()
    }
}

/// Streams the permutations visited by a bit sequence, starting at `n … 1`.
/// Yields each permutation together with the bit applied to leave it.
#[derive(Debug, Clone)]
pub struct PermutationWalk<I> {
    window: CircularWindow,
    bits: I,
}

pub fn permutation_walk<I>(n: usize, bits: I) -> Result<PermutationWalk<I::IntoIter>>
where
    I: IntoIterator<Item = RotationBit>,
{
    Ok(PermutationWalk {
        window: CircularWindow::new(n)?,
        bits: bits.into_iter(),
    })
}

impl<I> PermutationWalk<I> {
    pub fn window(&self) -> &CircularWindow {
        &self.window
    }
}

impl<I: Iterator<Item = RotationBit>> Iterator for PermutationWalk<I> {
    type Item = (Permutation, RotationBit);

    fn next(&mut self) -> Option<Self::Item> {
        let bit = self.bits.next()?;
        let current = self.window.current();
        self.window.step(bit);
        Some((current, bit))
    }
}

/// `Π(n)` built directly from its block recursion, with the default [`Limits`].
pub fn pi_list(n: usize) -> Result<Vec<Permutation>> {
    pi_list_with(n, &Limits::default())
}

/// `Π(n)`: block `j` starts with `n·Π(n-1)_j`, followed by `σ_n` and `σ_n²` of
/// it, then `n-3` further applications of `σ_{n-1}`.
pub fn pi_list_with(n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    check_min_order(n, 2)?;
    limits.check_materialize(n)?;

    let mut list = vec![Permutation(vec![2, 1]), Permutation(vec![1, 2])];
    for m in 3..=n {
        let mut next = Vec::with_capacity(list.len() * m);
        for base in &list {
            let mut p = Vec::with_capacity(m);
            p.push(m as u8);
            p.extend_from_slice(&base.0);
            next.push(Permutation(p.clone()));
            for _ in 0..2 {
                p[..m].rotate_left(1);
                next.push(Permutation(p.clone()));
            }
            for _ in 0..m - 3 {
                p[..m - 1].rotate_left(1);
                next.push(Permutation(p.clone()));
            }
        }
        list = next;
    }
    Ok(list)
}

/// All permutations of `Π(n)` concatenated: a circular string of length `n·n!`.
pub fn flatten(n: usize) -> Result<Vec<u8>> {
    flatten_with(n, &Limits::default())
}

pub fn flatten_with(n: usize, limits: &Limits) -> Result<Vec<u8>> {
    Ok(pi_list_with(n, limits)?
        .into_iter()
        .flat_map(Permutation::into_symbols)
        .collect())
}

/// The element of `[n]` missing from a window of `n-1` distinct symbols.
pub fn missing_symbol(window: &[u8]) -> Result<u8> {
    let n = window.len() + 1;
    let mut seen = vec![false; n + 1];
    for (position, &s) in window.iter().enumerate() {
        let idx = s as usize;
        if idx == 0 || idx > n || std::mem::replace(&mut seen[idx], true) {
            return Err(Error::InvalidWindow { position, n });
        }
    }
    let missing = (1..=n).find(|&s| !seen[s]).expect("n-1 distinct symbols leave one free");
    Ok(missing as u8)
}

/// A universal cycle for the (n-1)-permutations of `[n]`, stored as its `n!`
/// symbols in cycle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCycleString {
    n: usize,
    symbols: Vec<u8>,
}

impl UniversalCycleString {
    /// Checks the length and alphabet; window validity is checked when the
    /// cycle is expanded or verified.
    pub fn new(n: usize, symbols: Vec<u8>) -> Result<Self> {
        check_min_order(n, 2)?;
        let expected = factorial(n).ok_or(Error::ResourceGuard {
            n,
            limit: crate::MAX_STREAM_ORDER,
            guard: "factorial width",
        })?;
        if symbols.len() != expected {
            return Err(Error::CycleLength {
                len: symbols.len(),
                expected,
            });
        }
        if let Some(position) = symbols.iter().position(|&s| s == 0 || s as usize > n) {
            return Err(Error::InvalidWindow { position, n });
        }
        Ok(UniversalCycleString { n, symbols })
    }

    /// `U_n` generated with the loopless algorithm.
    pub fn generate(n: usize, limits: &Limits) -> Result<Self> {
        limits.check_materialize(n)?;
        let bits = crate::seqcore::loopless_stream(n)?;
        let symbols = ucycle_stream(n, bits)?.collect();
        Ok(UniversalCycleString { n, symbols })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// The `n-1` symbols starting at circular position `i`.
    pub fn window(&self, i: usize) -> Vec<u8> {
        circular_window(&self.symbols, i, self.n - 1)
    }
}

impl fmt::Display for UniversalCycleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, &self.symbols)
    }
}

pub(crate) fn circular_window(symbols: &[u8], start: usize, len: usize) -> Vec<u8> {
    let total = symbols.len();
    (0..len).map(|k| symbols[(start + k) % total]).collect()
}

/// Recovers the `n!` permutations of a shorthand universal cycle by appending
/// the missing symbol to every window, in cycle order.
pub fn expand_shorthand(u: &UniversalCycleString) -> Result<Vec<Permutation>> {
    let n = u.order();
    let mut seen = HashSet::with_capacity(u.symbols.len());
    let mut out = Vec::with_capacity(u.symbols.len());
    for i in 0..u.symbols.len() {
        let mut window = u.window(i);
        let missing =
            missing_symbol(&window).map_err(|_| Error::InvalidWindow { position: i, n })?;
        if !seen.insert(window.clone()) {
            return Err(Error::RepeatedWindow { position: i });
        }
        window.push(missing);
        out.push(Permutation(window));
    }
    Ok(out)
}
