//! The rotation-label string `S_n` and the change-position string `R_n`.
//!
//! Three generators produce `S_n`:
//!
//! * [`build_s_recursive`] materializes it from the defining recursion
//!   `S_2 = 00`, `S_{n+1} = 0 0 1^{n-2} x̄_1 · 0 0 1^{n-2} x̄_2 ⋯`. This is the
//!   reference every other generator is checked against.
//! * [`counting_stream`] counts in the mixed radix `2 × 3 × ⋯ × n` and derives
//!   each bit from the digit that changed (amortized constant time).
//! * [`loopless_stream`] walks the reflected mixed-radix Gray code with focus
//!   pointers, doing a bounded amount of work per bit.
//!
//! Both streaming generators emit `⟦ j odd ⊕ … ⟧`. The expression with
//! `j even` produces the complement of `S_n` (`110110` for `n = 3`).

use std::fmt;

use crate::{check_min_order, check_stream_order, factorial, Error, Result};

/// One symbol of `S_n`: `Zero` selects `σ_n`, `One` selects `σ_{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum RotationBit {
    Zero = 0,
    One = 1,
}

impl RotationBit {
    pub fn from_bool(one: bool) -> Self {
        if one {
            RotationBit::One
        } else {
            RotationBit::Zero
        }
    }

    pub fn from_u8(value: u8) -> Option<Self> {
        match value {
            0 => Some(RotationBit::Zero),
            1 => Some(RotationBit::One),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn flipped(self) -> Self {
        match self {
            RotationBit::Zero => RotationBit::One,
            RotationBit::One => RotationBit::Zero,
        }
    }

    /// Length of the rotation this bit selects in `Ξ_n`.
    pub fn rotation_len(self, n: usize) -> usize {
        bit_to_rotation(self, n)
    }
}

impl fmt::Display for RotationBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// `0 ↦ n`, `1 ↦ n - 1`.
pub fn bit_to_rotation(bit: RotationBit, n: usize) -> usize {
    match bit {
        RotationBit::Zero => n,
        RotationBit::One => n - 1,
    }
}

/// Which construction produces the bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Recursive,
    Counting,
    #[default]
    Loopless,
}

/// Guards for operations that materialize factorial-size data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_materialized_order: usize,
}

impl Limits {
    pub const DEFAULT_MAX_MATERIALIZED_ORDER: usize = 12;

    pub fn check_materialize(&self, n: usize) -> Result<()> {
        if n > self.max_materialized_order {
            return Err(Error::ResourceGuard {
                n,
                limit: self.max_materialized_order,
                guard: "materialization",
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_materialized_order: Self::DEFAULT_MAX_MATERIALIZED_ORDER,
        }
    }
}

/// A fully materialized `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    n: usize,
    bits: Vec<RotationBit>,
}

impl BitSequence {
    /// Wraps `bits` as a rotation sequence for order `n`; the length must be `n!`.
    pub fn new(n: usize, bits: Vec<RotationBit>) -> Result<Self> {
        check_min_order(n, 2)?;
        let expected = factorial(n).ok_or(Error::ResourceGuard {
            n,
            limit: crate::MAX_STREAM_ORDER,
            guard: "factorial width",
        })?;
        if bits.len() != expected {
            return Err(Error::CycleLength {
                len: bits.len(),
                expected,
            });
        }
        Ok(BitSequence { n, bits })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[RotationBit] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, RotationBit>> {
        self.bits.iter().copied()
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| b == RotationBit::Zero).count()
    }

    pub fn complement(&self) -> BitSequence {
        BitSequence {
            n: self.n,
            bits: self.bits.iter().map(|b| b.flipped()).collect(),
        }
    }

    pub fn into_bits(self) -> Vec<RotationBit> {
        self.bits
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// A fully materialized `R_n`: entries in `1..=n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionSequence {
    n: usize,
    positions: Vec<usize>,
}

impl PositionSequence {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// `S_n` from the defining recursion, with the default [`Limits`].
pub fn build_s_recursive(n: usize) -> Result<BitSequence> {
    build_s_recursive_with(n, &Limits::default())
}

pub fn build_s_recursive_with(n: usize, limits: &Limits) -> Result<BitSequence> {
    check_min_order(n, 2)?;
    limits.check_materialize(n)?;

    let mut bits = vec![RotationBit::Zero, RotationBit::Zero];
    for m in 2..n {
        // S_{m+1} from S_m: each old bit x becomes 0 0 1^{m-2} x̄.
        let mut next = Vec::with_capacity(bits.len() * (m + 1));
        for &x in &bits {
            next.push(RotationBit::Zero);
            next.push(RotationBit::Zero);
            next.extend(std::iter::repeat_n(RotationBit::One, m - 2));
            next.push(x.flipped());
        }
        bits = next;
    }
    Ok(BitSequence { n, bits })
}

/// `R_n` from its recursion, with the default [`Limits`].
pub fn build_r_recursive(n: usize) -> Result<PositionSequence> {
    build_r_recursive_with(n, &Limits::default())
}

pub fn build_r_recursive_with(n: usize, limits: &Limits) -> Result<PositionSequence> {
    check_min_order(n, 2)?;
    limits.check_materialize(n)?;

    let mut positions = vec![1, 1];
    for m in 2..n {
        // R_{m+1} = m^m y_1 m^m y_2 ⋯
        let mut next = Vec::with_capacity(positions.len() * (m + 1));
        for &y in &positions {
            next.extend(std::iter::repeat_n(m, m));
            next.push(y);
        }
        positions = next;
    }
    Ok(PositionSequence { n, positions })
}

/// Counts primitive operations in the instrumented generators.
pub(crate) trait Tally {
    fn tick(&mut self, ops: u32);
}

impl Tally for () {
    #[inline(always)]
    fn tick(&mut self, _ops: u32) {}
}

impl Tally for u32 {
    #[inline(always)]
    fn tick(&mut self, ops: u32) {
        *self += ops;
    }
}

/// One step of a streaming generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub bit: RotationBit,
    /// Index `j` of the digit incremented in this step (1 is least significant).
    /// The final step, where every digit wraps, reports `j ≥ n`.
    pub change_index: usize,
}

impl Step {
    /// The matching entry of `R_n`: the most significant changed position
    /// when digits are numbered `1..n-1` from the left.
    pub fn position(&self, n: usize) -> usize {
        n - self.change_index.min(n - 1)
    }
}

/// State of the mixed-radix counter `a_{n+1} ⋯ a_1`, where `a_j` ranges over
/// `0..=n-j`. Entries `a_n` and `a_{n+1}` are sentinels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterState {
    n: usize,
    digits: Vec<i64>,
    done: bool,
}

impl CounterState {
    pub fn new(n: usize) -> Result<Self> {
        check_stream_order(n)?;
        Ok(CounterState {
            n,
            digits: vec![0; n + 2],
            done: false,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Digit `a_j` for `j` in `1..=n+1`.
    pub fn digit(&self, j: usize) -> i64 {
        self.digits[j]
    }

    fn step_with<T: Tally>(&mut self, tally: &mut T) -> Option<Step> {
        if self.done {
            return None;
        }
        let n = self.n as i64;
        let a = &mut self.digits;
        let mut j = 1usize;
        tally.tick(1);
        loop {
            tally.tick(2);
            if a[j] != n - j as i64 {
                break;
            }
            a[j] = 0;
            j += 1;
            tally.tick(2);
        }
        let bit = RotationBit::from_bool((j % 2 == 1) ^ (a[j] <= 1));
        tally.tick(4);
        a[j] += 1;
        tally.tick(1);
        if j >= self.n {
            self.done = true;
        }
        tally.tick(1);
        Some(Step {
            bit,
            change_index: j,
        })
    }

    pub fn step(&mut self) -> Option<Step> {
        self.step_with(&mut ())
    }
}

/// Streams `S_n` by mixed-radix counting.
#[derive(Debug, Clone)]
pub struct CountingStream {
    state: CounterState,
}

pub fn counting_stream(n: usize) -> Result<CountingStream> {
    Ok(CountingStream {
        state: CounterState::new(n)?,
    })
}

impl CountingStream {
    /// The same walk, yielding the full step (bit and change index).
    pub fn steps(self) -> CountingSteps {
        CountingSteps { state: self.state }
    }

    pub fn state(&self) -> &CounterState {
        &self.state
    }
}

impl Iterator for CountingStream {
    type Item = RotationBit;

    fn next(&mut self) -> Option<RotationBit> {
        self.state.step().map(|s| s.bit)
    }
}

#[derive(Debug, Clone)]
pub struct CountingSteps {
    state: CounterState,
}

impl Iterator for CountingSteps {
    type Item = Step;

    fn next(&mut self) -> Option<Step> {
        self.state.step()
    }
}

/// Streams `R_n` by counting, without materializing it.
pub fn position_stream(n: usize) -> Result<impl Iterator<Item = usize>> {
    Ok(counting_stream(n)?.steps().map(move |s| s.position(n)))
}

/// Streams `R_n` from the loopless generator's change indices.
pub fn loopless_position_stream(n: usize) -> Result<impl Iterator<Item = usize>> {
    Ok(loopless_stream(n)?.steps().map(move |s| s.position(n)))
}

/// Counting generator that also reports the primitive operations spent on
/// each bit. The count grows with the carry chain, so its maximum is `Θ(n)`.
#[derive(Debug, Clone)]
pub struct InstrumentedCountingStream {
    state: CounterState,
}

pub fn instrumented_counting_stream(n: usize) -> Result<InstrumentedCountingStream> {
    Ok(InstrumentedCountingStream {
        state: CounterState::new(n)?,
    })
}

impl Iterator for InstrumentedCountingStream {
    type Item = (RotationBit, u32);

    fn next(&mut self) -> Option<(RotationBit, u32)> {
        let mut ops = 0u32;
        self.state.step_with(&mut ops).map(|s| (s.bit, ops))
    }
}

/// State of the loopless generator: digits `a`, directions `d` and focus
/// pointers `f`, all indexed from 1.
///
/// `a` and `d` carry sentinels at `n` and `n + 1`, and `f_n` starts at `n + 1`,
/// so the final step reads defined cells whether it lands on `j = n` or
/// `j = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooplessState {
    n: usize,
    a: Vec<i64>,
    d: Vec<i64>,
    f: Vec<usize>,
    emitted: u64,
    done: bool,
}

impl LooplessState {
    pub fn new(n: usize) -> Result<Self> {
        check_stream_order(n)?;
        let mut f: Vec<usize> = (0..n + 2).collect();
        f[n] = n + 1;
        Ok(LooplessState {
            n,
            a: vec![0; n + 2],
            d: vec![1; n + 2],
            f,
            emitted: 0,
            done: false,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn digit(&self, j: usize) -> i64 {
        self.a[j]
    }

    pub fn direction(&self, j: usize) -> i64 {
        self.d[j]
    }

    pub fn focus(&self, j: usize) -> usize {
        self.f[j]
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    #[inline(always)]
    fn step_with<T: Tally>(&mut self, tally: &mut T) -> Option<Step> {
        if self.done {
            return None;
        }
        let n = self.n as i64;
        let (a, d, f) = (&mut self.a, &mut self.d, &mut self.f);

        let j = f[1];
        f[1] = 1;
        tally.tick(2);

        let jj = j as i64;
        let lookahead = a[j] - d[j];
        tally.tick(3);
        let at_end = if lookahead <= 0 {
            tally.tick(1);
            true
        } else {
            tally.tick(3);
            lookahead >= n - jj
        };
        let bit = RotationBit::from_bool((j % 2 == 1) ^ at_end);
        tally.tick(2);

        a[j] += d[j];
        tally.tick(3);

        tally.tick(1);
        let turn = if a[j] == 0 {
            true
        } else {
            tally.tick(2);
            a[j] == n - jj
        };
        if turn {
            d[j] = -d[j];
            f[j] = f[j + 1];
            f[j + 1] = j + 1;
            tally.tick(7);
        }

        self.emitted += 1;
        tally.tick(1);
        if j >= self.n {
            self.done = true;
        }
        tally.tick(1);
        Some(Step {
            bit,
            change_index: j,
        })
    }

    pub fn step(&mut self) -> Option<Step> {
        self.step_with(&mut ())
    }
}

/// Streams `S_n` with the loopless focus-pointer algorithm.
#[derive(Debug, Clone)]
pub struct LooplessStream {
    state: LooplessState,
}

pub fn loopless_stream(n: usize) -> Result<LooplessStream> {
    Ok(LooplessStream {
        state: LooplessState::new(n)?,
    })
}

impl LooplessStream {
    pub fn state(&self) -> &LooplessState {
        &self.state
    }

    /// The same walk, yielding the full step. The change indices agree with
    /// the counting generator's.
    pub fn steps(self) -> LooplessSteps {
        LooplessSteps { state: self.state }
    }
}

impl Iterator for LooplessStream {
    type Item = RotationBit;

    #[inline]
    fn next(&mut self) -> Option<RotationBit> {
        self.state.step().map(|s| s.bit)
    }
}

#[derive(Debug, Clone)]
pub struct LooplessSteps {
    state: LooplessState,
}

impl Iterator for LooplessSteps {
    type Item = Step;

    fn next(&mut self) -> Option<Step> {
        self.state.step()
    }
}

/// Loopless generator that also reports the primitive operations (reads,
/// writes, comparisons, arithmetic, parity tests) spent on each bit.
#[derive(Debug, Clone)]
pub struct InstrumentedLooplessStream {
    state: LooplessState,
}

pub fn instrumented_loopless_stream(n: usize) -> Result<InstrumentedLooplessStream> {
    Ok(InstrumentedLooplessStream {
        state: LooplessState::new(n)?,
    })
}

impl Iterator for InstrumentedLooplessStream {
    type Item = (RotationBit, u32);

    fn next(&mut self) -> Option<(RotationBit, u32)> {
        let mut ops = 0u32;
        self.state.step_with(&mut ops).map(|s| (s.bit, ops))
    }
}

/// `S_n` from any of the three constructions.
#[derive(Debug, Clone)]
pub enum BitStream {
    Recursive(std::vec::IntoIter<RotationBit>),
    Counting(CountingStream),
    Loopless(LooplessStream),
}

impl BitStream {
    pub fn new(n: usize, method: Method) -> Result<Self> {
        Self::with_limits(n, method, &Limits::default())
    }

    pub fn with_limits(n: usize, method: Method, limits: &Limits) -> Result<Self> {
        Ok(match method {
            Method::Recursive => {
                BitStream::Recursive(build_s_recursive_with(n, limits)?.into_bits().into_iter())
            }
            Method::Counting => BitStream::Counting(counting_stream(n)?),
            Method::Loopless => BitStream::Loopless(loopless_stream(n)?),
        })
    }
}

impl Iterator for BitStream {
    type Item = RotationBit;

    #[inline]
    fn next(&mut self) -> Option<RotationBit> {
        match self {
            BitStream::Recursive(it) => it.next(),
            BitStream::Counting(it) => it.next(),
            BitStream::Loopless(it) => it.next(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(s: &str) -> Vec<RotationBit> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| RotationBit::from_u8(c.to_digit(2).unwrap() as u8).unwrap())
            .collect()
    }

    #[test]
    fn small_s_values() {
        assert_eq!(build_s_recursive(2).unwrap().bits(), bits_of("00"));
        assert_eq!(build_s_recursive(3).unwrap().bits(), bits_of("001001"));
        assert_eq!(
            build_s_recursive(4).unwrap().bits(),
            bits_of("001100110010 001100110010")
        );
    }

    #[test]
    fn s5_matches_listing() {
        let half = "0011 1 0011 1 0011 0 0011 0 0011 1 0011 1 \
                    0011 0 0011 0 0011 1 0011 1 0011 0 0011 1";
        let mut expected = bits_of(half);
        expected.extend(bits_of(half));
        assert_eq!(build_s_recursive(5).unwrap().bits(), expected);
    }

    #[test]
    fn small_r_values() {
        assert_eq!(build_r_recursive(2).unwrap().positions(), [1, 1]);
        assert_eq!(build_r_recursive(3).unwrap().positions(), [2, 2, 1, 2, 2, 1]);
    }

    #[test]
    fn streams_at_small_orders() {
        let n2: Vec<_> = loopless_stream(2).unwrap().collect();
        assert_eq!(n2, bits_of("00"));
        let n3: Vec<_> = counting_stream(3).unwrap().collect();
        assert_eq!(n3, bits_of("001001"));
        let n3: Vec<_> = loopless_stream(3).unwrap().collect();
        assert_eq!(n3, bits_of("001001"));
        let n4: Vec<_> = counting_stream(4).unwrap().take(12).collect();
        assert_eq!(n4, bits_of("001100110010"));
    }

    #[test]
    fn rotation_map() {
        assert_eq!(bit_to_rotation(RotationBit::Zero, 5), 5);
        assert_eq!(bit_to_rotation(RotationBit::One, 5), 4);
        assert_eq!(bit_to_rotation(RotationBit::One, 3), 2);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(
            build_s_recursive(1),
            Err(Error::OrderTooSmall { n: 1, min: 2 })
        );
        assert!(matches!(
            build_s_recursive(13),
            Err(Error::ResourceGuard { guard: "materialization", .. })
        ));
        assert!(build_r_recursive(0).is_err());
        assert!(counting_stream(1).is_err());
        assert!(loopless_stream(21).is_err());
        assert!(loopless_stream(20).is_ok());
        let tight = Limits {
            max_materialized_order: 5,
        };
        assert!(build_s_recursive_with(6, &tight).is_err());
        assert!(BitStream::with_limits(6, Method::Loopless, &tight).is_ok());
    }

    #[test]
    fn loopless_initial_state() {
        let st = LooplessState::new(5).unwrap();
        for j in 1..=6 {
            assert_eq!(st.digit(j), 0);
            assert_eq!(st.direction(j), 1);
        }
        for j in 1..5 {
            assert_eq!(st.focus(j), j);
        }
        assert_eq!(st.focus(5), 6);
    }

    #[test]
    fn loopless_digits_stay_in_range() {
        for n in 2..=7 {
            let mut st = LooplessState::new(n).unwrap();
            while st.step().is_some() {
                for j in 1..n {
                    let a = st.digit(j);
                    assert!((0..=(n - j) as i64).contains(&a), "n={n} j={j} a={a}");
                }
            }
            assert_eq!(st.emitted(), factorial(n).unwrap() as u64);
        }
    }

    #[test]
    fn counter_digits_stay_in_range() {
        let n = 6;
        let mut st = CounterState::new(n).unwrap();
        let mut count = 0;
        while st.step().is_some() {
            count += 1;
            for j in 1..n {
                assert!((0..=(n - j) as i64).contains(&st.digit(j)));
            }
        }
        assert_eq!(count, 720);
    }

    #[test]
    fn change_indices_agree() {
        for n in 2..=7 {
            let counting: Vec<usize> = position_stream(n).unwrap().collect();
            let loopless: Vec<usize> = loopless_position_stream(n).unwrap().collect();
            assert_eq!(counting, loopless, "n={n}");
            assert_eq!(counting, build_r_recursive(n).unwrap().positions());
        }
    }

    #[test]
    fn r_entry_counts() {
        // At n = 2 the wrap step also lands on position n - 1 (R_2 = 11).
        assert_eq!(build_r_recursive(2).unwrap().positions(), [1, 1]);
        for n in 3..=7 {
            let r = build_r_recursive(n).unwrap();
            let top = r.positions().iter().filter(|&&p| p == n - 1).count();
            assert_eq!(top, (n - 1) * factorial(n - 1).unwrap());
            assert!(r.positions().iter().all(|&p| (1..n).contains(&p)));
        }
    }

    #[test]
    fn exhausted_streams_stay_exhausted() {
        let mut s = loopless_stream(3).unwrap();
        assert_eq!(s.by_ref().count(), 6);
        assert_eq!(s.next(), None);
        let mut c = counting_stream(3).unwrap();
        assert_eq!(c.by_ref().count(), 6);
        assert_eq!(c.next(), None);
    }

    #[test]
    fn bit_sequence_length_checked() {
        assert!(BitSequence::new(3, bits_of("00100")).is_err());
        assert!(BitSequence::new(3, bits_of("001001")).is_ok());
    }
}
