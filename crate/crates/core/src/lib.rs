//! An explicit universal cycle for the (n-1)-permutations of an n-set.
//!
//! The cycle is described by a binary string `S_n`: reading bit 0 as the
//! rotation `σ_n = (1 2 … n)` and bit 1 as `σ_{n-1}`, and applying the
//! rotations in order starting from `n n-1 … 1`, visits every permutation of
//! `[n]` exactly once and returns to the start. Recording the first symbol of
//! each visited permutation gives a circular string of length `n!` in which
//! every (n-1)-permutation of `[n]` appears exactly once as a window.
//!
//! * [`seqcore`] produces `S_n` and the change-position sequence `R_n`, by
//!   direct recursion, by multi-radix counting and by a loopless state machine.
//! * [`permstream`] turns rotation bits into permutations and cycle symbols.
//! * [`rankstat`] ranks and unranks permutations in cycle order and counts
//!   rotation usage.
//! * [`graphoracle`] builds the Cayley graph and its coset contraction at small
//!   `n` and checks the cycle's properties by brute force.
//!
//! ```
//! use ucycle::permstream::ucycle_stream;
//! use ucycle::rankstat::rank;
//! use ucycle::seqcore::loopless_stream;
//!
//! let cycle: Vec<u8> = ucycle_stream(3, loopless_stream(3)?)?.collect();
//! assert_eq!(cycle, [3, 2, 1, 3, 1, 2]);
//! assert_eq!(rank(&"2431".parse()?).to_string(), "11");
//! # Ok::<(), ucycle::Error>(())
//! ```

pub mod error;
pub mod graphoracle;
pub mod permstream;
pub mod rankstat;
pub mod seqcore;

pub use error::{Error, Result};
pub use permstream::{CircularWindow, Permutation, UniversalCycleString};
pub use seqcore::{BitSequence, Limits, Method, PositionSequence, RotationBit};

/// Largest order accepted by the streaming generators: `20!` still fits the
/// 64-bit emitted-symbol counter, `21!` does not.
pub const MAX_STREAM_ORDER: usize = 20;

/// `n!` as a `usize`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<usize> {
    (2..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

pub(crate) fn check_min_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OrderTooSmall { n, min });
    }
    Ok(())
}

pub(crate) fn check_stream_order(n: usize) -> Result<()> {
    check_min_order(n, 2)?;
    if n > MAX_STREAM_ORDER {
        return Err(Error::ResourceGuard {
            n,
            limit: MAX_STREAM_ORDER,
            guard: "stream counter width",
        });
    }
    Ok(())
}
