//! Position of a permutation in the cycle order, and rotation counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::permstream::Permutation;
use crate::{check_min_order, Error, Result};

/// Index `r` with `Π(m)_r = p`, where `m = p.len()`.
///
/// Splitting `p = α m β` around its largest symbol:
/// `rank = 0` if `α = β = ε`, `m·rank(β)` if `α = ε`, and otherwise
/// `m - |α| + m·rank(σ(β) α)` with `σ(β)` the right rotation of `β`.
pub fn rank(p: &Permutation) -> BigUint {
    let mut seq = p.symbols().to_vec();
    // Horner form: rank = d_m + m·(d_{m-1} + (m-1)·(…)), evaluated innermost first.
    let mut digits = Vec::with_capacity(seq.len());
    while seq.len() > 1 {
        let m = seq.len();
        let k = seq.iter().position(|&s| s as usize == m).expect("valid permutation");
        let (alpha, rest) = seq.split_at(k);
        let beta = &rest[1..];
        let digit = if alpha.is_empty() { 0 } else { m - alpha.len() };
        let mut next = Vec::with_capacity(m - 1);
        if alpha.is_empty() {
            next.extend_from_slice(beta);
        } else {
            if let Some((&last, init)) = beta.split_last() {
                next.push(last);
                next.extend_from_slice(init);
            }
            next.extend_from_slice(alpha);
        }
        digits.push((m, digit));
        seq = next;
    }
    digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &(m, digit)| acc * m + digit)
}

/// Ranks an arbitrary symbol sequence, rejecting anything that is not a
/// permutation of `1..=len`.
pub fn rank_symbols(symbols: &[u8]) -> Result<BigUint> {
    Ok(rank(&Permutation::new(symbols.to_vec())?))
}

/// The position-indexed form: with `n` at position `k` of `a_1 … a_n`,
/// `rank = n·rank(a_2 … a_n)` when `k = 1`, otherwise
/// `n - k + 1 + n·rank(a_n a_{k+1} … a_{n-1} a_1 … a_{k-1})`.
pub fn rank_by_position(p: &Permutation) -> BigUint {
    fn go(a: &[u8]) -> BigUint {
        let n = a.len();
        if n <= 1 {
            return BigUint::zero();
        }
        // k is 1-based.
        let k = a.iter().position(|&s| s as usize == n).unwrap() + 1;
        if k == 1 {
            return go(&a[1..]) * n;
        }
        let mut next = Vec::with_capacity(n - 1);
        if k < n {
            next.push(a[n - 1]);
            next.extend_from_slice(&a[k..n - 1]);
        }
        next.extend_from_slice(&a[..k - 1]);
        go(&next) * n + (n - k + 1)
    }
    go(p.symbols())
}

/// `Π(n)_r`.
pub fn unrank(n: usize, r: &BigUint) -> Result<Permutation> {
    check_min_order(n, 1)?;
    if n > u8::MAX as usize {
        return Err(Error::ResourceGuard {
            n,
            limit: u8::MAX as usize,
            guard: "symbol width",
        });
    }
    if *r >= factorial_big(n) {
        return Err(Error::RankOutOfRange {
            n,
            rank: r.to_string(),
        });
    }
    // Peel off the block offsets i = r mod m from the outermost level inward.
    let mut offsets = Vec::with_capacity(n);
    let mut rest = r.clone();
    for m in (2..=n).rev() {
        let i = (&rest % m).to_usize().expect("remainder below m");
        rest /= m;
        offsets.push((m, i));
    }
    let mut p: Vec<u8> = vec![1];
    for &(m, i) in offsets.iter().rev() {
        let b = p;
        let top = m as u8;
        p = Vec::with_capacity(m);
        match i {
            0 => {
                p.push(top);
                p.extend_from_slice(&b);
            }
            1 => {
                p.extend_from_slice(&b);
                p.push(top);
            }
            _ => {
                // b_i … b_{m-1} m b_2 … b_{i-1} b_1 (1-based b)
                p.extend_from_slice(&b[i - 1..]);
                p.push(top);
                p.extend_from_slice(&b[1..i - 1]);
                p.push(b[0]);
            }
        }
    }
    Ok(Permutation::from_vec_unchecked(p))
}

pub fn factorial_big(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `f_n`, the number of `σ_n` steps (zero bits) in `S_n`:
/// `f_1 = 1`, `f_2 = 2`, `f_{m+1} = 3·m! - f_m`.
pub fn sigma_n_count(n: usize) -> Result<BigUint> {
    check_min_order(n, 1)?;
    if n == 1 {
        return Ok(BigUint::one());
    }
    let mut f = BigUint::from(2u32);
    let mut fact = BigUint::from(2u32);
    for m in 2..n {
        f = &fact * 3u32 - f;
        fact *= m + 1;
    }
    Ok(f)
}

/// The fewest `σ_n` steps any Hamilton cycle of `Ξ_n` can use: `2n(n-2)! - 2`.
pub fn min_sigma_edges(n: usize) -> Result<BigUint> {
    check_min_order(n, 3)?;
    Ok(factorial_big(n - 2) * (2 * n) - 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn table_ranks() {
        assert_eq!(rank(&perm("4321")), BigUint::from(0u32));
        assert_eq!(rank(&perm("2431")), BigUint::from(11u32));
        assert_eq!(rank(&perm("1432")), BigUint::from(23u32));
        assert_eq!(rank(&perm("1")), BigUint::from(0u32));
    }

    #[test]
    fn rank_rejects_non_permutations() {
        assert!(rank_symbols(&[1, 1]).is_err());
        assert!(rank_symbols(&[2, 3]).is_err());
        assert_eq!(rank_symbols(&[2, 1]).unwrap(), BigUint::zero());
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank(4, &BigUint::from(0u32)).unwrap(), perm("4321"));
        assert_eq!(unrank(4, &BigUint::from(11u32)).unwrap(), perm("2431"));
        assert_eq!(unrank(1, &BigUint::zero()).unwrap(), perm("1"));
        assert!(matches!(
            unrank(4, &BigUint::from(24u32)),
            Err(Error::RankOutOfRange { n: 4, .. })
        ));
        assert!(unrank(0, &BigUint::zero()).is_err());
    }

    #[test]
    fn f_values() {
        let expected = [1u64, 2, 4, 14, 58, 302, 1858, 13262, 107698, 980942];
        for (i, &f) in expected.iter().enumerate() {
            assert_eq!(sigma_n_count(i + 1).unwrap(), BigUint::from(f));
        }
        assert!(sigma_n_count(0).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(min_sigma_edges(3).unwrap(), BigUint::from(4u32));
        assert_eq!(min_sigma_edges(4).unwrap(), BigUint::from(14u32));
        assert_eq!(min_sigma_edges(5).unwrap(), BigUint::from(58u32));
        assert_eq!(min_sigma_edges(6).unwrap(), BigUint::from(286u32));
        assert!(min_sigma_edges(2).is_err());
    }

    #[test]
    fn large_round_trip() {
        let n = 30;
        let r = factorial_big(n) - 12345u32;
        let p = unrank(n, &r).unwrap();
        assert_eq!(rank(&p), r);
        assert_eq!(rank_by_position(&p), r);
    }
}
