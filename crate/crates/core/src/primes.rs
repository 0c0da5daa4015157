//! Prime generation and the alternating ("second neighbour") prime classes.
//!
//! Positions are described 1-based (the 1st prime is 2, the 2nd is 3, …) while
//! storage is an ordinary 0-based vector.

use std::ops::Deref;

use crate::{Error, Result};

/// Largest `n` accepted by [`first_n_primes`].
pub const MAX_PRIME_COUNT: usize = 1_000_000;

const SMALL_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

/// The first `n` primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrimeSequence(Vec<u64>);

impl PrimeSequence {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// Largest element, or `None` for the empty sequence.
    pub fn largest(&self) -> Option<u64> {
        self.0.last().copied()
    }

    /// Sum of reciprocals, smallest prime first.
    pub fn reciprocal_sum(&self) -> f64 {
        self.0.iter().map(|&p| 1.0 / p as f64).sum()
    }
}

impl Deref for PrimeSequence {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

/// The consecutive primes split by parity of their 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlternatingSplit {
    /// 1st, 3rd, 5th, … primes: 2, 5, 11, 17, …
    pub odd_indexed: PrimeSequence,
    /// 2nd, 4th, 6th, … primes: 3, 7, 13, 19, …
    pub even_indexed: PrimeSequence,
}

impl AlternatingSplit {
    /// Merges the two classes back into the consecutive sequence.
    pub fn interleave(&self) -> PrimeSequence {
        let mut out = Vec::with_capacity(self.odd_indexed.len() + self.even_indexed.len());
        let mut odd = self.odd_indexed.iter();
        let mut even = self.even_indexed.iter();
        loop {
            match (odd.next(), even.next()) {
                (None, None) => break,
                (a, b) => out.extend(a.into_iter().chain(b).copied()),
            }
        }
        PrimeSequence(out)
    }
}

/// Sieve of Eratosthenes: `mask[k]` is true iff `k` is prime, for `k ≤ limit`.
pub fn prime_mask(limit: usize) -> Vec<bool> {
    let mut mask = vec![true; limit + 1];
    mask[0] = false;
    if limit >= 1 {
        mask[1] = false;
    }
    let mut p = 2;
    while p * p <= limit {
        if mask[p] {
            for m in (p * p..=limit).step_by(p) {
                mask[m] = false;
            }
        }
        p += 1;
    }
    mask
}

/// Upper bound on the `n`-th prime: `n(ln n + ln ln n)` holds for `n ≥ 6`.
fn nth_prime_upper_bound(n: usize) -> usize {
    if n < 6 {
        return 11;
    }
    let nf = n as f64;
    (nf * (nf.ln() + nf.ln().ln())).ceil() as usize + 1
}

/// Returns the first `n` primes.
///
/// Fails with [`Error::PrimeCapExceeded`] when `n > MAX_PRIME_COUNT`.
pub fn first_n_primes(n: usize) -> Result<PrimeSequence> {
    if n > MAX_PRIME_COUNT {
        return Err(Error::PrimeCapExceeded { requested: n, cap: MAX_PRIME_COUNT });
    }
    if n <= SMALL_PRIMES.len() {
        return Ok(PrimeSequence(SMALL_PRIMES[..n].to_vec()));
    }
    let mask = prime_mask(nth_prime_upper_bound(n));
    let values: Vec<u64> = mask
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .take(n)
        .collect();
    debug_assert_eq!(values.len(), n);
    Ok(PrimeSequence(values))
}

/// Splits `primes` into the 1st/3rd/5th… and 2nd/4th/6th… elements.
pub fn split_alternating(primes: &PrimeSequence) -> AlternatingSplit {
    let odd = primes.iter().step_by(2).copied().collect();
    let even = primes.iter().skip(1).step_by(2).copied().collect();
    AlternatingSplit { odd_indexed: PrimeSequence(odd), even_indexed: PrimeSequence(even) }
}

/// Deterministic primality by trial division over 6k ± 1.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}
