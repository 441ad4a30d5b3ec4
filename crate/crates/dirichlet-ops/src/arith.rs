//! Integer arithmetic underneath the Bohr correspondence: prime factorization
//! of Dirichlet indices and enumeration of smooth indices.
//!
//! Every index n >= 1 factors as n = p_1^{a_1} ... p_k^{a_k} with strictly
//! increasing primes; the exponent vector is the multi-index of the monomial
//! the Bohr lift assigns to `n^{-s}`.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;

/// Prime factorization of a Dirichlet index.
///
/// Invariants: primes strictly increasing, exponents >= 1, and the product of
/// `p^a` recovers `index`. The empty list encodes `index == 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFactorization {
    pub index: u64,
    pub exponents: Vec<(u64, u32)>,
}

/// Factor a positive index by trial division.
///
/// Rejects 0; index 1 yields the empty factorization.
pub fn factorize(n: u64) -> Result<IndexFactorization> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut rest = n;
    let mut exponents = Vec::new();
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut a = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            exponents.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        exponents.push((rest, 1));
    }
    Ok(IndexFactorization { index: n, exponents })
}

/// Greatest prime divisor p+(n); by convention p+(1) = 1.
pub fn greatest_prime_factor(n: u64) -> Result<u64> {
    Ok(factorize(n)?.exponents.last().map_or(1, |&(p, _)| p))
}

/// First `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate: u64 = 2;
    while primes.len() < count {
        if primes.iter().all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += if candidate == 2 { 1 } else { 2 };
    }
    primes
}

/// Is every prime factor of `n` at most `prime_limit`?
pub fn is_smooth(n: u64, prime_limit: u64) -> Result<bool> {
    Ok(greatest_prime_factor(n)? <= prime_limit)
}

/// All p_l-smooth indices up to `cutoff`, in increasing order, where `p_l` is
/// the l-th prime. Generated recursively over the prime basis rather than by
/// filtering 1..=cutoff, so sparse smooth sets under large cutoffs stay cheap.
pub fn smooth_indices(l: usize, cutoff: u64) -> Vec<u64> {
    assert!(l >= 1, "need at least one prime");
    let primes = first_primes(l);
    let mut out = Vec::new();
    fn extend(primes: &[u64], from: usize, value: u64, cutoff: u64, out: &mut Vec<u64>) {
        out.push(value);
        for (i, &p) in primes.iter().enumerate().skip(from) {
            match value.checked_mul(p) {
                Some(next) if next <= cutoff => extend(primes, i, next, cutoff, out),
                _ => {}
            }
        }
    }
    extend(&primes, 0, 1, cutoff, &mut out);
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct LogEntry {
    log: f64,
    last: usize,
}

impl Eq for LogEntry {}

impl Ord for LogEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // reversed: BinaryHeap is a max-heap, we want smallest log first
        other
            .log
            .total_cmp(&self.log)
            .then_with(|| other.last.cmp(&self.last))
    }
}

impl PartialOrd for LogEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Streams the logarithms ln(n) of p_l-smooth indices in increasing order.
///
/// Works entirely in the log domain, so indices far beyond the u64 range are
/// reachable; partial reproducing kernels near the imaginary axis need sums
/// over smooth indices with thousands of digits.
pub struct SmoothLogStream {
    log_primes: Vec<f64>,
    heap: BinaryHeap<LogEntry>,
}

impl SmoothLogStream {
    pub fn new(l: usize) -> Self {
        assert!(l >= 1, "need at least one prime");
        let log_primes: Vec<f64> = first_primes(l).iter().map(|&p| (p as f64).ln()).collect();
        let mut heap = BinaryHeap::new();
        heap.push(LogEntry { log: 0.0, last: 0 });
        SmoothLogStream { log_primes, heap }
    }
}

impl Iterator for SmoothLogStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let entry = self.heap.pop()?;
        // extend only by primes with basis position >= last, so each exponent
        // vector is produced exactly once (via its sorted factor sequence)
        for (i, &lp) in self.log_primes.iter().enumerate().skip(entry.last) {
            self.heap.push(LogEntry {
                log: entry.log + lp,
                last: i,
            });
        }
        Some(entry.log)
    }
}
