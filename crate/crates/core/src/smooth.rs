//! Enumeration and structure of s-integers.
//!
//! The s-integers are the positive integers whose prime factors all lie in a
//! [`PrimeBasis`]. For the 2-integer basis {2, 3} the sequence starts
//! 1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 32, ...
//!
//! This module enumerates them in order, tests membership by trial division,
//! approximates their counting function, and measures the gaps between
//! consecutive members.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::basis::PrimeBasis;
use crate::error::{Error, Result};
use crate::num_util::{ln_biguint, ratio_f64};

/// Cap on how many values [`enumerate_smooth`] will materialize.
const MAX_ENUMERATED: usize = 20_000_000;

/// Cap on search nodes for [`nearest_smooth_below`].
const MAX_SEARCH_NODES: u64 = 20_000_000;

/// Exponent map of a fully factored smooth number: prime -> exponent.
///
/// The factorization of 1 is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Factorization(BTreeMap<u64, u32>);

impl Factorization {
    pub(crate) fn from_map(map: BTreeMap<u64, u32>) -> Self {
        debug_assert!(map.values().all(|&e| e > 0));
        Self(map)
    }

    /// Multiply the factorization back out.
    pub fn product(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (&p, &e) in &self.0 {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }

    /// Largest prime appearing, or `None` for the factorization of 1.
    pub fn max_prime(&self) -> Option<u64> {
        self.0.keys().next_back().copied()
    }

    /// Exponent of `p` (zero when `p` does not appear).
    pub fn exponent(&self, p: u64) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.0.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

/// Full factorization of `n` over the basis, or `None` if `n` has a prime
/// factor outside it.
///
/// `is_smooth(1, _)` is `Some` of the empty factorization: 1 is smooth for
/// every basis. `n = 0` is rejected.
pub fn is_smooth(n: &BigUint, basis: &PrimeBasis) -> Result<Option<Factorization>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("smoothness is defined for n >= 1".into()));
    }
    let mut rest = n.clone();
    let mut map = BTreeMap::new();
    for &p in basis.primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            map.insert(p, e);
        }
    }
    Ok(if rest.is_one() { Some(Factorization::from_map(map)) } else { None })
}

/// Divide every basis prime out of `n`. Returns 1 exactly when `n` is smooth.
pub(crate) fn reduce_by_basis_u64(mut n: u64, primes: &[u64]) -> u64 {
    for &p in primes {
        if n == 1 {
            break;
        }
        while n % p == 0 {
            n /= p;
        }
    }
    n
}

pub(crate) fn is_smooth_u64(n: u64, primes: &[u64]) -> bool {
    n >= 1 && reduce_by_basis_u64(n, primes) == 1
}

/// Ordered stream of smooth numbers `<= limit`, smallest first.
///
/// Merged-streams generation: the heap holds `(value, i)` pairs and a popped
/// value only spawns children `value * p_j` with `j >= i`, so every smooth
/// number is produced exactly once, in increasing order, without trial
/// factoring anything.
pub(crate) struct SmoothIter<'a> {
    primes: &'a [u64],
    limit: BigUint,
    heap: BinaryHeap<Reverse<(BigUint, usize)>>,
}

impl<'a> SmoothIter<'a> {
    pub(crate) fn new(limit: &BigUint, basis: &'a PrimeBasis) -> Self {
        let mut heap = BinaryHeap::new();
        if !limit.is_zero() {
            heap.push(Reverse((BigUint::one(), 0)));
        }
        Self { primes: basis.primes(), limit: limit.clone(), heap }
    }
}

impl Iterator for SmoothIter<'_> {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let Reverse((value, first)) = self.heap.pop()?;
        for (i, &p) in self.primes.iter().enumerate().skip(first) {
            let child = &value * p;
            if child <= self.limit {
                self.heap.push(Reverse((child, i)));
            }
        }
        Some(value)
    }
}

/// Every smooth number `<= limit` in increasing order (starting at 1).
pub fn enumerate_smooth(limit: &BigUint, basis: &PrimeBasis) -> Result<Vec<BigUint>> {
    let mut out = Vec::new();
    for x in SmoothIter::new(limit, basis) {
        if out.len() >= MAX_ENUMERATED {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_ENUMERATED} smooth numbers under the limit"
            )));
        }
        out.push(x);
    }
    Ok(out)
}

/// Exact count of smooth numbers `<= limit`, without materializing them.
pub fn count_smooth(limit: &BigUint, basis: &PrimeBasis) -> Result<u64> {
    let mut count = 0u64;
    for _ in SmoothIter::new(limit, basis) {
        count += 1;
        if count > MAX_ENUMERATED as u64 {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_ENUMERATED} smooth numbers under the limit"
            )));
        }
    }
    Ok(count)
}

/// Smooth-counting approximation `ln^s(x) / (s! * prod_i ln p_i)`.
///
/// Asymptotically the count of s-integers up to `x` is a degree-s polynomial
/// in `ln x` with this leading term; it undershoots slightly at desk scales.
/// Requires `x >= 2`.
pub fn approx_count(x: &BigUint, basis: &PrimeBasis) -> Result<f64> {
    if *x < BigUint::from(2u8) {
        return Err(Error::InvalidArgument("approximation needs x >= 2".into()));
    }
    let s = basis.len() as f64;
    let loglog = ln_biguint(x).ln();
    let mut log_den = 0.0;
    for i in 1..=basis.len() {
        log_den += (i as f64).ln();
    }
    for &p in basis.primes() {
        log_den += (p as f64).ln().ln();
    }
    Ok((s * loglog - log_den).exp())
}

/// One adjacent pair in the ordered smooth sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRecord {
    pub lower: BigUint,
    pub upper: BigUint,
    pub gap: BigUint,
    /// `gap / upper`; tends to zero as the sequence grows.
    pub relative_gap: f64,
}

/// Gap records for all consecutive smooth pairs up to `limit`.
pub fn gap_stats(limit: &BigUint, basis: &PrimeBasis) -> Result<Vec<GapRecord>> {
    let mut records = Vec::new();
    let mut prev: Option<BigUint> = None;
    let mut count = 0usize;
    for x in SmoothIter::new(limit, basis) {
        count += 1;
        if count > MAX_ENUMERATED {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_ENUMERATED} smooth numbers under the limit"
            )));
        }
        if let Some(lower) = prev.take() {
            let gap = &x - &lower;
            let relative_gap = ratio_f64(&gap, &x);
            records.push(GapRecord { lower, upper: x.clone(), gap, relative_gap });
        }
        prev = Some(x);
    }
    Ok(records)
}

/// Largest smooth number `<= n` (there always is one, since 1 is smooth).
///
/// Searches exponent tuples of the odd basis primes depth-first and closes
/// each tuple with the best power of 2, so nothing near the answer is missed
/// and no smooth list has to be materialized.
pub fn nearest_smooth_below(n: &BigUint, basis: &PrimeBasis) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("no smooth number below 1".into()));
    }
    if basis.len() > 128 {
        return Err(Error::ResourceLimit(
            "nearest-below search supports at most 128 basis primes".into(),
        ));
    }
    debug_assert_eq!(basis.primes()[0], 2);
    let mut best = BigUint::one();
    let mut nodes = 0u64;
    descend(basis.primes(), basis.len() - 1, BigUint::one(), n, &mut best, &mut nodes)?;
    Ok(best)
}

/// Depth-first walk used by [`nearest_smooth_below`]; `idx` counts down to the
/// prime 2, which is applied in one shot via a shift.
fn descend(
    primes: &[u64],
    idx: usize,
    cur: BigUint,
    n: &BigUint,
    best: &mut BigUint,
    nodes: &mut u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > MAX_SEARCH_NODES {
        return Err(Error::ResourceLimit(
            "nearest-below search exceeded its node budget".into(),
        ));
    }
    if idx == 0 {
        let headroom = (n / &cur).bits() - 1;
        let candidate = cur << headroom;
        debug_assert!(candidate <= *n);
        if candidate > *best {
            *best = candidate;
        }
        return Ok(*best == *n);
    }
    let p = primes[idx];
    let mut x = cur;
    loop {
        if descend(primes, idx - 1, x.clone(), n, best, nodes)? {
            return Ok(true);
        }
        x *= p;
        if x > *n {
            return Ok(false);
        }
    }
}
