//! Sums of few smooth numbers: greedy decomposition, exact minimal-term
//! search, smallest-unrepresentable scans, and splitting n into two smooth
//! halves.
//!
//! Smooth numbers are log-dense, so a handful of them usually suffices to
//! hit any target exactly. The greedy decomposition peels off the nearest
//! smooth number below the remainder; the exact search answers how few
//! terms are truly needed; the bitset scan finds where a given term budget
//! first fails; the splitter asks the same question with exactly two parts
//! and a moving smoothness bound.

use std::collections::HashSet;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::basis::PrimeBasis;
use crate::error::{Error, Result};
use crate::num_util::ln_biguint;
use crate::rng::derive_stream;
use crate::smooth::{is_smooth, is_smooth_u64, nearest_smooth_below, SmoothIter};

/// Exact-search budget: [`min_terms`] proves minimality only up to this many
/// terms. [`representable_within`] answers presence-only queries further out.
const MAX_EXACT_TERMS: usize = 4;
const MAX_PRESENCE_TERMS: usize = 8;

/// Cap on materialized smooth tables (entries).
const MAX_TABLE: usize = 2_000_000;

/// Cap on nodes visited by the exact-search recursion.
const MAX_SEARCH_NODES: u64 = 20_000_000;

/// Cap on the bitset scan range (bits).
const MAX_BITSET_LIMIT: u64 = 1 << 31;

/// Cap on schedule entries and profile sizes.
const MAX_SCHEDULE_BOUND: u64 = 1_000_000_000;
const MAX_PROFILE_BITS: u32 = 16_384;

/// A target written as a sum of smooth numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub target: BigUint,
    /// Non-increasing; every term is smooth under `basis`.
    pub terms: Vec<BigUint>,
    pub basis: PrimeBasis,
}

impl Decomposition {
    /// Re-check the stated invariants from scratch: the terms sum to the
    /// target, are non-increasing, and every one factors over the basis.
    pub fn verify(&self) -> Result<bool> {
        let mut sum = BigUint::zero();
        for t in &self.terms {
            sum += t;
        }
        if sum != self.target {
            return Ok(false);
        }
        for w in self.terms.windows(2) {
            if w[0] < w[1] {
                return Ok(false);
            }
        }
        for t in &self.terms {
            if is_smooth(t, &self.basis)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Decompose `n` by repeatedly subtracting the largest smooth number that
/// still fits.
///
/// Each remainder is less than half the previous one (the power of 2 below
/// it always fits), so the terms are strictly decreasing and there are at
/// most `log2(n) + 1` of them.
pub fn greedy_decompose(n: &BigUint, basis: &PrimeBasis) -> Result<Decomposition> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("greedy decomposition needs n >= 1".into()));
    }
    let mut remaining = n.clone();
    let mut terms = Vec::new();
    while !remaining.is_zero() {
        let term = nearest_smooth_below(&remaining, basis)?;
        remaining -= &term;
        terms.push(term);
    }
    Ok(Decomposition { target: n.clone(), terms, basis: basis.clone() })
}

/// All smooth numbers `<= limit` as a sorted `u64` list.
fn smooth_list_u64(limit: u64, basis: &PrimeBasis) -> Result<Vec<u64>> {
    let mut list = Vec::new();
    for x in SmoothIter::new(&BigUint::from(limit), basis) {
        if list.len() >= MAX_TABLE {
            return Err(Error::ResourceLimit(format!(
                "smooth table would exceed {MAX_TABLE} entries"
            )));
        }
        list.push(x.to_u64().expect("bounded by a u64 limit"));
    }
    Ok(list)
}

/// Largest-part-first search for `m` as a sum of exactly `k` smooth parts,
/// each at most `cap`. Parts come back non-increasing.
///
/// The window for the leading part is `[ceil(m/k), min(cap, m-k+1)]` (the
/// largest of k positive parts is at least their average), which keeps the
/// branching factor small on log-dense smooth lists; the one-part base case
/// is a hash probe, so the two-part case is a meet-in-the-middle pass.
fn search_exact(
    m: u64,
    k: usize,
    cap: u64,
    list: &[u64],
    set: &HashSet<u64>,
    nodes: &mut u64,
) -> Result<Option<Vec<u64>>> {
    *nodes += 1;
    if *nodes > MAX_SEARCH_NODES {
        return Err(Error::ResourceLimit(format!(
            "exact term search exceeded {MAX_SEARCH_NODES} nodes"
        )));
    }
    if k == 1 {
        return Ok((m <= cap && set.contains(&m)).then(|| vec![m]));
    }
    if m < k as u64 {
        return Ok(None);
    }
    let hi = cap.min(m - (k as u64 - 1));
    let lo = m.div_ceil(k as u64);
    let end = list.partition_point(|&v| v <= hi);
    for &s in list[..end].iter().rev() {
        if s < lo {
            break;
        }
        if let Some(mut rest) = search_exact(m - s, k - 1, s, list, set, nodes)? {
            let mut parts = vec![s];
            parts.append(&mut rest);
            return Ok(Some(parts));
        }
    }
    Ok(None)
}

/// Smallest `k <= k_max` such that `n` is a sum of `k` smooth numbers, with
/// a witness decomposition; `None` if no such `k` exists.
///
/// Exact search, so `k_max` is capped at 4; [`representable_within`] handles
/// presence-only questions for larger budgets.
pub fn min_terms(
    n: &BigUint,
    basis: &PrimeBasis,
    k_max: usize,
) -> Result<Option<(usize, Decomposition)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("term search needs n >= 1".into()));
    }
    if k_max == 0 || k_max > MAX_EXACT_TERMS {
        return Err(Error::InvalidArgument(format!(
            "exact search handles k_max in [1, {MAX_EXACT_TERMS}], got {k_max}; \
             representable_within answers presence-only queries beyond that"
        )));
    }
    let m = n.to_u64().ok_or_else(|| {
        Error::ResourceLimit("exact term search needs the target to fit in 64 bits".into())
    })?;
    let list = smooth_list_u64(m, basis)?;
    let set: HashSet<u64> = list.iter().copied().collect();
    let mut nodes = 0u64;
    for k in 1..=k_max {
        if let Some(parts) = search_exact(m, k, m, &list, &set, &mut nodes)? {
            let terms = parts.into_iter().map(BigUint::from).collect();
            return Ok(Some((k, Decomposition { target: n.clone(), terms, basis: basis.clone() })));
        }
    }
    Ok(None)
}

/// Is `n` a sum of at most `k` smooth numbers? Presence-only, `k <= 8`.
///
/// Tries the greedy decomposition first (its length is an upper bound on the
/// minimum), then falls back to the exact search for each term count.
pub fn representable_within(n: u64, basis: &PrimeBasis, k: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("representability needs n >= 1".into()));
    }
    if k == 0 || k > MAX_PRESENCE_TERMS {
        return Err(Error::InvalidArgument(format!(
            "presence queries handle k in [1, {MAX_PRESENCE_TERMS}], got {k}"
        )));
    }
    let greedy = greedy_decompose(&BigUint::from(n), basis)?;
    if greedy.terms.len() <= k {
        return Ok(true);
    }
    let list = smooth_list_u64(n, basis)?;
    let set: HashSet<u64> = list.iter().copied().collect();
    let mut nodes = 0u64;
    for j in 1..=k {
        if search_exact(n, j, n, &list, &set, &mut nodes)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `dst |= src << shift` over packed 64-bit words, dropping overflow.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: u64) {
    let ws = (shift / 64) as usize;
    let bs = (shift % 64) as u32;
    if ws >= dst.len() {
        return;
    }
    if bs == 0 {
        for i in ws..dst.len() {
            let w = src[i - ws];
            if w != 0 {
                dst[i] |= w;
            }
        }
    } else {
        for i in ws..dst.len() {
            let lo = src[i - ws];
            let hi = if i > ws { src[i - ws - 1] } else { 0 };
            if lo | hi != 0 {
                dst[i] |= (lo << bs) | (hi >> (64 - bs));
            }
        }
    }
}

/// Smallest `n <= search_limit` that is not a sum of at most `k` smooth
/// numbers, or `None` if every value in range is.
///
/// Bitset sumset scan: starting from {0}, take `k` rounds of
/// `R ∪ (R + smooth)`, each round shifting the previous round's frozen
/// bitset by every smooth value. One pass answers both directions at once:
/// the returned `n` has no representation and everything below it does.
pub fn smallest_unrepresentable(
    k: usize,
    basis: &PrimeBasis,
    search_limit: u64,
) -> Result<Option<u64>> {
    if k == 0 || k > MAX_PRESENCE_TERMS {
        return Err(Error::InvalidArgument(format!(
            "term budgets are capped at {MAX_PRESENCE_TERMS}, got {k}"
        )));
    }
    if search_limit == 0 {
        return Err(Error::InvalidArgument("search limit must be at least 1".into()));
    }
    if search_limit > MAX_BITSET_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "bitset scans are capped at {MAX_BITSET_LIMIT}, got {search_limit}"
        )));
    }
    let list = smooth_list_u64(search_limit, basis)?;
    let words = (search_limit / 64 + 1) as usize;
    let mut reach = vec![0u64; words];
    reach[0] = 1;
    for _ in 0..k {
        let mut next = reach.clone();
        for &s in &list {
            or_shifted(&mut next, &reach, s);
        }
        reach = next;
    }
    for (i, &w) in reach.iter().enumerate() {
        if w != u64::MAX {
            let n = i as u64 * 64 + u64::from((!w).trailing_zeros());
            return Ok((n <= search_limit).then_some(n));
        }
    }
    Ok(None)
}

/// A target written as a sum of two smooth numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothSplit {
    pub target: u64,
    /// `a <= b` and `a + b = target`.
    pub a: u64,
    pub b: u64,
    /// Largest prime dividing `a * b`; 1 for the degenerate 1 + 1 split.
    pub max_prime_factor: u64,
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Ascending primes up to `(log2 n)^2`, the default smoothness-bound
/// schedule for [`anti_goldbach_split`] (at least `[2]`, so n = 2 = 1 + 1
/// stays reachable).
pub fn default_bound_schedule(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::InvalidArgument("splitting needs n >= 2".into()));
    }
    let bound = ((n as f64).log2().powi(2).floor() as u64).max(2);
    Ok(PrimeBasis::with_bound(bound)?.primes().to_vec())
}

fn validate_schedule(schedule: &[u64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("bound schedule must not be empty".into()));
    }
    for w in schedule.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument("bound schedule must be strictly ascending".into()));
        }
    }
    for &b in schedule {
        if b > MAX_SCHEDULE_BOUND {
            return Err(Error::ResourceLimit(format!(
                "schedule bounds are capped at {MAX_SCHEDULE_BOUND}, got {b}"
            )));
        }
        if !is_prime_u64(b) {
            return Err(Error::InvalidArgument(format!("schedule entry {b} is not prime")));
        }
    }
    Ok(())
}

/// Largest basis prime dividing `a * b`, or 1 when both are 1.
fn joint_max_prime(a: u64, b: u64, primes: &[u64]) -> u64 {
    for &p in primes.iter().rev() {
        if a % p == 0 || b % p == 0 {
            return p;
        }
    }
    1
}

/// Split `n = a + b` with both parts smooth under the earliest admitting
/// bound of the schedule, minimizing (largest prime factor of `a·b`, then
/// `|a - b|`).
///
/// Any split whose joint largest prime factor beats the ones found here
/// would already have been admitted by an earlier schedule entry at least
/// that large, so scanning bounds in ascending order and minimizing
/// lexicographically within the first admitting bound yields the
/// schedule-wide optimum (including schedules with gaps).
pub fn anti_goldbach_split(n: u64, bound_schedule: &[u64]) -> Result<SmoothSplit> {
    if n < 2 {
        return Err(Error::InvalidArgument("splitting needs n >= 2".into()));
    }
    validate_schedule(bound_schedule)?;
    for &bound in bound_schedule {
        let basis = PrimeBasis::with_bound(bound)?;
        let mut best: Option<(u64, u64, u64)> = None;
        for &a in &smooth_list_u64(n / 2, &basis)? {
            let b = n - a;
            if !is_smooth_u64(b, basis.primes()) {
                continue;
            }
            let key = (joint_max_prime(a, b, basis.primes()), b - a);
            if best.map_or(true, |(jm, d, _)| (key.0, key.1) < (jm, d)) {
                best = Some((key.0, key.1, a));
            }
        }
        if let Some((max_prime_factor, _, a)) = best {
            return Ok(SmoothSplit { target: n, a, b: n - a, max_prime_factor });
        }
    }
    Err(Error::ScheduleExhausted { largest_bound: *bound_schedule.last().unwrap() })
}

/// Greedy term-count statistics over random fixed-size targets.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsityProfile {
    pub bit_size: u32,
    pub samples: u64,
    pub mean_terms: f64,
    pub max_terms: usize,
    /// Mean of `terms * ln ln n / ln n` over samples with n >= 3 (the
    /// quantity is undefined below); `None` when no sample qualifies.
    pub constant_estimate: Option<f64>,
    /// The conjectured value `2 / s` the estimate is compared against.
    /// Reported, never asserted.
    pub reference_constant: f64,
}

/// Run [`greedy_decompose`] on `samples` random `bit_size`-bit targets.
///
/// Sample `i` draws from its own stream derived from `(seed, i)`, so the
/// profile is reproducible and independent of parallel scheduling.
pub fn sparsity_profile(
    bit_size: u32,
    samples: u64,
    basis: &PrimeBasis,
    seed: u64,
) -> Result<SparsityProfile> {
    if bit_size == 0 {
        return Err(Error::InvalidArgument("bit size must be at least 1".into()));
    }
    if bit_size > MAX_PROFILE_BITS {
        return Err(Error::ResourceLimit(format!(
            "profile bit sizes are capped at {MAX_PROFILE_BITS}, got {bit_size}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("profiling needs at least one sample".into()));
    }
    let outcomes: Vec<(usize, Option<f64>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = derive_stream(seed, i);
            let n = rng.gen_biguint(u64::from(bit_size)) | (BigUint::one() << (bit_size - 1));
            let terms = greedy_decompose(&n, basis)?.terms.len();
            let constant = (n >= BigUint::from(3u8)).then(|| {
                let ln_n = ln_biguint(&n);
                terms as f64 * ln_n.ln() / ln_n
            });
            Ok((terms, constant))
        })
        .collect::<Result<_>>()?;
    let term_total: usize = outcomes.iter().map(|(t, _)| t).sum();
    let constants: Vec<f64> = outcomes.iter().filter_map(|(_, c)| *c).collect();
    Ok(SparsityProfile {
        bit_size,
        samples,
        mean_terms: term_total as f64 / samples as f64,
        max_terms: outcomes.iter().map(|(t, _)| *t).max().unwrap_or(0),
        constant_estimate: (!constants.is_empty())
            .then(|| constants.iter().sum::<f64>() / constants.len() as f64),
        reference_constant: 2.0 / basis.len() as f64,
    })
}
