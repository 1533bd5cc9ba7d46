//! Smooth-share sums for prime hunting.
//!
//! Split a prime basis into two halves by alternating position, draw one
//! fully-smooth number on each half (independent per-prime exponents), and
//! test the sum: every basis prime divides exactly one addend, so none of
//! them divides the sum, and the candidate starts ahead of a random number
//! of the same size, which first has to survive all those small divisors.
//! With k > 2 shares the extra addends use every basis prime, preserving
//! the property.
//!
//! The trial harness measures how often such sums are prime, compares the
//! rate against the Mertens-style prediction, and converts rates into
//! expected-exponentiation counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::basis::PrimeBasis;
use crate::error::{Error, Result};
use crate::primality::{is_probable_prime, miller_rabin, PrimalityPolicy, PrimalityVerdict};
use crate::rng::derive_stream;
use crate::smooth::Factorization;

/// Rounds used to certify a candidate that survives the screening round.
const CERTIFY_ROUNDS: u32 = 20;

/// Caps keeping share generation at desk scale.
const MAX_SHARE_COUNT: usize = 64;
const MAX_EXPONENT: u32 = 1_024;

/// Parameters for share generation.
///
/// Seeds are not part of the config: single draws take an `Rng`, and the
/// trial harness takes a seed and derives one stream per trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareConfig {
    /// Size of the prime basis (the first `basis_primes` primes). Must be
    /// even so the two position-alternating halves come out equal-sized.
    pub basis_primes: usize,
    /// Per-prime exponents are drawn uniformly from
    /// `[exponent_min, exponent_max]`, independently for every prime.
    pub exponent_min: u32,
    pub exponent_max: u32,
}

impl Default for ShareConfig {
    fn default() -> Self {
        Self { basis_primes: 100, exponent_min: 1, exponent_max: 2 }
    }
}

impl ShareConfig {
    fn validate(&self) -> Result<()> {
        if self.basis_primes < 2 || self.basis_primes % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "basis size must be even and at least 2 for an equal split, got {}",
                self.basis_primes
            )));
        }
        if self.exponent_min < 1 || self.exponent_min > self.exponent_max {
            return Err(Error::InvalidArgument(format!(
                "exponent range [{}, {}] is empty or starts below 1",
                self.exponent_min, self.exponent_max
            )));
        }
        if self.exponent_max > MAX_EXPONENT {
            return Err(Error::ResourceLimit(format!(
                "exponents above {MAX_EXPONENT} are past the supported scale"
            )));
        }
        Ok(())
    }

    pub fn basis(&self) -> Result<PrimeBasis> {
        PrimeBasis::first(self.basis_primes)
    }
}

/// Split a basis into (odd positions, even positions): the first, third,
/// fifth, ... primes versus the second, fourth, sixth, ...
///
/// For the first ten primes that is {2, 5, 11, 17, 23} and {3, 7, 13, 19, 29}.
pub fn split_basis(basis: &PrimeBasis) -> (Vec<u64>, Vec<u64>) {
    let odd = basis.primes().iter().copied().step_by(2).collect();
    let even = basis.primes().iter().copied().skip(1).step_by(2).collect();
    (odd, even)
}

/// A two-share draw with its exponent records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharePair {
    pub a: BigUint,
    pub b: BigUint,
    pub a_factorization: Factorization,
    pub b_factorization: Factorization,
}

impl SharePair {
    pub fn sum(&self) -> BigUint {
        &self.a + &self.b
    }
}

fn draw_product<R: Rng>(
    primes: &[u64],
    lo: u32,
    hi: u32,
    rng: &mut R,
) -> (BigUint, Factorization) {
    let mut value = BigUint::one();
    let mut map = std::collections::BTreeMap::new();
    for &p in primes {
        let e = rng.gen_range(lo..=hi);
        value *= BigUint::from(p).pow(e);
        map.insert(p, e);
    }
    (value, Factorization::from_map(map))
}

/// Draw shares `a` (over the odd-position primes) and `b` (over the
/// even-position primes).
///
/// Exponents are drawn for the primes of `a` in increasing order, then for
/// the primes of `b`; that order is part of the seeded-reproducibility
/// contract. The supports are disjoint, so `gcd(a, b) = 1` and no basis
/// prime divides `a + b`.
pub fn gen_pair<R: Rng>(config: &ShareConfig, rng: &mut R) -> Result<SharePair> {
    config.validate()?;
    let basis = config.basis()?;
    let (odd, even) = split_basis(&basis);
    let (a, a_factorization) = draw_product(&odd, config.exponent_min, config.exponent_max, rng);
    let (b, b_factorization) = draw_product(&even, config.exponent_min, config.exponent_max, rng);
    Ok(SharePair { a, b, a_factorization, b_factorization })
}

/// Draw `k` shares.
///
/// The first two come from [`gen_pair`]; every further share is a product of
/// all basis primes with exponents from {1, 2}, so each basis prime divides
/// every share except exactly one, and therefore fails to divide the sum.
pub fn gen_shares<R: Rng>(k: usize, config: &ShareConfig, rng: &mut R) -> Result<Vec<BigUint>> {
    if k < 2 || k > MAX_SHARE_COUNT {
        return Err(Error::InvalidArgument(format!(
            "share count must lie in [2, {MAX_SHARE_COUNT}], got {k}"
        )));
    }
    config.validate()?;
    let pair = gen_pair(config, rng)?;
    let basis = config.basis()?;
    let mut shares = vec![pair.a, pair.b];
    for _ in 2..k {
        let (d, _) = draw_product(basis.primes(), 1, 2, rng);
        shares.push(d);
    }
    Ok(shares)
}

/// One generated candidate and what testing it cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateReport {
    pub shares: Vec<BigUint>,
    pub sum: BigUint,
    pub bit_size: u64,
    pub verdict: PrimalityVerdict,
    /// Modular exponentiations spent on this candidate: 1 screening round,
    /// plus the certification rounds when the screen passed.
    pub exponentiations_used: u64,
}

/// Generate one candidate and screen its sum.
///
/// Screening runs with trial division off (the construction already
/// guarantees no basis prime divides the sum): one Miller-Rabin rejection
/// round, then [`CERTIFY_ROUNDS`] more to certify a survivor.
pub fn candidate_report<R: Rng>(
    k: usize,
    config: &ShareConfig,
    rng: &mut R,
) -> Result<CandidateReport> {
    let shares = gen_shares(k, config, rng)?;
    let mut sum = BigUint::zero();
    for d in &shares {
        sum += d;
    }
    let bit_size = sum.bits();
    let screen_policy =
        PrimalityPolicy { trial_division_primes: 0, mr_rounds: 1, fibonacci_screen: false };
    let screen = is_probable_prime(&sum, &screen_policy, rng)?;
    let (verdict, exponentiations_used) = if screen.is_probable_prime() {
        (miller_rabin(&sum, CERTIFY_ROUNDS, rng)?, 1 + u64::from(CERTIFY_ROUNDS))
    } else {
        (screen, 1)
    };
    Ok(CandidateReport { shares, sum, bit_size, verdict, exponentiations_used })
}

/// Aggregate outcome of a batch of candidate trials.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    pub trials: u64,
    pub primes_found: u64,
    pub prime_rate: f64,
    /// 95% Wilson score interval for the prime rate.
    pub wilson_ci_95: (f64, f64),
    pub mean_bit_size: f64,
    /// Screening exponentiations per prime found, i.e. `trials /
    /// primes_found` under the one-exponentiation-per-candidate cost model.
    /// Certification rounds are tracked per candidate, not here. `None` when
    /// no prime was found.
    pub mean_exponentiations_per_prime: Option<f64>,
}

/// Minimum batch size for the harness; below this the interval says nothing.
const MIN_TRIALS: u64 = 100;

/// Run `trials` independent candidate draws and aggregate.
///
/// Trial `i` runs on its own random stream derived from `(seed, i)`, so the
/// batch is reproducible and schedule-independent; trials run in parallel.
pub fn estimate_prime_probability(
    config: &ShareConfig,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<TrialStats> {
    config.validate()?;
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!(
            "the harness needs at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    let outcomes: Vec<(u64, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = derive_stream(seed, i);
            let report = candidate_report(k, config, &mut rng)?;
            Ok((report.bit_size, report.verdict.is_probable_prime()))
        })
        .collect::<Result<_>>()?;
    let primes_found = outcomes.iter().filter(|(_, p)| *p).count() as u64;
    let bit_total: u64 = outcomes.iter().map(|(b, _)| *b).sum();
    let prime_rate = primes_found as f64 / trials as f64;
    Ok(TrialStats {
        trials,
        primes_found,
        prime_rate,
        wilson_ci_95: wilson_ci(primes_found, trials),
        mean_bit_size: bit_total as f64 / trials as f64,
        mean_exponentiations_per_prime: (primes_found > 0)
            .then(|| trials as f64 / primes_found as f64),
    })
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_ci(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "interval over zero trials");
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Predicted prime rate for candidates of `mean_bit_size` bits known to be
/// coprime to every basis prime: `(prod (1 - 1/p))^-1 / ln(2^bits)`.
pub fn mertens_prediction(basis: &PrimeBasis, mean_bit_size: f64) -> f64 {
    let mut product = 1.0f64;
    for &p in basis.primes() {
        product *= 1.0 - 1.0 / p as f64;
    }
    (1.0 / product) / (mean_bit_size * std::f64::consts::LN_2)
}

/// Expected exponentiation counts for finding one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentiationEstimate {
    /// Testing random odd numbers of the given size: `ln(2^bits) / 2`.
    pub random_baseline: f64,
    /// Testing smooth-share sums: `1 / prime_rate`. Absent without a rate.
    pub smooth_method: Option<f64>,
    /// `random_baseline / smooth_method`. Absent without a rate.
    pub improvement: Option<f64>,
}

/// Expected exponentiations to find one prime at `bit_size` bits; pass the
/// measured `prime_rate` to also get the smooth-method cost and the
/// improvement factor.
pub fn expected_exponentiations(
    bit_size: f64,
    prime_rate: Option<f64>,
) -> Result<ExponentiationEstimate> {
    if !(bit_size >= 8.0) {
        return Err(Error::InvalidArgument("bit size must be at least 8".into()));
    }
    if let Some(rate) = prime_rate {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidArgument("prime rate must lie in (0, 1]".into()));
        }
    }
    let random_baseline = bit_size * std::f64::consts::LN_2 / 2.0;
    let smooth_method = prime_rate.map(|rate| 1.0 / rate);
    Ok(ExponentiationEstimate {
        random_baseline,
        smooth_method,
        improvement: smooth_method.map(|s| random_baseline / s),
    })
}

/// Operand sizes the timing comparison is defined for.
const BENCHMARK_SIZES: [u32; 3] = [512, 1024, 2048];

/// Measured cost of a full modular exponentiation versus one division by a
/// small prime, at a given operand size.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionBenchmark {
    pub bit_size: u32,
    pub modexp_ns_per_op: f64,
    pub division_ns_per_op: f64,
    pub ratio: f64,
}

/// Time `iterations` modular exponentiations and small-prime divisions on
/// random `bit_size`-bit operands (`bit_size` one of 512, 1024, 2048).
///
/// Wall-clock measurement, report-only: the per-op times jitter run to run
/// and depend entirely on the platform, but the ratio reliably grows with
/// operand size, since exponentiation cost scales like bits^2..3 while
/// division by a one-word constant stays linear.
pub fn benchmark_division_ratio(
    bit_size: u32,
    iterations: u32,
    seed: u64,
) -> Result<DivisionBenchmark> {
    use num_bigint::RandBigInt;
    use std::time::Instant;

    if !BENCHMARK_SIZES.contains(&bit_size) {
        return Err(Error::InvalidArgument(format!(
            "benchmark sizes are {BENCHMARK_SIZES:?}, got {bit_size}"
        )));
    }
    if iterations == 0 {
        return Err(Error::InvalidArgument("benchmark needs at least one iteration".into()));
    }
    let mut rng = derive_stream(seed, 0);
    let mut moduli = Vec::with_capacity(iterations as usize);
    let mut bases = Vec::with_capacity(iterations as usize);
    let mut exponents = Vec::with_capacity(iterations as usize);
    for _ in 0..iterations {
        let m = rng.gen_biguint(u64::from(bit_size))
            | BigUint::one()
            | (BigUint::one() << (bit_size - 1));
        bases.push(rng.gen_biguint_below(&m));
        exponents.push(rng.gen_biguint_below(&m));
        moduli.push(m);
    }
    let small_prime = BigUint::from(541u32);

    // warm-up so first-touch costs stay out of the timings
    let _ = bases[0].modpow(&exponents[0], &moduli[0]);

    let start = Instant::now();
    let mut sink = BigUint::zero();
    for i in 0..iterations as usize {
        sink ^= bases[i].modpow(&exponents[i], &moduli[i]);
    }
    let modexp_ns = start.elapsed().as_nanos() as f64 / f64::from(iterations);

    const DIVISION_BATCH: u32 = 4_096;
    let start = Instant::now();
    for _ in 0..DIVISION_BATCH {
        for m in &moduli {
            sink ^= m % &small_prime;
        }
    }
    let division_ns =
        start.elapsed().as_nanos() as f64 / (f64::from(iterations) * f64::from(DIVISION_BATCH));
    std::hint::black_box(sink);

    Ok(DivisionBenchmark {
        bit_size,
        modexp_ns_per_op: modexp_ns,
        division_ns_per_op: division_ns,
        ratio: modexp_ns / division_ns,
    })
}
