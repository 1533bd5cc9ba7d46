//! Primality screens and pseudoprime searches.
//!
//! Three screens of increasing strength, plus a composition pipeline:
//!
//! * Fermat: `base^(n-1) = 1 (mod n)`. Cheap, fooled by pseudoprimes (the
//!   smallest for base 2 is 341) and by Carmichael numbers for every
//!   coprime base at once (smallest 561).
//! * Miller-Rabin: the strong version of the same idea; each random base
//!   catches at least three quarters of composites.
//! * Fibonacci: `F(n^2 - 1) = 0 (mod n)` holds for every odd prime except 5.
//!   Odd composites slipping through are rare; the scan in this module finds
//!   them exhaustively.
//!
//! The searches treat a deterministic sieve as ground truth, so their output
//! is an exact census of where each screen fails.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::basis::{sieve_flags, PrimeBasis};
use crate::error::{Error, Result};

/// Cap for the pseudoprime scans.
const MAX_SCAN_LIMIT: u64 = 1_000_000;

/// Outcome of a primality screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimalityVerdict {
    /// Survived every round that was run.
    ProbablePrime { rounds: u32 },
    /// Proven composite. The witness is the divisor or failing base when one
    /// exists (the Fibonacci screen has no meaningful witness value).
    Composite { witness: Option<BigUint> },
}

impl PrimalityVerdict {
    pub fn is_probable_prime(&self) -> bool {
        matches!(self, PrimalityVerdict::ProbablePrime { .. })
    }
}

/// How [`is_probable_prime`] composes the screens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalityPolicy {
    /// Trial-divide by the first this-many primes before anything else
    /// (0 disables the stage).
    pub trial_division_primes: usize,
    /// Miller-Rabin rounds with seeded random bases; must be at least 1.
    pub mr_rounds: u32,
    /// Additionally require the Fibonacci congruence (skipped at n = 5).
    pub fibonacci_screen: bool,
}

impl Default for PrimalityPolicy {
    fn default() -> Self {
        Self { trial_division_primes: 100, mr_rounds: 20, fibonacci_screen: false }
    }
}

/// Smallest basis prime dividing `n`, with `n` itself excluded so a basis
/// member never reports itself. `None` for n <= 1.
pub fn trial_division(n: &BigUint, basis: &PrimeBasis) -> Option<u64> {
    if *n <= BigUint::one() {
        return None;
    }
    for &p in basis.primes() {
        let pb = BigUint::from(p);
        if pb == *n {
            continue;
        }
        if (n % pb).is_zero() {
            return Some(p);
        }
    }
    None
}

fn require_odd_candidate(n: &BigUint) -> Result<()> {
    if *n < BigUint::from(3u8) || (n % 2u8).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "screen needs an odd n >= 3, got {n}"
        )));
    }
    Ok(())
}

/// Fermat screen: probable prime iff `base^(n-1) = 1 (mod n)`.
///
/// Requires odd `n >= 3` and `2 <= base <= n - 2`.
pub fn fermat_test(n: &BigUint, base: &BigUint) -> Result<PrimalityVerdict> {
    require_odd_candidate(n)?;
    if *base < BigUint::from(2u8) || *base > n - 2u8 {
        return Err(Error::InvalidArgument(format!(
            "fermat base must lie in [2, n-2], got {base}"
        )));
    }
    let n1 = n - 1u8;
    if base.modpow(&n1, n).is_one() {
        Ok(PrimalityVerdict::ProbablePrime { rounds: 1 })
    } else {
        Ok(PrimalityVerdict::Composite { witness: Some(base.clone()) })
    }
}

/// Write `n - 1 = d * 2^t` with `d` odd.
fn decompose(n: &BigUint) -> (BigUint, u64) {
    let n1 = n - 1u8;
    let t = n1.trailing_zeros().expect("n >= 3 so n-1 > 0");
    (&n1 >> t, t)
}

/// One strong-pseudoprime round; true means "passes as possible prime".
fn strong_round(n: &BigUint, d: &BigUint, t: u64, base: &BigUint) -> bool {
    let n1 = n - 1u8;
    let mut x = base.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..t {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
        if x.is_one() {
            // reached 1 through a nontrivial square root of 1
            return false;
        }
    }
    false
}

/// Miller-Rabin with `rounds` seeded random bases from `[2, n-2]`.
///
/// Requires odd `n >= 3` and `rounds >= 1`. A composite verdict reports the
/// base that exposed it.
pub fn miller_rabin<R: Rng>(n: &BigUint, rounds: u32, rng: &mut R) -> Result<PrimalityVerdict> {
    require_odd_candidate(n)?;
    if rounds == 0 {
        return Err(Error::InvalidArgument("need at least one round".into()));
    }
    if *n == BigUint::from(3u8) {
        // base interval [2, n-2] is empty; 3 is prime
        return Ok(PrimalityVerdict::ProbablePrime { rounds });
    }
    let (d, t) = decompose(n);
    let lo = BigUint::from(2u8);
    let hi = n - 1u8; // exclusive, so bases are uniform over [2, n-2]
    for _ in 0..rounds {
        let base = rng.gen_biguint_range(&lo, &hi);
        if !strong_round(n, &d, t, &base) {
            return Ok(PrimalityVerdict::Composite { witness: Some(base) });
        }
    }
    Ok(PrimalityVerdict::ProbablePrime { rounds })
}

/// Miller-Rabin over caller-chosen bases (each in `[2, n-2]`).
pub fn miller_rabin_with_bases(n: &BigUint, bases: &[BigUint]) -> Result<PrimalityVerdict> {
    require_odd_candidate(n)?;
    if *n == BigUint::from(3u8) {
        return Ok(PrimalityVerdict::ProbablePrime { rounds: bases.len() as u32 });
    }
    let (d, t) = decompose(n);
    for base in bases {
        if *base < BigUint::from(2u8) || *base > n - 2u8 {
            return Err(Error::InvalidArgument(format!(
                "miller-rabin base must lie in [2, n-2], got {base}"
            )));
        }
        if !strong_round(n, &d, t, base) {
            return Ok(PrimalityVerdict::Composite { witness: Some(base.clone()) });
        }
    }
    Ok(PrimalityVerdict::ProbablePrime { rounds: bases.len() as u32 })
}

/// `F(k) mod m` by fast doubling over the bits of `k`.
///
/// Runs in `O(log k)` modular multiplications, so `k` as large as `n^2` for
/// thousand-bit `n` is fine. Requires `m >= 1`.
pub fn fibonacci_index_mod(k: &BigUint, m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::InvalidArgument("modulus must be >= 1".into()));
    }
    if m.is_one() {
        return Ok(BigUint::zero());
    }
    // invariant: (a, b) = (F(i), F(i+1)) for the prefix i of k read so far
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for bit_index in (0..k.bits()).rev() {
        // F(2i) = F(i) * (2 F(i+1) - F(i)), F(2i+1) = F(i)^2 + F(i+1)^2
        let two_b = (&b << 1) % m;
        let diff = (two_b + m - &a) % m;
        let c = &a * diff % m;
        let d = (&a * &a + &b * &b) % m;
        if k.bit(bit_index) {
            a = d.clone();
            b = (c + d) % m;
        } else {
            a = c;
            b = d;
        }
    }
    Ok(a)
}

/// Fibonacci screen: probable prime iff `F(n^2 - 1) = 0 (mod n)`.
///
/// Every odd prime passes except 5, which is rejected as input. Requires odd
/// `n >= 3`.
pub fn fibonacci_test(n: &BigUint) -> Result<PrimalityVerdict> {
    require_odd_candidate(n)?;
    if *n == BigUint::from(5u8) {
        return Err(Error::ExcludedInput(
            "n = 5 is the screen's own blind spot: F(24) = 46368 is not divisible by 5".into(),
        ));
    }
    let k = n * n - 1u8;
    let r = fibonacci_index_mod(&k, n)?;
    if r.is_zero() {
        Ok(PrimalityVerdict::ProbablePrime { rounds: 1 })
    } else {
        Ok(PrimalityVerdict::Composite { witness: None })
    }
}

/// Composite screen pipeline: trial division, then Miller-Rabin, then
/// optionally the Fibonacci congruence.
///
/// Accepts any `n >= 2` (2 is prime, other even n are composite with
/// witness 2). The Fibonacci stage silently skips its excluded input n = 5.
pub fn is_probable_prime<R: Rng>(
    n: &BigUint,
    policy: &PrimalityPolicy,
    rng: &mut R,
) -> Result<PrimalityVerdict> {
    if *n < BigUint::from(2u8) {
        return Err(Error::InvalidArgument("primality is asked of n >= 2".into()));
    }
    if policy.mr_rounds == 0 {
        return Err(Error::InvalidArgument("policy needs at least one miller-rabin round".into()));
    }
    if *n == BigUint::from(2u8) {
        return Ok(PrimalityVerdict::ProbablePrime { rounds: 0 });
    }
    if (n % 2u8).is_zero() {
        return Ok(PrimalityVerdict::Composite { witness: Some(BigUint::from(2u8)) });
    }
    if policy.trial_division_primes > 0 {
        let basis = PrimeBasis::first(policy.trial_division_primes)?;
        if let Some(p) = trial_division(n, &basis) {
            return Ok(PrimalityVerdict::Composite { witness: Some(BigUint::from(p)) });
        }
    }
    let mr = miller_rabin(n, policy.mr_rounds, rng)?;
    if !mr.is_probable_prime() {
        return Ok(mr);
    }
    if policy.fibonacci_screen && *n != BigUint::from(5u8) {
        let fib = fibonacci_test(n)?;
        if !fib.is_probable_prime() {
            return Ok(fib);
        }
    }
    Ok(PrimalityVerdict::ProbablePrime { rounds: policy.mr_rounds })
}

fn check_scan_limit(limit: u64) -> Result<()> {
    if limit > MAX_SCAN_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "pseudoprime scans are capped at {MAX_SCAN_LIMIT}, got {limit}"
        )));
    }
    Ok(())
}

/// Every odd composite `n < limit` that passes the Fermat screen for `base`.
///
/// A deterministic sieve supplies ground truth, so the returned list is the
/// screen's exact exception set below the limit.
pub fn fermat_pseudoprimes(limit: u64, base: u64) -> Result<Vec<u64>> {
    check_scan_limit(limit)?;
    if base < 2 {
        return Err(Error::InvalidArgument("fermat base must be >= 2".into()));
    }
    let flags = sieve_flags(limit.saturating_sub(1) as usize);
    let base_big = BigUint::from(base);
    let mut out = Vec::new();
    let mut n = 9u64;
    while n < limit {
        if !flags[n as usize] && n >= base + 3 {
            let nb = BigUint::from(n);
            if fermat_test(&nb, &base_big)?.is_probable_prime() {
                out.push(n);
            }
        }
        n += 2;
    }
    Ok(out)
}

/// Every odd composite `n < limit` that passes the Fibonacci screen.
pub fn fibonacci_pseudoprimes(limit: u64) -> Result<Vec<u64>> {
    check_scan_limit(limit)?;
    let flags = sieve_flags(limit.saturating_sub(1) as usize);
    let mut out = Vec::new();
    let mut n = 9u64;
    while n < limit {
        if !flags[n as usize] {
            let nb = BigUint::from(n);
            if fibonacci_test(&nb)?.is_probable_prime() {
                out.push(n);
            }
        }
        n += 2;
    }
    Ok(out)
}

/// Smallest odd composite below `limit` passing the Fibonacci screen, if any.
pub fn smallest_fibonacci_pseudoprime(limit: u64) -> Result<Option<u64>> {
    check_scan_limit(limit)?;
    let flags = sieve_flags(limit.saturating_sub(1) as usize);
    let mut n = 9u64;
    while n < limit {
        if !flags[n as usize] && fibonacci_test(&BigUint::from(n))?.is_probable_prime() {
            return Ok(Some(n));
        }
        n += 2;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn trial_division_anchors() {
        let b10 = PrimeBasis::first(10).unwrap();
        assert_eq!(trial_division(&big(341), &b10), Some(11));
        assert_eq!(trial_division(&big(91), &b10), Some(7));
        assert_eq!(trial_division(&big(7), &b10), None, "basis member is not its own factor");
        assert_eq!(trial_division(&big(49), &b10), Some(7));
        assert_eq!(trial_division(&big(1), &b10), None);
        let b100 = PrimeBasis::first(100).unwrap();
        let m61 = (BigUint::one() << 61) - 1u8;
        assert_eq!(trial_division(&m61, &b100), None);
    }

    #[test]
    fn fermat_341_is_fooled_by_2_not_3() {
        assert!(fermat_test(&big(341), &big(2)).unwrap().is_probable_prime());
        let v = fermat_test(&big(341), &big(3)).unwrap();
        assert_eq!(v, PrimalityVerdict::Composite { witness: Some(big(3)) });
    }

    #[test]
    fn fermat_basics() {
        assert!(fermat_test(&big(7), &big(2)).unwrap().is_probable_prime());
        assert!(!fermat_test(&big(9), &big(2)).unwrap().is_probable_prime());
        // 561 is Carmichael: every coprime base is fooled
        for base in [2u64, 5, 7, 13, 23, 50, 101] {
            assert!(fermat_test(&big(561), &big(base)).unwrap().is_probable_prime());
        }
        assert!(fermat_test(&big(9), &big(8)).is_err(), "base above n-2");
        assert!(fermat_test(&big(9), &big(1)).is_err(), "base below 2");
        assert!(fermat_test(&big(8), &big(2)).is_err(), "even n");
    }

    #[test]
    fn strong_screen_catches_341_and_561() {
        let v = miller_rabin_with_bases(&big(341), &[big(2)]).unwrap();
        assert!(!v.is_probable_prime(), "341 fails the strong version at base 2");
        let mut rng = rng_from_seed(0);
        assert!(!miller_rabin(&big(561), 10, &mut rng).unwrap().is_probable_prime());
    }

    #[test]
    fn strong_pseudoprime_2047() {
        // 2047 = 23 * 89 is the smallest strong pseudoprime to base 2
        assert!(miller_rabin_with_bases(&big(2047), &[big(2)]).unwrap().is_probable_prime());
        assert!(!miller_rabin_with_bases(&big(2047), &[big(3)]).unwrap().is_probable_prime());
    }

    #[test]
    fn miller_rabin_primes() {
        let mut rng = rng_from_seed(1);
        assert!(miller_rabin(&big(3), 5, &mut rng).unwrap().is_probable_prime());
        assert!(miller_rabin(&big(5), 5, &mut rng).unwrap().is_probable_prime());
        let m31 = big(2_147_483_647);
        assert!(miller_rabin(&m31, 20, &mut rng).unwrap().is_probable_prime());
        let m61 = (BigUint::one() << 61) - 1u8;
        assert!(miller_rabin(&m61, 20, &mut rng).unwrap().is_probable_prime());
    }

    #[test]
    fn miller_rabin_rejects_bad_input() {
        let mut rng = rng_from_seed(0);
        assert!(miller_rabin(&big(2), 5, &mut rng).is_err());
        assert!(miller_rabin(&big(9), 0, &mut rng).is_err());
        assert!(miller_rabin(&big(10), 5, &mut rng).is_err());
        assert!(miller_rabin_with_bases(&big(11), &[big(10)]).is_err());
    }

    #[test]
    fn fibonacci_index_anchors() {
        assert_eq!(fibonacci_index_mod(&big(10), &big(1000)).unwrap(), big(55));
        assert_eq!(fibonacci_index_mod(&big(48), &big(7)).unwrap(), big(0));
        assert_eq!(fibonacci_index_mod(&big(0), &big(5)).unwrap(), big(0));
        assert_eq!(fibonacci_index_mod(&big(1), &big(5)).unwrap(), big(1));
        assert_eq!(fibonacci_index_mod(&big(12), &big(1_000_000)).unwrap(), big(144));
        assert_eq!(fibonacci_index_mod(&big(100), &big(1)).unwrap(), big(0));
        assert!(fibonacci_index_mod(&big(5), &big(0)).is_err());
    }

    #[test]
    fn fibonacci_index_matches_iteration() {
        let m = 99_991u64;
        let (mut x, mut y) = (0u64, 1u64);
        for k in 0..300u64 {
            assert_eq!(fibonacci_index_mod(&big(k), &big(m)).unwrap(), big(x), "k = {k}");
            let next = (x + y) % m;
            x = y;
            y = next;
        }
    }

    #[test]
    fn fibonacci_screen_anchors() {
        assert!(fibonacci_test(&big(7)).unwrap().is_probable_prime());
        assert!(fibonacci_test(&big(23)).unwrap().is_probable_prime());
        assert!(!fibonacci_test(&big(9)).unwrap().is_probable_prime());
        assert!(!fibonacci_test(&big(15)).unwrap().is_probable_prime());
        // the screen's known failures: composites it cannot see
        assert!(fibonacci_test(&big(21)).unwrap().is_probable_prime());
        assert!(fibonacci_test(&big(161)).unwrap().is_probable_prime());
        assert!(matches!(fibonacci_test(&big(5)), Err(Error::ExcludedInput(_))));
        assert!(fibonacci_test(&big(4)).is_err());
    }

    #[test]
    fn fermat_scan_below_1000() {
        assert_eq!(fermat_pseudoprimes(1000, 2).unwrap(), vec![341, 561, 645]);
    }

    #[test]
    fn fibonacci_scan_below_1000() {
        // frozen by two independent computations (iterative and fast-doubling)
        assert_eq!(
            fibonacci_pseudoprimes(1000).unwrap(),
            vec![21, 161, 231, 323, 329, 341, 377, 451, 671, 861, 903, 989]
        );
        assert_eq!(smallest_fibonacci_pseudoprime(100).unwrap(), Some(21));
        assert_eq!(smallest_fibonacci_pseudoprime(21).unwrap(), None);
        assert_eq!(smallest_fibonacci_pseudoprime(22).unwrap(), Some(21));
    }

    #[test]
    fn pipeline_anchors() {
        let mut rng = rng_from_seed(0);
        let policy = PrimalityPolicy::default();
        assert!(is_probable_prime(&big(2), &policy, &mut rng).unwrap().is_probable_prime());
        let v = is_probable_prime(&big(4), &policy, &mut rng).unwrap();
        assert_eq!(v, PrimalityVerdict::Composite { witness: Some(big(2)) });
        // trial division reports the small factor of 341
        let v = is_probable_prime(&big(341), &policy, &mut rng).unwrap();
        assert_eq!(v, PrimalityVerdict::Composite { witness: Some(big(11)) });
        // with trial division off, miller-rabin still catches it
        let bare = PrimalityPolicy { trial_division_primes: 0, ..Default::default() };
        assert!(!is_probable_prime(&big(341), &bare, &mut rng).unwrap().is_probable_prime());
        assert!(!is_probable_prime(&big(561), &bare, &mut rng).unwrap().is_probable_prime());
        let m31 = big(2_147_483_647);
        assert!(is_probable_prime(&m31, &policy, &mut rng).unwrap().is_probable_prime());
        assert!(is_probable_prime(&big(1), &policy, &mut rng).is_err());
    }

    #[test]
    fn pipeline_with_fibonacci_stage() {
        let mut rng = rng_from_seed(3);
        let policy = PrimalityPolicy {
            trial_division_primes: 0,
            mr_rounds: 10,
            fibonacci_screen: true,
        };
        assert!(is_probable_prime(&big(7), &policy, &mut rng).unwrap().is_probable_prime());
        // n = 5 must pass the pipeline even though the fibonacci stage skips it
        assert!(is_probable_prime(&big(5), &policy, &mut rng).unwrap().is_probable_prime());
        assert!(!is_probable_prime(&big(341), &policy, &mut rng).unwrap().is_probable_prime());
    }

    #[test]
    fn verdicts_agree_with_sieve_to_20k() {
        let flags = sieve_flags(20_000);
        let mut rng = rng_from_seed(42);
        let bare = PrimalityPolicy { trial_division_primes: 0, mr_rounds: 8, ..Default::default() };
        let mut n = 3u64;
        while n < 20_000 {
            let verdict = is_probable_prime(&big(n), &bare, &mut rng).unwrap();
            assert_eq!(
                verdict.is_probable_prime(),
                flags[n as usize],
                "miller-rabin disagrees with the sieve at {n}"
            );
            n += 2;
        }
    }
}
