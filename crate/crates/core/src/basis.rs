//! Prime bases.
//!
//! An s-integer (s-smooth number) is a positive integer whose prime factors
//! all lie among the first s primes. [`PrimeBasis`] holds that prime set,
//! either "the first s primes" or "all primes up to a bound".

use crate::error::{Error, Result};

/// Hard cap on the number of primes in a basis.
const MAX_BASIS_PRIMES: usize = 1_000_000;

/// Hard cap on the value bound of a basis.
const MAX_BASIS_BOUND: u64 = 50_000_000;

/// A sorted set of the smallest primes, the ambient multiplicative basis for
/// everything else in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    /// The first `s` primes (so `first(2)` is `{2, 3}`, the 2-integer basis).
    pub fn first(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("basis needs at least one prime".into()));
        }
        if s > MAX_BASIS_PRIMES {
            return Err(Error::ResourceLimit(format!(
                "basis of {s} primes exceeds the cap of {MAX_BASIS_PRIMES}"
            )));
        }
        // p_s < s (ln s + ln ln s) for s >= 6; below that a fixed bound does.
        let limit = if s < 6 {
            13
        } else {
            let sf = s as f64;
            (sf * (sf.ln() + sf.ln().ln())).ceil() as u64 + 16
        };
        let mut primes = sieve_primes(limit);
        debug_assert!(primes.len() >= s);
        primes.truncate(s);
        Ok(Self { primes })
    }

    /// All primes `<= bound`. Requires `bound >= 2` so the basis is nonempty.
    pub fn with_bound(bound: u64) -> Result<Self> {
        if bound < 2 {
            return Err(Error::InvalidArgument(format!(
                "bound {bound} leaves an empty basis; need bound >= 2"
            )));
        }
        if bound > MAX_BASIS_BOUND {
            return Err(Error::ResourceLimit(format!(
                "bound {bound} exceeds the sieve cap of {MAX_BASIS_BOUND}"
            )));
        }
        Ok(Self { primes: sieve_primes(bound) })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of primes in the basis (the "s" in s-integer).
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn largest(&self) -> u64 {
        *self.primes.last().expect("basis is never empty")
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }
}

/// Primes up to and including `limit`, by Eratosthenes.
pub(crate) fn sieve_primes(limit: u64) -> Vec<u64> {
    let flags = sieve_flags(limit as usize);
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| if p { Some(i as u64) } else { None })
        .collect()
}

/// Primality flags for 0..=limit.
pub(crate) fn sieve_flags(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    flags[0] = false;
    if limit >= 1 {
        flags[1] = false;
    }
    let mut i = 2usize;
    while i * i <= limit {
        if flags[i] {
            let mut j = i * i;
            while j <= limit {
                flags[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    flags
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        let b = PrimeBasis::first(10).unwrap();
        assert_eq!(b.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(b.largest(), 29);
    }

    #[test]
    fn hundredth_prime_is_541() {
        assert_eq!(PrimeBasis::first(100).unwrap().largest(), 541);
    }

    #[test]
    fn hundred_fiftieth_prime_is_863() {
        assert_eq!(PrimeBasis::first(150).unwrap().largest(), 863);
    }

    #[test]
    fn bounded_basis() {
        let b = PrimeBasis::with_bound(10).unwrap();
        assert_eq!(b.primes(), &[2, 3, 5, 7]);
        assert!(b.contains(7));
        assert!(!b.contains(9));
    }

    #[test]
    fn empty_basis_rejected() {
        assert!(PrimeBasis::first(0).is_err());
        assert!(PrimeBasis::with_bound(1).is_err());
    }

    #[test]
    fn large_s_crosscheck() {
        // spot-check against a straight sieve
        let b = PrimeBasis::first(1_000).unwrap();
        let all = sieve_primes(8_000);
        assert_eq!(b.primes(), &all[..1_000]);
    }
}
