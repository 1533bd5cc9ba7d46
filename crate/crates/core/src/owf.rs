//! A sum-of-two-smooth-numbers puzzle.
//!
//! Multiplying random small primes together until the product is big is
//! cheap, and so is adding two such numbers; recovering any two smooth
//! summands from the sum alone appears to require scanning the smooth
//! numbers below it. [`forward`] plays the easy direction, [`verify`]
//! checks a claimed pair, and [`solve_bruteforce`] is the desk-scale
//! inverter used to watch the cost grow.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::basis::PrimeBasis;
use crate::error::{Error, Result};
use crate::num_util::log2_biguint;
use crate::smooth::{is_smooth, Factorization, SmoothIter};

/// Caps keeping challenge generation at desk scale.
const MAX_TARGET_BITS: u64 = 1_000_000;

/// The public puzzle: find two `smooth_bound`-smooth numbers summing to `n`.
///
/// Serializes as `{"n": "<decimal>", "smooth_bound": "<decimal>"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Challenge {
    #[serde(with = "decimal_biguint")]
    pub n: BigUint,
    /// Largest prime factor allowed in each summand.
    #[serde(with = "decimal_u64")]
    pub smooth_bound: u64,
}

/// A solved puzzle: the two summands with their factorizations.
///
/// The factorizations are carried so that [`verify`] never has to factor
/// anything; they can only be built by this crate's own constructors, which
/// keeps their prime keys trustworthy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: BigUint,
    pub b: BigUint,
    pub a_factorization: Factorization,
    pub b_factorization: Factorization,
}

/// The wire form of a witness: just the two summands, as decimal strings.
///
/// Serializes as `{"a": "<decimal>", "b": "<decimal>"}`. Use
/// [`assemble_witness`] to lift a claim into a checkable [`Witness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessClaim {
    #[serde(with = "decimal_biguint")]
    pub a: BigUint,
    #[serde(with = "decimal_biguint")]
    pub b: BigUint,
}

impl From<&Witness> for WitnessClaim {
    fn from(w: &Witness) -> Self {
        Self { a: w.a.clone(), b: w.b.clone() }
    }
}

mod decimal_biguint {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|_| serde::de::Error::custom("expected a decimal integer string"))
    }
}

mod decimal_u64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<u64, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(|_| serde::de::Error::custom("expected a decimal integer string"))
    }
}

/// Largest prime `<= (log2 n)^2`, the default smoothness bound for
/// challenges over `n` (never below 2).
pub fn default_smooth_bound(n: &BigUint) -> Result<u64> {
    if *n < BigUint::from(2u8) {
        return Err(Error::InvalidArgument("challenges need n >= 2".into()));
    }
    let target = (log2_biguint(n).powi(2).floor() as u64).max(2);
    Ok(PrimeBasis::with_bound(target)?.largest())
}

fn grow_part<R: Rng>(
    target_bits: u64,
    primes: &[u64],
    rng: &mut R,
) -> (BigUint, Factorization) {
    let mut value = BigUint::one();
    let mut map = std::collections::BTreeMap::new();
    while value.bits() < target_bits {
        let p = primes[rng.gen_range(0..primes.len())];
        value *= p;
        *map.entry(p).or_insert(0u32) += 1;
    }
    (value, Factorization::from_map(map))
}

/// Build a challenge by adding two random smooth numbers of roughly
/// `target_bits` bits (random prime factors up to `smooth_bound`, multiplied
/// until the bit target is reached), returning the generating witness.
///
/// Part `a` is drawn before part `b`; that order is part of the seeded
/// reproducibility contract.
pub fn forward<R: Rng>(
    target_bits: u64,
    smooth_bound: u64,
    rng: &mut R,
) -> Result<(Challenge, Witness)> {
    if target_bits < 8 {
        return Err(Error::InvalidArgument("challenges below 8 bits are degenerate".into()));
    }
    if target_bits > MAX_TARGET_BITS {
        return Err(Error::ResourceLimit(format!(
            "challenge sizes are capped at {MAX_TARGET_BITS} bits"
        )));
    }
    if smooth_bound < 3 {
        return Err(Error::InvalidArgument("the smooth bound must be at least 3".into()));
    }
    let basis = PrimeBasis::with_bound(smooth_bound)?;
    let (a, a_factorization) = grow_part(target_bits, basis.primes(), rng);
    let (b, b_factorization) = grow_part(target_bits, basis.primes(), rng);
    let challenge = Challenge { n: &a + &b, smooth_bound };
    Ok((challenge, Witness { a, b, a_factorization, b_factorization }))
}

/// Check a witness: the summands add up to the challenge, each factorization
/// multiplies back to its summand, and no prime exceeds the bound.
pub fn verify(challenge: &Challenge, witness: &Witness) -> bool {
    if &witness.a + &witness.b != challenge.n {
        return false;
    }
    for (part, factorization) in [
        (&witness.a, &witness.a_factorization),
        (&witness.b, &witness.b_factorization),
    ] {
        if factorization.product() != *part {
            return false;
        }
        if factorization.max_prime().is_some_and(|p| p > challenge.smooth_bound) {
            return false;
        }
    }
    true
}

/// Factor a claimed summand pair under the challenge's bound.
///
/// `None` when either part is zero or has a prime factor above the bound —
/// no valid witness can carry those parts. A `Some` result still needs
/// [`verify`]: assembly does not check the sum.
pub fn assemble_witness(
    challenge: &Challenge,
    claim: &WitnessClaim,
) -> Result<Option<Witness>> {
    if challenge.smooth_bound < 2 {
        return Err(Error::InvalidArgument("the smooth bound must be at least 2".into()));
    }
    if claim.a.is_zero() || claim.b.is_zero() {
        return Ok(None);
    }
    let basis = PrimeBasis::with_bound(challenge.smooth_bound)?;
    let Some(a_factorization) = is_smooth(&claim.a, &basis)? else {
        return Ok(None);
    };
    let Some(b_factorization) = is_smooth(&claim.b, &basis)? else {
        return Ok(None);
    };
    Ok(Some(Witness {
        a: claim.a.clone(),
        b: claim.b.clone(),
        a_factorization,
        b_factorization,
    }))
}

/// Invert a challenge by enumerating smooth `x <= n/2` in increasing order
/// and testing `n - x` for smoothness; returns the witness with the smallest
/// `x`, or `None` when the enumeration exhausts without a hit.
///
/// `budget` bounds how many candidates may be enumerated; exceeding it is an
/// error rather than a miss, so a `None` is always a definitive absence.
pub fn solve_bruteforce(challenge: &Challenge, budget: u64) -> Result<Option<Witness>> {
    if challenge.n < BigUint::from(2u8) {
        return Err(Error::InvalidArgument("challenges need n >= 2".into()));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("the candidate budget must be positive".into()));
    }
    let basis = PrimeBasis::with_bound(challenge.smooth_bound)?;
    let half = &challenge.n / 2u8;
    let mut candidates = 0u64;
    for x in SmoothIter::new(&half, &basis) {
        candidates += 1;
        if candidates > budget {
            return Err(Error::BudgetExceeded(format!(
                "no witness within the first {budget} smooth candidates"
            )));
        }
        let complement = &challenge.n - &x;
        if let Some(b_factorization) = is_smooth(&complement, &basis)? {
            let a_factorization = is_smooth(&x, &basis)?.expect("enumerated values are smooth");
            return Ok(Some(Witness { a: x, b: complement, a_factorization, b_factorization }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::min_terms;
    use crate::rng::rng_from_seed;
    use num_traits::ToPrimitive;

    fn challenge(n: u64, bound: u64) -> Challenge {
        Challenge { n: BigUint::from(n), smooth_bound: bound }
    }

    fn claim(a: u64, b: u64) -> WitnessClaim {
        WitnessClaim { a: BigUint::from(a), b: BigUint::from(b) }
    }

    #[test]
    fn challenge_wire_format() {
        let c = challenge(100, 3);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"n":"100","smooth_bound":"3"}"#);
        let parsed: Challenge = serde_json::from_str(r#"{"n":"100","smooth_bound":"3"}"#).unwrap();
        assert_eq!(parsed, c);
        assert!(serde_json::from_str::<Challenge>(r#"{"n":"x","smooth_bound":"3"}"#).is_err());
        assert!(serde_json::from_str::<Challenge>(r#"{"n":100,"smooth_bound":"3"}"#).is_err());
    }

    #[test]
    fn witness_wire_format() {
        let w = claim(96, 4);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"a":"96","b":"4"}"#);
        let parsed: WitnessClaim = serde_json::from_str(r#"{"a":"96","b":"4"}"#).unwrap();
        assert_eq!(parsed, w);
    }

    #[test]
    fn default_bound_anchors() {
        // (log2 100)^2 = 44.1..., largest prime below is 43
        assert_eq!(default_smooth_bound(&BigUint::from(100u8)).unwrap(), 43);
        assert_eq!(default_smooth_bound(&BigUint::from(2u8)).unwrap(), 2);
        assert!(default_smooth_bound(&BigUint::one()).is_err());
    }

    #[test]
    fn forward_roundtrip() {
        for seed in 0..50 {
            let mut rng = rng_from_seed(seed);
            let (c, w) = forward(16, 7, &mut rng).unwrap();
            assert!(verify(&c, &w), "seed {seed}");
            assert!(w.a.bits() >= 16 && w.a.bits() <= 19, "seed {seed}: {} bits", w.a.bits());
            assert!(w.b.bits() >= 16 && w.b.bits() <= 19);
            assert!(w.a_factorization.max_prime().unwrap() <= 7);
            assert!(w.b_factorization.max_prime().unwrap() <= 7);
        }
    }

    #[test]
    fn forward_is_deterministic() {
        let first = forward(32, 13, &mut rng_from_seed(4)).unwrap();
        let second = forward(32, 13, &mut rng_from_seed(4)).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn forward_validation() {
        assert!(forward(7, 7, &mut rng_from_seed(0)).is_err());
        assert!(forward(16, 2, &mut rng_from_seed(0)).is_err());
        assert!(forward(2_000_000, 7, &mut rng_from_seed(0)).is_err());
    }

    #[test]
    fn verify_anchors() {
        let c = challenge(100, 3);
        let good = assemble_witness(&c, &claim(96, 4)).unwrap().unwrap();
        assert!(verify(&c, &good));
        // 50 has the factor 5
        assert!(assemble_witness(&c, &claim(50, 50)).unwrap().is_none());
        // 5 is not 3-smooth either, so this claim never assembles
        assert!(assemble_witness(&c, &claim(96, 5)).unwrap().is_none());
        // valid parts against the wrong sum
        let mismatched = assemble_witness(&challenge(101, 3), &claim(96, 4)).unwrap().unwrap();
        assert!(!verify(&challenge(101, 3), &mismatched));
        // tampered value no longer matches its factorization
        let mut tampered = good.clone();
        tampered.a = BigUint::from(95u8);
        tampered.b = BigUint::from(5u8);
        assert!(!verify(&c, &tampered));
        assert!(assemble_witness(&c, &claim(0, 100)).unwrap().is_none());
    }

    #[test]
    fn solve_anchors() {
        let found = solve_bruteforce(&challenge(100, 3), 100).unwrap().unwrap();
        assert_eq!(found.a.to_u64(), Some(4));
        assert_eq!(found.b.to_u64(), Some(96));
        assert!(verify(&challenge(100, 3), &found));
        assert!(solve_bruteforce(&challenge(23, 3), 100).unwrap().is_none());
        // 4 is the fourth smooth candidate, so a budget of 3 runs out first
        assert!(matches!(
            solve_bruteforce(&challenge(100, 3), 3),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(solve_bruteforce(&challenge(100, 3), 4).unwrap().is_some());
        assert!(solve_bruteforce(&challenge(2, 3), 10).unwrap().is_some());
        assert!(solve_bruteforce(&challenge(1, 3), 10).is_err());
        assert!(solve_bruteforce(&challenge(100, 3), 0).is_err());
    }

    #[test]
    fn solver_inverts_forward_outputs() {
        for seed in 0..10 {
            let mut rng = rng_from_seed(seed);
            let (c, _) = forward(16, 7, &mut rng).unwrap();
            let w = solve_bruteforce(&c, 100_000).unwrap().expect("toy challenges are solvable");
            assert!(verify(&c, &w), "seed {seed}");
        }
    }

    #[test]
    fn solver_presence_matches_two_term_search() {
        let basis = PrimeBasis::first(2).unwrap();
        for n in 2..=2000u64 {
            let solved = solve_bruteforce(&challenge(n, 3), 10_000).unwrap().is_some();
            let two_terms = min_terms(&BigUint::from(n), &basis, 2).unwrap().is_some();
            assert_eq!(solved, two_terms, "n = {n}");
        }
    }

    #[test]
    fn witness_claim_from_witness() {
        let c = challenge(100, 3);
        let w = assemble_witness(&c, &claim(96, 4)).unwrap().unwrap();
        let back = WitnessClaim::from(&w);
        assert_eq!(back, claim(96, 4));
    }
}
