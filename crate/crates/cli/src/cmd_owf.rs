use num_bigint::BigUint;
use serde_json::json;
use smoothsum::owf::{
    assemble_witness, default_smooth_bound, forward as owf_forward, solve_bruteforce,
    verify as owf_verify,
};
use smoothsum::rng::rng_from_seed;
use smoothsum::{Challenge, PrimeBasis, Result, WitnessClaim};

use crate::out::Output;

/// Default bound for `forward`, where only the target bit size is known:
/// the largest prime not exceeding the square of the bit size, mirroring
/// how the per-challenge default scales with the size of the target.
fn forward_default_bound(bits: u64) -> Result<u64> {
    let cap = bits.saturating_mul(bits).clamp(2, 50_000_000);
    Ok(PrimeBasis::with_bound(cap)?.largest())
}

pub fn forward(bits: u64, bound: Option<u64>, seed: u64) -> Result<Output> {
    let bound = match bound {
        Some(b) => b,
        None => forward_default_bound(bits)?,
    };
    let (challenge, witness) = owf_forward(bits, bound, &mut rng_from_seed(seed))?;
    let claim = WitnessClaim::from(&witness);
    Ok(Output::new(json!({
        "target_bits": bits,
        "smooth_bound": bound,
        "challenge": serde_json::to_value(&challenge).expect("challenge serializes"),
        "witness": serde_json::to_value(&claim).expect("claim serializes"),
    })))
}

pub fn verify(n: BigUint, a: BigUint, b: BigUint, bound: Option<u64>) -> Result<Output> {
    let bound = match bound {
        Some(v) => v,
        None => default_smooth_bound(&n)?,
    };
    let challenge = Challenge { n: n.clone(), smooth_bound: bound };
    let claim = WitnessClaim { a: a.clone(), b: b.clone() };
    let verified = match assemble_witness(&challenge, &claim)? {
        Some(witness) => owf_verify(&challenge, &witness),
        None => false,
    };
    Ok(Output::new(json!({
        "n": n.to_string(),
        "smooth_bound": bound,
        "a": a.to_string(),
        "b": b.to_string(),
        "verified": verified,
    })))
}

pub fn solve(n: BigUint, bound: Option<u64>, budget: u64) -> Result<Output> {
    let bound = match bound {
        Some(v) => v,
        None => default_smooth_bound(&n)?,
    };
    let challenge = Challenge { n: n.clone(), smooth_bound: bound };
    let witness = solve_bruteforce(&challenge, budget)?;
    Ok(Output::new(json!({
        "n": n.to_string(),
        "smooth_bound": bound,
        "budget": budget,
        "found": witness.is_some(),
        "a": witness.as_ref().map(|w| w.a.to_string()),
        "b": witness.as_ref().map(|w| w.b.to_string()),
    })))
}
