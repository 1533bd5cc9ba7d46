use num_bigint::BigUint;
use serde_json::json;
use smoothsum::repr::{
    anti_goldbach_split, default_bound_schedule, greedy_decompose, min_terms,
    smallest_unrepresentable, sparsity_profile,
};
use smoothsum::{PrimeBasis, Result};

use crate::out::Output;

fn term_strings(terms: &[BigUint]) -> Vec<String> {
    terms.iter().map(|t| t.to_string()).collect()
}

pub fn greedy(s: usize, n: &BigUint) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let decomposition = greedy_decompose(n, &basis)?;
    Ok(Output::new(json!({
        "s": s,
        "n": n.to_string(),
        "count": decomposition.terms.len(),
        "terms": term_strings(&decomposition.terms),
    })))
}

pub fn min(s: usize, n: &BigUint, kmax: usize) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let found = min_terms(n, &basis, kmax)?;
    Ok(Output::new(json!({
        "s": s,
        "n": n.to_string(),
        "k_max": kmax,
        "found": found.is_some(),
        "k": found.as_ref().map(|(k, _)| k),
        "terms": found.as_ref().map(|(_, d)| term_strings(&d.terms)),
    })))
}

pub fn unrepresentable(s: usize, search_limit: u64, k: usize) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let value = smallest_unrepresentable(k, &basis, search_limit)?;
    Ok(Output::new(json!({
        "s": s,
        "k": k,
        "search_limit": search_limit,
        "found": value.is_some(),
        "value": value,
    })))
}

pub fn antigoldbach(n: u64) -> Result<Output> {
    let schedule = default_bound_schedule(n)?;
    let split = anti_goldbach_split(n, &schedule)?;
    Ok(Output::new(json!({
        "n": n,
        "schedule": schedule,
        "a": split.a,
        "b": split.b,
        "max_prime_factor": split.max_prime_factor,
    })))
}

pub fn sparsity(s: usize, bits: u32, samples: u64, seed: u64) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let profile = sparsity_profile(bits, samples, &basis, seed)?;
    Ok(Output::new(json!({
        "s": s,
        "bit_size": profile.bit_size,
        "samples": profile.samples,
        "mean_terms": profile.mean_terms,
        "max_terms": profile.max_terms,
        "constant_estimate": profile.constant_estimate,
        "reference_constant": profile.reference_constant,
    })))
}
