use num_bigint::BigUint;
use serde_json::{json, Value};
use smoothsum::primality::{
    fermat_pseudoprimes, fibonacci_pseudoprimes, fibonacci_test, is_probable_prime,
};
use smoothsum::rng::rng_from_seed;
use smoothsum::{PrimalityPolicy, PrimalityVerdict, Result};

use crate::out::Output;

fn verdict_fields(verdict: &PrimalityVerdict) -> (Value, Value, Value) {
    match verdict {
        PrimalityVerdict::ProbablePrime { rounds } => {
            (json!("probable-prime"), json!(rounds), Value::Null)
        }
        PrimalityVerdict::Composite { witness } => (
            json!("composite"),
            Value::Null,
            witness.as_ref().map_or(Value::Null, |w| json!(w.to_string())),
        ),
    }
}

pub fn test(n: &BigUint, rounds: u32, no_trial_division: bool, fib: bool, seed: u64) -> Result<Output> {
    let policy = PrimalityPolicy {
        trial_division_primes: if no_trial_division { 0 } else { 100 },
        mr_rounds: rounds,
        fibonacci_screen: fib,
    };
    let verdict = is_probable_prime(n, &policy, &mut rng_from_seed(seed))?;
    let (label, rounds_run, witness) = verdict_fields(&verdict);
    Ok(Output::new(json!({
        "n": n.to_string(),
        "rounds": rounds,
        "trial_division": !no_trial_division,
        "fibonacci_screen": fib,
        "verdict": label,
        "rounds_run": rounds_run,
        "witness": witness,
    })))
}

pub fn fib(n: &BigUint) -> Result<Output> {
    let verdict = fibonacci_test(n)?;
    let (label, _, _) = verdict_fields(&verdict);
    Ok(Output::new(json!({
        "n": n.to_string(),
        "verdict": label,
    })))
}

pub fn pseudoprime_scan(limit: u64, base: u64) -> Result<Output> {
    let fermat = fermat_pseudoprimes(limit, base)?;
    let fibonacci = fibonacci_pseudoprimes(limit)?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for v in &fermat {
        rows.push(vec!["fermat".into(), v.to_string()]);
    }
    for v in &fibonacci {
        rows.push(vec!["fibonacci".into(), v.to_string()]);
    }
    let fields = json!({
        "limit": limit,
        "fermat_base": base,
        "fermat_count": fermat.len(),
        "smallest_fermat": fermat.first(),
        "fermat": fermat,
        "fibonacci_count": fibonacci.len(),
        "smallest_fibonacci": fibonacci.first(),
        "fibonacci": fibonacci,
    });
    Ok(Output::with_table(fields, &["screen", "value"], rows))
}
