use num_bigint::BigUint;
use serde_json::json;
use smoothsum::smooth::{approx_count, count_smooth, enumerate_smooth, gap_stats};
use smoothsum::{PrimeBasis, Result};

use crate::out::Output;

pub fn enumerate(s: usize, limit: &BigUint) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let values: Vec<String> = enumerate_smooth(limit, &basis)?
        .iter()
        .map(|v| v.to_string())
        .collect();
    let fields = json!({
        "s": s,
        "limit": limit.to_string(),
        "count": values.len(),
        "values": values,
    });
    let rows = match &fields["values"] {
        serde_json::Value::Array(vs) => {
            vs.iter().map(|v| vec![v.as_str().unwrap().to_string()]).collect()
        }
        _ => unreachable!(),
    };
    Ok(Output::with_table(fields, &["value"], rows))
}

pub fn count(s: usize, limit: &BigUint) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let exact = count_smooth(limit, &basis)?;
    let approximation = (*limit >= BigUint::from(2u8))
        .then(|| approx_count(limit, &basis))
        .transpose()?;
    Ok(Output::new(json!({
        "s": s,
        "limit": limit.to_string(),
        "exact_count": exact,
        "approximation": approximation,
        "ratio": approximation.map(|a| exact as f64 / a),
    })))
}

pub fn gaps(s: usize, limit: &BigUint) -> Result<Output> {
    let basis = PrimeBasis::first(s)?;
    let records = gap_stats(limit, &basis)?;
    let max_relative = records.iter().map(|r| r.relative_gap).fold(0.0f64, f64::max);
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.lower.to_string(),
                r.upper.to_string(),
                r.gap.to_string(),
                r.relative_gap.to_string(),
            ]
        })
        .collect();
    let entries: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            json!({
                "lower": r.lower.to_string(),
                "upper": r.upper.to_string(),
                "gap": r.gap.to_string(),
                "relative_gap": r.relative_gap,
            })
        })
        .collect();
    let fields = json!({
        "s": s,
        "limit": limit.to_string(),
        "pairs": entries.len(),
        "max_relative_gap": max_relative,
        "records": entries,
    });
    Ok(Output::with_table(fields, &["lower", "upper", "gap", "relative_gap"], rows))
}
