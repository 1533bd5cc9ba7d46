use serde_json::json;
use smoothsum::partitions::{log_partition_estimate, partition_count, partition_count_oracle};
use smoothsum::Result;

use crate::out::Output;

pub fn count(n: u64) -> Result<Output> {
    let p = partition_count(n)?;
    Ok(Output::new(json!({ "n": n, "p": p.to_string() })))
}

pub fn oracle(n: u64) -> Result<Output> {
    let p = partition_count_oracle(n)?;
    Ok(Output::new(json!({ "n": n, "p": p.to_string() })))
}

pub fn estimate(n: u64) -> Result<Output> {
    let estimate = log_partition_estimate(n)?;
    Ok(Output::new(json!({ "n": n, "log_p_estimate": estimate })))
}
