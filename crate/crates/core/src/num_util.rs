//! Floating-point views of big integers.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Natural log of a positive big integer.
///
/// Uses the top 53 bits as a mantissa, so the result is accurate to within a
/// few ulps regardless of magnitude.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let mantissa = (x >> shift).to_f64().expect("53 bits fit in f64");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Base-2 log of a positive big integer.
pub(crate) fn log2_biguint(x: &BigUint) -> f64 {
    ln_biguint(x) / std::f64::consts::LN_2
}

/// `a / b` as f64 for positive big integers of any size.
pub(crate) fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    (ln_biguint(a) - ln_biguint(b)).exp()
}
