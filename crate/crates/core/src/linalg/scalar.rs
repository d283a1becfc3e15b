use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Parses `"p/q"` or `"p"` (optional leading `-` or `+` on the numerator).
pub fn parse_scalar(text: &str) -> Result<Scalar, LinalgError> {
    let bad = || LinalgError::ParseScalar(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    if den.starts_with(['-', '+']) {
        return Err(bad());
    }
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}
