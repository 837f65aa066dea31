//! Exact arithmetic foundation.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. [`RationalPoly`] is a dense univariate polynomial in
//! `c` over rationals and [`LaurentSeries`] a truncated Laurent series in `z`
//! whose coefficients are such polynomials.

mod poly;
mod series;

pub use poly::RationalPoly;
pub use series::LaurentSeries;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64`; values outside the `f64` range saturate to infinity.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub(crate) fn rational_to_strings(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub(crate) fn rational_from_strings(pair: &[String; 2]) -> crate::Result<Rational> {
    let parse = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|e| crate::Error::Malformed(format!("bad integer {s:?}: {e}")))
    };
    let num = parse(&pair[0])?;
    let den = parse(&pair[1])?;
    if den.sign() != num_bigint::Sign::Plus {
        return Err(crate::Error::Malformed(format!(
            "denominator must be positive, got {den}"
        )));
    }
    Ok(Rational::new(num, den))
}

/// Serializes a rational sequence as `[["num", "den"], ...]`, the same
/// encoding polynomial coefficients use.
pub fn serialize_rationals<S: serde::Serializer>(
    values: &[Rational],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&rational_to_strings(v))?;
    }
    seq.end()
}
