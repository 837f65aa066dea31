use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::ZERO_POLY;
use super::{int, rat, Rational, RationalPoly};
use crate::{Error, Result};

/// Truncated Laurent series `Σ aₖ zᵏ` with polynomial coefficients `aₖ ∈ Q[c]`.
///
/// Coefficients are known for `lowest_order ..= truncation_order`; everything
/// below `lowest_order` is zero and everything above `truncation_order` is
/// unknown. Binary operations never claim more than both inputs justify.
#[derive(Clone)]
pub struct LaurentSeries {
    lowest_order: i64,
    coeffs: Vec<RationalPoly>,
    truncation_order: i64,
}

impl LaurentSeries {
    /// Builds a series from `coeffs[i] = a_{lowest + i}`, padding with zeros or
    /// dropping terms so that exactly `lowest ..= truncation` is stored.
    pub fn new(lowest_order: i64, mut coeffs: Vec<RationalPoly>, truncation_order: i64) -> Self {
        let len = (truncation_order - lowest_order + 1).max(0) as usize;
        coeffs.resize(len, RationalPoly::zero());
        Self {
            lowest_order,
            coeffs,
            truncation_order: truncation_order.max(lowest_order - 1),
        }
    }

    pub fn zero(truncation_order: i64) -> Self {
        Self::new(0, Vec::new(), truncation_order)
    }

    pub fn one(truncation_order: i64) -> Self {
        Self::new(0, vec![RationalPoly::one()], truncation_order)
    }

    /// A finite sum `Σ coeff · z^exp`, known exactly through `truncation_order`.
    pub fn from_terms(terms: &[(i64, RationalPoly)], truncation_order: i64) -> Self {
        let lowest = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let mut out = Self::new(lowest, Vec::new(), truncation_order);
        for (e, c) in terms {
            if *e <= truncation_order {
                let slot = (*e - lowest) as usize;
                out.coeffs[slot] += c;
            }
        }
        out
    }

    pub fn lowest_order(&self) -> i64 {
        self.lowest_order
    }

    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    /// Coefficient of `z^k`; `None` when `k` lies beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<&RationalPoly> {
        if k > self.truncation_order {
            None
        } else if k < self.lowest_order {
            Some(&ZERO_POLY)
        } else {
            Some(&self.coeffs[(k - self.lowest_order) as usize])
        }
    }

    /// `(exponent, coefficient)` for every stored term, zero or not.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RationalPoly)> + '_ {
        let lo = self.lowest_order;
        self.coeffs.iter().enumerate().map(move |(i, c)| (lo + i as i64, c))
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().find(|(_, c)| !c.is_zero()).map(|(e, _)| e)
    }

    pub fn truncate(&self, truncation_order: i64) -> Self {
        let t = truncation_order.min(self.truncation_order);
        Self::new(self.lowest_order, self.coeffs.clone(), t)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lowest_order: self.lowest_order + k,
            coeffs: self.coeffs.clone(),
            truncation_order: self.truncation_order + k,
        }
    }

    pub fn scale(&self, k: &RationalPoly) -> Self {
        Self {
            lowest_order: self.lowest_order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            truncation_order: self.truncation_order,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(&RationalPoly, &RationalPoly) -> RationalPoly) -> Self {
        let lo = self.lowest_order.min(other.lowest_order);
        let t = self.truncation_order.min(other.truncation_order);
        let coeffs = (lo..=t)
            .map(|k| op(self.coeff(k).unwrap(), other.coeff(k).unwrap()))
            .collect();
        Self::new(lo, coeffs, t)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lowest_order + other.lowest_order;
        let t = (self.truncation_order + other.lowest_order).min(other.truncation_order + self.lowest_order);
        let len = (t - lo + 1).max(0) as usize;
        let mut coeffs = vec![RationalPoly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Self::new(lo, coeffs, t)
    }

    /// Termwise `d/dz`.
    pub fn derivative(&self) -> Self {
        let coeffs = self.terms().map(|(e, c)| c.scale(&int(e))).collect();
        Self::new(self.lowest_order - 1, coeffs, self.truncation_order - 1)
    }

    /// Termwise antiderivative with integration constant zero.
    pub fn integrate(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.terms() {
            if e == -1 {
                if !c.is_zero() {
                    return Err(Error::ResidueNonzero);
                }
                coeffs.push(RationalPoly::zero());
            } else {
                coeffs.push(c.div_scalar(&int(e + 1))?);
            }
        }
        Ok(Self::new(self.lowest_order + 1, coeffs, self.truncation_order + 1))
    }

    /// `s^alpha` for a series whose valuation is zero with leading coefficient 1,
    /// via the power recurrence `n rₙ = Σₖ ((α+1)k − n) sₖ rₙ₋ₖ`.
    fn pow_unit(&self, alpha: &Rational) -> Self {
        debug_assert_eq!(self.valuation(), Some(0));
        let t = self.truncation_order;
        if t < 0 {
            return Self::zero(t);
        }
        let s: Vec<&RationalPoly> = (0..=t).map(|k| self.coeff(k).unwrap()).collect();
        let a1 = alpha + Rational::one();
        let mut r: Vec<RationalPoly> = Vec::with_capacity(s.len());
        r.push(RationalPoly::one());
        for n in 1..s.len() {
            let mut acc = RationalPoly::zero();
            for k in 1..=n {
                if s[k].is_zero() || r[n - k].is_zero() {
                    continue;
                }
                let w = &a1 * int(k as i64) - int(n as i64);
                if w.is_zero() {
                    continue;
                }
                acc += &(s[k] * &r[n - k]).scale(&w);
            }
            r.push(acc.scale(&rat(1, n as i64)));
        }
        Self::new(0, r, t)
    }

    /// Splits off `z^v` where `v` is the valuation, requiring leading coefficient 1.
    fn unit_part(&self) -> Result<(i64, Self)> {
        let v = self.valuation().ok_or(Error::NotSquare)?;
        if !self.coeff(v).unwrap().coeffs().eq(&[Rational::one()]) {
            return Err(Error::NotSquare);
        }
        let unit = Self::new(
            0,
            self.coeffs[(v - self.lowest_order) as usize..].to_vec(),
            self.truncation_order - v,
        );
        Ok((v, unit))
    }

    /// Square root with positive leading coefficient. Requires even valuation
    /// and leading coefficient exactly 1.
    pub fn sqrt(&self) -> Result<Self> {
        let (v, unit) = self.unit_part()?;
        if v % 2 != 0 {
            return Err(Error::NotSquare);
        }
        Ok(unit.pow_unit(&rat(1, 2)).shift(v / 2))
    }

    /// `s^(-3/2)` for a series with constant term 1 at order 0.
    pub fn pow_neg_3_2(&self) -> Result<Self> {
        let (v, unit) = self.unit_part()?;
        if v != 0 {
            return Err(Error::NotSquare);
        }
        Ok(unit.pow_unit(&rat(-3, 2)))
    }

    /// Index of the first exponent at which `self` and `other` disagree, over the
    /// range known to both.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let lo = self.lowest_order.min(other.lowest_order);
        let t = self.truncation_order.min(other.truncation_order);
        (lo..=t).find(|&k| self.coeff(k) != other.coeff(k))
    }
}

/// Equal when the truncations agree and every known coefficient matches,
/// regardless of how many leading zeros are stored.
impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.truncation_order == other.truncation_order && self.first_difference(other).is_none()
    }
}

impl Eq for LaurentSeries {}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*z^{e}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.truncation_order + 1)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    lowest_order: i64,
    truncation_order: i64,
    coeffs: Vec<RationalPoly>,
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            lowest_order: self.lowest_order,
            truncation_order: self.truncation_order,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.truncation_order < raw.lowest_order - 1 {
            return Err(serde::de::Error::custom("truncation_order below lowest_order - 1"));
        }
        Ok(Self::new(raw.lowest_order, raw.coeffs, raw.truncation_order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> RationalPoly {
        RationalPoly::var()
    }

    fn k(n: i64, d: i64) -> RationalPoly {
        RationalPoly::constant(rat(n, d))
    }

    /// 1 - 2c z^2 + z^4
    fn quartic(t: i64) -> LaurentSeries {
        LaurentSeries::from_terms(&[(0, k(1, 1)), (2, c().scale(&int(-2))), (4, k(1, 1))], t)
    }

    #[test]
    fn sqrt_of_quartic_matches_binomial_series() {
        let r = quartic(5).sqrt().unwrap();
        assert_eq!(r.truncation_order(), 5);
        // binomial oracle: 1 + a/2 - a^2/8 with a = -2c z^2 + z^4
        // z^2: -c ; z^4: 1/2 - (4c^2)/8 = (1 - c^2)/2
        assert_eq!(r.coeff(0).unwrap(), &RationalPoly::one());
        assert_eq!(r.coeff(2).unwrap(), &c().scale(&int(-1)));
        assert_eq!(
            r.coeff(4).unwrap(),
            &RationalPoly::from_coeffs(vec![rat(1, 2), rat(0, 1), rat(-1, 2)])
        );
        assert!(r.coeff(1).unwrap().is_zero() && r.coeff(3).unwrap().is_zero());
        assert!(r.coeff(6).is_none());
    }

    #[test]
    fn sqrt_identity_and_errors() {
        assert_eq!(LaurentSeries::one(8).sqrt().unwrap(), LaurentSeries::one(8));
        let odd = LaurentSeries::from_terms(&[(1, k(1, 1))], 6);
        assert_eq!(odd.sqrt(), Err(Error::NotSquare));
        let two = LaurentSeries::from_terms(&[(0, k(2, 1))], 6);
        assert_eq!(two.sqrt(), Err(Error::NotSquare));
        // z^2 (1 + z) has square root z (1 + z/2 - ...)
        let shifted = LaurentSeries::from_terms(&[(2, k(1, 1)), (3, k(1, 1))], 8);
        let r = shifted.sqrt().unwrap();
        assert_eq!(r.lowest_order(), 1);
        assert_eq!(r.coeff(2).unwrap(), &k(1, 2));
        assert_eq!(r.mul(&r).first_difference(&shifted), None);
    }

    #[test]
    fn pow_neg_3_2_leading_terms() {
        let r = quartic(3).pow_neg_3_2().unwrap();
        assert_eq!(r.coeff(0).unwrap(), &RationalPoly::one());
        assert_eq!(r.coeff(2).unwrap(), &c().scale(&int(3)));
        assert_eq!(LaurentSeries::one(4).pow_neg_3_2().unwrap(), LaurentSeries::one(4));
        let shifted = LaurentSeries::from_terms(&[(2, k(1, 1))], 8);
        assert_eq!(shifted.pow_neg_3_2(), Err(Error::NotSquare));
    }

    #[test]
    fn integrate_power_rule() {
        let z2 = LaurentSeries::from_terms(&[(2, k(1, 1))], 10);
        let i = z2.integrate().unwrap();
        assert_eq!(i.coeff(3).unwrap(), &k(1, 3));
        assert_eq!(i.truncation_order(), 11);

        let m = LaurentSeries::from_terms(&[(-2, k(-1, 1))], 10);
        let i = m.integrate().unwrap();
        assert_eq!(i.coeff(-1).unwrap(), &k(1, 1));

        let r = LaurentSeries::from_terms(&[(-1, k(1, 1))], 10);
        assert_eq!(r.integrate(), Err(Error::ResidueNonzero));
    }

    #[test]
    fn truncation_propagates_to_minimum() {
        let a = quartic(10);
        let b = quartic(6);
        assert_eq!(a.add(&b).truncation_order(), 6);
        assert_eq!(a.mul(&b).truncation_order(), 6);
        let zinv = LaurentSeries::from_terms(&[(-1, k(1, 1))], 100);
        // (z^-1 + O(z^101)) * (... + O(z^7)) is only known through z^6
        assert_eq!(zinv.mul(&b).truncation_order(), 5);
        assert_eq!(b.derivative().truncation_order(), 5);
    }

    #[test]
    fn json_roundtrip() {
        let s = quartic(6);
        let js = serde_json::to_value(&s).unwrap();
        assert_eq!(js["lowest_order"], 0);
        assert_eq!(js["truncation_order"], 6);
        let back: LaurentSeries = serde_json::from_value(js).unwrap();
        assert_eq!(back, s);
    }
}
