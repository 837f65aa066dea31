//! Independent reconstruction of the elliptic families from their generating
//! functions, compared coefficient by coefficient with the recurrence engine.
//!
//! With `s(z) = 1 − 2cz² + z⁴`:
//!
//! - `P₋₄(c, z) = z √s ∫ (4cz² − 1) z⁻² s^{−3/2} dz`
//! - `P₋₂(c, z) = z √s ∫ s^{−3/2} dz`
//!
//! and the first integral also equals
//! `Σ 4c Cₙ^(3/2) z^{2n+1}/(2n+1) − Σ Cₙ^(3/2) z^{2n−1}/(2n−1)`.

use serde::Serialize;

use crate::exact::{int, rat, LaurentSeries, RationalPoly};
use crate::families::{gegenbauer_sequence, FamilyId, PolynomialFamily};
use crate::par::Execution;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub family: FamilyId,
    /// Coefficients of `z⁰ ..= z^truncation` are known and compared.
    pub truncation: i64,
    pub series: LaurentSeries,
    /// Multiple of `z √s` added to cancel the `z¹` coefficient.
    pub kappa: RationalPoly,
    pub matched: bool,
    pub first_mismatch: Option<i64>,
}

/// `1 − 2cz² + z⁴`, exact (known far beyond any truncation we use).
fn quartic(truncation: i64) -> LaurentSeries {
    LaurentSeries::from_terms(
        &[
            (0, RationalPoly::one()),
            (2, RationalPoly::var().scale(&int(-2))),
            (4, RationalPoly::one()),
        ],
        truncation,
    )
}

/// `z √s`, known through `z^n`.
fn z_sqrt_s(n: i64) -> Result<LaurentSeries> {
    Ok(quartic(n).sqrt()?.shift(1).truncate(n))
}

/// Multiplies the antiderivative by `z √s` and cancels the `z¹` term.
fn finish(antiderivative: &LaurentSeries, n: i64) -> Result<(LaurentSeries, RationalPoly)> {
    let zs = z_sqrt_s(n + 1)?;
    let product = antiderivative.mul(&zs).truncate(n);
    let kappa = -product.coeff(1).cloned().unwrap_or_default();
    let adjusted = product.add(&zs.scale(&kappa).truncate(n));
    Ok((adjusted, kappa))
}

fn compare(family: FamilyId, n: i64, series: LaurentSeries, kappa: RationalPoly) -> OracleResult {
    let fam = PolynomialFamily::generate(family, n.max(0) as usize);
    let reference = LaurentSeries::new(0, fam.shifted()[..=n as usize].to_vec(), n);
    let first_mismatch = series.first_difference(&reference);
    OracleResult {
        family,
        truncation: n,
        matched: first_mismatch.is_none(),
        series,
        kappa,
        first_mismatch,
    }
}

/// The integrand `(4cz² − 1) z⁻² s^{−3/2}`, known through `z^{n−2}`.
pub fn elliptic1_integrand(n: i64) -> Result<LaurentSeries> {
    let front = LaurentSeries::from_terms(
        &[(-2, -RationalPoly::one()), (0, RationalPoly::var().scale(&int(4)))],
        n + 2,
    );
    Ok(front.mul(&quartic(n).pow_neg_3_2()?).truncate(n - 2))
}

/// `P₋₄(c, z)` through `z^n` from the elliptic integral.
pub fn expand_elliptic1(n: i64) -> Result<OracleResult> {
    let integral = elliptic1_integrand(n)?.integrate()?;
    let (series, kappa) = finish(&integral, n)?;
    Ok(compare(FamilyId::P4, n, series, kappa))
}

/// `P₋₂(c, z)` through `z^n` from the elliptic integral.
pub fn expand_elliptic2(n: i64) -> Result<OracleResult> {
    let integral = quartic(n).pow_neg_3_2()?.truncate(n - 2).integrate()?;
    let (series, kappa) = finish(&integral, n)?;
    debug_assert!(series.terms().all(|(e, c)| e % 2 == 0 || c.is_zero()));
    Ok(compare(FamilyId::P2, n, series, kappa))
}

/// `P₋₄(c, z)` through `z^n` from the Gegenbauer sums.
pub fn expand_gegenbauer_sum(n: i64) -> Result<OracleResult> {
    let top = n - 1;
    let count = ((top + 1) / 2).max(0) as usize;
    let q = gegenbauer_sequence(&rat(3, 2), count);
    let c4 = RationalPoly::var().scale(&int(4));
    let mut terms = Vec::new();
    for (m, qm) in q.iter().enumerate() {
        let m = m as i64;
        if 2 * m < top {
            terms.push((2 * m + 1, (&c4 * qm).scale(&rat(1, 2 * m + 1))));
        }
        if 2 * m - 1 <= top {
            terms.push((2 * m - 1, qm.scale(&rat(-1, 2 * m - 1))));
        }
    }
    let bracket = LaurentSeries::from_terms(&terms, top);
    let (series, kappa) = finish(&bracket, n)?;
    Ok(compare(FamilyId::P4, n, series, kappa))
}

/// All three expansions, concurrently when parallel.
pub fn expand_all(n: i64, exec: Execution) -> Result<[OracleResult; 3]> {
    let (a, (b, c)) = exec.join(
        || expand_elliptic1(n),
        || exec.join(|| expand_elliptic2(n), || expand_gegenbauer_sum(n)),
    );
    Ok([a?, b?, c?])
}

/// Checks `(z⁵ − 2cz³ + z) P′ − (3z⁴ − 4cz² + 1) P
///        = 2(P₋₁ + cP₋₃) z³ + P₋₂ z² + (4cz² − 1) P₋₄`
/// through `z^n`, where `P = Σ Sₖ zᵏ` is the family's shifted generating series
/// and the right side uses that family's initial constants.
pub fn check_funde(n: i64, family: FamilyId) -> bool {
    let fam = PolynomialFamily::generate(family, n.max(0) as usize);
    funde_holds(&fam, family, n)
}

/// The same check for `series_of`'s generating series against the initial
/// constants of `initial`.
fn funde_holds(series_of: &PolynomialFamily, initial: FamilyId, n: i64) -> bool {
    let p = LaurentSeries::new(0, series_of.shifted()[..=n as usize].to_vec(), n);
    let c = RationalPoly::var();
    let big = n + 8;
    let left_factor = LaurentSeries::from_terms(
        &[
            (1, RationalPoly::one()),
            (3, c.scale(&int(-2))),
            (5, RationalPoly::one()),
        ],
        big,
    );
    let right_factor = LaurentSeries::from_terms(
        &[
            (0, RationalPoly::one()),
            (2, c.scale(&int(-4))),
            (4, RationalPoly::constant(int(3))),
        ],
        big,
    );
    let lhs = left_factor.mul(&p.derivative()).sub(&right_factor.mul(&p)).truncate(n);

    let [p4, p3, p2, p1] = [FamilyId::P4, FamilyId::P3, FamilyId::P2, FamilyId::P1].map(|id| {
        if id == initial {
            RationalPoly::one()
        } else {
            RationalPoly::zero()
        }
    });
    let rhs = LaurentSeries::from_terms(
        &[
            (3, (&p1 + &(&c * &p3)).scale(&int(2))),
            (2, p2),
            (2, c.scale(&int(4)) * &p4),
            (0, -p4),
        ],
        n,
    );
    lhs == rhs
}
