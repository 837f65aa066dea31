//! The four polynomial families generated by the master recurrence
//!
//! ```text
//! (6 + 2k) P_k = 4kc P_{k-2} − 2(k − 3) P_{k-4},   k ≥ 0,
//! ```
//!
//! from unit initial data at one of the indices −4, −3, −2, −1. Storage is in
//! the shifted indexing `n = k + 4` (so the four initial values sit at
//! `n = 0..=3`); [`IndexView`] translates between the original, shifted, `q`
//! and `q̄` conventions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::{int, rat, Rational, RationalPoly};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    /// `P₋₄,•`: `P₋₄ = 1`, the other initial values zero.
    #[serde(rename = "P-4")]
    P4,
    #[serde(rename = "P-3")]
    P3,
    #[serde(rename = "P-2")]
    P2,
    #[serde(rename = "P-1")]
    P1,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [FamilyId::P4, FamilyId::P3, FamilyId::P2, FamilyId::P1];

    /// Original index carrying the unit initial value.
    pub fn seed_index(self) -> i64 {
        match self {
            FamilyId::P4 => -4,
            FamilyId::P3 => -3,
            FamilyId::P2 => -2,
            FamilyId::P1 => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FamilyId::P4 => "P-4",
            FamilyId::P3 => "P-3",
            FamilyId::P2 => "P-2",
            FamilyId::P1 => "P-1",
        }
    }

    /// Initial values at original indices −4, −3, −2, −1.
    pub fn initial(self) -> [RationalPoly; 4] {
        let mut init: [RationalPoly; 4] = Default::default();
        init[(self.seed_index() + 4) as usize] = RationalPoly::one();
        init
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "P-4" | "P4" => Ok(FamilyId::P4),
            "P-3" | "P3" => Ok(FamilyId::P3),
            "P-2" | "P2" => Ok(FamilyId::P2),
            "P-1" | "P1" => Ok(FamilyId::P1),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

/// Index conventions.
///
/// | view       | index  | original index | shifted index |
/// |------------|--------|----------------|---------------|
/// | `Original` | k ≥ −4 | k              | k + 4         |
/// | `Shifted`  | n ≥ 0  | n − 4          | n             |
/// | `Q`        | s ≥ −2 | 2s             | 2s + 4        |
/// | `QBar`     | n ≥ −3 | 2n + 2         | 2n + 6        |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexView {
    Original,
    Shifted,
    Q,
    #[serde(rename = "qbar")]
    QBar,
}

impl IndexView {
    pub fn min_index(self) -> i64 {
        match self {
            IndexView::Original => -4,
            IndexView::Shifted => 0,
            IndexView::Q => -2,
            IndexView::QBar => -3,
        }
    }

    pub fn to_shifted(self, index: i64) -> Option<usize> {
        if index < self.min_index() {
            return None;
        }
        let n = match self {
            IndexView::Original => index + 4,
            IndexView::Shifted => index,
            IndexView::Q => 2 * index + 4,
            IndexView::QBar => 2 * index + 6,
        };
        Some(n as usize)
    }

    pub fn label(self) -> &'static str {
        match self {
            IndexView::Original => "original",
            IndexView::Shifted => "shifted",
            IndexView::Q => "q",
            IndexView::QBar => "qbar",
        }
    }
}

impl FromStr for IndexView {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "original" => Ok(IndexView::Original),
            "shifted" => Ok(IndexView::Shifted),
            "q" => Ok(IndexView::Q),
            "qbar" => Ok(IndexView::QBar),
            other => Err(Error::InvalidParameter(format!("unknown view {other:?}"))),
        }
    }
}

/// One step of the recurrence in shifted indexing:
/// `S_{k+4} = (4kc S_{k+2} − 2(k−3) S_k) / (6 + 2k)` for `k ≥ 0`.
pub fn recurrence_step(k: i64, s_k: &RationalPoly, s_k2: &RationalPoly) -> RationalPoly {
    debug_assert!(k >= 0);
    let up = s_k2.shift(1).scale(&int(4 * k));
    let down = s_k.scale(&int(-2 * (k - 3)));
    (up + down).scale(&rat(1, 6 + 2 * k))
}

/// A family with its generated members, stored in shifted indexing.
///
/// Members are filled by [`PolynomialFamily::extend_to`]; once built the value is
/// read-only and can be shared freely between threads.
#[derive(Debug, Clone)]
pub struct PolynomialFamily {
    id: FamilyId,
    shifted: Vec<RationalPoly>,
}

impl PolynomialFamily {
    pub fn new(id: FamilyId) -> Self {
        Self {
            id,
            shifted: id.initial().to_vec(),
        }
    }

    /// Family with every member up to shifted index `max_shifted`.
    pub fn generate(id: FamilyId, max_shifted: usize) -> Self {
        let mut fam = Self::new(id);
        fam.extend_to(max_shifted);
        fam
    }

    /// Family covering `max_index` in the given view.
    pub fn generate_for(id: FamilyId, view: IndexView, max_index: i64) -> Self {
        Self::generate(id, view.to_shifted(max_index).unwrap_or(0))
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn extend_to(&mut self, max_shifted: usize) {
        while self.shifted.len() <= max_shifted {
            let n = self.shifted.len();
            let k = n as i64 - 4;
            let next = recurrence_step(k, &self.shifted[n - 4], &self.shifted[n - 2]);
            self.shifted.push(next);
        }
    }

    /// Highest shifted index generated so far.
    pub fn max_shifted(&self) -> usize {
        self.shifted.len() - 1
    }

    pub fn shifted(&self) -> &[RationalPoly] {
        &self.shifted
    }

    pub fn get(&self, view: IndexView, index: i64) -> Option<&RationalPoly> {
        self.shifted.get(view.to_shifted(index)?)
    }

    /// Original-indexing accessor, `P_{id,k}`.
    pub fn original(&self, k: i64) -> Option<&RationalPoly> {
        self.get(IndexView::Original, k)
    }

    /// Members `min_index ..= max_index` of the view (empty if `max_index` is
    /// below the view's domain or has not been generated).
    pub fn entries(&self, view: IndexView, max_index: i64) -> Vec<IndexedPoly> {
        (view.min_index()..=max_index)
            .map_while(|i| self.get(view, i).map(|p| IndexedPoly { n: i, poly: p.clone() }))
            .collect()
    }

    /// First shifted index `k + 4` at which the stored members break the
    /// recurrence, if any.
    pub fn first_recurrence_violation(&self) -> Option<usize> {
        (4..self.shifted.len()).find(|&n| {
            let k = n as i64 - 4;
            let lhs = self.shifted[n].scale(&int(6 + 2 * k));
            let rhs = self.shifted[n - 2].shift(1).scale(&int(4 * k)) - self.shifted[n - 4].scale(&int(2 * (k - 3)));
            lhs != rhs
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedPoly {
    pub n: i64,
    pub poly: RationalPoly,
}

/// Wire format for a generated table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub family: FamilyId,
    pub view: IndexView,
    pub entries: Vec<IndexedPoly>,
}

/// Members `view.min_index() ..= max_index` of a family.
pub fn generate(id: FamilyId, view: IndexView, max_index: i64) -> Vec<IndexedPoly> {
    if max_index < view.min_index() {
        return Vec::new();
    }
    PolynomialFamily::generate_for(id, view, max_index).entries(view, max_index)
}

pub fn family_table(id: FamilyId, view: IndexView, max_index: i64) -> FamilyTable {
    FamilyTable {
        family: id,
        view,
        entries: generate(id, view, max_index),
    }
}

/// Gegenbauer polynomials `C₀^(λ) ..= C_n^(λ)` from
/// `m Cₘ = 2(m+λ−1) c Cₘ₋₁ − (m+2λ−2) Cₘ₋₂`, `C₀ = 1`, `C₁ = 2λc`.
pub fn gegenbauer_sequence(lambda: &Rational, n: usize) -> Vec<RationalPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(RationalPoly::one());
    if n == 0 {
        return out;
    }
    out.push(RationalPoly::var().scale(&(lambda * int(2))));
    for m in 2..=n {
        let mi = int(m as i64);
        let a = (&mi + lambda - int(1)) * int(2);
        let b = &mi + lambda * int(2) - int(2);
        let next = out[m - 1].shift(1).scale(&a) - out[m - 2].scale(&b);
        out.push(next.scale(&(int(1) / mi)));
    }
    out
}

pub fn gegenbauer(lambda: &Rational, n: usize) -> RationalPoly {
    gegenbauer_sequence(lambda, n).pop().unwrap()
}

/// Outcome of comparing the case-3/case-4 families against `Q_n^(−1/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GegenbauerLink {
    pub n: usize,
    /// `−Q_n / (c² − 1)`, or `None` when the division is not exact.
    pub quotient: Option<RationalPoly>,
    /// `P₋₃,₂ₙ₋₃` from the recurrence.
    pub p3: RationalPoly,
    /// `P₋₁,₂ₙ₋₃` from the recurrence.
    pub p1: RationalPoly,
    /// `(c² − 1) P₋₃,₂ₙ₋₃ = −Q_n` holds.
    pub case4_matches: bool,
    /// `P₋₁,₂ₙ₋₃ = c P₋₃,₂ₙ₋₃` holds.
    pub case3_matches: bool,
}

impl GegenbauerLink {
    pub fn holds(&self) -> bool {
        self.case4_matches && self.case3_matches
    }
}

/// Checks `P₋₃,₂ₙ₋₃ = −Q_n^(−1/2)/(c²−1)` and `P₋₁,₂ₙ₋₃ = c P₋₃,₂ₙ₋₃` for one `n ≥ 2`.
///
/// `p3` and `p1` must be the `P3`/`P1` families generated through original
/// index `2n − 3`; `q` is `Q_n^(−1/2)`.
pub fn gegenbauer_link(n: usize, p3: &PolynomialFamily, p1: &PolynomialFamily, q: &RationalPoly) -> GegenbauerLink {
    assert!(n >= 2, "link is stated for n >= 2");
    assert_eq!((p3.id(), p1.id()), (FamilyId::P3, FamilyId::P1));
    let k = 2 * n as i64 - 3;
    let p3k = p3.original(k).expect("P-3 family not generated far enough").clone();
    let p1k = p1.original(k).expect("P-1 family not generated far enough").clone();
    let c2m1 = RationalPoly::from_ints(&[-1, 0, 1]);
    let quotient = (-q).exact_divide(&c2m1).ok();
    GegenbauerLink {
        n,
        case4_matches: quotient.as_ref() == Some(&p3k),
        case3_matches: p1k == p3k.shift(1),
        quotient,
        p3: p3k,
        p1: p1k,
    }
}

/// Convenience wrapper generating everything needed for a single `n`.
pub fn verify_gegenbauer_link(n: usize) -> GegenbauerLink {
    let max = 2 * n + 1;
    let p3 = PolynomialFamily::generate(FamilyId::P3, max);
    let p1 = PolynomialFamily::generate(FamilyId::P1, max);
    let q = gegenbauer(&rat(-1, 2), n);
    gegenbauer_link(n, &p3, &p1, &q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::from_coeffs(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn p4_shifted_table() {
        let got: Vec<RationalPoly> = generate(FamilyId::P4, IndexView::Shifted, 12)
            .into_iter()
            .map(|e| e.poly)
            .collect();
        let z = RationalPoly::zero;
        let expected = vec![
            RationalPoly::one(),
            z(),
            z(),
            z(),
            RationalPoly::one(),
            z(),
            poly(&[(0, 1), (4, 5)]),
            z(),
            poly(&[(-5, 35), (0, 1), (32, 35)]),
            z(),
            // (16/105) c (8c^2 - 3)
            poly(&[(0, 1), (-48, 105), (0, 1), (128, 105)]),
            z(),
            // (2048c^4 - 1248c^2 + 75)/1155; the recurrence and the
            // generating function agree on this sign
            poly(&[(75, 1155), (0, 1), (-1248, 1155), (0, 1), (2048, 1155)]),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn p2_shifted_table() {
        let fam = PolynomialFamily::generate(FamilyId::P2, 12);
        let want = [
            (2, poly(&[(1, 1)])),
            (6, poly(&[(1, 5)])),
            (8, poly(&[(0, 1), (8, 35)])),
            (10, poly(&[(-7, 105), (0, 1), (32, 105)])),
            (12, poly(&[(0, 1), (-232, 1155), (0, 1), (512, 1155)])),
        ];
        for n in 0..=12 {
            let expected = want
                .iter()
                .find(|(i, _)| *i == n)
                .map(|(_, p)| p.clone())
                .unwrap_or_default();
            assert_eq!(fam.shifted()[n], expected, "n = {n}");
        }
    }

    #[test]
    fn original_view_single_seed() {
        let e = generate(FamilyId::P4, IndexView::Original, -4);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].n, -4);
        assert_eq!(e[0].poly, RationalPoly::one());
        assert!(generate(FamilyId::P4, IndexView::Shifted, -1).is_empty());
    }

    #[test]
    fn views_agree() {
        let fam = PolynomialFamily::generate(FamilyId::P2, 40);
        for n in 0..10 {
            assert_eq!(fam.get(IndexView::Shifted, n + 4), fam.get(IndexView::Original, n));
            assert_eq!(fam.get(IndexView::Q, n), fam.get(IndexView::Original, 2 * n));
            assert_eq!(fam.get(IndexView::QBar, n), fam.get(IndexView::Q, n + 1));
        }
        assert_eq!(fam.get(IndexView::Original, -5), None);
        assert_eq!(fam.get(IndexView::Shifted, 41), None);
    }

    #[test]
    fn boxed_q_values() {
        let p4 = PolynomialFamily::generate(FamilyId::P4, 12);
        let q = |s| p4.get(IndexView::Q, s).unwrap().clone();
        assert_eq!(q(-2), RationalPoly::one());
        assert!(q(-1).is_zero());
        assert_eq!(q(0), RationalPoly::one());
        assert_eq!(q(1), poly(&[(0, 1), (4, 5)]));
        assert_eq!(q(2), poly(&[(-5, 35), (0, 1), (32, 35)]));

        let p2 = PolynomialFamily::generate(FamilyId::P2, 14);
        let qb = |n| p2.get(IndexView::QBar, n).unwrap().clone();
        assert_eq!(qb(0), poly(&[(1, 5)]));
        assert_eq!(qb(1), poly(&[(0, 1), (8, 35)]));
        assert_eq!(qb(2), poly(&[(-7, 105), (0, 1), (32, 105)]));
        assert_eq!(qb(3), poly(&[(0, 1), (-232, 1155), (0, 1), (512, 1155)]));
        // ignored leading members q̄_{-1} = q_0 = 0, q̄_{-2} = q_{-1} = 1
        assert!(qb(-1).is_zero());
        assert_eq!(qb(-2), RationalPoly::one());
    }

    #[test]
    fn recurrence_and_parity_hold() {
        for id in FamilyId::ALL {
            let fam = PolynomialFamily::generate(id, 80);
            assert_eq!(fam.first_recurrence_violation(), None, "{id}");
            for k in 0..=74i64 {
                let p = fam.original(k).unwrap();
                let zero_expected = match id {
                    FamilyId::P4 | FamilyId::P2 => k % 2 != 0,
                    FamilyId::P3 | FamilyId::P1 => k % 2 == 0,
                };
                if zero_expected {
                    assert!(p.is_zero(), "{id} k={k}");
                    continue;
                }
                if p.is_zero() {
                    // q_0 = 0 in the P-2 family
                    assert_eq!((id, k), (FamilyId::P2, 0));
                    continue;
                }
                // parity in c flips with every step of two in k
                assert!(p.is_even() != p.is_odd(), "{id} k={k}");
                let next = fam.original(k + 2).unwrap();
                if !next.is_zero() {
                    assert_ne!(p.is_even(), next.is_even(), "{id} k={k}");
                }
            }
        }
    }

    #[test]
    fn q_and_qbar_degrees() {
        let p4 = PolynomialFamily::generate(FamilyId::P4, 130);
        let p2 = PolynomialFamily::generate(FamilyId::P2, 130);
        for n in 0..60 {
            assert_eq!(p4.get(IndexView::Q, n).unwrap().degree(), Some(n as usize));
            assert_eq!(p2.get(IndexView::QBar, n).unwrap().degree(), Some(n as usize));
        }
    }

    #[test]
    fn gegenbauer_small_cases() {
        assert_eq!(gegenbauer(&rat(3, 2), 0), RationalPoly::one());
        assert_eq!(gegenbauer(&rat(3, 2), 2), poly(&[(-3, 2), (0, 1), (15, 2)]));
        assert_eq!(gegenbauer(&rat(-1, 2), 2), poly(&[(1, 2), (0, 1), (-1, 2)]));
    }

    #[test]
    fn gegenbauer_link_small_n() {
        let l = verify_gegenbauer_link(2);
        assert!(l.holds());
        assert_eq!(l.p3, poly(&[(1, 2)]));
        assert_eq!(l.p1, poly(&[(0, 1), (1, 2)]));
        for n in 3..=50 {
            assert!(verify_gegenbauer_link(n).holds(), "n = {n}");
        }
    }

    #[test]
    fn parse_labels() {
        assert_eq!("P-4".parse::<FamilyId>().unwrap(), FamilyId::P4);
        assert!("P-5".parse::<FamilyId>().is_err());
        assert_eq!("qbar".parse::<IndexView>().unwrap(), IndexView::QBar);
        let js = serde_json::to_string(&family_table(FamilyId::P3, IndexView::Shifted, 1)).unwrap();
        assert!(
            js.starts_with(r#"{"family":"P-3","view":"shifted","entries":[{"n":0"#),
            "{js}"
        );
    }
}
