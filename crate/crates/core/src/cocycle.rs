//! Kähler differentials of `R = C[t, t⁻¹, u | u² = t⁴ − 2ct² + 1]` modulo
//! exact forms, and the central 2-cocycle `(f, g) ↦ class of f dg`.
//!
//! `Ω¹_R / dR` has basis `ω₀ = t⁻¹dt` and `ω_k = tᵏu dt` for `k = −1..−4`.
//! Every `tᵏu dt` reduces to that basis through
//! `(6 + 2k) tᵏu ≡ 4kc tᵏ⁻²u − 2(k − 3) tᵏ⁻⁴u`, which is `d(tᵏ⁻³u³) ≡ 0`
//! written out; it holds for every integer `k`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{int, Rational, RationalPoly};
use crate::families::{FamilyId, PolynomialFamily};
use crate::par::Execution;

/// Class in `Ω¹_R / dR`, coefficients polynomial in `c`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OmegaVector {
    pub w0: RationalPoly,
    /// `wu[i]` is the coefficient of `ω_{−(i+1)}`.
    pub wu: [RationalPoly; 4],
}

impl OmegaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `ω_k` for `k ∈ {0, −1, −2, −3, −4}`.
    pub fn basis(k: i64) -> Self {
        Self::basis_scaled(k, RationalPoly::one())
    }

    fn basis_scaled(k: i64, coeff: RationalPoly) -> Self {
        let mut v = Self::zero();
        match k {
            0 => v.w0 = coeff,
            -4..=-1 => v.wu[(-k - 1) as usize] = coeff,
            _ => panic!("omega_{k} is not a basis element"),
        }
        v
    }

    /// Coefficient of `ω_k`, `k ∈ {0, −1, −2, −3, −4}`.
    pub fn get(&self, k: i64) -> &RationalPoly {
        match k {
            0 => &self.w0,
            -4..=-1 => &self.wu[(-k - 1) as usize],
            _ => panic!("omega_{k} is not a basis element"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w0.is_zero() && self.wu.iter().all(RationalPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            w0: &self.w0 + &other.w0,
            wu: std::array::from_fn(|i| &self.wu[i] + &other.wu[i]),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            w0: &self.w0 - &other.w0,
            wu: std::array::from_fn(|i| &self.wu[i] - &other.wu[i]),
        }
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &RationalPoly) -> Self {
        Self {
            w0: &self.w0 * p,
            wu: std::array::from_fn(|i| &self.wu[i] * p),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            w0: self.w0.scale(k),
            wu: std::array::from_fn(|i| self.wu[i].scale(k)),
        }
    }
}

impl fmt::Display for OmegaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in [0, -1, -2, -3, -4] {
            let coeff = self.get(k);
            if coeff.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({coeff}) w{k}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct OmegaJson {
    w0: RationalPoly,
    #[serde(rename = "w-1")]
    w1: RationalPoly,
    #[serde(rename = "w-2")]
    w2: RationalPoly,
    #[serde(rename = "w-3")]
    w3: RationalPoly,
    #[serde(rename = "w-4")]
    w4: RationalPoly,
}

impl Serialize for OmegaVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let [w1, w2, w3, w4] = self.wu.clone();
        OmegaJson {
            w0: self.w0.clone(),
            w1,
            w2,
            w3,
            w4,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OmegaVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = OmegaJson::deserialize(deserializer)?;
        Ok(Self {
            w0: j.w0,
            wu: [j.w1, j.w2, j.w3, j.w4],
        })
    }
}

/// `tᵃ` or `tᵃu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RMonomial {
    pub exponent: i64,
    pub has_u: bool,
}

impl RMonomial {
    pub fn t(exponent: i64) -> Self {
        Self { exponent, has_u: false }
    }

    pub fn tu(exponent: i64) -> Self {
        Self { exponent, has_u: true }
    }
}

impl fmt::Display for RMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}", self.exponent)?;
        if self.has_u {
            f.write_str(" u")?;
        }
        Ok(())
    }
}

/// Classes of `tᵏu dt` for every `k` in a contiguous range containing `−4..=−1`.
#[derive(Debug, Clone)]
pub struct UReduction {
    lo: i64,
    classes: Vec<OmegaVector>,
}

impl UReduction {
    /// Table covering at least `lo..=hi`.
    pub fn new(lo: i64, hi: i64) -> Self {
        let lo = lo.min(-4);
        let hi = hi.max(-1);
        let len = (hi - lo + 1) as usize;
        let mut classes = vec![OmegaVector::zero(); len];
        let at = |k: i64| (k - lo) as usize;
        for k in -4..=-1 {
            classes[at(k)] = OmegaVector::basis(k);
        }
        let c = RationalPoly::var();
        for k in 0..=hi {
            // (6+2k) X_k = 4kc X_{k-2} - 2(k-3) X_{k-4}
            let v = classes[at(k - 2)]
                .mul_poly(&c.scale(&int(4 * k)))
                .sub(&classes[at(k - 4)].scale(&int(2 * (k - 3))))
                .scale(&Rational::new(1.into(), (6 + 2 * k).into()));
            classes[at(k)] = v;
        }
        for m in (lo..=-5).rev() {
            // 2(m+1) X_m = 4(m+4)c X_{m+2} - (2m+14) X_{m+4}
            let v = classes[at(m + 2)]
                .mul_poly(&c.scale(&int(4 * (m + 4))))
                .sub(&classes[at(m + 4)].scale(&int(2 * m + 14)))
                .scale(&Rational::new(1.into(), (2 * (m + 1)).into()));
            classes[at(m)] = v;
        }
        Self { lo, classes }
    }

    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.classes.len() as i64 - 1)
    }

    pub fn get(&self, k: i64) -> Option<&OmegaVector> {
        let i = k.checked_sub(self.lo)?;
        usize::try_from(i).ok().and_then(|i| self.classes.get(i))
    }

    /// First `k` (as the top index of the relation) inside the table where
    /// `(6+2k) X_k − 4kc X_{k−2} + 2(k−3) X_{k−4}` is nonzero.
    pub fn first_relation_violation(&self) -> Option<i64> {
        let (lo, hi) = self.range();
        let c = RationalPoly::var();
        (lo + 4..=hi).find(|&k| {
            let x = |i| self.get(i).expect("in range");
            !x(k)
                .scale(&int(6 + 2 * k))
                .sub(&x(k - 2).mul_poly(&c.scale(&int(4 * k))))
                .add(&x(k - 4).scale(&int(2 * (k - 3))))
                .is_zero()
        })
    }

    fn class(&self, k: i64) -> &OmegaVector {
        let (lo, hi) = self.range();
        self.get(k)
            .unwrap_or_else(|| panic!("t^{k} u dt outside reduction table {lo}..={hi}"))
    }
}

/// Class of `tᵏu dt`.
pub fn reduce_u_monomial(k: i64) -> OmegaVector {
    UReduction::new(k, k).class(k).clone()
}

/// Class of `tᵃ dt`: exact unless `a = −1`.
pub fn reduce_plain(a: i64) -> OmegaVector {
    if a == -1 {
        OmegaVector::basis(0)
    } else {
        OmegaVector::zero()
    }
}

/// Range of `k` such that the table must hold `tᵏu dt` to evaluate any
/// cocycle on exponents in `lo..=hi`.
fn table_for(lo: i64, hi: i64) -> UReduction {
    UReduction::new(2 * lo - 1, 2 * hi)
}

/// Class of `f dg`.
pub fn cocycle(f: RMonomial, g: RMonomial) -> OmegaVector {
    let lo = f.exponent.min(g.exponent);
    let hi = f.exponent.max(g.exponent);
    cocycle_with(&table_for(lo, hi), f, g)
}

/// [`cocycle`] against a precomputed reduction table.
pub fn cocycle_with(table: &UReduction, f: RMonomial, g: RMonomial) -> OmegaVector {
    let (a, b) = (f.exponent, g.exponent);
    let s = a + b;
    match (f.has_u, g.has_u) {
        // tᵃ d(tᵇ) = b t^{s-1} dt
        (false, false) => reduce_plain(s - 1).scale(&int(b)),
        // tᵃu d(tᵇ) = b t^{s-1} u dt
        (true, false) => table.class(s - 1).scale(&int(b)),
        // tᵃ d(tᵇu) = b t^{s-1} u dt + tˢ du, and tˢ du ≡ −s t^{s-1} u dt
        (false, true) => table.class(s - 1).scale(&int(-a)),
        // tᵃu d(tᵇu) = [b t^{s-1} p + ½ tˢ p′] dt
        //            = [(b+2) t^{s+3} − 2c(b+1) t^{s+1} + b t^{s-1}] dt
        (true, true) => {
            let c = RationalPoly::var();
            let mut v = reduce_plain(s + 3).scale(&int(b + 2));
            v = v.add(&reduce_plain(s + 1).mul_poly(&c.scale(&int(-2 * (b + 1)))));
            v.add(&reduce_plain(s - 1).scale(&int(b)))
        }
    }
}

/// The three families needed by the ψ table, in original indexing.
#[derive(Debug, Clone)]
pub struct PsiTable {
    p4: PolynomialFamily,
    p3: PolynomialFamily,
    p2: PolynomialFamily,
}

impl PsiTable {
    /// Covers every `|i + j| ≤ max_abs_sum`.
    pub fn new(max_abs_sum: i64) -> Self {
        let max_shifted = (max_abs_sum.max(2) + 2) as usize;
        Self {
            p4: PolynomialFamily::generate(FamilyId::P4, max_shifted),
            p3: PolynomialFamily::generate(FamilyId::P3, max_shifted),
            p2: PolynomialFamily::generate(FamilyId::P2, max_shifted),
        }
    }

    /// Closed-form ψ_ij; depends on `i + j` only.
    pub fn psi(&self, i: i64, j: i64) -> OmegaVector {
        let s = i + j;
        let fam = |f: &PolynomialFamily, k: i64| {
            f.original(k)
                .unwrap_or_else(|| panic!("psi table too small for i + j = {s}"))
                .clone()
        };
        let c = RationalPoly::var();
        match s {
            -2..=1 => OmegaVector::basis(s - 2),
            _ if s % 2 != 0 => {
                let p = fam(&self.p3, s.abs() - 2);
                let (w3, w1) = if s > 0 { (p.clone(), &p * &c) } else { (&p * &c, p) };
                let mut v = OmegaVector::zero();
                v.wu[2] = w3;
                v.wu[0] = w1;
                v
            }
            _ => {
                let k = s.abs() - 2;
                let mut v = OmegaVector::zero();
                v.wu[3] = fam(&self.p4, k);
                v.wu[1] = fam(&self.p2, k);
                v
            }
        }
    }
}

/// Closed-form ψ_ij.
pub fn psi(i: i64, j: i64) -> OmegaVector {
    PsiTable::new((i + j).abs()).psi(i, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiMismatch {
    pub i: i64,
    pub j: i64,
    pub cocycle: OmegaVector,
    pub expected: OmegaVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub i: i64,
    pub j: i64,
}

/// Outcome of the grid checks for `|i|, |j| ≤ bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub bound: i64,
    /// `cocycle(t^{i−1}u, tʲ) = j ψ_ij` for `j ≠ 0`.
    pub psi_checked: usize,
    pub psi_failures: Vec<PsiMismatch>,
    /// `cocycle(t^{i−1}u, t^{j−1}u)` against the closed-form central term.
    pub uu_checked: usize,
    pub uu_failures: Vec<PairFailure>,
    /// `cocycle(t^{i−1}u, tʲ) = j ψ_ij` and `cocycle(tⁱ, tʲ) = j δ_{i+j,0} ω₀`.
    pub plain_checked: usize,
    pub plain_failures: Vec<PairFailure>,
    /// `cocycle(f, g) + cocycle(g, f) = 0` over all four shapes.
    pub antisymmetry_checked: usize,
    pub antisymmetry_failures: Vec<PairFailure>,
    /// Whether the reduction table satisfies the defining relation everywhere.
    pub reduction_consistent: bool,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.psi_failures.is_empty()
            && self.uu_failures.is_empty()
            && self.plain_failures.is_empty()
            && self.antisymmetry_failures.is_empty()
            && self.reduction_consistent
    }
}

/// `(j+1)δ_{i+j,−2} − 2cj δ_{i+j,0} + (j−1)δ_{i+j,2}` times ω₀.
pub fn uu_central_term(i: i64, j: i64) -> OmegaVector {
    let w0 = match i + j {
        -2 => RationalPoly::constant(int(j + 1)),
        0 => RationalPoly::var().scale(&int(-2 * j)),
        2 => RationalPoly::constant(int(j - 1)),
        _ => RationalPoly::zero(),
    };
    OmegaVector {
        w0,
        ..OmegaVector::zero()
    }
}

/// Runs every grid check for `|i|, |j| ≤ bound`.
pub fn verify_psi_table(bound: i64, exec: Execution) -> CocycleReport {
    let bound = bound.max(1);
    let table = table_for(-bound - 1, bound);
    let psi_table = PsiTable::new(2 * bound);
    let pairs: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|i| (-bound..=bound).map(move |j| (i, j)))
        .collect();

    struct Cell {
        i: i64,
        j: i64,
        psi: Option<Option<PsiMismatch>>,
        uu_ok: bool,
        plain_ok: bool,
        antisym_ok: bool,
    }

    let cells = exec.map(pairs, |(i, j)| {
        let psi = (j != 0).then(|| {
            let got = cocycle_with(&table, RMonomial::tu(i - 1), RMonomial::t(j));
            let expected = psi_table.psi(i, j).scale(&int(j));
            (got != expected).then_some(PsiMismatch {
                i,
                j,
                cocycle: got,
                expected,
            })
        });
        let uu = cocycle_with(&table, RMonomial::tu(i - 1), RMonomial::tu(j - 1));
        let uu_ok = uu == uu_central_term(i, j);
        let plain = cocycle_with(&table, RMonomial::t(i), RMonomial::t(j));
        let plain_ok = plain
            == if i + j == 0 {
                OmegaVector::basis(0).scale(&int(j))
            } else {
                OmegaVector::zero()
            };
        let antisym_ok = [
            (RMonomial::t(i), RMonomial::t(j)),
            (RMonomial::tu(i - 1), RMonomial::t(j)),
            (RMonomial::t(i), RMonomial::tu(j - 1)),
            (RMonomial::tu(i - 1), RMonomial::tu(j - 1)),
        ]
        .into_iter()
        .all(|(f, g)| cocycle_with(&table, f, g).add(&cocycle_with(&table, g, f)).is_zero());
        Cell {
            i,
            j,
            psi,
            uu_ok,
            plain_ok,
            antisym_ok,
        }
    });

    let n = cells.len();
    let mut report = CocycleReport {
        bound,
        psi_checked: 0,
        psi_failures: Vec::new(),
        uu_checked: n,
        uu_failures: Vec::new(),
        plain_checked: n,
        plain_failures: Vec::new(),
        antisymmetry_checked: 4 * n,
        antisymmetry_failures: Vec::new(),
        reduction_consistent: table.first_relation_violation().is_none(),
    };
    for cell in cells {
        let pair = || PairFailure { i: cell.i, j: cell.j };
        if let Some(res) = cell.psi {
            report.psi_checked += 1;
            report.psi_failures.extend(res);
        }
        if !cell.uu_ok {
            report.uu_failures.push(pair());
        }
        if !cell.plain_ok {
            report.plain_failures.push(pair());
        }
        if !cell.antisym_ok {
            report.antisymmetry_failures.push(pair());
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn half_w3_plus_c_half_w1() -> OmegaVector {
        let mut v = OmegaVector::zero();
        v.wu[2] = RationalPoly::constant(rat(1, 2));
        v.wu[0] = RationalPoly::var().scale(&rat(1, 2));
        v
    }

    #[test]
    fn reduction_small_cases() {
        assert_eq!(reduce_u_monomial(-1), OmegaVector::basis(-1));
        assert_eq!(reduce_u_monomial(0), OmegaVector::basis(-4));
        assert_eq!(reduce_u_monomial(1), half_w3_plus_c_half_w1());
        // X_{-5} = (c/2) w-3 + (1/2) w-1
        let mut v = OmegaVector::zero();
        v.wu[2] = RationalPoly::var().scale(&rat(1, 2));
        v.wu[0] = RationalPoly::constant(rat(1, 2));
        assert_eq!(reduce_u_monomial(-5), v);
        assert_eq!(reduce_plain(3), OmegaVector::zero());
        assert_eq!(reduce_plain(-1), OmegaVector::basis(0));
        assert_eq!(reduce_plain(-2), OmegaVector::zero());
    }

    #[test]
    fn upward_then_downward_is_consistent() {
        let table = UReduction::new(-40, 40);
        assert_eq!(table.first_relation_violation(), None);
        assert_eq!(table.range(), (-40, 40));
        for k in [-40, -7, 0, 13, 40] {
            assert_eq!(table.get(k).unwrap(), &reduce_u_monomial(k));
        }
    }

    #[test]
    fn cocycle_examples() {
        for i in -5..=5 {
            for j in -5..=5 {
                let v = cocycle(RMonomial::t(i), RMonomial::t(j));
                let expect = if i + j == 0 { j } else { 0 };
                assert_eq!(v, OmegaVector::basis(0).scale(&int(expect)));
            }
        }
        let v = cocycle(RMonomial::tu(2), RMonomial::tu(-2));
        assert_eq!(v, OmegaVector::basis(0).scale(&int(-2)));
        assert_eq!(cocycle(RMonomial::tu(1), RMonomial::t(1)), half_w3_plus_c_half_w1());
        assert_eq!(cocycle(RMonomial::tu(-1), RMonomial::t(1)), OmegaVector::basis(-1));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1, 0), OmegaVector::basis(-1));
        assert_eq!(psi(2, 1), half_w3_plus_c_half_w1());
        assert_eq!(psi(1, 1), OmegaVector::basis(-4));
        assert_eq!(psi(-1, -1), OmegaVector::basis(-4));
        // i + j = -3 gives (1/2)(c w-3 + w-1)
        let mut v = OmegaVector::zero();
        v.wu[2] = RationalPoly::var().scale(&rat(1, 2));
        v.wu[0] = RationalPoly::constant(rat(1, 2));
        assert_eq!(psi(-1, -2), v);
        assert_eq!(psi(3, 4), psi(7, 0));
    }

    #[test]
    fn grid_passes() {
        let r = verify_psi_table(6, Execution::Sequential);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.psi_checked, 13 * 12);
    }

    #[test]
    fn json_keys() {
        let v = half_w3_plus_c_half_w1();
        let s = serde_json::to_string(&v).unwrap();
        for key in ["\"w0\"", "\"w-1\"", "\"w-2\"", "\"w-3\"", "\"w-4\""] {
            assert!(s.contains(key), "{s}");
        }
        let back: OmegaVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert_eq!(v.to_string(), "(1/2*c) w-1 + (1/2) w-3");
    }
}
