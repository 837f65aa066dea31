//! Linear differential operators `Σ fᵢ(c) (d/dc)ⁱ` with polynomial
//! coefficients, the concrete operators attached to each family, and exact
//! residual checks. A member is verified when its residual is literally the
//! zero polynomial.

use serde::Serialize;

use crate::exact::{int, Rational, RationalPoly};
use crate::families::{FamilyId, IndexView, PolynomialFamily};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LinearDiffOp {
    coeffs: Vec<RationalPoly>,
}

impl LinearDiffOp {
    /// `coeffs[i]` multiplies the i-th derivative.
    pub fn new(mut coeffs: Vec<RationalPoly>) -> Self {
        while coeffs.last().is_some_and(RationalPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn identity() -> Self {
        Self::new(vec![RationalPoly::one()])
    }

    pub fn derivative() -> Self {
        Self::new(vec![RationalPoly::zero(), RationalPoly::one()])
    }

    pub fn coeffs(&self) -> &[RationalPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RationalPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Highest derivative with a nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn apply(&self, p: &RationalPoly) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        let mut d = p.clone();
        for f in &self.coeffs {
            if d.is_zero() {
                break;
            }
            if !f.is_zero() {
                acc += &(f * &d);
            }
            d = d.derivative();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|f| f.scale(k)).collect())
    }

    /// `deg fᵢ ≤ i` for every i, the shape of operators that can have a full
    /// orthogonal family as eigenfunctions.
    pub fn has_bounded_degree_profile(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, f)| f.degree().is_none_or(|d| d <= i))
    }

    /// `γₙ = Σᵢ [n]ᵢ · (coefficient of cⁱ in fᵢ)`, the eigenvalue such an operator
    /// must have on a degree-`n` eigenpolynomial.
    pub fn eigenvalue(&self, n: u64) -> Rational {
        let mut gamma = Rational::from_integer(0.into());
        for (i, f) in self.coeffs.iter().enumerate() {
            let falling: i64 = (0..i as i64).map(|j| n as i64 - j).product();
            gamma += f.coeff(i) * int(falling);
        }
        gamma
    }
}

fn p(c: &[i64]) -> RationalPoly {
    RationalPoly::from_ints(c)
}

/// `(1 − c²) D² − (2λ + 1) c D + n(n + 2λ)`.
pub fn gegenbauer_op(lambda: &Rational, n: i64) -> LinearDiffOp {
    let two_l = lambda * int(2);
    LinearDiffOp::new(vec![
        RationalPoly::constant(int(n) * (int(n) + &two_l)),
        RationalPoly::var().scale(&-(two_l + int(1))),
        p(&[1, 0, -1]),
    ])
}

/// Annihilates `P₋₁,₂ₙ₋₃`: `(c⁴ − c²) D² + 2c(c² + 1) D − (c² n(n−1) + 2)`.
pub fn case3_op(n: i64) -> LinearDiffOp {
    LinearDiffOp::new(vec![p(&[-2, 0, -n * (n - 1)]), p(&[0, 2, 0, 2]), p(&[0, 0, -1, 0, 1])])
}

/// Annihilates `P₋₃,₂ₙ₋₃`: `(c² − 1) D² + 4c D − (n+1)(n−2)`.
pub fn case4_op(n: i64) -> LinearDiffOp {
    LinearDiffOp::new(vec![p(&[-(n + 1) * (n - 2)]), p(&[0, 4]), p(&[-1, 0, 1])])
}

/// Shared fourth/third-order part `16(c²−1)² D⁴ + 160 c (c²−1) D³`.
fn elliptic_head() -> [RationalPoly; 2] {
    [p(&[0, -160, 0, 160]), p(&[16, 0, -32, 0, 16])]
}

/// Fourth-order operator annihilating `P₋₄,ₙ` (shifted indexing).
pub fn elliptic1_op(n: i64) -> LinearDiffOp {
    let m = n * n - 4 * n;
    let [d3, d4] = elliptic_head();
    LinearDiffOp::new(vec![
        p(&[(n - 4) * (n - 4) * n * n]),
        p(&[0, -24 * (m - 6)]),
        p(&[-8 * (-m + 22), 0, -8 * (m - 46)]),
        d3,
        d4,
    ])
}

/// Fourth-order operator annihilating `P₋₂,ₙ` (shifted indexing).
pub fn elliptic2_op(n: i64) -> LinearDiffOp {
    let m = n * n - 4 * n;
    let [d3, d4] = elliptic_head();
    LinearDiffOp::new(vec![
        p(&[(n - 6) * (n - 2) * (n - 2) * (n + 2)]),
        p(&[0, -24 * (m - 2)]),
        p(&[-8 * (-m + 18), 0, -8 * (m - 42)]),
        d3,
        d4,
    ])
}

/// The fourth-order equation rewritten for `qₙ = P₋₄,₂ₙ₊₄`:
/// `(x²−1)² D⁴ + 10x(x²−1) D³ − (x²(2n²+4n−23) − 2n²−4n+11) D² − 3x(2n²+4n−3) D + n²(n+2)²`.
pub fn qform_op(n: i64) -> LinearDiffOp {
    let m = 2 * n * n + 4 * n;
    LinearDiffOp::new(vec![
        p(&[n * n * (n + 2) * (n + 2)]),
        p(&[0, -3 * (m - 3)]),
        p(&[m - 11, 0, -(m - 23)]),
        p(&[0, -10, 0, 10]),
        p(&[1, 0, -2, 0, 1]),
    ])
}

/// Wimp's fourth-order operator for associated Jacobi polynomials, transcribed
/// term for term:
///
/// ```text
/// A₀ = (1−x²)²
/// A₁ = 10x(x²−1)
/// A₂ = −(1−x)²(2K+2C+γ²−25) + 2(1−x)(2K+2C+2αγ) + 2(α+1) − 26
/// A₃ = 3(1−x)(2K+2C+γ²−5) − 6(K+C+αγ+β−2)
/// A₄ = n(n+2)(n+γ+2c)(n+γ+2c−2)
/// K = (n+c)(n+γ+c),  C = (c−1)(c+α+β),  γ = α+β+1
/// ```
///
/// `assoc` is the association parameter `c`. The A₂ coefficient is known not
/// to annihilate `q₂` at `(n, α, β, c) = (2, −1, −1, 3/2)`.
pub fn wimp_op(n: i64, alpha: &Rational, beta: &Rational, assoc: &Rational) -> LinearDiffOp {
    let one = || int(1);
    let nn = int(n);
    let gamma = alpha + beta + one();
    let k = (&nn + assoc) * (&nn + &gamma + assoc);
    let cc = (assoc - one()) * (assoc + alpha + beta);
    let two = int(2);
    let kc2 = (&k + &cc) * &two;
    let g2 = &gamma * &gamma;
    let ag = alpha * &gamma;

    let one_minus_x = RationalPoly::from_coeffs(vec![one(), int(-1)]);
    let one_minus_x_sq = &one_minus_x * &one_minus_x;

    let a2 = one_minus_x_sq.scale(&-(&kc2 + &g2 - int(25)))
        + one_minus_x.scale(&(&two * (&kc2 + &two * &ag)))
        + RationalPoly::constant(&two * (alpha + one()) - int(26));
    let a3 = one_minus_x.scale(&(int(3) * (&kc2 + &g2 - int(5))))
        + RationalPoly::constant(int(-6) * (&k + &cc + &ag + beta - two.clone()));
    let shift = &nn + &gamma + assoc * &two;
    let a4 = RationalPoly::constant(&nn * (&nn + &two) * &shift * (&shift - &two));

    LinearDiffOp::new(vec![a4, a3, a2, p(&[0, -10, 0, 10]), p(&[1, 0, -2, 0, 1])])
}

/// Residual `op(member)` for the member at `index` of `view`; `None` if the
/// family has not been generated that far.
pub fn eigencheck(op: &LinearDiffOp, family: &PolynomialFamily, view: IndexView, index: i64) -> Option<RationalPoly> {
    family.get(view, index).map(|m| op.apply(m))
}

/// The operator/family pairings that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OdeKind {
    /// `elliptic1_op(n)` on `P₋₄` shifted index `n`.
    Elliptic1,
    /// `elliptic2_op(n)` on `P₋₂` shifted index `n`.
    Elliptic2,
    /// `case3_op(n)` on `P₋₁` original index `2n − 3`.
    Case3,
    /// `case4_op(n)` on `P₋₃` original index `2n − 3`.
    Case4,
    /// `qform_op(n)` on `qₙ`.
    QForm,
    /// `elliptic2_op(2n + 6)` on `q̄ₙ`.
    QBarForm,
}

impl OdeKind {
    pub fn family(self) -> FamilyId {
        match self {
            OdeKind::Elliptic1 | OdeKind::QForm => FamilyId::P4,
            OdeKind::Elliptic2 | OdeKind::QBarForm => FamilyId::P2,
            OdeKind::Case3 => FamilyId::P1,
            OdeKind::Case4 => FamilyId::P3,
        }
    }

    pub fn first_n(self) -> i64 {
        match self {
            OdeKind::Case3 | OdeKind::Case4 => 2,
            _ => 0,
        }
    }

    /// `(view, index)` of the member tested at sweep parameter `n`.
    pub fn member(self, n: i64) -> (IndexView, i64) {
        match self {
            OdeKind::Elliptic1 | OdeKind::Elliptic2 => (IndexView::Shifted, n),
            OdeKind::Case3 | OdeKind::Case4 => (IndexView::Original, 2 * n - 3),
            OdeKind::QForm => (IndexView::Q, n),
            OdeKind::QBarForm => (IndexView::QBar, n),
        }
    }

    pub fn operator(self, n: i64) -> LinearDiffOp {
        match self {
            OdeKind::Elliptic1 => elliptic1_op(n),
            OdeKind::Elliptic2 => elliptic2_op(n),
            OdeKind::Case3 => case3_op(n),
            OdeKind::Case4 => case4_op(n),
            OdeKind::QForm => qform_op(n),
            OdeKind::QBarForm => elliptic2_op(2 * n + 6),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OdeCheck {
    pub n: i64,
    pub view: IndexView,
    pub member_index: i64,
    /// Whether the member itself is the zero polynomial (trivially annihilated).
    pub trivial: bool,
    pub verified: bool,
    /// Present only when the residual is nonzero.
    pub residual: Option<RationalPoly>,
}

/// Residual check of `kind` for every `n` in `first_n ..= max_n`.
pub fn verify_ode(kind: OdeKind, max_n: i64, exec: Execution) -> Vec<OdeCheck> {
    let first = kind.first_n();
    if max_n < first {
        return Vec::new();
    }
    let (view, last) = kind.member(max_n);
    let family = PolynomialFamily::generate_for(kind.family(), view, last);
    let ns: Vec<i64> = (first..=max_n).collect();
    exec.map(ns, |n| {
        let (view, idx) = kind.member(n);
        let member = family.get(view, idx).expect("member generated");
        let residual = kind.operator(n).apply(member);
        let verified = residual.is_zero();
        OdeCheck {
            n,
            view,
            member_index: idx,
            trivial: member.is_zero(),
            verified,
            residual: (!verified).then_some(residual),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::families::gegenbauer;

    fn poly(c: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::from_coeffs(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn apply_basics() {
        let c2 = p(&[0, 0, 1]);
        assert_eq!(LinearDiffOp::derivative().apply(&c2), p(&[0, 2]));
        assert_eq!(LinearDiffOp::identity().apply(&c2), c2);
        assert!(elliptic1_op(8).apply(&RationalPoly::zero()).is_zero());
        assert_eq!(LinearDiffOp::default().order(), None);
    }

    #[test]
    fn gegenbauer_op_shapes() {
        let op = gegenbauer_op(&rat(3, 2), 1);
        assert_eq!(op.coeffs(), &[p(&[4]), p(&[0, -4]), p(&[1, 0, -1])]);
        assert!(op.apply(&p(&[0, 3])).is_zero());
        let op = gegenbauer_op(&rat(-1, 2), 5);
        assert_eq!(op.coeffs(), &[p(&[20]), RationalPoly::zero(), p(&[1, 0, -1])]);
        for n in 0..=100 {
            assert!(gegenbauer_op(&rat(3, 2), n)
                .apply(&gegenbauer(&rat(3, 2), n as usize))
                .is_zero());
            assert!(gegenbauer_op(&rat(-1, 2), n)
                .apply(&gegenbauer(&rat(-1, 2), n as usize))
                .is_zero());
        }
    }

    #[test]
    fn case3_and_case4_small() {
        assert!(case3_op(2).apply(&poly(&[(0, 1), (1, 2)])).is_zero());
        // c itself is a multiple of the member, so the negative controls use 1 and c^2
        assert_eq!(case3_op(2).apply(&RationalPoly::one()), p(&[-2, 0, -2]));
        assert!(!case3_op(2).apply(&p(&[0, 0, 1])).is_zero());
        assert!(case4_op(2).apply(&poly(&[(1, 2)])).is_zero());
    }

    #[test]
    fn elliptic_examples() {
        assert!(elliptic1_op(8).apply(&poly(&[(-5, 35), (0, 1), (32, 35)])).is_zero());
        assert!(elliptic1_op(0).apply(&RationalPoly::one()).is_zero());
        assert!(elliptic2_op(2).apply(&RationalPoly::one()).is_zero());
        assert!(elliptic2_op(8).apply(&poly(&[(0, 1), (8, 35)])).is_zero());
    }

    #[test]
    fn qform_reproduces_n2_cancellation() {
        let q2 = poly(&[(-5, 35), (0, 1), (32, 35)]);
        assert!(qform_op(2).apply(&q2).is_zero());
        assert!(qform_op(0).apply(&RationalPoly::one()).is_zero());
        // qform(n) is elliptic1(2n + 4) divided by 16
        for n in 0..30 {
            assert_eq!(elliptic1_op(2 * n + 4), qform_op(n).scale(&int(16)));
        }
    }

    #[test]
    fn wimp_special_case() {
        let m1 = int(-1);
        let op = wimp_op(2, &m1, &m1, &rat(3, 2));
        // A2 = -(2n^2+4n-23) x^2 - 52 x + 2n^2+4n+3 at n = 2
        assert_eq!(op.coeff(2), p(&[19, -52, 7]));
        assert_eq!(op.coeff(1), p(&[0, -39]));
        assert_eq!(op.coeff(0), p(&[64]));
        let q2 = poly(&[(-5, 35), (0, 1), (32, 35)]);
        // 64(14 - 52x)/35
        assert_eq!(op.apply(&q2), poly(&[(128, 5), (-3328, 35)]));
        // A2 differs from the q-form coefficient only in its x^1 and x^0 terms
        for n in 0..10 {
            let w = wimp_op(n, &m1, &m1, &rat(3, 2));
            let q = qform_op(n);
            for i in [0, 1, 3, 4] {
                assert_eq!(w.coeff(i), q.coeff(i), "n={n} i={i}");
            }
            assert_eq!(w.coeff(2) - q.coeff(2), p(&[14, -52]));
        }
    }

    #[test]
    fn eigenvalue_formula_matches_apply() {
        let op = gegenbauer_op(&rat(3, 2), 0);
        assert!(op.has_bounded_degree_profile());
        for n in 0..12u64 {
            let c = gegenbauer(&rat(3, 2), n as usize);
            // (1-c^2)D^2 - 4cD has eigenvalue -n(n+3) on C_n^(3/2)
            assert_eq!(op.apply(&c), c.scale(&op.eigenvalue(n)));
        }
        assert!(!case3_op(4).has_bounded_degree_profile());
    }

    #[test]
    fn sweeps_small() {
        for kind in [
            OdeKind::Elliptic1,
            OdeKind::Elliptic2,
            OdeKind::Case3,
            OdeKind::Case4,
            OdeKind::QForm,
            OdeKind::QBarForm,
        ] {
            let checks = verify_ode(kind, 30, Execution::Sequential);
            assert!(checks.iter().all(|c| c.verified), "{kind:?}");
            assert_eq!(checks.first().unwrap().n, kind.first_n());
        }
        let e = eigencheck(
            &case3_op(5),
            &PolynomialFamily::generate(FamilyId::P1, 11),
            IndexView::Original,
            7,
        );
        assert_eq!(e, Some(RationalPoly::zero()));
    }
}
