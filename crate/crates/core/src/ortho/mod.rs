//! Orthogonality of the `q` and `q̄` families.
//!
//! Both satisfy `x pₙ = A_{n+1} p_{n+1} + C_{n−1} p_{n−1}` with positive
//! `Aₙ Cₙ₋₁`, so the monic versions obey `x πₙ = π_{n+1} + βₙ² π_{n−1}` with
//! `βₙ² = Aₙ Cₙ₋₁ > 0`. Everything exact is expressed through `βₙ²`; square
//! roots only appear in the floating-point quadrature.

mod assoc;
mod hyp;
mod nonclassical;
mod quadrature;

pub use assoc::{assoc_jacobi, assoc_ultraspherical};
pub use hyp::hyp2f1;
pub use nonclassical::{nonclassical_check, EigenRule, LinearForm, NonclassicalStep, NonclassicalWitness, UNKNOWNS};
pub use quadrature::{golub_welsch, quad_orthogonality, QuadOrthogonality, Quadrature};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{rat, serialize_rationals, to_f64, Rational, RationalPoly};
use crate::families::{FamilyId, IndexView, PolynomialFamily};
use crate::{Error, Result};

/// `q_n = P₋₄` at shifted `2n + 4`, `q̄_n = P₋₂` at shifted `2n + 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrthoFamily {
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "qbar")]
    QBar,
}

impl OrthoFamily {
    pub const ALL: [OrthoFamily; 2] = [OrthoFamily::Q, OrthoFamily::QBar];

    pub fn source(self) -> FamilyId {
        match self {
            OrthoFamily::Q => FamilyId::P4,
            OrthoFamily::QBar => FamilyId::P2,
        }
    }

    pub fn view(self) -> IndexView {
        match self {
            OrthoFamily::Q => IndexView::Q,
            OrthoFamily::QBar => IndexView::QBar,
        }
    }

    pub fn label(self) -> &'static str {
        self.view().label()
    }

    /// `p₀ ..= p_n` from the recurrence engine.
    pub fn polys(self, n: usize) -> Vec<RationalPoly> {
        let fam = PolynomialFamily::generate_for(self.source(), self.view(), n as i64);
        (0..=n as i64)
            .map(|i| fam.get(self.view(), i).expect("generated").clone())
            .collect()
    }

    pub fn three_term(self) -> ThreeTermData {
        ThreeTermData { family: self }
    }
}

impl fmt::Display for OrthoFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for OrthoFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "p-4" | "p4" => Ok(OrthoFamily::Q),
            "qbar" | "q-bar" | "p-2" | "p2" => Ok(OrthoFamily::QBar),
            _ => Err(Error::InvalidParameter(format!(
                "unknown orthogonal family {s:?} (expected q or qbar)"
            ))),
        }
    }
}

/// `x pₙ = A_{n+1} p_{n+1} + Bₙ pₙ + C_{n−1} p_{n−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThreeTermData {
    pub family: OrthoFamily,
}

impl ThreeTermData {
    /// `A_{n+1}`, the coefficient of `p_{n+1}` in `x pₙ`.
    pub fn a_next(&self, n: u64) -> Rational {
        let n = n as i64;
        match self.family {
            OrthoFamily::Q => rat(2 * n + 5, 4 * (n + 1)),
            OrthoFamily::QBar => rat(2 * n + 7, 4 * (n + 2)),
        }
    }

    pub fn b(&self, _n: u64) -> Rational {
        Rational::zero()
    }

    /// `C_{n−1}`, the coefficient of `p_{n−1}` in `x pₙ`; zero at `n = 0`.
    pub fn c_prev(&self, n: u64) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        let n = n as i64;
        match self.family {
            OrthoFamily::Q => rat(2 * n - 1, 4 * (n + 1)),
            OrthoFamily::QBar => rat(2 * n + 1, 4 * (n + 2)),
        }
    }

    /// `βₙ² = Aₙ Cₙ₋₁` for `n ≥ 1`.
    pub fn beta_sq(&self, n: u64) -> Rational {
        assert!(n >= 1, "beta_0 is undefined");
        self.a_next(n - 1) * self.c_prev(n)
    }

    /// `p₀ ..= p_n` generated from this recurrence alone.
    pub fn polys(&self, n: usize) -> Vec<RationalPoly> {
        let p0 = match self.family {
            OrthoFamily::Q => RationalPoly::one(),
            OrthoFamily::QBar => RationalPoly::constant(rat(1, 5)),
        };
        let mut out = vec![p0];
        let mut prev = RationalPoly::zero();
        for k in 0..n as u64 {
            let cur = out.last().unwrap().clone();
            let next = (cur.shift(1) - prev.scale(&self.c_prev(k))).scale(&(Rational::one() / self.a_next(k)));
            prev = cur;
            out.push(next);
        }
        out
    }

    pub fn jacobi(&self, n: usize) -> JacobiData {
        let offdiag_sq: Vec<Rational> = (1..n as u64).map(|k| self.beta_sq(k)).collect();
        JacobiData {
            diag: vec![Rational::zero(); n],
            offdiag_float: offdiag_sq.iter().map(|b| to_f64(b).sqrt()).collect(),
            offdiag_sq,
        }
    }
}

/// Truncated `n × n` Jacobi matrix: `diag[k]`, and `offdiag_sq[k] = β_{k+1}²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobiData {
    #[serde(serialize_with = "serialize_rationals")]
    pub diag: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub offdiag_sq: Vec<Rational>,
    pub offdiag_float: Vec<f64>,
}

/// `λ₀² ..= λ_N²` from `λₙ² = (n+1)(2n+1) / ((n+2)(2n+5)) · λₙ₋₁²`, `λ₀ = 1`.
pub fn favard_lambdas(n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    for k in 1..=n as i64 {
        let prev = out.last().unwrap();
        out.push(prev * rat((k + 1) * (2 * k + 1), (k + 2) * (2 * k + 5)));
    }
    out
}

/// Moments `m₀ ..= m_K` of the normalized (`m₀ = 1`) functional, as `(Jᵏ)₀₀`
/// of the tridiagonal matrix with `βₙ²` above and `1` below the diagonal.
pub fn moments(family: OrthoFamily, k: usize) -> Vec<Rational> {
    let data = family.three_term();
    let levels = k / 2 + 2;
    let beta_sq: Vec<Rational> = (1..=levels as u64).map(|n| data.beta_sq(n)).collect();
    let mut v = vec![Rational::zero(); levels + 1];
    v[0] = Rational::one();
    let mut out = Vec::with_capacity(k + 1);
    for step in 0..=k {
        out.push(v[0].clone());
        if step == k {
            break;
        }
        let mut next = vec![Rational::zero(); levels + 1];
        for l in 0..=levels {
            if l > 0 {
                next[l] += &v[l - 1];
            }
            if l < levels {
                next[l] += &beta_sq[l] * &v[l + 1];
            }
        }
        v = next;
    }
    out
}

/// Exact determinant by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (v, q) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *v -= &factor * q;
            }
        }
    }
    det
}

/// `Δ₁ ..= Δ_N`, `Δₖ = det[m_{i+j}]_{0 ≤ i,j < k}`.
pub fn hankel(family: OrthoFamily, n: usize) -> Vec<Rational> {
    if n == 0 {
        return Vec::new();
    }
    let m = moments(family, 2 * n - 2);
    (1..=n)
        .map(|k| {
            let mat = (0..k).map(|i| (0..k).map(|j| m[i + j].clone()).collect()).collect();
            determinant(mat)
        })
        .collect()
}

/// The moment functional applied to a polynomial.
pub fn functional(moments: &[Rational], p: &RationalPoly) -> Rational {
    assert!(
        p.degree().is_none_or(|d| d < moments.len()),
        "not enough moments for degree {:?}",
        p.degree()
    );
    p.coeffs().iter().zip(moments).map(|(a, m)| a * m).sum()
}

/// `G[i][j] = L[pᵢ pⱼ]` for `0 ≤ i, j ≤ n`.
pub fn gram_matrix(family: OrthoFamily, n: usize) -> Vec<Vec<Rational>> {
    let p = family.polys(n);
    let m = moments(family, 2 * n);
    (0..=n)
        .map(|i| (0..=n).map(|j| functional(&m, &(&p[i] * &p[j]))).collect())
        .collect()
}

/// Whether the Gram matrix up to degree `n` is diagonal with positive diagonal.
pub fn gram_check(family: OrthoFamily, n: usize) -> bool {
    gram_matrix(family, n).iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, g)| if i == j { g.is_positive() } else { g.is_zero() })
    })
}
