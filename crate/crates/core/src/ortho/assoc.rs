//! Associated ultraspherical and associated Jacobi polynomials in `x`.

use num_traits::Zero;

use crate::exact::{int, Rational, RationalPoly};
use crate::{Error, Result};

/// `C₀ ..= C_N` of `2x(n+ν+c) Cₙ = (n+c+1) C_{n+1} + (2ν+n+c−1) C_{n−1}`,
/// `C₋₁ = 0`, `C₀ = 1`.
pub fn assoc_ultraspherical(nu: &Rational, assoc: &Rational, n: usize) -> Result<Vec<RationalPoly>> {
    let mut out = vec![RationalPoly::one()];
    let mut prev = RationalPoly::zero();
    for k in 0..n as i64 {
        let kk = int(k);
        let lead = &kk + assoc + int(1);
        if lead.is_zero() {
            return Err(Error::DivZero);
        }
        let cur = out.last().unwrap().clone();
        let up = cur.shift(1).scale(&((&kk + nu + assoc) * int(2)));
        let down = prev.scale(&(nu * int(2) + &kk + assoc - int(1)));
        prev = cur;
        out.push((up - down).scale(&(int(1) / lead)));
    }
    Ok(out)
}

/// `P₀ ..= P_N` of the associated Jacobi recurrence with `γ = α + β + 1`:
///
/// `2(n+c+1)(n+c+γ)(2n+2c+γ−1) p_{n+1}
///    = (2n+2c+γ)[(2n+2c+γ−1)(2n+2c+γ+1)x + (γ−1)(γ−2β−1)] pₙ
///    − 2(n+c+γ−β−1)(n+c+β)(2n+2c+γ+1) p_{n−1}`.
pub fn assoc_jacobi(alpha: &Rational, beta: &Rational, assoc: &Rational, n: usize) -> Result<Vec<RationalPoly>> {
    let gamma = alpha + beta + int(1);
    let mut out = vec![RationalPoly::one()];
    let mut prev = RationalPoly::zero();
    for k in 0..n as i64 {
        let m = int(k) + assoc;
        let s = &m * int(2) + &gamma;
        let lead = (&m + int(1)) * (&m + &gamma) * (&s - int(1)) * int(2);
        if lead.is_zero() {
            return Err(Error::DivZero);
        }
        let cur = out.last().unwrap().clone();
        let lin = RationalPoly::from_coeffs(vec![
            (&gamma - int(1)) * (&gamma - beta * int(2) - int(1)),
            (&s - int(1)) * (&s + int(1)),
        ]);
        let up = (&lin * &cur).scale(&s);
        let down_coeff = (&m + &gamma - beta - int(1)) * (&m + beta) * (&s + int(1)) * int(2);
        let down = prev.scale(&down_coeff);
        prev = cur;
        out.push((up - down).scale(&(int(1) / lead)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::ortho::OrthoFamily;

    fn rising(a: &Rational, n: usize) -> Rational {
        (0..n as i64).fold(int(1), |acc, k| acc * (a + int(k)))
    }

    #[test]
    fn ultraspherical_is_q_family() {
        let c = assoc_ultraspherical(&rat(-1, 2), &rat(3, 2), 50).unwrap();
        assert_eq!(c[1], RationalPoly::from_coeffs(vec![int(0), rat(4, 5)]));
        assert_eq!(c, OrthoFamily::Q.polys(50));
    }

    #[test]
    fn jacobi_ultraspherical_relation() {
        for (nu, a) in [(rat(-1, 2), rat(3, 2)), (rat(1, 3), rat(2, 5)), (int(1), int(0))] {
            let half = rat(1, 2);
            let ab = &nu - &half;
            let p = assoc_jacobi(&ab, &ab, &a, 20).unwrap();
            let c = assoc_ultraspherical(&nu, &a, 20).unwrap();
            for n in 0..=20 {
                let ratio = rising(&(&nu + &a + &half), n) / rising(&(&nu * int(2) + &a), n);
                assert_eq!(p[n], c[n].scale(&ratio), "nu={nu} c={a} n={n}");
            }
        }
        let p = assoc_jacobi(&int(-1), &int(-1), &rat(3, 2), 1).unwrap();
        assert_eq!(p[0], RationalPoly::one());
        assert_eq!(p[1], RationalPoly::from_coeffs(vec![int(0), rat(12, 5)]));
    }

    #[test]
    fn degenerate_parameters() {
        // gamma = 0 and c = 0: (n+c+gamma) vanishes at n = 0
        assert_eq!(assoc_jacobi(&rat(-1, 2), &rat(-1, 2), &int(0), 3), Err(Error::DivZero));
        assert_eq!(assoc_ultraspherical(&int(1), &int(-3), 5), Err(Error::DivZero));
        assert_eq!(assoc_ultraspherical(&int(1), &int(-3), 1).unwrap().len(), 2);
    }
}
