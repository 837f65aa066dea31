use djkm_core::cocycle::{cocycle, psi, OmegaVector, RMonomial};
use djkm_core::exact::{int, rat};
use djkm_core::families::recurrence_step;
use djkm_core::ortho::{hankel, moments, LinearForm, OrthoFamily};
use djkm_core::{FamilyId, LaurentSeries, PolynomialFamily, Rational, RationalPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn rpoly() -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(rational(), 0..6).prop_map(RationalPoly::from_coeffs)
}

fn family() -> impl Strategy<Value = FamilyId> {
    prop::sample::select(vec![FamilyId::P4, FamilyId::P3, FamilyId::P2, FamilyId::P1])
}

fn ortho_family() -> impl Strategy<Value = OrthoFamily> {
    prop::sample::select(OrthoFamily::ALL.to_vec())
}

/// Series `1 + a₁z + a₂z² + …` known through `z^t`.
fn unit_series(t: i64) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec(rpoly(), t as usize).prop_map(move |tail| {
        let mut coeffs = vec![RationalPoly::one()];
        coeffs.extend(tail);
        LaurentSeries::new(0, coeffs, t)
    })
}

fn monomial() -> impl Strategy<Value = RMonomial> {
    (-9i64..=9, any::<bool>()).prop_map(|(exponent, has_u)| RMonomial { exponent, has_u })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in rpoly(), b in rpoly(), c in rpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RationalPoly::zero());
        prop_assert_eq!(&a * &RationalPoly::one(), a.clone());
        prop_assert!((&a * &RationalPoly::zero()).is_zero());
    }

    #[test]
    fn poly_degree_and_division(a in rpoly(), b in rpoly()) {
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!((&a * &b).degree(), Some(da + db));
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a.clone());
            prop_assert!(r.degree().is_none_or(|dr| dr < db));
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn derivative_is_leibniz(a in rpoly(), b in rpoly(), x in rational()) {
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
        prop_assert_eq!((&a * &b).evaluate(&x), a.evaluate(&x) * b.evaluate(&x));
    }

    #[test]
    fn series_mul_and_sqrt(s in unit_series(8), t in unit_series(8)) {
        prop_assert_eq!(s.mul(&t), t.mul(&s));
        let r = s.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r), s.clone());
        let r = s.mul(&s).sqrt().unwrap();
        prop_assert_eq!(r, s.clone());
        // s^(-3/2) * s * sqrt(s) = 1
        let p = s.pow_neg_3_2().unwrap().mul(&s).mul(&s.sqrt().unwrap());
        prop_assert_eq!(p, LaurentSeries::one(8));
    }

    #[test]
    fn series_derivative_undoes_integral(s in unit_series(8)) {
        prop_assert_eq!(s.integrate().unwrap().derivative(), s);
    }

    #[test]
    fn recurrence_holds(id in family(), k in 0i64..60) {
        let fam = PolynomialFamily::generate(id, (k + 4) as usize);
        let s = fam.shifted();
        let (k_, k2, k4) = (k as usize, k as usize + 2, k as usize + 4);
        let lhs = s[k4].scale(&int(6 + 2 * k));
        let rhs = &s[k2].shift(1).scale(&int(4 * k)) - &s[k_].scale(&int(2 * (k - 3)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(recurrence_step(k, &s[k_], &s[k2]), s[k4].clone());
    }

    #[test]
    fn parity_and_degree(id in family(), k in 0usize..60) {
        let fam = PolynomialFamily::generate(id, k);
        let p = &fam.shifted()[k];
        prop_assert!(p.is_even() || p.is_odd());
        if let Some(d) = p.degree() {
            prop_assert!(d <= k / 2);
        }
    }

    #[test]
    fn cocycle_antisymmetric(f in monomial(), g in monomial()) {
        prop_assert!(cocycle(f, g).add(&cocycle(g, f)).is_zero());
    }

    #[test]
    fn psi_depends_on_sum(i in -15i64..=15, j in -15i64..=15, shift in -10i64..=10) {
        prop_assert_eq!(psi(i, j), psi(i + shift, j - shift));
    }

    #[test]
    fn psi_matches_reduction(i in -10i64..=10, j in -10i64..=10) {
        let got = cocycle(RMonomial::tu(i - 1), RMonomial::t(j));
        prop_assert_eq!(got, psi(i, j).scale(&int(j)));
    }

    #[test]
    fn omega_vector_linear(p in rpoly(), q in rpoly(), k in -4i64..=0, l in -4i64..=0) {
        let u = OmegaVector::basis(k).mul_poly(&p);
        let v = OmegaVector::basis(l).mul_poly(&q);
        let two = int(2);
        prop_assert_eq!(u.add(&v).scale(&two), u.scale(&two).add(&v.scale(&two)));
        prop_assert_eq!(u.add(&v).sub(&v), u.clone());
        prop_assert_eq!(u.mul_poly(&(&p + &q)), u.mul_poly(&p).add(&u.mul_poly(&q)));
    }

    #[test]
    fn linear_form_normalization(c in prop::array::uniform6(-30i64..=30), m in 1i64..=9, d in 1i64..=9) {
        let f = LinearForm::from_ints(c);
        let n = f.normalized();
        prop_assert_eq!(n.normalized(), n.clone());
        let scaled = LinearForm::new(std::array::from_fn(|i| rat(c[i] * m, d)));
        prop_assert_eq!(scaled.normalized(), n.clone());
        let neg = LinearForm::new(std::array::from_fn(|i| int(-c[i])));
        prop_assert_eq!(neg.normalized(), n);
    }

    #[test]
    fn moments_even_functional(fam in ortho_family(), k in 0usize..40) {
        let m = moments(fam, k);
        prop_assert_eq!(m.len(), k + 1);
        prop_assert!(m[0].is_one());
        for (i, mi) in m.iter().enumerate() {
            if i % 2 == 1 {
                prop_assert!(mi.is_zero());
            } else {
                prop_assert!(*mi > Rational::zero());
            }
        }
    }

    #[test]
    fn hankel_product_formula(fam in ortho_family(), n in 1usize..10) {
        // Δ_N = Π_{k=1}^{N−1} (β₁² ⋯ β_k²)
        let data = fam.three_term();
        let h = hankel(fam, n);
        let mut expected = Rational::one();
        let mut prefix = Rational::one();
        for (idx, delta) in h.iter().enumerate() {
            if idx > 0 {
                prefix *= data.beta_sq(idx as u64);
                expected *= &prefix;
            }
            prop_assert_eq!(delta, &expected);
        }
    }
}
