use jtheta_core::certify::{certify_nonvanishing, Coef, LinearFormSpec, Verdict};
use jtheta_core::elimination::{resultant, GaussPoly1};
use jtheta_core::gauss::GaussRat;
use jtheta_core::numerics::decimal::{ball_from_decimal, ball_to_decimal};
use jtheta_core::numerics::BallComplex;
use jtheta_core::numthy::{divisors, psi, w_count};
use jtheta_core::qseries::QSeries;
use jtheta_core::thetafun::{theta_eval, TauValue, ThetaKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = BigRational> {
    (-1000i64..1000, 1i64..100).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn gauss() -> impl Strategy<Value = GaussRat> {
    (rat(), rat()).prop_map(|(a, b)| GaussRat::new(a, b))
}

fn ball(g: &GaussRat, prec: u32) -> BallComplex {
    BallComplex::from_gauss(&g.re, &g.im, prec)
}

fn series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-20i64..20, 1..12).prop_map(|c| QSeries::from_ints(&c, 12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ball_ops_enclose_exact(a in gauss(), b in gauss(), prec in 32u32..200) {
        let (x, y) = (ball(&a, prec), ball(&b, prec));
        let s = &a + &b;
        prop_assert!(x.add(&y).contains_gauss(&s.re, &s.im));
        let p = &a * &b;
        prop_assert!(x.mul(&y).contains_gauss(&p.re, &p.im));
        let d = &a - &b;
        prop_assert!(x.sub(&y).contains_gauss(&d.re, &d.im));
        let sq = &a * &a;
        prop_assert!(x.sqr().contains_gauss(&sq.re, &sq.im));
        if let (Some(q), Ok(qb)) = (a.div(&b), x.div(&y)) {
            prop_assert!(qb.contains_gauss(&q.re, &q.im));
        }
    }

    #[test]
    fn decimal_round_trip_encloses(a in gauss(), prec in 32u32..300) {
        let x = ball(&a, prec);
        let (re, im, rad) = ball_to_decimal(&x);
        let back = ball_from_decimal(&re, &im, &rad, prec).unwrap();
        prop_assert!(back.contains(&x));
        prop_assert!(back.contains_gauss(&a.re, &a.im));
    }

    #[test]
    fn nonzero_and_below_are_exclusive(a in gauss(), prec in 32u32..200, k in 1u32..30) {
        let x = ball(&a, prec);
        let tol = BigRational::new(BigInt::from(1), BigInt::from(10).pow(k));
        let low = x.abs_lower().to_rational();
        if tol <= low {
            prop_assert!(!(x.certify_nonzero() && x.certify_below(&tol)));
        }
    }

    #[test]
    fn qseries_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if let Ok(inv) = a.inv() {
            prop_assert_eq!(a.mul(&inv), QSeries::one(12));
        }
    }

    #[test]
    fn psi_is_multiplicative(a in 1u64..500, b in 1u64..500) {
        if a.gcd(&b) == 1 {
            prop_assert_eq!(psi(a * b), psi(a) * psi(b));
        }
        prop_assert!(psi(a) >= a);
    }

    #[test]
    fn w_counts_sum_to_psi(h in 1u64..250) {
        let s = 2 * h + 1;
        let total: u64 = divisors(s).into_iter().map(|u| w_count(u, s / u)).sum();
        prop_assert_eq!(total, psi(s));
    }

    #[test]
    fn resultant_symmetry(f in prop::collection::vec(-9i64..9, 2..5), g in prop::collection::vec(-9i64..9, 2..5)) {
        let (f, g) = (GaussPoly1::from_ints(&f), GaussPoly1::from_ints(&g));
        if let (Some(p), Some(q)) = (f.degree(), g.degree()) {
            let rfg = resultant(&f, &g).unwrap();
            let rgf = resultant(&g, &f).unwrap();
            let sign = if (p * q) % 2 == 1 { -GaussRat::one() } else { GaussRat::one() };
            prop_assert_eq!(rfg, &rgf * &sign);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn theta3_inversion(p in 1i64..6, q in 1i64..6) {
        // theta3(i q/p) = sqrt(p/q) theta3(i p/q)
        let a = theta_eval(ThetaKind::Theta3, 1, &TauValue::imag(q, p), 128).unwrap();
        let b = theta_eval(ThetaKind::Theta3, 1, &TauValue::imag(p, q), 128).unwrap();
        let r = BallComplex::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)), 160);
        let s = r.sqrt().unwrap();
        prop_assert!(a.overlaps(&b.mul(&s)));
    }

    #[test]
    fn nonzero_never_flips(c in prop::collection::vec((-10i64..10, 1i64..10), 3)) {
        let coefs: Vec<Coef> = c
            .iter()
            .map(|(n, d)| Coef::Exact(jtheta_core::numthy::AlgebraicLite::gaussian(GaussRat::ratio(*n, *d))))
            .collect();
        let [a, b, e]: [Coef; 3] = coefs.try_into().unwrap();
        let spec = LinearFormSpec::three_term(TauValue::i(), 2, 4, [a, b, e]).unwrap();
        let tol = BigRational::new(BigInt::from(1), BigInt::from(10).pow(40));
        let low = certify_nonvanishing(&spec, &[128], &tol).unwrap();
        if low.verdict == Verdict::CertifiedNonzero {
            let high = certify_nonvanishing(&spec, &[512], &tol).unwrap();
            prop_assert_eq!(high.verdict, Verdict::CertifiedNonzero);
        }
    }
}
