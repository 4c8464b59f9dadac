use super::*;
use crate::elimination::w_at;
use crate::gauss::GaussRat;
use crate::modpoly::{FitOptions, MemoFitter};
use alloc::string::ToString;
use num_bigint::BigInt;

fn alg(s: &str) -> AlgebraicLite {
    AlgebraicLite::parse(s).unwrap()
}

fn tau(s: &str) -> TauValue {
    TauValue::parse(s).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn spec_validation() {
    assert_eq!(
        LinearFormSpec::new(TauValue::i(), vec![]).unwrap_err(),
        CertifyError::InvalidSpec("no terms")
    );
    assert_eq!(
        LinearFormSpec::new(TauValue::i(), vec![(Coef::int(1), 2), (Coef::int(3), 2)]).unwrap_err(),
        CertifyError::DuplicateMultipliers
    );
    assert_eq!(
        LinearFormSpec::new(TauValue::i(), vec![(Coef::int(1), 0)]).unwrap_err(),
        CertifyError::NonPositiveMultiplier
    );
}

#[test]
fn single_term_is_theta3() {
    let spec = LinearFormSpec::new(TauValue::i(), vec![(Coef::int(1), 1)]).unwrap();
    let v = eval_linear_form(&spec, 128).unwrap();
    let t = theta_eval(ThetaKind::Theta3, 1, &TauValue::i(), 128).unwrap();
    assert!(v.overlaps(&t));
    let approx = BallComplex::from_rational(&q(108643481121330801, 100000000000000000), 128);
    assert!(v.sub(&approx).abs_upper().to_f64() < 1e-17);
}

#[test]
fn positive_form_and_ramanujan() {
    let spec = LinearFormSpec::three_term(TauValue::i(), 2, 4, [Coef::int(1), Coef::int(1), Coef::int(1)]).unwrap();
    let c = certify_nonvanishing(&spec, &DEFAULT_SCHEDULE, &default_tol()).unwrap();
    assert_eq!(c.verdict, Verdict::CertifiedNonzero);
    assert_eq!(c.prec_used, 128);
    assert!(c.bound.starts_with('3'), "{}", c.bound);

    let c = certify_nonvanishing(&ramanujan_spec(256), &[128, 256], &default_tol()).unwrap();
    assert_eq!(c.verdict, Verdict::ResidualBelowTol);
    assert_eq!(c.prec_used, 256);
    assert_eq!(c.trace.len(), 3);

    let spec = LinearFormSpec::new(TauValue::i(), vec![(Coef::int(1), 1), (Coef::int(-1), 2)]).unwrap();
    let c = certify_nonvanishing(&spec, &DEFAULT_SCHEDULE, &default_tol()).unwrap();
    assert_eq!(c.verdict, Verdict::CertifiedNonzero);
}

#[test]
fn unreachable_tolerance_is_inconclusive() {
    let tiny = BigRational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), 80));
    let c = certify_nonvanishing(&ramanujan_spec(128), &[64, 128], &tiny).unwrap();
    assert_eq!(c.verdict, Verdict::Inconclusive);
    assert!(certify_nonvanishing(&ramanujan_spec(64), &[128, 64], &tiny).is_err());
}

#[test]
fn prop1_examples() {
    let c = prop1_check(0, tau("1/3+i"), [Coef::int(1), Coef::int(1), Coef::int(1)], 256).unwrap();
    assert_eq!(c.verdict, Verdict::CertifiedNonzero);
    let c = prop1_check(1, TauValue::imag(1, 5), [Coef::int(0), Coef::int(0), Coef::int(1)], 256).unwrap();
    assert_eq!(c.verdict, Verdict::CertifiedNonzero);
    let r = ramanujan_spec(256);
    let c = prop1_check(0, TauValue::i(), [r.terms[0].0.clone(), Coef::int(-2), Coef::int(0)], 256).unwrap();
    assert_eq!(c.verdict, Verdict::ResidualBelowTol);
    assert!(prop1_check(0, TauValue::i(), [Coef::int(0), Coef::int(0), Coef::int(0)], 256).is_err());
}

#[test]
fn suite_passes_at_256_bits() {
    let r = identity_suite(256, &default_tol()).unwrap();
    for i in &r.items {
        assert_eq!(i.verdict, ItemVerdict::Pass, "{:?}", i);
    }
    assert_eq!(r.items.len(), 3 + 6 + 1 + 1 + 1 + 1 + 3 + 1);
}

#[test]
fn suite_at_low_precision_is_inconclusive() {
    let tol = BigRational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), 60));
    let r = identity_suite(64, &tol).unwrap();
    assert!(!r.all_pass());
    assert!(!r.any_fail());
    assert!(r.items.iter().any(|i| i.verdict == ItemVerdict::Inconclusive));
}

#[test]
fn octic_items() {
    let r = run_item(SuiteItem::Octic, 256, &default_tol(), Some(&TauValue::imag(1, 2))).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].verdict, ItemVerdict::Pass);
    assert!(run_item(SuiteItem::CmTheta2, 128, &default_tol(), Some(&TauValue::i())).is_err());
}

#[test]
fn printed_octic_does_not_vanish() {
    for t in [TauValue::imag(1, 2), TauValue::i(), TauValue::imag(2, 3)] {
        let v = suite::octic_residual(&t, 128, true).unwrap();
        assert!(v.certify_nonzero());
        let v = suite::octic_residual(&t, 256, false).unwrap();
        assert!(v.certify_below(&default_tol()));
    }
}

#[test]
fn independence_examples() {
    let r = formal_independence(&[q(1, 1), q(2, 1)], 3).unwrap();
    assert!(r.independent);
    assert_eq!(r.exponents, vec![0, 1, 2]);
    let five: Vec<BigRational> = (1..=5).map(|k| q(k, 1)).collect();
    assert!(formal_independence(&five, 6).unwrap().independent);
    let r = formal_independence(&[q(1, 2), q(1, 3)], 4).unwrap();
    assert_eq!(r.scaled, vec![3, 2]);
    assert_eq!(r.denominator, 6);
    assert!(r.independent);
    assert_eq!(
        formal_independence(&[q(1, 2), q(2, 4)], 4).unwrap_err(),
        CertifyError::DuplicateMultipliers
    );
    assert_eq!(
        formal_independence(&[q(-1, 2)], 4).unwrap_err(),
        CertifyError::NonPositiveMultiplier
    );
    // three rows over two exponents
    let r = formal_independence(&[q(1, 1), q(2, 1), q(3, 1)], 2).unwrap();
    assert!(!r.independent);
    assert_eq!(r.rank, 2);
}

#[test]
fn theorem_names() {
    assert_eq!(Theorem::parse("2.3"), Some(Theorem::EvenEven));
    assert_eq!(Theorem::parse("cor2.1"), Some(Theorem::CoprimeEvenEven));
    assert_eq!(Theorem::parse("even-odd"), Some(Theorem::EvenOdd));
    assert_eq!(Theorem::parse("2.9"), None);
}

#[test]
fn condition_shapes() {
    let mut src = MemoFitter::new(FitOptions::default());
    let two = alg("2");
    assert!(matches!(
        check_conditions(Theorem::EvenEven, 12, 9, &two, &mut src),
        Err(CertifyError::ShapeMismatch { .. })
    ));
    assert!(matches!(
        check_conditions(Theorem::CoprimeEvenEven, 6, 12, &two, &mut src),
        Err(CertifyError::ShapeMismatch { .. })
    ));
    assert!(matches!(
        check_conditions(Theorem::EvenOdd, 6, 10, &two, &mut src),
        Err(CertifyError::ShapeMismatch { .. })
    ));
    let r = check_conditions(Theorem::CoprimeEvenEven, 12, 20, &alg("1+i"), &mut src).unwrap();
    assert!(r.applies());
    let r = check_conditions(Theorem::CoprimeEvenEven, 12, 20, &alg("-i"), &mut src).unwrap();
    assert!(!r.applies());
}

#[test]
fn conditions_even_even() {
    let mut src = MemoFitter::new(FitOptions::default());
    let r = check_conditions(Theorem::EvenEven, 6, 10, &alg("2"), &mut src).unwrap();
    assert_eq!(r.checks[0].status, Status::Holds);
    assert_eq!(r.checks[1].status, Status::Fails);
    assert_eq!(r.checks[2].status, Status::Holds);
    assert!(r.applies());
    let r = check_conditions(Theorem::EvenEven, 6, 10, &alg("i"), &mut src).unwrap();
    assert_eq!(r.checks[0].status, Status::Fails);
    assert_eq!(r.checks[1].status, Status::Fails);
    // R_{10,0}(1) = 0 since 1 = 1/u^2 with u = 1
    assert_eq!(r.checks[2].status, Status::Fails);
    assert!(!r.applies());
}

#[test]
fn conditions_even_odd() {
    let mut src = MemoFitter::new(FitOptions::default());
    let r = check_conditions(Theorem::EvenOdd, 6, 3, &alg("2"), &mut src).unwrap();
    assert_eq!(r.checks[0].status, Status::Fails);
    assert_eq!(r.checks[1].status, Status::Holds);
    // S_{3,0}(9 beta^-4) vanishes at beta^4 = 9/9 = 1, a root of P_3(X, 0)
    let r = check_conditions(Theorem::EvenOdd, 6, 3, &alg("1"), &mut src).unwrap();
    assert_eq!(r.checks[1].status, Status::Fails);
    assert!(!r.applies());
}

#[test]
fn beta_ratios() {
    assert_eq!(beta_ratio(&alg("1"), &alg("2")).unwrap(), alg("2"));
    assert_eq!(beta_ratio(&alg("2"), &alg("2*sqrt(5)")).unwrap(), alg("sqrt(5)"));
    assert_eq!(beta_ratio(&alg("i"), &alg("sqrt(5)")).unwrap(), alg("-i*sqrt(5)"));
    assert!(matches!(
        beta_ratio(&alg("1+i"), &alg("sqrt(5)")),
        Err(CertifyError::Unsupported(_))
    ));
}

#[test]
fn proof_step_six_ten() {
    let mut src = MemoFitter::new(FitOptions::default());
    let alphas = [alg("1"), alg("1"), alg("2")];
    let r = proof_step_w_eta(6, 10, &alphas, &mut src).unwrap();
    assert!(r.inner.is_zero());
    assert!(r.h_matches());
    assert!(r.h_only_root_zero());
    assert_eq!(r.eta4, GaussRat::ratio(1, 16));
    assert!(!r.section.is_zero());
    assert!(!r.w_eta.is_zero());
    assert!(r.all_nonzero());

    let g = [GaussRat::from_int(1), GaussRat::from_int(1), GaussRat::from_int(2)];
    let eta = GaussRat::ratio(-1, 2);
    let direct = w_at(6, 10, &g, &eta, &mut src).unwrap();
    assert_eq!(direct.value, r.w_eta);
}

#[test]
fn proof_step_sharpness() {
    let mut src = MemoFitter::new(FitOptions::default());
    let alphas = [alg("1"), alg("1"), alg("sqrt(5)")];
    let r = proof_step_w_eta(6, 10, &alphas, &mut src).unwrap();
    assert!(r.inner.is_zero());
    assert!(r.h_matches());
    assert_eq!(r.eta4, GaussRat::ratio(1, 25));
    assert!(r.section.is_zero());
    assert!(r.w_eta.is_zero());
    assert!(!r.all_nonzero());
}

#[test]
fn proof_step_precondition() {
    let mut src = MemoFitter::new(FitOptions::default());
    let alphas = [alg("1"), alg("1"), alg("1")];
    assert_eq!(
        proof_step_w_eta(6, 10, &alphas, &mut src).unwrap_err(),
        CertifyError::PreconditionNotVerified("even-even")
    );
}

#[test]
fn proof_step_odd_n() {
    let mut src = MemoFitter::new(FitOptions::default());
    let alphas = [alg("1"), alg("1"), alg("2")];
    let r = proof_step_w_eta(6, 3, &alphas, &mut src).unwrap();
    assert_eq!(r.theorem, Theorem::EvenOdd);
    assert!(r.all_nonzero(), "{:?}", r.section.to_string());
}
