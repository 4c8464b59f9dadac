use std::fs;
use std::time::Duration;

use jtheta::cache::{Cache, CacheEvent};
use jtheta::polyfile::{self, PolyFile};
use jtheta_core::certify::{
    certify_nonvanishing, check_conditions, default_tol, formal_independence, identity_suite, proof_step_w_eta,
    ramanujan_spec, Coef, LinearFormSpec, Theorem, Verdict, DEFAULT_SCHEDULE,
};
use jtheta_core::elimination::{build_r, eval_poly_ball, GaussPoly1};
use jtheta_core::gauss::GaussRat;
use jtheta_core::modpoly::{
    cross_law, exact_residual, fit_P, fit_Q, p_pair, s_decompose, FitOptions, IntPoly2, MemoFitter, PolyKind,
    PolySource, ZPoly,
};
use jtheta_core::numthy::{divisors, psi, w_count, AlgebraicLite};
use jtheta_core::thetafun::{theta_eval, TauValue, ThetaKind};
use jtheta_tests::{report, timed};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts() -> FitOptions {
    FitOptions::default()
}

fn lin(root: i64) -> ZPoly {
    ZPoly::from_i64(&[-root, 1])
}

fn pow10_inv(k: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(k))
}

fn alg(s: &str) -> AlgebraicLite {
    AlgebraicLite::parse(s).unwrap()
}

fn finish(criterion: u32, pass: bool, detail: String, elapsed: Duration) {
    report(criterion, pass, &detail, elapsed);
    assert!(pass, "criterion {}: {}", criterion, detail);
}

/// Multiplicity of each root `u^2`, `u | n`, of `P_n(X,0)`, paired with the
/// divisor count `w(u, n/u)`.
fn section_multiplicities(p: &IntPoly2, n: u64) -> Vec<(u64, usize, u64)> {
    let s = p.at_y0();
    divisors(n)
        .into_iter()
        .map(|u| {
            let root = BigRational::from_integer(BigInt::from(u * u));
            (u * u, s.root_multiplicity(&root), w_count(u, n / u))
        })
        .collect()
}

#[test]
fn criterion_01_identity_suite() {
    let tol = pow10_inv(40);
    let (r, t) = timed(|| identity_suite(256, &tol).unwrap());
    let worst = r
        .items
        .iter()
        .filter(|i| i.verdict.as_str() != "pass")
        .map(|i| format!("{}@{}", i.label, i.tau))
        .collect::<Vec<_>>();
    let pass = r.all_pass() && t < Duration::from_secs(10);
    finish(
        1,
        pass,
        format!("{} identity checks at 256 bits below 1e-40, failing {:?}", r.items.len(), worst),
        t,
    );
}

#[test]
fn criterion_02_fit_p3() {
    let (p3, t) = timed(|| fit_P(3, opts()).unwrap());
    let monic = p3.coeff(psi(3) as u32, 0) == BigInt::from(1) && p3.x_coeff(psi(3) as u32).degree() == Some(0);
    let deg = p3.deg_x() == Some(4);
    let residual = exact_residual(&p3, &p_pair(3, 200));
    let zero_to_200 = residual.order() >= 200 && residual.is_zero();
    let section = p3.at_y0() == lin(1).pow(3).mul(&lin(9));
    let pass = monic && deg && zero_to_200 && section && t < Duration::from_secs(5);
    finish(
        2,
        pass,
        format!(
            "P_3: monic {}, deg_X 4 {}, residual zero to order 200 {}, P_3(X,0) = (X-1)^3 (X-9) {}",
            monic, deg, zero_to_200, section
        ),
        t,
    );
}

#[test]
fn criterion_03_fit_p5_p9() {
    let (p5, t5) = timed(|| fit_P(5, opts()).unwrap());
    let ok5 = p5.deg_x() == Some(6) && p5.at_y0() == lin(1).pow(5).mul(&lin(25));
    let (p9, t9) = timed(|| fit_P(9, opts()).unwrap());
    let mult = section_multiplicities(&p9, 9);
    let agree = mult.iter().all(|(_, got, want)| *got as u64 == *want);
    let total: usize = mult.iter().map(|m| m.1).sum();
    let ok9 = p9.deg_x() == Some(12) && agree && total as u64 == psi(9);
    let limit = Duration::from_secs(120);
    let pass = ok5 && ok9 && t5 < limit && t9 < limit;
    let shown: Vec<String> = mult.iter().map(|(r, got, want)| format!("{}:{}/{}", r, got, want)).collect();
    finish(
        3,
        pass,
        format!(
            "P_5 section (X-1)^5 (X-25) {}; P_9 root:multiplicity/w-count {} total {} = psi(9) {} (P_5 {:.2} s, P_9 {:.2} s)",
            ok5,
            shown.join(" "),
            total,
            ok9,
            t5.as_secs_f64(),
            t9.as_secs_f64()
        ),
        t5 + t9,
    );
}

fn cross_law_line(q: &IntPoly2) -> (bool, String) {
    let law = cross_law(q).unwrap();
    let ratio = match &law.ratio {
        Some(r) => format!("actual/expected = {}", r),
        None => "not proportional to the expected product".to_string(),
    };
    (law.holds, if law.holds { "cross-law holds".into() } else { format!("cross-law fails, {}", ratio) })
}

#[test]
fn criterion_04_fit_q6() {
    let (q6, t) = timed(|| fit_Q(6, opts()).unwrap());
    let deg = q6.deg_y() == Some(8);
    let c = q6.meta.c_n.clone().unwrap_or_default();
    let top = q6.at_x0() == ZPoly::x_pow(8).scale(&(&c * &c)) && c != BigInt::from(0);
    let (law, detail) = cross_law_line(&q6);
    let pass = deg && top && law && t < Duration::from_secs(120);
    finish(
        4,
        pass,
        format!("Q_6: deg_Y 8 {}, Q_6(0,Y) = c^2 Y^8 with c = {} {}, {}", deg, c, top, detail),
        t,
    );
}

#[test]
fn criterion_05_fit_q12() {
    let (q12, t) = timed(|| fit_Q(12, opts()).unwrap());
    let deg = q12.deg_y() == Some(16);
    let (law, detail) = cross_law_line(&q12);
    let pass = deg && law && t < Duration::from_secs(900);
    finish(5, pass, format!("Q_12: deg_Y 16 {}, {}", deg, detail), t);
}

#[test]
fn criterion_06_s_decomposition() {
    let ((ok, details), t) = timed(|| {
        let mut ok = true;
        let mut details = Vec::new();
        for n in [3u64, 5] {
            let p = fit_P(n, opts()).unwrap();
            let d = s_decompose(&p).unwrap();
            let vanish = d.parts.iter().skip(1).all(|s| s.coeff(0) == BigInt::from(0));
            let top = !d.parts[d.d_n as usize].is_zero();
            let constant = d.parts[0].coeff(0) == p.coeff(0, 0) && p.coeff(0, 0) != BigInt::from(0);
            let rebuilt = d.reconstruct() == p.terms().map(|(e, c)| (e, c.clone())).collect();
            ok &= vanish && top && constant && rebuilt;
            details.push(format!(
                "P_{}: d_n {}, S_j(0) = 0 {}, S_top nonzero {}, S_0(0) = {}",
                n, d.d_n, vanish, top, d.parts[0].coeff(0)
            ));
        }
        (ok, details)
    });
    finish(6, ok, details.join("; "), t);
}

#[test]
fn criterion_07_proof_step() {
    let mut src = MemoFitter::new(opts());
    let (res, t) = timed(|| {
        let r = proof_step_w_eta(6, 10, &[alg("1"), alg("1"), alg("2")], &mut src).unwrap();
        let q6 = src.poly(PolyKind::Q, 6).unwrap();
        let c = q6.meta.c_n.clone().unwrap();
        let mut expected = vec![GaussRat::zero(); 9];
        expected[8] = GaussRat::from_int(&c * &c);
        let h = r.h_eta == GaussPoly1::new(expected) && r.h_matches();
        let sharp = proof_step_w_eta(6, 10, &[alg("1"), alg("1"), alg("sqrt(5)")], &mut src).unwrap();
        (r, h, sharp)
    });
    let (r, h, sharp) = res;
    let pass = h && !r.section.is_zero() && !r.w_eta.is_zero() && sharp.section.is_zero();
    finish(
        7,
        pass,
        format!(
            "(6,10), alpha (1,1,2): H_6(eta,Y) = c^2 Y^8 {}, {} nonzero {}, W(eta) nonzero {}; beta = sqrt(5): section {}",
            h,
            r.section_name,
            !r.section.is_zero(),
            !r.w_eta.is_zero(),
            sharp.section
        ),
        t,
    );
}

#[test]
fn criterion_08_build_r53() {
    let ((nonzero, certified), t) = timed(|| {
        let mut src = MemoFitter::new(opts());
        let one = GaussRat::one();
        let r = build_r(5, 3, &[one.clone(), one.clone(), one], &mut src).unwrap();
        let tau = TauValue::imag(1, 3);
        let x = theta_eval(ThetaKind::Theta3, 3, &tau, 512)
            .unwrap()
            .div(&theta_eval(ThetaKind::Theta3, 1, &tau, 512).unwrap())
            .unwrap();
        (!r.is_zero(), eval_poly_ball(&r, &x).certify_nonzero())
    });
    finish(
        8,
        nonzero && certified,
        format!("R(X) nonzero {}, R at theta3(3tau)/theta3(tau), tau = i/3, certified nonzero {}", nonzero, certified),
        t,
    );
}

#[test]
fn criterion_09_independence() {
    let (bad, t) = timed(|| {
        (1u32..256)
            .filter(|mask| {
                let a: Vec<BigRational> = (1..=8)
                    .filter(|k| mask & (1 << (k - 1)) != 0)
                    .map(|k| BigRational::from_integer(BigInt::from(k)))
                    .collect();
                !formal_independence(&a, 9).unwrap().independent
            })
            .collect::<Vec<_>>()
    });
    let pass = bad.is_empty() && t < Duration::from_secs(5);
    finish(9, pass, format!("255 subsets of 1..8 at order 9, dependent {:?}", bad), t);
}

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let mut part = || BigRational::new(BigInt::from(rng.gen_range(-10i64..=10)), BigInt::from(rng.gen_range(1i64..=10)));
    GaussRat::new(part(), part())
}

#[test]
fn criterion_10_positivity_battery() {
    let taus = ["i", "i/2", "1/3+i"];
    let shapes = [(2u64, 4u64), (3, 5), (6, 10)];
    let tol = default_tol();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    let ((counts, inconclusive, ramanujan), t) = timed(|| {
        let mut counts = [0usize; 3];
        let mut inconclusive = Vec::new();
        for k in 0..100 {
            let alphas = loop {
                let a = [random_gauss(&mut rng), random_gauss(&mut rng), random_gauss(&mut rng)];
                if a.iter().any(|x| !x.is_zero()) {
                    break a;
                }
            };
            let tau = TauValue::parse(taus[rng.gen_range(0..3)]).unwrap();
            let (m, n) = shapes[rng.gen_range(0..3)];
            let coefs = alphas.clone().map(|a| Coef::Exact(AlgebraicLite::gaussian(a)));
            let spec = LinearFormSpec::three_term(tau, m, n, coefs).unwrap();
            let cert = certify_nonvanishing(&spec, &DEFAULT_SCHEDULE, &tol).unwrap();
            match cert.verdict {
                Verdict::CertifiedNonzero => counts[0] += 1,
                Verdict::ResidualBelowTol => counts[1] += 1,
                Verdict::Inconclusive => {
                    counts[2] += 1;
                    inconclusive.push(k);
                }
            }
        }
        let ram = certify_nonvanishing(&ramanujan_spec(1024), &DEFAULT_SCHEDULE, &tol).unwrap();
        (counts, inconclusive, ram.verdict)
    });
    let pass = counts[2] == 0 && ramanujan == Verdict::ResidualBelowTol;
    finish(
        10,
        pass,
        format!(
            "100 random triples: nonzero {}, below tol {}, inconclusive {} {:?}; Ramanujan form {}",
            counts[0],
            counts[1],
            counts[2],
            inconclusive,
            ramanujan.as_str()
        ),
        t,
    );
}

#[test]
fn criterion_11_enclosure_regression() {
    let ((rad, tight, contains), t) = timed(|| {
        let b = theta_eval(ThetaKind::Theta3, 1, &TauValue::i(), 256).unwrap();
        let fine = theta_eval(ThetaKind::Theta3, 1, &TauValue::i(), 1024).unwrap();
        let rad = b.rad().to_rational();
        let tight = rad < pow10_inv(70);
        (rad, tight, b.contains(&fine))
    });
    let exp = (rad.numer().bits() as f64 - rad.denom().bits() as f64) * std::f64::consts::LOG10_2;
    finish(
        11,
        tight && contains,
        format!("theta3(i) at 256 bits: rad ~ 1e{:.0} below 1e-70 {}, contains 1024-bit value {}", exp, tight, contains),
        t,
    );
}

#[test]
fn criterion_12_polyfile_and_cache() {
    let ((ok, detail), t) = timed(|| {
        let dir = tempfile::tempdir().unwrap();
        let mut ok = true;
        let mut detail = Vec::new();
        for p in [fit_P(3, opts()).unwrap(), fit_P(5, opts()).unwrap(), fit_Q(6, opts()).unwrap()] {
            let path = dir.path().join("round.json");
            polyfile::save_atomic(&p, &path).unwrap();
            let bytes = fs::read(&path).unwrap();
            let back = polyfile::load(&path).unwrap();
            polyfile::save_atomic(&back, &path).unwrap();
            let same = back == p && fs::read(&path).unwrap() == bytes && PolyFile::from_poly(&back) == PolyFile::from_poly(&p);
            ok &= same;
            detail.push(format!("{}_{} round-trip {}", p.meta.kind.as_str(), p.meta.n, same));
        }

        let cdir = dir.path().join("cache");
        let mut first = Cache::new(&cdir, opts());
        let p = first.poly(PolyKind::P, 5).unwrap();
        let path = first.path(PolyKind::P, 5);
        let good = fs::read(&path).unwrap();
        let mut second = Cache::new(&cdir, opts());
        let hit = second.poly(PolyKind::P, 5).unwrap() == p && second.events == vec![CacheEvent::Hit { kind: PolyKind::P, n: 5 }];
        let mut f: PolyFile = serde_json::from_slice(&good).unwrap();
        f.terms[0].c = format!("{}1", f.terms[0].c);
        fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
        let mut third = Cache::new(&cdir, opts());
        let refit = third.poly(PolyKind::P, 5).unwrap() == p
            && matches!(third.events[0], CacheEvent::Discarded { .. })
            && fs::read(&path).unwrap() == good;
        ok &= hit && refit;
        detail.push(format!("cache hit {}, tampered file discarded and rewritten bit-exactly {}", hit, refit));
        (ok, detail)
    });
    finish(12, ok, detail.join("; "), t);
}

/// The proof-step computation over the desk matrix of shapes and ratios.
#[test]
fn invariant_proof_step_desk_matrix() {
    let mut src = MemoFitter::new(opts());
    let mut zero = Vec::new();
    let (_, t) = timed(|| {
        for (m, n) in [(6u64, 10u64), (6, 20), (12, 10)] {
            for beta in ["2", "3", "1+i"] {
                let b = alg(beta);
                let cond = check_conditions(Theorem::EvenEven, m, n, &b, &mut src).unwrap();
                assert!(cond.applies(), "conditions fail for ({m},{n}), beta {beta}");
                let r = proof_step_w_eta(m, n, &[alg("1"), alg("1"), b], &mut src).unwrap();
                if !r.all_nonzero() {
                    zero.push(format!("({m},{n}) beta {beta}: {} = {}, W = {}", r.section_name, r.section, r.w_eta));
                }
            }
        }
    });
    let line = format!("desk matrix: 9 cases, vanishing {:?} [{:.2} s]\n", zero, t.as_secs_f64());
    use std::io::Write;
    let _ = std::io::stdout().write_all(line.as_bytes());
    assert!(zero.is_empty(), "{}", line);
}
