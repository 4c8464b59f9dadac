//! Jacobi theta constants as exact q-series and as certified balls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numerics::{exp, mag, pi, BallComplex, Dyadic, NumericsError};
use crate::parse::{parse_value, ParseError};
use crate::qseries::QSeries;
use crate::surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThetaError {
    #[error("tau is not in the upper half plane")]
    TauNotInUpperHalfPlane,
    #[error("lambda ball contains 0 or 1")]
    LambdaDegenerate,
    #[error("series cutoff {0} too large, tau is too close to the real axis")]
    CutoffTooLarge(u64),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Largest number of series terms theta evaluation will sum.
pub const MAX_CUTOFF: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Theta2,
    Theta3,
    Theta4,
}

impl ThetaKind {
    pub fn from_index(k: u32) -> Option<Self> {
        match k {
            2 => Some(ThetaKind::Theta2),
            3 => Some(ThetaKind::Theta3),
            4 => Some(ThetaKind::Theta4),
            _ => None,
        }
    }
}

/// A point of the upper half plane with quadratic-surd coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauValue {
    re: Surd,
    im: Surd,
}

impl TauValue {
    pub fn new(re: Surd, im: Surd) -> Result<Self, ThetaError> {
        if im.signum() <= 0 {
            return Err(ThetaError::TauNotInUpperHalfPlane);
        }
        Ok(TauValue { re, im })
    }

    pub fn parse(s: &str) -> Result<Self, ThetaError> {
        let p = parse_value(s)?;
        Self::new(p.re_surd()?, p.im_surd()?)
    }

    /// `re + i*im` for rationals.
    pub fn rational(re: BigRational, im: BigRational) -> Result<Self, ThetaError> {
        Self::new(Surd::rational(re), Surd::rational(im))
    }

    /// `i * t` for a positive rational `t = num/den`.
    pub fn imag(num: i64, den: i64) -> Self {
        Self::rational(
            BigRational::zero(),
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
        .expect("positive imaginary part")
    }

    pub fn i() -> Self {
        Self::imag(1, 1)
    }

    pub fn re(&self) -> &Surd {
        &self.re
    }

    pub fn im(&self) -> &Surd {
        &self.im
    }

    /// `a * tau` for a positive integer `a`.
    pub fn scaled(&self, a: u64) -> Self {
        let s = BigRational::from_integer(BigInt::from(a));
        TauValue {
            re: self.re.scale(&s),
            im: self.im.scale(&s),
        }
    }

    /// `tau + k`.
    pub fn shifted(&self, k: i64) -> Self {
        TauValue {
            re: self
                .re
                .add(&Surd::int(k))
                .expect("adding an integer never mixes radicands"),
            im: self.im.clone(),
        }
    }

    pub fn to_ball(&self, prec: u32) -> BallComplex {
        self.re.to_ball(prec).add(&self.im.to_ball(prec).mul_i())
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }
}

impl core::fmt::Display for TauValue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}+({})*i", self.re, self.im)
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact series of `theta3(a tau)`, `theta4(a tau)`, or `theta2(a tau)^4`,
/// truncated at `order`.
pub fn theta_series(kind: ThetaKind, a: usize, order: usize) -> QSeries {
    assert!(a >= 1, "multiplier must be positive");
    match kind {
        ThetaKind::Theta3 | ThetaKind::Theta4 => {
            let mut s = QSeries::one(order);
            let mut n = 1usize;
            while a * n * n < order {
                let c = if kind == ThetaKind::Theta4 && n % 2 == 1 { -2 } else { 2 };
                s.set(a * n * n, int(c));
                n += 1;
            }
            s
        }
        ThetaKind::Theta2 => {
            // 16 q^a (sum_{n>=0} q^{a n(n+1)})^4
            let mut inner = QSeries::zero(order);
            let mut n = 0usize;
            while a * n * (n + 1) < order {
                inner.set(a * n * (n + 1), BigRational::one());
                n += 1;
            }
            let inner4 = inner.pow(4);
            QSeries::from_terms(
                inner4.terms().map(|(k, c)| (k + a, c * int(16))),
                order,
            )
        }
    }
}

/// Exact series of `lambda = theta2^4 / theta3^4`.
pub fn lambda_series(order: usize) -> QSeries {
    let t2 = theta_series(ThetaKind::Theta2, 1, order);
    let t3 = theta_series(ThetaKind::Theta3, 1, order).pow(4);
    t2.div(&t3).expect("theta3 series has constant term 1")
}

/// Least `M` with `a * g(M+1) * pi * Im(tau) > prec * ln 2 + 8`, where
/// `g(k) = k^2` (theta3, theta4) or `k (k+1)` (theta2).
pub fn cutoff(kind: ThetaKind, a: u64, im_tau: f64, prec: u32) -> Result<u64, ThetaError> {
    let target = prec as f64 * core::f64::consts::LN_2 + 8.0;
    let rate = a as f64 * core::f64::consts::PI * im_tau;
    if !(rate > 0.0) {
        return Err(ThetaError::TauNotInUpperHalfPlane);
    }
    let need = target / rate;
    let k = libm::ceil(libm::sqrt(need)) as u64;
    if k > MAX_CUTOFF {
        return Err(ThetaError::CutoffTooLarge(k));
    }
    let g = |k: u64| match kind {
        ThetaKind::Theta2 => (k * (k + 1)) as f64,
        _ => (k * k) as f64,
    };
    let mut m = k.saturating_sub(2);
    while g(m + 1) * rate <= target {
        m += 1;
    }
    Ok(m)
}

/// Certified enclosure of `theta_kind(a tau)`.
pub fn theta_eval(
    kind: ThetaKind,
    a: u64,
    tau: &TauValue,
    prec: u32,
) -> Result<BallComplex, ThetaError> {
    let m = cutoff(kind, a, tau.im_f64(), prec)?;
    let wp = prec + 32 + (64 - m.leading_zeros());
    theta_sum(kind, a, &tau.to_ball(wp), m, prec)
}

/// Raw-ball entry point: `tau` is an arbitrary enclosure whose imaginary
/// part must be certifiably positive. No exactness beyond the ball is kept.
pub fn theta_eval_ball(
    kind: ThetaKind,
    a: u64,
    tau: &BallComplex,
    prec: u32,
) -> Result<BallComplex, ThetaError> {
    let lo = tau.im_lower();
    if !lo.is_positive() {
        return Err(ThetaError::TauNotInUpperHalfPlane);
    }
    let m = cutoff(kind, a, lo.to_f64(), prec)?;
    let wp = prec + 32 + (64 - m.leading_zeros());
    theta_sum(kind, a, &tau.with_prec(wp), m, prec)
}

fn theta_sum(
    kind: ThetaKind,
    a: u64,
    tau: &BallComplex,
    m: u64,
    prec: u32,
) -> Result<BallComplex, ThetaError> {
    let wp = tau.prec();
    let pib = pi(wp + 8);
    // Q = exp(i pi a tau)
    let z = tau.mul(&pib).mul_int(a).mul_i();
    let big_q = exp(&z);
    let qa = big_q.abs_upper();
    if qa >= Dyadic::one() {
        return Err(ThetaError::TauNotInUpperHalfPlane);
    }
    let one_minus = mag::sub_lower(&Dyadic::one(), &qa);
    let two = Dyadic::from_int(2);
    let q2 = big_q.sqr();
    let result = match kind {
        ThetaKind::Theta3 | ThetaKind::Theta4 => {
            let alt = kind == ThetaKind::Theta4;
            // p = Q^{n^2}, r = Q^{2n+1}
            let mut sum = BallComplex::zero(wp);
            let mut p = BallComplex::one(wp);
            let mut r = big_q.clone();
            for n in 1..=m {
                p = p.mul(&r);
                r = r.mul(&q2);
                sum = if alt && n % 2 == 1 { sum.sub(&p) } else { sum.add(&p) };
            }
            let tail = mag::div(&mag::pow_up(&qa, (m + 1) * (m + 1)), &one_minus);
            BallComplex::one(wp)
                .add(&sum.mul_int(2))
                .add_error(&mag::mul(&two, &tail))
        }
        ThetaKind::Theta2 => {
            // 2 Q^{1/4} sum_{n=0}^{M} Q^{n(n+1)}; p = Q^{n(n+1)}, r = Q^{2(n+1)}
            let mut sum = BallComplex::one(wp);
            let mut p = BallComplex::one(wp);
            let mut r = q2.clone();
            for _ in 1..=m {
                p = p.mul(&r);
                r = r.mul(&q2);
                sum = sum.add(&p);
            }
            let tail = mag::div(&mag::pow_up(&qa, (m + 1) * (m + 2)), &one_minus);
            let sum = sum.add_error(&tail);
            let quarter = exp(&z.mul_pow2(-2));
            quarter.mul(&sum).mul_int(2)
        }
    };
    Ok(result.with_prec(prec))
}

/// Enclosure of `lambda(tau) = theta2^4 / theta3^4`.
pub fn lambda_eval(tau: &TauValue, prec: u32) -> Result<BallComplex, ThetaError> {
    let wp = prec + 16;
    let t2 = theta_eval(ThetaKind::Theta2, 1, tau, wp)?;
    let t3 = theta_eval(ThetaKind::Theta3, 1, tau, wp)?;
    Ok(t2.pow_u(4).div(&t3.pow_u(4))?.with_prec(prec))
}

/// Enclosure of `j(tau) = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
pub fn j_eval(tau: &TauValue, prec: u32) -> Result<BallComplex, ThetaError> {
    let wp = prec + 32;
    let l = lambda_eval(tau, wp)?;
    j_from_lambda(&l).map(|b| b.with_prec(prec))
}

pub fn j_from_lambda(l: &BallComplex) -> Result<BallComplex, ThetaError> {
    let prec = l.prec();
    let one = BallComplex::one(prec);
    let lm1 = l.sub(&one);
    if !l.certify_nonzero() || !lm1.certify_nonzero() {
        return Err(ThetaError::LambdaDegenerate);
    }
    let num = l.sqr().sub(l).add(&one).pow_u(3).mul_int(256);
    let den = l.sqr().mul(&lm1.sqr());
    Ok(num.div(&den)?)
}
