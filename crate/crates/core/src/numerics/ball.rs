use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dyadic::{mag, Dyadic, Rounding};
use super::NumericsError;

/// Working precision never drops below this many bits.
pub const MIN_PREC: u32 = 32;

/// Complex disk `{ z : |z - (re + i im)| <= rad }` with a working precision.
///
/// All operations return a ball that contains the exact result for any points
/// taken from the operand balls. Midpoints are rounded to `prec` bits and the
/// rounding error is folded into `rad`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallComplex {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl BallComplex {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        BallComplex {
            re,
            im,
            rad: mag::up(&rad),
            prec: prec.max(MIN_PREC),
        }
    }

    /// Ball with the given midpoint rounded to `prec`.
    pub fn from_mid(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        let (r, er) = re.round(prec, Rounding::Nearest);
        let (i, ei) = im.round(prec, Rounding::Nearest);
        Self::new(r, i, mag::sum(&[&rad, &er, &ei]), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Dyadic::zero(), Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        Self::new(Dyadic::zero(), Dyadic::one(), Dyadic::zero(), prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Self::from_mid(Dyadic::from_int(n), Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn from_dyadic(x: Dyadic, prec: u32) -> Self {
        Self::from_mid(x, Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_gauss(q, &BigRational::zero(), prec)
    }

    /// Enclosure of `re + i im` for exact rationals.
    pub fn from_gauss(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        let prec = prec.max(MIN_PREC);
        let (r, er) = Dyadic::from_rational(re, prec);
        let (i, ei) = Dyadic::from_rational(im, prec);
        Self::from_mid(r, i, mag::add(&er, &ei), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::from_dyadic(Dyadic::from_f64(x), prec)
    }

    pub fn mid_re(&self) -> &Dyadic {
        &self.re
    }

    pub fn mid_im(&self) -> &Dyadic {
        &self.im
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_mid(self.re.clone(), self.im.clone(), self.rad.clone(), prec)
    }

    /// Widen the radius by `extra`.
    pub fn add_error(&self, extra: &Dyadic) -> Self {
        let mut b = self.clone();
        b.rad = mag::add(&self.rad, extra);
        b
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.rad.is_zero() && self.re.is_zero() && self.im.is_zero()
    }

    /// Upper bound on `|mid|`.
    pub fn mid_abs_upper(&self) -> Dyadic {
        mag::sqrt_up(&mag::add(
            &mag::mul(&self.re, &self.re),
            &mag::mul(&self.im, &self.im),
        ))
    }

    /// Lower bound on `|mid|`.
    pub fn mid_abs_lower(&self) -> Dyadic {
        let sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        mag::sqrt_down(&mag::down(&sq))
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        mag::add(&self.mid_abs_upper(), &self.rad)
    }

    /// Lower bound on `|z|` over the ball (zero if the ball reaches 0).
    pub fn abs_lower(&self) -> Dyadic {
        mag::sub_lower(&self.mid_abs_lower(), &self.rad)
    }

    fn mid_norm_sq(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Rigorous test that every point of the ball is nonzero.
    pub fn certify_nonzero(&self) -> bool {
        self.mid_norm_sq() > self.rad.mul(&self.rad)
    }

    /// Rigorous test that `|mid| + rad < tol`.
    pub fn certify_below(&self, tol: &BigRational) -> bool {
        if !tol.is_positive() {
            return false;
        }
        let slack = tol - self.rad.to_rational();
        if !slack.is_positive() {
            return false;
        }
        self.mid_norm_sq().to_rational() < &slack * &slack
    }

    /// True when the exact complex number `re + i im` lies in the ball.
    pub fn contains_gauss(&self, re: &BigRational, im: &BigRational) -> bool {
        let dr = self.re.to_rational() - re;
        let di = self.im.to_rational() - im;
        let r = self.rad.to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.contains_gauss(q, &BigRational::zero())
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains(&self, other: &BallComplex) -> bool {
        let slack = self.rad.sub(&other.rad);
        if slack.is_negative() {
            return false;
        }
        let dr = self.re.sub(&other.re);
        let di = self.im.sub(&other.im);
        dr.mul(&dr).add(&di.mul(&di)) <= slack.mul(&slack)
    }

    /// True when the two balls intersect (they may describe the same number).
    pub fn overlaps(&self, other: &BallComplex) -> bool {
        let dr = self.re.sub(&other.re);
        let di = self.im.sub(&other.im);
        let r = self.rad.add(&other.rad);
        dr.mul(&dr).add(&di.mul(&di)) <= r.mul(&r)
    }

    /// True when the ball meets the real axis.
    pub fn may_be_real(&self) -> bool {
        self.im.abs() <= self.rad
    }

    /// Real ball `[mid_re ± rad]` as a certified lower bound, if positive.
    pub fn re_lower(&self) -> Dyadic {
        self.re.sub(&self.rad)
    }

    pub fn re_upper(&self) -> Dyadic {
        self.re.add(&self.rad)
    }

    pub fn im_lower(&self) -> Dyadic {
        self.im.sub(&self.rad)
    }

    pub fn im_upper(&self) -> Dyadic {
        self.im.add(&self.rad)
    }

    pub fn real_part(&self) -> Self {
        Self::new(self.re.clone(), Dyadic::zero(), self.rad.clone(), self.prec)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg(), self.rad.clone(), self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.rad.clone(), self.prec)
    }

    pub fn add(&self, other: &BallComplex) -> Self {
        let prec = self.prec.max(other.prec);
        let (r, er) = self.re.add_rounded(&other.re, prec);
        let (i, ei) = self.im.add_rounded(&other.im, prec);
        let rad = mag::sum(&[&self.rad, &other.rad, &er, &ei]);
        Self::new(r, i, rad, prec)
    }

    pub fn sub(&self, other: &BallComplex) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BallComplex) -> Self {
        let prec = self.prec.max(other.prec);
        let (a, b, c, d) = (&self.re, &self.im, &other.re, &other.im);
        let (r, er) = a.mul(c).add_rounded(&b.mul(d).neg(), prec);
        let (i, ei) = a.mul(d).add_rounded(&b.mul(c), prec);
        let prop = if self.rad.is_zero() && other.rad.is_zero() {
            Dyadic::zero()
        } else {
            mag::sum(&[
                &mag::mul(&self.mid_abs_upper(), &other.rad),
                &mag::mul(&other.mid_abs_upper(), &self.rad),
                &mag::mul(&self.rad, &other.rad),
            ])
        };
        Self::new(r, i, mag::sum(&[&prop, &er, &ei]), prec)
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    /// Multiplication by an exact dyadic scalar.
    pub fn scale(&self, s: &Dyadic) -> Self {
        let (r, er) = self.re.mul(s).round(self.prec, Rounding::Nearest);
        let (i, ei) = self.im.mul(s).round(self.prec, Rounding::Nearest);
        let rad = mag::sum(&[&mag::mul(&self.rad, s), &er, &ei]);
        Self::new(r, i, rad, self.prec)
    }

    pub fn mul_int(&self, n: impl Into<BigInt>) -> Self {
        self.scale(&Dyadic::from_int(n))
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self::new(
            self.re.mul_pow2(k),
            self.im.mul_pow2(k),
            self.rad.mul_pow2(k),
            self.prec,
        )
    }

    /// Multiplication by `i`, exact.
    pub fn mul_i(&self) -> Self {
        Self::new(self.im.neg(), self.re.clone(), self.rad.clone(), self.prec)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul(&Self::from_rational(q, self.prec))
    }

    pub fn div(&self, other: &BallComplex) -> Result<Self, NumericsError> {
        if !other.certify_nonzero() {
            return Err(NumericsError::DivisorContainsZero);
        }
        let prec = self.prec.max(other.prec);
        let (a, b, c, d) = (&self.re, &self.im, &other.re, &other.im);
        let den = c.mul(c).add(&d.mul(d));
        let nr = a.mul(c).add(&b.mul(d));
        let ni = b.mul(c).sub(&a.mul(d));
        let (r, er) = nr.div_rounded(&den, prec + 2);
        let (i, ei) = ni.div_rounded(&den, prec + 2);
        let (r, er2) = r.round(prec, Rounding::Nearest);
        let (i, ei2) = i.round(prec, Rounding::Nearest);
        let prop = if self.rad.is_zero() && other.rad.is_zero() {
            Dyadic::zero()
        } else {
            // (r1 |m2| + |m1| r2) / ((|m2| - r2) |m2|)
            let m2_lo = other.mid_abs_lower();
            let num = mag::add(
                &mag::mul(&self.rad, &other.mid_abs_upper()),
                &mag::mul(&self.mid_abs_upper(), &other.rad),
            );
            let den = mag::mul(&mag::sub_lower(&m2_lo, &other.rad), &m2_lo);
            if den.is_zero() {
                return Err(NumericsError::DivisorContainsZero);
            }
            mag::div(&num, &den)
        };
        let rad = mag::sum(&[&prop, &er, &ei, &er2, &ei2]);
        Ok(Self::new(r, i, rad, prec))
    }

    pub fn inv(&self) -> Result<Self, NumericsError> {
        Self::one(self.prec).div(self)
    }

    /// Real ball enclosing `|z|`.
    pub fn abs(&self) -> Self {
        let sq = self.mid_norm_sq();
        let (s, e) = sq.sqrt_floor(self.prec + 2);
        let (s, e2) = s.round(self.prec, Rounding::Nearest);
        let rad = mag::sum(&[&self.rad, &e, &e2]);
        Self::new(s, Dyadic::zero(), rad, self.prec)
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut result = Self::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// Midpoint as an exact Gaussian rational.
    pub fn mid_rational(&self) -> (BigRational, BigRational) {
        (self.re.to_rational(), self.im.to_rational())
    }
}

impl fmt::Display for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = super::decimal::digits_for_prec(self.prec).min(30);
        let (re, _) = super::decimal::to_sci(&self.re, digits);
        let (im, _) = super::decimal::to_sci(&self.im, digits);
        let rad = super::decimal::upper_sci(&self.rad, 3);
        write!(f, "({} + {}i) +/- {}", re, im, rad)
    }
}
