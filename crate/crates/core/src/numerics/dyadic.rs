//! Binary floating point numbers `man * 2^exp` with an unbounded mantissa.
//!
//! Every value is stored canonically (odd mantissa, or zero with exponent 0)
//! so that structural equality is numeric equality. Arithmetic is either exact
//! or explicitly rounded to a bit budget, in which case the caller receives an
//! upper bound on the rounding error.

use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Floor,
    Ceil,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.man >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `t` with `|self| < 2^t`. Zero maps to `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    pub fn mul(&self, other: &Dyadic) -> Self {
        Self::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Exact sum. Only use when the exponent gap is known to be moderate;
    /// [`Dyadic::add_rounded`] is the safe general entry point.
    pub fn add(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << ((self.exp - e) as usize);
        let b = &other.man << ((other.exp - e) as usize);
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Self {
        self.add(&other.neg())
    }

    /// Round to at most `prec` significant bits. Returns the rounded value and
    /// an upper bound on the absolute rounding error (zero when exact).
    pub fn round(&self, prec: u32, mode: Rounding) -> (Dyadic, Dyadic) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Dyadic::zero());
        }
        let shift = bits - prec as u64;
        let m = match mode {
            Rounding::Floor => &self.man >> shift,
            Rounding::Ceil => -((-&self.man) >> shift),
            Rounding::Nearest => (&self.man + (BigInt::one() << (shift - 1))) >> shift,
        };
        let err = Dyadic::pow2(self.exp + shift as i64);
        (Self::new(m, self.exp + shift as i64), err)
    }

    /// Round to `prec` bits, discarding the error bound.
    pub fn rounded(&self, prec: u32, mode: Rounding) -> Dyadic {
        self.round(prec, mode).0
    }

    /// Sum rounded to `prec` bits. Operands whose low bits lie far below the
    /// leading bit of the result are truncated first, which keeps the exact
    /// intermediate small even when exponents differ by millions.
    pub fn add_rounded(&self, other: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
        if self.is_zero() {
            return other.round(prec, Rounding::Nearest);
        }
        if other.is_zero() {
            return self.round(prec, Rounding::Nearest);
        }
        let top = self.top().max(other.top());
        let cutoff = top - prec as i64 - 8;
        let mut err = Dyadic::zero();
        let a = self.truncate_below(cutoff, &mut err);
        let b = other.truncate_below(cutoff, &mut err);
        let (s, e2) = a.add(&b).round(prec, Rounding::Nearest);
        (s, err.add(&e2))
    }

    fn truncate_below(&self, cutoff: i64, err: &mut Dyadic) -> Dyadic {
        if self.exp >= cutoff {
            return self.clone();
        }
        let shift = (cutoff - self.exp) as u64;
        *err = err.add(&Dyadic::pow2(cutoff));
        Self::new(&self.man >> shift, cutoff)
    }

    /// Quotient rounded toward negative infinity with about `prec` bits.
    /// The error is below the returned bound.
    pub fn div_rounded(&self, other: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        let s = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.man << (s as usize);
        let q = num_integer::Integer::div_floor(&num, &other.man);
        let e = self.exp - other.exp - s;
        (Self::new(q, e), Dyadic::pow2(e))
    }

    /// Floor of the square root of a nonnegative value, to `prec` bits.
    pub fn sqrt_floor(&self, prec: u32) -> (Dyadic, Dyadic) {
        self.root_floor(2, prec)
    }

    /// Floor of the `k`-th root of a nonnegative value, to about `prec` bits.
    /// Returns the root and the size of one unit in its last place, which
    /// bounds the truncation error.
    pub fn root_floor(&self, k: u32, prec: u32) -> (Dyadic, Dyadic) {
        assert!(!self.is_negative(), "root of negative dyadic");
        assert!(k >= 1);
        if self.is_zero() {
            return (Dyadic::zero(), Dyadic::zero());
        }
        if k == 1 {
            return (self.clone(), Dyadic::zero());
        }
        let k64 = k as i64;
        // want man * 2^s with >= k*(prec+2) bits and (exp - s) divisible by k
        let want = k64 * (prec as i64 + 2);
        let mut s = (want - self.bits() as i64).max(0);
        let r = (self.exp - s).rem_euclid(k64);
        s += r;
        let n = &self.man << (s as usize);
        let root = n.nth_root(k);
        let e = (self.exp - s) / k64;
        (Self::new(root, e), Dyadic::pow2(e))
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << (self.exp as usize))
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    /// Nearest-ish dyadic approximation of a rational, with an error bound.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Dyadic, Dyadic) {
        let n = Dyadic::from_int(q.numer().clone());
        let d = Dyadic::from_int(q.denom().clone());
        if q.denom().is_one() {
            return n.round(prec, Rounding::Nearest);
        }
        n.div_rounded(&d, prec)
    }

    /// Upper bound for a nonnegative rational, with `bits` of mantissa.
    pub fn rational_upper(q: &BigRational, bits: u32) -> Dyadic {
        let (v, e) = Dyadic::from_rational(&q.abs(), bits);
        v.add(&e).rounded(bits, Rounding::Ceil)
    }

    /// Approximate `log2 |self|`; `-inf` for zero. Used only for heuristics.
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.man.bits();
        let shift = bits.saturating_sub(60);
        let top = (self.man.abs() >> shift).to_u64().unwrap_or(u64::MAX) as f64;
        libm::log2(top) + (self.exp + shift as i64) as f64
    }

    /// Approximate conversion, saturating to 0 or infinity outside f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let shift = bits.saturating_sub(60);
        let m = (&self.man >> shift).to_i64().unwrap_or(0) as f64;
        let e = self.exp + shift as i64;
        let e = e.clamp(-5000, 5000) as i32;
        libm::scalbn(m, e)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if (bits >> 63) != 0 { -1i64 } else { 1 };
        let expo = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if expo == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), expo - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign, nonzero: compare magnitudes by top bit first
        let (ta, tb) = (self.top(), other.top());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.man.abs() << ((self.exp - e) as usize);
            let b = other.man.abs() << ((other.exp - e) as usize);
            a.cmp(&b)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

/// Radii and other magnitude bounds are kept short: this many mantissa bits,
/// always rounded upward.
pub const MAG_BITS: u32 = 30;

/// Upward-rounded magnitude helpers. Inputs are assumed nonnegative.
pub(crate) mod mag {
    use super::{Dyadic, Rounding, MAG_BITS};

    pub fn up(x: &Dyadic) -> Dyadic {
        x.abs().rounded(MAG_BITS, Rounding::Ceil)
    }

    pub fn down(x: &Dyadic) -> Dyadic {
        x.abs().rounded(MAG_BITS, Rounding::Floor)
    }

    pub fn add(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.is_zero() {
            return up(b);
        }
        if b.is_zero() {
            return up(a);
        }
        // bounded exponent gap: tiny summands only bump the last bit
        let top = a.top().max(b.top());
        let floor = top - MAG_BITS as i64 - 4;
        let clip = |x: &Dyadic| {
            if x.top() < floor {
                Dyadic::pow2(floor)
            } else {
                up(x)
            }
        };
        up(&clip(a).add(&clip(b)))
    }

    pub fn sum(xs: &[&Dyadic]) -> Dyadic {
        xs.iter().fold(Dyadic::zero(), |acc, x| add(&acc, x))
    }

    pub fn mul(a: &Dyadic, b: &Dyadic) -> Dyadic {
        up(&up(a).mul(&up(b)))
    }

    /// Upper bound of `a / b` for `b > 0`.
    pub fn div(a: &Dyadic, b_lower: &Dyadic) -> Dyadic {
        if a.is_zero() {
            return Dyadic::zero();
        }
        let (q, e) = up(a).div_rounded(&down(b_lower), MAG_BITS + 2);
        up(&q.add(&e))
    }

    /// Lower bound of `a - b`, clamped at zero.
    pub fn sub_lower(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let d = down(a).sub(&up(b));
        if d.is_negative() {
            Dyadic::zero()
        } else {
            down(&d)
        }
    }

    pub fn sqrt_up(x: &Dyadic) -> Dyadic {
        let (r, e) = x.abs().sqrt_floor(MAG_BITS + 2);
        up(&r.add(&e))
    }

    pub fn sqrt_down(x: &Dyadic) -> Dyadic {
        down(&x.abs().sqrt_floor(MAG_BITS + 2).0)
    }

    pub fn root_down(x: &Dyadic, k: u32) -> Dyadic {
        down(&x.abs().root_floor(k, MAG_BITS + 2).0)
    }

    pub fn pow_up(x: &Dyadic, k: u64) -> Dyadic {
        let mut r = Dyadic::one();
        let mut b = up(x);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = mul(&r, &b);
            }
            k >>= 1;
            if k > 0 {
                b = mul(&b, &b);
            }
        }
        r
    }

    /// Upper bound on `e^r - 1` for `r >= 0`.
    pub fn expm1_up(r: &Dyadic) -> Dyadic {
        if r.is_zero() {
            return Dyadic::zero();
        }
        // r < 1/2: e^r - 1 <= r / (1 - r) <= 2r
        if r.top() <= -1 {
            return mul(r, &Dyadic::from_int(2));
        }
        // coarse: e^r <= 2^(ceil(r * 1.4427) + 1)
        let t = r.to_f64() * core::f64::consts::LOG2_E;
        let k = libm::ceil(t) as i64 + 1;
        Dyadic::pow2(k.max(1))
    }
}
