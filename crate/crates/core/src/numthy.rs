//! Arithmetic functions and exact predicates on coefficient ratios.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::gauss::GaussRat;
use crate::numerics::{kth_root_principal, BallComplex};
use crate::parse::{parse_value, ParseError};
use crate::surd::square_part;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumthyError {
    #[error("unsupported algebraic number: {0}")]
    UnsupportedAlgebraic(alloc::string::String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Prime factorization by trial division.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = alloc::vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for k in 0..len {
                ds.push(ds[k] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Dedekind psi: `n * prod_{p | n} (1 + 1/p)`.
pub fn psi(n: u64) -> u64 {
    assert!(n >= 1, "psi of zero");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p + 1))
}

/// Euler phi.
pub fn phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Number of `k` in `[0, b)` with `gcd(a, b, k) = 1`.
pub fn w_count(a: u64, b: u64) -> u64 {
    assert!(a >= 1 && b >= 1);
    let g = a.gcd(&b);
    (b / g) * phi(g)
}

/// Splits `n = 2^a * s` with `s` odd.
pub fn two_adic(n: u64) -> (u32, u64) {
    assert!(n >= 1);
    let a = n.trailing_zeros();
    (a, n >> a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Phase {
    pub fn to_gauss(self) -> GaussRat {
        match self {
            Phase::One => GaussRat::one(),
            Phase::MinusOne => -GaussRat::one(),
            Phase::I => GaussRat::i(),
            Phase::MinusI => -GaussRat::i(),
        }
    }

    /// `phase^2` as +1 or -1.
    pub fn square_sign(self) -> i64 {
        match self {
            Phase::One | Phase::MinusOne => 1,
            Phase::I | Phase::MinusI => -1,
        }
    }
}

/// Coefficient ratios in one of two exact shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraicLite {
    /// `p + q i` with rational `p`, `q`.
    Gaussian(GaussRat),
    /// `phase * r * sqrt(u)` with `r > 0` rational and `u > 1` squarefree.
    Root { phase: Phase, r: BigRational, u: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FourthPower {
    Rational(BigRational),
    Irrational(GaussRat),
}

impl AlgebraicLite {
    pub fn gaussian(g: GaussRat) -> Self {
        AlgebraicLite::Gaussian(g)
    }

    pub fn int(n: i64) -> Self {
        AlgebraicLite::Gaussian(GaussRat::from_int(n))
    }

    /// `phase * r * sqrt(u)`, normalized (square factors of `u` move into
    /// `r`; a perfect square `u` gives a Gaussian rational).
    pub fn root(phase: Phase, r: BigRational, u: u64) -> Self {
        assert!(r.is_positive() && u >= 1, "root form needs r > 0, u >= 1");
        let (s, f) = square_part(u);
        let r = r * BigRational::from_integer(BigInt::from(s));
        if f == 1 {
            AlgebraicLite::Gaussian(phase.to_gauss().scale(&r))
        } else {
            AlgebraicLite::Root { phase, r, u: f }
        }
    }

    pub fn parse(s: &str) -> Result<Self, NumthyError> {
        let p = parse_value(s)?;
        let unsupported = || NumthyError::UnsupportedAlgebraic(s.to_string());
        let re = p.re_surd().map_err(|_| unsupported())?;
        let im = p.im_surd().map_err(|_| unsupported())?;
        match (re.as_rational(), im.as_rational()) {
            (Some(a), Some(b)) => Ok(AlgebraicLite::Gaussian(GaussRat::new(a.clone(), b.clone()))),
            (None, Some(b)) if b.is_zero() && re.rational_part().is_zero() => {
                let c = re.surd_part();
                let phase = if c.is_positive() { Phase::One } else { Phase::MinusOne };
                Ok(Self::root(phase, c.abs(), re.radicand()))
            }
            (Some(a), None) if a.is_zero() && im.rational_part().is_zero() => {
                let c = im.surd_part();
                let phase = if c.is_positive() { Phase::I } else { Phase::MinusI };
                Ok(Self::root(phase, c.abs(), im.radicand()))
            }
            _ => Err(unsupported()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AlgebraicLite::Gaussian(g) if g.is_zero())
    }

    pub fn as_gaussian(&self) -> Option<&GaussRat> {
        match self {
            AlgebraicLite::Gaussian(g) => Some(g),
            _ => None,
        }
    }

    /// Exact `beta^2`; rational for root forms.
    pub fn square(&self) -> GaussRat {
        match self {
            AlgebraicLite::Gaussian(g) => g * g,
            AlgebraicLite::Root { phase, r, u } => GaussRat::real(
                r * r
                    * BigRational::from_integer(BigInt::from(*u))
                    * BigRational::from_integer(BigInt::from(phase.square_sign())),
            ),
        }
    }

    /// Exact `beta^4`.
    pub fn fourth_power(&self) -> GaussRat {
        let s = self.square();
        &s * &s
    }

    pub fn fourth_power_rational(&self) -> FourthPower {
        let f = self.fourth_power();
        match f.as_real() {
            Some(q) => FourthPower::Rational(q.clone()),
            None => FourthPower::Irrational(f),
        }
    }

    /// Degree of `beta^4` over the rationals.
    pub fn degree_of_fourth_power(&self) -> u32 {
        if self.fourth_power().is_real() {
            1
        } else {
            2
        }
    }

    pub fn to_ball(&self, prec: u32) -> BallComplex {
        match self {
            AlgebraicLite::Gaussian(g) => g.to_ball(prec),
            AlgebraicLite::Root { phase, r, u } => {
                let root = kth_root_principal(&BallComplex::from_int(*u, prec + 8), 2)
                    .expect("square root of a positive integer");
                root.mul(&phase.to_gauss().scale(r).to_ball(prec + 8)).with_prec(prec)
            }
        }
    }
}

impl fmt::Display for AlgebraicLite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicLite::Gaussian(g) => write!(f, "{}", g),
            AlgebraicLite::Root { phase, r, u } => {
                let p = match phase {
                    Phase::One => "",
                    Phase::MinusOne => "-",
                    Phase::I => "i*",
                    Phase::MinusI => "-i*",
                };
                if r.is_one() {
                    write!(f, "{}sqrt({})", p, u)
                } else {
                    write!(f, "{}{}*sqrt({})", p, r, u)
                }
            }
        }
    }
}

/// `beta in {±sqrt(u), ±i sqrt(u) : u | s}`, decided through `beta^2 = ±u`.
pub fn in_ms(beta: &AlgebraicLite, s: u64) -> bool {
    ms_divisor(beta, s).is_some()
}

/// The witnessing divisor `u` when `beta` lies in `M_s`.
pub fn ms_divisor(beta: &AlgebraicLite, s: u64) -> Option<u64> {
    let sq = beta.square();
    let q = sq.as_real()?;
    if !q.is_integer() || q.is_zero() {
        return None;
    }
    let u = q.to_integer().abs().to_u64()?;
    s.is_multiple_of(u).then_some(u)
}

/// `M_{s1} ∩ M_{s2}` is exactly `{±1, ±i}`.
pub fn intersect_ms_is_units(s1: u64, s2: u64) -> bool {
    s1.gcd(&s2) == 1
}

pub fn is_gaussian_unit(beta: &AlgebraicLite) -> bool {
    match beta {
        AlgebraicLite::Gaussian(g) => {
            let one = BigRational::one();
            (g.im.is_zero() && g.re.abs() == one) || (g.re.is_zero() && g.im.abs() == one)
        }
        AlgebraicLite::Root { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(s: &str) -> AlgebraicLite {
        AlgebraicLite::parse(s).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(3), 4);
        assert_eq!(psi(9), 12);
        assert_eq!(psi(15), 24);
        assert_eq!(psi(1), 1);
        assert_eq!(psi(12), 24);
    }

    #[test]
    fn w_by_enumeration() {
        let brute = |a: u64, b: u64| (0..b).filter(|k| a.gcd(&b).gcd(k) == 1).count() as u64;
        for a in 1..30 {
            for b in 1..30 {
                assert_eq!(w_count(a, b), brute(a, b), "w({a},{b})");
            }
        }
        assert_eq!(w_count(3, 1), 1);
        assert_eq!(w_count(2, 4), 2);
        assert_eq!(w_count(1, 7), 7);
    }

    #[test]
    fn ms_membership() {
        assert!(in_ms(&beta("sqrt(3)"), 3));
        assert!(!in_ms(&beta("2"), 3));
        assert!(in_ms(&beta("i"), 15));
        assert!(in_ms(&beta("-i*sqrt(5)"), 15));
        assert!(!in_ms(&beta("sqrt(7)"), 15));
        assert!(!in_ms(&beta("1+i"), 5));
        assert!(in_ms(&beta("3"), 9));
        assert_eq!(ms_divisor(&beta("3"), 9), Some(9));
    }

    #[test]
    fn intersections() {
        assert!(intersect_ms_is_units(3, 5));
        assert!(!intersect_ms_is_units(3, 9));
        assert!(!intersect_ms_is_units(15, 9));
    }

    #[test]
    fn units() {
        assert!(is_gaussian_unit(&beta("-i")));
        assert!(!is_gaussian_unit(&beta("1+i")));
        assert!(!is_gaussian_unit(&beta("3/5")));
    }

    #[test]
    fn fourth_powers() {
        assert_eq!(beta("sqrt(3)").fourth_power_rational(), FourthPower::Rational(q(9)));
        assert_eq!(beta("i").fourth_power_rational(), FourthPower::Rational(q(1)));
        assert_eq!(beta("1+i").fourth_power_rational(), FourthPower::Rational(q(-4)));
        assert!(matches!(
            beta("1+2*i").fourth_power_rational(),
            FourthPower::Irrational(_)
        ));
        assert_eq!(beta("2*sqrt(5)").fourth_power_rational(), FourthPower::Rational(q(400)));
    }

    #[test]
    fn parse_rejects_mixed() {
        assert!(AlgebraicLite::parse("1+sqrt(2)").is_err());
        assert!(AlgebraicLite::parse("sqrt(2)+i").is_err());
    }

    #[test]
    fn root_ball() {
        let b = beta("-i*sqrt(2)").to_ball(128);
        let sq = b.sqr();
        assert!(sq.contains_rational(&q(-2)));
    }
}
