//! Real quadratic surds `a + b*sqrt(d)` with rational `a`, `b`.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numerics::{sqrt_int, BallComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Largest square dividing `n` and the squarefree rest: `n = s^2 * f`.
pub fn square_part(n: u64) -> (u64, u64) {
    let (mut s, mut f, mut p) = (1u64, n, 2u64);
    while p * p <= f {
        while f % (p * p) == 0 {
            f /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, f)
}

impl Surd {
    /// `a + b*sqrt(d)` with `d` reduced to its squarefree part.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(d >= 1, "surd radicand must be positive");
        let (s, f) = square_part(d);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if f == 1 || b.is_zero() {
            Surd {
                a: a + if f == 1 { b } else { BigRational::zero() },
                b: BigRational::zero(),
                d: 1,
            }
        } else {
            Surd { a, b, d: f }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Surd {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn neg(&self) -> Self {
        Surd {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    /// Sum; `None` when the radicands differ.
    pub fn add(&self, other: &Surd) -> Option<Self> {
        if self.is_rational() || other.is_rational() || self.d == other.d {
            let d = if self.is_rational() { other.d } else { self.d };
            Some(Surd::new(&self.a + &other.a, &self.b + &other.b, d))
        } else {
            None
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Surd::new(&self.a * s, &self.b * s, self.d)
    }

    pub fn to_ball(&self, prec: u32) -> BallComplex {
        let a = BallComplex::from_rational(&self.a, prec);
        if self.b.is_zero() {
            return a;
        }
        let r = sqrt_int(self.d, prec + 8);
        a.add(&r.mul_rational(&self.b)).with_prec(prec)
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| {
            crate::numerics::Dyadic::from_rational(q, 60).0.to_f64()
        };
        f(&self.a) + f(&self.b) * libm::sqrt(self.d as f64)
    }
}

fn sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            alloc::string::String::new()
        } else {
            alloc::format!("{}*", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{}sqrt({})", b, self.d)
        } else {
            write!(f, "{}+{}sqrt({})", self.a, b, self.d)
        }
    }
}
