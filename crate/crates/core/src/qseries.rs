//! Exact truncated power series in the nome `q`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numerics::{mag, BallComplex, Dyadic};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QSeriesError {
    #[error("constant term is zero, series is not invertible")]
    NonUnitConstantTerm,
}

/// `sum c_k q^k` with every exponent below `order` known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<usize, BigRational>,
    order: usize,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(0, c);
        s
    }

    /// `c q^k`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(k, c);
        s
    }

    pub fn from_terms<I>(terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            let v = s.coeff(k) + c;
            s.set(k, v);
        }
        s
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (k, BigRational::from_integer(BigInt::from(c)))),
            order,
        )
    }

    /// Dense integer coefficients `c_0..c_{order-1}`.
    pub fn from_dense_int(coeffs: &[BigInt]) -> Self {
        let order = coeffs.len();
        let mut s = Self::zero(order);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                s.coeffs.insert(k, BigRational::from_integer(c.clone()));
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Stores `c` at `k`; exponents at or past the order are dropped.
    pub fn set(&mut self, k: usize, c: BigRational) {
        if k >= self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        QSeries {
            coeffs: self.coeffs.range(..order).map(|(k, c)| (*k, c.clone())).collect(),
            order,
        }
    }

    /// Dense integer coefficients, or `None` if some coefficient is fractional.
    pub fn to_dense_int(&self) -> Option<Vec<BigInt>> {
        let mut v = alloc::vec![BigInt::zero(); self.order];
        for (k, c) in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            v[*k] = c.to_integer();
        }
        Some(v)
    }

    pub fn neg(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, other: &QSeries) -> Self {
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (k, c) in other.coeffs.range(..order) {
            let v = out.coeff(*k) + c;
            out.set(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero(self.order);
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * s)).collect(),
            order: self.order,
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(s)))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &QSeries) -> Self {
        let order = self.order.min(other.order);
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, a) in self.coeffs.range(..order) {
            for (j, b) in other.coeffs.range(..order - i) {
                let e = acc.entry(i + j).or_insert_with(BigRational::zero);
                *e += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QSeries { coeffs: acc, order }
    }

    pub fn inv(&self) -> Result<Self, QSeriesError> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(QSeriesError::NonUnitConstantTerm);
        }
        let n = self.order;
        let inv0 = a0.recip();
        let mut r: Vec<BigRational> = alloc::vec![BigRational::zero(); n];
        if n > 0 {
            r[0] = inv0.clone();
        }
        let tail: Vec<(usize, &BigRational)> = self.coeffs.range(1..).map(|(k, c)| (*k, c)).collect();
        for m in 1..n {
            let mut s = BigRational::zero();
            for (k, c) in &tail {
                if *k > m {
                    break;
                }
                let rv = &r[m - k];
                if !rv.is_zero() {
                    s += *c * rv;
                }
            }
            r[m] = -(s * &inv0);
        }
        Ok(Self::from_terms(r.into_iter().enumerate(), n))
    }

    pub fn div(&self, other: &QSeries) -> Result<Self, QSeriesError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitution `q -> q^k`.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation by zero");
        let order = if self.order == 0 {
            0
        } else {
            k * (self.order - 1) + 1
        };
        QSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
            order,
        }
    }

    /// Ball of the truncated sum at `q0`, widened by the caller's tail bound
    /// `tail_coeff * |q0|^order / (1 - |q0|)`. Returns `None` if `|q0| >= 1`
    /// cannot be excluded.
    pub fn eval_ball(&self, q0: &BallComplex, tail_coeff: &Dyadic) -> Option<BallComplex> {
        let prec = q0.prec();
        let qa = q0.abs_upper();
        if qa >= Dyadic::one() {
            return None;
        }
        let mut sum = BallComplex::zero(prec);
        let mut pow = BallComplex::one(prec);
        let mut at = 0usize;
        for (k, c) in &self.coeffs {
            pow = pow.mul(&q0.pow_u((k - at) as u32));
            at = *k;
            sum = sum.add(&pow.mul(&BallComplex::from_rational(c, prec)));
        }
        let tail = if tail_coeff.is_zero() {
            Dyadic::zero()
        } else {
            let qn = mag::pow_up(&qa, self.order as u64);
            let one_minus = mag::sub_lower(&Dyadic::one(), &qa);
            mag::div(&mag::mul(tail_coeff, &qn), &one_minus)
        };
        Some(sum.add_error(&tail))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.coeffs {
            let mut body = String::new();
            let (neg, a) = (c.is_negative(), c.abs());
            if !first {
                body.push_str(if neg { " - " } else { " + " });
            } else if neg {
                body.push('-');
            }
            let is_one = a.is_one();
            match (*k, is_one) {
                (0, _) => body.push_str(&alloc::format!("{}", a)),
                (_, true) => {}
                (_, false) => body.push_str(&alloc::format!("{}*", a)),
            }
            match *k {
                0 => {}
                1 => body.push('q'),
                _ => body.push_str(&alloc::format!("q^{}", k)),
            }
            f.write_str(&body)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}
