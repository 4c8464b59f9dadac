//! Dense truncated integer series with Kronecker-substitution products.
//!
//! This is the fast exact kernel behind polynomial fitting and residual
//! checks; [`crate::qseries::QSeries`] stays the general rational type.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::modp::from_limbs;
use crate::qseries::QSeries;
use crate::thetafun::{theta_series, ThetaKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    c: Vec<BigInt>,
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.bits()).max().unwrap_or(0)
}

fn pack(v: &[BigInt], slot: usize) -> BigInt {
    let mut pos = vec![0u32; v.len() * slot];
    let mut neg = vec![0u32; v.len() * slot];
    let mut any_neg = false;
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (sign, digits) = x.to_u32_digits();
        let dst = if sign == Sign::Minus {
            any_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        dst[k * slot..k * slot + digits.len()].copy_from_slice(&digits);
    }
    let p = from_limbs(pos);
    if any_neg {
        p - from_limbs(neg)
    } else {
        p
    }
}

fn unpack(x: &BigInt, slot: usize, count: usize) -> Vec<BigInt> {
    if x.is_negative() {
        return unpack(&-x, slot, count).into_iter().map(|c| -c).collect();
    }
    let (_, digits) = x.to_u32_digits();
    let half = BigInt::one() << (32 * slot - 1);
    let full = BigInt::one() << (32 * slot);
    let mut out = Vec::with_capacity(count);
    let mut carry = false;
    for k in 0..count {
        let lo = (k * slot).min(digits.len());
        let hi = ((k + 1) * slot).min(digits.len());
        let mut v = from_limbs(digits[lo..hi].to_vec());
        if carry {
            v += 1;
        }
        carry = v >= half;
        if carry {
            v -= &full;
        }
        out.push(v);
    }
    out
}

/// Product of two coefficient vectors, truncated to `n` terms.
pub fn mul_trunc(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero(); n];
    }
    let len = a.len().min(b.len()) as u64;
    let bits = max_bits(a) + max_bits(b) + 64 - len.leading_zeros() as u64 + 2;
    let slot = bits.div_ceil(32) as usize;
    let prod = pack(a, slot) * pack(b, slot);
    let mut out = unpack(&prod, slot, n.min(a.len() + b.len() - 1));
    out.resize(n, BigInt::zero());
    out
}

impl ZSeries {
    pub fn new(c: Vec<BigInt>) -> Self {
        ZSeries { c }
    }

    pub fn zero(order: usize) -> Self {
        ZSeries {
            c: vec![BigInt::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.c[0] = BigInt::one();
        }
        s
    }

    pub fn from_qseries(q: &QSeries) -> Option<Self> {
        q.to_dense_int().map(ZSeries::new)
    }

    pub fn to_qseries(&self) -> QSeries {
        QSeries::from_dense_int(&self.c)
    }

    /// Dense series of `theta3(a tau)`, `theta4(a tau)` or `theta2(a tau)^4`.
    pub fn theta(kind: ThetaKind, a: usize, order: usize) -> Self {
        match kind {
            ThetaKind::Theta2 => {
                let mut inner = vec![BigInt::zero(); order];
                let mut n = 0;
                while a * n * (n + 1) < order {
                    inner[a * n * (n + 1)] = BigInt::one();
                    n += 1;
                }
                let i = ZSeries::new(inner).pow(4);
                let mut c = vec![BigInt::zero(); order];
                for k in a..order {
                    c[k] = &i.c[k - a] * 16;
                }
                ZSeries::new(c)
            }
            _ => ZSeries::from_qseries(&theta_series(kind, a, order)).expect("integral"),
        }
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn max_bits(&self) -> u64 {
        max_bits(&self.c)
    }

    pub fn mul(&self, o: &ZSeries) -> ZSeries {
        let n = self.order().min(o.order());
        ZSeries::new(mul_trunc(&self.c, &o.c, n))
    }

    pub fn add(&self, o: &ZSeries) -> ZSeries {
        let n = self.order().min(o.order());
        ZSeries::new((0..n).map(|k| &self.c[k] + &o.c[k]).collect())
    }

    pub fn add_scaled(&mut self, o: &ZSeries, s: &BigInt) {
        if s.is_zero() {
            return;
        }
        let n = self.order().min(o.order());
        self.c.truncate(n);
        for (x, y) in self.c.iter_mut().zip(&o.c) {
            if !y.is_zero() {
                *x += y * s;
            }
        }
    }

    pub fn scale(&self, s: &BigInt) -> ZSeries {
        ZSeries::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, k: u32) -> ZSeries {
        let mut r = ZSeries::one(self.order());
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Inverse of a series with constant term `±1`, by Newton iteration.
    pub fn inv_unit(&self) -> Option<ZSeries> {
        let n = self.order();
        let c0 = self.c.first()?;
        if c0.abs() != BigInt::one() {
            return None;
        }
        let mut g = vec![c0.clone()];
        let mut k = 1;
        while k < n {
            k = (2 * k).min(n);
            let ag = mul_trunc(&self.c[..k], &g, k);
            let mut t: Vec<BigInt> = ag.into_iter().map(|x| -x).collect();
            t[0] += 2;
            g = mul_trunc(&g, &t, k);
        }
        g.truncate(n);
        Some(ZSeries::new(g))
    }

    pub fn truncate(&self, order: usize) -> ZSeries {
        ZSeries::new(self.c[..order.min(self.order())].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn signed_kronecker() {
        let a = z(&[3, -5, 0, 7, -1]);
        let b = z(&[-2, 4, 9]);
        let mut slow = vec![BigInt::zero(); 7];
        for i in 0..5 {
            for j in 0..3 {
                slow[i + j] += &a[i] * &b[j];
            }
        }
        assert_eq!(mul_trunc(&a, &b, 7), slow);
        assert_eq!(mul_trunc(&a, &b, 4), slow[..4].to_vec());
    }

    #[test]
    fn big_coefficients() {
        let big: BigInt = BigInt::from(1) << 200;
        let a = vec![big.clone(), -big.clone(), BigInt::from(1)];
        let sq = mul_trunc(&a, &a, 5);
        assert_eq!(sq[0], &big * &big);
        assert_eq!(sq[1], -(&big * &big) * 2);
        assert_eq!(sq[4], BigInt::from(1));
    }

    #[test]
    fn agrees_with_qseries() {
        let n = 60;
        let t3 = ZSeries::theta(ThetaKind::Theta3, 1, n);
        let inv = t3.pow(4).inv_unit().unwrap();
        let q = theta_series(ThetaKind::Theta3, 1, n).pow(4).inv().unwrap();
        assert_eq!(inv.to_qseries(), q);
        let t2 = ZSeries::theta(ThetaKind::Theta2, 3, n);
        assert_eq!(t2.to_qseries(), theta_series(ThetaKind::Theta2, 3, n));
    }
}
