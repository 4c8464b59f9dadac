use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::gauss::GaussRat;
use crate::numerics::BallComplex;
use crate::zseries::ZSeries;

/// Dense univariate integer polynomial, lowest degree first, no trailing
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn constant(x: BigInt) -> Self {
        Self::new(vec![x])
    }

    /// `X^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        ZPoly { c }
    }

    /// `a X + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_i64(&[b, a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        ZPoly::new(r)
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        (0..k).fold(ZPoly::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &BigInt) -> ZPoly {
        ZPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    /// `p(a X)`.
    pub fn compose_scale(&self, a: &BigInt) -> ZPoly {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x * &pw);
            pw *= a;
        }
        ZPoly::new(out)
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        ZPoly { c }
    }

    /// Greatest common divisor of the coefficients.
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    pub fn eval_gauss(&self, x: &GaussRat) -> GaussRat {
        self.c.iter().rev().fold(GaussRat::zero(), |acc, c| {
            &(&acc * x) + &GaussRat::from_int(c.clone())
        })
    }

    pub fn eval_ball(&self, x: &BallComplex) -> BallComplex {
        let prec = x.prec();
        self.c.iter().rev().fold(BallComplex::zero(prec), |acc, c| {
            acc.mul(x).add(&BallComplex::from_int(c.clone(), prec))
        })
    }

    /// Multiplicity of the rational root `r` (0 if not a root).
    pub fn root_multiplicity(&self, r: &BigRational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        // repeated synthetic division over Q
        let mut cur: Vec<BigRational> = self.c.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut m = 0;
        while cur.len() > 1 {
            let n = cur.len() - 1;
            let mut q = vec![BigRational::zero(); n];
            let mut acc = BigRational::zero();
            for k in (0..=n).rev() {
                acc = acc * r + &cur[k];
                if k > 0 {
                    q[k - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                break;
            }
            m += 1;
            cur = q;
        }
        m
    }

    fn var_fmt(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, &[(var, k)], first)?;
            first = false;
        }
        Ok(())
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a ZPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.var_fmt(f, self.1)
            }
        }
        D(self, var)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.var_fmt(f, "X")
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigInt,
    vars: &[(&str, usize)],
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let a = c.abs();
    let mono: Vec<(&str, usize)> = vars.iter().copied().filter(|(_, e)| *e > 0).collect();
    if mono.is_empty() || !a.is_one() {
        write!(f, "{}", a)?;
        if !mono.is_empty() {
            f.write_str("*")?;
        }
    }
    for (k, (v, e)) in mono.iter().enumerate() {
        if k > 0 {
            f.write_str("*")?;
        }
        if *e == 1 {
            f.write_str(v)?;
        } else {
            write!(f, "{}^{}", v, e)?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolyKind {
    P,
    Q,
    T,
}

impl PolyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PolyKind::P => "P",
            PolyKind::Q => "Q",
            PolyKind::T => "T",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMeta {
    pub kind: PolyKind,
    pub n: u64,
    pub c_n: Option<BigInt>,
    pub fit_order: usize,
    pub note: String,
}

/// Sparse bivariate integer polynomial in `X` and `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly2 {
    terms: BTreeMap<(u32, u32), BigInt>,
    pub meta: PolyMeta,
}

impl IntPoly2 {
    pub fn new(meta: PolyMeta) -> Self {
        IntPoly2 {
            terms: BTreeMap::new(),
            meta,
        }
    }

    pub fn from_terms<I>(terms: I, meta: PolyMeta) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let mut p = Self::new(meta);
        for (e, c) in terms {
            p.add_term(e.0, e.1, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Coefficient of `X^i`, a polynomial in `Y`.
    pub fn x_coeff(&self, i: u32) -> ZPoly {
        let mut c = Vec::new();
        for ((a, b), v) in &self.terms {
            if *a == i {
                let b = *b as usize;
                if c.len() <= b {
                    c.resize(b + 1, BigInt::zero());
                }
                c[b] = v.clone();
            }
        }
        ZPoly::new(c)
    }

    /// Coefficient of `Y^j`, a polynomial in `X`.
    pub fn y_coeff(&self, j: u32) -> ZPoly {
        let mut c = Vec::new();
        for ((a, b), v) in &self.terms {
            if *b == j {
                let a = *a as usize;
                if c.len() <= a {
                    c.resize(a + 1, BigInt::zero());
                }
                c[a] = v.clone();
            }
        }
        ZPoly::new(c)
    }

    /// `P(X, 0)`.
    pub fn at_y0(&self) -> ZPoly {
        self.y_coeff(0)
    }

    /// `P(0, Y)`.
    pub fn at_x0(&self) -> ZPoly {
        self.x_coeff(0)
    }

    /// `P(a X, b Y)`.
    pub fn scale_vars(&self, a: &BigInt, b: &BigInt, meta: PolyMeta) -> IntPoly2 {
        IntPoly2::from_terms(
            self.terms
                .iter()
                .map(|((i, j), c)| ((*i, *j), c * a.pow(*i) * b.pow(*j))),
            meta,
        )
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn eval_gauss(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        let dy = self.deg_y().unwrap_or(0);
        for j in (0..=dy).rev() {
            let cj = self.y_coeff(j).eval_gauss(x);
            acc = &(&acc * y) + &cj;
        }
        acc
    }

    pub fn eval_ball(&self, x: &BallComplex, y: &BallComplex) -> BallComplex {
        let mut acc = BallComplex::zero(x.prec().max(y.prec()));
        let dy = self.deg_y().unwrap_or(0);
        for j in (0..=dy).rev() {
            acc = acc.mul(y).add(&self.y_coeff(j).eval_ball(x));
        }
        acc
    }

    /// Exact `P(A, B)` for integer series, by Horner in `A`.
    pub fn substitute_series(&self, a: &ZSeries, b: &ZSeries) -> ZSeries {
        let n = a.order().min(b.order());
        let dx = self.deg_x().unwrap_or(0);
        let dy = self.deg_y().unwrap_or(0);
        let mut bpow = vec![ZSeries::one(n)];
        for _ in 0..dy {
            let next = bpow.last().expect("nonempty").mul(b);
            bpow.push(next);
        }
        let mut acc = ZSeries::zero(n);
        for i in (0..=dx).rev() {
            let mut t = ZSeries::zero(n);
            for (j, c) in self.x_coeff(i).coeffs().iter().enumerate() {
                t.add_scaled(&bpow[j], c);
            }
            acc = if i == dx { t } else { acc.mul(a).add(&t) };
        }
        acc
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            write_term(f, c, &[("X", *i as usize), ("Y", *j as usize)], first)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn meta() -> PolyMeta {
        PolyMeta {
            kind: PolyKind::T,
            n: 0,
            c_n: None,
            fit_order: 0,
            note: String::new(),
        }
    }

    #[test]
    fn zpoly_basics() {
        let p = ZPoly::linear(1, -1).pow(3).mul(&ZPoly::linear(1, -9));
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.coeff(0), BigInt::from(9));
        assert_eq!(p.root_multiplicity(&BigRational::one()), 3);
        assert_eq!(p.root_multiplicity(&BigRational::from_integer(9.into())), 1);
        assert_eq!(p.root_multiplicity(&BigRational::from_integer(2.into())), 0);
        assert_eq!(ZPoly::linear(1, -1).compose_scale(&BigInt::from(9)), ZPoly::linear(9, -1));
        assert_eq!(ZPoly::from_i64(&[-1, 0, 3]).to_string(), "3*X^2 - 1");
    }

    #[test]
    fn bivariate_sections() {
        // X^2 - 3XY + Y^2 + 5
        let p = IntPoly2::from_terms(
            [((2, 0), 1), ((1, 1), -3), ((0, 2), 1), ((0, 0), 5)]
                .into_iter()
                .map(|(e, c)| (e, BigInt::from(c))),
            meta(),
        );
        assert_eq!(p.at_y0(), ZPoly::from_i64(&[5, 0, 1]));
        assert_eq!(p.at_x0(), ZPoly::from_i64(&[5, 0, 1]));
        assert_eq!(p.x_coeff(1), ZPoly::from_i64(&[0, -3]));
        let v = p.eval_gauss(&GaussRat::from_int(2), &GaussRat::from_int(1));
        assert_eq!(v, GaussRat::from_int(4 - 6 + 1 + 5));
        assert_eq!(p.to_string(), "X^2 - 3*X*Y + Y^2 + 5");
        let s = p.scale_vars(&BigInt::from(2), &BigInt::from(3), meta());
        assert_eq!(s.coeff(1, 1), BigInt::from(-18));
    }

    #[test]
    fn series_substitution() {
        // P = X - Y^2 with X = B^2 vanishes
        let p = IntPoly2::from_terms(
            [((1, 0), 1), ((0, 2), -1)].into_iter().map(|(e, c)| (e, BigInt::from(c))),
            meta(),
        );
        let b = ZSeries::new([1, 2, 3, 0, 0, 0].iter().map(|&x| BigInt::from(x)).collect());
        let a = b.mul(&b);
        assert!(p.substitute_series(&a, &b).is_zero());
    }
}
