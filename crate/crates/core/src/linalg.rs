//! Fraction-free (Bareiss) elimination over exact integral domains.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An integral domain with exact division.
pub trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o`, where the caller guarantees the quotient is exact.
    fn div_exact(&self, o: &Self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)), "inexact division");
        self / o
    }
}

/// Row echelon form from fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon<R> {
    pub rows: Vec<Vec<R>>,
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

impl<R> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss elimination. Row `k` of the result has its pivot at column
/// `pivots[k]`; every division performed is exact.
pub fn bareiss<R: Domain>(mut m: Vec<Vec<R>>) -> Echelon<R> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = R::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for k in c + 1..ncols {
                let v = piv.mul(&row[k]).sub(&f.mul(&pivot_row[k]));
                row[k] = v.div_exact(&prev);
            }
            row[c] = R::zero();
        }
        // rows above the pivot row keep their scale; later pivots divide by
        // this pivot
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: m,
        pivots,
        swaps,
    }
}

/// Determinant of a square matrix.
pub fn det<R: Domain>(m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "det of a non-square matrix");
    let e = bareiss(m);
    if e.rank() < n {
        return R::zero();
    }
    let d = e.rows[n - 1][n - 1].clone();
    if e.swaps % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

pub fn rank<R: Domain>(m: Vec<Vec<R>>) -> usize {
    bareiss(m).rank()
}

/// Basis of the rational nullspace of an integer matrix, each vector scaled
/// to a primitive integer vector.
pub fn nullspace_int(m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let e = bareiss(m);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Vec::new();
    for &f in &free {
        let mut x: Vec<BigRational> = alloc::vec![BigRational::zero(); ncols];
        x[f] = BigRational::one();
        for k in (0..e.rank()).rev() {
            let c = e.pivots[k];
            let row = &e.rows[k];
            let mut s = BigRational::zero();
            for j in c + 1..ncols {
                if !Zero::is_zero(&row[j]) && !Zero::is_zero(&x[j]) {
                    s += BigRational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[c] = -s / BigRational::from_integer(row[c].clone());
        }
        out.push(primitive(&x));
    }
    out
}

/// Clears denominators and removes the content of a rational vector.
pub fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(<BigInt as One>::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(<BigInt as Zero>::zero(), |acc, v| acc.gcd(v));
    if Zero::is_zero(&g) {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(m(&[&[2, 0], &[0, 3]])), BigInt::from(6));
        assert_eq!(det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), BigInt::from(-3));
        assert_eq!(det(m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    #[test]
    fn ranks_and_nullspace() {
        let a = m(&[&[1, 1, 1], &[1, -1, 0], &[2, 0, 1]]);
        assert_eq!(rank(a.clone()), 2);
        let ns = nullspace_int(a, 3);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let v: Vec<BigInt> = if v[0] < BigInt::from(0) { v.iter().map(|x| -x).collect() } else { v.clone() };
        assert_eq!(v, vec![BigInt::from(1), BigInt::from(1), BigInt::from(-2)]);
    }

    #[test]
    fn wide_and_tall() {
        assert_eq!(rank(m(&[&[0, 0, 5, 1]])), 1);
        assert_eq!(rank(m(&[&[1], &[2], &[3]])), 1);
    }
}
