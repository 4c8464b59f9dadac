//! Nullspace fitting of annihilating polynomials for a pair of q-series.
//!
//! The pair is always of the form `A = U/V`, `B = W/V` with `U, V, W` theta
//! power series having small integer coefficients. Modulo a prime the
//! quotients are cheap; over the integers we work with the homogenized
//! columns `U^i W^j V^(D-i-j)` instead, which keeps every entry small.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly2;
use super::ModpolyError;
use crate::linalg::nullspace_int;
use crate::modp::{self, Crt, NttPrime};
use crate::thetafun::ThetaKind;
use crate::zseries::ZSeries;

/// Which nullspace solver to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FitStrategy {
    /// Multi-modular elimination with rational reconstruction.
    #[default]
    Modular,
    /// Fraction-free elimination over the integers.
    ExactBareiss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitOptions {
    pub margin: usize,
    pub strategy: FitStrategy,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            margin: 50,
            strategy: FitStrategy::Modular,
        }
    }
}

/// The numerator and denominator series of a pair `(U/V, W/V)`.
#[derive(Clone, Debug)]
pub struct SeriesPair {
    pub u: ZSeries,
    pub v: ZSeries,
    pub w: ZSeries,
}

impl SeriesPair {
    /// `(c_a theta3^4(n tau), c_b theta2^4(tau))` over `theta3^4(tau)`.
    pub fn theta_quotients(n: u64, ca: i64, cb: i64, order: usize) -> Self {
        let v = ZSeries::theta(ThetaKind::Theta3, 1, order).pow(4);
        let u = ZSeries::theta(ThetaKind::Theta3, n as usize, order)
            .pow(4)
            .scale(&BigInt::from(ca));
        let w = ZSeries::theta(ThetaKind::Theta2, 1, order).scale(&BigInt::from(cb));
        SeriesPair { u, v, w }
    }

    pub fn order(&self) -> usize {
        self.u.order().min(self.v.order()).min(self.w.order())
    }

    fn max_bits(&self) -> u64 {
        self.u.max_bits().max(self.v.max_bits()).max(self.w.max_bits())
    }

    /// `A`, `B` modulo `p`.
    fn reduce(&self, pr: NttPrime) -> (Vec<u64>, Vec<u64>) {
        let n = self.order();
        let red = |s: &ZSeries| -> Vec<u64> { s.coeffs()[..n].iter().map(|x| modp::reduce(x, pr.p)).collect() };
        let vinv = modp::inv_series(&red(&self.v), n, pr);
        let a = modp::mul_trunc(&red(&self.u), &vinv, n, pr);
        let b = modp::mul_trunc(&red(&self.w), &vinv, n, pr);
        (a, b)
    }
}

fn powers(x: &[u64], k: u32, n: usize, pr: NttPrime) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut one = vec![0u64; n];
    if n > 0 {
        one[0] = 1;
    }
    out.push(one);
    for _ in 0..k {
        let next = modp::mul_trunc(out.last().expect("nonempty"), x, n, pr);
        out.push(next);
    }
    out
}

/// Columns `A^i B^j mod p` for the given monomials.
fn columns_mod(pair: &SeriesPair, mons: &[(u32, u32)], pr: NttPrime) -> Vec<Vec<u64>> {
    let n = pair.order();
    let (a, b) = pair.reduce(pr);
    let dx = mons.iter().map(|m| m.0).max().unwrap_or(0);
    let dy = mons.iter().map(|m| m.1).max().unwrap_or(0);
    let ap = powers(&a, dx, n, pr);
    let bp = powers(&b, dy, n, pr);
    mons.iter()
        .map(|&(i, j)| modp::mul_trunc(&ap[i as usize], &bp[j as usize], n, pr))
        .collect()
}

/// What a successful fit reports besides the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitInfo {
    pub order: usize,
    pub nullity: usize,
    pub primes_used: usize,
    pub residual_primes: usize,
}

const MAX_PRIMES: usize = 4000;

/// Nullspace vector of the monomial columns, normalized so that coordinate
/// `norm` is 1.
pub fn fit_modular(
    mons: &[(u32, u32)],
    norm: usize,
    pair: &SeriesPair,
) -> Result<(Vec<BigRational>, FitInfo), ModpolyError> {
    let order = pair.order();
    let ncols = mons.len();
    let mut primes = modp::ntt_primes();
    let mut crt = Crt::new(ncols);
    let mut selected: Option<Vec<usize>> = None;
    let mut last: Option<Vec<BigRational>> = None;
    let mut bad = 0usize;
    let mut used = 0usize;
    while used < MAX_PRIMES {
        let pr = primes.next().ok_or(ModpolyError::OutOfPrimes)?;
        let cols = columns_mod(pair, mons, pr);
        let row_ids: Vec<usize> = match &selected {
            Some(s) => s.clone(),
            None => (0..order).collect(),
        };
        let mut rows: Vec<Vec<u64>> = row_ids
            .iter()
            .map(|&k| cols.iter().map(|c| c[k]).collect())
            .collect();
        let (basis, piv_rows) = modp::nullspace_tracked(&mut rows, ncols, pr.p);
        if basis.is_empty() {
            // nullity mod p bounds nullity over Q from above
            if selected.is_none() {
                return Err(ModpolyError::NullspaceDimensionNotOne { dim: 0, order });
            }
            bad += 1;
        } else if basis.len() > 1 || basis[0][norm] == 0 {
            bad += 1;
            if bad >= 3 && selected.is_none() {
                return Err(if basis.len() > 1 {
                    ModpolyError::NullspaceDimensionNotOne { dim: basis.len(), order }
                } else {
                    ModpolyError::NormalizationVanishes
                });
            }
        } else {
            if selected.is_none() {
                selected = Some(piv_rows.iter().map(|&r| row_ids[r]).collect());
            }
            let v = &basis[0];
            let iv = modp::inv_mod(v[norm], pr.p);
            let res: Vec<u64> = v.iter().map(|&x| modp::mul_mod(x, iv, pr.p)).collect();
            crt.add(&res, pr.p);
            used += 1;
            let rec: Option<Vec<BigRational>> = crt
                .values
                .iter()
                .map(|x| modp::rational_reconstruct(x, &crt.modulus))
                .collect();
            if let Some(rec) = rec {
                if last.as_ref() == Some(&rec) {
                    let info = FitInfo {
                        order,
                        nullity: 1,
                        primes_used: used,
                        residual_primes: 0,
                    };
                    return Ok((rec, info));
                }
                last = Some(rec);
            } else {
                last = None;
            }
        }
        if bad > 64 {
            return Err(ModpolyError::OutOfPrimes);
        }
    }
    Err(ModpolyError::OutOfPrimes)
}

/// Homogenized integer columns `U^i W^j V^(D-i-j)`, `D` the total degree.
pub fn columns_exact(pair: &SeriesPair, mons: &[(u32, u32)]) -> Vec<ZSeries> {
    let d = mons.iter().map(|m| m.0 + m.1).max().unwrap_or(0);
    let pw = |s: &ZSeries| {
        let mut v = vec![ZSeries::one(s.order())];
        for _ in 0..d {
            let next = v.last().expect("nonempty").mul(s);
            v.push(next);
        }
        v
    };
    let (up, vp, wp) = (pw(&pair.u), pw(&pair.v), pw(&pair.w));
    mons.iter()
        .map(|&(i, j)| {
            up[i as usize]
                .mul(&wp[j as usize])
                .mul(&vp[(d - i - j) as usize])
        })
        .collect()
}

/// Exact fit by Bareiss elimination over the integers.
pub fn fit_exact(
    mons: &[(u32, u32)],
    norm: usize,
    pair: &SeriesPair,
) -> Result<(Vec<BigRational>, FitInfo), ModpolyError> {
    let order = pair.order();
    let cols = columns_exact(pair, mons);
    let m: Vec<Vec<BigInt>> = (0..order)
        .map(|k| cols.iter().map(|c| c.coeffs()[k].clone()).collect())
        .collect();
    let ns = nullspace_int(m, mons.len());
    if ns.len() != 1 {
        return Err(ModpolyError::NullspaceDimensionNotOne { dim: ns.len(), order });
    }
    let v = &ns[0];
    if v[norm].is_zero() {
        return Err(ModpolyError::NormalizationVanishes);
    }
    let lead = BigRational::from_integer(v[norm].clone());
    let out = v
        .iter()
        .map(|x| BigRational::from_integer(x.clone()) / &lead)
        .collect();
    let info = FitInfo {
        order,
        nullity: 1,
        primes_used: 0,
        residual_primes: 0,
    };
    Ok((out, info))
}

fn ceil_log2(x: usize) -> u64 {
    (usize::BITS - x.saturating_sub(1).leading_zeros()) as u64
}

/// Certifies that `poly(U/V, W/V)` vanishes to the full order of `pair`.
///
/// With `D` the total degree of `poly`, the integer series
/// `V^D poly(U/V, W/V)` has coefficients bounded by
/// `sum |c| * N^(D-1) * 2^(m D)`, `m` the coefficient bit size of the
/// inputs. It is checked to vanish modulo primes whose product exceeds twice
/// that bound; `V` is a unit so this is equivalent. Returns the number of
/// primes used.
pub fn certify_residual(poly: &IntPoly2, pair: &SeriesPair) -> Result<usize, ModpolyError> {
    let n = pair.order();
    if poly.is_zero() {
        return Err(ModpolyError::ResidualNonzero { index: 0 });
    }
    let d = poly.terms().map(|((i, j), _)| (i + j) as u64).max().unwrap_or(0);
    let l1: BigInt = poly.terms().map(|(_, c)| c.abs()).sum();
    let bound_bits = l1.bits() + d.saturating_sub(1) * ceil_log2(n.max(2)) + pair.max_bits() * d + 2;
    let dx = poly.deg_x().unwrap_or(0);
    let dy = poly.deg_y().unwrap_or(0);
    let xs: Vec<Vec<BigInt>> = (0..=dx).map(|i| poly.x_coeff(i).coeffs().to_vec()).collect();
    let mut bits = 0u64;
    let mut count = 0;
    for pr in modp::ntt_primes() {
        let p = pr.p;
        let (a, b) = pair.reduce(pr);
        let bp = powers(&b, dy, n, pr);
        let mut acc = vec![0u64; n];
        for i in (0..=dx as usize).rev() {
            if i != dx as usize {
                acc = modp::mul_trunc(&acc, &a, n, pr);
            }
            for (j, c) in xs[i].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cm = modp::reduce(c, p);
                for (x, y) in acc.iter_mut().zip(&bp[j]) {
                    *x = modp::add_mod(*x, modp::mul_mod(cm, *y, p), p);
                }
            }
        }
        if let Some(k) = acc.iter().position(|&x| x != 0) {
            return Err(ModpolyError::ResidualNonzero { index: k });
        }
        count += 1;
        bits += 61;
        if bits > bound_bits {
            return Ok(count);
        }
    }
    Err(ModpolyError::OutOfPrimes)
}

/// Exact `poly(U/V, W/V) * V^D` as an integer series, `D` the total degree.
pub fn exact_residual(poly: &IntPoly2, pair: &SeriesPair) -> ZSeries {
    let n = pair.order();
    let mons: Vec<(u32, u32)> = poly.terms().map(|(e, _)| e).collect();
    let cols = columns_exact(pair, &mons);
    let mut acc = ZSeries::zero(n);
    for ((_, c), col) in poly.terms().zip(&cols) {
        acc.add_scaled(col, c);
    }
    acc
}

/// Scales a rational vector to a primitive integer vector whose coordinate
/// `lead` is positive.
pub fn primitive_positive(x: &[BigRational], lead: usize) -> Vec<BigInt> {
    let mut v = crate::linalg::primitive(x);
    if v[lead].is_negative() {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Integer vector from a rational one that must already be integral.
pub fn integral(x: &[BigRational]) -> Option<Vec<BigInt>> {
    x.iter()
        .map(|c| if c.denom().is_one() { Some(c.numer().clone()) } else { None })
        .collect()
}
