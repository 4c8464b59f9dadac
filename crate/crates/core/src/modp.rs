//! Word-size modular arithmetic: NTT primes, convolution, nullspaces, CRT and
//! rational reconstruction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `p = c * 2^32 + 1` with a generator of its multiplicative group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NttPrime {
    pub p: u64,
    pub g: u64,
}

impl NttPrime {
    /// Largest usable transform length.
    pub const MAX_LOG: u32 = 32;
}

/// NTT primes below `2^62`, in decreasing order.
pub fn ntt_primes() -> impl Iterator<Item = NttPrime> {
    ((1u64 << 29)..(1u64 << 30)).rev().filter_map(|c| {
        let p = (c << 32) + 1;
        if !is_prime(p) {
            return None;
        }
        let mut qs: Vec<u64> = vec![2];
        let mut m = c;
        while m % 2 == 0 {
            m /= 2;
        }
        let mut f = 3;
        while f * f <= m {
            if m % f == 0 {
                qs.push(f);
                while m % f == 0 {
                    m /= f;
                }
            }
            f += 2;
        }
        if m > 1 {
            qs.push(m);
        }
        let g = (2..).find(|&g| qs.iter().all(|q| pow_mod(g, (p - 1) / q, p) != 1))?;
        Some(NttPrime { p, g })
    })
}

fn ntt(a: &mut [u64], invert: bool, pr: NttPrime) {
    let n = a.len();
    let p = pr.p;
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(pr.g, (p - 1) / len as u64, p);
        if invert {
            w = inv_mod(w, p);
        }
        let mut roots = Vec::with_capacity(len / 2);
        let mut cur = 1u64;
        for _ in 0..len / 2 {
            roots.push(cur);
            cur = mul_mod(cur, w, p);
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for k in 0..len / 2 {
                let u = lo[k];
                let v = mul_mod(hi[k], roots[k], p);
                lo[k] = add_mod(u, v, p);
                hi[k] = sub_mod(u, v, p);
            }
        }
        len <<= 1;
    }
    if invert {
        let ninv = inv_mod(n as u64, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, ninv, p);
        }
    }
}

/// Product of two series mod `p`, truncated to `n` terms.
pub fn mul_trunc(a: &[u64], b: &[u64], n: usize, pr: NttPrime) -> Vec<u64> {
    let la = a.len().min(n);
    let lb = b.len().min(n);
    if la == 0 || lb == 0 {
        return vec![0; n];
    }
    if la.min(lb) <= 32 {
        let mut r = vec![0u64; n];
        for (i, &x) in a[..la].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b[..lb.min(n - i)].iter().enumerate() {
                r[i + j] = add_mod(r[i + j], mul_mod(x, y, pr.p), pr.p);
            }
        }
        return r;
    }
    let size = (la + lb - 1).next_power_of_two();
    assert!(size.trailing_zeros() <= NttPrime::MAX_LOG, "transform too long");
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    fa[..la].copy_from_slice(&a[..la]);
    fb[..lb].copy_from_slice(&b[..lb]);
    ntt(&mut fa, false, pr);
    ntt(&mut fb, false, pr);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mul_mod(*x, *y, pr.p);
    }
    ntt(&mut fa, true, pr);
    fa.truncate(n);
    fa.resize(n, 0);
    fa
}

/// Inverse of a series with nonzero constant term, `n` terms, by Newton.
pub fn inv_series(a: &[u64], n: usize, pr: NttPrime) -> Vec<u64> {
    let p = pr.p;
    let mut g = vec![inv_mod(a[0], p)];
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        // g <- g (2 - a g)
        let ag = mul_trunc(&a[..a.len().min(k)], &g, k, pr);
        let mut t: Vec<u64> = ag.iter().map(|&x| sub_mod(0, x, p)).collect();
        t[0] = add_mod(t[0], 2, p);
        g = mul_trunc(&g, &t, k, pr);
    }
    g.truncate(n);
    g
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Basis of the right nullspace of a row-major matrix over `Z/p`.
pub fn nullspace(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    nullspace_tracked(rows, ncols, p).0
}

/// Like [`nullspace`], also returning the original indices of the rows that
/// carried pivots (a maximal independent set of rows).
pub fn nullspace_tracked(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots: Vec<usize> = Vec::new();
    let mut perm: Vec<usize> = (0..rows.len()).collect();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        perm.swap(r, pr);
        let iv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut().skip(c) {
            *x = mul_mod(*x, iv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for k in c..ncols {
                if pivot_row[k] != 0 {
                    row[k] = sub_mod(row[k], mul_mod(f, pivot_row[k], p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = sub_mod(0, rows[k][f], p);
            }
            v
        })
        .collect();
    (basis, perm[..pivots.len()].to_vec())
}

/// Incremental Chinese remaindering of a vector of residues.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn add(&mut self, residues: &[u64], p: u64) {
        let m_mod_p = reduce(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let cur = reduce(x, p);
            let t = mul_mod(sub_mod(r, cur, p), inv, p);
            *x += &self.modulus * BigInt::from(t);
        }
        self.modulus *= BigInt::from(p);
    }
}

/// Rational `n/d` with `|n|, |d| <= sqrt(m/2)` congruent to `a` mod `m`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = core::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Little helper for building a `BigInt` from a non-negative limb vector.
pub(crate) fn from_limbs(limbs: Vec<u32>) -> BigInt {
    BigInt::from_biguint(Sign::Plus, BigUint::new(limbs))
}
