//! Constants and elementary functions on balls: pi, exp, principal roots.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ball::BallComplex;
use super::dyadic::{mag, Dyadic};
use super::NumericsError;

/// `atan(1/x)` scaled by `2^wp`, truncated. Returns the value and the number
/// of terms summed; each term contributes at most 2 units of error.
fn atan_inv_fixed(x: u32, wp: u64) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::one() << wp) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        n += 1;
    }
    (sum, n)
}

/// Enclosure of pi.
pub fn pi(prec: u32) -> BallComplex {
    let wp = prec as u64 + 32;
    let (a, na) = atan_inv_fixed(5, wp);
    let (b, nb) = atan_inv_fixed(239, wp);
    let v = a * 16 - b * 4;
    // each atan carries <= 2 ulp per term plus a truncated tail below 1 ulp
    let ulps = 16 * (2 * na + 2) + 4 * (2 * nb + 2);
    let err = Dyadic::from_int(ulps).mul_pow2(-(wp as i64));
    BallComplex::from_mid(
        Dyadic::new(v, -(wp as i64)),
        Dyadic::zero(),
        err,
        prec,
    )
}

/// Enclosure of `exp(z)`.
pub fn exp(z: &BallComplex) -> BallComplex {
    let prec = z.prec();
    let m = BallComplex::new(
        z.mid_re().clone(),
        z.mid_im().clone(),
        Dyadic::zero(),
        prec,
    );
    let top = m.mid_abs_upper().top();
    // halve until |w| < 2^-8
    let k: u32 = if top == i64::MIN {
        0
    } else {
        (top + 8).max(0) as u32
    };
    let wp = prec + k + 24;
    let w = m.with_prec(wp).mul_pow2(-(k as i64));
    let mut sum = BallComplex::one(wp);
    let mut term = BallComplex::one(wp);
    let eps = Dyadic::pow2(-(wp as i64) - 4);
    let wabs = w.abs_upper();
    let mut n: u32 = 1;
    loop {
        term = term.mul(&w).scale_inv_int(n);
        sum = sum.add(&term);
        n += 1;
        let t = term.abs_upper();
        if t <= eps || t.is_zero() {
            break;
        }
    }
    // remaining tail <= |term| * |w| / (1 - |w|) <= 2 |term| |w|
    let tail = mag::mul(&mag::mul(&term.abs_upper(), &wabs), &Dyadic::from_int(2));
    let mut r = sum.add_error(&tail);
    for _ in 0..k {
        r = r.sqr();
    }
    let mut r = r.with_prec(prec);
    if !z.rad().is_zero() {
        // |e^(z+d) - e^z| <= |e^z| (e^|d| - 1)
        let extra = mag::mul(&r.abs_upper(), &mag::expm1_up(z.rad()));
        r = r.add_error(&extra);
    }
    r
}

/// `exp(i * pi * t)` for a ball `t`.
pub fn exp_i_pi(t: &BallComplex) -> BallComplex {
    let p = pi(t.prec() + 16);
    exp(&t.mul(&p).mul_i()).with_prec(t.prec())
}

impl BallComplex {
    /// Division by a small positive integer.
    pub fn scale_inv_int(&self, n: u32) -> BallComplex {
        if n == 1 {
            return self.clone();
        }
        let d = Dyadic::from_int(n);
        let (r, er) = self.mid_re().div_rounded(&d, self.prec() + 2);
        let (i, ei) = self.mid_im().div_rounded(&d, self.prec() + 2);
        let rad = mag::sum(&[&mag::div(self.rad(), &d), &er, &ei]);
        BallComplex::from_mid(r, i, rad, self.prec())
    }

    pub fn exp(&self) -> BallComplex {
        exp(self)
    }

    pub fn sqrt(&self) -> Result<BallComplex, NumericsError> {
        kth_root_principal(self, 2)
    }
}

/// Approximate principal k-th root of an exact midpoint, to about `prec` bits.
fn newton_root(re: &Dyadic, im: &Dyadic, k: u32, prec: u32) -> BallComplex {
    let top = re.top().max(im.top());
    let k64 = k as i64;
    let s = k64 * top.div_euclid(k64);
    let fr = re.mul_pow2(-s).to_f64();
    let fi = im.mul_pow2(-s).to_f64();
    let r = libm::pow(libm::hypot(fr, fi), 1.0 / k as f64);
    let t = libm::atan2(fi, fr) / k as f64;
    let seed = BallComplex::new(
        Dyadic::from_f64(r * libm::cos(t)),
        Dyadic::from_f64(r * libm::sin(t)),
        Dyadic::zero(),
        64,
    )
    .mul_pow2(s / k64);
    let mut w = seed;
    let mut p: u32 = 48;
    let target = prec + 16;
    loop {
        p = (2 * p).min(target);
        let z = BallComplex::new(re.clone(), im.clone(), Dyadic::zero(), p + 8);
        let wm = strip(&w, p + 8);
        let wk1 = wm.pow_u(k - 1);
        // w <- ((k-1) w + z / w^(k-1)) / k
        let q = match z.div(&strip(&wk1, p + 8)) {
            Ok(q) => strip(&q, p + 8),
            Err(_) => return wm,
        };
        let next = wm.mul_int(k - 1).add(&q).scale_inv_int(k);
        w = strip(&next, p);
        if p == target {
            // one extra pass at full precision
            let wk1 = w.pow_u(k - 1);
            if let Ok(q) = z.div(&strip(&wk1, p + 8)) {
                w = strip(&w.mul_int(k - 1).add(&strip(&q, p + 8)).scale_inv_int(k), p);
            }
            return w;
        }
    }
}

fn strip(b: &BallComplex, prec: u32) -> BallComplex {
    BallComplex::from_mid(b.mid_re().clone(), b.mid_im().clone(), Dyadic::zero(), prec)
}

/// Enclosure of the principal k-th root, argument in `(-pi/k, pi/k]`.
pub fn kth_root_principal(a: &BallComplex, k: u32) -> Result<BallComplex, NumericsError> {
    assert!(k >= 1, "root of order zero");
    let prec = a.prec();
    if k == 1 || a.is_exact_zero() {
        return Ok(a.clone());
    }
    if !a.certify_nonzero() {
        return Err(NumericsError::RootOfBallContainingZero);
    }
    let (re, im) = (a.mid_re(), a.mid_im());
    if im.is_zero() && re.is_negative() {
        if !a.rad().is_zero() {
            return Err(NumericsError::BallStraddlesBranchCut);
        }
        // exact negative real: root(|x|) * root(i)^2
        let pos = kth_root_principal(&a.neg(), k)?;
        let ri = kth_root_principal(&BallComplex::i(prec + 8), k)?;
        return Ok(pos.mul(&ri.sqr()).with_prec(prec));
    }
    if !re.is_positive() && im.abs() <= *a.rad() {
        return Err(NumericsError::BallStraddlesBranchCut);
    }
    let w = newton_root(re, im, k, prec);
    // some root of the midpoint lies within |w^k - m| / |w|^(k-1) of w
    let wk = exact_pow(&w, k);
    let dr = wk.0.sub(re);
    let di = wk.1.sub(im);
    let res = mag::sqrt_up(&mag::add(&mag::mul(&dr, &dr), &mag::mul(&di, &di)));
    let wabs_lo = w.mid_abs_lower();
    if wabs_lo.is_zero() {
        return Err(NumericsError::BallStraddlesBranchCut);
    }
    let delta = mag::div(&res, &pow_down(&wabs_lo, k - 1));
    // that root is unique (roots are >= 2|w| sin(pi/k) >= 4|w|/k apart)
    let gap = mag::div(&wabs_lo, &Dyadic::from_int(k));
    if mag::mul(&delta, &Dyadic::from_int(2)) >= gap {
        return Err(NumericsError::BallStraddlesBranchCut);
    }
    // and it is the principal one: the disk around w stays in |arg| < pi/k
    let angle = libm::atan2(w.mid_im().to_f64(), w.mid_re().to_f64()).abs();
    let spread = 4.0 * mag::div(&delta, &wabs_lo).to_f64() + 1e-12;
    if !(angle + spread < core::f64::consts::PI / k as f64) {
        return Err(NumericsError::BallStraddlesBranchCut);
    }
    // propagate the input radius: |d/dz z^(1/k)| = |z|^(1/k - 1) / k
    let prop = if a.rad().is_zero() {
        Dyadic::zero()
    } else {
        let lo = a.abs_lower();
        if lo.is_zero() {
            return Err(NumericsError::RootOfBallContainingZero);
        }
        let root_lo = mag::root_down(&lo, k);
        let den = mag::mul(&mag::div(&lo, &root_lo), &Dyadic::from_int(k));
        mag::div(a.rad(), &den)
    };
    Ok(BallComplex::from_mid(
        w.mid_re().clone(),
        w.mid_im().clone(),
        mag::add(&delta, &prop),
        prec,
    ))
}

fn pow_down(x: &Dyadic, k: u32) -> Dyadic {
    let mut r = Dyadic::one();
    for _ in 0..k {
        r = mag::down(&mag::down(&r).mul(&mag::down(x)));
    }
    r
}

fn exact_pow(w: &BallComplex, k: u32) -> (Dyadic, Dyadic) {
    let (mut r, mut i) = (Dyadic::one(), Dyadic::zero());
    for _ in 0..k {
        let nr = r.mul(w.mid_re()).sub(&i.mul(w.mid_im()));
        let ni = r.mul(w.mid_im()).add(&i.mul(w.mid_re()));
        r = nr;
        i = ni;
    }
    (r, i)
}

/// Enclosure of `sqrt(n)` for a nonnegative integer.
pub fn sqrt_int(n: u64, prec: u32) -> BallComplex {
    kth_root_principal(&BallComplex::from_int(n, prec), 2).expect("sqrt of nonnegative integer")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_digits() {
        let p = pi(256);
        // 3.14159265358979323846264338327950288 bracketed by rationals
        let lo = q(314159265358979323, 100000000000000000);
        let hi = q(314159265358979324, 100000000000000000);
        assert!(p.re_lower().to_rational() > lo);
        assert!(p.re_upper().to_rational() < hi);
        assert!(p.rad() < &Dyadic::pow2(-250));
    }

    #[test]
    fn exp_zero_and_log2() {
        assert!(exp(&BallComplex::zero(128)).contains_rational(&q(1, 1)));
        // e^(i pi) = -1
        let m1 = exp_i_pi(&BallComplex::one(256));
        assert!(m1.contains_rational(&q(-1, 1)));
        assert!(m1.rad() < &Dyadic::pow2(-240));
    }

    #[test]
    fn exp_large_negative() {
        let z = BallComplex::from_int(-1000, 128);
        let e = exp(&z);
        let top = e.mid_re().top();
        // e^-1000 ~ 2^-1442.7
        assert!((-1444..=-1441).contains(&top), "{top}");
        assert!(e.rad() < &Dyadic::pow2(-1442 - 120));
    }

    #[test]
    fn square_root_of_four() {
        let r = kth_root_principal(&BallComplex::from_int(4, 64), 2).unwrap();
        assert!(r.contains_rational(&q(2, 1)));
    }

    #[test]
    fn eighth_root_of_two_by_repeated_sqrt() {
        let a = BallComplex::from_int(2, 256);
        let direct = kth_root_principal(&a, 8).unwrap();
        let mut s = a;
        for _ in 0..3 {
            s = s.sqrt().unwrap();
        }
        assert!(direct.overlaps(&s));
        assert!(direct.rad() < &Dyadic::pow2(-240));
    }

    #[test]
    fn principal_branch() {
        let r = kth_root_principal(&BallComplex::from_int(-1, 64), 2).unwrap();
        assert!(r.contains_gauss(&q(0, 1), &q(1, 1)));
        let r4 = kth_root_principal(&BallComplex::from_int(-4, 128), 4).unwrap();
        assert!(r4.contains_gauss(&q(1, 1), &q(1, 1)));
        let ri = kth_root_principal(&BallComplex::from_gauss(&q(0, 1), &q(-1, 1), 64), 2).unwrap();
        assert!(ri.re_lower().is_positive() && ri.im_upper().is_negative());
        let cut = BallComplex::new(Dyadic::from_int(-1), Dyadic::zero(), Dyadic::pow2(-10), 64);
        assert_eq!(
            kth_root_principal(&cut, 2),
            Err(NumericsError::BallStraddlesBranchCut)
        );
    }

    #[test]
    fn cube_root_of_unity_direction() {
        let z = BallComplex::from_gauss(&q(-1, 1), &q(1, 1000), 128);
        let r = kth_root_principal(&z, 3).unwrap();
        let back = r.pow_u(3);
        assert!(back.overlaps(&z));
        assert!(r.mid_re().is_positive() && r.mid_im().is_positive());
    }
}
