//! Substitution and Sylvester resultants over `Q(i)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::gauss::GaussRat;
use crate::linalg::{det, Domain};
use crate::modpoly::{check_q_index, IntPoly2, ModpolyError, PolyKind, PolySource};
use crate::numerics::BallComplex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EliminationError {
    #[error("resultant of the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid shape: {0}")]
    InvalidShape(&'static str),
    #[error("precondition: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Modpoly(#[from] ModpolyError),
}

impl Domain for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn one() -> Self {
        GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
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
        self.div(o).expect("division by zero")
    }
}

/// Dense univariate polynomial over `Q(i)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussPoly1 {
    c: Vec<GaussRat>,
}

impl GaussPoly1 {
    pub fn new(mut c: Vec<GaussRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        GaussPoly1 { c }
    }

    pub fn zero() -> Self {
        GaussPoly1 { c: Vec::new() }
    }

    pub fn constant(x: GaussRat) -> Self {
        Self::new(vec![x])
    }

    /// `c0 + c1 X`.
    pub fn linear(c0: GaussRat, c1: GaussRat) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| GaussRat::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.c.get(k).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> GaussRat {
        self.c.last().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![GaussRat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] = &r[i + j] + &(a * b);
                }
            }
        }
        Self::new(r)
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(GaussRat::one()), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let inv = d.lead().inv()?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![GaussRat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&t * dc);
            }
            q[k] = t;
        }
        r.truncate(dd);
        Some((Self::new(q), Self::new(r)))
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        self.c.iter().rev().fold(GaussRat::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Denominator-free multiple: the lcm of all coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.c.iter().fold(<BigInt as One>::one(), |l, x| l.lcm(&x.denom_lcm()))
    }

    fn var_fmt(&self, f: &mut fmt::Formatter<'_>, v: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*{}", c, v)?,
                _ => write!(f, "({})*{}^{}", c, v, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for GaussPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.var_fmt(f, "X")
    }
}

impl Domain for GaussPoly1 {
    fn zero() -> Self {
        GaussPoly1::zero()
    }
    fn one() -> Self {
        GaussPoly1::constant(GaussRat::one())
    }
    fn is_zero(&self) -> bool {
        GaussPoly1::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        GaussPoly1::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        GaussPoly1::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        GaussPoly1::mul(self, o)
    }
    fn neg(&self) -> Self {
        GaussPoly1::new(self.c.iter().map(|x| -x).collect())
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.divrem(o).expect("division by zero");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

/// Sparse bivariate polynomial over `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussPoly2 {
    terms: BTreeMap<(u32, u32), GaussRat>,
}

impl GaussPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_intpoly(p: &IntPoly2) -> Self {
        let mut g = Self::new();
        for ((i, j), c) in p.terms() {
            g.add_term(i, j, GaussRat::from_int(c.clone()));
        }
        g
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(GaussRat::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussRat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &GaussRat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
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

    /// Coefficients of `Y^0, ..., Y^deg_y` as polynomials in `X`.
    pub fn y_coeffs(&self) -> Vec<GaussPoly1> {
        let dy = self.deg_y().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<GaussRat>> = vec![Vec::new(); dy];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, GaussRat::zero());
            }
            row[*i as usize] = c.clone();
        }
        rows.into_iter().map(GaussPoly1::new).collect()
    }

    /// `f(x, Y)` as a polynomial in `Y`.
    pub fn eval_x(&self, x: &GaussRat) -> GaussPoly1 {
        GaussPoly1::new(self.y_coeffs().iter().map(|p| p.eval(x)).collect())
    }

    pub fn eval(&self, x: &GaussRat, y: &GaussRat) -> GaussRat {
        self.eval_x(x).eval(y)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::new();
        for ((a, b), c) in &self.terms {
            for ((d, e), g) in &o.terms {
                r.add_term(a + d, b + e, c * g);
            }
        }
        r
    }
}

/// `P(x_scale (c0 + c1 X)^4, y_scale Y)`.
pub fn subst_quartic_linear(
    p: &IntPoly2,
    x_scale: &BigRational,
    c0: &GaussRat,
    c1: &GaussRat,
    y_scale: &BigRational,
) -> GaussPoly2 {
    let l = GaussPoly1::linear(c0.clone(), c1.clone())
        .pow(4)
        .scale(&GaussRat::real(x_scale.clone()));
    let dx = p.deg_x().unwrap_or(0);
    let mut lp = vec![GaussPoly1::constant(GaussRat::one())];
    for _ in 0..dx {
        let next = lp.last().expect("nonempty").mul(&l);
        lp.push(next);
    }
    let mut out = GaussPoly2::new();
    for ((i, j), c) in p.terms() {
        let s = GaussRat::real(y_scale.pow(j as i32) * BigRational::from_integer(c.clone()));
        for (k, lc) in lp[i as usize].coeffs().iter().enumerate() {
            out.add_term(k as u32, j, lc * &s);
        }
    }
    out
}

/// `P(x_scale (c0 + c1 x)^4, y_scale Y)` for a fixed `x`, as a polynomial in `Y`.
pub fn specialize_quartic_linear(
    p: &IntPoly2,
    x_scale: &BigRational,
    c0: &GaussRat,
    c1: &GaussRat,
    y_scale: &BigRational,
    x: &GaussRat,
) -> GaussPoly1 {
    let l = (c0 + &(c1 * x)).pow(4).scale(x_scale);
    let dy = p.deg_y().unwrap_or(0);
    let out = (0..=dy)
        .map(|j| {
            let v = p
                .y_coeff(j)
                .coeffs()
                .iter()
                .rev()
                .fold(GaussRat::zero(), |acc, c| &(&acc * &l) + &GaussRat::from_int(c.clone()));
            v.scale(&y_scale.pow(j as i32))
        })
        .collect();
    GaussPoly1::new(out)
}

/// Sylvester matrix of `f`, `g` (coefficients lowest degree first) with the
/// formal degrees `f.len() - 1`, `g.len() - 1`.
pub fn sylvester<R: Domain>(f: &[R], g: &[R]) -> Vec<Vec<R>> {
    let p = f.len() - 1;
    let q = g.len() - 1;
    let n = p + q;
    let mut m = vec![vec![R::zero(); n]; n];
    for r in 0..q {
        for (k, c) in f.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..p {
        for (k, c) in g.iter().rev().enumerate() {
            m[q + r][r + k] = c.clone();
        }
    }
    m
}

/// Scalar resultant of two univariate polynomials over `Q(i)`.
pub fn resultant(f: &GaussPoly1, g: &GaussPoly1) -> Result<GaussRat, EliminationError> {
    if f.is_zero() || g.is_zero() {
        return Err(EliminationError::ZeroPolynomial);
    }
    Ok(det(sylvester(f.coeffs(), g.coeffs())))
}

/// Strategy for bivariate resultants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResultantRoute {
    /// Interpolation above a size threshold, direct below.
    #[default]
    Auto,
    /// Fraction-free elimination over `Q(i)[X]`.
    Direct,
    /// Scalar determinants at integer nodes and interpolation.
    Interpolate,
}

/// Bound on `deg_X Res_Y(f, g)`.
pub fn resultant_degree_bound(f: &GaussPoly2, g: &GaussPoly2) -> usize {
    let p = f.deg_y().unwrap_or(0) as usize;
    let q = g.deg_y().unwrap_or(0) as usize;
    q * f.deg_x().unwrap_or(0) as usize + p * g.deg_x().unwrap_or(0) as usize
}

pub fn sylvester_res_y(f: &GaussPoly2, g: &GaussPoly2) -> Result<GaussPoly1, EliminationError> {
    sylvester_res_y_with(f, g, ResultantRoute::Auto)
}

pub fn sylvester_res_y_with(
    f: &GaussPoly2,
    g: &GaussPoly2,
    route: ResultantRoute,
) -> Result<GaussPoly1, EliminationError> {
    if f.is_zero() || g.is_zero() {
        return Err(EliminationError::ZeroPolynomial);
    }
    let bound = resultant_degree_bound(f, g);
    let direct = match route {
        ResultantRoute::Direct => true,
        ResultantRoute::Interpolate => false,
        ResultantRoute::Auto => bound <= 48,
    };
    if direct {
        return Ok(det(sylvester(&f.y_coeffs(), &g.y_coeffs())));
    }
    Ok(res_interpolate(f, g, bound))
}

fn res_interpolate(f: &GaussPoly2, g: &GaussPoly2, bound: usize) -> GaussPoly1 {
    // Z[i] coefficients keep every Bareiss step and the interpolation integral.
    let (fc, a) = clear(f);
    let (gc, b) = clear(g);
    let p = fc.len() - 1;
    let q = gc.len() - 1;
    let x0 = -((bound / 2) as i64);
    let vals: Vec<Zi> = (0..=bound as i64)
        .map(|k| {
            let x = BigInt::from(x0 + k);
            let fv: Vec<Zi> = fc.iter().map(|c| zi_eval(c, &x)).collect();
            let gv: Vec<Zi> = gc.iter().map(|c| zi_eval(c, &x)).collect();
            det(sylvester(&fv, &gv))
        })
        .collect();
    let r = interpolate_consecutive(x0, vals);
    // Res(a f, b g) = a^q b^p Res(f, g)
    let s = BigRational::new(
        <BigInt as One>::one(),
        num_traits::pow(a, q) * num_traits::pow(b, p),
    );
    GaussPoly1::new(
        r.into_iter()
            .map(|z| GaussRat::new(BigRational::from_integer(z.re), BigRational::from_integer(z.im)).scale(&s))
            .collect(),
    )
}

/// Gaussian integer; only used inside the interpolation route.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Zi {
    re: BigInt,
    im: BigInt,
}

impl Zi {
    fn int(x: BigInt) -> Self {
        Zi { re: x, im: BigInt::from(0) }
    }

    fn scale(&self, s: &BigInt) -> Self {
        Zi {
            re: &self.re * s,
            im: &self.im * s,
        }
    }
}

impl Domain for Zi {
    fn zero() -> Self {
        Zi::int(BigInt::from(0))
    }
    fn one() -> Self {
        Zi::int(BigInt::from(1))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.re) && num_traits::Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Zi {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        Zi {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        Zi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        Zi {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn div_exact(&self, o: &Self) -> Self {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        debug_assert!(num_traits::Zero::is_zero(&(&re % &n)) && num_traits::Zero::is_zero(&(&im % &n)));
        Zi { re: re / &n, im: im / &n }
    }
}

fn zi_eval(c: &GaussPoly1, x: &BigInt) -> Zi {
    let mut acc = <Zi as Domain>::zero();
    for v in c.coeffs().iter().rev() {
        acc = acc.scale(x);
        acc.re += v.re.to_integer();
        acc.im += v.im.to_integer();
    }
    acc
}

fn clear(f: &GaussPoly2) -> (Vec<GaussPoly1>, BigInt) {
    use num_integer::Integer;
    let rows = f.y_coeffs();
    let l = rows.iter().fold(<BigInt as One>::one(), |l, r| l.lcm(&r.denom_lcm()));
    let s = GaussRat::from_int(l.clone());
    (rows.iter().map(|r| r.scale(&s)).collect(), l)
}

/// Coefficients of the integral polynomial through `(x0 + k, vals[k])`.
///
/// Forward differences `d_j` give `p = sum_j d_j/j! prod_{l<j} (X - x_l)`;
/// the Horner scheme `U_j = (D!/j!) d_j + (X - x_j) U_{j+1}` ends in
/// `U_0 = D! p` with integer arithmetic only.
fn interpolate_consecutive(x0: i64, mut d: Vec<Zi>) -> Vec<Zi> {
    let n = d.len();
    for j in 1..n {
        for i in (j..n).rev() {
            d[i] = d[i].sub(&d[i - 1]);
        }
    }
    let deg = n - 1;
    let mut fact = vec![<BigInt as One>::one(); n];
    // fact[j] = D!/j!
    for j in (0..deg).rev() {
        fact[j] = &fact[j + 1] * BigInt::from(j + 1);
    }
    let mut u: Vec<Zi> = vec![d[deg].clone()];
    for j in (0..deg).rev() {
        let xj = BigInt::from(x0 + j as i64);
        // u <- (X - x_j) u + fact[j] d_j
        let mut next = vec![<Zi as Domain>::zero(); u.len() + 1];
        for (k, c) in u.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.scale(&xj));
        }
        next[0] = next[0].add(&d[j].scale(&fact[j]));
        u = next;
    }
    let dfact = &fact[0];
    u.into_iter()
        .map(|c| {
            debug_assert!(num_traits::Zero::is_zero(&(&c.re % dfact)));
            Zi {
                re: &c.re / dfact,
                im: &c.im / dfact,
            }
        })
        .collect()
}

/// Interpolating polynomial through `(nodes[k], vals[k])`.
pub fn newton_interpolate(nodes: &[i64], mut c: Vec<GaussRat>) -> GaussPoly1 {
    let n = nodes.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let d = BigRational::from_integer(BigInt::from(nodes[i] - nodes[i - j]));
            c[i] = (&c[i] - &c[i - 1]).scale(&d.recip());
        }
    }
    let mut p = GaussPoly1::zero();
    for k in (0..n).rev() {
        let lin = GaussPoly1::linear(GaussRat::from_int(-nodes[k]), GaussRat::one());
        p = p.mul(&lin).add(&GaussPoly1::constant(c[k].clone()));
    }
    p
}

pub fn eval_poly_ball(p: &GaussPoly1, x: &BallComplex) -> BallComplex {
    let prec = x.prec();
    p.coeffs()
        .iter()
        .rev()
        .fold(BallComplex::zero(prec), |acc, c| acc.mul(x).add(&c.to_ball(prec)))
}

fn ratios(alphas: &[GaussRat; 3]) -> Result<(GaussRat, GaussRat), EliminationError> {
    if alphas.iter().any(|a| a.is_zero()) {
        return Err(EliminationError::Precondition("all three coefficients must be nonzero"));
    }
    let inv1 = alphas[1].inv().expect("nonzero");
    Ok((-(&alphas[0] * &inv1), -(&alphas[2] * &inv1)))
}

fn sq(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n * n))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Res_Y(P_m(m^2(c0 + c1 X)^4, 16Y), P_n(n^2 X^4, 16Y))` with
/// `c0 = -a0/a1`, `c1 = -a2/a1`, for odd `3 <= n < m`.
pub fn build_r<S: PolySource + ?Sized>(
    m: u64,
    n: u64,
    alphas: &[GaussRat; 3],
    src: &mut S,
) -> Result<GaussPoly1, EliminationError> {
    if m.is_multiple_of(2) || n.is_multiple_of(2) || n < 3 {
        return Err(EliminationError::InvalidShape("m and n must be odd and at least 3"));
    }
    if n >= m {
        return Err(EliminationError::InvalidShape("requires n < m"));
    }
    let (c0, c1) = ratios(alphas)?;
    let pm = src.poly(PolyKind::P, m)?;
    let pn = src.poly(PolyKind::P, n)?;
    let f = subst_quartic_linear(&pm, &sq(m), &c0, &c1, &int(16));
    let g = subst_quartic_linear(&pn, &sq(n), &GaussRat::zero(), &GaussRat::one(), &int(16));
    sylvester_res_y(&f, &g)
}

/// The two factors of `W`: `H_m(X,Y) = Q_m((c0 + c1 X)^4, Y)` and
/// `Q_n(X^4, Y)` (even `n`) or `P_n(n^2 X^4, 16Y)` (odd `n`).
pub fn w_factors<S: PolySource + ?Sized>(
    m: u64,
    n: u64,
    alphas: &[GaussRat; 3],
    src: &mut S,
) -> Result<(GaussPoly2, GaussPoly2), EliminationError> {
    check_q_index(m)?;
    let (c0, c1) = ratios(alphas)?;
    let qm = src.poly(PolyKind::Q, m)?;
    let h = subst_quartic_linear(&qm, &int(1), &c0, &c1, &int(1));
    Ok((h, second_factor(n, src)?))
}

fn second_factor<S: PolySource + ?Sized>(n: u64, src: &mut S) -> Result<GaussPoly2, EliminationError> {
    let (zero, one) = (GaussRat::zero(), GaussRat::one());
    if n.is_multiple_of(2) {
        check_q_index(n)?;
        let qn = src.poly(PolyKind::Q, n)?;
        Ok(subst_quartic_linear(&qn, &int(1), &zero, &one, &int(1)))
    } else {
        if n < 3 {
            return Err(EliminationError::InvalidShape("odd n must be at least 3"));
        }
        let pn = src.poly(PolyKind::P, n)?;
        Ok(subst_quartic_linear(&pn, &sq(n), &zero, &one, &int(16)))
    }
}

pub fn build_w<S: PolySource + ?Sized>(
    m: u64,
    n: u64,
    alphas: &[GaussRat; 3],
    src: &mut S,
) -> Result<GaussPoly1, EliminationError> {
    let (h, g) = w_factors(m, n, alphas, src)?;
    sylvester_res_y(&h, &g)
}

/// Specialized resultant `Res_Y(f(x0, Y), g(x0, Y))` with generic degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarResultant {
    pub value: GaussRat,
    pub f_at: GaussPoly1,
    pub g_at: GaussPoly1,
    /// Whether either leading `Y`-coefficient vanishes at `x0`.
    pub degree_dropped: bool,
}

/// `W(x0)`, specializing `X = x0` before taking the resultant.
pub fn w_at<S: PolySource + ?Sized>(
    m: u64,
    n: u64,
    alphas: &[GaussRat; 3],
    x0: &GaussRat,
    src: &mut S,
) -> Result<ScalarResultant, EliminationError> {
    check_q_index(m)?;
    let (c0, c1) = ratios(alphas)?;
    let qm = src.poly(PolyKind::Q, m)?;
    let f_at = specialize_quartic_linear(&qm, &int(1), &c0, &c1, &int(1), x0);
    let (zero, one) = (GaussRat::zero(), GaussRat::one());
    let g_at = if n.is_multiple_of(2) {
        check_q_index(n)?;
        let qn = src.poly(PolyKind::Q, n)?;
        specialize_quartic_linear(&qn, &int(1), &zero, &one, &int(1), x0)
    } else {
        if n < 3 {
            return Err(EliminationError::InvalidShape("odd n must be at least 3"));
        }
        let pn = src.poly(PolyKind::P, n)?;
        specialize_quartic_linear(&pn, &sq(n), &zero, &one, &int(16), x0)
    };
    let fd = qm.deg_y().unwrap_or(0) as usize;
    let gd = if n.is_multiple_of(2) {
        src.poly(PolyKind::Q, n)?.deg_y()
    } else {
        src.poly(PolyKind::P, n)?.deg_y()
    }
    .unwrap_or(0) as usize;
    let degree_dropped = f_at.degree() != Some(fd) || g_at.degree() != Some(gd);
    let pad = |p: &GaussPoly1, d: usize| {
        let mut c = p.coeffs().to_vec();
        c.resize(d + 1, GaussRat::zero());
        c
    };
    let value = det(sylvester(&pad(&f_at, fd), &pad(&g_at, gd)));
    Ok(ScalarResultant {
        value,
        f_at,
        g_at,
        degree_dropped,
    })
}
