//! Annihilating polynomials `P_n`, `Q_n`, `T_m` of theta quotients.
//!
//! `P_n` (odd `n`) kills `(n^2 theta3^4(n tau)/theta3^4, 16 theta2^4/theta3^4)`
//! and is monic of degree `psi(n)` in `X`. `Q_n` (`n = 2^a s`, `s` odd, `s >= 3`)
//! kills `(theta3^4(n tau)/theta3^4, theta2^4/theta3^4)` with a constant
//! leading `Y`-coefficient `c_n^(2^a)`. Both are found by nullspace fitting and
//! then checked against their structural laws.

mod fit;
mod intpoly;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numthy::{divisors, psi, two_adic, w_count};

pub use fit::{
    certify_residual, columns_exact, exact_residual, fit_exact, fit_modular, FitInfo, FitOptions,
    FitStrategy, SeriesPair,
};
pub use intpoly::{IntPoly2, PolyKind, PolyMeta, ZPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModpolyError {
    #[error("index {n} is not valid for {kind}: {reason}")]
    InvalidIndex {
        kind: &'static str,
        n: u64,
        reason: &'static str,
    },
    #[error("odd part of {n} is smaller than 3")]
    OddPartTooSmall { n: u64 },
    #[error("nullspace has dimension {dim} at order {order}")]
    NullspaceDimensionNotOne { dim: usize, order: usize },
    #[error("normalizing coefficient of the nullspace vector vanishes")]
    NormalizationVanishes,
    #[error("violates law `{law}`: {detail}")]
    ValidationFailure { law: &'static str, detail: String },
    #[error("series residual is nonzero at q^{index}")]
    ResidualNonzero { index: usize },
    #[error("ran out of primes")]
    OutOfPrimes,
}

pub mod law {
    pub const MONIC: &str = "monic in X of degree psi(n)";
    pub const P_DEGREE_BOUND: &str = "deg R_k(Y) <= k(n-1)/n";
    pub const P_INTEGRAL: &str = "integer coefficients";
    pub const P_CONSTANT_SECTION: &str = "P_s(X,0) is the divisor product of (X - u^2)^w(u,s/u)";
    pub const S_VANISH: &str = "S_{n,j}(0) = 0 for 1 <= j <= d_n";
    pub const S_TOP: &str = "S_{n,d_n} is not identically zero";
    pub const S_CONSTANT: &str = "S_{n,0}(0) = P_n(0,0) is a nonzero integer";
    pub const Q_LEAD: &str = "leading Y-term of Q_n is c_n^(2^a) Y^(2^a psi(s))";
    pub const Q_PERFECT_POWER: &str = "leading Y-coefficient of Q_n is a perfect 2^a-th power";
    pub const Q_DEGREE_BOUND: &str = "deg R_{n,j}(X) <= 2^a psi(s) - j";
    pub const Q_AT_X0: &str = "Q_n(0,Y) = c_n^(2^a) Y^(2^a psi(s))";
    pub const Q_CROSS: &str =
        "R_{n,0}(X) = 2^(4(2^a-1)psi(s)) X^((2^a-1)psi(s)) P_s(s^2 X, 0)";
    pub const RESIDUAL: &str = "vanishes on the defining theta quotients";
}

fn fail(law: &'static str, detail: String) -> ModpolyError {
    ModpolyError::ValidationFailure { law, detail }
}

fn check_p_index(n: u64) -> Result<(), ModpolyError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ModpolyError::InvalidIndex {
            kind: "P",
            n,
            reason: "must be odd and at least 3",
        });
    }
    Ok(())
}

/// `(a, s)` with `n = 2^a s`, checked for the `Q_n` shape.
pub fn check_q_index(n: u64) -> Result<(u32, u64), ModpolyError> {
    if n == 0 || n % 2 == 1 {
        return Err(ModpolyError::InvalidIndex {
            kind: "Q",
            n,
            reason: "must be even",
        });
    }
    let (a, s) = two_adic(n);
    if s < 3 {
        return Err(ModpolyError::OddPartTooSmall { n });
    }
    Ok((a, s))
}

/// `Y`-degree of `Q_n`, `2^a psi(s)`.
pub fn q_degree(n: u64) -> Result<u32, ModpolyError> {
    let (a, s) = check_q_index(n)?;
    Ok(((1u64 << a) * psi(s)) as u32)
}

/// Unknown monomials of `P_n`; the monic `X^psi(n)` comes first.
pub fn p_monomials(n: u64) -> Vec<(u32, u32)> {
    let d = psi(n) as u32;
    let mut v = alloc::vec![(d, 0)];
    for k in 1..=d {
        let jmax = (k as u64 * (n - 1) / n) as u32;
        for j in 0..=jmax {
            v.push((d - k, j));
        }
    }
    v
}

/// Unknown monomials of `Q_n`; the leading `Y^D` comes first.
pub fn q_monomials(n: u64) -> Result<Vec<(u32, u32)>, ModpolyError> {
    let d = q_degree(n)?;
    let mut v = alloc::vec![(0, d)];
    for j in 0..d {
        for i in 0..=d - j {
            v.push((i, j));
        }
    }
    Ok(v)
}

pub fn fit_order(unknowns: usize, n: u64, margin: usize) -> usize {
    unknowns * (n as usize + 1) + margin
}

/// Series pair annihilated by `P_n`.
pub fn p_pair(n: u64, order: usize) -> SeriesPair {
    SeriesPair::theta_quotients(n, (n * n) as i64, 16, order)
}

/// Series pair annihilated by `Q_n` and `T_n`.
pub fn q_pair(n: u64, order: usize) -> SeriesPair {
    SeriesPair::theta_quotients(n, 1, 1, order)
}

fn solve(
    mons: &[(u32, u32)],
    pair: &SeriesPair,
    strategy: FitStrategy,
) -> Result<(Vec<BigRational>, FitInfo), ModpolyError> {
    match strategy {
        FitStrategy::Modular => fit_modular(mons, 0, pair),
        FitStrategy::ExactBareiss => fit_exact(mons, 0, pair),
    }
}

fn uniqueness_note(info: &FitInfo) -> String {
    format!(
        "nullspace dimension 1 at fitting order {}; residual certified to that order with {} primes; \
         uniqueness beyond the fitting order is not proven",
        info.order, info.residual_primes
    )
}

/// Fits `P_n` for odd `n >= 3` and validates it.
#[allow(non_snake_case)]
pub fn fit_P(n: u64, opts: FitOptions) -> Result<IntPoly2, ModpolyError> {
    check_p_index(n)?;
    let mons = p_monomials(n);
    let order = fit_order(mons.len(), n, opts.margin);
    let pair = p_pair(n, order);
    let (sol, mut info) = solve(&mons, &pair, opts.strategy)?;
    let ints = fit::integral(&sol)
        .ok_or_else(|| fail(law::P_INTEGRAL, String::from("normalized nullspace vector has denominators")))?;
    let meta = PolyMeta {
        kind: PolyKind::P,
        n,
        c_n: None,
        fit_order: order,
        note: String::new(),
    };
    let mut p = IntPoly2::from_terms(mons.iter().copied().zip(ints), meta);
    info.residual_primes = certify_residual(&p, &pair)?;
    p.meta.note = uniqueness_note(&info);
    validate_p(&p)?;
    Ok(p)
}

/// Fits `Q_n` for `n = 2^a s` and validates it.
///
/// The relation between `R_{n,0}` and `P_s` is not enforced here; it is
/// evaluated by [`cross_law`] and its outcome recorded in the note.
#[allow(non_snake_case)]
pub fn fit_Q(n: u64, opts: FitOptions) -> Result<IntPoly2, ModpolyError> {
    let mons = q_monomials(n)?;
    let order = fit_order(mons.len(), n, opts.margin);
    let pair = q_pair(n, order);
    let (sol, mut info) = solve(&mons, &pair, opts.strategy)?;
    let ints = fit::primitive_positive(&sol, 0);
    let meta = PolyMeta {
        kind: PolyKind::Q,
        n,
        c_n: None,
        fit_order: order,
        note: String::new(),
    };
    let mut q = IntPoly2::from_terms(mons.iter().copied().zip(ints), meta);
    info.residual_primes = certify_residual(&q, &pair)?;
    q.meta.c_n = Some(q_root_of_lead(&q)?);
    q.meta.note = uniqueness_note(&info);
    validate_q(&q)?;
    Ok(q)
}

fn q_root_of_lead(q: &IntPoly2) -> Result<BigInt, ModpolyError> {
    let (a, _) = check_q_index(q.meta.n)?;
    let d = q_degree(q.meta.n)?;
    let lead = q.coeff(0, d);
    let e = 1u32 << a;
    if !lead.is_positive() {
        return Err(fail(law::Q_PERFECT_POWER, format!("leading coefficient {}", lead)));
    }
    let r = lead.nth_root(e);
    if r.pow(e) != lead {
        return Err(fail(law::Q_PERFECT_POWER, format!("{} is not a {}-th power", lead, e)));
    }
    Ok(r)
}

/// `P_s(X,0)`, or `P_s(s^2 X, 0)` when `scaled`, from the divisor product.
#[allow(non_snake_case)]
pub fn expand_P_at_Y0(s: u64, scaled: bool) -> ZPoly {
    let mut p = ZPoly::constant(BigInt::one());
    for u in divisors(s) {
        let root = BigInt::from(u * u);
        let f = ZPoly::new(alloc::vec![-root, BigInt::one()]);
        p = p.mul(&f.pow(w_count(u, s / u) as u32));
    }
    if scaled {
        p.compose_scale(&BigInt::from(s * s))
    } else {
        p
    }
}

/// Checks every kind-`P` law except the series residual.
pub fn validate_p(p: &IntPoly2) -> Result<(), ModpolyError> {
    let n = p.meta.n;
    check_p_index(n)?;
    let d = psi(n) as u32;
    if p.deg_x() != Some(d) || !p.coeff(d, 0).is_one() || p.x_coeff(d) != ZPoly::constant(BigInt::one()) {
        return Err(fail(law::MONIC, format!("X-degree {:?}", p.deg_x())));
    }
    for ((i, j), _) in p.terms() {
        let k = (d - i) as u64;
        if j as u64 * n > k * (n - 1) {
            return Err(fail(law::P_DEGREE_BOUND, format!("term X^{} Y^{}", i, j)));
        }
    }
    let expected = expand_P_at_Y0(n, false);
    if p.at_y0() != expected {
        return Err(fail(
            law::P_CONSTANT_SECTION,
            format!("P(X,0) = {}, expected {}", p.at_y0(), expected),
        ));
    }
    s_decompose(p)?;
    Ok(())
}

/// Checks every kind-`Q` law except the series residual and the cross-law.
pub fn validate_q(q: &IntPoly2) -> Result<(), ModpolyError> {
    let n = q.meta.n;
    let d = q_degree(n)?;
    let lead = q.coeff(0, d);
    if q.deg_y() != Some(d) || q.y_coeff(d) != ZPoly::constant(lead.clone()) {
        return Err(fail(law::Q_LEAD, format!("Y-degree {:?}", q.deg_y())));
    }
    let c = q_root_of_lead(q)?;
    if q.meta.c_n.as_ref().is_some_and(|m| *m != c) {
        return Err(fail(law::Q_LEAD, format!("recorded c_n differs from {}", c)));
    }
    for ((i, j), _) in q.terms() {
        if j < d && i + j > d {
            return Err(fail(law::Q_DEGREE_BOUND, format!("term X^{} Y^{}", i, j)));
        }
    }
    let want = ZPoly::constant(lead).shift(d as usize);
    if q.at_x0() != want {
        return Err(fail(law::Q_AT_X0, format!("Q(0,Y) = {}", q.at_x0().display_in("Y"))));
    }
    Ok(())
}

/// Laws of the kind recorded in `meta`, plus the residual to the recorded
/// fitting order.
pub fn validate_full(poly: &IntPoly2) -> Result<(), ModpolyError> {
    let n = poly.meta.n;
    let order = poly.meta.fit_order;
    let pair = match poly.meta.kind {
        PolyKind::P => {
            validate_p(poly)?;
            p_pair(n, order)
        }
        PolyKind::Q => {
            validate_q(poly)?;
            q_pair(n, order)
        }
        PolyKind::T => q_pair(n, order),
    };
    certify_residual(poly, &pair).map_err(|e| match e {
        ModpolyError::ResidualNonzero { index } => fail(law::RESIDUAL, format!("nonzero at q^{}", index)),
        e => e,
    })?;
    Ok(())
}

/// `P_n = sum_j S_{n,j}(X) Y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDecomposition {
    pub n: u64,
    pub parts: Vec<ZPoly>,
    pub d_n: u32,
}

impl SDecomposition {
    pub fn reconstruct(&self) -> BTreeMap<(u32, u32), BigInt> {
        let mut m = BTreeMap::new();
        for (j, s) in self.parts.iter().enumerate() {
            for (i, c) in s.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    m.insert((i as u32, j as u32), c.clone());
                }
            }
        }
        m
    }
}

pub fn s_decompose(p: &IntPoly2) -> Result<SDecomposition, ModpolyError> {
    let d_n = p.deg_y().unwrap_or(0);
    let parts: Vec<ZPoly> = (0..=d_n).map(|j| p.y_coeff(j)).collect();
    for (j, s) in parts.iter().enumerate().skip(1) {
        if !s.coeff(0).is_zero() {
            return Err(fail(law::S_VANISH, format!("S_{{n,{}}}(0) = {}", j, s.coeff(0))));
        }
    }
    if d_n == 0 || parts[d_n as usize].is_zero() {
        return Err(fail(law::S_TOP, format!("d_n = {}", d_n)));
    }
    if parts[0].coeff(0).is_zero() || parts[0].coeff(0) != p.coeff(0, 0) {
        return Err(fail(law::S_CONSTANT, format!("S_{{n,0}}(0) = {}", parts[0].coeff(0))));
    }
    Ok(SDecomposition { n: p.meta.n, parts, d_n })
}

/// Outcome of comparing `Q_n(X,0)` with the law tying it to `P_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossLaw {
    pub holds: bool,
    pub expected: ZPoly,
    pub actual: ZPoly,
    /// `actual / expected` when the two are proportional.
    pub ratio: Option<BigRational>,
}

/// The exact right-hand side `2^(4(2^a-1)psi(s)) X^((2^a-1)psi(s)) P_s(s^2 X, 0)`.
pub fn cross_law_rhs(n: u64) -> Result<ZPoly, ModpolyError> {
    let (a, s) = check_q_index(n)?;
    let e = ((1u64 << a) - 1) * psi(s);
    let two = BigInt::from(2).pow((4 * e) as u32);
    Ok(expand_P_at_Y0(s, true).scale(&two).shift(e as usize))
}

pub fn cross_law(q: &IntPoly2) -> Result<CrossLaw, ModpolyError> {
    let expected = cross_law_rhs(q.meta.n)?;
    let actual = q.at_y0();
    let ratio = proportional(&actual, &expected);
    Ok(CrossLaw {
        holds: actual == expected,
        expected,
        actual,
        ratio,
    })
}

fn proportional(a: &ZPoly, b: &ZPoly) -> Option<BigRational> {
    if a.degree() != b.degree() || b.is_zero() {
        return None;
    }
    let r = BigRational::new(a.lead(), b.lead());
    let ok = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .all(|(x, y)| BigRational::from_integer(x.clone()) == &r * BigRational::from_integer(y.clone()));
    ok.then_some(r)
}

/// Source of fitted polynomials.
pub trait PolySource {
    fn poly(&mut self, kind: PolyKind, n: u64) -> Result<IntPoly2, ModpolyError>;
}

/// Fits on demand and memoizes. A fit that fails for lack of order is
/// retried once with a larger margin.
#[derive(Clone, Debug, Default)]
pub struct MemoFitter {
    pub opts: FitOptions,
    memo: BTreeMap<(PolyKind, u64), IntPoly2>,
}

impl MemoFitter {
    pub fn new(opts: FitOptions) -> Self {
        MemoFitter {
            opts,
            memo: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, p: IntPoly2) {
        self.memo.insert((p.meta.kind, p.meta.n), p);
    }
}

impl PolySource for MemoFitter {
    fn poly(&mut self, kind: PolyKind, n: u64) -> Result<IntPoly2, ModpolyError> {
        if let Some(p) = self.memo.get(&(kind, n)) {
            return Ok(p.clone());
        }
        let p = match kind {
            PolyKind::T => build_t(n, self)?,
            _ => fit_with_retry(kind, n, self.opts)?,
        };
        self.memo.insert((kind, n), p.clone());
        Ok(p)
    }
}

/// Fits `kind` at `n`, retrying once with a quadrupled margin when the
/// nullspace is too large.
pub fn fit_with_retry(kind: PolyKind, n: u64, opts: FitOptions) -> Result<IntPoly2, ModpolyError> {
    let go = |o: FitOptions| match kind {
        PolyKind::P => fit_P(n, o),
        PolyKind::Q => fit_Q(n, o),
        PolyKind::T => Err(ModpolyError::InvalidIndex {
            kind: "T",
            n,
            reason: "T is built, not fitted",
        }),
    };
    match go(opts) {
        Err(ModpolyError::NullspaceDimensionNotOne { dim, .. }) if dim > 1 => go(FitOptions {
            margin: 4 * opts.margin.max(25),
            ..opts
        }),
        r => r,
    }
}

/// `T_m = P_m(m^2 X, 16 Y)` for odd `m`, `Q_m` for even `m`.
pub fn build_t<S: PolySource + ?Sized>(m: u64, src: &mut S) -> Result<IntPoly2, ModpolyError> {
    if m % 2 == 1 {
        let p = src.poly(PolyKind::P, m)?;
        let meta = PolyMeta {
            kind: PolyKind::T,
            ..p.meta.clone()
        };
        Ok(p.scale_vars(&BigInt::from(m * m), &BigInt::from(16), meta))
    } else {
        check_q_index(m)?;
        let mut q = src.poly(PolyKind::Q, m)?;
        q.meta.kind = PolyKind::T;
        Ok(q)
    }
}

/// Coefficients in `X` of `P(X, alpha)`, lowest degree first.
pub fn specialize_y(p: &IntPoly2, alpha: &BigRational) -> Vec<BigRational> {
    let dx = p.deg_x().unwrap_or(0);
    (0..=dx).map(|i| p.x_coeff(i).eval_rational(alpha)).collect()
}

#[cfg(test)]
mod tests;
