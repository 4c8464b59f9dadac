//! Hypothesis checks for the three-term theorems and the exact steps of the
//! resultant argument at `eta = -1/beta`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::CertifyError;
use crate::elimination::{sylvester, GaussPoly1};
use crate::gauss::GaussRat;
use crate::linalg::det;
use crate::modpoly::{check_q_index, s_decompose, PolyKind, PolySource};
use crate::numthy::{in_ms, is_gaussian_unit, psi, two_adic, AlgebraicLite, Phase};

/// Which three-term non-vanishing statement to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `m = 2^a s1`, `n = 2^b s2`, both even with odd parts at least 3.
    EvenEven,
    /// As `EvenEven` with coprime odd parts.
    CoprimeEvenEven,
    /// `m = 2^a s` even, `n` odd, both odd parts at least 3.
    EvenOdd,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::EvenEven => "even-even",
            Theorem::CoprimeEvenEven => "coprime-even-even",
            Theorem::EvenOdd => "even-odd",
        }
    }

    /// Accepts the names above and the short numeric tags used on the
    /// command line.
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even-even" | "2.3" | "thm2.3" => Some(Theorem::EvenEven),
            "coprime-even-even" | "cor2.1" | "2.1" => Some(Theorem::CoprimeEvenEven),
            "even-odd" | "2.4" | "thm2.4" => Some(Theorem::EvenOdd),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Undecided => "undecided",
        }
    }

    fn of(b: bool) -> Self {
        if b {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: String,
    pub citation: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub theorem: Theorem,
    pub m: u64,
    pub n: u64,
    pub beta: String,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    /// The theorem applies when at least one condition holds.
    pub fn applies(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Holds)
    }
}

fn mismatch(theorem: Theorem, m: u64, n: u64) -> CertifyError {
    CertifyError::ShapeMismatch {
        theorem: theorem.name(),
        m,
        n,
    }
}

/// Odd parts `(s1, s2)` after checking the shape.
fn shape(theorem: Theorem, m: u64, n: u64) -> Result<(u64, u64), CertifyError> {
    if m == 0 || n == 0 || m == n {
        return Err(mismatch(theorem, m, n));
    }
    let (a, s1) = two_adic(m);
    let (b, s2) = two_adic(n);
    let ok = match theorem {
        Theorem::EvenEven => a >= 1 && b >= 1 && s1 >= 3 && s2 >= 3,
        Theorem::CoprimeEvenEven => a >= 1 && b >= 1 && s1 >= 3 && s2 >= 3 && s1.gcd(&s2) == 1,
        Theorem::EvenOdd => a >= 1 && s1 >= 3 && b == 0 && n >= 3,
    };
    if ok {
        Ok((s1, s2))
    } else {
        Err(mismatch(theorem, m, n))
    }
}

fn inv_fourth(beta: &AlgebraicLite) -> Result<GaussRat, CertifyError> {
    beta.fourth_power()
        .inv()
        .ok_or(CertifyError::InvalidSpec("beta must be nonzero"))
}

fn check(condition: String, citation: &str, status: Status, detail: String) -> ConditionCheck {
    ConditionCheck {
        condition,
        citation: citation.to_string(),
        status,
        detail,
    }
}

/// `Q_n(x, 0)` for even `n`.
fn r_n0<S: PolySource + ?Sized>(n: u64, x: &GaussRat, src: &mut S) -> Result<GaussRat, CertifyError> {
    let q = src.poly(PolyKind::Q, n)?;
    Ok(q.at_y0().eval_gauss(x))
}

/// `(S_{n,0}(x), S_{n,d_n}(x))` for odd `n`.
fn s_ends<S: PolySource + ?Sized>(n: u64, x: &GaussRat, src: &mut S) -> Result<(GaussRat, GaussRat), CertifyError> {
    let p = src.poly(PolyKind::P, n)?;
    let d = s_decompose(&p)?;
    Ok((d.parts[0].eval_gauss(x), d.parts[d.d_n as usize].eval_gauss(x)))
}

/// Exact status of every hypothesis of `theorem` for `beta`. Values of the
/// fitted polynomials are computed in `Q(i)`; a condition is undecided only
/// when the polynomial is unavailable.
pub fn check_conditions<S: PolySource + ?Sized>(
    theorem: Theorem,
    m: u64,
    n: u64,
    beta: &AlgebraicLite,
    src: &mut S,
) -> Result<ConditionReport, CertifyError> {
    let (s1, s2) = shape(theorem, m, n)?;
    let binv4 = inv_fourth(beta)?;
    let mut checks = Vec::new();
    match theorem {
        Theorem::EvenEven => {
            let both = in_ms(beta, s1) && in_ms(beta, s2);
            checks.push(check(
                format!("beta not in M_{} ∩ M_{}", s1, s2),
                "square-root divisor sets M_s",
                Status::of(!both),
                format!("beta^2 = {}", beta.square()),
            ));
            let b4 = beta.fourth_power();
            checks.push(check(
                String::from("beta^4 not rational"),
                "degree of beta^4",
                Status::of(!b4.is_real()),
                format!("beta^4 = {}", b4),
            ));
            let cond = format!("R_{{{},0}}(beta^-4) != 0", n);
            checks.push(match r_n0(n, &binv4, src) {
                Ok(v) => check(cond, "constant Y-section of Q_n", Status::of(!v.is_zero()), format!("value {}", v)),
                Err(e) => check(cond, "constant Y-section of Q_n", Status::Undecided, e.to_string()),
            });
        }
        Theorem::CoprimeEvenEven => {
            checks.push(check(
                String::from("beta is not a unit of Z[i]"),
                "Gaussian units and coprime odd parts",
                Status::of(!is_gaussian_unit(beta)),
                format!("beta = {}", beta),
            ));
        }
        Theorem::EvenOdd => {
            let deg = beta.degree_of_fourth_power() as u64;
            checks.push(check(
                format!("deg(beta^4) > psi({})", n),
                "degree of beta^4",
                Status::of(deg > psi(n)),
                format!("deg = {}, psi = {}", deg, psi(n)),
            ));
            let x = &GaussRat::from_int(n * n) * &binv4;
            let cond = format!("S_{{{n},0}}(n^2 beta^-4) S_{{{n},d}}(n^2 beta^-4) != 0");
            checks.push(match s_ends(n, &x, src) {
                Ok((lo, hi)) => check(
                    cond,
                    "extreme Y-sections of P_n",
                    Status::of(!lo.is_zero() && !hi.is_zero()),
                    format!("S_0 = {}, S_d = {}", lo, hi),
                ),
                Err(e) => check(cond, "extreme Y-sections of P_n", Status::Undecided, e.to_string()),
            });
        }
    }
    Ok(ConditionReport {
        theorem,
        m,
        n,
        beta: beta.to_string(),
        checks,
    })
}

/// `g sqrt(u)` with Gaussian `g` and squarefree `u`.
#[derive(Clone, Debug)]
struct Quad {
    g: GaussRat,
    u: u64,
}

impl Quad {
    fn of(a: &AlgebraicLite) -> Self {
        match a {
            AlgebraicLite::Gaussian(g) => Quad { g: g.clone(), u: 1 },
            AlgebraicLite::Root { phase, r, u } => Quad {
                g: phase.to_gauss().scale(r),
                u: *u,
            },
        }
    }

    fn div_gauss(&self, h: &GaussRat) -> Option<Self> {
        Some(Quad {
            g: self.g.div(h)?,
            u: self.u,
        })
    }

    /// Product of two elements over the same radicand.
    fn mul(&self, o: &Quad) -> GaussRat {
        debug_assert_eq!(self.u, o.u);
        (&self.g * &o.g).scale(&BigRational::from_integer(BigInt::from(self.u)))
    }

    /// `1 / (g sqrt u) = (1 / (g u)) sqrt u`.
    fn inv(&self) -> Option<Self> {
        let gu = self.g.scale(&BigRational::from_integer(BigInt::from(self.u)));
        Some(Quad { g: gu.inv()?, u: self.u })
    }

    fn fourth_power(&self) -> GaussRat {
        let u2 = BigRational::from_integer(BigInt::from(self.u * self.u));
        self.g.pow(4).scale(&u2)
    }

    fn to_algebraic(&self) -> Option<AlgebraicLite> {
        if self.u == 1 {
            return Some(AlgebraicLite::Gaussian(self.g.clone()));
        }
        let (re, im) = (&self.g.re, &self.g.im);
        let (phase, r) = if im.is_zero() {
            (if re.is_positive() { Phase::One } else { Phase::MinusOne }, re.abs())
        } else if re.is_zero() {
            (if im.is_positive() { Phase::I } else { Phase::MinusI }, im.abs())
        } else {
            return None;
        };
        Some(AlgebraicLite::root(phase, r, self.u))
    }
}

/// `alpha2 / alpha0` as an exact value, when it has one of the supported
/// shapes.
pub fn beta_ratio(alpha0: &AlgebraicLite, alpha2: &AlgebraicLite) -> Result<AlgebraicLite, CertifyError> {
    let a0 = alpha0
        .as_gaussian()
        .ok_or_else(|| CertifyError::Unsupported(format!("alpha0 = {} must be a Gaussian rational", alpha0)))?;
    let q = Quad::of(alpha2)
        .div_gauss(a0)
        .ok_or(CertifyError::InvalidSpec("alpha0 must be nonzero"))?;
    q.to_algebraic()
        .ok_or_else(|| CertifyError::Unsupported(format!("{} / {} has no supported exact shape", alpha2, alpha0)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStepReport {
    pub theorem: Theorem,
    pub conditions: ConditionReport,
    pub beta: String,
    /// `eta^4 = beta^-4`.
    pub eta4: GaussRat,
    /// `-alpha0/alpha1 - (alpha2/alpha1) eta`, zero by construction.
    pub inner: GaussRat,
    /// `H_m(eta, Y)`.
    pub h_eta: GaussPoly1,
    /// `c_m^(2^a) Y^(2^a psi(s1))`.
    pub h_expected: GaussPoly1,
    /// Name of the constant-section value, e.g. `R_{10,0}(eta^4)`.
    pub section_name: String,
    pub section: GaussRat,
    /// `Res_Y` of the two specialized factors at generic `Y`-degrees.
    pub w_eta: GaussRat,
}

impl ProofStepReport {
    pub fn h_matches(&self) -> bool {
        self.h_eta == self.h_expected
    }

    /// `H_m(eta, Y)` is a nonzero multiple of a power of `Y`.
    pub fn h_only_root_zero(&self) -> bool {
        let c = self.h_eta.coeffs();
        !c.is_empty() && c[..c.len() - 1].iter().all(|x| x.is_zero()) && !c[c.len() - 1].is_zero()
    }

    pub fn all_nonzero(&self) -> bool {
        self.h_only_root_zero() && !self.section.is_zero() && !self.w_eta.is_zero()
    }
}

/// The three exact facts at `eta = -alpha0/alpha2`: `H_m(eta, Y)` is a
/// pure power of `Y`, the constant section of the second factor is nonzero
/// at `eta^4`, and `W(eta)` is nonzero. Even `n` uses `Q_n(X^4, Y)`, odd `n`
/// uses `P_n(n^2 X^4, 16 Y)`. The matching theorem's hypotheses are checked
/// first.
pub fn proof_step_w_eta<S: PolySource + ?Sized>(
    m: u64,
    n: u64,
    alphas: &[AlgebraicLite; 3],
    src: &mut S,
) -> Result<ProofStepReport, CertifyError> {
    let theorem = if n.is_multiple_of(2) { Theorem::EvenEven } else { Theorem::EvenOdd };
    let (a, s1) = check_q_index(m).map_err(|_| mismatch(theorem, m, n))?;
    if alphas.iter().any(|x| x.is_zero()) {
        return Err(CertifyError::InvalidSpec("alpha0, alpha1, alpha2 must be nonzero"));
    }
    let a1 = alphas[1]
        .as_gaussian()
        .ok_or_else(|| CertifyError::Unsupported(format!("alpha1 = {} must be a Gaussian rational", alphas[1])))?;
    let beta = beta_ratio(&alphas[0], &alphas[2])?;
    let conditions = check_conditions(theorem, m, n, &beta, src)?;
    if !conditions.applies() {
        return Err(CertifyError::PreconditionNotVerified(theorem.name()));
    }

    let a0 = alphas[0].as_gaussian().expect("checked by beta_ratio");
    let c0 = -(a0.div(a1).expect("nonzero"));
    let c1 = Quad::of(&alphas[2]).div_gauss(a1).expect("nonzero");
    let c1 = Quad { g: -c1.g, u: c1.u };
    let eta = Quad::of(&alphas[2]).inv().expect("nonzero").div_gauss(a0).expect("nonzero");
    let eta = Quad { g: -eta.g, u: eta.u };
    let inner = &c0 + &c1.mul(&eta);
    let eta4 = eta.fourth_power();

    let qm = src.poly(PolyKind::Q, m)?;
    let x4 = inner.pow(4);
    let dm = qm.deg_y().unwrap_or(0);
    let h_eta = GaussPoly1::new((0..=dm).map(|j| qm.y_coeff(j).eval_gauss(&x4)).collect());
    let big_d = (1u64 << a) * psi(s1);
    let c = qm.meta.c_n.clone().unwrap_or_else(BigInt::one);
    let mut hc = vec![GaussRat::zero(); big_d as usize + 1];
    hc[big_d as usize] = GaussRat::from_int(num_traits::pow(c, 1usize << a));
    let h_expected = GaussPoly1::new(hc);

    let (g_coeffs, section_name) = if n.is_multiple_of(2) {
        let qn = src.poly(PolyKind::Q, n)?;
        let dn = qn.deg_y().unwrap_or(0);
        let g: Vec<GaussRat> = (0..=dn).map(|j| qn.y_coeff(j).eval_gauss(&eta4)).collect();
        (g, format!("R_{{{},0}}(eta^4)", n))
    } else {
        let pn = src.poly(PolyKind::P, n)?;
        let dn = pn.deg_y().unwrap_or(0);
        let x = &GaussRat::from_int(n * n) * &eta4;
        let g: Vec<GaussRat> = (0..=dn)
            .map(|j| {
                let s = GaussRat::from_int(num_traits::pow(BigInt::from(16), j as usize));
                &pn.y_coeff(j).eval_gauss(&x) * &s
            })
            .collect();
        (g, format!("S_{{{},0}}(n^2 eta^4)", n))
    };
    let section = g_coeffs[0].clone();
    let mut f = h_eta.coeffs().to_vec();
    f.resize(dm as usize + 1, GaussRat::zero());
    let w_eta = det(sylvester(&f, &g_coeffs));

    Ok(ProofStepReport {
        theorem,
        conditions,
        beta: beta.to_string(),
        eta4,
        inner,
        h_eta,
        h_expected,
        section_name,
        section,
        w_eta,
    })
}
