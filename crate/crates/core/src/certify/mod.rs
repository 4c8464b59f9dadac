//! Non-vanishing certificates for linear forms in theta constants, theorem
//! hypothesis checks and proof-step verification.

mod conditions;
mod indep;
mod suite;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::elimination::EliminationError;
use crate::modpoly::ModpolyError;
use crate::numerics::decimal::{lower_sci, upper_sci};
use crate::numerics::{kth_root_principal, BallComplex, NumericsError};
use crate::numthy::AlgebraicLite;
use crate::thetafun::{theta_eval, TauValue, ThetaError, ThetaKind};

pub use conditions::{
    beta_ratio, check_conditions, proof_step_w_eta, ConditionCheck, ConditionReport, ProofStepReport,
    Status, Theorem,
};
pub use indep::{formal_independence, Independence};
pub use suite::{identity_suite, run_item, ItemReport, SuiteItem, SuiteReport, Verdict as ItemVerdict, ITEMS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("invalid linear form: {0}")]
    InvalidSpec(&'static str),
    #[error("(m, n) = ({m}, {n}) does not fit the shape of {theorem}")]
    ShapeMismatch { theorem: &'static str, m: u64, n: u64 },
    #[error("precondition not verified: no hypothesis of {0} holds")]
    PreconditionNotVerified(&'static str),
    #[error("coefficient not supported here: {0}")]
    Unsupported(String),
    #[error("multipliers are not distinct")]
    DuplicateMultipliers,
    #[error("multipliers must be positive")]
    NonPositiveMultiplier,
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Modpoly(#[from] ModpolyError),
    #[error(transparent)]
    Elimination(#[from] EliminationError),
}

/// A coefficient of a linear form.
#[derive(Clone, Debug)]
pub enum Coef {
    Exact(AlgebraicLite),
    /// Enclosure, used at whatever precision it carries.
    Ball(BallComplex),
}

impl Coef {
    pub fn int(n: i64) -> Self {
        Coef::Exact(AlgebraicLite::int(n))
    }

    pub fn to_ball(&self, prec: u32) -> BallComplex {
        match self {
            Coef::Exact(a) => a.to_ball(prec),
            Coef::Ball(b) => b.with_prec(prec),
        }
    }

    fn is_exact_zero(&self) -> bool {
        match self {
            Coef::Exact(a) => a.is_zero(),
            Coef::Ball(b) => b.is_exact_zero(),
        }
    }
}

impl From<AlgebraicLite> for Coef {
    fn from(a: AlgebraicLite) -> Self {
        Coef::Exact(a)
    }
}

/// `sum_k c_k theta3(a_k tau)`.
#[derive(Clone, Debug)]
pub struct LinearFormSpec {
    pub tau: TauValue,
    pub terms: Vec<(Coef, u64)>,
}

impl LinearFormSpec {
    pub fn new(tau: TauValue, terms: Vec<(Coef, u64)>) -> Result<Self, CertifyError> {
        if terms.is_empty() {
            return Err(CertifyError::InvalidSpec("no terms"));
        }
        let mut ms: Vec<u64> = terms.iter().map(|t| t.1).collect();
        if ms.contains(&0) {
            return Err(CertifyError::NonPositiveMultiplier);
        }
        ms.sort_unstable();
        ms.dedup();
        if ms.len() != terms.len() {
            return Err(CertifyError::DuplicateMultipliers);
        }
        Ok(LinearFormSpec { tau, terms })
    }

    /// `a0 theta3(tau) + a1 theta3(m tau) + a2 theta3(n tau)`.
    pub fn three_term(tau: TauValue, m: u64, n: u64, alphas: [Coef; 3]) -> Result<Self, CertifyError> {
        let [a0, a1, a2] = alphas;
        Self::new(tau, vec![(a0, 1), (a1, m), (a2, n)])
    }

    pub fn all_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_exact_zero())
    }
}

/// Principal square root of a ball.
pub fn sqrt_ball(x: &BallComplex) -> Result<BallComplex, CertifyError> {
    Ok(kth_root_principal(x, 2)?)
}

/// `sqrt(2 + sqrt 2) theta3(tau) - 2 theta3(2 tau)` at `tau = i`.
pub fn ramanujan_spec(prec: u32) -> LinearFormSpec {
    let wp = prec + 32;
    let s2 = sqrt_ball(&BallComplex::from_int(2, wp)).expect("positive");
    let c = sqrt_ball(&BallComplex::from_int(2, wp).add(&s2)).expect("positive");
    LinearFormSpec::new(TauValue::i(), vec![(Coef::Ball(c), 1), (Coef::int(-2), 2)]).expect("valid")
}

pub fn eval_linear_form(spec: &LinearFormSpec, prec: u32) -> Result<BallComplex, CertifyError> {
    let wp = prec + 16;
    let mut acc = BallComplex::zero(wp);
    for (c, a) in &spec.terms {
        if c.is_exact_zero() {
            continue;
        }
        let t = theta_eval(ThetaKind::Theta3, *a, &spec.tau, wp)?;
        acc = acc.add(&c.to_ball(wp).mul(&t));
    }
    Ok(acc.with_prec(prec))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedNonzero,
    ResidualBelowTol,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedNonzero => "CertifiedNonzero",
            Verdict::ResidualBelowTol => "ResidualBelowTol",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub condition: String,
    pub citation: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub prec_used: u32,
    /// Lower bound of `|L|` for `CertifiedNonzero`, upper bound otherwise.
    pub bound: String,
    pub trace: Vec<TraceEntry>,
}

pub const DEFAULT_SCHEDULE: [u32; 4] = [128, 256, 512, 1024];

/// `10^-40`.
pub fn default_tol() -> BigRational {
    BigRational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(10), 40))
}

const BOUND_DIGITS: usize = 20;

/// Tries each precision in turn until the ball excludes zero; at the last
/// precision a ball below `tol` gives `ResidualBelowTol`.
pub fn certify_nonvanishing(
    spec: &LinearFormSpec,
    schedule: &[u32],
    tol: &BigRational,
) -> Result<Certificate, CertifyError> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CertifyError::InvalidSpec("schedule must be nonempty and ascending"));
    }
    let mut trace = Vec::new();
    let mut last = None;
    for &prec in schedule {
        let v = eval_linear_form(spec, prec)?;
        if v.certify_nonzero() {
            trace.push(TraceEntry {
                condition: format!("ball at {} bits excludes 0", prec),
                citation: String::from("ball enclosure"),
                status: Status::Holds,
            });
            return Ok(Certificate {
                verdict: Verdict::CertifiedNonzero,
                prec_used: prec,
                bound: lower_sci(&v.abs_lower(), BOUND_DIGITS),
                trace,
            });
        }
        trace.push(TraceEntry {
            condition: format!("ball at {} bits excludes 0", prec),
            citation: String::from("ball enclosure"),
            status: Status::Fails,
        });
        last = Some((prec, v));
    }
    let (prec, v) = last.expect("nonempty schedule");
    let below = v.certify_below(tol);
    trace.push(TraceEntry {
        condition: format!("|L| below tolerance at {} bits", prec),
        citation: String::from("ball enclosure"),
        status: if below { Status::Holds } else { Status::Fails },
    });
    Ok(Certificate {
        verdict: if below {
            Verdict::ResidualBelowTol
        } else {
            Verdict::Inconclusive
        },
        prec_used: prec,
        bound: upper_sci(&v.abs_upper(), BOUND_DIGITS),
        trace,
    })
}

/// Non-vanishing of `a theta3(2^m tau) + b theta3(2^(m+1) tau) + c theta3(2^(m+2) tau)`.
pub fn prop1_check(m: u32, tau: TauValue, alphas: [Coef; 3], prec: u32) -> Result<Certificate, CertifyError> {
    if alphas.iter().all(|a| a.is_exact_zero()) {
        return Err(CertifyError::InvalidSpec("all coefficients are zero"));
    }
    let base = 1u64 << m;
    let [a, b, c] = alphas;
    let spec = LinearFormSpec::new(tau, vec![(a, base), (b, 2 * base), (c, 4 * base)])?;
    let mut schedule: Vec<u32> = DEFAULT_SCHEDULE.iter().copied().filter(|&p| p < prec).collect();
    schedule.push(prec);
    certify_nonvanishing(&spec, &schedule, &default_tol())
}

#[cfg(test)]
mod tests;
