//! Named theta identities checked to a tolerance.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::CertifyError;
use crate::numerics::decimal::upper_sci;
use crate::numerics::{kth_root_principal, BallComplex};
use crate::thetafun::{j_eval, theta_eval, TauValue, ThetaKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteItem {
    Jacobi,
    Duplication,
    RamanujanTheta3,
    RamanujanTheta2,
    RamanujanTheta4,
    CmTheta2,
    Octic,
    J1728,
}

pub const ITEMS: [SuiteItem; 8] = [
    SuiteItem::Jacobi,
    SuiteItem::Duplication,
    SuiteItem::RamanujanTheta3,
    SuiteItem::RamanujanTheta2,
    SuiteItem::RamanujanTheta4,
    SuiteItem::CmTheta2,
    SuiteItem::Octic,
    SuiteItem::J1728,
];

impl SuiteItem {
    pub fn name(self) -> &'static str {
        match self {
            SuiteItem::Jacobi => "jacobi",
            SuiteItem::Duplication => "duplication",
            SuiteItem::RamanujanTheta3 => "ramanujan-theta3",
            SuiteItem::RamanujanTheta2 => "ramanujan-theta2",
            SuiteItem::RamanujanTheta4 => "ramanujan-theta4",
            SuiteItem::CmTheta2 => "cm-theta2",
            SuiteItem::Octic => "octic",
            SuiteItem::J1728 => "j-1728",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        ITEMS.iter().copied().find(|i| i.name() == s)
    }

    /// Whether the identity holds for every `tau`, so that a `tau` override
    /// makes sense.
    pub fn is_universal(self) -> bool {
        matches!(self, SuiteItem::Jacobi | SuiteItem::Duplication | SuiteItem::Octic)
    }

    fn default_taus(self) -> Vec<TauValue> {
        match self {
            SuiteItem::Jacobi | SuiteItem::Duplication => {
                vec![TauValue::i(), TauValue::imag(1, 2), tau("1/3+i")]
            }
            SuiteItem::Octic => vec![TauValue::imag(1, 2), TauValue::i(), TauValue::imag(2, 3)],
            SuiteItem::CmTheta2 => vec![tau("1+sqrt(3)*i")],
            _ => vec![TauValue::i()],
        }
    }
}

fn tau(s: &str) -> TauValue {
    TauValue::parse(s).expect("valid constant")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemReport {
    pub item: SuiteItem,
    /// Which identity of the item, e.g. the two duplication formulas.
    pub label: String,
    pub tau: String,
    pub verdict: Verdict,
    /// Upper bound of the residual, or of `|j - 1728|` for the `j` item.
    pub residual_upper: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub prec: u32,
    pub items: Vec<ItemReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.verdict == Verdict::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.items.iter().any(|i| i.verdict == Verdict::Fail)
    }
}

pub fn identity_suite(prec: u32, tol: &BigRational) -> Result<SuiteReport, CertifyError> {
    let mut items = Vec::new();
    for item in ITEMS {
        items.extend(run_item(item, prec, tol, None)?);
    }
    Ok(SuiteReport { prec, items })
}

/// One item at its default sample points, or at `tau` for the universal
/// identities.
pub fn run_item(
    item: SuiteItem,
    prec: u32,
    tol: &BigRational,
    tau: Option<&TauValue>,
) -> Result<Vec<ItemReport>, CertifyError> {
    let taus = match tau {
        Some(t) if item.is_universal() => vec![t.clone()],
        Some(_) => return Err(CertifyError::InvalidSpec("this identity holds at a fixed tau only")),
        None => item.default_taus(),
    };
    let mut out = Vec::new();
    for t in &taus {
        for (label, r) in residuals(item, t, prec)? {
            let verdict = if item == SuiteItem::J1728 {
                if r.contains_rational(&BigRational::from_integer(0.into())) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            } else if r.certify_below(tol) {
                Verdict::Pass
            } else if r.certify_nonzero() && !r.abs_lower().to_rational().lt(tol) {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            out.push(ItemReport {
                item,
                label: label.to_string(),
                tau: t.to_string(),
                verdict,
                residual_upper: upper_sci(&r.abs_upper(), 6),
            });
        }
    }
    Ok(out)
}

fn th(kind: ThetaKind, a: u64, tau: &TauValue, wp: u32) -> Result<BallComplex, CertifyError> {
    Ok(theta_eval(kind, a, tau, wp)?)
}

fn root(n: &BallComplex, k: u32) -> BallComplex {
    kth_root_principal(n, k).expect("root of a positive constant")
}

fn int(n: i64, wp: u32) -> BallComplex {
    BallComplex::from_int(n, wp)
}

fn residuals(item: SuiteItem, tau: &TauValue, prec: u32) -> Result<Vec<(&'static str, BallComplex)>, CertifyError> {
    use ThetaKind::{Theta2, Theta3, Theta4};
    let wp = prec + 32;
    let r = match item {
        SuiteItem::Jacobi => {
            let t2 = th(Theta2, 1, tau, wp)?.pow_u(4);
            let t3 = th(Theta3, 1, tau, wp)?.pow_u(4);
            let t4 = th(Theta4, 1, tau, wp)?.pow_u(4);
            vec![("theta2^4 + theta4^4 - theta3^4", t2.add(&t4).sub(&t3))]
        }
        SuiteItem::Duplication => {
            let t3 = th(Theta3, 1, tau, wp)?;
            let t4 = th(Theta4, 1, tau, wp)?;
            let d2 = th(Theta3, 2, tau, wp)?;
            let d4 = th(Theta3, 4, tau, wp)?;
            vec![
                (
                    "2 theta3(2tau)^2 - theta3^2 - theta4^2",
                    d2.sqr().mul_int(2).sub(&t3.sqr()).sub(&t4.sqr()),
                ),
                ("2 theta3(4tau) - theta3 - theta4", d4.mul_int(2).sub(&t3).sub(&t4)),
            ]
        }
        SuiteItem::RamanujanTheta3 => {
            let c = root(&int(2, wp).add(&root(&int(2, wp), 2)), 2);
            let v = c.mul(&th(Theta3, 1, tau, wp)?).sub(&th(Theta3, 2, tau, wp)?.mul_int(2));
            vec![("sqrt(2+sqrt2) theta3(i) - 2 theta3(2i)", v)]
        }
        SuiteItem::RamanujanTheta2 => {
            let c = root(&int(2, wp).sub(&root(&int(2, wp), 2)), 2);
            let d = root(&int(8, wp), 4);
            let v = c.mul(&th(Theta2, 1, tau, wp)?).sub(&d.mul(&th(Theta2, 2, tau, wp)?));
            vec![("sqrt(2-sqrt2) theta2(i) - 8^(1/4) theta2(2i)", v)]
        }
        SuiteItem::RamanujanTheta4 => {
            let c = root(&int(2, wp), 8);
            let v = c.mul(&th(Theta4, 1, tau, wp)?).sub(&th(Theta4, 2, tau, wp)?);
            vec![("2^(1/8) theta4(i) - theta4(2i)", v)]
        }
        SuiteItem::CmTheta2 => {
            let inner = int(28, wp).sub(&root(&int(3, wp), 2).mul_int(16));
            let c = root(&inner, 4).mul(&BallComplex::one(wp).add(&BallComplex::i(wp)));
            let v = th(Theta2, 1, tau, wp)?.mul_int(2).sub(&c.mul(&th(Theta3, 1, tau, wp)?));
            vec![("2 theta2 - (1+i) (28-16sqrt3)^(1/4) theta3", v)]
        }
        SuiteItem::Octic => vec![("octic in theta3(3tau), theta3(2tau), theta3(tau)", octic_residual(tau, wp, false)?)],
        SuiteItem::J1728 => vec![("j(i) - 1728", j_eval(tau, wp)?.sub(&int(1728, wp)))],
    };
    Ok(r.into_iter().map(|(l, b)| (l, b.with_prec(prec))).collect())
}

/// The degree-8 relation between `X = theta3(3tau)`, `Y = theta3(2tau)`,
/// `Z = theta3(tau)`. `printed` swaps `X^4 Z^4` for `X^4 Y^4`, the form that
/// does not vanish.
pub fn octic_residual(tau: &TauValue, prec: u32, printed: bool) -> Result<BallComplex, CertifyError> {
    let wp = prec + 16;
    let x = th(ThetaKind::Theta3, 3, tau, wp)?;
    let y = th(ThetaKind::Theta3, 2, tau, wp)?;
    let z = th(ThetaKind::Theta3, 1, tau, wp)?;
    let (x2, y2, z2) = (x.sqr(), y.sqr(), z.sqr());
    let (x4, y4, z4) = (x2.sqr(), y2.sqr(), z2.sqr());
    let mid = if printed { &y4 } else { &z4 };
    let v = x4
        .sqr()
        .mul_int(27)
        .sub(&x4.mul(mid).mul_int(18))
        .sub(&x2.mul(&y4).mul(&z2).mul_int(64))
        .add(&x2.mul(&y2).mul(&z4).mul_int(64))
        .sub(&x2.mul(&z4).mul(&z2).mul_int(8))
        .sub(&z4.sqr());
    Ok(v.with_prec(prec))
}
