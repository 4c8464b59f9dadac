//! JSON views of balls, certificates and reports. Every number that is not a
//! count is a decimal string.

use jtheta_core::certify::{
    Certificate, ConditionReport, Independence, ProofStepReport, SuiteReport,
};
use jtheta_core::elimination::GaussPoly1;
use jtheta_core::gauss::GaussRat;
use jtheta_core::numerics::decimal::{ball_from_decimal, ball_to_decimal};
use jtheta_core::numerics::{BallComplex, NumericsError};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub re: String,
    pub im: String,
    pub rad: String,
    pub prec: u32,
}

impl BallJson {
    pub fn from_ball(b: &BallComplex) -> Self {
        let (re, im, rad) = ball_to_decimal(b);
        BallJson {
            re,
            im,
            rad,
            prec: b.prec(),
        }
    }

    pub fn to_ball(&self) -> Result<BallComplex, NumericsError> {
        ball_from_decimal(&self.re, &self.im, &self.rad, self.prec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub condition: String,
    pub citation: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: String,
    pub prec_used: u32,
    pub bound: String,
    pub trace: Vec<TraceJson>,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            verdict: c.verdict.as_str().to_string(),
            prec_used: c.prec_used,
            bound: c.bound.clone(),
            trace: c
                .trace
                .iter()
                .map(|t| TraceJson {
                    condition: t.condition.clone(),
                    citation: t.citation.clone(),
                    status: t.status.as_str().to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub condition: String,
    pub citation: String,
    pub status: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReportJson {
    pub theorem: String,
    pub m: u64,
    pub n: u64,
    pub beta: String,
    pub applies: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&ConditionReport> for ConditionReportJson {
    fn from(r: &ConditionReport) -> Self {
        ConditionReportJson {
            theorem: r.theorem.name().to_string(),
            m: r.m,
            n: r.n,
            beta: r.beta.clone(),
            applies: r.applies(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    condition: c.condition.clone(),
                    citation: c.citation.clone(),
                    status: c.status.as_str().to_string(),
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemJson {
    pub item: String,
    pub label: String,
    pub tau: String,
    pub verdict: String,
    pub residual_upper: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteJson {
    pub prec: u32,
    pub tol: String,
    pub all_pass: bool,
    pub items: Vec<ItemJson>,
}

impl SuiteJson {
    pub fn new(r: &SuiteReport, tol: &str) -> Self {
        SuiteJson {
            prec: r.prec,
            tol: tol.to_string(),
            all_pass: r.all_pass(),
            items: r
                .items
                .iter()
                .map(|i| ItemJson {
                    item: i.item.name().to_string(),
                    label: i.label.clone(),
                    tau: i.tau.clone(),
                    verdict: i.verdict.as_str().to_string(),
                    residual_upper: i.residual_upper.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceJson {
    pub verdict: String,
    pub rank: usize,
    pub scaled: Vec<u64>,
    pub denominator: u64,
    pub exponents: Vec<u64>,
}

impl From<&Independence> for IndependenceJson {
    fn from(r: &Independence) -> Self {
        IndependenceJson {
            verdict: r.verdict().to_string(),
            rank: r.rank,
            scaled: r.scaled.clone(),
            denominator: r.denominator,
            exponents: r.exponents.clone(),
        }
    }
}

/// Coefficients lowest degree first.
#[derive(Clone, Debug, Serialize)]
pub struct PolyJson {
    pub degree: Option<usize>,
    pub coeffs: Vec<String>,
}

impl From<&GaussPoly1> for PolyJson {
    fn from(p: &GaussPoly1) -> Self {
        PolyJson {
            degree: p.degree(),
            coeffs: p.coeffs().iter().map(gauss).collect(),
        }
    }
}

pub fn gauss(g: &GaussRat) -> String {
    g.to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofStepJson {
    pub theorem: String,
    pub beta: String,
    pub eta4: String,
    pub inner: String,
    pub h_eta: PolyJson,
    pub h_expected: PolyJson,
    pub h_matches: bool,
    pub h_only_root_zero: bool,
    pub section_name: String,
    pub section: String,
    pub w_eta: String,
    pub all_nonzero: bool,
    pub conditions: ConditionReportJson,
}

impl From<&ProofStepReport> for ProofStepJson {
    fn from(r: &ProofStepReport) -> Self {
        ProofStepJson {
            theorem: r.theorem.name().to_string(),
            beta: r.beta.clone(),
            eta4: gauss(&r.eta4),
            inner: gauss(&r.inner),
            h_eta: (&r.h_eta).into(),
            h_expected: (&r.h_expected).into(),
            h_matches: r.h_matches(),
            h_only_root_zero: r.h_only_root_zero(),
            section_name: r.section_name.clone(),
            section: gauss(&r.section),
            w_eta: gauss(&r.w_eta),
            all_nonzero: r.all_nonzero(),
            conditions: (&r.conditions).into(),
        }
    }
}
