//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 inconclusive, 3 usage or
//! input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use jtheta_core::certify::{
    self, certify_nonvanishing, check_conditions, formal_independence, identity_suite, proof_step_w_eta,
    run_item, CertifyError, LinearFormSpec, SuiteItem, SuiteReport, Theorem, Verdict,
};
use jtheta_core::elimination::{build_r, build_w, EliminationError};
use jtheta_core::gauss::GaussRat;
use jtheta_core::modpoly::{validate_full, FitOptions, FitStrategy, ModpolyError, PolyKind, PolySource};
use jtheta_core::numerics::decimal::parse_decimal;
use jtheta_core::numthy::AlgebraicLite;
use jtheta_core::thetafun::{theta_eval, TauValue, ThetaError, ThetaKind};
use num_rational::BigRational;
use serde::Serialize;

use crate::cache::Cache;
use crate::json::{
    BallJson, CertificateJson, ConditionReportJson, IndependenceJson, PolyJson, ProofStepJson, SuiteJson,
};
use crate::polyfile::{self, PolyFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "jtheta", version, about = "Theta constants, modular polynomials and linear-form certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Ball enclosure of theta_kind(mult * tau).
    Theta {
        #[arg(long, default_value_t = 3)]
        kind: u32,
        #[arg(long, default_value_t = 1)]
        mult: u64,
        #[arg(long)]
        tau: String,
        #[arg(long, default_value_t = 256)]
        prec: u32,
    },
    /// Fit (or load from the cache) P_n or Q_n and write it as JSON.
    Modpoly {
        kind: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        margin: usize,
        /// Use fraction-free elimination over the integers.
        #[arg(long)]
        exact: bool,
    },
    /// Run the identity suite or one named item.
    Verify {
        target: String,
        #[arg(long, default_value_t = 256)]
        prec: u32,
        #[arg(long, default_value = "1e-40")]
        tol: String,
        #[arg(long)]
        tau: Option<String>,
    },
    /// Certificate for alpha0 theta3(tau) + alpha1 theta3(m tau) + alpha2 theta3(n tau).
    Certify {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alphas: String,
        #[arg(long, default_value = "i")]
        tau: String,
        #[arg(long, default_value = "128,256,512,1024")]
        schedule: String,
        #[arg(long, default_value = "1e-40")]
        tol: String,
        #[arg(long, value_enum, default_value_t = Expect::Nonzero)]
        expect: Expect,
    },
    /// Hypothesis report of a three-term theorem for beta.
    Conditions {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        beta: String,
    },
    /// Formal independence of theta3(a_i tau) as power series.
    Indep {
        #[arg(long)]
        multipliers: String,
        #[arg(long)]
        order: u64,
    },
    /// Eliminating resultant W (even m) or R (odd m, n), or only W(eta).
    Resultant {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        eta_only: bool,
    },
}

/// Verdict that counts as success for `certify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Nonzero,
    Below,
    Any,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Fail(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Fail(_) => EXIT_FAIL,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<ThetaError> for CliError {
    fn from(e: ThetaError) -> Self {
        match e {
            ThetaError::LambdaDegenerate | ThetaError::Numerics(_) => CliError::Fail(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<ModpolyError> for CliError {
    fn from(e: ModpolyError) -> Self {
        match e {
            ModpolyError::InvalidIndex { .. } | ModpolyError::OddPartTooSmall { .. } => usage(e),
            _ => CliError::Fail(e.to_string()),
        }
    }
}

impl From<EliminationError> for CliError {
    fn from(e: EliminationError) -> Self {
        match e {
            EliminationError::Modpoly(m) => m.into(),
            EliminationError::ZeroPolynomial => CliError::Fail(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Theta(t) => t.into(),
            CertifyError::Modpoly(m) => m.into(),
            CertifyError::Elimination(x) => x.into(),
            CertifyError::PreconditionNotVerified(_) | CertifyError::Numerics(_) => CliError::Fail(e.to_string()),
            _ => usage(e),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. JSON goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.code()
        }
    }
}

fn emit<S: Serialize>(out: &mut dyn Write, v: &S) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Fail(e.to_string()))?;
    writeln!(out, "{}", s).map_err(|e| CliError::Fail(e.to_string()))
}

fn parse_tau(s: &str) -> Result<TauValue, CliError> {
    Ok(TauValue::parse(s)?)
}

fn parse_tol(s: &str) -> Result<BigRational, CliError> {
    let t = parse_decimal(s).map_err(usage)?;
    if t <= BigRational::from_integer(0.into()) {
        return Err(usage("tolerance must be positive"));
    }
    Ok(t)
}

fn parse_alg(s: &str) -> Result<AlgebraicLite, CliError> {
    AlgebraicLite::parse(s.trim()).map_err(usage)
}

fn parse_alphas(s: &str) -> Result<[AlgebraicLite; 3], CliError> {
    let v: Vec<AlgebraicLite> = s.split(',').map(parse_alg).collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| usage("--alphas takes exactly three comma-separated values"))
}

fn gaussian_alphas(a: &[AlgebraicLite; 3]) -> Result<[GaussRat; 3], CliError> {
    let g = |x: &AlgebraicLite| {
        x.as_gaussian()
            .cloned()
            .ok_or_else(|| usage(format!("{} is not a Gaussian rational", x)))
    };
    Ok([g(&a[0])?, g(&a[1])?, g(&a[2])?])
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a = parse_decimal(a).map_err(usage)?;
            let b = parse_decimal(b).map_err(usage)?;
            if b == BigRational::from_integer(0.into()) {
                return Err(usage("zero denominator"));
            }
            Ok(a / b)
        }
        None => parse_decimal(s).map_err(usage),
    }
}

fn suite_code(r: &SuiteReport) -> i32 {
    if r.any_fail() {
        EXIT_FAIL
    } else if r.all_pass() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Cmd::Theta { kind, mult, tau, prec } => {
            let k = ThetaKind::from_index(kind).ok_or_else(|| usage("--kind must be 1, 2, 3 or 4"))?;
            if mult == 0 {
                return Err(usage("--mult must be positive"));
            }
            let b = theta_eval(k, mult, &parse_tau(&tau)?, prec)?;
            emit(out, &BallJson::from_ball(&b))?;
            Ok(EXIT_OK)
        }
        Cmd::Modpoly {
            kind,
            n,
            out: path,
            margin,
            exact,
        } => {
            let kind = match polyfile::parse_kind(&kind) {
                Some(k @ (PolyKind::P | PolyKind::Q)) => k,
                _ => return Err(usage("kind must be P or Q")),
            };
            let opts = FitOptions {
                margin,
                strategy: if exact {
                    FitStrategy::ExactBareiss
                } else {
                    FitStrategy::Modular
                },
            };
            let mut cache = Cache::from_env(opts);
            let p = cache.poly(kind, n)?;
            validate_full(&p)?;
            for e in &cache.events {
                let _ = writeln!(err, "cache: {:?}", e);
            }
            match path {
                Some(path) => {
                    polyfile::save_atomic(&p, &path).map_err(|e| CliError::Fail(e.to_string()))?;
                    let _ = writeln!(err, "wrote {}", path.display());
                }
                None => emit(out, &PolyFile::from_poly(&p))?,
            }
            Ok(EXIT_OK)
        }
        Cmd::Verify { target, prec, tol, tau } => {
            let tolq = parse_tol(&tol)?;
            let tau = tau.as_deref().map(parse_tau).transpose()?;
            let report = if target == "suite" {
                if tau.is_some() {
                    return Err(usage("--tau applies to a single item"));
                }
                identity_suite(prec, &tolq)?
            } else {
                let item = SuiteItem::from_name(&target).ok_or_else(|| {
                    usage(format!("unknown item {:?}; use suite or one of {}", target, item_names()))
                })?;
                SuiteReport {
                    prec,
                    items: run_item(item, prec, &tolq, tau.as_ref())?,
                }
            };
            emit(out, &SuiteJson::new(&report, &tol))?;
            Ok(suite_code(&report))
        }
        Cmd::Certify {
            m,
            n,
            alphas,
            tau,
            schedule,
            tol,
            expect,
        } => {
            let a = parse_alphas(&alphas)?;
            let schedule: Vec<u32> = schedule
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(usage))
                .collect::<Result<_, _>>()?;
            let [a0, a1, a2] = a;
            let spec = LinearFormSpec::three_term(parse_tau(&tau)?, m, n, [a0.into(), a1.into(), a2.into()])?;
            if spec.all_zero() {
                return Err(usage("all coefficients are zero"));
            }
            let c = certify_nonvanishing(&spec, &schedule, &parse_tol(&tol)?)?;
            emit(out, &CertificateJson::from(&c))?;
            Ok(match (c.verdict, expect) {
                (Verdict::Inconclusive, _) => EXIT_INCONCLUSIVE,
                (_, Expect::Any) => EXIT_OK,
                (Verdict::CertifiedNonzero, Expect::Nonzero) | (Verdict::ResidualBelowTol, Expect::Below) => EXIT_OK,
                _ => EXIT_FAIL,
            })
        }
        Cmd::Conditions { theorem, m, n, beta } => {
            let t = Theorem::parse(&theorem)
                .ok_or_else(|| usage(format!("unknown theorem {:?}; use even-even, coprime-even-even or even-odd", theorem)))?;
            let mut cache = Cache::from_env(FitOptions::default());
            let r = check_conditions(t, m, n, &parse_alg(&beta)?, &mut cache)?;
            emit(out, &ConditionReportJson::from(&r))?;
            let undecided = r.checks.iter().any(|c| c.status == certify::Status::Undecided);
            Ok(if r.applies() {
                EXIT_OK
            } else if undecided {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_FAIL
            })
        }
        Cmd::Indep { multipliers, order } => {
            let a: Vec<BigRational> = multipliers
                .split(',')
                .map(parse_rational)
                .collect::<Result<_, _>>()?;
            let r = formal_independence(&a, order)?;
            emit(out, &IndependenceJson::from(&r))?;
            Ok(if r.independent { EXIT_OK } else { EXIT_INCONCLUSIVE })
        }
        Cmd::Resultant { m, n, alphas, eta_only } => {
            let a = parse_alphas(&alphas)?;
            let mut cache = Cache::from_env(FitOptions::default());
            if eta_only {
                let r = proof_step_w_eta(m, n, &a, &mut cache)?;
                emit(out, &ProofStepJson::from(&r))?;
                return Ok(if r.all_nonzero() { EXIT_OK } else { EXIT_FAIL });
            }
            let g = gaussian_alphas(&a)?;
            let (name, poly) = if m % 2 == 0 {
                ("W", build_w(m, n, &g, &mut cache)?)
            } else {
                ("R", build_r(m, n, &g, &mut cache)?)
            };
            #[derive(Serialize)]
            struct Out {
                resultant: &'static str,
                m: u64,
                n: u64,
                poly: PolyJson,
            }
            emit(
                out,
                &Out {
                    resultant: name,
                    m,
                    n,
                    poly: (&poly).into(),
                },
            )?;
            Ok(if poly.is_zero() { EXIT_FAIL } else { EXIT_OK })
        }
    }
}

fn item_names() -> String {
    certify::ITEMS.iter().map(|i| i.name()).collect::<Vec<_>>().join(", ")
}
