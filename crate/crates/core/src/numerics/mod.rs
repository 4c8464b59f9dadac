//! Complex ball arithmetic with rigorous enclosures.

mod ball;
pub mod decimal;
mod dyadic;
mod elementary;

pub use ball::{BallComplex, MIN_PREC};
pub use dyadic::{Dyadic, Rounding, MAG_BITS};
pub use elementary::{exp, exp_i_pi, kth_root_principal, pi, sqrt_int};

pub(crate) use dyadic::mag;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericsError {
    #[error("divisor ball contains zero")]
    DivisorContainsZero,
    #[error("ball crosses the branch cut of the principal root")]
    BallStraddlesBranchCut,
    #[error("root of a ball that contains zero")]
    RootOfBallContainingZero,
    #[error("invalid decimal literal {0:?}")]
    InvalidDecimal(String),
}
