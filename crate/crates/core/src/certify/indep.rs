//! Linear independence of `theta3(a_i tau)` as formal power series.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::CertifyError;
use crate::linalg::rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    pub rank: usize,
    /// Multipliers times `denominator`; series are in `q^(1/denominator)`.
    pub scaled: Vec<u64>,
    pub denominator: u64,
    pub exponents: Vec<u64>,
}

impl Independence {
    pub fn verdict(&self) -> &'static str {
        if self.independent {
            "Independent"
        } else {
            "UndeterminedAtThisOrder"
        }
    }
}

/// Rank of the coefficient rows of `theta3(a_i tau)` over the exponents
/// `{0} ∪ {a_i k^2 < order}`, after scaling the `a_i` to integers.
pub fn formal_independence(multipliers: &[BigRational], order: u64) -> Result<Independence, CertifyError> {
    if multipliers.is_empty() {
        return Err(CertifyError::InvalidSpec("no multipliers"));
    }
    if multipliers.iter().any(|a| !a.is_positive()) {
        return Err(CertifyError::NonPositiveMultiplier);
    }
    let distinct: BTreeSet<&BigRational> = multipliers.iter().collect();
    if distinct.len() != multipliers.len() {
        return Err(CertifyError::DuplicateMultipliers);
    }
    let den = multipliers.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
    let scaled = multipliers
        .iter()
        .map(|a| (a.numer() * (&den / a.denom())).to_u64())
        .collect::<Option<Vec<u64>>>()
        .ok_or(CertifyError::InvalidSpec("multiplier too large"))?;
    let denominator = den.to_u64().ok_or(CertifyError::InvalidSpec("denominator too large"))?;

    let mut exps = BTreeSet::new();
    exps.insert(0u64);
    for &a in &scaled {
        let mut k = 1u64;
        while let Some(e) = k.checked_mul(k).and_then(|s| s.checked_mul(a)) {
            if e >= order {
                break;
            }
            exps.insert(e);
            k += 1;
        }
    }
    let exponents: Vec<u64> = exps.into_iter().collect();
    let rows: Vec<Vec<BigInt>> = scaled
        .iter()
        .map(|&a| exponents.iter().map(|&e| BigInt::from(coeff(a, e))).collect())
        .collect();
    let r = rank(rows);
    Ok(Independence {
        independent: r == scaled.len(),
        rank: r,
        scaled,
        denominator,
        exponents,
    })
}

/// Coefficient of `q^e` in `theta3(a tau) = 1 + 2 sum q^(a k^2)`.
fn coeff(a: u64, e: u64) -> i64 {
    if e == 0 {
        return 1;
    }
    if !e.is_multiple_of(a) {
        return 0;
    }
    let s = e / a;
    let k = s.sqrt();
    if k * k == s {
        2
    } else {
        0
    }
}
