//! Decimal text for dyadics and balls.

use alloc::string::String;
use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::BallComplex;
use super::dyadic::{mag, Dyadic};
use super::NumericsError;

/// Significant decimal digits that round-trip a `prec`-bit mantissa.
pub fn digits_for_prec(prec: u32) -> usize {
    (prec as f64 * core::f64::consts::LOG10_2) as usize + 3
}

fn pow10(e: i64) -> BigRational {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

enum Mode {
    Nearest,
    Up,
    Down,
}

/// Returns the integer `n` with `digits` digits and exponent `e` such that
/// `x ~ n * 10^(e - digits + 1)`.
fn scaled(x: &BigRational, digits: usize, mode: Mode) -> (BigInt, i64) {
    let approx = {
        let (n, d) = (Dyadic::from_int(x.numer().clone()), Dyadic::from_int(x.denom().clone()));
        (n.log2_approx() - d.log2_approx()) * core::f64::consts::LOG10_2
    };
    let mut e = libm::floor(approx) as i64;
    let lo = BigRational::from_integer(BigInt::from(10u32).pow(digits as u32 - 1));
    let hi = &lo * BigInt::from(10u32);
    let mut v = x.abs() * pow10(digits as i64 - 1 - e);
    while v >= hi {
        e += 1;
        v /= BigInt::from(10u32);
    }
    while v < lo {
        e -= 1;
        v *= BigInt::from(10u32);
    }
    let v = if x.is_negative() { -v } else { v };
    let mut n = match mode {
        Mode::Nearest => v.round().to_integer(),
        Mode::Up => v.ceil().to_integer(),
        Mode::Down => v.floor().to_integer(),
    };
    if n.abs() == *hi.numer() {
        n /= 10;
        e += 1;
    }
    (n, e)
}

fn render(n: &BigInt, e: i64) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_str_radix(10);
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e != 0 {
        out.push_str(&format!("e{}", e));
    }
    out
}

/// Nearest decimal with `digits` significant digits, and an upper bound on
/// the conversion error.
pub fn to_sci(x: &Dyadic, digits: usize) -> (String, Dyadic) {
    if x.is_zero() {
        return (String::from("0"), Dyadic::zero());
    }
    let q = x.to_rational();
    let (n, e) = scaled(&q, digits.max(1), Mode::Nearest);
    let back = BigRational::from_integer(n.clone()) * pow10(e - digits.max(1) as i64 + 1);
    let err = Dyadic::rational_upper(&(q - back), 40);
    (render(&n, e), err)
}

/// Decimal not smaller than `|x|`, with `digits` significant digits.
pub fn upper_sci(x: &Dyadic, digits: usize) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let (n, e) = scaled(&x.abs().to_rational(), digits.max(1), Mode::Up);
    render(&n, e)
}

/// Decimal not larger than `|x|`, with `digits` significant digits.
pub fn lower_sci(x: &Dyadic, digits: usize) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let (n, e) = scaled(&x.abs().to_rational(), digits.max(1), Mode::Down);
    render(&n, e)
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(s: &str) -> Result<BigRational, NumericsError> {
    let bad = || NumericsError::InvalidDecimal(String::from(s));
    let t = s.trim();
    let (neg, t) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(p) => (&t[..p], t[p + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int, frac) = match mant.find('.') {
        Some(p) => (&mant[..p], &mant[p + 1..]),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if exp.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let mut digits = String::from(int);
    digits.push_str(frac);
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let v = BigRational::from_integer(n) * pow10(exp - frac.len() as i64);
    Ok(if neg { -v } else { v })
}

/// Decimal triple `(re, im, rad)` whose ball contains `b`.
pub fn ball_to_decimal(b: &BallComplex) -> (String, String, String) {
    let digits = digits_for_prec(b.prec());
    let (re, er) = to_sci(b.mid_re(), digits);
    let (im, ei) = to_sci(b.mid_im(), digits);
    let rad = mag::sum(&[b.rad(), &er, &ei]);
    (re, im, upper_sci(&rad, 6))
}

/// Ball enclosing the decimal triple.
pub fn ball_from_decimal(
    re: &str,
    im: &str,
    rad: &str,
    prec: u32,
) -> Result<BallComplex, NumericsError> {
    let r = parse_decimal(re)?;
    let i = parse_decimal(im)?;
    let rd = parse_decimal(rad)?;
    if rd.is_negative() {
        return Err(NumericsError::InvalidDecimal(String::from(rad)));
    }
    let b = BallComplex::from_gauss(&r, &i, prec);
    Ok(b.add_error(&Dyadic::rational_upper(&rd, 40)))
}

#[cfg(test)]
fn digit_count(s: &str) -> usize {
    let m = s.split('e').next().unwrap();
    m.chars().filter(|c| c.is_ascii_digit()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let x = Dyadic::new(BigInt::from(3), -2);
        let (s, e) = to_sci(&x, 10);
        assert_eq!(s, "7.5e-1");
        assert!(e.is_zero());
        assert_eq!(parse_decimal(&s).unwrap(), x.to_rational());
        assert_eq!(parse_decimal("-12.5E1").unwrap(), BigRational::from_integer(BigInt::from(-125)));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("e5").is_err());
    }

    #[test]
    fn upper_is_upper() {
        let x = Dyadic::new(BigInt::from(1), -3);
        let s = upper_sci(&x, 1);
        assert!(parse_decimal(&s).unwrap() >= x.to_rational());
        let third = Dyadic::from_rational(
            &BigRational::new(BigInt::from(1), BigInt::from(3)),
            64,
        )
        .0;
        let s = upper_sci(&third, 3);
        assert_eq!(s, "3.34e-1");
        assert!(digit_count(&s) == 3);
    }

    #[test]
    fn ball_roundtrip_contains() {
        let b = super::super::elementary::pi(256);
        let (re, im, rad) = ball_to_decimal(&b);
        let back = ball_from_decimal(&re, &im, &rad, 256).unwrap();
        assert!(back.contains(&b));
        assert_eq!(back.mid_re(), b.mid_re());
    }
}
