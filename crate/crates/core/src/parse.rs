//! Text grammar for exact inputs such as `1+sqrt(3)*i`, `i/3`, `-i*sqrt(5)`.
//!
//! An input is a signed sum of terms; each term is a product or quotient of
//! integers, `10^k` powers, `i` and `sqrt(n)` factors. Juxtaposition (`2i`)
//! is a product. The value is collected as
//! `sum_d r_d sqrt(d) + i * sum_d s_d sqrt(d)` over squarefree `d`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::surd::{square_part, Surd};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported form: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    I,
    Sqrt,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k];
        let start = k;
        match c {
            b' ' | b'\t' => {
                k += 1;
                continue;
            }
            b'0'..=b'9' => {
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = s[start..k].parse().expect("digits");
                out.push((Tok::Num(n), start));
                continue;
            }
            b'+' => out.push((Tok::Plus, k)),
            b'-' => out.push((Tok::Minus, k)),
            b'*' => out.push((Tok::Star, k)),
            b'/' => out.push((Tok::Slash, k)),
            b'^' => out.push((Tok::Caret, k)),
            b'(' => out.push((Tok::LParen, k)),
            b')' => out.push((Tok::RParen, k)),
            b'i' | b'I' => out.push((Tok::I, k)),
            b's' if s[k..].starts_with("sqrt") => {
                out.push((Tok::Sqrt, k));
                k += 4;
                continue;
            }
            _ => {
                let ch = s[k..].chars().next().unwrap_or('?');
                return Err(ParseError::UnexpectedChar(ch, k));
            }
        }
        k += 1;
    }
    Ok(out)
}

/// `coef * sqrt(rad) * i^ipow`, with `rad` squarefree.
#[derive(Clone, Debug)]
struct Term {
    coef: BigRational,
    rad: u64,
    ipow: u32,
}

impl Term {
    fn one() -> Self {
        Term {
            coef: BigRational::one(),
            rad: 1,
            ipow: 0,
        }
    }

    fn mul(mut self, o: &Term) -> Result<Self, ParseError> {
        self.coef *= &o.coef;
        let prod = self
            .rad
            .checked_mul(o.rad)
            .ok_or_else(|| ParseError::Unsupported("radicand too large".to_string()))?;
        let (s, f) = square_part(prod);
        self.coef *= BigRational::from_integer(BigInt::from(s));
        self.rad = f;
        self.ipow = (self.ipow + o.ipow) % 4;
        Ok(self)
    }

    fn recip(&self) -> Result<Self, ParseError> {
        if self.coef.is_zero() {
            return Err(ParseError::DivisionByZero);
        }
        // 1/(c sqrt(d) i^k) = sqrt(d) / (c d) * i^(4-k)
        Ok(Term {
            coef: (self.coef.clone() * BigRational::from_integer(BigInt::from(self.rad))).recip(),
            rad: self.rad,
            ipow: (4 - self.ipow) % 4,
        })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t.0)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, at)) => {
                let c = match t {
                    Tok::Plus => '+',
                    Tok::Minus => '-',
                    Tok::Star => '*',
                    Tok::Slash => '/',
                    Tok::Caret => '^',
                    Tok::LParen => '(',
                    Tok::RParen => ')',
                    Tok::I => 'i',
                    Tok::Sqrt => 's',
                    Tok::Num(_) => '0',
                };
                ParseError::UnexpectedChar(c, *at)
            }
            None => ParseError::UnexpectedEnd,
        }
    }

    fn expr(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                None if !first => break,
                _ if first => false,
                _ => return Err(self.unexpected()),
            };
            let mut t = self.term()?;
            if neg {
                t.coef = -t.coef;
            }
            terms.push(t);
            first = false;
            if self.peek().is_none() {
                break;
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    t = t.mul(&f)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    t = t.mul(&f.recip()?)?;
                }
                Some(Tok::Num(_)) | Some(Tok::I) | Some(Tok::Sqrt) => {
                    let f = self.factor()?;
                    t = t.mul(&f)?;
                }
                _ => return Ok(t),
            }
        }
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        match self.next()? {
            Tok::Num(n) => {
                let mut v = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    match self.next()? {
                        Tok::Num(e) => {
                            let e: u32 = e
                                .try_into()
                                .ok()
                                .filter(|e| *e <= 10_000)
                                .ok_or_else(|| ParseError::Unsupported("exponent too large".to_string()))?;
                            v = BigRational::from_integer(v.to_integer().pow(e));
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected());
                        }
                    }
                }
                Ok(Term {
                    coef: v,
                    ..Term::one()
                })
            }
            Tok::I => Ok(Term {
                ipow: 1,
                ..Term::one()
            }),
            Tok::Sqrt => {
                if self.next()? != Tok::LParen {
                    self.pos -= 1;
                    return Err(self.unexpected());
                }
                let num = match self.next()? {
                    Tok::Num(n) => n,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected());
                    }
                };
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next()? {
                        Tok::Num(d) => d,
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected());
                        }
                    }
                } else {
                    BigInt::one()
                };
                if self.next()? != Tok::RParen {
                    self.pos -= 1;
                    return Err(self.unexpected());
                }
                if den.is_zero() {
                    return Err(ParseError::DivisionByZero);
                }
                // sqrt(n/d) = sqrt(n d) / d
                let nd: u64 = (&num * &den)
                    .try_into()
                    .map_err(|_| ParseError::Unsupported("radicand too large".to_string()))?;
                if nd == 0 {
                    return Ok(Term {
                        coef: BigRational::zero(),
                        ..Term::one()
                    });
                }
                let (s, f) = square_part(nd);
                Ok(Term {
                    coef: BigRational::new(BigInt::from(s), den),
                    rad: f,
                    ipow: 0,
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected())
            }
        }
    }
}

/// A parsed value `re + i*im`, each part a sum of rational multiples of
/// square roots of distinct squarefree integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub re: BTreeMap<u64, BigRational>,
    pub im: BTreeMap<u64, BigRational>,
}

impl Parsed {
    /// Collapse a part into a single surd, if it has at most one radicand
    /// besides 1.
    fn part(map: &BTreeMap<u64, BigRational>) -> Result<Surd, ParseError> {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut d = 1;
        for (rad, c) in map {
            if *rad == 1 {
                a = c.clone();
            } else if d == 1 {
                d = *rad;
                b = c.clone();
            } else {
                return Err(ParseError::Unsupported("more than one square root per part".to_string()));
            }
        }
        Ok(Surd::new(a, b, d))
    }

    pub fn re_surd(&self) -> Result<Surd, ParseError> {
        Self::part(&self.re)
    }

    pub fn im_surd(&self) -> Result<Surd, ParseError> {
        Self::part(&self.im)
    }
}

pub fn parse_value(s: &str) -> Result<Parsed, ParseError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ParseError::UnexpectedEnd);
    }
    let mut p = Parser { toks, pos: 0 };
    let terms = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    let mut re: BTreeMap<u64, BigRational> = BTreeMap::new();
    let mut im: BTreeMap<u64, BigRational> = BTreeMap::new();
    for t in terms {
        let (map, c) = match t.ipow {
            0 => (&mut re, t.coef),
            1 => (&mut im, t.coef),
            2 => (&mut re, -t.coef),
            _ => (&mut im, -t.coef),
        };
        let e = map.entry(t.rad).or_insert_with(BigRational::zero);
        *e += c;
    }
    re.retain(|_, c| !c.is_zero());
    im.retain(|_, c| !c.is_zero());
    Ok(Parsed { re, im })
}

/// Parses a comma-separated list of values.
pub fn parse_list(s: &str) -> Result<Vec<Parsed>, ParseError> {
    s.split(',').map(parse_value).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn tau_forms() {
        let p = parse_value("1+sqrt(3)*i").unwrap();
        assert_eq!(p.re_surd().unwrap(), Surd::int(1));
        assert_eq!(p.im_surd().unwrap(), Surd::new(q(0, 1), q(1, 1), 3));
        let p = parse_value("i/3").unwrap();
        assert_eq!(p.im_surd().unwrap(), Surd::rational(q(1, 3)));
        let p = parse_value("0+0i").unwrap();
        assert!(p.re.is_empty() && p.im.is_empty());
        let p = parse_value("1/3+i").unwrap();
        assert_eq!(p.re_surd().unwrap(), Surd::rational(q(1, 3)));
        let p = parse_value("i*10^6").unwrap();
        assert_eq!(p.im_surd().unwrap(), Surd::int(1_000_000));
    }

    #[test]
    fn beta_forms() {
        let p = parse_value("-i*sqrt(5)").unwrap();
        assert_eq!(p.im_surd().unwrap(), Surd::new(q(0, 1), q(-1, 1), 5));
        let p = parse_value("3/2*sqrt(12)").unwrap();
        assert_eq!(p.re_surd().unwrap(), Surd::new(q(0, 1), q(3, 1), 3));
        let p = parse_value("1+i").unwrap();
        assert_eq!(p.re_surd().unwrap(), Surd::int(1));
        assert_eq!(p.im_surd().unwrap(), Surd::int(1));
        let p = parse_value("2/7*i").unwrap();
        assert_eq!(p.im_surd().unwrap(), Surd::rational(q(2, 7)));
        let p = parse_value("sqrt(1/2)").unwrap();
        assert_eq!(p.re_surd().unwrap(), Surd::new(q(0, 1), q(1, 2), 2));
    }

    #[test]
    fn rejects() {
        assert!(parse_value("").is_err());
        assert!(parse_value("1+").is_err());
        assert!(parse_value("x").is_err());
        assert!(parse_value("1/0").is_err());
        assert!(parse_value("sqrt(2)+sqrt(3)").unwrap().re_surd().is_err());
        assert_eq!(parse_list("1, 1, 2").unwrap().len(), 3);
    }
}
