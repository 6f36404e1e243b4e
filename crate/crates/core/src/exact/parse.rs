//! Parser for exact threshold expressions such as `pi*exp_half_pi/4`,
//! `ratio(2)`, `exp_half_pi - 4` or `3.79`.
//!
//! Grammar:
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := NUMBER | 'pi' | 'exp_half_pi' | 'ratio(' INT ')' | '(' expr ')'
//! ```
//! Division is only defined by rational values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::pi_expr::{ExactValue, PiExpression};
use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&lit)?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

/// Exact value of a decimal literal like `3.785` or `12`.
pub fn parse_decimal(lit: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed number `{lit}`"));
    let (int, frac) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    Ok(BigRational::new(num, den))
}

/// Parse a rational literal `a`, `a/b`, or a decimal, with optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let q = match body.split_once('/') {
        Some((a, b)) => {
            let a = parse_decimal(a.trim())?;
            let b = parse_decimal(b.trim())?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
        None => parse_decimal(body)?,
    };
    Ok(if neg { -q } else { q })
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    table: &'a mut CoefficientTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactValue> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactValue> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat_op('/') {
                let d = self.unary()?;
                let q = d.as_rational().ok_or_else(|| {
                    Error::Parse("division is only supported by rational values".into())
                })?;
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&q.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactValue> {
        if self.eat_op('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExactValue> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let k = self.integer()?;
        let mut acc = ExactValue::rational(BigRational::one());
        for _ in 0..k {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<usize> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                q.to_integer()
                    .try_into()
                    .map_err(|_| Error::Parse("integer out of range".into()))
            }
            other => Err(Error::Parse(format!("expected an integer, found {other:?}"))),
        }
    }

    fn atom(&mut self) -> Result<ExactValue> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(q) => Ok(ExactValue::rational(q)),
            Tok::Op('(') => {
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(v)
            }
            Tok::Ident(name) => match name.as_str() {
                "pi" | "π" => Ok(ExactValue::from(PiExpression::pi())),
                "exp_half_pi" => Ok(ExactValue::from(PiExpression::exp_half_pi())),
                "ratio" => {
                    if !self.eat_op('(') {
                        return Err(Error::Parse("expected `(` after ratio".into()));
                    }
                    let k = self.integer()?;
                    if !self.eat_op(')') {
                        return Err(Error::Parse("missing `)` after ratio(k".into()));
                    }
                    Ok(ExactValue::from(self.table.ratio_exact(k)))
                }
                other => Err(Error::Parse(format!("unknown identifier `{other}`"))),
            },
            Tok::Op(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
        }
    }
}

/// Parse an exact expression; `ratio(k)` (the exact `b_k/W_k`) extends `table`.
pub fn parse_exact_with(s: &str, table: &mut CoefficientTable) -> Result<ExactValue> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, table };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

pub fn parse_exact(s: &str) -> Result<ExactValue> {
    let mut table = CoefficientTable::new();
    parse_exact_with(s, &mut table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("3.785").unwrap(), q(757, 200));
        assert_eq!(parse_rational("-1/100").unwrap(), q(-1, 100));
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn threshold_aliases_agree() {
        let a = parse_exact("pi*exp_half_pi/4").unwrap();
        let b = parse_exact("ratio(1)").unwrap();
        assert_eq!(a, b);
        let c = parse_exact("pi*(pi+9)*exp_half_pi/48").unwrap();
        assert_eq!(c, parse_exact("ratio(2)").unwrap());
    }

    #[test]
    fn mixed_values_parse() {
        let alpha = parse_exact("exp_half_pi - 4").unwrap();
        assert!(alpha.as_pi_expression().is_none());
        assert_eq!(alpha.plain().as_rational(), Some(q(-4, 1)));
    }

    #[test]
    fn errors() {
        assert!(parse_exact("pi / pi").is_err());
        assert!(parse_exact("exp_half_pi * exp_half_pi").is_err());
        assert!(parse_exact("foo").is_err());
        assert!(parse_exact("(pi").is_err());
        assert!(parse_exact("").is_err());
        assert!(parse_exact("1/0").is_err());
    }
}
