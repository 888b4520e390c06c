//! Text grammar for rational functions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := ('-'|'+') unary | power
//! power  := atom ('^' uint)*
//! atom   := 'z' | 'i' | uint | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Exponents are nonnegative integer literals.
//! Printing emits the normalized form `(<num>)/(<den>)` with terms in
//! descending degree; `parse(format(f)) = f`.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{GaussianRational, NumError, Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Byte position of the offending character and a short description.
    Syntax { pos: usize, msg: String },
    /// Literal division by the zero polynomial, e.g. `1/(z-z)`.
    DivisionByZero,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            ParseError::DivisionByZero => write!(f, "division by the zero polynomial"),
        }
    }
}

const MAX_EXPONENT: usize = 512;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                b'-' => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                b'*' => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                b'/' => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|e| match e {
                        NumError::DivisionByZero => ParseError::DivisionByZero,
                        other => ParseError::Syntax {
                            pos: self.pos,
                            msg: format!("{other}"),
                        },
                    })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.bump();
            let k = self.uint()?;
            if k > MAX_EXPONENT {
                return self.err("exponent too large");
            }
            base = base.pow(k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'z') => {
                self.bump();
                Ok(RationalFunction::var())
            }
            Some(b'i') => {
                self.bump();
                Ok(RationalFunction::constant(GaussianRational::i()))
            }
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.big_uint()?;
                Ok(RationalFunction::constant(GaussianRational::new(
                    BigRational::from_integer(n),
                    BigRational::from_integer(BigInt::from(0)),
                )))
            }
            Some(_) => self.err("expected 'z', 'i', a number, or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                }
                let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                s.parse::<usize>()
                    .map_err(|_| ParseError::Syntax {
                        pos: start,
                        msg: "exponent too large".to_string(),
                    })
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn big_uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        let s = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<BigInt>().map_err(|_| ParseError::Syntax {
            pos: start,
            msg: "malformed integer".to_string(),
        })
    }
}

/// Parse a rational-function expression.
pub fn parse_rf(text: &str) -> Result<RationalFunction, ParseError> {
    let mut p = Parser::new(text);
    let f = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Normalized printing: `(<num>)/(<den>)`, terms in descending degree.
pub fn format_rf(f: &RationalFunction) -> String {
    format!("({})/({})", poly_text(f.num()), poly_text(f.den()))
}

impl RationalFunction {
    pub fn to_text(&self) -> String {
        format_rf(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rf(self))
    }
}

fn rat_text(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn zpow_text(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    }
}

/// One term `c·z^k` as (is_negative, body) where body has the sign stripped
/// when the coefficient is real or pure imaginary. Mixed coefficients keep
/// their signs inside a parenthesized complex literal.
fn term_text(c: &GaussianRational, k: usize) -> (bool, String) {
    let zp = zpow_text(k);
    let (neg, mut body) = if c.im().is_zero() {
        let mag = c.re().abs();
        let body = if mag.is_one() && k > 0 {
            String::new()
        } else {
            rat_text(&mag)
        };
        (c.re().is_negative(), body)
    } else if c.re().is_zero() {
        let mag = c.im().abs();
        let body = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rat_text(&mag))
        };
        (c.im().is_negative(), body)
    } else {
        (false, c.to_text())
    };
    if !zp.is_empty() {
        if body.is_empty() {
            body = zp;
        } else {
            body = format!("{body}*{zp}");
        }
    }
    (neg, body)
}

fn poly_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let top = p.degree().unwrap();
    for k in (0..=top).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let (neg, body) = term_text(&c, k);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rf(s: &str) -> RationalFunction {
        parse_rf(s).unwrap()
    }

    #[test]
    fn monic_normalization_of_denominator() {
        // (z^2 + i)/(2z - 1): denominator becomes monic z - 1/2
        let f = rf("(z^2 + i)/(2*z - 1)");
        let den = f.den();
        assert_eq!(den.coeff(1), GaussianRational::one());
        assert_eq!(den.coeff(0), GaussianRational::from_ratio(-1, 2));
        let num = f.num();
        assert_eq!(num.coeff(0), GaussianRational::new(
            BigRational::from_integer(BigInt::from(0)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        ));
    }

    #[test]
    fn repeated_multiplication() {
        assert_eq!(rf("z*z*z"), RationalFunction::var().pow(3));
    }

    #[test]
    fn literal_zero_division() {
        assert_eq!(parse_rf("1/(z-z)"), Err(ParseError::DivisionByZero));
    }

    #[test]
    fn syntax_error_positions() {
        match parse_rf("z + ") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(parse_rf("z ) z"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn rational_literals_and_precedence() {
        assert_eq!(rf("3/4"), RationalFunction::constant(GaussianRational::from_ratio(3, 4)));
        // '/' and '*' associate left: 3/4*z = (3/4)z
        let expect = RationalFunction::var().scale(&GaussianRational::from_ratio(3, 4));
        assert_eq!(rf("3/4*z"), expect);
        // unary minus binds the whole power
        assert_eq!(rf("-z^2"), -&RationalFunction::var().pow(2));
    }

    #[test]
    fn format_round_trip() {
        let cases = vec![
            "z",
            "0",
            "1",
            "-z^2",
            "(z^2+i)/(2*z-1)",
            "1/2*z^3 - i*z + (3/2-1/4*i)",
            "(z+1)/(z^3 - z - 7)",
            "i",
            "-3/4*i*z^2 + z",
        ];
        for c in cases {
            let f = rf(c);
            let printed = format_rf(&f);
            assert_eq!(rf(&printed), f, "round trip failed for {c} -> {printed}");
        }
    }

    #[test]
    fn formatting_shape() {
        assert_eq!(format_rf(&rf("z")), "(z)/(1)");
        assert_eq!(format_rf(&rf("0")), "(0)/(1)");
        let f = rf("(2*z^2 - 2)/(2*z - 2)");
        assert_eq!(format_rf(&f), "(z + 1)/(1)");
    }
}
