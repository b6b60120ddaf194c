//! Expression parser: rationals, identifiers, `+ - * ^ ( )` with nonnegative
//! integer exponents. Errors carry a line/column position.

use crate::error::{EngineError, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    line_offset: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, col: usize) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line, col, line_offset: col }
    }

    fn err(&self, msg: impl Into<String>) -> EngineError {
        EngineError::Syntax {
            line: self.line,
            col: self.line_offset + self.pos,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, start));
        }
        let c = self.src[self.pos] as char;
        self.pos += 1;
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let mut s = String::new();
                s.push(d);
                while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
                    s.push(self.src[self.pos] as char);
                    self.pos += 1;
                }
                Tok::Num(s.parse::<BigInt>().expect("digits"))
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let mut s = String::new();
                s.push(a);
                while self.pos < self.src.len() {
                    let ch = self.src[self.pos] as char;
                    if ch.is_ascii_alphanumeric() || ch == '_' {
                        s.push(ch);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(self.err(format!("unexpected character `{}`", other))),
        };
        let _ = self.col;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    ring: &'a Ring,
    cur: Tok,
    cur_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a Ring, line: usize, col: usize) -> Result<Self> {
        let mut lex = Lexer::new(src, line, col);
        let (cur, cur_pos) = lex.next()?;
        Ok(Parser { lex, ring, cur, cur_pos })
    }

    fn err_here(&self, msg: impl Into<String>) -> EngineError {
        EngineError::Syntax {
            line: self.lex.line,
            col: self.lex.line_offset + self.cur_pos,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Result<()> {
        let (t, p) = self.lex.next()?;
        self.cur = t;
        self.cur_pos = p;
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.cur {
            Tok::Minus => {
                self.bump()?;
                self.term()?.neg()
            }
            Tok::Plus => {
                self.bump()?;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.cur {
                Tok::Star => {
                    self.bump()?;
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    // only rational literals may be divided
                    self.bump()?;
                    let rhs = self.factor()?;
                    let c = rhs.constant_part().cloned();
                    match (rhs.is_constant(), c) {
                        (true, Some(c)) if !c.is_zero() => {
                            acc = acc.scale(&c.inv());
                        }
                        (true, None) => {
                            return Err(self.err_here("division by zero"));
                        }
                        _ => {
                            return Err(self.err_here(
                                "division is only allowed by nonzero constants",
                            ))
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.cur == Tok::Caret {
            self.bump()?;
            let e = match &self.cur {
                Tok::Num(n) => {
                    use num_traits::ToPrimitive;
                    n.to_u32().ok_or_else(|| self.err_here("exponent too large"))?
                }
                _ => return Err(self.err_here("expected a nonnegative integer exponent")),
            };
            self.bump()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.cur.clone() {
            Tok::Num(n) => {
                self.bump()?;
                let r = BigRational::from(n);
                let c = self.ring.field.scalar_from_rat(&r)?;
                Ok(Polynomial::constant(self.ring.nvars(), c))
            }
            Tok::Ident(name) => {
                self.bump()?;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(EngineError::UnknownVariable(name)),
                }
            }
            Tok::Minus => {
                self.bump()?;
                Ok(self.base()?.neg())
            }
            Tok::LParen => {
                self.bump()?;
                let e = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(self.err_here("expected `)`"));
                }
                self.bump()?;
                Ok(e)
            }
            _ => Err(self.err_here("expected a number, variable, or `(`")),
        }
    }
}

/// Parse an expression into an exact polynomial over the ring's field.
///
/// `line`/`col` seed the error positions so callers embedding expressions in
/// larger files report the true location.
pub fn parse_poly_at(text: &str, ring: &Ring, line: usize, col: usize) -> Result<Polynomial> {
    let mut p = Parser::new(text, ring, line, col)?;
    let e = p.expr()?;
    if p.cur != Tok::End {
        return Err(p.err_here("trailing input after expression"));
    }
    Ok(e)
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    parse_poly_at(text, ring, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn ring2() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], FieldSpec::Q)
    }

    #[test]
    fn parses_simple_sum() {
        let r = ring2();
        let p = parse_poly("x^2 + y^2", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn parses_zero() {
        let r = ring2();
        assert!(parse_poly("0", &r).unwrap().is_zero());
    }

    #[test]
    fn expands_square() {
        // (x - 1/2*y)^2 = x^2 - xy + 1/4 y^2
        let r = ring2();
        let p = parse_poly("(x - 1/2*y)^2", &r).unwrap();
        let q = parse_poly("x^2 - x*y + 1/4*y^2", &r).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unknown_variable_reported() {
        let r = ring2();
        assert!(matches!(
            parse_poly("x + z", &r),
            Err(EngineError::UnknownVariable(v)) if v == "z"
        ));
    }

    #[test]
    fn syntax_error_has_position() {
        let r = ring2();
        match parse_poly("x + ", &r) {
            Err(EngineError::Syntax { line: 1, .. }) => {}
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn roundtrips_canonical_display() {
        let r = ring2();
        let p = parse_poly("3*x^2*y - 1/2*y + 4", &r).unwrap();
        let s = r.display(&p);
        let q = parse_poly(&s, &r).unwrap();
        assert_eq!(p, q);
    }
}
