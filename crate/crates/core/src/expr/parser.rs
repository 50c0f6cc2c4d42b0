use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ast::{ExprAst, Node, Sign, VarName};
use super::lexer::{tokenize, Ident, Tok, Token};
use crate::error::{ParseError, ParseErrorKind};

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 4096;
const MAX_DEPTH: usize = 256;

/// Parses `text` at rank `rank`.
///
/// ```text
/// expr   := term (("+" | "-") term)*
/// term   := factor ("*"? factor)*
/// factor := base ("^" nat)?
/// base   := nat | nat "/" nat | var | "(" expr ")" | "-" factor | "inv" "(" expr ")"
/// var    := "x" | "y" | "c" nat | "q" nat | "u" nat
/// ```
pub fn parse_expression(text: &str, rank: usize) -> Result<ExprAst, ParseError> {
    parse_bytes(text.as_bytes(), rank)
}

pub fn parse_bytes(input: &[u8], rank: usize) -> Result<ExprAst, ParseError> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        rank,
        depth: 0,
    };
    if p.peek() == &Tok::End {
        return Err(p.error(ParseErrorKind::Syntax, "empty expression"));
    }
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(p.error(ParseErrorKind::Syntax, "unmatched `)`")),
        Tok::Slash => Err(p.error(
            ParseErrorKind::Syntax,
            "`/` only forms rational literals p/q; use inv(...) for series inversion",
        )),
        _ => Err(p.error(ParseErrorKind::Syntax, "unexpected token")),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    rank: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].offset
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        ParseError::new(kind, self.offset(), msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Syntax, format!("expected {what}")))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(ParseErrorKind::Syntax, "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        self.enter()?;
        let offset = self.offset();
        let mut terms = vec![(Sign::Plus, self.term()?)];
        loop {
            let sign = match self.peek() {
                Tok::Plus => Sign::Plus,
                Tok::Minus => Sign::Minus,
                _ => break,
            };
            self.bump();
            terms.push((sign, self.term()?));
        }
        self.depth -= 1;
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term").1
        } else {
            ExprAst::new(offset, Node::Sum(terms))
        })
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let offset = self.offset();
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                }
                // juxtaposition; a leading `-` here is subtraction, not a factor
                Tok::Nat(_) | Tok::Ident(_) | Tok::LParen | Tok::Inv => {}
                _ => break,
            }
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            ExprAst::new(offset, Node::Product(factors))
        })
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump().offset;
        let offset = self.offset();
        let exp = match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                n
            }
            Tok::Minus => {
                return Err(self.error(ParseErrorKind::Exponent, "negative powers are not allowed"))
            }
            Tok::Decimal => {
                return Err(self.error(ParseErrorKind::Exponent, "exponent must be an integer"))
            }
            _ => {
                return Err(self.error(
                    ParseErrorKind::Exponent,
                    "expected a non-negative integer exponent",
                ))
            }
        };
        if *self.peek() == Tok::Slash {
            return Err(self.error(
                ParseErrorKind::Exponent,
                "fractional powers are not allowed",
            ));
        }
        let exp = exp.to_u32().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
            ParseError::new(
                ParseErrorKind::Exponent,
                offset,
                format!("exponent exceeds {MAX_EXPONENT}"),
            )
        })?;
        Ok(ExprAst::new(caret, Node::Pow(Box::new(base), exp)))
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                if *self.peek() != Tok::Slash {
                    return Ok(ExprAst::new(offset, Node::Int(BigInt::from(n))));
                }
                self.bump();
                let den = match self.peek().clone() {
                    Tok::Nat(d) => d,
                    _ => {
                        return Err(self.error(
                            ParseErrorKind::Syntax,
                            "expected a natural-number denominator",
                        ))
                    }
                };
                if den.is_zero() {
                    return Err(self.error(ParseErrorKind::Syntax, "zero denominator"));
                }
                self.bump();
                Ok(ExprAst::new(
                    offset,
                    Node::Rational(BigRational::new(n.into(), den.into())),
                ))
            }
            Tok::Decimal => Err(self.error(
                ParseErrorKind::Syntax,
                "decimal literals are not supported; write a fraction p/q",
            )),
            Tok::Ident(id) => {
                self.bump();
                Ok(ExprAst::new(offset, Node::Var(self.resolve(id, offset)?)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Minus => {
                self.bump();
                self.enter()?;
                let inner = self.factor()?;
                self.depth -= 1;
                Ok(ExprAst::new(offset, Node::Neg(Box::new(inner))))
            }
            Tok::Inv => {
                self.bump();
                self.expect(Tok::LParen, "`(` after inv")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ExprAst::new(offset, Node::Inv(Box::new(e))))
            }
            Tok::End => Err(self.error(ParseErrorKind::Syntax, "unexpected end of input")),
            _ => Err(self.error(ParseErrorKind::Syntax, "expected a number, variable or `(`")),
        }
    }

    fn resolve(&self, id: Ident, offset: usize) -> Result<VarName, ParseError> {
        let r = self.rank;
        let arity = |name: &str, sub: Option<usize>, hi: usize| {
            let msg = match sub {
                Some(n) => format!("{name}{n} is out of range at rank {r} (valid: 1..={hi})"),
                None => format!("{name} subscript is out of range at rank {r}"),
            };
            ParseError::new(ParseErrorKind::Arity, offset, msg)
        };
        let check = |name: &str, sub: Option<usize>, hi: usize| match sub {
            Some(n) if (1..=hi).contains(&n) => Ok(n),
            _ => Err(arity(name, sub, hi)),
        };
        Ok(match id {
            Ident::X => VarName::X,
            Ident::Y => VarName::Y,
            Ident::C(s) => VarName::C(check("c", s, r)?),
            Ident::Q(s) => VarName::Q(check("q", s, r.saturating_sub(1))?),
            Ident::U(s) => VarName::U(check("u", s, r)?),
        })
    }
}
