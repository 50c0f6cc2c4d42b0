//! Text front end: a small expression language for classes, parsed with
//! byte-positioned diagnostics and evaluated in the truncated ring.

mod ast;
mod elaborate;
mod lexer;
mod parser;

pub use ast::{ExprAst, Node, Sign, VarName};
pub use elaborate::{elaborate, evaluate, normalize, SignConvention};
pub use parser::{parse_bytes, parse_expression, MAX_EXPONENT};

use crate::error::Result;
use crate::polyring::Polynomial;
use crate::ring::BundleRing;

/// Reads back a polynomial printed in canonical form, exactly (no truncation).
pub fn parse_polynomial(text: &str, ring: &BundleRing) -> Result<Polynomial> {
    let ast = parse_expression(text, ring.rank())?;
    evaluate(&ast, ring, None)
}
