use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// A generator reference, already checked against the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarName {
    X,
    Y,
    C(usize),
    Q(usize),
    U(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    Rational(BigRational),
    Var(VarName),
    /// Signed summands; the first is always `Plus`.
    Sum(Vec<(Sign, ExprAst)>),
    Product(Vec<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Neg(Box<ExprAst>),
    /// Truncated series inverse.
    Inv(Box<ExprAst>),
}

/// A parsed expression node with the byte offset where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprAst {
    pub offset: usize,
    pub node: Node,
}

impl ExprAst {
    pub fn new(offset: usize, node: Node) -> Self {
        ExprAst { offset, node }
    }

    fn is_atom(&self) -> bool {
        matches!(
            self.node,
            Node::Int(_) | Node::Rational(_) | Node::Var(_) | Node::Inv(_)
        )
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::X => write!(f, "x"),
            VarName::Y => write!(f, "y"),
            VarName::C(i) => write!(f, "c{i}"),
            VarName::Q(i) => write!(f, "q{i}"),
            VarName::U(i) => write!(f, "u{i}"),
        }
    }
}

struct Operand<'a>(&'a ExprAst);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_atom() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

/// Fully parenthesized rendering; parses back to the same tree shape.
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Int(n) => write!(f, "{n}"),
            Node::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Node::Var(v) => write!(f, "{v}"),
            Node::Sum(terms) => {
                for (i, (sign, t)) in terms.iter().enumerate() {
                    match (i, sign) {
                        (0, _) => {}
                        (_, Sign::Plus) => write!(f, " + ")?,
                        (_, Sign::Minus) => write!(f, " - ")?,
                    }
                    write!(f, "{}", Operand(t))?;
                }
                Ok(())
            }
            Node::Product(factors) => {
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{}", Operand(t))?;
                }
                Ok(())
            }
            Node::Pow(b, e) => write!(f, "{}^{e}", Operand(b)),
            Node::Neg(inner) => write!(f, "-{}", Operand(inner)),
            Node::Inv(inner) => write!(f, "inv({inner})"),
        }
    }
}
