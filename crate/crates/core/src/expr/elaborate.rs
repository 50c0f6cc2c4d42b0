use crate::error::{Error, Result};
use crate::gysin::{y_to_minus_x, ClassExpr};
use crate::polyring::{
    pow_truncated, series_inverse, substitute, truncate, Polynomial, Rational, Substitution,
};
use crate::ring::BundleRing;

use super::ast::{ExprAst, Node, Sign, VarName};

/// Which of `x` and `y = -x` a class is written in after elaboration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    X,
    Y,
}

/// Coefficients beyond this many bits are refused rather than computed.
const MAX_COEFFICIENT_BITS: u64 = 1 << 20;

/// Evaluates `ast` in the ring, truncating every intermediate result at
/// `cutoff`. `inv(...)` requires a cutoff.
pub fn evaluate(ast: &ExprAst, ring: &BundleRing, cutoff: Option<u32>) -> Result<Polynomial> {
    let table = ring.table();
    let cut = |p: Polynomial| match cutoff {
        Some(d) => truncate(&p, d),
        None => p,
    };
    Ok(match &ast.node {
        Node::Int(n) => cut(Polynomial::constant(
            table,
            Rational::from_integer(n.clone()),
        )),
        Node::Rational(q) => cut(Polynomial::constant(table, q.clone())),
        Node::Var(v) => cut(ring.var_poly(var_of(ring, *v))),
        Node::Sum(terms) => {
            let mut acc = ring.zero();
            for (sign, t) in terms {
                let p = evaluate(t, ring, cutoff)?;
                acc = match sign {
                    Sign::Plus => acc + p,
                    Sign::Minus => acc - p,
                };
            }
            acc
        }
        Node::Product(factors) => {
            let mut acc = cut(ring.one());
            for f in factors {
                let p = evaluate(f, ring, cutoff)?;
                guard_height(&acc, &p, 1)?;
                acc = match cutoff {
                    Some(d) => acc.mul_truncated(&p, d)?,
                    None => &acc * &p,
                };
            }
            acc
        }
        Node::Pow(base, e) => {
            let b = evaluate(base, ring, cutoff)?;
            guard_height(&b, &ring.one(), *e)?;
            match cutoff {
                Some(d) => pow_truncated(&b, *e, d),
                None => b.pow(*e),
            }
        }
        Node::Neg(inner) => -evaluate(inner, ring, cutoff)?,
        Node::Inv(inner) => {
            let d = cutoff.ok_or_else(|| {
                Error::Domain(format!(
                    "inv(...) at byte {} needs a truncation degree",
                    ast.offset
                ))
            })?;
            series_inverse(&evaluate(inner, ring, cutoff)?, d)?
        }
    })
}

/// Rough bound on coefficient growth of `a^exp * b`.
fn guard_height(a: &Polynomial, b: &Polynomial, exp: u32) -> Result<()> {
    let bits = |p: &Polynomial| {
        p.terms()
            .map(|(_, c)| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
    };
    if bits(a).saturating_mul(exp as u64).saturating_add(bits(b)) > MAX_COEFFICIENT_BITS {
        return Err(Error::Domain(
            "coefficients grow beyond the supported size".into(),
        ));
    }
    Ok(())
}

fn var_of(ring: &BundleRing, v: VarName) -> crate::polyring::Var {
    match v {
        VarName::X => ring.x(),
        VarName::Y => ring.y(),
        VarName::C(i) => ring.c(i),
        VarName::Q(i) => ring.q(i),
        VarName::U(i) => ring.u(i),
    }
}

/// Evaluates `ast` as a class on `P(V)`, rewritten in the chosen sign
/// convention.
pub fn elaborate(
    ast: &ExprAst,
    ring: &BundleRing,
    cutoff: Option<u32>,
    convention: SignConvention,
) -> Result<ClassExpr> {
    let p = normalize(ring, &evaluate(ast, ring, cutoff)?, convention)?;
    ClassExpr::new(ring, p, cutoff)
}

pub fn normalize(
    ring: &BundleRing,
    p: &Polynomial,
    convention: SignConvention,
) -> Result<Polynomial> {
    let s = match convention {
        SignConvention::X => y_to_minus_x(ring),
        SignConvention::Y => {
            let mut s = Substitution::identity(ring.table());
            s.set(ring.x(), -ring.var_poly(ring.y()))?;
            s
        }
    };
    substitute(p, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn elab(text: &str, r: usize, d: u32) -> Result<ClassExpr> {
        let ring = BundleRing::new(r).unwrap();
        elaborate(
            &parse_expression(text, r)?,
            &ring,
            Some(d),
            SignConvention::X,
        )
    }

    #[test]
    fn examples() {
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let e = elab("inv(1-x)", 3, 3).unwrap();
        assert_eq!(*e.payload(), ring.one() + &x + &x * &x + x.pow(3));
        let e = elab("c1*x", 3, 5).unwrap();
        assert_eq!(*e.payload(), ring.var_poly(ring.c(1)) * &x);
        assert!(matches!(elab("inv(x)", 3, 5), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn y_is_rewritten() {
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let e = elab("inv(1+y)", 3, 3).unwrap();
        assert_eq!(*e.payload(), ring.one() + &x + &x * &x + x.pow(3));
        let e = elab("x + y", 3, 3).unwrap();
        assert!(e.payload().is_zero());
        let p = evaluate(&parse_expression("x^2 c1", 3).unwrap(), &ring, None).unwrap();
        let y = ring.var_poly(ring.y());
        assert_eq!(
            normalize(&ring, &p, SignConvention::Y).unwrap(),
            &y * &y * ring.var_poly(ring.c(1))
        );
    }

    #[test]
    fn truncation_applies_everywhere() {
        assert!(elab("x^5", 3, 4).unwrap().payload().is_zero());
        assert!(elab("c2 c3", 3, 4).unwrap().payload().is_zero());
        let ring = BundleRing::new(3).unwrap();
        let e = elab("(1+x)^4096", 3, 2).unwrap();
        let x = ring.var_poly(ring.x());
        let expected = ring.one()
            + x.scale(&crate::polyring::rat(4096, 1))
            + (&x * &x).scale(&crate::polyring::rat(4096 * 4095 / 2, 1));
        assert_eq!(*e.payload(), expected);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            elab("u1", 3, 4),
            Err(Error::UnsupportedVariable(_))
        ));
        let ring = BundleRing::new(3).unwrap();
        let ast = parse_expression("inv(1+x)", 3).unwrap();
        assert!(matches!(evaluate(&ast, &ring, None), Err(Error::Domain(_))));
        let huge = parse_expression("((99999999999^4096)^4096)^4096", 3).unwrap();
        assert!(matches!(
            evaluate(&huge, &ring, Some(3)),
            Err(Error::Domain(_))
        ));
    }
}
