use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::poly::{Polynomial, Rational};
use super::table::VariableTable;

/// Canonical text: decreasing graded-lex order, reduced fractions, `^` for
/// powers, factors separated by spaces. The expression parser reads this
/// form back.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_with(f, self, &Plain)
    }
}

/// Plain-text math rendering with TeX-style subscripts and fractions.
pub fn to_tex(p: &Polynomial) -> String {
    let mut s = String::new();
    write_with(&mut s, p, &Tex).expect("writing to a String");
    s
}

trait Style {
    fn rational(&self, out: &mut dyn Write, c: &Rational) -> fmt::Result;
    fn factor(&self, out: &mut dyn Write, name: &str, exp: u32) -> fmt::Result;
}

struct Plain;
struct Tex;

impl Style for Plain {
    fn rational(&self, out: &mut dyn Write, c: &Rational) -> fmt::Result {
        write!(out, "{c}")
    }

    fn factor(&self, out: &mut dyn Write, name: &str, exp: u32) -> fmt::Result {
        if exp == 1 {
            write!(out, "{name}")
        } else {
            write!(out, "{name}^{exp}")
        }
    }
}

impl Style for Tex {
    fn rational(&self, out: &mut dyn Write, c: &Rational) -> fmt::Result {
        if c.is_integer() {
            write!(out, "{}", c.numer())
        } else {
            write!(out, "\\frac{{{}}}{{{}}}", c.numer(), c.denom())
        }
    }

    fn factor(&self, out: &mut dyn Write, name: &str, exp: u32) -> fmt::Result {
        let split = name
            .find(|ch: char| ch.is_ascii_digit())
            .unwrap_or(name.len());
        let (stem, sub) = name.split_at(split);
        write!(out, "{stem}")?;
        if !sub.is_empty() {
            write!(out, "_{{{sub}}}")?;
        }
        if exp != 1 {
            write!(out, "^{{{exp}}}")?;
        }
        Ok(())
    }
}

fn write_with(out: &mut dyn Write, p: &Polynomial, style: &dyn Style) -> fmt::Result {
    let terms = p.terms_grlex_desc();
    if terms.is_empty() {
        return write!(out, "0");
    }
    for (i, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => write!(out, "-")?,
            (0, false) => {}
            (_, true) => write!(out, " - ")?,
            (_, false) => write!(out, " + ")?,
        }
        write_term(out, p.table(), m, &c.abs(), style)?;
    }
    Ok(())
}

fn write_term(
    out: &mut dyn Write,
    table: &VariableTable,
    m: &Monomial,
    c: &Rational,
    style: &dyn Style,
) -> fmt::Result {
    if m.is_one() {
        return style.rational(out, c);
    }
    let mut first = true;
    if !c.is_one() {
        style.rational(out, c)?;
        first = false;
    }
    for (v, e) in m.iter() {
        if !first {
            write!(out, " ")?;
        }
        style.factor(out, table.name(v), e)?;
        first = false;
    }
    Ok(())
}
