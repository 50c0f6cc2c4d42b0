use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::table::{same_table, Var, VariableTable};
use crate::error::{Error, Result};

/// Drops every term of weighted degree above `cutoff`.
pub fn truncate(p: &Polynomial, cutoff: u32) -> Polynomial {
    let table = p.table().clone();
    p.filter_terms(|m, _| m.degree(&table) <= cutoff)
}

/// Homogeneous components in increasing degree; zero components are omitted.
pub fn grade_decompose(p: &Polynomial) -> Vec<(u32, Polynomial)> {
    let table = p.table();
    let mut grades: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        grades
            .entry(m.degree(table))
            .or_insert_with(|| Polynomial::zero(table))
            .add_term(m.clone(), c.clone());
    }
    grades.into_iter().collect()
}

/// The homogeneous component of degree `d`.
pub fn grade(p: &Polynomial, d: u32) -> Polynomial {
    let table = p.table().clone();
    p.filter_terms(|m, _| m.degree(&table) == d)
}

/// A ring map sending generators of a source table to polynomials over a
/// target table.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<VariableTable>,
    target: Arc<VariableTable>,
    images: Vec<Option<Polynomial>>,
}

impl Substitution {
    pub fn new(source: &Arc<VariableTable>, target: &Arc<VariableTable>) -> Self {
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.len()],
        }
    }

    /// Every generator mapped to itself.
    pub fn identity(table: &Arc<VariableTable>) -> Self {
        let mut s = Substitution::new(table, table);
        for v in table.vars() {
            s.images[v.0] = Some(Polynomial::var(table, v));
        }
        s
    }

    pub fn set(&mut self, var: Var, image: Polynomial) -> Result<&mut Self> {
        if !same_table(image.table(), &self.target) {
            return Err(Error::TableMismatch);
        }
        self.images[var.0] = Some(image);
        Ok(self)
    }

    pub fn image(&self, var: Var) -> Option<&Polynomial> {
        self.images.get(var.0).and_then(|i| i.as_ref())
    }

    pub fn target(&self) -> &Arc<VariableTable> {
        &self.target
    }

    pub fn source(&self) -> &Arc<VariableTable> {
        &self.source
    }

    /// Checks that the image of `var` exists and is homogeneous of the
    /// variable's degree.
    fn checked_image(&self, var: Var) -> Result<&Polynomial> {
        let image = self
            .image(var)
            .ok_or_else(|| Error::UnboundVariable(self.source.name(var).to_string()))?;
        let expected = self.source.degree(var);
        if !image.is_homogeneous_of(expected) {
            return Err(Error::Grading {
                var: self.source.name(var).to_string(),
                expected,
            });
        }
        Ok(image)
    }
}

/// Ring-homomorphic image of `p` under a degree-preserving substitution.
pub fn substitute(p: &Polynomial, assignment: &Substitution) -> Result<Polynomial> {
    if !same_table(p.table(), &assignment.source) {
        return Err(Error::TableMismatch);
    }
    for v in p.support() {
        assignment.checked_image(v)?;
    }
    let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
    let mut out = Polynomial::zero(&assignment.target);
    for (m, c) in p.terms() {
        let mut acc = Polynomial::constant(&assignment.target, c.clone());
        for (v, e) in m.iter() {
            let pw = power_cached(&mut powers, assignment, v, e);
            acc = &acc * pw;
            if acc.is_zero() {
                break;
            }
        }
        out = out + acc;
    }
    Ok(out)
}

fn power_cached<'a>(
    cache: &'a mut HashMap<(Var, u32), Polynomial>,
    assignment: &Substitution,
    v: Var,
    e: u32,
) -> &'a Polynomial {
    if !cache.contains_key(&(v, e)) {
        let base = assignment.image(v).expect("image checked");
        let value = if e == 1 {
            base.clone()
        } else {
            let prev = power_cached(cache, assignment, v, e - 1).clone();
            &prev * base
        };
        cache.insert((v, e), value);
    }
    &cache[&(v, e)]
}

/// Reads `factor` as `a - b` for distinct degree-1 generators.
pub fn as_linear_difference(factor: &Polynomial) -> Result<(Var, Var)> {
    let bad = || Error::BadLinearFactor(factor.to_string());
    if factor.len() != 2 {
        return Err(bad());
    }
    let mut plus = None;
    let mut minus = None;
    for (m, c) in factor.terms() {
        let mut vars = m.iter();
        let (v, e) = vars.next().ok_or_else(bad)?;
        if vars.next().is_some() || e != 1 || factor.table().degree(v) != 1 {
            return Err(bad());
        }
        if c.is_one() {
            plus = Some(v);
        } else if (-c).is_one() {
            minus = Some(v);
        } else {
            return Err(bad());
        }
    }
    match (plus, minus) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(bad()),
    }
}

/// Exact quotient `p / (a - b)` by synthetic division in `a`.
pub fn divide_exact_linear(p: &Polynomial, factor: &Polynomial) -> Result<Polynomial> {
    if !same_table(p.table(), factor.table()) {
        return Err(Error::TableMismatch);
    }
    let (a, b) = as_linear_difference(factor)?;
    divide_by_difference(p, a, b).ok_or_else(|| Error::NotDivisible {
        dividend: p.to_string(),
        factor: factor.to_string(),
    })
}

/// Synthetic division of `p` by `a - b`; `None` when the remainder is nonzero.
pub fn divide_by_difference(p: &Polynomial, a: Var, b: Var) -> Option<Polynomial> {
    let table = p.table();
    // p = sum_k coeffs[k] * a^k with a-free coefficients
    let mut coeffs: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (e, rest) = m.split(a);
        coeffs
            .entry(e)
            .or_insert_with(|| Polynomial::zero(table))
            .add_term(rest, c.clone());
    }
    let Some(&top) = coeffs.keys().next_back() else {
        return Some(Polynomial::zero(table));
    };
    let b_mono = Monomial::var(b);
    let mut quotient = Polynomial::zero(table);
    // carry = q_{k-1} = p_k + b * q_k, walking k from the top down
    let mut carry = Polynomial::zero(table);
    for k in (0..=top).rev() {
        let pk = coeffs.remove(&k).unwrap_or_else(|| Polynomial::zero(table));
        carry = pk + carry.mul_monomial(&b_mono);
        if k == 0 {
            break;
        }
        let a_pow = Monomial::power(a, k - 1);
        for (m, c) in carry.terms() {
            quotient.add_term(m.mul(&a_pow), c.clone());
        }
    }
    carry.is_zero().then_some(quotient)
}

/// Truncated multiplicative inverse: `s` with `truncate(p * s, cutoff) == 1`.
pub fn series_inverse(p: &Polynomial, cutoff: u32) -> Result<Polynomial> {
    let c0 = p.constant_term();
    if c0.is_zero() {
        return Err(Error::NotInvertible(p.to_string()));
    }
    let inv0 = c0.recip();
    let table = p.table();
    let grades: BTreeMap<u32, Polynomial> = grade_decompose(p).into_iter().collect();
    let mut parts: Vec<Polynomial> = vec![Polynomial::constant(table, inv0.clone())];
    for d in 1..=cutoff {
        let mut acc = Polynomial::zero(table);
        for (&i, pi) in grades.range(1..=d) {
            let prev = &parts[(d - i) as usize];
            if !prev.is_zero() {
                acc = acc + pi * prev;
            }
        }
        parts.push(acc.scale(&-inv0.clone()));
    }
    Ok(parts
        .into_iter()
        .fold(Polynomial::zero(table), |acc, part| acc + part))
}

/// `p^exp` with every intermediate product truncated at `cutoff`.
pub fn pow_truncated(p: &Polynomial, mut exp: u32, cutoff: u32) -> Polynomial {
    let mut base = truncate(p, cutoff);
    let mut acc = truncate(&Polynomial::one(p.table()), cutoff);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul_truncated(&base, cutoff).expect("same table");
        }
        exp >>= 1;
        if exp > 0 {
            base = base.mul_truncated(&base, cutoff).expect("same table");
        }
    }
    acc
}
