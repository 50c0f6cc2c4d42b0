use std::cmp::Ordering;

use super::table::{Var, VariableTable};

/// Sparse exponent vector, sorted by variable index, zero exponents never stored.
///
/// The derived order is lexicographic with lower variable indices more
/// significant, so `u1 > u2 > ... > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(var: Var) -> Self {
        Monomial(vec![(var, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (Var, u32)>>(exps: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in exps {
            m = m.mul(&Monomial::power(v, e));
        }
        m
    }

    pub fn power(var: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(var, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: Var) -> u32 {
        self.0
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn degree(&self, table: &VariableTable) -> u32 {
        self.0.iter().map(|&(v, e)| e * table.degree(v)).sum()
    }

    /// Plain exponent sum, ignoring generator weights.
    pub fn total_exponent(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits off the power of `var`: returns `(e, m)` with `self = var^e * m`.
    pub fn split(&self, var: Var) -> (u32, Monomial) {
        match self.0.binary_search_by_key(&var, |&(v, _)| v) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let d = if j < other.0.len() && other.0[j].0 == v {
                j += 1;
                other.0[j - 1].1
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            } else {
                0
            };
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    /// Replaces each variable through `f`; `f` must be injective.
    pub fn rename(&self, mut f: impl FnMut(Var) -> Var) -> Monomial {
        let mut out: Vec<(Var, u32)> = self.0.iter().map(|&(v, e)| (f(v), e)).collect();
        out.sort_unstable_by_key(|&(v, _)| v);
        Monomial(out)
    }

    /// Graded-lex comparison: weighted degree first, then lex.
    pub fn cmp_grlex(&self, other: &Monomial, table: &VariableTable) -> Ordering {
        self.degree(table)
            .cmp(&other.degree(table))
            .then_with(|| self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            if a.0 != b.0 {
                // whoever has the earlier variable carries a positive exponent
                // where the other has zero
                return b.0.cmp(&a.0);
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
