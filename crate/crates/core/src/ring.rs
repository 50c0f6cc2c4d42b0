use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Var, VariableTable};

/// Generator layout for a rank-`r` bundle.
///
/// Registered in the order `u1..ur, x, y, q1..q(r-1), c1..cr`: the Chern
/// roots (equivariant parameters), the hyperplane class `x`, the
/// tautological class `y = -x`, the quotient-bundle classes and the Chern
/// classes of the bundle.
#[derive(Debug, Clone)]
pub struct BundleRing {
    rank: usize,
    table: Arc<VariableTable>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    Root(usize),
    X,
    Y,
    Quotient(usize),
    Chern(usize),
}

impl BundleRing {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        let mut entries: Vec<(String, u32)> = Vec::new();
        entries.extend((1..=rank).map(|i| (format!("u{i}"), 1)));
        entries.push(("x".into(), 1));
        entries.push(("y".into(), 1));
        entries.extend((1..rank).map(|i| (format!("q{i}"), i as u32)));
        entries.extend((1..=rank).map(|i| (format!("c{i}"), i as u32)));
        Ok(BundleRing {
            rank,
            table: VariableTable::new(entries)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    /// Chern root `u_i`, 1-based.
    pub fn u(&self, i: usize) -> Var {
        assert!((1..=self.rank).contains(&i), "u{i} out of range");
        Var(i - 1)
    }

    pub fn x(&self) -> Var {
        Var(self.rank)
    }

    pub fn y(&self) -> Var {
        Var(self.rank + 1)
    }

    /// Quotient class `q_i`, 1-based, `i < rank`.
    pub fn q(&self, i: usize) -> Var {
        assert!((1..self.rank).contains(&i), "q{i} out of range");
        Var(self.rank + 1 + i)
    }

    /// Chern class `c_i`, 1-based.
    pub fn c(&self, i: usize) -> Var {
        assert!((1..=self.rank).contains(&i), "c{i} out of range");
        Var(2 * self.rank + i)
    }

    pub fn roots(&self) -> Vec<Var> {
        (1..=self.rank).map(|i| self.u(i)).collect()
    }

    pub fn cherns(&self) -> Vec<Var> {
        (1..=self.rank).map(|i| self.c(i)).collect()
    }

    pub fn role(&self, v: Var) -> VarRole {
        let r = self.rank;
        match v.0 {
            i if i < r => VarRole::Root(i + 1),
            i if i == r => VarRole::X,
            i if i == r + 1 => VarRole::Y,
            i if i < 2 * r + 1 => VarRole::Quotient(i - r - 1),
            i => VarRole::Chern(i - 2 * r),
        }
    }

    pub fn var_poly(&self, v: Var) -> Polynomial {
        Polynomial::var(&self.table, v)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.table)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.table)
    }

    /// Total Chern class `1 + c1 + ... + cr`.
    pub fn total_chern(&self) -> Polynomial {
        self.cherns()
            .into_iter()
            .fold(self.one(), |acc, c| acc + self.var_poly(c))
    }

    /// Fails with a table mismatch unless `p` lives in this ring.
    pub fn check(&self, p: &Polynomial) -> Result<()> {
        p.with_table(&self.table).map(|_| ())
    }

    pub fn uses_only(&self, p: &Polynomial, allowed: impl Fn(VarRole) -> bool) -> Result<()> {
        self.check(p)?;
        match p.support().into_iter().find(|&v| !allowed(self.role(v))) {
            Some(v) => Err(Error::UnsupportedVariable(self.table.name(v).to_string())),
            None => Ok(()),
        }
    }
}
