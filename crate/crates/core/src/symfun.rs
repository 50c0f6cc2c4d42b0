//! Symmetric functions in the Chern roots: elementary and complete
//! homogeneous polynomials, the symmetric-group action on the roots, and the
//! rewrite of symmetric polynomials in terms of the Chern classes.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{substitute, Monomial, Polynomial, Substitution, Var, VariableTable};
use crate::ring::{BundleRing, VarRole};

/// A permutation of `{1..r}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation {
            images: (0..r).collect(),
        }
    }

    /// Swap of `i` and `j` (1-based).
    pub fn transposition(r: usize, i: usize, j: usize) -> Result<Self> {
        if !(1..=r).contains(&i) || !(1..=r).contains(&j) {
            return Err(Error::Domain(format!(
                "transposition ({i} {j}) outside 1..{r}"
            )));
        }
        let mut p = Self::identity(r);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// From 1-based images: `images[i-1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &i in images {
            if !(1..=r).contains(&i) || std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::Domain(format!(
                    "{images:?} is not a permutation of 1..{r}"
                )));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|i| i - 1).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// σ(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }
}

/// `e_k` of the given generators; `e_0 = 1`.
pub fn elementary_symmetric(
    table: &Arc<VariableTable>,
    k: usize,
    vars: &[Var],
) -> Result<Polynomial> {
    if k > vars.len() {
        return Err(Error::Domain(format!(
            "e_{k} requested in {} variables",
            vars.len()
        )));
    }
    Ok(elementary_all(table, vars).swap_remove(k))
}

/// `[e_0, e_1, ..., e_n]` of `n` generators, from the product of `(1 + t v)`.
pub fn elementary_all(table: &Arc<VariableTable>, vars: &[Var]) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::one(table)];
    for &v in vars {
        let vp = Polynomial::var(table, v);
        e.push(Polynomial::zero(table));
        for j in (1..e.len()).rev() {
            let add = &vp * &e[j - 1];
            e[j] = &e[j] + &add;
        }
    }
    e
}

/// `h_k`: the sum of all monomials of degree `k` in `vars`.
pub fn complete_homogeneous(table: &Arc<VariableTable>, k: usize, vars: &[Var]) -> Polynomial {
    // h[j] over the first n variables: h_j = h_j(prev) + v_n h_{j-1}
    let mut h = vec![Polynomial::zero(table); k + 1];
    h[0] = Polynomial::one(table);
    for &v in vars {
        let m = Monomial::var(v);
        for j in 1..=k {
            let add = h[j - 1].mul_monomial(&m);
            h[j] = &h[j] + &add;
        }
    }
    h.swap_remove(k)
}

/// `u_i -> u_σ(i)`; every other generator is fixed.
pub fn apply_permutation(
    ring: &BundleRing,
    p: &Polynomial,
    sigma: &Permutation,
) -> Result<Polynomial> {
    ring.check(p)?;
    if sigma.len() != ring.rank() {
        return Err(Error::Domain(format!(
            "permutation of {} letters acting at rank {}",
            sigma.len(),
            ring.rank()
        )));
    }
    Ok(p.rename_vars(|v| match ring.role(v) {
        VarRole::Root(i) => ring.u(sigma.apply(i)),
        _ => v,
    }))
}

/// Invariance under the adjacent transpositions `(i, i+1)`, which generate
/// the symmetric group.
pub fn is_symmetric(ring: &BundleRing, p: &Polynomial) -> bool {
    if ring.check(p).is_err() {
        return false;
    }
    (1..ring.rank()).all(|i| {
        let swapped = p.rename_vars(|v| {
            if v == ring.u(i) {
                ring.u(i + 1)
            } else if v == ring.u(i + 1) {
                ring.u(i)
            } else {
                v
            }
        });
        swapped == *p
    })
}

/// Rewrites a symmetric polynomial in `u_1..u_r` as a polynomial in the
/// Chern classes `c_i = e_i(u)`.
///
/// Leading-term subtraction: the graded-lex leading monomial of a symmetric
/// polynomial has a partition `λ` as exponent vector, and
/// `∏ e_i^(λ_i - λ_(i+1))` has that same leading monomial with coefficient 1.
pub fn reduce_to_elementary(ring: &BundleRing, p: &Polynomial) -> Result<Polynomial> {
    ring.uses_only(p, |role| matches!(role, VarRole::Root(_)))?;
    if !is_symmetric(ring, p) {
        return Err(Error::Symmetry(p.to_string()));
    }
    let r = ring.rank();
    let table = ring.table();
    let e = elementary_all(table, &ring.roots());
    let mut products: HashMap<Vec<u32>, Polynomial> = HashMap::new();
    let mut rest = p.clone();
    let mut out = ring.zero();
    while let Some((lead, coeff)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let lambda: Vec<u32> = (1..=r).map(|i| lead.exponent(ring.u(i))).collect();
        let powers: Vec<u32> = (0..r)
            .map(|i| lambda[i] - lambda.get(i + 1).copied().unwrap_or(0))
            .collect();
        let expansion = products.entry(powers.clone()).or_insert_with(|| {
            powers
                .iter()
                .enumerate()
                .fold(ring.one(), |acc, (i, &k)| acc * e[i + 1].pow(k))
        });
        rest = rest - expansion.scale(&coeff);
        let chern =
            Monomial::from_exponents(powers.iter().enumerate().map(|(i, &k)| (ring.c(i + 1), k)));
        out.add_term(chern, coeff);
    }
    Ok(out)
}

/// `c_i -> e_i(u_1..u_r)`, every other generator fixed.
pub fn expand_chern(ring: &BundleRing, p: &Polynomial) -> Result<Polynomial> {
    substitute(p, &chern_expansion(ring))
}

pub(crate) fn chern_expansion(ring: &BundleRing) -> Substitution {
    let table = ring.table();
    let e = elementary_all(table, &ring.roots());
    let mut s = Substitution::identity(table);
    for i in 1..=ring.rank() {
        s.set(ring.c(i), e[i].clone()).expect("same table");
    }
    s
}
