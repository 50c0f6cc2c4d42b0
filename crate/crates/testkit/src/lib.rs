//! Test-only oracles that recompute localization results without the
//! production path: restrictions built by hand from subset enumeration,
//! fractions added pairwise over least common denominators, and a general
//! multivariate long division in place of synthetic division by linear
//! factors.

use std::collections::BTreeMap;

use num_traits::One;
use pushkit_core::{BundleRing, Monomial, Polynomial, Rational, Var, VarRole};
use rand::Rng;

pub mod random;

/// `e_k` of `vars` by summing over all `k`-subsets.
pub fn elementary_by_subsets(ring: &BundleRing, k: usize, vars: &[Var]) -> Polynomial {
    fn go(k: usize, vars: &[Var], chosen: &mut Vec<Var>, out: &mut Polynomial) {
        if chosen.len() == k {
            out.add_term(
                Monomial::from_exponents(chosen.iter().map(|&v| (v, 1))),
                Rational::one(),
            );
            return;
        }
        for (i, &v) in vars.iter().enumerate() {
            chosen.push(v);
            go(k, &vars[i + 1..], chosen, out);
            chosen.pop();
        }
    }
    let mut out = ring.zero();
    go(k, vars, &mut Vec::new(), &mut out);
    out
}

/// `h_k` of `vars` by enumerating exponent vectors.
pub fn complete_by_enumeration(ring: &BundleRing, k: u32, vars: &[Var]) -> Polynomial {
    fn go(k: u32, vars: &[Var], acc: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        match vars {
            [] => {
                if k == 0 {
                    out.push(Monomial::from_exponents(acc.iter().copied()));
                }
            }
            [v, rest @ ..] => {
                for e in 0..=k {
                    acc.push((*v, e));
                    go(k - e, rest, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut monomials = Vec::new();
    go(k, vars, &mut Vec::new(), &mut monomials);
    Polynomial::from_terms(
        ring.table(),
        monomials.into_iter().map(|m| (m, Rational::one())),
    )
}

/// Image of one generator at fixed point `j` (1-based), built from scratch.
fn image_at(ring: &BundleRing, j: usize, v: Var) -> Polynomial {
    let roots = ring.roots();
    let others: Vec<Var> = roots.iter().copied().filter(|&u| u != ring.u(j)).collect();
    match ring.role(v) {
        VarRole::Root(_) => ring.var_poly(v),
        VarRole::Y => ring.var_poly(ring.u(j)),
        VarRole::X => -ring.var_poly(ring.u(j)),
        VarRole::Quotient(i) => elementary_by_subsets(ring, i, &others),
        VarRole::Chern(i) => elementary_by_subsets(ring, i, &roots),
    }
}

/// Restriction of `phi` to fixed point `j`, term by term.
pub fn restrict_by_hand(ring: &BundleRing, phi: &Polynomial, j: usize) -> Polynomial {
    let mut out = ring.zero();
    for (m, c) in phi.terms() {
        let mut t = Polynomial::constant(ring.table(), c.clone());
        for (v, e) in m.iter() {
            for _ in 0..e {
                t = &t * &image_at(ring, j, v);
            }
        }
        out = out + t;
    }
    out
}

/// `c_i -> e_i(u)` by subsets, everything else fixed.
pub fn expand_chern_by_hand(ring: &BundleRing, p: &Polynomial) -> Polynomial {
    let roots = ring.roots();
    let mut out = ring.zero();
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(ring.table(), c.clone());
        for (v, e) in m.iter() {
            let image = match ring.role(v) {
                VarRole::Chern(i) => elementary_by_subsets(ring, i, &roots),
                _ => ring.var_poly(v),
            };
            for _ in 0..e {
                t = &t * &image;
            }
        }
        out = out + t;
    }
    out
}

/// A fraction whose denominator is a product of root differences, kept as
/// a multiset of `(a, b)` pairs with `a < b`, meaning `u_a - u_b`.
#[derive(Clone, Debug)]
struct Fraction {
    numerator: Polynomial,
    denominator: BTreeMap<(usize, usize), u32>,
}

fn factor_poly(ring: &BundleRing, (a, b): (usize, usize)) -> Polynomial {
    ring.var_poly(ring.u(a)) - ring.var_poly(ring.u(b))
}

fn product_of(ring: &BundleRing, factors: &BTreeMap<(usize, usize), u32>) -> Polynomial {
    let mut acc = ring.one();
    for (&f, &n) in factors {
        for _ in 0..n {
            acc = &acc * &factor_poly(ring, f);
        }
    }
    acc
}

impl Fraction {
    /// `numerator / ∏_{i≠j} (u_i - u_j)`, reoriented so every pair is increasing.
    fn at_fixed_point(ring: &BundleRing, numerator: Polynomial, j: usize) -> Fraction {
        let mut numerator = numerator;
        let mut denominator = BTreeMap::new();
        for i in (1..=ring.rank()).filter(|&i| i != j) {
            let pair = if i < j {
                (i, j)
            } else {
                numerator = -numerator;
                (j, i)
            };
            *denominator.entry(pair).or_insert(0) += 1;
        }
        Fraction {
            numerator,
            denominator,
        }
    }

    fn add(&self, other: &Fraction, ring: &BundleRing) -> Fraction {
        let mut lcm = self.denominator.clone();
        for (&f, &n) in &other.denominator {
            let slot = lcm.entry(f).or_insert(0);
            *slot = (*slot).max(n);
        }
        let missing = |d: &BTreeMap<(usize, usize), u32>| -> BTreeMap<(usize, usize), u32> {
            lcm.iter()
                .map(|(&f, &n)| (f, n - d.get(&f).copied().unwrap_or(0)))
                .filter(|&(_, n)| n > 0)
                .collect()
        };
        let numerator = &self.numerator * &product_of(ring, &missing(&self.denominator))
            + &other.numerator * &product_of(ring, &missing(&other.denominator));
        Fraction {
            numerator,
            denominator: lcm,
        }
    }
}

/// Multivariate division by a single polynomial in lex order; returns
/// `(quotient, remainder)`.
pub fn long_division(p: &Polynomial, d: &Polynomial) -> (Polynomial, Polynomial) {
    let table = p.table();
    let (lead_m, lead_c) = d
        .terms()
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("nonzero divisor");
    let mut rest = p.clone();
    let mut quotient = Polynomial::zero(table);
    let mut remainder = Polynomial::zero(table);
    while let Some((m, c)) = rest
        .terms()
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        match m.checked_div(&lead_m) {
            Some(q) => {
                let coeff = &c / &lead_c;
                quotient.add_term(q.clone(), coeff.clone());
                rest = rest - Polynomial::term(table, coeff, q) * d;
            }
            None => {
                remainder.add_term(m.clone(), c.clone());
                rest = rest - Polynomial::term(table, c, m);
            }
        }
    }
    (quotient, remainder)
}

/// `Σ_j restrict_j(phi) / ∏_{i≠j}(u_i - u_j)` by pairwise addition over
/// least common denominators, then one long division. Returns `None` when
/// the sum is not a polynomial.
pub fn brute_force_localize(ring: &BundleRing, phi: &Polynomial) -> Option<Polynomial> {
    let fractions: Vec<Fraction> = (1..=ring.rank())
        .map(|j| Fraction::at_fixed_point(ring, restrict_by_hand(ring, phi, j), j))
        .collect();
    let sum = fractions
        .iter()
        .skip(1)
        .fold(fractions[0].clone(), |acc, f| acc.add(f, ring));
    let (q, r) = long_division(&sum.numerator, &product_of(ring, &sum.denominator));
    r.is_zero().then_some(q)
}

/// Uniform random rational `n/d` with `|n| <= 9`, `1 <= d <= 4`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    Rational::new(n.into(), d.into())
}
