//! Seeded random classes for property suites.

use pushkit_core::{BundleRing, Monomial, Polynomial, Var};
use rand::Rng;

use crate::small_rational;

/// A random monomial in `vars` of weighted degree at most `max_degree`.
fn random_monomial<R: Rng>(
    rng: &mut R,
    ring: &BundleRing,
    vars: &[Var],
    max_degree: u32,
) -> Monomial {
    let table = ring.table();
    let target = rng.gen_range(0..=max_degree);
    let mut exps = Vec::new();
    let mut degree = 0;
    for _ in 0..8 {
        if vars.is_empty() {
            break;
        }
        let v = vars[rng.gen_range(0..vars.len())];
        let w = table.degree(v);
        if degree + w <= target {
            exps.push((v, 1));
            degree += w;
        }
    }
    Monomial::from_exponents(exps)
}

/// Random polynomial with at most `max_terms` terms over `vars`, every
/// term of weighted degree at most `max_degree`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    ring: &BundleRing,
    vars: &[Var],
    max_terms: usize,
    max_degree: u32,
) -> Polynomial {
    let n = rng.gen_range(1..=max_terms);
    Polynomial::from_terms(
        ring.table(),
        (0..n).map(|_| {
            (
                random_monomial(rng, ring, vars, max_degree),
                small_rational(rng),
            )
        }),
    )
}

/// A polynomial in `x` with Chern-class coefficients.
pub fn random_x_class<R: Rng>(
    rng: &mut R,
    ring: &BundleRing,
    max_terms: usize,
    max_degree: u32,
) -> Polynomial {
    let mut vars = vec![ring.x(), ring.x(), ring.x()];
    vars.extend(ring.cherns());
    random_poly(rng, ring, &vars, max_terms, max_degree)
}

/// A polynomial in `y` and the quotient classes `q_i`.
pub fn random_fiber_class<R: Rng>(
    rng: &mut R,
    ring: &BundleRing,
    max_terms: usize,
    max_degree: u32,
) -> Polynomial {
    let mut vars = vec![ring.y(), ring.y()];
    vars.extend((1..ring.rank()).map(|i| ring.q(i)));
    random_poly(rng, ring, &vars, max_terms, max_degree)
}

/// A polynomial in the Chern classes only.
pub fn random_chern_poly<R: Rng>(
    rng: &mut R,
    ring: &BundleRing,
    max_terms: usize,
    max_degree: u32,
) -> Polynomial {
    random_poly(rng, ring, &ring.cherns(), max_terms, max_degree)
}
