//! Torus-fixed-point data of the fiber `CP^(r-1)` and the localization sum
//! computing the equivariant pushforward to a point.
//!
//! The fixed points `p_1..p_r` are the coordinate lines. At `p_j` the
//! tautological line is the weight-`u_j` representation, so `y ↦ u_j` and
//! `x = -y ↦ -u_j`; the quotient bundle is the sum of the remaining weights,
//! so `q_i ↦ e_i(u without u_j)`; and the tangent space `Hom(S, Q)` has
//! weights `u_i - u_j`, giving the Euler class `∏_{i≠j} (u_i - u_j)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyring::{divide_by_difference, substitute, truncate, Polynomial, Substitution, Var};
use crate::ring::BundleRing;
use crate::symfun::{elementary_all, is_symmetric};

#[derive(Debug, Clone)]
pub struct FixedPointChart {
    /// 1-based fixed point index `j`.
    pub index: usize,
    pub restriction: Substitution,
    pub euler: Polynomial,
    /// The linear factors `(u_i, u_j)`, meaning `u_i - u_j`, whose product is `euler`.
    pub euler_factors: Vec<(Var, Var)>,
}

impl FixedPointChart {
    pub fn restrict(&self, p: &Polynomial) -> Result<Polynomial> {
        substitute(p, &self.restriction)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationResult {
    pub value: Polynomial,
    /// Degree through which `value` is exact; `None` means exact in every degree.
    pub valid_through: Option<u32>,
}

pub fn fixed_point_charts(ring: &BundleRing) -> Vec<FixedPointChart> {
    let r = ring.rank();
    let table = ring.table();
    let roots = ring.roots();
    let total = elementary_all(table, &roots);
    (1..=r)
        .map(|j| {
            let others: Vec<Var> = roots.iter().copied().filter(|&v| v != ring.u(j)).collect();
            let quotient = elementary_all(table, &others);
            let uj = ring.var_poly(ring.u(j));

            let mut s = Substitution::identity(table);
            s.set(ring.y(), uj.clone()).expect("same table");
            s.set(ring.x(), -&uj).expect("same table");
            for i in 1..r {
                s.set(ring.q(i), quotient[i].clone()).expect("same table");
            }
            for i in 1..=r {
                s.set(ring.c(i), total[i].clone()).expect("same table");
            }

            let euler_factors: Vec<(Var, Var)> = others.iter().map(|&ui| (ui, ring.u(j))).collect();
            let euler = euler_factors.iter().fold(ring.one(), |acc, &(a, b)| {
                acc * (ring.var_poly(a) - ring.var_poly(b))
            });
            FixedPointChart {
                index: j,
                restriction: s,
                euler,
                euler_factors,
            }
        })
        .collect()
}

/// Precomputed fixed-point data for one rank: the charts, the Vandermonde
/// common denominator `∏_{a<b} (u_a - u_b)` and each chart's cofactor
/// `V / euler_j`.
#[derive(Debug, Clone)]
pub struct Localizer {
    ring: BundleRing,
    charts: Vec<FixedPointChart>,
    vandermonde_factors: Vec<(Var, Var)>,
    cofactors: Vec<Polynomial>,
}

impl Localizer {
    pub fn new(ring: &BundleRing) -> Result<Self> {
        let charts = fixed_point_charts(ring);
        let r = ring.rank();
        let vandermonde_factors: Vec<(Var, Var)> = (1..=r)
            .flat_map(|a| (a + 1..=r).map(move |b| (a, b)))
            .map(|(a, b)| (ring.u(a), ring.u(b)))
            .collect();
        let vandermonde = vandermonde_factors.iter().fold(ring.one(), |acc, &(a, b)| {
            acc * (ring.var_poly(a) - ring.var_poly(b))
        });
        // Dividing by each oriented factor u_i - u_j picks up the sign of any
        // reversed pair; a wrong sign would leave a nonzero remainder.
        let cofactors = charts
            .iter()
            .map(|chart| {
                chart
                    .euler_factors
                    .iter()
                    .try_fold(vandermonde.clone(), |acc, &(a, b)| {
                        divide_by_difference(&acc, a, b).ok_or_else(|| {
                            Error::LocalizationIntegrality(format!(
                                "Euler factor {} - {} does not divide the Vandermonde product",
                                ring.table().name(a),
                                ring.table().name(b)
                            ))
                        })
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Localizer {
            ring: ring.clone(),
            charts,
            vandermonde_factors,
            cofactors,
        })
    }

    pub fn ring(&self) -> &BundleRing {
        &self.ring
    }

    pub fn charts(&self) -> &[FixedPointChart] {
        &self.charts
    }

    pub fn vandermonde(&self) -> Polynomial {
        self.vandermonde_factors
            .iter()
            .fold(self.ring.one(), |acc, &(a, b)| {
                acc * (self.ring.var_poly(a) - self.ring.var_poly(b))
            })
    }

    /// `Σ_j restrict_j(φ) / euler_j`, exact through `cutoff - (r - 1)`.
    pub fn localize(&self, phi: &Polynomial, cutoff: Option<u32>) -> Result<LocalizationResult> {
        let ring = &self.ring;
        ring.check(phi)?;
        let shift = (ring.rank() - 1) as u32;
        let valid_through = match cutoff {
            Some(d) if d < shift => {
                return Err(Error::Domain(format!(
                    "cutoff {d} is below the fiber dimension {shift}"
                )))
            }
            Some(d) => Some(d - shift),
            None => None,
        };
        let phi = match cutoff {
            Some(d) => truncate(phi, d),
            None => phi.clone(),
        };

        let numerators = self
            .charts
            .par_iter()
            .zip(self.cofactors.par_iter())
            .map(|(chart, cofactor)| Ok(&chart.restrict(&phi)? * cofactor))
            .collect::<Result<Vec<_>>>()?;
        let numerator = numerators.into_iter().fold(ring.zero(), |acc, n| acc + n);

        let mut value = numerator;
        for &(a, b) in &self.vandermonde_factors {
            value = divide_by_difference(&value, a, b).ok_or_else(|| {
                Error::LocalizationIntegrality(format!(
                    "nonzero remainder dividing by {} - {} while localizing {}",
                    ring.table().name(a),
                    ring.table().name(b),
                    phi
                ))
            })?;
        }
        if let Some(v) = valid_through {
            value = truncate(&value, v);
        }
        if !is_symmetric(ring, &value) {
            return Err(Error::Symmetry(value.to_string()));
        }
        Ok(LocalizationResult {
            value,
            valid_through,
        })
    }
}

/// One-shot form of [`Localizer::localize`].
pub fn localize(
    ring: &BundleRing,
    phi: &Polynomial,
    cutoff: Option<u32>,
) -> Result<LocalizationResult> {
    Localizer::new(ring)?.localize(phi, cutoff)
}

/// Checks at every fixed point that `(1 + y)(1 + q_1 + ... + q_(r-1))`
/// restricts to `∏ (1 + u_i)`, and so does the total Chern class.
pub fn relation_check(ring: &BundleRing) -> bool {
    let lhs = (ring.one() + ring.var_poly(ring.y()))
        * (1..ring.rank()).fold(ring.one(), |acc, i| acc + ring.var_poly(ring.q(i)));
    let whitney = ring
        .roots()
        .into_iter()
        .fold(ring.one(), |acc, u| acc * (ring.one() + ring.var_poly(u)));
    let chern = ring.total_chern();
    fixed_point_charts(ring).iter().all(|chart| {
        let restricted = chart.restrict(&lhs).ok();
        let base = chart.restrict(&chern).ok();
        restricted.as_ref() == Some(&whitney) && base.as_ref() == Some(&whitney)
    })
}
