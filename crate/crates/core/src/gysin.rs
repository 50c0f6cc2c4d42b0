//! The pushforward `f_*: H*(P(V)) -> H*(M)` and the classical formulas it
//! is checked against.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::localization::{relation_check, LocalizationResult, Localizer};
use crate::polyring::{
    grade, series_inverse, substitute, truncate, Monomial, Polynomial, Rational, Substitution,
};
use crate::ring::{BundleRing, VarRole};
use crate::symfun::{chern_expansion, expand_chern, is_symmetric, reduce_to_elementary};

/// A class on `P(V)`: a polynomial in the fiber generators `x, y, q_i` with
/// coefficients in the Chern classes `c_i`, expanded through `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    payload: Polynomial,
    cutoff: Option<u32>,
}

impl ClassExpr {
    pub fn new(ring: &BundleRing, payload: Polynomial, cutoff: Option<u32>) -> Result<Self> {
        ring.uses_only(&payload, |role| !matches!(role, VarRole::Root(_)))?;
        let support = payload.support();
        if support.contains(&ring.x()) && support.contains(&ring.y()) {
            return Err(Error::Domain(
                "x and y both occur; rewrite one of them (y = -x)".into(),
            ));
        }
        if let (Some(d), Some(deg)) = (cutoff, payload.degree()) {
            if deg > d {
                return Err(Error::Domain(format!(
                    "class has terms of degree {deg} above its cutoff {d}"
                )));
            }
        }
        Ok(ClassExpr { payload, cutoff })
    }

    pub fn payload(&self) -> &Polynomial {
        &self.payload
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Push forward each fiber monomial once and multiply the Chern-class
    /// coefficients back in afterwards.
    #[default]
    ProjectionFormula,
    /// Expand the Chern classes into roots and localize the whole class.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushforwardOptions {
    /// Run the oracle cross-checks. The invariance checks always run.
    pub verify: bool,
    pub strategy: Strategy,
}

impl Default for PushforwardOptions {
    fn default() -> Self {
        PushforwardOptions {
            verify: true,
            strategy: Strategy::ProjectionFormula,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

impl Check {
    fn compare(name: impl Into<String>, got: &Polynomial, want: &Polynomial) -> Check {
        let pass = got == want;
        Check {
            name: name.into(),
            outcome: if pass { Outcome::Pass } else { Outcome::Fail },
            detail: (!pass).then(|| format!("got {got}, expected {want}")),
        }
    }

    fn flag(name: impl Into<String>, pass: bool, detail: impl FnOnce() -> String) -> Check {
        Check {
            name: name.into(),
            outcome: if pass { Outcome::Pass } else { Outcome::Fail },
            detail: (!pass).then(detail),
        }
    }

    fn skipped(name: impl Into<String>, why: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            outcome: Outcome::Skipped,
            detail: Some(why.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardResult {
    pub chern_form: Polynomial,
    /// The symmetric polynomial in the roots before rewriting in Chern classes.
    pub u_form: Polynomial,
    pub valid_through: Option<u32>,
    pub checks: Vec<Check>,
}

impl PushforwardResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }
}

/// `x -> -y`, everything else fixed.
fn x_to_minus_y(ring: &BundleRing) -> Substitution {
    let mut s = Substitution::identity(ring.table());
    s.set(ring.x(), -ring.var_poly(ring.y()))
        .expect("same table");
    s
}

/// `y -> -x`, everything else fixed.
pub fn y_to_minus_x(ring: &BundleRing) -> Substitution {
    let mut s = Substitution::identity(ring.table());
    s.set(ring.y(), -ring.var_poly(ring.x()))
        .expect("same table");
    s
}

fn fiber_shift(ring: &BundleRing, cutoff: Option<u32>) -> Result<Option<u32>> {
    let shift = (ring.rank() - 1) as u32;
    match cutoff {
        Some(d) if d < shift => Err(Error::Domain(format!(
            "cutoff {d} is below the fiber dimension {shift}"
        ))),
        Some(d) => Ok(Some(d - shift)),
        None => Ok(None),
    }
}

fn truncate_opt(p: &Polynomial, cutoff: Option<u32>) -> Polynomial {
    match cutoff {
        Some(d) => truncate(p, d),
        None => p.clone(),
    }
}

fn mul_opt(a: &Polynomial, b: &Polynomial, cutoff: Option<u32>) -> Polynomial {
    match cutoff {
        Some(d) => a.mul_truncated(b, d).expect("same table"),
        None => a * b,
    }
}

/// Computes `f_*` of a class by localization and rewrites the answer in the
/// Chern classes of `V`.
pub fn pushforward(
    ring: &BundleRing,
    expr: &ClassExpr,
    options: PushforwardOptions,
) -> Result<PushforwardResult> {
    ring.check(expr.payload())?;
    let valid_through = fiber_shift(ring, expr.cutoff())?;
    let in_y = substitute(expr.payload(), &x_to_minus_y(ring))?;
    let localizer = Localizer::new(ring)?;

    let (chern_form, u_form) = match options.strategy {
        Strategy::ProjectionFormula => push_by_projection(ring, &localizer, &in_y, valid_through)?,
        Strategy::Direct => {
            let phi = substitute(&in_y, &chern_expansion(ring))?;
            let LocalizationResult { value, .. } = localizer.localize(&phi, expr.cutoff())?;
            (reduce_to_elementary(ring, &value)?, value)
        }
    };

    let mut checks = vec![
        Check::flag("weyl-invariance", is_symmetric(ring, &u_form), || {
            format!("u-form {u_form} is not symmetric")
        }),
        Check::compare(
            "chern-expansion",
            &truncate_opt(&expand_chern(ring, &chern_form)?, valid_through),
            &u_form,
        ),
    ];
    if options.verify {
        let in_x = substitute(expr.payload(), &y_to_minus_x(ring))?;
        let name = "presentation-oracle";
        let in_x = ClassExpr::new(ring, in_x, expr.cutoff())?;
        checks.push(match presentation_oracle(ring, &in_x) {
            Ok(oracle) => Check::compare(name, &chern_form, &oracle),
            Err(Error::UnsupportedVariable(v)) => {
                Check::skipped(name, format!("class involves {v}"))
            }
            Err(e) => return Err(e),
        });
    }
    Ok(PushforwardResult {
        chern_form,
        u_form,
        valid_through,
        checks,
    })
}

/// `f_*(g(c) · m) = g(c) · f_*(m)` for each fiber monomial `m`.
fn push_by_projection(
    ring: &BundleRing,
    localizer: &Localizer,
    in_y: &Polynomial,
    valid_through: Option<u32>,
) -> Result<(Polynomial, Polynomial)> {
    let mut groups: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in in_y.terms() {
        let (fiber, base): (Vec<_>, Vec<_>) = m
            .iter()
            .partition(|&(v, _)| !matches!(ring.role(v), VarRole::Chern(_)));
        groups
            .entry(Monomial::from_exponents(fiber))
            .or_insert_with(|| ring.zero())
            .add_term(Monomial::from_exponents(base), c.clone());
    }
    let expansion = chern_expansion(ring);
    let pieces = groups
        .into_par_iter()
        .map(|(fiber, base)| -> Result<(Polynomial, Polynomial)> {
            let fiber_class = Polynomial::term(ring.table(), Rational::one(), fiber);
            let pushed = localizer.localize(&fiber_class, None)?.value;
            if pushed.is_zero() {
                return Ok((ring.zero(), ring.zero()));
            }
            let chern = reduce_to_elementary(ring, &pushed)?;
            let base_roots = substitute(&base, &expansion)?;
            Ok((
                mul_opt(&base, &chern, valid_through),
                mul_opt(&base_roots, &pushed, valid_through),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pieces
        .into_iter()
        .fold((ring.zero(), ring.zero()), |(c, u), (dc, du)| {
            (c + dc, u + du)
        }))
}

/// The total Segre class `1 / c(V)` through degree `cutoff`.
pub fn segre_oracle(ring: &BundleRing, cutoff: u32) -> Polynomial {
    series_inverse(&ring.total_chern(), cutoff).expect("total Chern class is a unit")
}

/// `f_*` computed from the presentation `H*(P(V)) = H*(M)[x]/(x^r + c_1 x^(r-1) + ... + c_r)`:
/// reduce in `x` below degree `r` and read off the coefficient of `x^(r-1)`.
pub fn presentation_oracle(ring: &BundleRing, expr: &ClassExpr) -> Result<Polynomial> {
    let payload = expr.payload();
    ring.uses_only(payload, |role| {
        matches!(role, VarRole::X | VarRole::Chern(_))
    })?;
    let r = ring.rank() as u32;
    let mut coeffs: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (m, c) in payload.terms() {
        let (k, rest) = m.split(ring.x());
        coeffs
            .entry(k)
            .or_insert_with(|| ring.zero())
            .add_term(rest, c.clone());
    }
    while let Some((&n, _)) = coeffs.iter().next_back() {
        if n < r {
            break;
        }
        let a = coeffs.remove(&n).expect("present");
        // x^n = x^(n-r) x^r ≡ -x^(n-r) (c_1 x^(r-1) + ... + c_r)
        for i in 1..=r {
            let term = &a * &ring.var_poly(ring.c(i as usize));
            let slot = coeffs.entry(n - i).or_insert_with(|| ring.zero());
            *slot = &*slot - &term;
        }
    }
    let top = coeffs.remove(&(r - 1)).unwrap_or_else(|| ring.zero());
    Ok(truncate_opt(&top, fiber_shift(ring, expr.cutoff())?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub rank: usize,
    pub cutoff: u32,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }
}

/// Runs the classical identities at rank `r` through degree `cutoff`:
/// the Segre formula degree by degree, agreement with the presentation on
/// every `x^k`, the restricted Whitney relation, and the root-product form
/// of `π_*(1/(1+y))`.
pub fn verify_classical(rank: usize, cutoff: u32) -> Result<VerificationReport> {
    let ring = BundleRing::new(rank)?;
    let valid = fiber_shift(&ring, Some(cutoff))?.expect("finite cutoff");
    let x = ring.var_poly(ring.x());
    let y = ring.var_poly(ring.y());
    let fast = PushforwardOptions {
        verify: false,
        ..Default::default()
    };
    let mut checks = Vec::new();

    let geometric = series_inverse(&(ring.one() - &x), cutoff)?;
    let pushed = pushforward(
        &ring,
        &ClassExpr::new(&ring, geometric, Some(cutoff))?,
        fast,
    )?;
    let segre = segre_oracle(&ring, valid);
    for d in 0..=valid {
        checks.push(Check::compare(
            format!("segre-formula[degree {d}]"),
            &grade(&pushed.chern_form, d),
            &grade(&segre, d),
        ));
    }

    let mut presentation = (0..=cutoff)
        .into_par_iter()
        .map(|k| -> Result<Check> {
            let e = ClassExpr::new(&ring, x.pow(k), Some(cutoff))?;
            let via_localization = pushforward(&ring, &e, fast)?.chern_form;
            let via_presentation = presentation_oracle(&ring, &e)?;
            Ok(Check::compare(
                format!("presentation[x^{k}]"),
                &via_localization,
                &via_presentation,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    checks.append(&mut presentation);

    checks.push(Check::flag(
        "whitney-relation",
        relation_check(&ring),
        || "restricted relation does not vanish at some fixed point".into(),
    ));

    let inverse = series_inverse(&(ring.one() + &y), cutoff)?;
    let u_form = Localizer::new(&ring)?
        .localize(&inverse, Some(cutoff))?
        .value;
    let root_product = ring.roots().into_iter().try_fold(ring.one(), |acc, u| {
        let inv = series_inverse(&(ring.one() + ring.var_poly(u)), valid)?;
        acc.mul_truncated(&inv, valid)
    })?;
    checks.push(Check::compare(
        "root-product[u-form]",
        &u_form,
        &root_product,
    ));

    Ok(VerificationReport {
        rank,
        cutoff,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn class(ring: &BundleRing, p: Polynomial, d: u32) -> ClassExpr {
        ClassExpr::new(ring, p, Some(d)).unwrap()
    }

    #[test]
    fn geometric_series_gives_segre_class() {
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let phi = series_inverse(&(ring.one() - &x), 6).unwrap();
        let out = pushforward(&ring, &class(&ring, phi, 6), Default::default()).unwrap();
        assert_eq!(out.valid_through, Some(4));
        assert_eq!(out.chern_form, segre_oracle(&ring, 4));
        assert!(out.passed(), "{:?}", out.checks);
    }

    #[test]
    fn low_powers() {
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let push = |p: Polynomial| {
            pushforward(&ring, &class(&ring, p, 6), Default::default())
                .unwrap()
                .chern_form
        };
        assert_eq!(push(&x * &x), ring.one());
        assert!(push(x.clone()).is_zero());
        assert_eq!(push(x.pow(3)), -ring.var_poly(ring.c(1)));
    }

    #[test]
    fn segre_oracle_examples() {
        let ring = BundleRing::new(3).unwrap();
        let c1 = ring.var_poly(ring.c(1));
        assert_eq!(segre_oracle(&ring, 1), ring.one() - &c1);
        assert_eq!(segre_oracle(&ring, 0), ring.one());
        assert_eq!(segre_oracle(&BundleRing::new(5).unwrap(), 0).len(), 1);
    }

    #[test]
    fn presentation_oracle_examples() {
        for r in 1..=5 {
            let ring = BundleRing::new(r).unwrap();
            let x = ring.var_poly(ring.x());
            let e = class(&ring, x.pow((r - 1) as u32), 8);
            assert_eq!(presentation_oracle(&ring, &e).unwrap(), ring.one());
        }
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let c2x = ring.var_poly(ring.c(2)) * &x;
        assert!(presentation_oracle(&ring, &class(&ring, c2x, 6))
            .unwrap()
            .is_zero());
        assert_eq!(
            presentation_oracle(&ring, &class(&ring, x.pow(3), 6)).unwrap(),
            -ring.var_poly(ring.c(1))
        );
        let y = ring.var_poly(ring.y());
        assert_eq!(
            presentation_oracle(&ring, &class(&ring, y, 6)),
            Err(Error::UnsupportedVariable("y".into()))
        );
        let q = ring.var_poly(ring.q(1));
        assert_eq!(
            presentation_oracle(&ring, &class(&ring, q, 6)),
            Err(Error::UnsupportedVariable("q1".into()))
        );
    }

    #[test]
    fn class_expr_validation() {
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let y = ring.var_poly(ring.y());
        assert!(ClassExpr::new(&ring, &x + &y, None).is_err());
        assert!(ClassExpr::new(&ring, x.pow(4), Some(3)).is_err());
        assert!(matches!(
            ClassExpr::new(&ring, ring.var_poly(ring.u(1)), None),
            Err(Error::UnsupportedVariable(_))
        ));
        let other = BundleRing::new(2).unwrap();
        assert_eq!(
            ClassExpr::new(&ring, other.one(), None),
            Err(Error::TableMismatch)
        );
    }

    #[test]
    fn quotient_classes_push_forward() {
        // (1+y)(1+q1+q2) = f^*c(V), so its pushforward vanishes like f_*(1)
        let ring = BundleRing::new(3).unwrap();
        let y = ring.var_poly(ring.y());
        let q = ring.one() + ring.var_poly(ring.q(1)) + ring.var_poly(ring.q(2));
        let lhs = pushforward(
            &ring,
            &class(&ring, (ring.one() + &y) * &q, 6),
            Default::default(),
        )
        .unwrap();
        assert!(lhs.chern_form.is_zero());
        assert!(lhs.checks.iter().any(|c| c.outcome == Outcome::Skipped));
        // y^2 (1+y)(1+q1+q2) = y^2 c(V) pushes forward to c(V)
        let lhs2 = pushforward(
            &ring,
            &class(&ring, &y * &y * (ring.one() + &y) * &q, 6),
            Default::default(),
        )
        .unwrap();
        let rhs2 = pushforward(
            &ring,
            &class(&ring, &y * &y * ring.total_chern(), 6),
            Default::default(),
        )
        .unwrap();
        assert_eq!(lhs2.chern_form, rhs2.chern_form);
        assert_eq!(rhs2.chern_form, truncate(&ring.total_chern(), 4));
    }

    #[test]
    fn strategies_agree() {
        let ring = BundleRing::new(3).unwrap();
        let x = ring.var_poly(ring.x());
        let c1 = ring.var_poly(ring.c(1));
        let phi = &c1 * x.pow(3) + Polynomial::constant(ring.table(), rat(3, 2)) * x.pow(2)
            - ring.var_poly(ring.c(2)) * &x;
        let e = class(&ring, phi, 5);
        let a = pushforward(&ring, &e, Default::default()).unwrap();
        let b = pushforward(
            &ring,
            &e,
            PushforwardOptions {
                strategy: Strategy::Direct,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.chern_form, b.chern_form);
        assert_eq!(a.u_form, b.u_form);
    }

    #[test]
    fn verify_small_ranks() {
        for (r, d) in [(1, 4), (2, 5), (3, 6)] {
            let report = verify_classical(r, d).unwrap();
            assert!(
                report.passed(),
                "rank {r}: {:?}",
                report.failures().collect::<Vec<_>>()
            );
        }
        assert!(verify_classical(4, 2).is_err());
        assert!(verify_classical(0, 2).is_err());
    }
}
