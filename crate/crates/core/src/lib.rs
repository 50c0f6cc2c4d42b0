//! Gysin pushforwards for projective bundles `P(V) -> M` of any rank,
//! computed by torus-equivariant localization over the fixed points of the
//! fiber `CP^(r-1)` and returned as polynomials in the Chern classes of `V`.
//!
//! The pipeline is: expand the class in the fiber ring, restrict it to each
//! fixed point, sum over the fixed points against the equivariant Euler
//! classes, and rewrite the resulting symmetric polynomial in the roots as a
//! polynomial in the elementary symmetric functions, i.e. the Chern classes.
//! Two classical routes (the total Segre class and reduction modulo the
//! projective-bundle relation) cross-check every answer.

pub mod error;
pub mod expr;
pub mod gysin;
pub mod localization;
pub mod polyring;
pub mod ring;
pub mod symfun;

pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use gysin::{
    presentation_oracle, pushforward, segre_oracle, verify_classical, Check, ClassExpr, Outcome,
    PushforwardOptions, PushforwardResult, Strategy, VerificationReport,
};
pub use localization::{
    fixed_point_charts, localize, relation_check, FixedPointChart, LocalizationResult,
};
pub use polyring::{Monomial, Polynomial, Rational, Var, VariableTable};
pub use ring::{BundleRing, VarRole};
