//! Exact-arithmetic kernel for computable orders on lattices, Laurent
//! polynomial rings and free metabelian groups.
//!
//! The crate is organized around a handful of interlocking pieces:
//!
//! * [`laurent`] — sparse multivariate Laurent polynomials over the integers,
//!   plus the dense univariate integer/rational polynomials used internally.
//! * [`realalg`] — real algebraic numbers as minimal polynomial + isolating
//!   interval, with exact sign determination and arithmetic in the field
//!   generated by one such number.
//! * [`latord`] — total orders on lattices given by towers of linear forms,
//!   comparison indices (exact, limit-based and bracketing) and the induced
//!   Archimedean relations.
//! * [`zxord`] — the classification engine for shift-invariant orders on the
//!   univariate Laurent ring: sign decision, convex subgroup chains,
//!   codification probing and order perturbation.
//! * [`magnus`] — free metabelian groups through the Magnus embedding into a
//!   wreath product of free abelian groups: word evaluation, normal forms and
//!   commutator calculus.
//! * [`biorder`] — bi-invariant orders on the free metabelian group built from
//!   a quotient tower and stacked module-invariant stages, including the
//!   non-convex construction in rank at least 3.
//! * [`conelang`] — the pushdown recognizer for the context-free positive-cone
//!   language of the rank-2 group, with soundness and completeness probes.
//! * [`harness`] — seeded samplers, violation reports and the shard runner
//!   that distributes randomized suites over a worker pool.

pub mod biorder;
pub mod config;
pub mod conelang;
pub mod harness;
pub mod latord;
pub mod laurent;
pub mod magnus;
pub mod presets;
pub mod realalg;
pub mod suites;
pub mod zxord;

mod sign;

pub use sign::Sign;

use thiserror::Error;

/// Rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer coefficient.
pub type Int = num_bigint::BigInt;

/// Errors shared by every module of the kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, got {got}")]
    VarCountMismatch { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("expected a univariate polynomial, got {got} variables")]
    NotUnivariate { got: usize },
    #[error("polynomial vanishes at an interval endpoint")]
    EndpointRoot,
    #[error("division by zero in the algebraic field")]
    DivisionByZero,
    #[error("invalid algebraic number: {0}")]
    BadAlgebraic(String),
    #[error("invalid form tower: {0}")]
    BadTower(String),
    #[error("tower does not define a total order: nonzero vector vanishes on every form")]
    NotTotal,
    #[error("vector is not positive under the given order")]
    NotPositive,
    #[error("sign oracle returned inconsistent (non-monotone) answers")]
    OracleInconsistent,
    #[error("element lies in the convex subgroup beyond the configured stage depth")]
    Underdetermined,
    #[error("chain depth {depth} exceeds the {stages} algebraic stages of the spec")]
    DepthExceeded { depth: usize, stages: usize },
    #[error("invalid order spec: {0}")]
    BadSpec(String),
    #[error("cannot perturb the order: {0}")]
    CannotPerturb(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("generator indices must satisfy i < j (got {i}, {j})")]
    IndexOrder { i: usize, j: usize },
    #[error("element is not in the derived subgroup (abelianization is nonzero)")]
    NotInDerived,
    #[error("element is not in the Magnus image")]
    NotInImage,
    #[error("linear-functional stage applied outside the derived submodule")]
    StageDomain,
    #[error("construction requires rank at least {need}, got {got}")]
    RankTooSmall { need: usize, got: usize },
    #[error("letter {0:?} is not in the alphabet")]
    BadLetter(char),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
