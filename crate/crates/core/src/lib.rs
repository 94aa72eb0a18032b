//! Exact computer algebra for spectral moments of the Gaussian beta ensemble
//! and its (q,t) lattice generalisation.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]   - multivariate rational functions over Q in the fixed
//!                    variable set {alpha, q, t, a, u, N, z}, with a canonical
//!                    form so that structural equality is mathematical equality;
//! * [`partitions`] - integer partitions, arm/leg statistics, hook products,
//!                    generalized Pochhammer symbols;
//! * [`qseries`]    - finite q-Pochhammer symbols, q-binomials, the truncated
//!                    q-exponential, the Al-Salam-Carlitz weight and polynomials;
//! * [`symfunc`]    - symmetric functions in the power-sum basis, Jack and
//!                    Macdonald polynomials by Gram-Schmidt, specializations;
//! * [`superint`]   - closed-form ensemble averages, moment formulas, and the
//!                    identity checks built from them;
//! * [`oracle`]     - brute-force numeric integrators (Jackson q-lattice sums
//!                    and exact Gaussian moment integration) used to certify
//!                    the closed forms.

pub mod exactalg;
pub mod oracle;
pub mod partitions;
pub mod qseries;
pub mod superint;
pub mod symfunc;

use exactalg::Var;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes identically under substitution")]
    DenominatorVanishes,
    #[error("evaluation hits a pole (denominator evaluates to zero)")]
    Pole,
    #[error("variable {} is unbound in numeric evaluation", .0.name())]
    UnboundVariable(Var),
    #[error("expected a polynomial in {}, but the denominator depends on it", .0.name())]
    NotPolynomialIn(Var),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cell ({0},{1}) lies outside the diagram")]
    CellOutsideDiagram(usize, usize),
    #[error("partitions must have equal size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("no specialization rule for power-sum index {0}")]
    MissingRule(usize),
    #[error("negative lattice mass encountered (sign convention violated)")]
    NegativeMass,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
