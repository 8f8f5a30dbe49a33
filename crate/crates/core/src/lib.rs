//! Noncommutative computer algebra for the conformal quantum algebra of
//! localization and motion.
//!
//! The crate is generic over the exact scalar field ([`Field`]); the
//! aliases below fix it to Gaussian rationals over big integers.

pub mod algebra;
pub mod coefficient;
pub mod dsl;
pub mod engine;
pub mod expr;
pub mod frames;
pub mod motion;
pub mod observables;
pub mod oracle;
pub mod scalar;
pub mod symbol;
pub mod verify;

use std::sync::OnceLock;

pub use coefficient::{CoeffKey, Coefficient};
pub use engine::{CheckStatus, EngineError, RewriteEngine};
pub use algebra::{Algebra, EvalError};
pub use expr::{Expression, Monomial, DEFAULT_TRUNC, FREE};
pub use observables::{Catalog, Observable, Symbolic};
pub use scalar::Field;
pub use symbol::{Gen, Letter};

/// Gaussian rational with arbitrary-precision parts.
pub type Scalar = num_complex::Complex<num_rational::BigRational>;
/// Gaussian rational over `i64`; fast, overflow-prone on deep computations.
pub type Scalar64 = num_complex::Complex<num_rational::Rational64>;

pub type Coeff = Coefficient<Scalar>;
pub type Expr = Expression<Scalar>;
pub type Engine = RewriteEngine<Scalar>;

/// Process-wide engine over [`Scalar`], built on first use.
pub fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(|| Engine::new().expect("axiom table bootstraps"))
}

/// Process-wide observable catalog for [`engine`].
pub fn catalog() -> &'static Catalog<Scalar> {
    static CATALOG: OnceLock<Catalog<Scalar>> = OnceLock::new();
    CATALOG.get_or_init(Catalog::new)
}
