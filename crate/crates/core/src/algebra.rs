//! Common interface of the symbolic engine and the representation oracles,
//! so index expansion and the observable catalog are written once.

use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::engine::EngineError;
use crate::observables::{self, Observable};
use crate::scalar::Field;
use crate::symbol::Gen;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("index error: {0}")]
    Index(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("not a scalar: {0}")]
    NotScalar(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("unsupported in this realization: {0}")]
    Unsupported(String),
}

pub trait Algebra<T: Field>: Sync {
    type Value: Clone + Send + Sync;

    fn scalar(&self, c: Coefficient<T>) -> Result<Self::Value, EvalError>;
    fn generator(&self, g: Gen) -> Result<Self::Value, EvalError>;
    fn rho_pow(&self, k: i32) -> Result<Self::Value, EvalError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn scale(&self, a: &Self::Value, c: &Coefficient<T>) -> Result<Self::Value, EvalError>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError>;
    fn adjoint(&self, a: &Self::Value) -> Result<Self::Value, EvalError>;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        let nb = self.scale(b, &Coefficient::int(-1))?;
        self.add(a, &nb)
    }

    /// `(a, b) = (ab − ba)/(iħ)`
    fn commutator(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        let d = self.sub(&self.mul(a, b)?, &self.mul(b, a)?)?;
        self.scale(&d, &Coefficient::inv_i_hbar())
    }

    /// `a·b = (ab + ba)/2`
    fn sym_product(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        let s = self.add(&self.mul(a, b)?, &self.mul(b, a)?)?;
        self.scale(&s, &Coefficient::ratio(1, 2))
    }

    fn sym_divide(&self, a: &Self::Value, b_inverse: &Self::Value) -> Result<Self::Value, EvalError> {
        self.sym_product(a, b_inverse)
    }

    fn observable(&self, o: Observable) -> Result<Self::Value, EvalError> {
        observables::build(self, o)
    }

    /// `F′ = (F, M)`
    fn prime(&self, a: &Self::Value) -> Result<Self::Value, EvalError> {
        let m = self.observable(Observable::Mass)?;
        self.commutator(a, &m)
    }

    fn conjugate(&self, _a: &Self::Value) -> Result<Self::Value, EvalError> {
        Err(EvalError::Unsupported("frame conjugation".into()))
    }

    fn accelerated_prime(&self, _a: &Self::Value) -> Result<Self::Value, EvalError> {
        Err(EvalError::Unsupported("accelerated derivative".into()))
    }
}
