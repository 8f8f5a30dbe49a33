//! Composite observables: positions, spin tensors, mass, Clifford symbols.
//!
//! Builders are generic over [`Algebra`] so the representation oracles
//! realize exactly the definitions the engine normalizes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Algebra, EvalError};
use crate::coefficient::Coefficient;
use crate::engine::RewriteEngine;
use crate::expr::{Expression, FREE};
use crate::scalar::Field;
use crate::symbol::{eta_diag, Gen};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Observable {
    /// `X_μ`
    Position(u8),
    /// `x_μ`
    Canonical(u8),
    /// `S_μν`
    Spin(u8, u8),
    /// `s_μν`
    CanonicalSpin(u8, u8),
    /// `γ_μ`
    Clifford(u8),
    /// `M = ερ`
    Mass,
    /// `1/M = ερ⁻¹`
    InverseMass,
    /// `D/M`
    EvolutionTime,
}

impl Observable {
    /// Resolves a DSL symbol name with concrete indices.
    pub fn from_symbol(name: &str, idx: &[u8]) -> Option<Observable> {
        Some(match (name, idx) {
            ("X", [m]) => Observable::Position(*m),
            ("x", [m]) => Observable::Canonical(*m),
            ("S", [m, n]) => Observable::Spin(*m, *n),
            ("s", [m, n]) => Observable::CanonicalSpin(*m, *n),
            ("gammaIdx", [m]) => Observable::Clifford(*m),
            ("M", []) => Observable::Mass,
            ("invM", []) => Observable::InverseMass,
            _ => return None,
        })
    }

    /// Number of index slots of a catalog symbol.
    pub fn arity(name: &str) -> Option<usize> {
        match name {
            "X" | "x" | "gammaIdx" => Some(1),
            "S" | "s" => Some(2),
            "M" | "invM" => Some(0),
            _ => None,
        }
    }
}

/// `J_μν` with `J_νμ = −J_μν` and `J_μμ = 0`.
pub fn j_value<T: Field, A: Algebra<T> + ?Sized>(alg: &A, mu: u8, nu: u8) -> Result<A::Value, EvalError> {
    match Gen::j(mu, nu) {
        Some((s, g)) => alg.scale(&alg.generator(g)?, &Coefficient::int(s)),
        None => alg.scalar(Coefficient::zero()),
    }
}

fn gamma_w<T: Field, A: Algebra<T> + ?Sized>(alg: &A, mu: u8) -> Result<A::Value, EvalError> {
    alg.mul(&alg.generator(Gen::Gamma)?, &alg.generator(Gen::W(mu))?)
}

fn spin_like<T: Field, A: Algebra<T> + ?Sized>(
    alg: &A,
    mu: u8,
    nu: u8,
    pos: fn(u8) -> Observable,
) -> Result<A::Value, EvalError> {
    let j = j_value(alg, mu, nu)?;
    let a = alg.sym_product(&alg.generator(Gen::P(mu))?, &alg.observable(pos(nu))?)?;
    let b = alg.sym_product(&alg.generator(Gen::P(nu))?, &alg.observable(pos(mu))?)?;
    alg.add(&alg.sub(&j, &a)?, &b)
}

/// Builds one observable from primitives and previously built observables.
pub fn build<T: Field, A: Algebra<T> + ?Sized>(alg: &A, o: Observable) -> Result<A::Value, EvalError> {
    match o {
        Observable::Mass => alg.mul(&alg.generator(Gen::Eps)?, &alg.rho_pow(1)?),
        Observable::InverseMass => alg.mul(&alg.generator(Gen::Eps)?, &alg.rho_pow(-1)?),
        Observable::Position(mu) => {
            let mut num = alg.sym_product(&alg.generator(Gen::D)?, &alg.generator(Gen::P(mu))?)?;
            for nu in 0..4u8 {
                if nu == mu {
                    continue;
                }
                let t = alg.sym_product(&j_value(alg, mu, nu)?, &alg.generator(Gen::P(nu))?)?;
                num = alg.sub(&num, &alg.scale(&t, &Coefficient::int(eta_diag(nu as usize)))?)?;
            }
            alg.sym_divide(&num, &alg.rho_pow(-2)?)
        }
        Observable::Spin(mu, nu) => spin_like(alg, mu, nu, Observable::Position),
        Observable::Canonical(mu) => {
            let x = alg.observable(Observable::Position(mu))?;
            let t = alg.mul(&gamma_w(alg, mu)?, &alg.rho_pow(-2)?)?;
            alg.sub(&x, &alg.scale(&t, &Coefficient::scalar(T::imag_unit()))?)
        }
        Observable::CanonicalSpin(mu, nu) => spin_like(alg, mu, nu, Observable::Canonical),
        Observable::Clifford(mu) => {
            let inv = alg.observable(Observable::InverseMass)?;
            let a = alg.sym_divide(&alg.generator(Gen::P(mu))?, &inv)?;
            let b = alg.mul(&gamma_w(alg, mu)?, &inv)?;
            alg.sub(&a, &alg.scale(&b, &Coefficient::hbar_pow(T::from_int(2), -1))?)
        }
        Observable::EvolutionTime => {
            let inv = alg.observable(Observable::InverseMass)?;
            alg.sym_divide(&alg.generator(Gen::D)?, &inv)
        }
    }
}

type Cell<T> = Arc<OnceLock<Result<Expression<T>, EvalError>>>;

/// Build-once cache of normal forms, safe under concurrent first access.
pub struct Catalog<T: Field> {
    cells: Mutex<HashMap<Observable, Cell<T>>>,
}

impl<T: Field> Default for Catalog<T> {
    fn default() -> Self {
        Catalog { cells: Mutex::new(HashMap::new()) }
    }
}

impl<T: Field> Catalog<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Normal form of `o`, with acceleration-free truncation.
    pub fn get(&self, engine: &RewriteEngine<T>, o: Observable) -> Result<Expression<T>, EvalError> {
        let cell = {
            let mut cells = self.cells.lock().expect("catalog lock");
            cells.entry(o).or_default().clone()
        };
        cell.get_or_init(|| build(&Symbolic::new(engine, self, FREE), o)).clone()
    }
}

/// The engine as an [`Algebra`]: values are normal forms.
pub struct Symbolic<'a, T: Field> {
    pub engine: &'a RewriteEngine<T>,
    pub catalog: &'a Catalog<T>,
    pub trunc: u32,
}

impl<'a, T: Field> Symbolic<'a, T> {
    pub fn new(engine: &'a RewriteEngine<T>, catalog: &'a Catalog<T>, trunc: u32) -> Self {
        Symbolic { engine, catalog, trunc }
    }
}

impl Symbolic<'static, crate::Scalar> {
    /// Process-wide engine and catalog.
    pub fn global(trunc: u32) -> Self {
        Symbolic::new(crate::engine(), crate::catalog(), trunc)
    }
}

impl<T: Field> Algebra<T> for Symbolic<'_, T> {
    type Value = Expression<T>;

    fn scalar(&self, c: Coefficient<T>) -> Result<Expression<T>, EvalError> {
        Ok(Expression::scalar(self.trunc, c))
    }

    fn generator(&self, g: Gen) -> Result<Expression<T>, EvalError> {
        Ok(Expression::gen(self.trunc, g))
    }

    fn rho_pow(&self, k: i32) -> Result<Expression<T>, EvalError> {
        Ok(Expression::rho(self.trunc, k))
    }

    fn add(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(a.clone() + b.clone())
    }

    fn scale(&self, a: &Expression<T>, c: &Coefficient<T>) -> Result<Expression<T>, EvalError> {
        Ok(a.scale(c))
    }

    fn mul(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(self.engine.mul(a, b)?)
    }

    fn adjoint(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(self.engine.normalize(&a.adjoint())?)
    }

    fn commutator(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(self.engine.commutator(a, b)?)
    }

    fn sym_product(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(self.engine.sym_product(a, b)?)
    }

    fn sym_divide(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(self.engine.sym_divide(a, b)?)
    }

    fn observable(&self, o: Observable) -> Result<Expression<T>, EvalError> {
        Ok(self.catalog.get(self.engine, o)?.with_trunc(self.trunc))
    }

    fn prime(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        crate::motion::prime(self.engine, self.catalog, a)
    }

    fn conjugate(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(crate::frames::conjugate(self.engine, a, self.trunc)?)
    }

    fn accelerated_prime(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        crate::frames::accelerated_prime(self.engine, self.catalog, a, self.trunc)
    }
}

/// Unnormalized products over the engine; catalog symbols enter as normal
/// forms. Used to trace a single final normalization.
pub struct Raw<'a, T: Field> {
    pub inner: Symbolic<'a, T>,
}

impl<T: Field> Algebra<T> for Raw<'_, T> {
    type Value = Expression<T>;

    fn scalar(&self, c: Coefficient<T>) -> Result<Expression<T>, EvalError> {
        self.inner.scalar(c)
    }

    fn generator(&self, g: Gen) -> Result<Expression<T>, EvalError> {
        self.inner.generator(g)
    }

    fn rho_pow(&self, k: i32) -> Result<Expression<T>, EvalError> {
        self.inner.rho_pow(k)
    }

    fn add(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(a.clone() + b.clone())
    }

    fn scale(&self, a: &Expression<T>, c: &Coefficient<T>) -> Result<Expression<T>, EvalError> {
        Ok(a.scale(c))
    }

    fn mul(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(a.mul_raw(b))
    }

    fn adjoint(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        Ok(a.adjoint())
    }

    fn sym_divide(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EvalError> {
        if !crate::engine::is_recognized_inverse(b) {
            return Err(crate::engine::EngineError::NotInvertible(format!("{:?}", b)).into());
        }
        self.sym_product(a, b)
    }

    fn observable(&self, o: Observable) -> Result<Expression<T>, EvalError> {
        self.inner.observable(o)
    }

    fn conjugate(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        self.inner.conjugate(a)
    }

    fn accelerated_prime(&self, a: &Expression<T>) -> Result<Expression<T>, EvalError> {
        self.inner.accelerated_prime(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Letter;
    use crate::{catalog, engine, Expr, Scalar};

    fn obs(o: Observable) -> Expr {
        catalog().get(engine(), o).unwrap()
    }

    #[test]
    fn mass_is_eps_rho() {
        let expect = Expr::word(FREE, &[Letter::Rho(1), Letter::Gen(Gen::Eps)]);
        assert_eq!(obs(Observable::Mass), expect);
    }

    #[test]
    fn position_has_inverse_momentum_square() {
        let x1 = obs(Observable::Position(1));
        assert!(x1.terms().all(|(m, _)| m.rho == -2));
        assert!(x1.contains_gen(|g| *g == Gen::D));
        assert!(x1.contains_gen(|g| matches!(g, Gen::J(..))));
    }

    #[test]
    fn canonical_minus_hermitian_position() {
        let d = engine().normalize(&(obs(Observable::Canonical(0)) - obs(Observable::Position(0)))).unwrap();
        let expect = Expr::word(FREE, &[Letter::Rho(-2), Gen::Gamma.into(), Gen::W(0).into()])
            .scale_scalar(-Scalar::imag_unit());
        assert!(engine().check_equal(&d, &expect).is_verified());
    }

    #[test]
    fn spin_tensor_antisymmetric() {
        let s = obs(Observable::Spin(1, 2)) + obs(Observable::Spin(2, 1));
        assert!(engine().canonical(&s).unwrap().is_zero());
    }
}
