//! First-order conjugation to uniformly accelerated frames,
//! `F̄ = F − (a^ρ/2)(C_ρ, F)`.

use crate::algebra::EvalError;
use crate::coefficient::Coefficient;
use crate::engine::{EngineError, RewriteEngine};
use crate::expr::{Expression, FREE};
use crate::observables::{Catalog, Observable};
use crate::scalar::Field;
use crate::symbol::Gen;

/// Conjugate of `f` at first order, truncated at accel degree `trunc`.
pub fn conjugate<T: Field>(
    engine: &RewriteEngine<T>,
    f: &Expression<T>,
    trunc: u32,
) -> Result<Expression<T>, EngineError> {
    let trunc = trunc.min(f.trunc());
    let mut out = f.truncated(trunc);
    if trunc == 0 {
        return Ok(out);
    }
    let half = T::from_ratio(-1, 2);
    for rho in 0..4u8 {
        let c = engine.commutator(&Expression::gen(FREE, Gen::C(rho)), f)?;
        out = out + c.truncated(trunc).scale(&Coefficient::accel(rho as usize).scale(&half));
    }
    engine.normalize(&out)
}

/// `F′ = (F, M̄)`, differentiation by the conjugated mass.
pub fn accelerated_prime<T: Field>(
    engine: &RewriteEngine<T>,
    catalog: &Catalog<T>,
    f: &Expression<T>,
    trunc: u32,
) -> Result<Expression<T>, EvalError> {
    let m = catalog.get(engine, Observable::Mass)?;
    let mbar = conjugate(engine, &m, trunc)?;
    Ok(engine.commutator(&f.clone().with_trunc(trunc.min(f.trunc())), &mbar)?)
}
