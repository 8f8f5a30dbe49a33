//! Mass-generated evolution `F′ = (F, M)`.

use crate::algebra::EvalError;
use crate::engine::RewriteEngine;
use crate::expr::Expression;
use crate::observables::{Catalog, Observable};
use crate::scalar::Field;

pub fn prime<T: Field>(
    engine: &RewriteEngine<T>,
    catalog: &Catalog<T>,
    f: &Expression<T>,
) -> Result<Expression<T>, EvalError> {
    let m = catalog.get(engine, Observable::Mass)?;
    Ok(engine.commutator(f, &m)?)
}

/// `F⁽ⁿ⁾`, the n-th derivative.
pub fn prime_n<T: Field>(
    engine: &RewriteEngine<T>,
    catalog: &Catalog<T>,
    f: &Expression<T>,
    n: usize,
) -> Result<Expression<T>, EvalError> {
    let mut out = f.clone();
    for _ in 0..n {
        out = prime(engine, catalog, &out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Gen;
    use crate::{catalog, engine, Expr, FREE};

    #[test]
    fn generators_are_constant() {
        for g in [Gen::P(2), Gen::J(0, 3), Gen::W(1)] {
            let d = prime(engine(), catalog(), &Expr::gen(FREE, g)).unwrap();
            assert!(d.is_zero(), "{}", g);
        }
        assert!(prime(engine(), catalog(), &Expr::rho(FREE, -2)).unwrap().is_zero());
    }

    #[test]
    fn dilatation_has_unit_mass_derivative() {
        let d = prime(engine(), catalog(), &Expr::gen(FREE, Gen::D)).unwrap();
        assert_eq!(d, catalog().get(engine(), Observable::Mass).unwrap());
    }
}
