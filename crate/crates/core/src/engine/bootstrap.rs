//! Derivation of the Pauli–Lubanski sector of the commutator table.
//!
//! `W^μ = −½ε^{μνρσ}J_νρP_σ` is expanded over the Poincaré generators, every
//! bracket with W is computed in the enveloping algebra, and the closed
//! forms installed in the table are re-verified against those expansions.

use crate::coefficient::Coefficient;
use crate::expr::{Expression, Monomial, FREE};
use crate::scalar::Field;
use crate::symbol::{eta, eta_diag, levi_civita_lower, levi_civita_upper, Gen, Letter};

use super::table::CommutatorTable;
use super::{EngineError, RewriteEngine};

#[derive(Debug, Clone)]
pub struct BootstrapReport<T: Field> {
    /// `c` in `(W_a, W_b) = c·ε_{abρσ}W^ρP^σ`.
    pub ww_constant: Coefficient<T>,
    /// Names of every verified derived relation.
    pub verified: Vec<String>,
}

/// `W_a` (lower index) expanded over `J` and `P`.
pub fn w_expansion<T: Field>(a: u8) -> Expression<T> {
    let mut out = Expression::zero(FREE);
    let s = eta_diag(a as usize);
    for nu in 0..4u8 {
        for rho in nu + 1..4 {
            for sigma in 0..4u8 {
                let e = levi_civita_upper(a as usize, nu as usize, rho as usize, sigma as usize);
                if e == 0 {
                    continue;
                }
                let m = Monomial { rho: 0, word: vec![Letter::Gen(Gen::J(nu, rho)), Letter::Gen(Gen::P(sigma))] };
                out.add_term(m, Coefficient::int(-e * s));
            }
        }
    }
    out
}

fn wp_word<T: Field>(w: u8, p: u8) -> Expression<T> {
    Expression::word(FREE, &[Letter::Gen(Gen::W(w)), Letter::Gen(Gen::P(p))])
}

/// `ε_{abρσ}W^ρP^σ` in W letters.
fn eps_wp<T: Field>(a: u8, b: u8) -> Expression<T> {
    let mut out = Expression::zero(FREE);
    for r in 0..4u8 {
        for s in 0..4u8 {
            let e = levi_civita_lower(a as usize, b as usize, r as usize, s as usize);
            if e == 0 {
                continue;
            }
            let sign = e * eta_diag(r as usize) * eta_diag(s as usize);
            out = out + wp_word::<T>(r, s).scale(&Coefficient::int(sign));
        }
    }
    out
}

fn vector_in<T: Field>(mu: u8, nu: u8, rho: u8, v: &dyn Fn(u8) -> Expression<T>) -> Expression<T> {
    let a = eta(nu as usize, rho as usize);
    let b = eta(mu as usize, rho as usize);
    let mut out = Expression::zero(FREE);
    if a != 0 {
        out = out + v(mu).scale(&Coefficient::int(a));
    }
    if b != 0 {
        out = out - v(nu).scale(&Coefficient::int(b));
    }
    out
}

impl<T: Field> RewriteEngine<T> {
    /// Replaces W letters by their expansion (base engine, no W rules).
    fn expand_w(&self, e: &Expression<T>) -> Result<Expression<T>, EngineError> {
        let mut ctx = super::Ctx::default();
        let mut out = Expression::zero(e.trunc());
        for (m, c) in e.terms() {
            let mut acc = Expression::one(FREE);
            for l in m.letters() {
                acc = match l {
                    Letter::Gen(Gen::W(a)) => self.mul_expr_expr(&acc, &w_expansion(a), &mut ctx)?,
                    other => self.mul_expr_letter(&acc, other, &mut ctx)?,
                };
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    fn expect_equal(
        &self,
        name: String,
        computed: &Expression<T>,
        closed_form: &Expression<T>,
        verified: &mut Vec<String>,
    ) -> Result<(), EngineError> {
        let expanded = self.expand_w(closed_form)?;
        let diff = self.normalize(&(expanded - computed.clone()))?;
        if !diff.is_zero() {
            return Err(EngineError::BootstrapInconsistency(name));
        }
        verified.push(name);
        Ok(())
    }
}

/// Derives and verifies every W entry using the base engine.
pub(super) fn derive<T: Field>(
    base: &RewriteEngine<T>,
) -> Result<(CommutatorTable<T>, BootstrapReport<T>), EngineError> {
    let mut table = base.table().clone();
    let mut verified = Vec::new();
    let w: Vec<Expression<T>> = (0..4).map(w_expansion).collect();
    let g = |x: Gen| Expression::<T>::gen(FREE, x);
    let wl = |a: u8| Expression::<T>::gen(FREE, Gen::W(a));

    // Transversality W·P = 0 holds identically in the enveloping algebra.
    let mut wp = Expression::zero(FREE);
    for a in 0..4u8 {
        wp = wp + base.mul(&w[a as usize], &g(Gen::P(a)))?.scale(&Coefficient::int(eta_diag(a as usize)));
    }
    if !base.normalize(&wp)?.is_zero() {
        return Err(EngineError::BootstrapInconsistency("W·P".into()));
    }
    verified.push("W·P = 0".into());

    for a in 0..4u8 {
        for b in 0..4u8 {
            let c = base.commutator(&g(Gen::P(b)), &w[a as usize])?;
            base.expect_equal(format!("(P{},W{})", b, a), &c, &Expression::zero(FREE), &mut verified)?;
            table.insert_antisym(Gen::P(b), Gen::W(a), Expression::zero(FREE));
        }
        let c = base.commutator(&g(Gen::D), &w[a as usize])?;
        base.expect_equal(format!("(D,W{})", a), &c, &wl(a), &mut verified)?;
        table.insert_antisym(Gen::D, Gen::W(a), wl(a));

        for &(mu, nu) in crate::symbol::J_PAIRS.iter() {
            let c = base.commutator(&g(Gen::J(mu, nu)), &w[a as usize])?;
            let closed = vector_in(mu, nu, a, &wl);
            base.expect_equal(format!("(J{}{},W{})", mu, nu, a), &c, &closed, &mut verified)?;
            table.insert_antisym(Gen::J(mu, nu), Gen::W(a), closed);
        }
        for nu in 0..4u8 {
            let c = base.commutator(&g(Gen::C(nu)), &w[a as usize])?;
            table.insert_antisym(Gen::C(nu), Gen::W(a), c);
        }
        table.insert_antisym(Gen::W(a), Gen::W(a), Expression::zero(FREE));
    }

    let mut ww_constant: Option<Coefficient<T>> = None;
    for a in 0..4u8 {
        for b in a + 1..4 {
            let computed = base.commutator(&w[a as usize], &w[b as usize])?;
            let unit = eps_wp::<T>(a, b);
            let unit_exp = base.expand_w(&unit)?;
            let c = match ww_constant.clone() {
                Some(c) => c,
                None => {
                    let (m, uc) = unit_exp
                        .terms()
                        .next()
                        .ok_or_else(|| EngineError::BootstrapInconsistency("empty ε·W·P".into()))?;
                    let lhs = computed.coefficient(m).cloned().unwrap_or_else(Coefficient::zero);
                    let inv = uc
                        .inverse()
                        .ok_or_else(|| EngineError::BootstrapInconsistency("non-invertible coefficient".into()))?;
                    let c = lhs * inv;
                    ww_constant = Some(c.clone());
                    c
                }
            };
            let closed = unit.scale(&c);
            base.expect_equal(format!("(W{},W{})", a, b), &computed, &closed, &mut verified)?;
            table.insert_antisym(Gen::W(a), Gen::W(b), closed);
        }
    }
    let ww_constant = ww_constant.expect("six W pairs");
    Ok((table, BootstrapReport { ww_constant, verified }))
}
