//! Normal-form multiplication.
//!
//! Canonical monomials are built one letter at a time: appending a letter
//! to a canonical monomial either keeps it canonical or triggers exactly
//! one rule on the last position, whose right-hand side is again processed
//! by appending letters to a strictly shorter canonical prefix.

use std::collections::BTreeMap;

use crate::coefficient::Coefficient;
use crate::expr::{Expression, Monomial, FREE};
use crate::scalar::Field;
use crate::symbol::{eta, Gen, Letter};

use super::table::Entry;
use super::{EngineError, RewriteEngine};

/// Rule names as they appear in traces.
pub mod rule {
    pub const SORT: &str = "R1-sort";
    pub const SIGN_SQUARE: &str = "R2-square";
    pub const SIGN_SWAP: &str = "R3-anticommute";
    pub const SPIN: &str = "R4-spin";
    pub const MASS_SHELL: &str = "R5-p0-square";
    pub const TRANSVERSE: &str = "R6-transverse";
    pub const RHO: &str = "R7-rho";
    pub const RHO_COMM: &str = "R7-rho-commutator";
}

/// Per-normalization bookkeeping.
#[derive(Debug, Default, Clone)]
pub struct Ctx {
    pub steps: u64,
    pub histogram: BTreeMap<&'static str, u64>,
}

impl Ctx {
    fn hit(&mut self, name: &'static str) {
        *self.histogram.entry(name).or_insert(0) += 1;
    }
}

fn split_last(m: &Monomial) -> (Monomial, Gen) {
    let mut prefix = m.clone();
    let last = match prefix.word.pop() {
        Some(Letter::Gen(g)) => g,
        _ => unreachable!("canonical monomial ends with a generator"),
    };
    (prefix, last)
}

impl<T: Field> RewriteEngine<T> {
    /// Canonical expressions `m · l` for canonical `m`.
    pub(crate) fn mul_mono_letter(
        &self,
        m: &Monomial,
        l: Letter,
        ctx: &mut Ctx,
    ) -> Result<Expression<T>, EngineError> {
        if let Letter::Rho(0) = l {
            return Ok(Expression::term(FREE, m.clone(), Coefficient::one()));
        }
        let key = (m.clone(), l);
        if let Some(hit) = self.memo_get(&key) {
            return Ok(hit);
        }
        ctx.steps += 1;
        super::count_step();
        if ctx.steps > self.cap {
            return Err(EngineError::Diverged { steps: ctx.steps });
        }
        let out = self.mul_mono_letter_fresh(m, l, ctx)?;
        self.memo_put(key, out.clone());
        Ok(out)
    }

    fn mul_mono_letter_fresh(
        &self,
        m: &Monomial,
        l: Letter,
        ctx: &mut Ctx,
    ) -> Result<Expression<T>, EngineError> {
        let one = Coefficient::<T>::one();
        if m.word.is_empty() {
            let next = match l {
                Letter::Rho(k) => Monomial::rho(m.rho + k),
                Letter::Gen(g) => Monomial { rho: m.rho, word: vec![Letter::Gen(g)] },
            };
            return Ok(Expression::term(FREE, next, one));
        }
        let (prefix, last) = split_last(m);
        match l {
            Letter::Rho(k) => {
                ctx.hit(rule::RHO);
                let pk = self.mul_mono_letter(&prefix, Letter::Rho(k), ctx)?;
                let mut out = self.mul_expr_letter(&pk, Letter::Gen(last), ctx)?;
                match last {
                    g if g.commutes_with_rho() => {}
                    Gen::D => {
                        // Dρᵏ = ρᵏD + iħk·ρᵏ
                        out.add_scaled(&pk, &Coefficient::i_hbar().scale(&T::from_int(k as i64)));
                    }
                    Gen::C(nu) => {
                        ctx.hit(rule::RHO_COMM);
                        let corr = self.c_rho_commutator(nu, k)?;
                        let p = Expression::term(FREE, prefix.clone(), one);
                        let tail = self.mul_expr_expr(&p, &corr, ctx)?;
                        out.add_scaled(&tail, &Coefficient::i_hbar());
                    }
                    _ => unreachable!(),
                }
                Ok(out)
            }
            Letter::Gen(g) => {
                if last > g {
                    return self.swap_last(&prefix, last, g, ctx);
                }
                self.append_sorted(m, &prefix, last, g, ctx)
            }
        }
    }

    /// `prefix · last · g` with `last > g`.
    fn swap_last(
        &self,
        prefix: &Monomial,
        last: Gen,
        g: Gen,
        ctx: &mut Ctx,
    ) -> Result<Expression<T>, EngineError> {
        if last == Gen::Eps && g == Gen::Gamma {
            ctx.hit(rule::SIGN_SWAP);
            let pg = self.mul_mono_letter(prefix, Letter::Gen(g), ctx)?;
            return Ok(-self.mul_expr_letter(&pg, Letter::Gen(last), ctx)?);
        }
        ctx.hit(rule::SORT);
        let entry = match self.table.get(last, g) {
            Some(Entry::Defined(e)) => e.clone(),
            Some(Entry::Undefined) | None => return Err(EngineError::UndefinedCommutator(last, g)),
        };
        let pg = self.mul_mono_letter(prefix, Letter::Gen(g), ctx)?;
        let mut out = self.mul_expr_letter(&pg, Letter::Gen(last), ctx)?;
        if !entry.is_zero() {
            let p = Expression::term(FREE, prefix.clone(), Coefficient::one());
            let corr = self.mul_expr_expr(&p, &entry, ctx)?;
            out.add_scaled(&corr, &Coefficient::i_hbar());
        }
        Ok(out)
    }

    /// `m · g` where `m = prefix · last` is canonical and `last ≤ g`.
    fn append_sorted(
        &self,
        m: &Monomial,
        prefix: &Monomial,
        last: Gen,
        g: Gen,
        ctx: &mut Ctx,
    ) -> Result<Expression<T>, EngineError> {
        let one = Coefficient::<T>::one();
        let p = || Expression::term(FREE, prefix.clone(), Coefficient::one());
        match (last, g) {
            (Gen::Gamma, Gen::Gamma) | (Gen::Eps, Gen::Eps) => {
                ctx.hit(rule::SIGN_SQUARE);
                Ok(p())
            }
            (Gen::P(0), Gen::P(0)) => {
                ctx.hit(rule::MASS_SHELL);
                let mut out = self.mul_mono_letter(prefix, Letter::Rho(2), ctx)?;
                for i in 1..4 {
                    let a = self.mul_mono_letter(prefix, Letter::Gen(Gen::P(i)), ctx)?;
                    out = out + self.mul_expr_letter(&a, Letter::Gen(Gen::P(i)), ctx)?;
                }
                Ok(out)
            }
            (Gen::W(a), Gen::W(b)) => {
                ctx.hit(rule::SPIN);
                let rhs = self.spin_product(a, b);
                self.mul_expr_expr(&p(), &rhs, ctx)
            }
            (_, Gen::W(0)) if m.gens().any(|x| x == Gen::P(0)) => {
                ctx.hit(rule::TRANSVERSE);
                // W_0 P_0 = W_1 P_1 + W_2 P_2 + W_3 P_3
                let mut reduced = m.clone();
                let pos = reduced
                    .word
                    .iter()
                    .position(|x| *x == Letter::Gen(Gen::P(0)))
                    .expect("checked above");
                reduced.word.remove(pos);
                let mut out = Expression::zero(FREE);
                for i in 1..4 {
                    let a = self.mul_mono_letter(&reduced, Letter::Gen(Gen::W(i)), ctx)?;
                    out = out + self.mul_expr_letter(&a, Letter::Gen(Gen::P(i)), ctx)?;
                }
                Ok(out)
            }
            _ => {
                let mut next = m.clone();
                next.word.push(Letter::Gen(g));
                Ok(Expression::term(FREE, next, one))
            }
        }
    }

    /// `W_a W_b = (iħ/2)(W_a, W_b) + (ħ²/4)(P_a P_b − η_ab ρ²)` for `a ≤ b`.
    fn spin_product(&self, a: u8, b: u8) -> Expression<T> {
        let mut out = Expression::word(FREE, &[Letter::Gen(Gen::P(a)), Letter::Gen(Gen::P(b))]);
        let e = eta(a as usize, b as usize);
        if e != 0 {
            out.add_term(Monomial::rho(2), Coefficient::int(-e));
        }
        let mut out = out.scale(&Coefficient::hbar_pow(T::from_ratio(1, 4), 2));
        if a != b {
            if let Some(Entry::Defined(c)) = self.table.get(Gen::W(a), Gen::W(b)) {
                out.add_scaled(c, &Coefficient::i_hbar().scale(&T::from_ratio(1, 2)));
            }
        }
        out
    }

    pub(crate) fn mul_expr_letter(
        &self,
        e: &Expression<T>,
        l: Letter,
        ctx: &mut Ctx,
    ) -> Result<Expression<T>, EngineError> {
        let mut out = Expression::zero(e.trunc());
        for (m, c) in e.terms() {
            let r = self.mul_mono_letter(m, l, ctx)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }

    /// Canonical product of canonical `a` with an arbitrary (raw) `b`.
    pub(crate) fn mul_expr_expr(
        &self,
        a: &Expression<T>,
        b: &Expression<T>,
        ctx: &mut Ctx,
    ) -> Result<Expression<T>, EngineError> {
        let mut out = Expression::zero(a.trunc().min(b.trunc()));
        let census = |m: &Monomial| {
            m.letters().into_iter().fold((0, 0), |(w, c), l| match l {
                Letter::Gen(Gen::W(_)) => (w + 1, c),
                Letter::Gen(Gen::C(_)) => (w, c + 1),
                _ => (w, c),
            })
        };
        let left: Vec<(usize, usize)> = a.terms().map(|(m, _)| census(m)).collect();
        for (m, c) in b.terms() {
            let (w, k) = census(m);
            if left.iter().any(|&(lw, lk)| lw + w >= 2 && lk + k >= 1) {
                return Err(EngineError::SectorUnsupported(
                    "spin products of W next to special conformal generators".into(),
                ));
            }
            let mut acc = a.clone();
            for l in m.letters() {
                acc = self.mul_expr_letter(&acc, l, ctx)?;
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }
}
