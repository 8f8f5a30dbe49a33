//! The rewrite engine: commutator table, constraint rules and the
//! deterministic normal-form procedure.
//!
//! Rules, applied at the right end of a growing canonical word:
//!
//! * R1 adjacent transposition into rank order, adding `iħ·(A,B)`;
//! * R2 `γγ → 1`, `εε → 1`;
//! * R3 `εγ → −γε`;
//! * R4 `W_a W_b → ½[W_a,W_b] + ½{W_a,W_b}` with the spin-½ anticommutator
//!   `{W_a,W_b} = (ħ²/2)(P_a P_b − η_ab ρ²)`;
//! * R5 `P_0 P_0 → ρ² + P_1P_1 + P_2P_2 + P_3P_3`;
//! * R6 `W_0 P_0 → W_1P_1 + W_2P_2 + W_3P_3`;
//! * R7 ρ-exponent arithmetic with `(D,ρᵏ) = kρᵏ` and
//!   `(C_ν,ρᵏ) = 2kρᵏX_ν + iħk²ρᵏ⁻²P_ν`, the Leibniz extension of
//!   `(C_ν,ρ) = 2ρ·X_ν`.
//!
//! Each fresh rule application either shortens the word, lowers the count
//! of C, D, W or P_0 letters, or removes an inversion, so the recursion is
//! well founded on (C-count, D-count, W-count, P_0-count, length,
//! inversions). A step cap turns a runaway into [`EngineError::Diverged`].

mod bootstrap;
pub mod normalize;
pub mod table;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::expr::{Expression, Monomial, FREE};
use crate::scalar::Field;
use crate::symbol::{eta_diag, Gen, Letter};

pub use bootstrap::{w_expansion, BootstrapReport};
pub use normalize::Ctx;
pub use table::{lie_bracket, CommutatorTable, Entry};

thread_local! {
    static THREAD_STEPS: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

fn count_step() {
    THREAD_STEPS.with(|c| c.set(c.get() + 1));
}

/// Fresh rule applications performed on this thread since the last call;
/// resets the counter. Memoized products are not counted.
pub fn take_thread_steps() -> u64 {
    THREAD_STEPS.with(|c| c.replace(0))
}

/// Default cap on fresh rule applications per normalization.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("commutator ({0}, {1}) is undefined")]
    UndefinedCommutator(Gen, Gen),
    #[error("normalization diverged after {steps} steps")]
    Diverged { steps: u64 },
    #[error("divisor is not a recognized inverse: {0}")]
    NotInvertible(String),
    #[error("bootstrap inconsistency: {0}")]
    BootstrapInconsistency(String),
    #[error("outside the confluent sector: {0}")]
    SectorUnsupported(String),
}

/// Outcome of comparing two expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckStatus<T: Field> {
    Verified,
    Failed { residual: Expression<T> },
    UndefinedCommutator(Gen, Gen),
    Diverged { steps: u64 },
    SectorUnsupported(String),
    Error(String),
}

impl<T: Field> CheckStatus<T> {
    pub fn is_verified(&self) -> bool {
        matches!(self, CheckStatus::Verified)
    }
}

#[derive(Debug, Clone, Default)]
pub struct NormalizationReport {
    pub steps: u64,
    pub histogram: BTreeMap<&'static str, u64>,
    pub diverged: bool,
}

#[derive(Debug, Clone)]
pub struct JacobiReport<T: Field> {
    pub triples: usize,
    pub failures: Vec<(Gen, Gen, Gen, Expression<T>)>,
}

impl<T: Field> JacobiReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type MemoKey = (Monomial, Letter);

pub struct RewriteEngine<T: Field> {
    table: CommutatorTable<T>,
    cap: u64,
    memo: Mutex<HashMap<MemoKey, Expression<T>>>,
    /// Normal forms of X_ν, used by the C–ρ rule.
    positions: OnceLock<Vec<Expression<T>>>,
    /// W_a expanded over J and P.
    w_exp: Vec<Expression<T>>,
    bootstrap: Option<BootstrapReport<T>>,
}

impl<T: Field> RewriteEngine<T> {
    /// Engine over the Lie and sign sectors only, without W entries.
    pub fn base() -> Self {
        Self::with_table(CommutatorTable::base())
    }

    fn with_table(table: CommutatorTable<T>) -> Self {
        RewriteEngine {
            table,
            cap: DEFAULT_STEP_CAP,
            memo: Mutex::new(HashMap::new()),
            positions: OnceLock::new(),
            w_exp: (0..4).map(w_expansion).collect(),
            bootstrap: None,
        }
    }

    /// Full engine: base table, bootstrap-derived W sector, and the
    /// position forms needed by the C–ρ rule.
    pub fn new() -> Result<Self, EngineError> {
        let base = Self::base();
        let (table, report) = bootstrap::derive(&base)?;
        let mut engine = Self::with_table(table);
        engine.bootstrap = Some(report);
        let xs = (0..4).map(|nu| engine.position_form(nu)).collect::<Result<Vec<_>, _>>()?;
        let _ = engine.positions.set(xs);
        Ok(engine)
    }

    pub fn with_step_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self.clear_memo();
        self
    }

    pub fn table(&self) -> &CommutatorTable<T> {
        &self.table
    }

    pub fn bootstrap_report(&self) -> Option<&BootstrapReport<T>> {
        self.bootstrap.as_ref()
    }

    pub fn clear_memo(&self) {
        self.memo.lock().expect("memo lock").clear();
    }

    fn memo_get(&self, key: &MemoKey) -> Option<Expression<T>> {
        self.memo.lock().expect("memo lock").get(key).cloned()
    }

    fn memo_put(&self, key: MemoKey, value: Expression<T>) {
        self.memo.lock().expect("memo lock").insert(key, value);
    }

    /// X_ν = ((D·P_ν − J_νλ·P^λ)) / P², as a normal form.
    fn position_form(&self, nu: u8) -> Result<Expression<T>, EngineError> {
        let d = Expression::gen(FREE, Gen::D);
        let p = |i: u8| Expression::gen(FREE, Gen::P(i));
        let mut num = self.sym_product(&d, &p(nu))?;
        for lam in 0..4u8 {
            if let Some((s, j)) = Gen::j(nu, lam) {
                let t = self.sym_product(&Expression::gen(FREE, j), &p(lam))?;
                num = num - t.scale_scalar(T::from_int(s * eta_diag(lam as usize)));
            }
        }
        self.sym_divide(&num, &Expression::rho(FREE, -2))
    }

    /// `(C_ν, ρᵏ)` as a raw expression.
    pub(crate) fn c_rho_commutator(&self, nu: u8, k: i32) -> Result<Expression<T>, EngineError> {
        let xs = self.positions.get().ok_or_else(|| {
            EngineError::BootstrapInconsistency("position forms requested before construction".into())
        })?;
        let mut out = Expression::zero(FREE);
        for (m, c) in xs[nu as usize].terms() {
            let shifted = Monomial { rho: m.rho + k, word: m.word.clone() };
            out.add_term(shifted, c.scale(&T::from_int(2 * k as i64)));
        }
        out.add_term(
            Monomial { rho: k - 2, word: vec![Letter::Gen(Gen::P(nu))] },
            Coefficient::i_hbar().scale(&T::from_int((k as i64) * (k as i64))),
        );
        Ok(out)
    }

    /// Normal form, keeping at most one W symbol per monomial.
    pub fn normalize(&self, e: &Expression<T>) -> Result<Expression<T>, EngineError> {
        let mut ctx = Ctx::default();
        self.normalize_ctx(e, &mut ctx)
    }

    pub fn normalize_with_report(
        &self,
        e: &Expression<T>,
    ) -> (Result<Expression<T>, EngineError>, NormalizationReport) {
        let mut ctx = Ctx::default();
        let r = self.normalize_ctx(e, &mut ctx);
        let diverged = matches!(r, Err(EngineError::Diverged { .. }));
        (r, NormalizationReport { steps: ctx.steps, histogram: ctx.histogram, diverged })
    }

    fn normalize_ctx(&self, e: &Expression<T>, ctx: &mut Ctx) -> Result<Expression<T>, EngineError> {
        let one = Expression::one(e.trunc());
        self.mul_expr_expr(&one, e, ctx)
    }

    /// Fully canonical form: the normal form with every remaining W
    /// expanded through `W^μ = −½ε^{μνρσ}J_νρP_σ` and renormalized. Two
    /// expressions are equal under the rules iff their canonical forms are.
    pub fn canonical(&self, e: &Expression<T>) -> Result<Expression<T>, EngineError> {
        let mut ctx = Ctx::default();
        let n = self.normalize_ctx(e, &mut ctx)?;
        if !n.contains_gen(|g| matches!(g, Gen::W(_))) {
            return Ok(n);
        }
        let mut out = Expression::zero(n.trunc());
        for (m, c) in n.terms() {
            let mut acc = Expression::one(n.trunc());
            for l in m.letters() {
                acc = match l {
                    Letter::Gen(Gen::W(a)) => self.mul_expr_expr(&acc, &self.w_exp[a as usize], &mut ctx)?,
                    other => self.mul_expr_letter(&acc, other, &mut ctx)?,
                };
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// Normal form of the product `a·b`.
    pub fn mul(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EngineError> {
        let mut ctx = Ctx::default();
        let na = self.normalize_ctx(a, &mut ctx)?;
        self.mul_expr_expr(&na, b, &mut ctx)
    }

    /// `(a, b) = (ab − ba)/(iħ)`
    pub fn commutator(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EngineError> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok((ab - ba).scale(&Coefficient::inv_i_hbar()))
    }

    /// `a·b = (ab + ba)/2`
    pub fn sym_product(&self, a: &Expression<T>, b: &Expression<T>) -> Result<Expression<T>, EngineError> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok((ab + ba).scale_scalar(T::from_ratio(1, 2)))
    }

    /// `a / B ≡ a·(1/B)` where `b_inverse` is one of the recognized inverses
    /// `ρᵏ` or `ε·ρᵏ`.
    pub fn sym_divide(&self, a: &Expression<T>, b_inverse: &Expression<T>) -> Result<Expression<T>, EngineError> {
        if !is_recognized_inverse(b_inverse) {
            return Err(EngineError::NotInvertible(format!("{:?}", b_inverse)));
        }
        self.sym_product(a, b_inverse)
    }

    /// Verified iff the canonical form of `a − b` vanishes.
    pub fn check_equal(&self, a: &Expression<T>, b: &Expression<T>) -> CheckStatus<T> {
        let diff = a.clone() - b.clone();
        match self.canonical(&diff) {
            Ok(r) if r.is_zero() => CheckStatus::Verified,
            Ok(r) => CheckStatus::Failed { residual: self.normalize(&diff).unwrap_or(r) },
            Err(e) => status_from_error(e),
        }
    }

    /// Jacobi identity on every triple of the fifteen Lie generators.
    pub fn jacobi_selfcheck(&self) -> Result<JacobiReport<T>, EngineError> {
        let basis = Gen::lie_basis();
        let mut failures = Vec::new();
        let mut triples = 0;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                for k in j + 1..basis.len() {
                    triples += 1;
                    let (a, b, c) = (basis[i], basis[j], basis[k]);
                    let sum = self.jacobi_sum(a, b, c)?;
                    if !sum.is_zero() {
                        failures.push((a, b, c, sum));
                    }
                }
            }
        }
        Ok(JacobiReport { triples, failures })
    }

    /// `((A,B),C) + ((B,C),A) + ((C,A),B)`, normalized.
    pub fn jacobi_sum(&self, a: Gen, b: Gen, c: Gen) -> Result<Expression<T>, EngineError> {
        let g = |x: Gen| Expression::gen(FREE, x);
        let ab = self.commutator(&self.commutator(&g(a), &g(b))?, &g(c))?;
        let bc = self.commutator(&self.commutator(&g(b), &g(c))?, &g(a))?;
        let ca = self.commutator(&self.commutator(&g(c), &g(a))?, &g(b))?;
        self.normalize(&(ab + bc + ca))
    }
}

/// `ρᵏ` or `ε·ρᵏ` with unit coefficient.
pub fn is_recognized_inverse<T: Field>(e: &Expression<T>) -> bool {
    if e.len() != 1 {
        return false;
    }
    let (m, c) = e.terms().next().expect("one term");
    if c != &Coefficient::one() {
        return false;
    }
    let word: Vec<Letter> = m.word.clone();
    word.is_empty() || word == [Letter::Gen(Gen::Eps)]
}

pub fn status_from_error<T: Field>(e: EngineError) -> CheckStatus<T> {
    match e {
        EngineError::UndefinedCommutator(a, b) => CheckStatus::UndefinedCommutator(a, b),
        EngineError::Diverged { steps } => CheckStatus::Diverged { steps },
        EngineError::SectorUnsupported(s) => CheckStatus::SectorUnsupported(s),
        other => CheckStatus::Error(other.to_string()),
    }
}

#[cfg(test)]
mod tests;
