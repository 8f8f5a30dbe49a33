//! Noncommutative expressions: finite sums of coefficient · ρᵏ · word.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::scalar::Field;
use crate::symbol::{Gen, Letter};

/// Acceleration truncation degree used unless configured otherwise.
pub const DEFAULT_TRUNC: u32 = 1;

/// Truncation marker for acceleration-free internal expressions; combining
/// with a user expression adopts the user's degree.
pub const FREE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TermsError {
    #[error("mismatched truncation degrees {0} and {1}")]
    TruncationMismatch(u32, u32),
}

/// `ρ^rho · word`. A monomial is canonical once the word holds no `Rho`
/// letters, is sorted by rank and has had every constraint rule applied;
/// only the engine produces canonical monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub rho: i32,
    pub word: Vec<Letter>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { rho: 0, word: Vec::new() }
    }

    pub fn gen(g: Gen) -> Self {
        Monomial { rho: 0, word: vec![Letter::Gen(g)] }
    }

    pub fn rho(k: i32) -> Self {
        Monomial { rho: k, word: Vec::new() }
    }

    pub fn is_unit_word(&self) -> bool {
        self.word.is_empty()
    }

    /// Iterates the generator letters, skipping embedded ρ powers.
    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        self.word.iter().filter_map(|l| match l {
            Letter::Gen(g) => Some(*g),
            Letter::Rho(_) => None,
        })
    }

    pub fn count(&self, pred: impl Fn(&Gen) -> bool) -> usize {
        self.gens().filter(|g| pred(g)).count()
    }

    /// Builds a monomial from letters, merging adjacent ρ powers and
    /// absorbing leading ones into the prefix.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Monomial {
        let mut rho = 0;
        let mut word: Vec<Letter> = Vec::new();
        for l in letters {
            match l {
                Letter::Rho(k) if word.is_empty() => rho += k,
                Letter::Rho(k) => {
                    if let Some(Letter::Rho(prev)) = word.last_mut() {
                        *prev += k;
                        if *prev == 0 {
                            word.pop();
                        }
                    } else if k != 0 {
                        word.push(Letter::Rho(k));
                    }
                }
                g => word.push(g),
            }
        }
        Monomial { rho, word }
    }

    /// Free-algebra product. When the left word is empty the ρ powers merge,
    /// otherwise the right prefix is kept in place as a `Rho` letter.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        Monomial::from_letters(self.letters().into_iter().chain(other.letters()))
    }

    /// Reversed word; ρ and all generators are self-adjoint.
    pub fn reversed(&self) -> Monomial {
        Monomial::from_letters(self.letters().into_iter().rev())
    }

    /// Flattened letter sequence including the prefix.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v = Vec::with_capacity(self.word.len() + 1);
        if self.rho != 0 {
            v.push(Letter::Rho(self.rho));
        }
        v.extend_from_slice(&self.word);
        v
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter words first, then rank-lexicographic, then ρ exponent.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.rho.cmp(&other.rho))
    }
}

/// Finite formal sum with exact coefficients. No zero coefficient is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression<T: Field> {
    trunc: u32,
    terms: BTreeMap<Monomial, Coefficient<T>>,
}

impl<T: Field> Expression<T> {
    pub fn zero(trunc: u32) -> Self {
        Expression { trunc, terms: BTreeMap::new() }
    }

    pub fn term(trunc: u32, m: Monomial, c: Coefficient<T>) -> Self {
        let mut e = Self::zero(trunc);
        e.add_term(m, c);
        e
    }

    pub fn one(trunc: u32) -> Self {
        Self::term(trunc, Monomial::one(), Coefficient::one())
    }

    pub fn scalar(trunc: u32, c: Coefficient<T>) -> Self {
        Self::term(trunc, Monomial::one(), c)
    }

    pub fn gen(trunc: u32, g: Gen) -> Self {
        Self::term(trunc, Monomial::gen(g), Coefficient::one())
    }

    pub fn rho(trunc: u32, k: i32) -> Self {
        Self::term(trunc, Monomial::rho(k), Coefficient::one())
    }

    /// Raw product of letters, left to right.
    pub fn word(trunc: u32, letters: &[Letter]) -> Self {
        let mut m = Monomial::one();
        for l in letters {
            let next = match *l {
                Letter::Gen(g) => Monomial::gen(g),
                Letter::Rho(k) => Monomial::rho(k),
            };
            m = m.concat(&next);
        }
        Self::term(trunc, m, Coefficient::one())
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient<T>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coefficient<T>> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Coefficient<T>) {
        let c = c.truncated(self.trunc);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &Self, c: &Coefficient<T>) {
        for (m, oc) in &other.terms {
            self.add_term(m.clone(), oc.mul_trunc(c, self.trunc));
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, TermsError> {
        if self.trunc != other.trunc {
            return Err(TermsError::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(self.clone() + other.clone())
    }

    pub fn scale(&self, c: &Coefficient<T>) -> Self {
        let mut out = Self::zero(self.trunc);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_scalar(&self, s: T) -> Self {
        self.scale(&Coefficient::scalar(s))
    }

    /// Free-algebra product; the result is generally not canonical.
    pub fn mul_raw(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(trunc);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.concat(mb), ca.mul_trunc(cb, trunc));
            }
        }
        out
    }

    /// Anti-automorphism: reverse words, conjugate scalars.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.reversed(), c.conj());
        }
        out
    }

    pub fn truncated(&self, trunc: u32) -> Self {
        let mut out = Self::zero(trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn with_trunc(mut self, trunc: u32) -> Self {
        if trunc < self.trunc {
            return self.truncated(trunc);
        }
        self.trunc = trunc;
        self
    }

    /// Part of accel degree exactly `deg`.
    pub fn accel_part(&self, deg: u32) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.accel_part(deg));
        }
        out
    }

    /// Coefficient of the empty word with no ρ power.
    pub fn scalar_part(&self) -> Coefficient<T> {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// Everything except the scalar part.
    pub fn operator_part(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Monomial::one());
        out
    }

    pub fn contains_gen(&self, pred: impl Fn(&Gen) -> bool) -> bool {
        self.terms.keys().any(|m| m.gens().any(|g| pred(&g)))
    }

    pub fn max_accel_degree(&self) -> u32 {
        self.terms.values().map(|c| c.accel_degree()).max().unwrap_or(0)
    }
}

impl<T: Field> Add for Expression<T> {
    type Output = Self;
    /// Mismatched truncations combine at the smaller degree; use
    /// [`Expression::checked_add`] to reject them instead.
    fn add(mut self, rhs: Self) -> Self {
        if rhs.trunc < self.trunc {
            self = self.truncated(rhs.trunc);
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<T: Field> Sub for Expression<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Field> Neg for Expression<T> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, c) in self.terms {
            out.add_term(m, -c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    type E = Expression<Scalar>;

    #[test]
    fn additive_inverse_and_like_terms() {
        let p0 = E::gen(1, Gen::P(0));
        assert!((p0.clone() + (-p0)).is_zero());
        let d = E::gen(1, Gen::D);
        let sum = d.scale(&Coefficient::int(2)) + d.scale(&Coefficient::int(3));
        assert_eq!(sum, d.scale(&Coefficient::int(5)));
    }

    #[test]
    fn truncation_drops_second_order() {
        let p0 = E::gen(1, Gen::P(0));
        let a1 = Coefficient::accel(1);
        let a12 = a1.mul_trunc(&Coefficient::accel(2), 2);
        let sum = p0.scale(&a1) + E::term(2, Monomial::gen(Gen::P(0)), a12).truncated(1);
        assert_eq!(sum, p0.scale(&a1));
    }

    #[test]
    fn checked_add_rejects_mixed_truncation() {
        let a = E::one(1);
        let b = E::one(2);
        assert_eq!(a.checked_add(&b), Err(TermsError::TruncationMismatch(1, 2)));
    }

    #[test]
    fn mul_concatenates_and_merges_rho() {
        let p = E::gen(1, Gen::P(1)).mul_raw(&E::gen(1, Gen::P(0)));
        let (m, _) = p.terms().next().unwrap();
        assert_eq!(m.word, vec![Letter::Gen(Gen::P(1)), Letter::Gen(Gen::P(0))]);
        let r = E::rho(1, 1).mul_raw(&E::rho(1, -2));
        assert_eq!(r, E::rho(1, -1));
        let ge = E::gen(1, Gen::Gamma).scale(&Coefficient::i_hbar()).mul_raw(&E::gen(1, Gen::Eps));
        let (m, c) = ge.terms().next().unwrap();
        assert_eq!(m.word, vec![Letter::Gen(Gen::Gamma), Letter::Gen(Gen::Eps)]);
        assert_eq!(c, &Coefficient::i_hbar());
    }

    #[test]
    fn adjoint_reverses_and_conjugates() {
        let e = E::word(1, &[Gen::P(0).into(), Gen::D.into()]).scale_scalar(Scalar::imag_unit());
        let adj = e.adjoint();
        let expect = E::word(1, &[Gen::D.into(), Gen::P(0).into()]).scale_scalar(-Scalar::imag_unit());
        assert_eq!(adj, expect);
        assert_eq!(adj.adjoint(), e);
    }
}
