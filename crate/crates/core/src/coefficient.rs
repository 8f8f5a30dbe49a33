//! Coefficients: Laurent polynomials in ħ with a truncated polynomial
//! dependence on the four acceleration parameters a⁰..a³.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

/// Exponent data of one coefficient term: `ħ^hbar · Π (a^ρ)^accel[ρ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CoeffKey {
    pub hbar: i32,
    pub accel: [u8; 4],
}

impl CoeffKey {
    pub const UNIT: CoeffKey = CoeffKey { hbar: 0, accel: [0; 4] };

    pub fn hbar(k: i32) -> Self {
        CoeffKey { hbar: k, accel: [0; 4] }
    }

    pub fn accel_degree(&self) -> u32 {
        self.accel.iter().map(|&d| d as u32).sum()
    }

    fn combine(&self, other: &CoeffKey) -> CoeffKey {
        let mut accel = self.accel;
        for (a, b) in accel.iter_mut().zip(other.accel.iter()) {
            *a += *b;
        }
        CoeffKey { hbar: self.hbar + other.hbar, accel }
    }
}

/// Finite sum `Σ scalar · ħ^k · a-monomial`. The zero coefficient is the
/// empty map.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficient<T: Field> {
    terms: BTreeMap<CoeffKey, T>,
}

impl<T: Field> Coefficient<T> {
    pub fn zero() -> Self {
        Coefficient { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(s: T) -> Self {
        Self::term(CoeffKey::UNIT, s)
    }

    pub fn term(key: CoeffKey, s: T) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(key, s);
        }
        Coefficient { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(T::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::scalar(T::from_ratio(n, d))
    }

    /// `s · ħ^k`
    pub fn hbar_pow(s: T, k: i32) -> Self {
        Self::term(CoeffKey::hbar(k), s)
    }

    /// `i·ħ`, the factor relating `AB − BA` to the commutator `(A,B)`.
    pub fn i_hbar() -> Self {
        Self::hbar_pow(T::imag_unit(), 1)
    }

    /// `1/(iħ) = −i·ħ⁻¹`
    pub fn inv_i_hbar() -> Self {
        Self::hbar_pow(-T::imag_unit(), -1)
    }

    /// The acceleration parameter `a^ρ`.
    pub fn accel(rho: usize) -> Self {
        let mut key = CoeffKey::UNIT;
        key.accel[rho] = 1;
        Self::term(key, T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffKey, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Degree in the acceleration parameters.
    pub fn accel_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.accel_degree()).max().unwrap_or(0)
    }

    pub fn truncated(mut self, trunc: u32) -> Self {
        self.terms.retain(|k, _| k.accel_degree() <= trunc);
        self
    }

    /// Keep only the part of accel degree exactly `deg`.
    pub fn accel_part(&self, deg: u32) -> Self {
        Coefficient {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.accel_degree() == deg)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, key: CoeffKey, s: T) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(T::zero);
        *slot = slot.clone() + s;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(*k, v.clone());
        }
    }

    /// Product with terms of accel degree above `trunc` dropped.
    pub fn mul_trunc(&self, other: &Self, trunc: u32) -> Self {
        let mut out = Coefficient::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key = ka.combine(kb);
                if key.accel_degree() <= trunc {
                    out.add_term(key, va.clone() * vb.clone());
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(k, v)| (*k, v.clone() * s.clone())).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Coefficient {
            terms: self.terms.iter().map(|(k, v)| (*k, v.conj())).collect(),
        }
    }

    /// The single term, when there is exactly one.
    pub fn as_single(&self) -> Option<(CoeffKey, &T)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, v)| (*k, v))
        } else {
            None
        }
    }

    /// Plain scalar value when the coefficient carries neither ħ nor a.
    pub fn as_scalar(&self) -> Option<T> {
        match self.as_single() {
            None if self.is_zero() => Some(T::zero()),
            Some((k, v)) if k == CoeffKey::UNIT => Some(v.clone()),
            _ => None,
        }
    }

    /// Inverse of a single-term, a-free coefficient.
    pub fn inverse(&self) -> Option<Self> {
        let (k, v) = self.as_single()?;
        if k.accel_degree() != 0 {
            return None;
        }
        Some(Coefficient::hbar_pow(T::one() / v.clone(), -k.hbar))
    }

    /// Substitute numeric values for ħ and the accelerations.
    pub fn evaluate(&self, hbar: &T, accel: &[T; 4]) -> T {
        let mut acc = T::zero();
        for (k, v) in &self.terms {
            let mut t = v.clone();
            t = t * pow_int(hbar, k.hbar);
            for (rho, &d) in k.accel.iter().enumerate() {
                t = t * pow_int(&accel[rho], d as i32);
            }
            acc = acc + t;
        }
        acc
    }

    /// Returns `(negative, body)`; `body` is `None` for a bare ±1.
    pub fn render_parts(&self) -> (bool, Option<String>) {
        if self.terms.len() == 1 {
            let (k, v) = self.terms.iter().next().unwrap();
            let neg = v.is_negative_leading();
            let mag = if neg { -v.clone() } else { v.clone() };
            let body = render_term(k, &mag);
            return (neg, body);
        }
        let mut out = String::new();
        for (idx, (k, v)) in self.terms.iter().enumerate() {
            let neg = v.is_negative_leading();
            let mag = if neg { -v.clone() } else { v.clone() };
            let body = render_term(k, &mag).unwrap_or_else(|| "1".to_string());
            match (idx, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        (false, Some(format!("({})", out)))
    }

    /// Standalone text form, e.g. `-2*i/hbar` or `(hbar + a[0])`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (neg, body) = self.render_parts();
        let body = body.unwrap_or_else(|| "1".into());
        if neg {
            format!("-{}", body)
        } else {
            body
        }
    }
}

fn pow_int<T: Field>(base: &T, e: i32) -> T {
    let mut out = T::one();
    for _ in 0..e.unsigned_abs() {
        out = out * base.clone();
    }
    if e < 0 {
        T::one() / out
    } else {
        out
    }
}

/// Renders a nonnegative-leading term; `None` when it is exactly 1.
fn render_term<T: Field>(k: &CoeffKey, mag: &T) -> Option<String> {
    let mut num: Vec<String> = Vec::new();
    let scalar_one = mag.is_one();
    if !scalar_one {
        num.push(mag.render());
    }
    if k.hbar > 0 {
        num.push(if k.hbar == 1 { "hbar".into() } else { format!("hbar^{}", k.hbar) });
    }
    for (rho, &d) in k.accel.iter().enumerate() {
        for _ in 0..d {
            num.push(format!("a[{}]", rho));
        }
    }
    let den = match k.hbar {
        h if h < 0 && h == -1 => Some("hbar".to_string()),
        h if h < 0 => Some(format!("hbar^{}", -h)),
        _ => None,
    };
    if num.is_empty() && den.is_none() {
        return None;
    }
    let mut s = if num.is_empty() { "1".to_string() } else { num.join("*") };
    if let Some(d) = den {
        s.push('/');
        s.push_str(&d);
    }
    let factors = num.len() + usize::from(k.hbar < 0);
    if factors > 1 {
        s = format!("({})", s);
    }
    Some(s)
}

impl<T: Field> Add for Coefficient<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<T: Field> Sub for Coefficient<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&-rhs);
        self
    }
}

impl<T: Field> Neg for Coefficient<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-T::one())
    }
}

/// Untruncated product; callers working with accelerations should use
/// [`Coefficient::mul_trunc`].
impl<T: Field> Mul for Coefficient<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_trunc(&rhs, u32::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    type C = Coefficient<Scalar>;

    #[test]
    fn i_hbar_times_inverse_is_one() {
        assert_eq!(C::i_hbar() * C::inv_i_hbar(), C::one());
        assert_eq!(C::i_hbar().inverse().unwrap(), C::inv_i_hbar());
    }

    #[test]
    fn truncation_drops_high_degree() {
        let a1 = C::accel(1);
        let a2 = C::accel(2);
        assert!(a1.mul_trunc(&a2, 1).is_zero());
        assert_eq!(a1.mul_trunc(&a2, 2).accel_degree(), 2);
    }

    #[test]
    fn render_forms() {
        assert_eq!(C::i_hbar().render(), "(i*hbar)");
        assert_eq!((C::inv_i_hbar() * C::int(2)).render(), "-(2*i/hbar)");
        assert_eq!(C::int(-3).render(), "-3");
        assert_eq!((C::one() + C::accel(0)).render(), "(1 + a[0])");
    }
}
