//! Differential field of the momentum-space realization.
//!
//! Elements are `(a + b·m) / (p²)^k` with `a, b` polynomials in the lowered
//! momentum components `p_0..p_3` and `m` the adjoined mass, `m² = p²`.
//! `{1, m}` is a basis over the rational functions, so an element is zero
//! iff both numerators vanish.

use std::collections::BTreeMap;

use crate::scalar::Field;
use crate::symbol::eta_diag;

pub type Exps = [u8; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: Field> {
    terms: BTreeMap<Exps, T>,
}

impl<T: Field> Poly<T> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(e: Exps, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    /// `p_ν`
    pub fn var(nu: usize) -> Self {
        let mut e = [0; 4];
        e[nu] = 1;
        Self::monomial(e, T::one())
    }

    /// `p² = η^{μν} p_μ p_ν`
    pub fn p2() -> Self {
        let mut out = Self::zero();
        for nu in 0..4 {
            let mut e = [0; 4];
            e[nu] = 2;
            out.add_term(e, T::from_int(eta_diag(nu)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exps, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `∂/∂p_ν`
    pub fn deriv(&self, nu: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[nu] == 0 {
                continue;
            }
            let mut f = *e;
            f[nu] -= 1;
            out.add_term(f, c.clone() * T::from_int(e[nu] as i64));
        }
        out
    }

    /// Exact quotient by `p²`, if any. Division is in `p_0`, where `p²` is
    /// monic of degree two.
    pub fn div_p2(&self) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let spatial: Vec<(Exps, T)> =
            (1..4).map(|nu| {
                let mut e = [0; 4];
                e[nu] = 2;
                (e, T::one())
            }).collect();
        loop {
            let lead = rem.terms.iter().filter(|(e, _)| e[0] >= 2).max_by_key(|(e, _)| e[0]);
            let Some((e, c)) = lead.map(|(e, c)| (*e, c.clone())) else { break };
            let mut q = e;
            q[0] -= 2;
            quot.add_term(q, c.clone());
            // rem −= c·p0^(e0−2)·rest·(p0² − Σ p_i²)
            rem.add_term(e, -c.clone());
            for (s, one) in &spatial {
                let f = [q[0] + s[0], q[1] + s[1], q[2] + s[2], q[3] + s[3]];
                rem.add_term(f, c.clone() * one.clone());
            }
        }
        rem.is_zero().then_some(quot)
    }

    pub fn eval(&self, p: &[T; 4]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for nu in 0..4 {
                for _ in 0..e[nu] {
                    t = t * p[nu].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

/// `(a + b·m) / (p²)^k`
#[derive(Clone, Debug)]
pub struct Elem<T: Field> {
    pub a: Poly<T>,
    pub b: Poly<T>,
    pub k: u32,
}

fn p2_pow<T: Field>(n: u32) -> Poly<T> {
    let mut out = Poly::constant(T::one());
    let p2 = Poly::p2();
    for _ in 0..n {
        out = out.mul(&p2);
    }
    out
}

impl<T: Field> Elem<T> {
    pub fn zero() -> Self {
        Elem { a: Poly::zero(), b: Poly::zero(), k: 0 }
    }

    pub fn constant(c: T) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn poly(a: Poly<T>) -> Self {
        Elem { a, b: Poly::zero(), k: 0 }
    }

    pub fn mass() -> Self {
        Elem { a: Poly::zero(), b: Poly::constant(T::one()), k: 0 }
    }

    /// `m^n` for any integer `n`.
    pub fn mass_pow(n: i32) -> Self {
        let half = n.div_euclid(2);
        let odd = n.rem_euclid(2) == 1;
        let (num, k) = if half >= 0 { (p2_pow(half as u32), 0) } else { (Poly::constant(T::one()), (-half) as u32) };
        if odd {
            Elem { a: Poly::zero(), b: num, k }
        } else {
            Elem { a: num, b: Poly::zero(), k }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn lift(&self, k: u32) -> (Poly<T>, Poly<T>) {
        if k == self.k {
            return (self.a.clone(), self.b.clone());
        }
        let f = p2_pow(k - self.k);
        (self.a.mul(&f), self.b.mul(&f))
    }

    fn reduced(mut self) -> Self {
        if self.is_zero() {
            self.k = 0;
            return self;
        }
        while self.k > 0 {
            match (self.a.div_p2(), self.b.div_p2()) {
                (Some(a), Some(b)) => {
                    self.a = a;
                    self.b = b;
                    self.k -= 1;
                }
                _ => break,
            }
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.k.max(o.k);
        let (a1, b1) = self.lift(k);
        let (a2, b2) = o.lift(k);
        Elem { a: a1.add(&a2), b: b1.add(&b2), k }.reduced()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        Elem { a: self.a.scale(s), b: self.b.scale(s), k: self.k }.reduced()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&Poly::p2()));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Elem { a, b, k: self.k + o.k }.reduced()
    }

    /// `∂/∂p_ν`, using `∂m = η_νν p_ν m / p²`.
    pub fn deriv(&self, nu: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p2 = Poly::p2();
        let eta_p = Poly::var(nu).scale(&T::from_int(eta_diag(nu)));
        let two_k = T::from_int(2 * self.k as i64);
        // [(a' + b'm)p² + b η p_ν m − 2k η p_ν (a + b m)] / (p²)^(k+1)
        let a = self.a.deriv(nu).mul(&p2).sub(&eta_p.mul(&self.a).scale(&two_k));
        let b = self
            .b
            .deriv(nu)
            .mul(&p2)
            .add(&eta_p.mul(&self.b))
            .sub(&eta_p.mul(&self.b).scale(&two_k));
        Elem { a, b, k: self.k + 1 }.reduced()
    }

    /// Value at a point `p` where the mass takes the value `m` (`m² = p²`).
    pub fn eval(&self, p: &[T; 4], m: &T) -> T {
        let mut den = T::one();
        let p2 = Poly::<T>::p2().eval(p);
        for _ in 0..self.k {
            den = den * p2.clone();
        }
        (self.a.eval(p) + self.b.eval(p) * m.clone()) / den
    }

    /// Short text for diagnostics.
    pub fn describe(&self) -> String {
        format!("({} terms + m·{} terms)/(p²)^{}", self.a.len(), self.b.len(), self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    type E = Elem<Scalar>;

    #[test]
    fn mass_squares_to_p2() {
        let m = E::mass();
        assert!(m.mul(&m).sub(&E::poly(Poly::p2())).is_zero());
        assert!(E::mass_pow(-1).mul(&m).sub(&E::constant(Scalar::from_int(1))).is_zero());
        assert!(E::mass_pow(3).mul(&E::mass_pow(-2)).sub(&m).is_zero());
    }

    #[test]
    fn division_by_p2_is_exact_or_none() {
        let p2 = Poly::<Scalar>::p2();
        let f = Poly::var(1).mul(&Poly::var(0)).add(&Poly::constant(Scalar::from_int(3)));
        assert_eq!(f.mul(&p2).div_p2(), Some(f.clone()));
        assert_eq!(f.div_p2(), None);
    }

    #[test]
    fn derivative_of_mass() {
        // ∂m/∂p_1 = −p_1/m
        let d = E::mass().deriv(1);
        let expect = E::poly(Poly::var(1)).mul(&E::mass_pow(-1)).neg();
        assert!(d.sub(&expect).is_zero());
    }

    #[test]
    fn derivative_obeys_leibniz_with_inverse_powers() {
        let f = E::poly(Poly::var(2)).mul(&E::mass_pow(-3));
        let g = E::poly(Poly::var(0).mul(&Poly::var(2))).add(&E::mass());
        for nu in 0..4 {
            let lhs = f.mul(&g).deriv(nu);
            let rhs = f.deriv(nu).mul(&g).add(&f.mul(&g.deriv(nu)));
            assert!(lhs.sub(&rhs).is_zero());
        }
    }
}
