//! The commutator table `(A, B) = (AB − BA)/(iħ)` on generator symbols.

use std::collections::HashMap;

use crate::coefficient::Coefficient;
use crate::expr::{Expression, Monomial, FREE};
use crate::scalar::Field;
use crate::symbol::{eta, Gen, Letter};

/// A table entry. `Undefined` marks pairs the algebra does not fix.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry<T: Field> {
    Defined(Expression<T>),
    Undefined,
}

#[derive(Clone, Debug)]
pub struct CommutatorTable<T: Field> {
    entries: HashMap<(Gen, Gen), Entry<T>>,
}

/// Linear combination of generators with integer weights, as an expression.
pub(crate) fn lin<T: Field>(items: &[(i64, Gen)]) -> Expression<T> {
    let mut e = Expression::zero(FREE);
    for &(c, g) in items {
        if c != 0 {
            e.add_term(Monomial::gen(g), Coefficient::int(c));
        }
    }
    e
}

/// `Σ c·J_ij` where `J_ii` vanishes and `J_ji = −J_ij`.
fn push_j(items: &mut Vec<(i64, Gen)>, c: i64, i: u8, j: u8) {
    if c == 0 {
        return;
    }
    if let Some((s, g)) = Gen::j(i, j) {
        items.push((c * s, g));
    }
}

fn et(a: u8, b: u8) -> i64 {
    eta(a as usize, b as usize)
}

/// `(J_μν, V_ρ) = η_νρ V_μ − η_μρ V_ν` for a vector generator family `V`.
fn vector_law(mu: u8, nu: u8, rho: u8, v: fn(u8) -> Gen) -> Vec<(i64, Gen)> {
    vec![(et(nu, rho), v(mu)), (-et(mu, rho), v(nu))]
}

/// Bracket of the fifteen conformal generators, or `None` if either is
/// outside that set.
pub fn lie_bracket<T: Field>(a: Gen, b: Gen) -> Option<Expression<T>> {
    use Gen::*;
    let items: Vec<(i64, Gen)> = match (a, b) {
        (P(_), P(_)) | (C(_), C(_)) | (D, D) => vec![],
        (J(m, n), P(r)) => vector_law(m, n, r, P),
        (J(m, n), C(r)) => vector_law(m, n, r, C),
        (J(m, n), J(r, s)) => {
            let mut v = Vec::new();
            push_j(&mut v, et(n, r), m, s);
            push_j(&mut v, et(m, s), n, r);
            push_j(&mut v, -et(m, r), n, s);
            push_j(&mut v, -et(n, s), m, r);
            v
        }
        (D, P(m)) => vec![(1, P(m))],
        (D, J(_, _)) => vec![],
        (D, C(m)) => vec![(-1, C(m))],
        (P(m), C(n)) => {
            let mut v = vec![(-2 * et(m, n), D)];
            push_j(&mut v, -2, m, n);
            v
        }
        (P(_), J(_, _)) | (C(_), J(_, _)) | (P(_), D) | (J(_, _), D) | (C(_), D) | (C(_), P(_)) => {
            return lie_bracket::<T>(b, a).map(|e| -e)
        }
        _ => return None,
    };
    Some(lin(&items))
}

fn is_lie(g: Gen) -> bool {
    !matches!(g, Gen::W(_) | Gen::Gamma | Gen::Eps)
}

impl<T: Field> CommutatorTable<T> {
    /// Lie sector plus the sign sector (γ, ε); W entries are added by the
    /// bootstrap.
    pub fn base() -> Self {
        let mut entries = HashMap::new();
        let all = Gen::all();
        for &a in &all {
            for &b in &all {
                if let Some(e) = lie_bracket::<T>(a, b) {
                    entries.insert((a, b), Entry::Defined(e));
                }
            }
        }
        for &s in &[Gen::Gamma, Gen::Eps] {
            for &g in &all {
                if g == Gen::Gamma || g == Gen::Eps || matches!(g, Gen::C(_)) {
                    continue;
                }
                entries.insert((s, g), Entry::Defined(Expression::zero(FREE)));
                entries.insert((g, s), Entry::Defined(Expression::zero(FREE)));
            }
            entries.insert((s, s), Entry::Defined(Expression::zero(FREE)));
        }
        // (γ, ε) = (γε − εγ)/(iħ) = 2γε/(iħ)
        let ge = Expression::word(FREE, &[Letter::Gen(Gen::Gamma), Letter::Gen(Gen::Eps)])
            .scale(&Coefficient::inv_i_hbar().scale(&T::from_int(2)));
        entries.insert((Gen::Eps, Gen::Gamma), Entry::Defined(-ge.clone()));
        entries.insert((Gen::Gamma, Gen::Eps), Entry::Defined(ge));
        for mu in 0..4 {
            entries.insert((Gen::C(mu), Gen::Eps), Entry::Defined(Expression::zero(FREE)));
            entries.insert((Gen::Eps, Gen::C(mu)), Entry::Defined(Expression::zero(FREE)));
            entries.insert((Gen::C(mu), Gen::Gamma), Entry::Undefined);
            entries.insert((Gen::Gamma, Gen::C(mu)), Entry::Undefined);
        }
        CommutatorTable { entries }
    }

    /// Inserts `(a,b) = e` and `(b,a) = −e`.
    pub fn insert_antisym(&mut self, a: Gen, b: Gen, e: Expression<T>) {
        self.entries.insert((b, a), Entry::Defined(-e.clone()));
        self.entries.insert((a, b), Entry::Defined(e));
    }

    pub fn get(&self, a: Gen, b: Gen) -> Option<&Entry<T>> {
        self.entries.get(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pairs violating `(A,B) = −(B,A)`.
    pub fn antisymmetry_violations(&self) -> Vec<(Gen, Gen)> {
        let mut bad = Vec::new();
        for (&(a, b), e) in &self.entries {
            match (e, self.entries.get(&(b, a))) {
                (Entry::Defined(x), Some(Entry::Defined(y))) => {
                    if (x.clone() + y.clone()).is_zero() {
                        continue;
                    }
                    bad.push((a, b));
                }
                (Entry::Undefined, Some(Entry::Undefined)) => {}
                _ => bad.push((a, b)),
            }
        }
        bad.sort();
        bad
    }

    /// Lie-sector entries only.
    pub fn lie_entries(&self) -> impl Iterator<Item = (Gen, Gen, &Expression<T>)> {
        self.entries.iter().filter_map(|(&(a, b), e)| match e {
            Entry::Defined(x) if is_lie(a) && is_lie(b) => Some((a, b, x)),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn p_c_bracket() {
        let e: Expression<Scalar> = lie_bracket(Gen::P(0), Gen::C(0)).unwrap();
        assert_eq!(e, lin(&[(-2, Gen::D)]));
        let e: Expression<Scalar> = lie_bracket(Gen::P(1), Gen::C(2)).unwrap();
        assert_eq!(e, lin(&[(-2, Gen::J(1, 2))]));
        let e: Expression<Scalar> = lie_bracket(Gen::C(2), Gen::P(1)).unwrap();
        assert_eq!(e, lin(&[(-2, Gen::J(1, 2))]).scale_scalar(-Scalar::from_int(1)));
    }

    #[test]
    fn base_table_is_antisymmetric() {
        let t = CommutatorTable::<Scalar>::base();
        assert!(t.antisymmetry_violations().is_empty());
        assert_eq!(t.get(Gen::C(1), Gen::Gamma), Some(&Entry::Undefined));
    }

    #[test]
    fn dilatation_weights() {
        for g in Gen::lie_basis() {
            let e: Expression<Scalar> = lie_bracket(Gen::D, g).unwrap();
            let expect = Expression::gen(FREE, g).scale(&Coefficient::int(g.weight() as i64));
            assert_eq!(e, expect, "{}", g);
        }
    }
}
