//! Index expansion and evaluation of syntax trees in any [`Algebra`].
//!
//! All symbols carry lower indices. A name occurring twice under one
//! product, call or symbol is a dummy and is summed with `η` signs; a name
//! occurring once is free and must be bound by the caller.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, EvalError};
use crate::coefficient::Coefficient;
use crate::observables::{j_value, Observable};
use crate::scalar::Field;
use crate::symbol::{eta, eta_diag, Gen};

use super::ast::{Func, Index, Node};

pub type Env = BTreeMap<String, u8>;

/// Free index names of `node`, ignoring names already bound in `env`.
pub fn free_indices(node: &Node, env: &Env) -> Result<Vec<String>, EvalError> {
    let (free, _) = split_indices(node, env)?;
    Ok(free)
}

/// `(free, dummies)` at this node.
fn split_indices(node: &Node, env: &Env) -> Result<(Vec<String>, Vec<String>), EvalError> {
    let mut names: Vec<String> = Vec::new();
    match node {
        Node::Int(_) | Node::ImagUnit | Node::Hbar => {}
        Node::Symbol { indices, .. } => {
            for i in indices {
                if let Index::Name(n) = i {
                    if !env.contains_key(n) {
                        names.push(n.clone());
                    }
                }
            }
        }
        Node::Sum(items) => {
            let mut first: Option<Vec<String>> = None;
            for it in items {
                let mut f = free_indices(it, env)?;
                f.sort();
                if f.is_empty() {
                    continue;
                }
                match &first {
                    None => first = Some(f),
                    Some(g) if *g == f => {}
                    Some(g) => {
                        return Err(EvalError::Index(format!(
                            "summands have different free indices: {{{}}} vs {{{}}}",
                            g.join(","),
                            f.join(",")
                        )))
                    }
                }
            }
            return Ok((first.unwrap_or_default(), Vec::new()));
        }
        Node::Neg(a) | Node::Power(a, _) => return split_indices(a, env).map(|(f, _)| (f, Vec::new())),
        Node::Product(xs) | Node::Call { args: xs, .. } => {
            for x in xs {
                names.extend(free_indices(x, env)?);
            }
        }
        Node::Quotient(a, b) => {
            names.extend(free_indices(a, env)?);
            names.extend(free_indices(b, env)?);
        }
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for n in names {
        *counts.entry(n).or_default() += 1;
    }
    let mut free = Vec::new();
    let mut dummies = Vec::new();
    for (n, c) in counts {
        match c {
            1 => free.push(n),
            2 => dummies.push(n),
            _ => return Err(EvalError::Index(format!("index `{}` appears {} times", n, c))),
        }
    }
    Ok((free, dummies))
}

/// Evaluates `node` with free indices bound by `env`.
pub fn evaluate<T: Field, A: Algebra<T> + ?Sized>(alg: &A, node: &Node, env: &Env) -> Result<A::Value, EvalError> {
    let (free, dummies) = split_indices(node, env)?;
    if let Some(n) = free.first() {
        return Err(EvalError::Index(format!("free index `{}` is not bound", n)));
    }
    if dummies.is_empty() {
        return eval_local(alg, node, env);
    }
    let mut acc: Option<A::Value> = None;
    let total = 4usize.pow(dummies.len() as u32);
    for code in 0..total {
        let mut inner = env.clone();
        let mut sign = 1i64;
        let mut c = code;
        for d in &dummies {
            let v = (c % 4) as u8;
            c /= 4;
            sign *= eta_diag(v as usize);
            inner.insert(d.clone(), v);
        }
        let v = eval_local(alg, node, &inner)?;
        let v = if sign == 1 { v } else { alg.scale(&v, &Coefficient::int(sign))? };
        acc = Some(match acc {
            None => v,
            Some(a) => alg.add(&a, &v)?,
        });
    }
    Ok(acc.expect("at least one assignment"))
}

fn resolve(i: &Index, env: &Env) -> Result<u8, EvalError> {
    match i {
        Index::Value(v) => Ok(*v),
        Index::Name(n) => env
            .get(n)
            .copied()
            .ok_or_else(|| EvalError::Index(format!("free index `{}` is not bound", n))),
    }
}

fn eval_local<T: Field, A: Algebra<T> + ?Sized>(alg: &A, node: &Node, env: &Env) -> Result<A::Value, EvalError> {
    match node {
        Node::Int(_) | Node::ImagUnit | Node::Hbar => alg.scalar(scalar_value(node)?),
        Node::Symbol { name, indices } => {
            let idx = indices.iter().map(|i| resolve(i, env)).collect::<Result<Vec<u8>, _>>()?;
            symbol(alg, name, &idx)
        }
        Node::Neg(a) => alg.scale(&evaluate(alg, a, env)?, &Coefficient::int(-1)),
        Node::Sum(items) => {
            let mut acc = evaluate(alg, &items[0], env)?;
            for it in &items[1..] {
                acc = alg.add(&acc, &evaluate(alg, it, env)?)?;
            }
            Ok(acc)
        }
        Node::Product(xs) => {
            let mut acc = evaluate(alg, &xs[0], env)?;
            for x in &xs[1..] {
                acc = alg.mul(&acc, &evaluate(alg, x, env)?)?;
            }
            Ok(acc)
        }
        Node::Quotient(a, b) => {
            let den = scalar_value(b)?;
            let inv = den
                .inverse()
                .ok_or_else(|| EvalError::NotScalar(format!("cannot invert {}", den.render())))?;
            alg.scale(&evaluate(alg, a, env)?, &inv)
        }
        Node::Power(base, k) => power(alg, base, *k, env),
        Node::Call { func, args } => {
            let a = evaluate(alg, &args[0], env)?;
            match func {
                Func::Comm => alg.commutator(&a, &evaluate(alg, &args[1], env)?),
                Func::Sym => alg.sym_product(&a, &evaluate(alg, &args[1], env)?),
                Func::Div => alg.sym_divide(&a, &evaluate(alg, &args[1], env)?),
                Func::Adj => alg.adjoint(&a),
                Func::Prime => alg.prime(&a),
                Func::AcceleratedPrime => alg.accelerated_prime(&a),
                Func::Conj => alg.conjugate(&a),
            }
        }
    }
}

fn power<T: Field, A: Algebra<T> + ?Sized>(alg: &A, base: &Node, k: i32, env: &Env) -> Result<A::Value, EvalError> {
    if let Node::Symbol { name, indices } = base {
        if indices.is_empty() && name == "rho" {
            return alg.rho_pow(k);
        }
        if indices.is_empty() && name == "M" && k == -1 {
            return alg.observable(Observable::InverseMass);
        }
    }
    if let Ok(c) = scalar_value(base) {
        let c = if k < 0 {
            c.inverse().ok_or_else(|| EvalError::NotScalar(format!("cannot invert {}", c.render())))?
        } else {
            c
        };
        let mut acc = Coefficient::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc * c.clone();
        }
        return alg.scalar(acc);
    }
    if k < 0 {
        return Err(EvalError::NotScalar("negative power of an operator other than rho or M".into()));
    }
    let b = evaluate(alg, base, env)?;
    let mut acc = alg.scalar(Coefficient::one())?;
    for _ in 0..k {
        acc = alg.mul(&acc, &b)?;
    }
    Ok(acc)
}

/// Value of a purely numeric subtree (integers, `i`, `hbar`).
pub fn scalar_value<T: Field>(node: &Node) -> Result<Coefficient<T>, EvalError> {
    let not = || EvalError::NotScalar("divisor must be built from numbers, i and hbar".into());
    Ok(match node {
        Node::Int(n) => Coefficient::int(*n),
        Node::ImagUnit => Coefficient::scalar(T::imag_unit()),
        Node::Hbar => Coefficient::hbar_pow(T::one(), 1),
        Node::Neg(a) => -scalar_value(a)?,
        Node::Sum(xs) => {
            let mut acc = Coefficient::zero();
            for x in xs {
                acc = acc + scalar_value(x)?;
            }
            acc
        }
        Node::Product(xs) => {
            let mut acc = Coefficient::one();
            for x in xs {
                acc = acc * scalar_value(x)?;
            }
            acc
        }
        Node::Quotient(a, b) => scalar_value::<T>(a)? * scalar_value::<T>(b)?.inverse().ok_or_else(not)?,
        Node::Power(b, k) => {
            let c = scalar_value::<T>(b)?;
            let c = if *k < 0 { c.inverse().ok_or_else(not)? } else { c };
            let mut acc = Coefficient::one();
            for _ in 0..k.unsigned_abs() {
                acc = acc * c.clone();
            }
            acc
        }
        _ => return Err(not()),
    })
}

fn want(name: &str, idx: &[u8], n: usize) -> Result<(), EvalError> {
    if idx.len() == n {
        Ok(())
    } else {
        Err(EvalError::Index(format!("`{}` takes {} index slot(s), got {}", name, n, idx.len())))
    }
}

fn symbol<T: Field, A: Algebra<T> + ?Sized>(alg: &A, name: &str, idx: &[u8]) -> Result<A::Value, EvalError> {
    let gen1 = |f: fn(u8) -> Gen| -> Result<A::Value, EvalError> {
        want(name, idx, 1)?;
        alg.generator(f(idx[0]))
    };
    match name {
        "P" => gen1(Gen::P),
        "W" => gen1(Gen::W),
        "C" => gen1(Gen::C),
        "J" => {
            want(name, idx, 2)?;
            j_value(alg, idx[0], idx[1])
        }
        "D" | "gamma" | "eps" => {
            want(name, idx, 0)?;
            alg.generator(match name {
                "D" => Gen::D,
                "gamma" => Gen::Gamma,
                _ => Gen::Eps,
            })
        }
        "rho" => {
            want(name, idx, 0)?;
            alg.rho_pow(1)
        }
        "eta" => {
            want(name, idx, 2)?;
            alg.scalar(Coefficient::int(eta(idx[0] as usize, idx[1] as usize)))
        }
        "a" => {
            want(name, idx, 1)?;
            let r = idx[0] as usize;
            alg.scalar(Coefficient::accel(r).scale(&T::from_int(eta_diag(r))))
        }
        _ => match Observable::arity(name) {
            Some(n) => {
                want(name, idx, n)?;
                alg.observable(Observable::from_symbol(name, idx).expect("arity checked"))
            }
            None => Err(EvalError::UnknownSymbol(name.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::parse;
    use crate::observables::Symbolic;
    use crate::Expr;

    fn ev(src: &str) -> Result<Expr, EvalError> {
        evaluate(&Symbolic::global(1), &parse(src).unwrap(), &Env::new())
    }

    #[test]
    fn dummy_contraction_uses_metric_signs() {
        let got = ev("W[mu]*P[mu]").unwrap();
        let expect = ev("W0*P0 - W1*P1 - W2*P2 - W3*P3").unwrap();
        assert_eq!(got, expect);
        assert_eq!(ev("eta[mu,mu]").unwrap(), Expr::scalar(1, Coefficient::int(4)));
    }

    #[test]
    fn triple_index_is_an_error() {
        assert!(matches!(ev("P[mu]*P[mu]*P[mu]"), Err(EvalError::Index(_))));
        assert!(matches!(ev("P[mu]"), Err(EvalError::Index(_))));
        assert!(matches!(ev("P[mu] + P[nu]"), Err(EvalError::Index(_))));
    }

    #[test]
    fn raw_antisymmetric_j() {
        assert_eq!(ev("J[2,1]").unwrap(), ev("-J12").unwrap());
        assert!(ev("J[3,3]").unwrap().is_zero());
    }

    #[test]
    fn lowered_acceleration() {
        let a1 = ev("a[1]").unwrap();
        assert_eq!(a1, Expr::scalar(1, -Coefficient::accel(1)));
    }

    #[test]
    fn bound_free_index() {
        let mut env = Env::new();
        env.insert("nu".into(), 2);
        let got = evaluate(&Symbolic::global(1), &parse("comm(P[2], X[nu])").unwrap(), &env).unwrap();
        assert_eq!(got, Expr::scalar(1, Coefficient::int(1)));
        assert_eq!(ev("comm(P[mu], X[mu])").unwrap(), Expr::scalar(1, Coefficient::int(-4)));
    }

    #[test]
    fn scalar_division_only() {
        assert!(ev("P0/hbar").is_ok());
        assert!(matches!(ev("P0/P1"), Err(EvalError::NotScalar(_))));
        assert!(matches!(ev("Q[0]"), Err(EvalError::UnknownSymbol(_))));
    }
}
