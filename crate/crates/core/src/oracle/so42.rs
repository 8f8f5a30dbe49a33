//! Six-dimensional matrix realization of so(4,2).
//!
//! `L_AB` act on `R^6` with metric `diag(+,−,−,−,−,+)`,
//! `(L_AB)^C_D = δ^C_A g_BD − δ^C_B g_AD`. The generators are
//!
//! ```text
//! J_μν = κ L_μν    D = δ L_45    P_μ = α (L_μ5 + L_μ4)    C_μ = β (L_μ5 − L_μ4)
//! ```
//!
//! with the constants solved against the commutator table and `ħ = 1`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, EvalError};
use crate::coefficient::Coefficient;
use crate::engine::w_expansion;
use crate::engine::table::Entry;
use crate::engine::RewriteEngine;
use crate::scalar::Field;
use crate::symbol::{eta_diag, Gen};

use super::realize;

const METRIC: [i64; 6] = [1, -1, -1, -1, -1, 1];

#[derive(Clone, Debug, PartialEq)]
pub struct Mat6<T: Field> {
    e: Vec<T>,
}

impl<T: Field> Mat6<T> {
    pub fn zero() -> Self {
        Mat6 { e: vec![T::zero(); 36] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..6 {
            m.e[7 * i] = T::one();
        }
        m
    }

    /// `L_AB`
    pub fn rotation(a: usize, b: usize) -> Self {
        let mut m = Self::zero();
        for d in 0..6 {
            if d == b {
                m.e[6 * a + d] = m.e[6 * a + d].clone() + T::from_int(METRIC[b]);
            }
            if d == a {
                m.e[6 * b + d] = m.e[6 * b + d].clone() - T::from_int(METRIC[a]);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(T::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat6 { e: self.e.iter().zip(&o.e).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat6 { e: self.e.iter().zip(&o.e).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat6 { e: self.e.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for r in 0..6 {
            for k in 0..6 {
                let a = &self.e[6 * r + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..6 {
                    let b = &o.e[6 * k + c];
                    if !b.is_zero() {
                        out.e[6 * r + c] = out.e[6 * r + c].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..6 {
            for c in 0..6 {
                out.e[6 * c + r] = self.e[6 * r + c].clone();
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum DictionarySolveError {
    #[error("no candidate for {0} reproduces the table")]
    NoCandidate(&'static str),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone)]
pub struct Dictionary<T: Field> {
    pub kappa: T,
    pub delta: T,
    pub alpha: T,
    pub beta: T,
}

pub struct So42Rep<T: Field> {
    pub dictionary: Dictionary<T>,
    p: Vec<Mat6<T>>,
    c: Vec<Mat6<T>>,
    j: Vec<((u8, u8), Mat6<T>)>,
    d: Mat6<T>,
    w: Vec<Mat6<T>>,
}

fn candidates<T: Field>() -> Vec<T> {
    let mut out = Vec::new();
    for (n, d) in [(1, 1), (2, 1), (1, 2)] {
        for phase in [T::one(), -T::one(), T::imag_unit(), -T::imag_unit()] {
            out.push(T::from_ratio(n, d) * phase);
        }
    }
    out
}

impl<T: Field> So42Rep<T> {
    fn assemble(dict: Dictionary<T>) -> Self {
        let l = |a: usize, b: usize| Mat6::<T>::rotation(a, b);
        let p = (0..4).map(|m| l(m, 5).add(&l(m, 4)).scale(&dict.alpha)).collect();
        let c = (0..4).map(|m| l(m, 5).sub(&l(m, 4)).scale(&dict.beta)).collect();
        let j = crate::symbol::J_PAIRS
            .iter()
            .map(|&(m, n)| ((m, n), l(m as usize, n as usize).scale(&dict.kappa)))
            .collect();
        let d = l(4, 5).scale(&dict.delta);
        So42Rep { dictionary: dict, p, c, j, d, w: Vec::new() }
    }

    fn with_w(mut self) -> Result<Self, EvalError> {
        self.w = (0..4u8).map(|a| realize(&self, &w_expansion::<T>(a))).collect::<Result<_, _>>()?;
        Ok(self)
    }

    /// Solves `κ` from `(J,J)`, `δ` from `(D,P)` and `β` from `(P,C)`; `α = 1`
    /// fixes the scaling freedom `P → λP, C → C/λ`.
    pub fn build(engine: &RewriteEngine<T>) -> Result<Self, DictionarySolveError> {
        let lie = Gen::lie_basis();
        let of = |pred: fn(&Gen) -> bool| -> Vec<Gen> { lie.iter().copied().filter(pred).collect() };
        let js = of(|g| matches!(g, Gen::J(..)));
        let ps = of(|g| matches!(g, Gen::P(_)));
        let cs = of(|g| matches!(g, Gen::C(_)));
        let cross = |xs: &[Gen], ys: &[Gen]| -> Vec<(Gen, Gen)> {
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
        };
        let one = Dictionary { kappa: T::one(), delta: T::one(), alpha: T::one(), beta: T::one() };
        let pick = |name: &'static str,
                    base: &Dictionary<T>,
                    set: &dyn Fn(&mut Dictionary<T>, T),
                    pairs: &[(Gen, Gen)]|
         -> Result<Dictionary<T>, DictionarySolveError> {
            for cand in candidates::<T>() {
                let mut d = base.clone();
                set(&mut d, cand);
                let rep = Self::assemble(d.clone());
                if pairs.iter().all(|&(a, b)| rep.mismatch(engine, a, b).ok() == Some(false)) {
                    return Ok(d);
                }
            }
            Err(DictionarySolveError::NoCandidate(name))
        };
        let d = pick("κ", &one, &|d, v| d.kappa = v, &cross(&js, &js))?;
        let d = pick("δ", &d, &|d, v| d.delta = v, &cross(&[Gen::D], &ps))?;
        let d = pick("β", &d, &|d, v| d.beta = v, &cross(&ps, &cs))?;
        Ok(Self::assemble(d).with_w()?)
    }

    fn mismatch(&self, engine: &RewriteEngine<T>, a: Gen, b: Gen) -> Result<bool, EvalError> {
        let Some(Entry::Defined(e)) = engine.table().get(a, b) else {
            return Ok(true);
        };
        let lhs = self.commutator(&self.generator(a)?, &self.generator(b)?)?;
        Ok(!lhs.sub(&realize(self, e)?).is_zero())
    }

    /// Lie generator as a matrix; `W` through its expansion.
    pub fn matrix(&self, g: Gen) -> Option<&Mat6<T>> {
        match g {
            Gen::P(m) => self.p.get(m as usize),
            Gen::C(m) => self.c.get(m as usize),
            Gen::J(m, n) => self.j.iter().find(|(k, _)| *k == (m, n)).map(|(_, v)| v),
            Gen::D => Some(&self.d),
            Gen::W(m) => self.w.get(m as usize),
            Gen::Gamma | Gen::Eps => None,
        }
    }
}

impl<T: Field> Algebra<T> for So42Rep<T> {
    type Value = Mat6<T>;

    fn scalar(&self, c: Coefficient<T>) -> Result<Mat6<T>, EvalError> {
        Ok(Mat6::identity().scale(&number(&c)?))
    }

    fn generator(&self, g: Gen) -> Result<Mat6<T>, EvalError> {
        self.matrix(g).cloned().ok_or_else(|| EvalError::Unsupported(format!("{} in so(4,2)", g)))
    }

    /// Only `ρ^(2n) = (P²)^n`, `n ≥ 0`; `P²` is nilpotent here.
    fn rho_pow(&self, k: i32) -> Result<Mat6<T>, EvalError> {
        if k < 0 || k % 2 != 0 {
            return Err(EvalError::Unsupported(format!("rho^{} in so(4,2)", k)));
        }
        let mut p2 = Mat6::zero();
        for (mu, p) in self.p.iter().enumerate() {
            p2 = p2.add(&p.mul(p).scale(&T::from_int(eta_diag(mu))));
        }
        let mut out = Mat6::identity();
        for _ in 0..k / 2 {
            out = out.mul(&p2);
        }
        Ok(out)
    }

    fn add(&self, a: &Mat6<T>, b: &Mat6<T>) -> Result<Mat6<T>, EvalError> {
        Ok(a.add(b))
    }

    fn scale(&self, a: &Mat6<T>, c: &Coefficient<T>) -> Result<Mat6<T>, EvalError> {
        Ok(a.scale(&number(c)?))
    }

    fn mul(&self, a: &Mat6<T>, b: &Mat6<T>) -> Result<Mat6<T>, EvalError> {
        Ok(a.mul(b))
    }

    fn adjoint(&self, _a: &Mat6<T>) -> Result<Mat6<T>, EvalError> {
        Err(EvalError::Unsupported("adjoint in so(4,2)".into()))
    }
}

fn number<T: Field>(c: &Coefficient<T>) -> Result<T, EvalError> {
    if c.accel_degree() > 0 {
        return Err(EvalError::Unsupported("acceleration parameters".into()));
    }
    Ok(c.evaluate(&T::one(), &std::array::from_fn(|_| T::zero())))
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub pairs: usize,
    pub matched: usize,
    pub mismatches: Vec<String>,
    /// W-sector entries derived by the bootstrap, checked as matrix identities.
    pub derived: usize,
    pub derived_matched: usize,
    pub derived_mismatches: Vec<String>,
    pub jacobi_triples: usize,
    pub jacobi_failures: usize,
    pub dictionary: Vec<(String, String)>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.matched == self.pairs && self.derived_matched == self.derived && self.jacobi_failures == 0
    }
}

/// Compares every pair of the fifteen Lie generators, every W entry and
/// every Jacobi triple against the realization.
pub fn table_check<T: Field>(engine: &RewriteEngine<T>) -> Result<TableReport, DictionarySolveError> {
    let rep = So42Rep::build(engine)?;
    let lie = Gen::lie_basis();
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for (i, &a) in lie.iter().enumerate() {
        for &b in &lie[i + 1..] {
            pairs += 1;
            if rep.mismatch(engine, a, b)? {
                mismatches.push(format!("({},{})", a, b));
            }
        }
    }
    let mut derived = 0;
    let mut derived_mismatches = Vec::new();
    for a in 0..4u8 {
        let w = Gen::W(a);
        let mut others: Vec<Gen> = lie.clone();
        others.extend((a + 1..4).map(Gen::W));
        for b in others {
            derived += 1;
            if rep.mismatch(engine, b, w)? {
                derived_mismatches.push(format!("({},{})", b, w));
            }
        }
    }
    let mut wp = Mat6::zero();
    for a in 0..4u8 {
        wp = wp.add(&rep.generator(Gen::W(a))?.mul(&rep.generator(Gen::P(a))?).scale(&T::from_int(eta_diag(a as usize))));
    }
    derived += 1;
    if !wp.is_zero() {
        derived_mismatches.push("W·P".into());
    }
    let mut jacobi_triples = 0;
    let mut jacobi_failures = 0;
    let br = |x: &Mat6<T>, y: &Mat6<T>| x.mul(y).sub(&y.mul(x));
    let ms: Vec<Mat6<T>> = lie.iter().map(|&g| rep.generator(g)).collect::<Result<_, _>>()?;
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            for k in j + 1..ms.len() {
                jacobi_triples += 1;
                let s = br(&ms[i], &br(&ms[j], &ms[k]))
                    .add(&br(&ms[j], &br(&ms[k], &ms[i])))
                    .add(&br(&ms[k], &br(&ms[i], &ms[j])));
                if !s.is_zero() {
                    jacobi_failures += 1;
                }
            }
        }
    }
    let d = &rep.dictionary;
    let dictionary = vec![
        ("kappa".to_string(), d.kappa.render()),
        ("delta".to_string(), d.delta.render()),
        ("alpha".to_string(), d.alpha.render()),
        ("beta".to_string(), d.beta.render()),
    ];
    Ok(TableReport {
        pairs,
        matched: pairs - mismatches.len(),
        mismatches,
        derived,
        derived_matched: derived - derived_mismatches.len(),
        derived_mismatches,
        jacobi_triples,
        jacobi_failures,
        dictionary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn rotations_preserve_the_metric() {
        let g = {
            let mut m = Mat6::<Scalar>::zero();
            for i in 0..6 {
                m.e[7 * i] = Scalar::from_int(METRIC[i]);
            }
            m
        };
        for a in 0..6 {
            for b in a + 1..6 {
                let l = Mat6::<Scalar>::rotation(a, b);
                // Lᵀg + gL = 0
                assert!(l.transpose().mul(&g).add(&g.mul(&l)).is_zero());
            }
        }
    }

    #[test]
    fn full_table_matches() {
        let report = table_check(crate::engine()).unwrap();
        assert_eq!((report.matched, report.pairs), (105, 105), "{:?}", report.mismatches);
        assert!(report.passed(), "{:?}", report.derived_mismatches);
        assert_eq!(report.jacobi_triples, 455);
    }

    #[test]
    fn momentum_and_special_conformal_close_on_dilation() {
        let rep = So42Rep::<Scalar>::build(crate::engine()).unwrap();
        let p0 = rep.generator(Gen::P(0)).unwrap();
        let c0 = rep.generator(Gen::C(0)).unwrap();
        let d = rep.generator(Gen::D).unwrap();
        // [P_0, C_0] = iħ(−2D)
        let lhs = p0.mul(&c0).sub(&c0.mul(&p0));
        assert_eq!(lhs, d.scale(&(Scalar::imag_unit() * Scalar::from_int(-2))));
    }
}
