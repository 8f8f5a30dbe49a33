//! Momentum-space realization on 4-spinors.
//!
//! Operators are finite sums `Σ_α A_α(p) ∂^α` with 4×4 matrix coefficients
//! over the [`Elem`] field and `∂^α` the partial derivatives in the lowered
//! components `p_ν`. Coefficients stand to the left, which makes the form
//! unique, so an operator identity is checked coefficient by coefficient.
//!
//! | symbol | realization |
//! |---|---|
//! | `P_μ` | multiplication by `p_μ` |
//! | `J_μν` | `s_L(p_μ∂_ν − p_ν∂_μ) + s_S[Γ_μ, Γ_ν]` |
//! | `D` | `s_D·p·∂ + w` |
//! | `W_μ` | Pauli–Lubanski contraction of the above |
//! | `γ` | `Γ5` |
//! | `ε` | `Γ·p / m` |
//! | `ρ^k` | `m^k` |

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use thiserror::Error;

use crate::algebra::{Algebra, EvalError};
use crate::coefficient::Coefficient;
use crate::engine::table::Entry;
use crate::engine::RewriteEngine;
use crate::expr::Expression;
use crate::observables::{self, Observable};
use crate::scalar::Field;
use crate::symbol::{eta, eta_diag, Gen, J_PAIRS};

use super::field::{Elem, Exps, Poly};
use super::realize;

#[derive(Clone, Debug)]
pub struct Mat4<T: Field> {
    e: Vec<Elem<T>>,
}

impl<T: Field> Mat4<T> {
    pub fn from_fn(f: impl Fn(usize, usize) -> Elem<T>) -> Self {
        let mut e = Vec::with_capacity(16);
        for r in 0..4 {
            for c in 0..4 {
                e.push(f(r, c));
            }
        }
        Mat4 { e }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| Elem::zero())
    }

    pub fn diagonal(x: &Elem<T>) -> Self {
        Self::from_fn(|r, c| if r == c { x.clone() } else { Elem::zero() })
    }

    pub fn constant(m: &[[T; 4]; 4]) -> Self {
        Self::from_fn(|r, c| Elem::constant(m[r][c].clone()))
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem<T> {
        &self.e[4 * r + c]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Elem::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat4 { e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat4 { e: self.e.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|r, c| {
            let mut acc = Elem::zero();
            for k in 0..4 {
                let (a, b) = (self.get(r, k), o.get(k, c));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn deriv(&self, nu: usize) -> Self {
        Mat4 { e: self.e.iter().map(|a| a.deriv(nu)).collect() }
    }

    pub fn apply(&self, v: &[Elem<T>; 4]) -> [Elem<T>; 4] {
        std::array::from_fn(|r| {
            let mut acc = Elem::zero();
            for (k, x) in v.iter().enumerate() {
                let a = self.get(r, k);
                if !a.is_zero() && !x.is_zero() {
                    acc = acc.add(&a.mul(x));
                }
            }
            acc
        })
    }
}

/// `Σ_α A_α ∂^α`
#[derive(Clone, Debug)]
pub struct DiffOp<T: Field> {
    terms: BTreeMap<Exps, Mat4<T>>,
}

fn binomial(n: u8, k: u8) -> i64 {
    let mut r = 1i64;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

/// Multi-indices `γ ≤ α`.
fn below(alpha: &Exps) -> Vec<Exps> {
    let mut out = vec![[0u8; 4]];
    for nu in 0..4 {
        let mut next = Vec::new();
        for g in &out {
            for v in 0..=alpha[nu] {
                let mut h = *g;
                h[nu] = v;
                next.push(h);
            }
        }
        out = next;
    }
    out
}

impl<T: Field> DiffOp<T> {
    pub fn zero() -> Self {
        DiffOp { terms: BTreeMap::new() }
    }

    pub fn matrix(m: Mat4<T>) -> Self {
        let mut out = Self::zero();
        out.push([0; 4], m);
        out
    }

    pub fn function(x: Elem<T>) -> Self {
        Self::matrix(Mat4::diagonal(&x))
    }

    pub fn scalar(s: T) -> Self {
        Self::function(Elem::constant(s))
    }

    /// `x·∂/∂p_ν`
    pub fn derivation(nu: usize, x: Elem<T>) -> Self {
        let mut e = [0; 4];
        e[nu] = 1;
        let mut out = Self::zero();
        out.push(e, Mat4::diagonal(&x));
        out
    }

    fn push(&mut self, alpha: Exps, m: Mat4<T>) {
        let merged = match self.terms.remove(&alpha) {
            Some(prev) => prev.add(&m),
            None => m,
        };
        if !merged.is_zero() {
            self.terms.insert(alpha, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Mat4<T>)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, m) in &o.terms {
            out.push(*a, m.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (a, m) in &self.terms {
            out.push(*a, m.scale(s));
        }
        out
    }

    /// Composition, moving every derivative to the right by Leibniz.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        let mut derived: HashMap<(Exps, Exps), Mat4<T>> = HashMap::new();
        for (alpha, a) in &self.terms {
            for (beta, b) in &o.terms {
                for g in below(alpha) {
                    let c = (0..4).map(|nu| binomial(alpha[nu], g[nu])).product::<i64>();
                    let db = derived
                        .entry((*beta, g))
                        .or_insert_with(|| {
                            let mut m = b.clone();
                            for nu in 0..4 {
                                for _ in 0..g[nu] {
                                    m = m.deriv(nu);
                                }
                            }
                            m
                        })
                        .clone();
                    if db.is_zero() {
                        continue;
                    }
                    let idx: Exps = std::array::from_fn(|nu| alpha[nu] - g[nu] + beta[nu]);
                    out.push(idx, a.mul(&db).scale(&T::from_int(c)));
                }
            }
        }
        out
    }

    pub fn apply(&self, psi: &[Elem<T>; 4]) -> [Elem<T>; 4] {
        let mut out: [Elem<T>; 4] = std::array::from_fn(|_| Elem::zero());
        for (alpha, a) in &self.terms {
            let mut d = psi.clone();
            for nu in 0..4 {
                for _ in 0..alpha[nu] {
                    d = std::array::from_fn(|r| d[r].deriv(nu));
                }
            }
            let v = a.apply(&d);
            for r in 0..4 {
                out[r] = out[r].add(&v[r]);
            }
        }
        out
    }

    /// First nonvanishing coefficient, for diagnostics.
    pub fn describe(&self) -> String {
        match self.terms.iter().next() {
            None => "0".into(),
            Some((alpha, m)) => {
                let (r, c) = (0..16).map(|i| (i / 4, i % 4)).find(|&(r, c)| !m.get(r, c).is_zero()).unwrap_or((0, 0));
                format!(
                    "order {} operator; coefficient of ∂^{:?} at ({},{}) is {}",
                    self.order(),
                    alpha,
                    r,
                    c,
                    m.get(r, c).describe()
                )
            }
        }
    }
}

/// Upper-index Dirac matrices `Γ^μ` in the Dirac basis, and `Γ5`.
fn dirac_matrices<T: Field>() -> ([[[T; 4]; 4]; 4], [[T; 4]; 4]) {
    let z = || T::zero();
    let i = T::imag_unit;
    let n = |v: i64| T::from_int(v);
    let sigma: [[[T; 2]; 2]; 3] = [
        [[z(), n(1)], [n(1), z()]],
        [[z(), -i()], [i(), z()]],
        [[n(1), z()], [z(), n(-1)]],
    ];
    let mut g: [[[T; 4]; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| z())));
    for r in 0..4 {
        g[0][r][r] = n(if r < 2 { 1 } else { -1 });
    }
    for k in 0..3 {
        for r in 0..2 {
            for c in 0..2 {
                g[k + 1][r][c + 2] = sigma[k][r][c].clone();
                g[k + 1][r + 2][c] = -sigma[k][r][c].clone();
            }
        }
    }
    let mm = |a: &[[T; 4]; 4], b: &[[T; 4]; 4]| -> [[T; 4]; 4] {
        std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..4).fold(T::zero(), |acc, k| acc + a[r][k].clone() * b[k][c].clone()))
        })
    };
    let mut g5 = mm(&mm(&g[0], &g[1]), &mm(&g[2], &g[3]));
    for row in g5.iter_mut() {
        for x in row.iter_mut() {
            *x = x.clone() * i();
        }
    }
    (g, g5)
}

#[derive(Debug, Error)]
pub enum ConstantSolveError {
    #[error("no candidate for the {0} constant satisfies the table")]
    NoCandidate(&'static str),
    #[error("realization violates: {}", .0.join(", "))]
    Violations(Vec<String>),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Constants fixed while building the realization.
#[derive(Debug, Clone)]
pub struct DiracConstants<T: Field> {
    pub hbar: T,
    /// `s_L`
    pub orbital: T,
    /// `s_S`
    pub spin: T,
    /// `s_D`
    pub dilation: T,
    /// `w`
    pub weight: T,
}

pub struct DiracRep<T: Field> {
    pub constants: DiracConstants<T>,
    p: Vec<DiffOp<T>>,
    j: HashMap<Gen, DiffOp<T>>,
    d: DiffOp<T>,
    w: Vec<DiffOp<T>>,
    gamma: DiffOp<T>,
    eps: DiffOp<T>,
    /// Names of every relation checked at build time.
    pub verified: Vec<String>,
    cache: Mutex<HashMap<Observable, DiffOp<T>>>,
}

fn candidates<T: Field>(unit: &T) -> Vec<T> {
    let mut out = Vec::new();
    for (n, d) in [(1, 1), (1, 2), (1, 4), (2, 1)] {
        for phase in [T::one(), -T::one(), T::imag_unit(), -T::imag_unit()] {
            out.push(T::from_ratio(n, d) * phase * unit.clone());
        }
    }
    out
}

impl<T: Field> DiracRep<T> {
    fn assemble(c: DiracConstants<T>) -> Self {
        let (g_up, g5) = dirac_matrices::<T>();
        let lower = |mu: usize| Mat4::constant(&g_up[mu]).scale(&T::from_int(eta_diag(mu)));
        let p: Vec<DiffOp<T>> = (0..4).map(|mu| DiffOp::function(Elem::poly(Poly::var(mu)))).collect();
        // ∂_ν = η_νν ∂/∂p_ν
        let lowered_d = |nu: usize, x: Elem<T>| DiffOp::derivation(nu, x.scale(&T::from_int(eta_diag(nu))));
        let mut j = HashMap::new();
        for &(mu, nu) in J_PAIRS.iter() {
            let (m, n) = (mu as usize, nu as usize);
            let orbital = lowered_d(n, Elem::poly(Poly::var(m))).add(&lowered_d(m, Elem::poly(Poly::var(n))).scale(&-T::one()));
            let comm = lower(m).mul(&lower(n)).add(&lower(n).mul(&lower(m)).scale(&-T::one()));
            let op = orbital.scale(&c.orbital).add(&DiffOp::matrix(comm.scale(&c.spin)));
            j.insert(Gen::J(mu, nu), op);
        }
        let mut d = DiffOp::scalar(c.weight.clone());
        for nu in 0..4 {
            d = d.add(&DiffOp::derivation(nu, Elem::poly(Poly::var(nu))).scale(&c.dilation));
        }
        let mut slash = Mat4::zero();
        for mu in 0..4 {
            let pm = Mat4::diagonal(&Elem::poly(Poly::var(mu)));
            slash = slash.add(&Mat4::constant(&g_up[mu]).mul(&pm));
        }
        let eps = DiffOp::matrix(slash.mul(&Mat4::diagonal(&Elem::mass_pow(-1))));
        DiracRep {
            constants: c,
            p,
            j,
            d,
            w: Vec::new(),
            gamma: DiffOp::matrix(Mat4::constant(&g5)),
            eps,
            verified: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn with_w(mut self) -> Result<Self, EvalError> {
        self.w = (0..4u8)
            .map(|a| realize(&self, &crate::engine::w_expansion::<T>(a)))
            .collect::<Result<_, _>>()?;
        Ok(self)
    }

    fn consts(&self) -> DiracConstants<T> {
        self.constants.clone()
    }

    /// Builds the realization at `ħ = hbar`, solving the free constants
    /// against `engine`'s table and verifying every constraint relation.
    pub fn build(engine: &RewriteEngine<T>, hbar: T) -> Result<Self, ConstantSolveError> {
        let i_hbar = T::imag_unit() * hbar.clone();
        let start = DiracConstants {
            hbar: hbar.clone(),
            orbital: T::zero(),
            spin: T::zero(),
            dilation: T::zero(),
            weight: T::zero(),
        };
        let pick = |name: &'static str,
                    base: &DiracConstants<T>,
                    set: &dyn Fn(&mut DiracConstants<T>, T),
                    pairs: &[(Gen, Gen)]|
         -> Result<DiracConstants<T>, ConstantSolveError> {
            for cand in candidates(&i_hbar) {
                let mut c = base.clone();
                set(&mut c, cand);
                let rep = Self::assemble(c.clone());
                if pairs.iter().all(|&(a, b)| rep.table_mismatch(engine, a, b).ok() == Some(None)) {
                    return Ok(c);
                }
            }
            Err(ConstantSolveError::NoCandidate(name))
        };
        let lie: Vec<Gen> = Gen::lie_basis().into_iter().filter(|g| !matches!(g, Gen::C(_))).collect();
        let js: Vec<Gen> = lie.iter().copied().filter(|g| matches!(g, Gen::J(..))).collect();
        let ps: Vec<Gen> = (0..4).map(Gen::P).collect();
        let cross = |xs: &[Gen], ys: &[Gen]| -> Vec<(Gen, Gen)> {
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
        };
        // The orbital part alone realizes (J,P); the spin part alone (J,J).
        let c = pick("orbital", &start, &|c, v| c.orbital = v, &cross(&js, &ps))?;
        let c = {
            let spin_only = DiracConstants { orbital: T::zero(), ..c.clone() };
            let s = pick("spin", &spin_only, &|c, v| c.spin = v, &cross(&js, &js))?;
            DiracConstants { spin: s.spin, ..c }
        };
        let c = pick("dilation", &c, &|c, v| c.dilation = v, &cross(&[Gen::D], &ps))?;
        // Weight of D: fixed so that D = ½(s_D p·∂ + (s_D p·∂)†) on L²(d⁴p).
        let c = DiracConstants { weight: c.dilation.clone() * T::from_int(2), ..c };
        let mut rep = Self::assemble(c).with_w()?;
        rep.verified = rep.validate(engine, &lie)?;
        Ok(rep)
    }

    /// `None` when `(a,b)` matches the table entry.
    fn table_mismatch(&self, engine: &RewriteEngine<T>, a: Gen, b: Gen) -> Result<Option<String>, EvalError> {
        let Some(Entry::Defined(e)) = engine.table().get(a, b) else {
            return Ok(Some(format!("({},{}) not in table", a, b)));
        };
        let lhs = self.commutator(&self.generator(a)?, &self.generator(b)?)?;
        let diff = lhs.add(&realize(self, e)?.scale(&-T::one()));
        Ok((!diff.is_zero()).then(|| format!("({},{})", a, b)))
    }

    fn validate(&self, engine: &RewriteEngine<T>, lie: &[Gen]) -> Result<Vec<String>, ConstantSolveError> {
        let mut bad = Vec::new();
        let mut ok = Vec::new();
        let mut gens: Vec<Gen> = lie.to_vec();
        gens.extend((0..4).map(Gen::W));
        gens.push(Gen::Gamma);
        gens.push(Gen::Eps);
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i..] {
                match self.table_mismatch(engine, a, b)? {
                    Some(m) => bad.push(m),
                    None => ok.push(format!("({},{})", a, b)),
                }
            }
        }
        let one = DiffOp::scalar(T::one());
        let mut expect = |name: String, lhs: DiffOp<T>, rhs: DiffOp<T>| {
            if lhs.add(&rhs.scale(&-T::one())).is_zero() {
                ok.push(name);
            } else {
                bad.push(name);
            }
        };
        expect("γ² = 1".into(), self.gamma.mul(&self.gamma), one.clone());
        expect("ε² = 1".into(), self.eps.mul(&self.eps), one.clone());
        expect("{γ,ε} = 0".into(), self.gamma.mul(&self.eps).add(&self.eps.mul(&self.gamma)), DiffOp::zero());
        let h = self.constants.hbar.clone();
        let p2 = DiffOp::function(Elem::poly(Poly::p2()));
        let mut wp = DiffOp::zero();
        let mut w2 = DiffOp::zero();
        for a in 0..4 {
            let s = T::from_int(eta_diag(a));
            wp = wp.add(&self.w[a].mul(&self.p[a]).scale(&s));
            w2 = w2.add(&self.w[a].mul(&self.w[a]).scale(&s));
            for b in a..4 {
                let anti = self.w[a].mul(&self.w[b]).add(&self.w[b].mul(&self.w[a]));
                let rule = self.p[a]
                    .mul(&self.p[b])
                    .add(&p2.scale(&-T::from_int(eta(a, b))))
                    .scale(&(h.clone() * h.clone() * T::from_ratio(1, 2)));
                expect(format!("{{W{},W{}}} spin-1/2 rule", a, b), anti, rule);
            }
        }
        expect("W·P = 0".into(), wp, DiffOp::zero());
        expect("W² = −(3/4)ħ²P²".into(), w2, p2.scale(&(h.clone() * h * T::from_ratio(-3, 4))));
        if bad.is_empty() {
            Ok(ok)
        } else {
            Err(ConstantSolveError::Violations(bad))
        }
    }
}

impl<T: Field> Algebra<T> for DiracRep<T> {
    type Value = DiffOp<T>;

    fn scalar(&self, c: Coefficient<T>) -> Result<DiffOp<T>, EvalError> {
        Ok(DiffOp::scalar(self.number(&c)?))
    }

    fn generator(&self, g: Gen) -> Result<DiffOp<T>, EvalError> {
        match g {
            Gen::P(mu) => Ok(self.p[mu as usize].clone()),
            Gen::J(..) => Ok(self.j[&g].clone()),
            Gen::D => Ok(self.d.clone()),
            Gen::W(mu) => self
                .w
                .get(mu as usize)
                .cloned()
                .ok_or_else(|| EvalError::Unsupported("W before assembly".into())),
            Gen::Gamma => Ok(self.gamma.clone()),
            Gen::Eps => Ok(self.eps.clone()),
            Gen::C(_) => Err(EvalError::Unsupported("special conformal generators".into())),
        }
    }

    fn rho_pow(&self, k: i32) -> Result<DiffOp<T>, EvalError> {
        Ok(DiffOp::function(Elem::mass_pow(k)))
    }

    fn add(&self, a: &DiffOp<T>, b: &DiffOp<T>) -> Result<DiffOp<T>, EvalError> {
        Ok(a.add(b))
    }

    fn scale(&self, a: &DiffOp<T>, c: &Coefficient<T>) -> Result<DiffOp<T>, EvalError> {
        Ok(a.scale(&self.number(c)?))
    }

    fn mul(&self, a: &DiffOp<T>, b: &DiffOp<T>) -> Result<DiffOp<T>, EvalError> {
        Ok(a.mul(b))
    }

    fn adjoint(&self, _a: &DiffOp<T>) -> Result<DiffOp<T>, EvalError> {
        Err(EvalError::Unsupported("adjoint".into()))
    }

    fn observable(&self, o: Observable) -> Result<DiffOp<T>, EvalError> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&o) {
            return Ok(v.clone());
        }
        let v = observables::build(self, o)?;
        self.cache.lock().expect("cache lock").insert(o, v.clone());
        Ok(v)
    }
}

impl<T: Field> DiracRep<T> {
    fn number(&self, c: &Coefficient<T>) -> Result<T, EvalError> {
        if c.accel_degree() > 0 {
            return Err(EvalError::Unsupported("acceleration parameters".into()));
        }
        let zero = std::array::from_fn(|_| T::zero());
        Ok(c.evaluate(&self.constants.hbar, &zero))
    }

    /// Realization of an engine expression.
    pub fn realize(&self, e: &Expression<T>) -> Result<DiffOp<T>, EvalError> {
        realize(self, e)
    }

    pub fn constants(&self) -> DiracConstants<T> {
        self.consts()
    }
}

/// 4-spinor test function with polynomial entries.
pub type Spinor<T> = [Elem<T>; 4];

/// Monomial exponents of total degree `≤ deg`.
pub fn exponents_upto(deg: u8) -> Vec<Exps> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            for c in 0..=deg - a - b {
                for d in 0..=deg - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn rep() -> DiracRep<Scalar> {
        DiracRep::build(crate::engine(), Scalar::from_ratio(3, 5)).expect("realization builds")
    }

    #[test]
    fn composition_moves_derivatives_right() {
        // ∂_0 ∘ p_0 = p_0 ∂_0 + 1
        let d0 = DiffOp::<Scalar>::derivation(0, Elem::constant(Scalar::from_int(1)));
        let p0 = DiffOp::function(Elem::poly(Poly::var(0)));
        let lhs = d0.mul(&p0);
        let rhs = p0.mul(&d0).add(&DiffOp::scalar(Scalar::from_int(1)));
        assert!(lhs.add(&rhs.scale(&Scalar::from_int(-1))).is_zero());
    }

    #[test]
    fn clifford_relations_of_the_basis() {
        let (g, _) = dirac_matrices::<Scalar>();
        for mu in 0..4 {
            for nu in 0..4 {
                let a = Mat4::constant(&g[mu]);
                let b = Mat4::constant(&g[nu]);
                let anti = a.mul(&b).add(&b.mul(&a));
                let expect = Mat4::diagonal(&Elem::constant(Scalar::from_int(2 * eta(mu, nu))));
                assert!(anti.add(&expect.scale(&Scalar::from_int(-1))).is_zero());
            }
        }
    }

    #[test]
    fn builds_and_validates_sign_spin_and_table() {
        let r = rep();
        assert!(r.verified.iter().any(|v| v.contains("spin-1/2")));
        assert!(r.verified.iter().any(|v| v == "W² = −(3/4)ħ²P²"));
        assert!(r.verified.iter().any(|v| v == "(W0,W1)"));
    }

    #[test]
    fn apply_matches_composition() {
        let r = rep();
        let x = r.observable(Observable::Position(1)).unwrap();
        let p = r.generator(Gen::P(2)).unwrap();
        let psi: Spinor<Scalar> = std::array::from_fn(|k| {
            Elem::poly(Poly::var(k).mul(&Poly::var(0)).add(&Poly::constant(Scalar::from_int(k as i64 + 1))))
        });
        let composed = x.mul(&p).apply(&psi);
        let sequential = x.apply(&p.apply(&psi));
        for k in 0..4 {
            assert!(composed[k].sub(&sequential[k]).is_zero());
        }
    }
}
