//! Exact representation oracles.
//!
//! Identities containing `C` go to the so(4,2) matrices ([`so42`]);
//! the momentum-space spinor realization ([`dirac`]) takes the rest.
//! Accelerated frames and adjoints are not realized.

pub mod dirac;
pub mod field;
pub mod so42;

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, EvalError};
use crate::dsl::ast::{Func, Node};
use crate::dsl::eval::evaluate;
use crate::dsl::suite::{Identity, Mode, Suite};
use crate::expr::Expression;
use crate::scalar::Field;
use crate::symbol::Letter;
use crate::Scalar;

use dirac::{exponents_upto, DiffOp, DiracRep, Spinor};
use field::{Elem, Poly};
use so42::So42Rep;

pub const DEFAULT_TRIALS: usize = 20;

/// `ħ` in the spinor realization. A value other than one keeps powers of
/// `ħ` distinguishable.
pub const DIRAC_HBAR: (i64, i64) = (3, 5);

/// A point with rational mass: `p = (5,3,0,0)`, `m = 4`.
const SAMPLE_POINT: ([i64; 4], i64) = ([5, 3, 0, 0], 4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Passed,
    Failed,
    SectorUnsupported,
    NotApplicable,
    NotRun,
}

impl OracleStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleStatus::Passed => "passed",
            OracleStatus::Failed => "failed",
            OracleStatus::SectorUnsupported => "sector_unsupported",
            OracleStatus::NotApplicable => "not_applicable",
            OracleStatus::NotRun => "not_run",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleOutcome {
    pub status: OracleStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realization: Option<&'static str>,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl OracleOutcome {
    pub fn not_run() -> Self {
        OracleOutcome { status: OracleStatus::NotRun, realization: None, trials: 0, detail: None }
    }

    fn new(status: OracleStatus, realization: Option<&'static str>, trials: usize, detail: Option<String>) -> Self {
        OracleOutcome { status, realization, trials, detail }
    }
}

/// An engine expression evaluated in `alg`.
pub fn realize<T: Field, A: Algebra<T> + ?Sized>(alg: &A, e: &Expression<T>) -> Result<A::Value, EvalError> {
    let mut acc = alg.scalar(crate::Coefficient::zero())?;
    for (m, c) in e.terms() {
        let mut v = alg.scalar(crate::Coefficient::one())?;
        for l in m.letters() {
            let f = match l {
                Letter::Gen(g) => alg.generator(g)?,
                Letter::Rho(k) => alg.rho_pow(k)?,
            };
            v = alg.mul(&v, &f)?;
        }
        acc = alg.add(&acc, &alg.scale(&v, c)?)?;
    }
    Ok(acc)
}

pub const DIRAC: &str = "dirac";
pub const SO42: &str = "so42";

pub fn dirac_rep() -> Result<&'static DiracRep<Scalar>, String> {
    static REP: OnceLock<Result<DiracRep<Scalar>, String>> = OnceLock::new();
    REP.get_or_init(|| {
        DiracRep::build(crate::engine(), Scalar::from_ratio(DIRAC_HBAR.0, DIRAC_HBAR.1)).map_err(|e| e.to_string())
    })
    .as_ref()
    .map_err(Clone::clone)
}

pub fn so42_rep() -> Result<&'static So42Rep<Scalar>, String> {
    static REP: OnceLock<Result<So42Rep<Scalar>, String>> = OnceLock::new();
    REP.get_or_init(|| So42Rep::build(crate::engine()).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
}

enum Route {
    Dirac,
    So42,
    Skip(OracleStatus, String),
}

fn route(id: &Identity) -> Route {
    let nodes: Vec<&Node> = [Some(&id.lhs), Some(&id.rhs), id.remainder.as_ref()].into_iter().flatten().collect();
    let any = |f: &dyn Fn(&Node) -> bool| nodes.iter().any(|n| f(n));
    if any(&|n| n.uses_func(Func::Adj)) {
        return Route::Skip(OracleStatus::NotApplicable, "adjoints are not realized".into());
    }
    if id.spec.mode == Mode::ScalarPart && id.remainder.is_none() {
        return Route::Skip(OracleStatus::NotApplicable, "normal-form scalar part is basis dependent".into());
    }
    if any(&|n| n.uses_func(Func::Conj) || n.uses_func(Func::AcceleratedPrime) || n.uses_symbol(&|s| s == "a")) {
        return Route::Skip(OracleStatus::SectorUnsupported, "accelerated frames are checked symbolically only".into());
    }
    if any(&|n| n.uses_symbol(&|s| s == "C")) {
        return Route::So42;
    }
    Route::Dirac
}

fn seed_for(seed: u64, name: &str) -> u64 {
    // FNV-1a of the name, mixed with the run seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

/// Spinor with random integer-coefficient polynomial entries of degree ≤ 3.
pub fn random_spinor<R: Rng>(rng: &mut R) -> Spinor<Scalar> {
    let exps = exponents_upto(3);
    std::array::from_fn(|_| {
        let mut p = Poly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let e = exps[rng.gen_range(0..exps.len())];
            let re = rng.gen_range(-5..=5i64);
            let im = if rng.gen_bool(0.25) { rng.gen_range(-3..=3i64) } else { 0 };
            let c = Scalar::from_int(re) + Scalar::imag_unit() * Scalar::from_int(im);
            p = p.add(&Poly::monomial(e, c));
        }
        Elem::poly(p)
    })
}

fn unsupported(realization: &'static str, e: EvalError) -> OracleOutcome {
    match e {
        EvalError::Unsupported(msg) => {
            OracleOutcome::new(OracleStatus::SectorUnsupported, Some(realization), 0, Some(msg))
        }
        other => OracleOutcome::new(OracleStatus::Failed, Some(realization), 0, Some(other.to_string())),
    }
}

/// Value of the first nonvanishing coefficient entry at the sample point.
fn sample_entry(op: &DiffOp<Scalar>, at: &(usize, usize, [u8; 4])) -> Scalar {
    let p: [Scalar; 4] = std::array::from_fn(|i| Scalar::from_int(SAMPLE_POINT.0[i]));
    let m = Scalar::from_int(SAMPLE_POINT.1);
    op.terms()
        .find(|(alpha, _)| **alpha == at.2)
        .map(|(_, mat)| mat.get(at.0, at.1).eval(&p, &m))
        .unwrap_or_else(|| Scalar::from_int(0))
}

fn locate(op: &DiffOp<Scalar>) -> Option<(usize, usize, [u8; 4])> {
    let p: [Scalar; 4] = std::array::from_fn(|i| Scalar::from_int(SAMPLE_POINT.0[i]));
    let m = Scalar::from_int(SAMPLE_POINT.1);
    for (alpha, mat) in op.terms() {
        for r in 0..4 {
            for c in 0..4 {
                if !num_traits::Zero::is_zero(&mat.get(r, c).eval(&p, &m)) {
                    return Some((r, c, *alpha));
                }
            }
        }
    }
    None
}

fn check_dirac(id: &Identity, trials: usize, seed: u64) -> OracleOutcome {
    let rep = match dirac_rep() {
        Ok(r) => r,
        Err(e) => return OracleOutcome::new(OracleStatus::Failed, Some(DIRAC), 0, Some(e)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(seed, &id.spec.name));
    let mut constant: Option<Scalar> = None;
    let mut run = 0;
    for (index, env) in id.instances.iter().enumerate() {
        let eval = |n: &Node| evaluate(rep, n, env);
        let (lhs, rhs) = match (eval(&id.lhs), eval(&id.rhs)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return unsupported(DIRAC, e),
        };
        let mut rhs = rhs;
        if let Some(rem) = &id.remainder {
            match eval(rem) {
                Ok(r) => rhs = rhs.add(&r),
                Err(e) => return unsupported(DIRAC, e),
            }
        }
        if id.spec.mode == Mode::Proportional {
            if constant.is_none() {
                if let Some(at) = locate(&rhs) {
                    constant = Some(sample_entry(&lhs, &at) / sample_entry(&rhs, &at));
                }
            }
            if let Some(c) = &constant {
                rhs = rhs.scale(c);
            }
        }
        let diff = lhs.add(&rhs.scale(&Scalar::from_int(-1)));
        let label = crate::verify::format_env(env);
        if !diff.is_zero() {
            return OracleOutcome::new(
                OracleStatus::Failed,
                Some(DIRAC),
                run,
                Some(format!("[{}] {}", label, diff.describe())),
            );
        }
        let n = id.instances.len();
        let share = trials / n + usize::from(index < trials % n);
        for _ in 0..share {
            run += 1;
            let psi = random_spinor(&mut rng);
            if diff.apply(&psi).iter().any(|x| !x.is_zero()) {
                return OracleOutcome::new(
                    OracleStatus::Failed,
                    Some(DIRAC),
                    run,
                    Some(format!("[{}] nonzero on trial {}", label, run)),
                );
            }
        }
    }
    let detail = constant.map(|c| format!("constant at hbar={}/{}: {}", DIRAC_HBAR.0, DIRAC_HBAR.1, c.render()));
    OracleOutcome::new(OracleStatus::Passed, Some(DIRAC), run, detail)
}

fn check_so42(id: &Identity) -> OracleOutcome {
    let rep = match so42_rep() {
        Ok(r) => r,
        Err(e) => return OracleOutcome::new(OracleStatus::Failed, Some(SO42), 0, Some(e)),
    };
    for env in &id.instances {
        let eval = |n: &Node| evaluate(rep, n, env);
        let (lhs, rhs) = match (eval(&id.lhs), eval(&id.rhs)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return unsupported(SO42, e),
        };
        if id.spec.mode != Mode::Equal {
            return OracleOutcome::new(
                OracleStatus::NotApplicable,
                Some(SO42),
                0,
                Some("only equalities are compared as matrices".into()),
            );
        }
        if !lhs.sub(&rhs).is_zero() {
            return OracleOutcome::new(
                OracleStatus::Failed,
                Some(SO42),
                0,
                Some(format!("[{}] matrices differ", crate::verify::format_env(env))),
            );
        }
    }
    OracleOutcome::new(OracleStatus::Passed, Some(SO42), 0, None)
}

/// Realizes `lhs − rhs` for every instance and requires exact zero, both
/// coefficient-wise and on `trials` seeded random test spinors.
pub fn check_identity(id: &Identity, trials: usize, seed: u64, _trunc: Option<u32>) -> OracleOutcome {
    match route(id) {
        Route::Dirac => check_dirac(id, trials, seed),
        Route::So42 => check_so42(id),
        Route::Skip(status, why) => OracleOutcome::new(status, None, 0, Some(why)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub name: String,
    pub tags: Vec<String>,
    pub oracle: OracleOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub schema: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub identities: Vec<OracleEntry>,
}

impl OracleReport {
    pub fn count(&self, s: OracleStatus) -> usize {
        self.identities.iter().filter(|e| e.oracle.status == s).count()
    }

    pub fn failed(&self) -> usize {
        self.count(OracleStatus::Failed)
    }

    pub fn to_json(&self, table: &so42::TableReport) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(flatten)]
            report: &'a OracleReport,
            so42_table: &'a so42::TableReport,
        }
        serde_json::to_string_pretty(&Out { report: self, so42_table: table }).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.identities {
            out.push_str(&format!(
                "{:<6} {:<18} {:<6} trials={}",
                e.name,
                e.oracle.status.as_str(),
                e.oracle.realization.unwrap_or("-"),
                e.oracle.trials
            ));
            if let Some(d) = &e.oracle.detail {
                out.push_str(&format!("  {}", d));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "passed {}, failed {}, sector_unsupported {}, not_applicable {} (seed {})\n",
            self.count(OracleStatus::Passed),
            self.failed(),
            self.count(OracleStatus::SectorUnsupported),
            self.count(OracleStatus::NotApplicable),
            self.seed
        ));
        out
    }
}

pub fn run_suite(suite: &Suite, trials: usize, seed: u64, trunc: Option<u32>) -> OracleReport {
    let mut identities: Vec<OracleEntry> = suite
        .identities
        .par_iter()
        .map(|id| OracleEntry {
            name: id.spec.name.clone(),
            tags: id.spec.tags.clone(),
            oracle: check_identity(id, trials, seed, trunc),
        })
        .collect();
    identities.sort_by(|a, b| a.name.cmp(&b.name));
    OracleReport { schema: "qalg-oracle/1", seed, trials, identities }
}
